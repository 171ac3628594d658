use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;
use gassmann_cli::{run, Cli, Outcome};

fn paint(line: &str, outcome: Outcome) -> String {
    let code = match outcome {
        Outcome::Verified => "32",
        Outcome::Refuted => "33",
        Outcome::Error => "31",
    };
    match line.split_once(':') {
        Some((head, tail)) => format!("\x1b[1;{code}m{head}\x1b[0m:{tail}"),
        None => line.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = run(&cli);
    if let Some(json) = &output.json {
        let mut out = std::io::stdout().lock();
        if out.write_all(json.as_bytes()).and_then(|_| out.flush()).is_err() {
            return ExitCode::from(Outcome::Error.code());
        }
    }
    if !cli.json_only || output.outcome == Outcome::Error {
        let color = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
        let last = output.summary.len().saturating_sub(1);
        for (i, line) in output.summary.iter().enumerate() {
            if color && i == last {
                eprintln!("{}", paint(line, output.outcome));
            } else {
                eprintln!("{line}");
            }
        }
    }
    ExitCode::from(output.outcome.code())
}
