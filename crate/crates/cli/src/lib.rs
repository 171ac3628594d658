//! Subcommands of the `gassmann` tool.
//!
//! Every command returns an [`Output`]: a JSON document for standard
//! output, a short human summary for standard error, and an [`Outcome`]
//! that fixes the exit code. The binary is a thin wrapper over [`run`].

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gassmann_core::error::{Error as CoreError, InputError, PermError, SpectralError, TransplantError};
use gassmann_core::gassmann::{is_gassmann, search_pairs, GassmannCertificate, SearchOptions};
use gassmann_core::group::{left_cosets, subgroup_from_generators, DEFAULT_CAP};
use gassmann_core::input::{catalog, catalog_entry, split_cycle_list, GroupFile, LoadedGroup};
use gassmann_core::report::{
    CertificateReport, CommutationCheck, IntertwinerReport, SpectralJson, TransplantReport, ZetaJson, SCHEMA_VERSION,
};
use gassmann_core::spectral::{
    generates, graphs_isomorphic, isospectral_verdict, random_generating_set, schreier_on_cosets, schreier_quotient,
    symmetrize, verify_transplantation_on_graphs, zeta_verdict, ISOMORPHISM_CAP,
};
use gassmann_core::transplant::{
    equivariance_residual, find_invertible_intertwiner, intertwiner_basis, orthogonalize, transplantation,
    verify_commutation, GModule, IntertwinerSearch,
};
use gassmann_core::{GroupTable, Subgroup};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Groups up to this order are transplanted on the regular module; larger
/// ones use the defining permutation module.
pub const REGULAR_MODULE_LIMIT: usize = 512;

/// Stopping tolerance for the polar iteration.
pub const POLAR_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Parser)]
#[command(name = "gassmann", version, about = "Gassmann triples, transplantation and isospectral Schreier graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print only the JSON report (no summary on stderr).
    #[arg(long, global = true)]
    pub json_only: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether H1 and H2 are a Gassmann pair.
    Verify(PairArgs),
    /// Certificate, intertwiner, quotient graphs, spectra and commutation checks.
    Full(FullArgs),
    /// Search a group for non-conjugate Gassmann pairs.
    Search(SearchArgs),
    /// Write the Schreier quotient G/H as a Graphviz file.
    ExportDot(DotArgs),
    /// List the built-in examples.
    Catalog,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Group JSON file, or `catalog:NAME` for a built-in entry.
    #[arg(long)]
    pub group: String,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Subgroup label for H1 (defaults to the catalog entry's).
    #[arg(long)]
    pub h1: Option<String>,
    /// Subgroup label for H2 (defaults to the catalog entry's).
    #[arg(long)]
    pub h2: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FullArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Comma-separated generators in cycle notation, e.g. "(1 2 3),(1 2)".
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also compare spectra over this many seeded random generating sets.
    #[arg(long, default_value_t = 0)]
    pub scan: usize,
    /// Include stage timings (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Only report subgroups of this order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Enumerate all subgroups (small groups only).
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 3)]
    pub max_generators: usize,
    #[arg(long, default_value_t = 50_000)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DotArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Subgroup label; `G` and `1` name the whole and trivial subgroups.
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub gens: Option<String>,
    /// Output path for the DOT file.
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no --{0} given and the group file names no default pair")]
    MissingLabel(&'static str),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{stage} stage: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: CoreError,
    },
}

macro_rules! via_core {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}
via_core!(InputError, PermError, SpectralError, TransplantError);

fn stage<E: Into<CoreError>>(stage: &'static str) -> impl FnOnce(E) -> CliError {
    move |e| CliError::Stage {
        stage,
        source: e.into(),
    }
}

/// Exit status contract: 0 verified, 1 refuted, 2 error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Refuted,
    Error,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Refuted => 1,
            Outcome::Error => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Refuted => "refuted",
            Outcome::Error => "error",
        }
    }
}

#[derive(Debug)]
pub struct Output {
    /// JSON for stdout; `None` when the command failed before producing a report.
    pub json: Option<String>,
    /// Human-readable lines for stderr.
    pub summary: Vec<String>,
    pub outcome: Outcome,
}

impl Output {
    fn from_report<T: Serialize>(report: &T, summary: Vec<String>, outcome: Outcome) -> Output {
        let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
        json.push('\n');
        Output {
            json: Some(json),
            summary,
            outcome,
        }
    }

    fn error(e: &CliError) -> Output {
        let mut line = format!("error: {e}");
        let mut source = std::error::Error::source(e);
        while let Some(s) = source {
            let text = s.to_string();
            if !line.contains(&text) {
                line.push_str(&format!(": {text}"));
            }
            source = s.source();
        }
        Output {
            json: None,
            summary: vec![line],
            outcome: Outcome::Error,
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Full(args) => cmd_full(args),
        Command::Search(args) => cmd_search(args),
        Command::ExportDot(args) => cmd_export_dot(args),
        Command::Catalog => cmd_catalog(),
    };
    result.unwrap_or_else(|e| Output::error(&e))
}

/// A loaded group plus the catalog entry it came from, if any.
pub struct Context {
    pub file: GroupFile,
    pub group: LoadedGroup,
}

impl Context {
    pub fn load(args: &GroupArgs) -> Result<Context, CliError> {
        let file = match args.group.strip_prefix("catalog:") {
            Some(name) => GroupFile::Entry(catalog_entry(name)?),
            None => {
                let text = fs::read_to_string(&args.group).map_err(|source| CliError::Read {
                    path: args.group.clone(),
                    source,
                })?;
                GroupFile::from_json(&text)?
            }
        };
        let group = file.group().load(args.cap)?;
        Ok(Context { file, group })
    }

    pub fn table(&self) -> &GroupTable {
        &self.group.table
    }

    /// Looks up a label; `G` and `1` fall back to the whole and trivial
    /// subgroups when the file does not define them.
    pub fn subgroup(&self, label: &str) -> Result<Subgroup, CliError> {
        if !self.group.spec.subgroups.contains_key(label) {
            match label {
                "G" => return Ok(Subgroup::whole(self.table())),
                "1" => return Ok(Subgroup::trivial(self.table())),
                _ => {}
            }
        }
        Ok(self.group.subgroup(label)?)
    }

    fn label(&self, flag: &Option<String>, which: &'static str) -> Result<String, CliError> {
        if let Some(l) = flag {
            return Ok(l.clone());
        }
        let entry = self.file.entry().ok_or(CliError::MissingLabel(which))?;
        Ok(if which == "h1" { entry.h1.clone() } else { entry.h2.clone() })
    }

    /// Generator strings: the flag, else the entry's defaults, else the
    /// group's own generators.
    pub fn generator_texts(&self, flag: &Option<String>) -> Vec<String> {
        match (flag, self.file.entry()) {
            (Some(text), _) => split_cycle_list(text),
            (None, Some(entry)) => entry.default_gens.clone(),
            (None, None) => self.group.spec.generators.clone(),
        }
    }

    pub fn generating_set(&self, texts: &[String]) -> Result<Vec<usize>, CliError> {
        let raw = self.group.elements(texts)?;
        Ok(symmetrize(self.table(), &raw)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandEcho {
    pub name: &'static str,
    pub group: String,
    pub h1: Option<String>,
    pub h2: Option<String>,
    pub gens: Option<Vec<String>>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitaryReport {
    pub iterations: usize,
    /// `‖UᵀU − I‖∞`.
    pub residual: f64,
    pub equivariance_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphsReport {
    /// Symmetrized generating set in cycle notation.
    pub generating_set: Vec<String>,
    pub generates: bool,
    pub vertices: usize,
    pub degree: usize,
    pub edge_records: [usize; 2],
    /// Null when the graphs exceed the isomorphism scan cap.
    pub isomorphic: Option<bool>,
    /// Whether `S·L1 = L2·S` holds exactly.
    pub commutation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub seed: u64,
    pub sets: usize,
    pub isospectral: usize,
    /// Generating sets whose quotients have different charpolys.
    pub refuting: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageError {
    pub stage: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub command: CommandEcho,
    pub verdict: Verdict,
    pub certificate: Option<CertificateReport>,
    pub scan: Option<ScanReport>,
    pub intertwiner: Option<IntertwinerReport>,
    pub unitary: Option<UnitaryReport>,
    pub graphs: Option<GraphsReport>,
    pub spectral: Option<SpectralJson>,
    pub zeta: Option<ZetaJson>,
    pub transplant: Option<TransplantReport>,
    pub stage_error: Option<StageError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

impl RunReport {
    fn new(command: CommandEcho) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command,
            verdict: Verdict {
                outcome: Outcome::Error.label(),
                reason: String::new(),
            },
            certificate: None,
            scan: None,
            intertwiner: None,
            unitary: None,
            graphs: None,
            spectral: None,
            zeta: None,
            transplant: None,
            stage_error: None,
            timings_ms: None,
        }
    }

    fn conclude(&mut self, outcome: Outcome, reason: impl Into<String>) -> Outcome {
        self.verdict = Verdict {
            outcome: outcome.label(),
            reason: reason.into(),
        };
        outcome
    }
}

struct Timer {
    enabled: bool,
    start: Instant,
    laps: BTreeMap<&'static str, u128>,
}

impl Timer {
    fn new(enabled: bool) -> Timer {
        Timer {
            enabled,
            start: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, name: &'static str) {
        if self.enabled {
            self.laps.insert(name, self.start.elapsed().as_millis());
            self.start = Instant::now();
        }
    }

    fn finish(self) -> Option<BTreeMap<&'static str, u128>> {
        self.enabled.then_some(self.laps)
    }
}

fn certificate_reason(ctx: &Context, cert: &GassmannCertificate) -> (Outcome, String) {
    if !cert.is_gassmann {
        let differing = cert
            .profile1
            .counts
            .iter()
            .zip(&cert.profile2.counts)
            .filter(|(a, b)| a != b)
            .count();
        (
            Outcome::Refuted,
            format!("not Gassmann: class profiles differ on {differing} classes"),
        )
    } else if let Some(w) = cert.conjugacy_witness {
        (
            Outcome::Refuted,
            format!("conjugate: witness {}", ctx.group.cycle_string(w)),
        )
    } else {
        (Outcome::Verified, "Gassmann and not conjugate".to_string())
    }
}

fn header(ctx: &Context, h1: &Subgroup, h2: &Subgroup) -> String {
    format!(
        "{}: |G| = {}, |H1| = {}, |H2| = {}, {} classes",
        ctx.group.spec.name,
        ctx.table().order(),
        h1.order(),
        h2.order(),
        ctx.group.classes.len()
    )
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_verify(args: &PairArgs) -> Result<Output, CliError> {
    let ctx = Context::load(&args.group)?;
    let l1 = ctx.label(&args.h1, "h1")?;
    let l2 = ctx.label(&args.h2, "h2")?;
    let h1 = ctx.subgroup(&l1)?;
    let h2 = ctx.subgroup(&l2)?;
    let cert = is_gassmann(ctx.table(), &ctx.group.classes, &h1, &h2)?;

    let mut report = RunReport::new(CommandEcho {
        name: "verify",
        group: args.group.group.clone(),
        h1: Some(l1),
        h2: Some(l2),
        gens: None,
        seed: None,
    });
    report.certificate = Some(CertificateReport::new(ctx.table(), &ctx.group.classes, &cert));
    let (outcome, reason) = certificate_reason(&ctx, &cert);
    report.conclude(outcome, reason.clone());

    let summary = vec![
        header(&ctx, &h1, &h2),
        format!(
            "profiles equal: {}, characters equal: {}, conjugate: {}",
            yes_no(cert.is_gassmann),
            yes_no(cert.char_check),
            yes_no(cert.conjugacy_witness.is_some())
        ),
        format!("{}: {reason}", outcome.label()),
    ];
    Ok(Output::from_report(&report, summary, outcome))
}

fn scan_generating_sets(
    ctx: &Context,
    x1: &gassmann_core::group::CosetSpace,
    x2: &gassmann_core::group::CosetSpace,
    sets: usize,
    seed: u64,
) -> Result<ScanReport, CliError> {
    let table = ctx.table();
    let picks = table.generator_indices().len().max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut isospectral = 0;
    let mut refuting = Vec::new();
    for _ in 0..sets {
        let Some(s) = random_generating_set(table, picks, 200, &mut rng) else {
            break;
        };
        let g1 = schreier_on_cosets(table, x1, &s).map_err(stage("scan"))?;
        let g2 = schreier_on_cosets(table, x2, &s).map_err(stage("scan"))?;
        if isospectral_verdict(&g1, &g2, false).map_err(stage("scan"))?.equal {
            isospectral += 1;
        } else {
            refuting.push(s.iter().map(|&g| ctx.group.cycle_string(g)).collect());
        }
    }
    Ok(ScanReport {
        seed,
        sets,
        isospectral,
        refuting,
    })
}

pub fn cmd_full(args: &FullArgs) -> Result<Output, CliError> {
    let mut timer = Timer::new(args.timings);
    let ctx = Context::load(&args.pair.group)?;
    let table = ctx.table();
    let l1 = ctx.label(&args.pair.h1, "h1")?;
    let l2 = ctx.label(&args.pair.h2, "h2")?;
    let h1 = ctx.subgroup(&l1)?;
    let h2 = ctx.subgroup(&l2)?;
    let gen_texts = ctx.generator_texts(&args.gens);
    let s = ctx.generating_set(&gen_texts)?;
    timer.lap("load");

    let mut report = RunReport::new(CommandEcho {
        name: "full",
        group: args.pair.group.group.clone(),
        h1: Some(l1),
        h2: Some(l2),
        gens: Some(gen_texts),
        seed: Some(args.seed),
    });
    let mut summary = vec![header(&ctx, &h1, &h2)];

    let cert = is_gassmann(table, &ctx.group.classes, &h1, &h2).map_err(stage("certificate"))?;
    report.certificate = Some(CertificateReport::new(table, &ctx.group.classes, &cert));
    let (cert_outcome, cert_reason) = certificate_reason(&ctx, &cert);
    summary.push(format!("certificate: {cert_reason}"));
    let x1 = left_cosets(table, &h1).map_err(stage("certificate"))?;
    let x2 = left_cosets(table, &h2).map_err(stage("certificate"))?;
    timer.lap("certificate");

    if args.scan > 0 {
        let scan = scan_generating_sets(&ctx, &x1, &x2, args.scan, args.seed)?;
        summary.push(format!(
            "scan: {} of {} random generating sets isospectral",
            scan.isospectral, scan.sets
        ));
        report.scan = Some(scan);
        timer.lap("scan");
    }

    let basis = intertwiner_basis(table, &x1, &x2).map_err(stage("intertwiner"))?;
    let search = IntertwinerSearch {
        seed: args.seed,
        ..IntertwinerSearch::default()
    };
    let intertwiner = match find_invertible_intertwiner(&basis, search) {
        Ok(s) => s,
        Err(e @ TransplantError::NoInvertibleFound { .. }) => {
            summary.push(format!("intertwiner: {e}"));
            report.stage_error = Some(StageError {
                stage: "intertwiner",
                message: e.to_string(),
            });
            let outcome = report.conclude(Outcome::Refuted, format!("intertwiner stage: {e}"));
            summary.push(format!("{}: {}", outcome.label(), report.verdict.reason));
            timer.lap("intertwiner");
            report.timings_ms = timer.finish();
            return Ok(Output::from_report(&report, summary, outcome));
        }
        Err(e) => return Err(stage("intertwiner")(e)),
    };
    summary.push(format!(
        "intertwiner: phi = {:?}, det = {}",
        intertwiner.phi, intertwiner.det
    ));
    report.intertwiner = Some(IntertwinerReport::from(&intertwiner));
    timer.lap("intertwiner");

    let unitary = orthogonalize(&intertwiner, POLAR_TOLERANCE).map_err(stage("unitary"))?;
    let eq_residual = equivariance_residual(table, &unitary.u, &x1, &x2);
    report.unitary = Some(UnitaryReport {
        iterations: unitary.iterations,
        residual: unitary.residual,
        equivariance_residual: eq_residual,
    });
    let unitary_ok = unitary.residual < 1e-12 && eq_residual < 1e-11;
    timer.lap("unitary");

    let g1 = schreier_on_cosets(table, &x1, &s).map_err(stage("graphs"))?;
    let g2 = schreier_on_cosets(table, &x2, &s).map_err(stage("graphs"))?;
    let isomorphic = match graphs_isomorphic(&g1, &g2, ISOMORPHISM_CAP) {
        Ok(w) => Some(w.is_some()),
        Err(SpectralError::TooLarge { .. }) => None,
        Err(e) => return Err(stage("graphs")(e)),
    };
    let graph_commutation =
        verify_transplantation_on_graphs(table, &x1, &x2, &s, &intertwiner).map_err(stage("graphs"))?;
    report.graphs = Some(GraphsReport {
        generating_set: s.iter().map(|&g| ctx.group.cycle_string(g)).collect(),
        generates: generates(table, &s),
        vertices: g1.n,
        degree: s.len(),
        edge_records: [g1.edge_record_count(), g2.edge_record_count()],
        isomorphic,
        commutation: graph_commutation,
    });
    timer.lap("graphs");

    let spectral = isospectral_verdict(&g1, &g2, true).map_err(stage("spectral"))?;
    let zeta = zeta_verdict(&g1, &g2);
    report.spectral = Some(SpectralJson::from(&spectral));
    report.zeta = Some(ZetaJson::from(&zeta));
    summary.push(format!(
        "quotients: {} vertices, {}-regular, isospectral: {}, same zeta: {}, isomorphic: {}",
        g1.n,
        s.len(),
        yes_no(spectral.equal),
        yes_no(zeta.equal),
        isomorphic.map_or("not checked", yes_no)
    ));
    timer.lap("spectral");

    let (module, module_name) = if table.order() <= REGULAR_MODULE_LIMIT {
        (GModule::regular(table), "regular")
    } else {
        (GModule::natural(table), "natural")
    };
    let transplant = transplantation(table, &module, &x1, &x2, &intertwiner);
    let (transplant_ok, transplant_report) = match transplant {
        Ok(t) => {
            let mut checks = Vec::new();
            for (k, class) in ctx.group.classes.classes.iter().enumerate() {
                let delta = module.element_sum(class);
                let commutes = verify_commutation(table, &module, &delta, &t).map_err(stage("transplant"))?;
                checks.push(CommutationCheck {
                    delta: format!("class sum {k}"),
                    commutes,
                });
            }
            let ok = checks.iter().all(|c| c.commutes);
            (
                ok,
                TransplantReport {
                    schema_version: SCHEMA_VERSION,
                    module: module_name.to_string(),
                    dim_source: t.source.dim(),
                    dim_target: t.target.dim(),
                    rank: t.rank(),
                    commutation: checks,
                },
            )
        }
        Err(TransplantError::RankDeficient { rank, expected }) => (
            false,
            TransplantReport {
                schema_version: SCHEMA_VERSION,
                module: module_name.to_string(),
                dim_source: expected,
                dim_target: expected,
                rank,
                commutation: Vec::new(),
            },
        ),
        Err(e) => return Err(stage("transplant")(e)),
    };
    summary.push(format!(
        "transplantation ({module_name} module): rank {} of {}, commutes with class sums: {}",
        transplant_report.rank,
        transplant_report.dim_source,
        yes_no(transplant_ok)
    ));
    report.transplant = Some(transplant_report);
    timer.lap("transplant");

    let failures: Vec<&str> = [
        (!spectral.equal, "Laplacian charpolys differ"),
        (!zeta.equal, "zeta polynomials differ"),
        (!graph_commutation, "S·L1 ≠ L2·S"),
        (!transplant_ok, "transplantation check failed"),
        (!unitary_ok, "unitary refinement above tolerance"),
    ]
    .iter()
    .filter(|(bad, _)| *bad)
    .map(|(_, why)| *why)
    .collect();
    let outcome = if !failures.is_empty() {
        report.conclude(Outcome::Refuted, failures.join("; "))
    } else if cert_outcome != Outcome::Verified {
        report.conclude(Outcome::Refuted, cert_reason)
    } else {
        report.conclude(Outcome::Verified, "all checks passed")
    };
    summary.push(format!("{}: {}", outcome.label(), report.verdict.reason));
    report.timings_ms = timer.finish();
    Ok(Output::from_report(&report, summary, outcome))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupJson {
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairJson {
    pub index: usize,
    pub h1: SubgroupJson,
    pub h2: SubgroupJson,
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub schema_version: &'static str,
    pub group: String,
    pub order_filter: Option<usize>,
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    pub pairs: Vec<PairJson>,
}

/// A small generating set: members added greedily while they enlarge the
/// span.
pub fn greedy_generators(table: &GroupTable, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(table);
    for &m in h.members() {
        if !span.contains(m) {
            gens.push(m);
            span = subgroup_from_generators(table, &gens).expect("members of a subgroup of this table");
        }
    }
    gens
}

pub fn cmd_search(args: &SearchArgs) -> Result<Output, CliError> {
    let ctx = Context::load(&args.group)?;
    let table = ctx.table();
    let options = SearchOptions {
        max_generators: args.max_generators,
        exhaustive: args.exhaustive,
        budget: args.budget,
    };
    let pairs = search_pairs(table, &ctx.group.classes, args.order, options).map_err(CoreError::from)?;
    let describe = |h: &Subgroup| SubgroupJson {
        order: h.order(),
        generators: greedy_generators(table, h)
            .into_iter()
            .map(|g| ctx.group.cycle_string(g))
            .collect(),
    };
    let report = SearchReport {
        schema_version: SCHEMA_VERSION,
        group: args.group.group.clone(),
        order_filter: args.order,
        group_order: table.order(),
        class_sizes: ctx.group.classes.sizes(),
        pairs: pairs
            .iter()
            .map(|p| PairJson {
                index: p.certificate.orders.index,
                h1: describe(&p.h1),
                h2: describe(&p.h2),
                profile: p.certificate.profile1.counts.clone(),
            })
            .collect(),
    };
    let outcome = if report.pairs.is_empty() {
        Outcome::Refuted
    } else {
        Outcome::Verified
    };
    let mut summary = vec![format!(
        "{}: |G| = {}, {} non-conjugate Gassmann pair(s){}",
        ctx.group.spec.name,
        table.order(),
        report.pairs.len(),
        args.order.map_or(String::new(), |o| format!(" of order {o}"))
    )];
    for p in &report.pairs {
        summary.push(format!(
            "  |H| = {}: <{}> vs <{}>",
            p.h1.order,
            p.h1.generators.join(", "),
            p.h2.generators.join(", ")
        ));
    }
    Ok(Output::from_report(&report, summary, outcome))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DotReport {
    pub schema_version: &'static str,
    pub path: String,
    pub vertices: usize,
    pub degree: usize,
    pub edge_records: usize,
}

pub fn cmd_export_dot(args: &DotArgs) -> Result<Output, CliError> {
    let ctx = Context::load(&args.group)?;
    let h = ctx.subgroup(&args.h)?;
    let s = ctx.generating_set(&ctx.generator_texts(&args.gens))?;
    let graph = schreier_quotient(ctx.table(), &h, &s)?;
    let dot = graph.to_dot(&format!("{} / {}", ctx.group.spec.name, args.h));
    let path = args.out.display().to_string();
    fs::write(&args.out, dot).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    let report = DotReport {
        schema_version: SCHEMA_VERSION,
        path,
        vertices: graph.n,
        degree: s.len(),
        edge_records: graph.edge_record_count(),
    };
    let summary = vec![format!(
        "wrote {} ({} vertices, {} edge records)",
        report.path, report.vertices, report.edge_records
    )];
    Ok(Output::from_report(&report, summary, Outcome::Verified))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogListing {
    pub name: String,
    pub description: String,
    pub degree: usize,
    pub order: usize,
    pub h1: String,
    pub h2: String,
    pub default_gens: Vec<String>,
    pub gassmann: bool,
    pub conjugate: bool,
}

pub fn cmd_catalog() -> Result<Output, CliError> {
    let mut listing = Vec::new();
    let mut summary = Vec::new();
    for entry in catalog() {
        let group = entry.group.load(DEFAULT_CAP)?;
        summary.push(format!(
            "{:<8} |G| = {:<4} {}",
            entry.name,
            group.table.order(),
            entry.description
        ));
        listing.push(CatalogListing {
            order: group.table.order(),
            degree: entry.group.degree,
            name: entry.name,
            description: entry.description,
            h1: entry.h1,
            h2: entry.h2,
            default_gens: entry.default_gens,
            gassmann: entry.expected.gassmann,
            conjugate: entry.expected.conjugate,
        });
    }
    Ok(Output::from_report(&listing, summary, Outcome::Verified))
}
