//! JSON documents emitted by the command-line tool and the browser demo.
//!
//! Field names are stable within a schema version. Big integers are written
//! as decimal strings because coefficients outgrow 64 bits quickly.

use num_bigint::BigInt;
use serde::Serialize;

use crate::gassmann::{GassmannCertificate, Orders};
use crate::group::{ClassPartition, GroupTable};
use crate::spectral::{SpectralReport, ZetaReport};
use crate::transplant::Intertwiner;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub schema_version: &'static str,
    pub orders: Orders,
    pub class_sizes: Vec<usize>,
    /// Entry `c` is the intersection count with class `c`.
    pub profile1: Vec<usize>,
    pub profile2: Vec<usize>,
    pub is_gassmann: bool,
    pub char_check: bool,
    /// Cycle notation of a conjugating element, or null.
    pub conjugacy_witness: Option<String>,
}

impl CertificateReport {
    pub fn new(group: &GroupTable, classes: &ClassPartition, cert: &GassmannCertificate) -> CertificateReport {
        CertificateReport {
            schema_version: SCHEMA_VERSION,
            orders: cert.orders,
            class_sizes: classes.sizes(),
            profile1: cert.profile1.counts.clone(),
            profile2: cert.profile2.counts.clone(),
            is_gassmann: cert.is_gassmann,
            char_check: cert.char_check,
            conjugacy_witness: cert
                .conjugacy_witness
                .map(|g| group.element(g).to_cycle_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwinerReport {
    pub schema_version: &'static str,
    /// Entry `d` is the coefficient on double coset `d`.
    pub phi: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<i64>>,
    pub det: String,
    pub max_norm: i64,
}

impl From<&Intertwiner> for IntertwinerReport {
    fn from(s: &Intertwiner) -> Self {
        IntertwinerReport {
            schema_version: SCHEMA_VERSION,
            phi: s.phi.clone(),
            rows: s.matrix.len(),
            cols: s.matrix.first().map_or(0, Vec::len),
            matrix: s.matrix.clone(),
            det: s.det.to_string(),
            max_norm: s.max_norm(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutationCheck {
    pub delta: String,
    pub commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransplantReport {
    pub schema_version: &'static str,
    pub module: String,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub commutation: Vec<CommutationCheck>,
}

pub fn decimal(coeffs: &[BigInt]) -> Vec<String> {
    coeffs.iter().map(BigInt::to_string).collect()
}

/// Rounds for display so that tiny negative zeros do not leak into reports.
fn display_round(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralJson {
    pub schema_version: &'static str,
    /// Coefficients of `det(xI − L)`, constant term first.
    pub charpoly1: Vec<String>,
    pub charpoly2: Vec<String>,
    pub equal: bool,
    pub float_spectra: Option<[Vec<f64>; 2]>,
}

impl From<&SpectralReport> for SpectralJson {
    fn from(r: &SpectralReport) -> Self {
        SpectralJson {
            schema_version: SCHEMA_VERSION,
            charpoly1: decimal(&r.charpoly1),
            charpoly2: decimal(&r.charpoly2),
            equal: r.equal,
            float_spectra: r.float_spectra.as_ref().map(|(a, b)| {
                [
                    a.iter().copied().map(display_round).collect(),
                    b.iter().copied().map(display_round).collect(),
                ]
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaJson {
    pub schema_version: &'static str,
    /// Coefficients of `det(I − Au + (D − I)u²)`, constant term first.
    pub poly1: Vec<String>,
    pub poly2: Vec<String>,
    pub equal: bool,
}

impl From<&ZetaReport> for ZetaJson {
    fn from(r: &ZetaReport) -> Self {
        ZetaJson {
            schema_version: SCHEMA_VERSION,
            poly1: decimal(&r.poly1),
            poly2: decimal(&r.poly2),
            equal: r.equal,
        }
    }
}
