//! Browser bindings. Each exported function returns a JSON string; the
//! `*_json` functions are the plain Rust versions used by the bindings and
//! by native tests.

use gassmann_core::gassmann::is_gassmann;
use gassmann_core::group::{left_cosets, DEFAULT_CAP};
use gassmann_core::input::{catalog, catalog_entry, split_cycle_list, CatalogEntry, LoadedGroup};
use gassmann_core::report::{CertificateReport, IntertwinerReport, SpectralJson, ZetaJson};
use gassmann_core::spectral::{
    graphs_isomorphic, isospectral_verdict, schreier_on_cosets, symmetrize, verify_transplantation_on_graphs,
    zeta_verdict, ISOMORPHISM_CAP,
};
use gassmann_core::transplant::{find_invertible_intertwiner, intertwiner_basis, IntertwinerSearch};
use gassmann_core::Subgroup;
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn load(name: &str) -> Result<(CatalogEntry, LoadedGroup, Subgroup, Subgroup), String> {
    let entry = catalog_entry(name).map_err(err)?;
    let group = entry.group.load(DEFAULT_CAP).map_err(err)?;
    let h1 = group.subgroup(&entry.h1).map_err(err)?;
    let h2 = group.subgroup(&entry.h2).map_err(err)?;
    Ok((entry, group, h1, h2))
}

#[derive(Serialize)]
struct EntrySummary {
    name: String,
    description: String,
    h1: String,
    h2: String,
    default_gens: String,
}

pub fn catalog_listing_json() -> String {
    let entries: Vec<EntrySummary> = catalog()
        .into_iter()
        .map(|e| EntrySummary {
            default_gens: e.default_gens.join(", "),
            name: e.name,
            description: e.description,
            h1: e.h1,
            h2: e.h2,
        })
        .collect();
    serde_json::to_string(&entries).expect("serializable")
}

#[derive(Serialize)]
struct Certification {
    certificate: CertificateReport,
    intertwiner: Option<IntertwinerReport>,
    intertwiner_error: Option<String>,
}

/// Class profiles of the entry's pair and, when one exists, a small
/// invertible intertwiner.
pub fn certify_json(name: &str) -> Result<String, String> {
    let (_, group, h1, h2) = load(name)?;
    let table = &group.table;
    let cert = is_gassmann(table, &group.classes, &h1, &h2).map_err(err)?;
    let x1 = left_cosets(table, &h1).map_err(err)?;
    let x2 = left_cosets(table, &h2).map_err(err)?;
    let basis = intertwiner_basis(table, &x1, &x2).map_err(err)?;
    let (intertwiner, intertwiner_error) = match find_invertible_intertwiner(&basis, IntertwinerSearch::default()) {
        Ok(s) => (Some(IntertwinerReport::from(&s)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let out = Certification {
        certificate: CertificateReport::new(table, &group.classes, &cert),
        intertwiner,
        intertwiner_error,
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

#[derive(Serialize)]
struct Quotients {
    generating_set: Vec<String>,
    adjacency: [Vec<Vec<u32>>; 2],
    spectral: SpectralJson,
    zeta: ZetaJson,
    isomorphic: Option<bool>,
    /// Exact `S·L1 = L2·S` for the entry's intertwiner, if it has one.
    commutation: Option<bool>,
}

/// Both Schreier quotients for a comma-separated list of generators
/// (empty means the entry's defaults), with exact spectral comparisons.
pub fn quotients_json(name: &str, gens: &str) -> Result<String, String> {
    let (entry, group, h1, h2) = load(name)?;
    let table = &group.table;
    let texts = if gens.trim().is_empty() {
        entry.default_gens.clone()
    } else {
        split_cycle_list(gens)
    };
    let raw = group.elements(&texts).map_err(err)?;
    let s = symmetrize(table, &raw).map_err(err)?;
    let x1 = left_cosets(table, &h1).map_err(err)?;
    let x2 = left_cosets(table, &h2).map_err(err)?;
    let g1 = schreier_on_cosets(table, &x1, &s).map_err(err)?;
    let g2 = schreier_on_cosets(table, &x2, &s).map_err(err)?;
    let spectral = isospectral_verdict(&g1, &g2, true).map_err(err)?;
    let zeta = zeta_verdict(&g1, &g2);
    let isomorphic = graphs_isomorphic(&g1, &g2, ISOMORPHISM_CAP).ok().map(|w| w.is_some());
    let basis = intertwiner_basis(table, &x1, &x2).map_err(err)?;
    let commutation = find_invertible_intertwiner(&basis, IntertwinerSearch::default())
        .ok()
        .map(|si| verify_transplantation_on_graphs(table, &x1, &x2, &s, &si))
        .transpose()
        .map_err(err)?;
    let out = Quotients {
        generating_set: s.iter().map(|&g| group.cycle_string(g)).collect(),
        adjacency: [g1.adj.clone(), g2.adj.clone()],
        spectral: SpectralJson::from(&spectral),
        zeta: ZetaJson::from(&zeta),
        isomorphic,
        commutation,
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

#[wasm_bindgen]
pub fn catalog_listing() -> String {
    catalog_listing_json()
}

#[wasm_bindgen]
pub fn certify(name: &str) -> Result<String, JsError> {
    certify_json(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn quotients(name: &str, gens: &str) -> Result<String, JsError> {
    quotients_json(name, gens).map_err(|e| JsError::new(&e))
}
