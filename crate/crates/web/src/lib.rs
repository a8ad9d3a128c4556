//! Browser bindings. Every entry point takes plain strings and returns a JSON
//! document; errors come back as a message string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use rblie::envelope::{LiePresentation, Weight};
use rblie::io::commands::{self, SystemKind};
use rblie::io::{load_presentation, parse_rational};
use rblie::oplie::RlsEnumerationBounds;
use rblie::words::Alphabet;

/// Caps that keep a single request interactive.
pub const MAX_LS_DEGREE: usize = 12;
pub const MAX_PBW_DEGREE: usize = 3;
pub const MAX_PBW_RDEGREE: usize = 3;

const PRESETS: [(&str, &str); 3] = [
    ("sl2", include_str!("../../core/data/sl2.json")),
    ("heisenberg", include_str!("../../core/data/heisenberg.json")),
    ("abelian1", include_str!("../../core/data/abelian1.json")),
];

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data")
}

fn load(presentation: &str, weight: &str) -> Result<(LiePresentation, Weight), String> {
    let (p, mut w) = load_presentation(presentation).map_err(|e| e.to_string())?;
    if !weight.trim().is_empty() {
        w = Weight(parse_rational(weight.trim()).map_err(|e| e.to_string())?);
    }
    Ok((p, w))
}

/// `[{"name": ..., "json": ...}]` for the bundled presentations.
pub fn presets() -> String {
    let list: Vec<_> = PRESETS
        .iter()
        .map(|(name, text)| json!({ "name": name, "json": text }))
        .collect();
    to_json(&list)
}

pub fn ls_words(alphabet: &str, max_degree: usize) -> Result<String, String> {
    if max_degree == 0 || max_degree > MAX_LS_DEGREE {
        return Err(format!("degree must be between 1 and {MAX_LS_DEGREE}"));
    }
    let names: Vec<&str> = alphabet.split(',').map(str::trim).collect();
    let a = Alphabet::new(names).map_err(|e| e.to_string())?;
    Ok(to_json(&commands::lswords(&a, max_degree)))
}

pub fn normal_form(presentation: &str, weight: &str, system: &str, term: &str) -> Result<String, String> {
    let (p, w) = load(presentation, weight)?;
    let kind: SystemKind = system.parse().map_err(|e: commands::CommandError| e.to_string())?;
    let out = commands::nf(&p, &w, kind, term, None).map_err(|e| e.to_string())?;
    Ok(to_json(&out))
}

pub fn pbw_table(presentation: &str, weight: &str, max_degree: usize, max_rdegree: usize) -> Result<String, String> {
    if max_degree == 0 || max_degree > MAX_PBW_DEGREE || max_rdegree > MAX_PBW_RDEGREE {
        return Err(format!(
            "bounds must satisfy 1 ≤ degree ≤ {MAX_PBW_DEGREE} and rdegree ≤ {MAX_PBW_RDEGREE}"
        ));
    }
    let (p, w) = load(presentation, weight)?;
    let bounds = RlsEnumerationBounds::new(max_degree, max_rdegree);
    let out = commands::pbw(&p, &w, &bounds).map_err(|e| e.to_string())?;
    Ok(to_json(&out))
}

#[wasm_bindgen(js_name = presets)]
pub fn presets_js() -> String {
    presets()
}

#[wasm_bindgen(js_name = lsWords)]
pub fn ls_words_js(alphabet: &str, max_degree: usize) -> Result<String, JsError> {
    ls_words(alphabet, max_degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = normalForm)]
pub fn normal_form_js(presentation: &str, weight: &str, system: &str, term: &str) -> Result<String, JsError> {
    normal_form(presentation, weight, system, term).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = pbwTable)]
pub fn pbw_table_js(presentation: &str, weight: &str, max_degree: usize, max_rdegree: usize) -> Result<String, JsError> {
    pbw_table(presentation, weight, max_degree, max_rdegree).map_err(|e| JsError::new(&e))
}
