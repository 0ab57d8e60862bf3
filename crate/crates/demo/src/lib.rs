//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes expression text and a bit width and returns text for
//! display; errors come back as strings.

use mba_core::egraph::EGraph;
use mba_core::expr::{parse, preprocess, render, resugar, Expr, Width};
use mba_core::rewrite::{default_ruleset, saturate, SaturationLimits};
use mba_core::semantics::{verify as check, VerifyPolicy};
use mba_core::simplify::{simplify as run, SimplifyConfig};
use wasm_bindgen::prelude::*;

fn read(text: &str, bits: u32) -> Result<(Expr, Width), String> {
    let width = Width::new(bits).map_err(|e| e.to_string())?;
    let e = parse(text, width).map_err(|e| e.to_string())?;
    Ok((e, width))
}

/// Simplifies `text` and reports the result, its size and a verification
/// verdict, one per line.
#[wasm_bindgen]
pub fn simplify(text: &str, bits: u32) -> Result<String, String> {
    let (e, width) = read(text, bits)?;
    let out = run(&e, &SimplifyConfig::new(width));
    let verdict = check(&e, &out.output, width, VerifyPolicy::default());
    Ok(format!(
        "{}\nsize {} -> {} ({}, {} ms)\n{verdict}",
        render(&resugar(&out.output, width)),
        out.input_size,
        out.output_size,
        out.report.stop_reason,
        out.millis
    ))
}

/// Checks two expressions for equivalence.
#[wasm_bindgen]
pub fn verify(a: &str, b: &str, bits: u32) -> Result<String, String> {
    let (a, width) = read(a, bits)?;
    let (b, _) = read(b, bits)?;
    Ok(check(&a, &b, width, VerifyPolicy::default()).to_string())
}

/// Graphviz source for the e-graph of `text`, saturated when `saturated`
/// is set.
#[wasm_bindgen]
pub fn dump_dot(text: &str, bits: u32, saturated: bool) -> Result<String, String> {
    let (e, width) = read(text, bits)?;
    let e = preprocess(&e, width);
    let mut g = EGraph::new(width);
    g.add_expr(&e);
    g.rebuild();
    if saturated {
        saturate(&mut g, &default_ruleset(width), &SaturationLimits::default());
    }
    Ok(g.dump_dot())
}
