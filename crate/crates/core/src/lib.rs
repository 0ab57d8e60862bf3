//! Simplification of Mixed Boolean-Arithmetic (MBA) expressions by equality
//! saturation.
//!
//! An input expression is parsed ([`expr::parse`]), stripped of unary
//! operators ([`expr::preprocess`]), loaded into an [`egraph::EGraph`],
//! saturated with the rule catalog ([`rewrite::default_ruleset`]) and the
//! smallest equivalent term is extracted ([`extract::extract_best`]).
//! [`semantics`] provides the bitvector oracle used to check results, and
//! [`bench`] runs whole datasets.
//!
//! ```
//! use mba_core::{expr::{parse, Width}, simplify::{simplify, SimplifyConfig}};
//!
//! let width = Width::new(8).unwrap();
//! let input = parse("(x|y)+y-(~x&y)", width).unwrap();
//! let out = simplify(&input, &SimplifyConfig::new(width));
//! assert_eq!(out.output_size, 3);
//! ```

pub mod bench;
pub mod egraph;
pub mod expr;
pub mod extract;
pub mod rewrite;
pub mod rng;
pub mod semantics;
pub mod simplify;

#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;
#[cfg(target_arch = "wasm32")]
use web_time::Instant;
