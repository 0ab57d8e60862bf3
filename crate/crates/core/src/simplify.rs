//! The end-to-end simplification pipeline.

use crate::egraph::EGraph;
use crate::expr::{ast_size, preprocess, Expr, Width};
use crate::extract::{extract_best, CostModel};
use crate::rewrite::{default_ruleset, saturate, Group, RuleSet, SaturationLimits, SaturationReport};
use crate::Instant;

#[derive(Debug, Clone)]
pub struct SimplifyConfig {
    pub width: Width,
    pub limits: SaturationLimits,
    pub rules: RuleSet,
    pub cost: CostModel,
}

impl SimplifyConfig {
    /// Default limits with the full catalog.
    pub fn new(width: Width) -> Self {
        SimplifyConfig {
            width,
            limits: SaturationLimits::default(),
            rules: default_ruleset(width),
            cost: CostModel::ast_size(),
        }
    }

    pub fn with_groups(mut self, groups: &[Group]) -> Self {
        self.rules = default_ruleset(self.width).with_groups(groups);
        self
    }
}

#[derive(Debug, Clone)]
pub struct Simplified {
    /// The input after unary elimination.
    pub input: Expr,
    pub output: Expr,
    pub input_size: usize,
    pub output_size: usize,
    pub report: SaturationReport,
    /// Wall time of preprocess, saturation and extraction.
    pub millis: u64,
}

pub fn simplify(e: &Expr, config: &SimplifyConfig) -> Simplified {
    let start = Instant::now();
    let input = preprocess(e, config.width);
    let mut g = EGraph::new(config.width);
    let root = g.add_expr(&input);
    let report = saturate(&mut g, &config.rules, &config.limits);
    let best = extract_best(&g, root, &config.cost).expect("the input term is always representable");
    let millis = start.elapsed().as_millis() as u64;
    Simplified {
        input_size: ast_size(&input),
        output_size: ast_size(&best.expr),
        input,
        output: best.expr,
        report,
        millis,
    }
}
