//! Minimum-cost term extraction.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::egraph::{EGraph, ENode, Id, OpTag};
use crate::expr::Expr;

/// Per-operator node cost. Costs must be at least 1.
#[derive(Clone)]
pub struct CostModel {
    cost: Arc<dyn Fn(OpTag) -> u64 + Send + Sync>,
}

impl CostModel {
    pub fn new(cost: impl Fn(OpTag) -> u64 + Send + Sync + 'static) -> Self {
        CostModel {
            cost: Arc::new(move |tag| cost(tag).max(1)),
        }
    }

    /// One unit per node: the tree size of the extracted term.
    pub fn ast_size() -> Self {
        CostModel::new(|_| 1)
    }

    pub fn node_cost(&self, tag: OpTag) -> u64 {
        (self.cost)(tag)
    }

    /// Cost of a whole expression tree under this model.
    pub fn expr_cost(&self, e: &Expr) -> u64 {
        match e {
            Expr::Const(_) => self.node_cost(OpTag::Const),
            Expr::Var(_) => self.node_cost(OpTag::Var),
            // never built from the e-graph; charged like an operator
            Expr::Unary(_, c) => self.node_cost(OpTag::Var) + self.expr_cost(c),
            Expr::Binary(op, l, r) => self.node_cost(OpTag::Bin(*op)) + self.expr_cost(l) + self.expr_cost(r),
        }
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::ast_size()
    }
}

impl fmt::Debug for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CostModel").finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult {
    pub expr: Expr,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("e-class {0} has no finite-cost term")]
    CyclicOnly(Id),
    #[error("no term of e-class {0} fits within depth {1}")]
    DepthExhausted(Id, usize),
}

fn node_total(g: &EGraph, cm: &CostModel, node: &ENode, best: &[Option<(u64, ENode)>]) -> Option<u64> {
    let mut total = cm.node_cost(node.tag());
    for &c in node.children() {
        let (cost, _) = best[g.find(c).index()].as_ref()?;
        total = total.saturating_add(*cost);
    }
    Some(total)
}

fn term_of(g: &EGraph, id: Id, best: &[Option<(u64, ENode)>]) -> Expr {
    let (_, node) = best[g.find(id).index()].as_ref().expect("costed class");
    match node {
        ENode::Const(v) => Expr::Const(*v),
        ENode::Var(s) => Expr::Var(g.symbol_name(*s).to_string()),
        ENode::Bin(op, [a, b]) => Expr::binary(*op, term_of(g, *a, best), term_of(g, *b, best)),
    }
}

/// Relaxes every class's best cost until nothing improves, then reads the
/// witness off from `root`. Among equal-cost nodes the smallest in
/// [`ENode`] order wins.
pub fn extract_best(g: &EGraph, root: Id, cm: &CostModel) -> Result<ExtractionResult, ExtractError> {
    let slots = g.classes().map(|c| c.id.index() + 1).max().unwrap_or(0);
    let mut best: Vec<Option<(u64, ENode)>> = vec![None; slots];
    let mut changed = true;
    while changed {
        changed = false;
        for class in g.classes() {
            for node in &class.nodes {
                let Some(cost) = node_total(g, cm, node, &best) else {
                    continue;
                };
                let slot = &mut best[class.id.index()];
                let better = match slot {
                    None => true,
                    Some((c, n)) => (cost, node) < (*c, &*n),
                };
                if better {
                    *slot = Some((cost, node.clone()));
                    changed = true;
                }
            }
        }
    }
    let root = g.find(root);
    match &best[root.index()] {
        Some((cost, _)) => Ok(ExtractionResult {
            expr: term_of(g, root, &best),
            cost: *cost,
        }),
        None => Err(ExtractError::CyclicOnly(root)),
    }
}

/// Minimum cost over every term of height at most `depth_limit` (a leaf
/// has height 1) represented by `root`, found by exhaustive depth-bounded
/// search. Meant as a test oracle on small graphs.
pub fn brute_force_best(
    g: &EGraph,
    root: Id,
    cm: &CostModel,
    depth_limit: usize,
) -> Result<ExtractionResult, ExtractError> {
    fn go(
        g: &EGraph,
        cm: &CostModel,
        id: Id,
        depth: usize,
        memo: &mut HashMap<(Id, usize), Option<(u64, Expr)>>,
    ) -> Option<(u64, Expr)> {
        if depth == 0 {
            return None;
        }
        let id = g.find(id);
        if let Some(hit) = memo.get(&(id, depth)) {
            return hit.clone();
        }
        let mut best: Option<(u64, Expr)> = None;
        for node in &g.class(id).nodes {
            let candidate = match node {
                ENode::Const(v) => Some((cm.node_cost(OpTag::Const), Expr::Const(*v))),
                ENode::Var(s) => Some((cm.node_cost(OpTag::Var), Expr::Var(g.symbol_name(*s).into()))),
                ENode::Bin(op, [a, b]) => {
                    let l = go(g, cm, *a, depth - 1, memo);
                    let r = go(g, cm, *b, depth - 1, memo);
                    match (l, r) {
                        (Some((lc, le)), Some((rc, re))) => {
                            Some((cm.node_cost(OpTag::Bin(*op)) + lc + rc, Expr::binary(*op, le, re)))
                        }
                        _ => None,
                    }
                }
            };
            if let Some(c) = candidate {
                if best.as_ref().is_none_or(|b| c.0 < b.0) {
                    best = Some(c);
                }
            }
        }
        memo.insert((id, depth), best.clone());
        best
    }

    let mut memo = HashMap::new();
    go(g, cm, root, depth_limit, &mut memo)
        .map(|(cost, expr)| ExtractionResult { expr, cost })
        .ok_or(ExtractError::DepthExhausted(g.find(root), depth_limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, BinOp, Width};

    fn w8() -> Width {
        Width::new(8).unwrap()
    }

    #[test]
    fn picks_smaller_member() {
        let mut g = EGraph::new(w8());
        let sum = g.add_expr(&parse("x+0", w8()).unwrap());
        let x = g.add_var("x");
        g.union(sum, x);
        g.rebuild();
        let best = extract_best(&g, sum, &CostModel::ast_size()).unwrap();
        assert_eq!(best.expr, Expr::var("x"));
        assert_eq!(best.cost, 1);
        let brute = brute_force_best(&g, sum, &CostModel::ast_size(), 4).unwrap();
        assert_eq!(brute.cost, 1);
    }

    #[test]
    fn ties_break_on_child_order() {
        let mut g = EGraph::new(w8());
        let yx = g.add_expr(&parse("y+x", w8()).unwrap());
        let xy = g.add_expr(&parse("x+y", w8()).unwrap());
        g.union(yx, xy);
        g.rebuild();
        // y was interned first, so its class has the lower id
        let best = extract_best(&g, xy, &CostModel::ast_size()).unwrap();
        assert_eq!(best.expr.to_string(), "y+x");
    }

    #[test]
    fn cyclic_classes_still_extract() {
        let mut g = EGraph::new(w8());
        let x = g.add_var("x");
        let zero = g.add_const(0);
        let sum = g.add(ENode::Bin(BinOp::Add, [x, zero]));
        g.union(sum, x);
        g.rebuild();
        // x's class now contains x+0 whose child is the class itself
        let best = extract_best(&g, x, &CostModel::ast_size()).unwrap();
        assert_eq!(best.expr, Expr::var("x"));
    }

    #[test]
    fn weighted_costs() {
        let mut g = EGraph::new(w8());
        let mul = g.add_expr(&parse("a*2", w8()).unwrap());
        let shl = g.add_expr(&parse("a<<1", w8()).unwrap());
        g.union(mul, shl);
        g.rebuild();
        let cheap_shift = CostModel::new(|t| if t == OpTag::Bin(BinOp::Mul) { 5 } else { 1 });
        let best = extract_best(&g, mul, &cheap_shift).unwrap();
        assert_eq!(best.expr.to_string(), "a<<1");
        assert_eq!(best.cost, cheap_shift.expr_cost(&best.expr));
        let plain = extract_best(&g, mul, &CostModel::ast_size()).unwrap();
        assert_eq!(plain.expr.to_string(), "a*2");
    }

    #[test]
    fn zero_depth_is_exhausted() {
        let mut g = EGraph::new(w8());
        let x = g.add_var("x");
        assert_eq!(
            brute_force_best(&g, x, &CostModel::ast_size(), 0),
            Err(ExtractError::DepthExhausted(x, 0))
        );
    }
}
