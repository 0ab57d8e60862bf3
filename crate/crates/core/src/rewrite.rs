//! Patterns, e-matching, the rule catalog and the equality saturation loop.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::egraph::{EGraph, ENode, Id};
use crate::expr::{parse, BinOp, Expr, ParseError, Width};
use crate::Instant;

/// A pattern tree. Variables are indices into the owning [`Pattern`]'s
/// name list; repeated indices must bind the same e-class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatNode {
    Var(usize),
    Const(u64),
    Bin(BinOp, Box<PatNode>, Box<PatNode>),
}

impl PatNode {
    pub fn bin(op: BinOp, l: PatNode, r: PatNode) -> Self {
        PatNode::Bin(op, Box::new(l), Box::new(r))
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            PatNode::Var(i) => {
                if !out.contains(i) {
                    out.push(*i)
                }
            }
            PatNode::Const(_) => {}
            PatNode::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn to_expr(&self, names: &[String], consts: &[(usize, u64)]) -> Expr {
        match self {
            PatNode::Var(i) => match consts.iter().find(|(v, _)| v == i) {
                Some((_, c)) => Expr::Const(*c),
                None => Expr::Var(names[*i].clone()),
            },
            PatNode::Const(c) => Expr::Const(*c),
            PatNode::Bin(op, l, r) => Expr::binary(*op, l.to_expr(names, consts), r.to_expr(names, consts)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PatNode::Var(_) | PatNode::Const(_) => 1,
            PatNode::Bin(_, l, r) => 1 + l.size() + r.size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub root: PatNode,
    pub vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unary operators are not allowed in patterns")]
    Unary,
    #[error("variable `{0}` appears on the right but not on the left")]
    UnboundVar(String),
}

fn pat_from_expr(e: &Expr, vars: &mut Vec<String>, allow_new: bool) -> Result<PatNode, PatternError> {
    Ok(match e {
        Expr::Const(v) => PatNode::Const(*v),
        Expr::Var(n) => match vars.iter().position(|v| v == n) {
            Some(i) => PatNode::Var(i),
            None if allow_new => {
                vars.push(n.clone());
                PatNode::Var(vars.len() - 1)
            }
            None => return Err(PatternError::UnboundVar(n.clone())),
        },
        Expr::Unary(..) => return Err(PatternError::Unary),
        Expr::Binary(op, l, r) => PatNode::bin(
            *op,
            pat_from_expr(l, vars, allow_new)?,
            pat_from_expr(r, vars, allow_new)?,
        ),
    })
}

impl Pattern {
    /// Parses a pattern in expression syntax; identifiers become pattern
    /// variables.
    pub fn parse(text: &str, width: Width) -> Result<Self, PatternError> {
        let mut vars = Vec::new();
        let root = pat_from_expr(&parse(text, width)?, &mut vars, true)?;
        Ok(Pattern { root, vars })
    }

    /// Parses a right-hand side whose variables must all be in `vars`.
    pub fn parse_rhs(text: &str, width: Width, vars: &[String]) -> Result<PatNode, PatternError> {
        let mut vars = vars.to_vec();
        pat_from_expr(&parse(text, width)?, &mut vars, false)
    }

    pub fn to_expr(&self) -> Expr {
        self.root.to_expr(&self.vars, &[])
    }
}

/// Pattern-variable bindings, indexed like [`Pattern::vars`].
pub type Subst = Vec<Id>;

/// Depth-first matcher over a stack of open (pattern, class) goals.
/// `emit` returns false to abandon the search; so does this function.
fn solve<'p>(
    g: &EGraph,
    goals: &mut Vec<(&'p PatNode, Id)>,
    subst: &mut [Option<Id>],
    emit: &mut dyn FnMut(&[Option<Id>]) -> bool,
) -> bool {
    let Some((pat, class)) = goals.pop() else {
        return emit(subst);
    };
    let go_on = match pat {
        PatNode::Var(i) => match subst[*i] {
            Some(bound) => bound != class || solve(g, goals, subst, emit),
            None => {
                subst[*i] = Some(class);
                let go_on = solve(g, goals, subst, emit);
                subst[*i] = None;
                go_on
            }
        },
        // a clean class holds at most one constant node, sorted first
        PatNode::Const(v) => match g.class(class).nodes.first() {
            Some(ENode::Const(c)) if c == v => solve(g, goals, subst, emit),
            _ => true,
        },
        PatNode::Bin(op, l, r) => match (determined(g, l, subst), determined(g, r, subst)) {
            // both children known: one hashcons probe replaces the scan
            (Some(a), Some(b)) => {
                let hit = a.zip(b).and_then(|(a, b)| g.lookup(&ENode::Bin(*op, [a, b])));
                hit != Some(class) || solve(g, goals, subst, emit)
            }
            _ => scan(g, *op, l, r, class, goals, subst, emit),
        },
    };
    goals.push((pat, class));
    go_on
}

/// The class a leaf pattern must match under `subst`: `Some(None)` when it
/// is a constant absent from the graph, `None` when not yet determined.
fn determined(g: &EGraph, pat: &PatNode, subst: &[Option<Id>]) -> Option<Option<Id>> {
    match pat {
        PatNode::Var(i) => subst[*i].map(Some),
        PatNode::Const(v) => Some(g.lookup(&ENode::Const(*v))),
        PatNode::Bin(..) => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn scan<'p>(
    g: &EGraph,
    op: BinOp,
    l: &'p PatNode,
    r: &'p PatNode,
    class: Id,
    goals: &mut Vec<(&'p PatNode, Id)>,
    subst: &mut [Option<Id>],
    emit: &mut dyn FnMut(&[Option<Id>]) -> bool,
) -> bool {
    let mut go_on = true;
    for node in &g.class(class).nodes {
        let ENode::Bin(nop, [a, b]) = node else { continue };
        if *nop != op {
            continue;
        }
        // leaves pop first so bound variables prune early
        if matches!(*r, PatNode::Bin(..)) || !matches!(*l, PatNode::Bin(..)) {
            goals.push((r, *b));
            goals.push((l, *a));
        } else {
            goals.push((l, *a));
            goals.push((r, *b));
        }
        go_on = solve(g, goals, subst, emit);
        goals.truncate(goals.len() - 2);
        if !go_on {
            break;
        }
    }
    go_on
}

/// Like [`ematch`], but stops after `limit` substitutions. The flag is
/// false when matches were left unreported.
pub fn ematch_limited(g: &EGraph, pattern: &Pattern, limit: usize) -> (Vec<(Id, Subst)>, bool) {
    debug_assert!(g.is_clean(), "e-matching requires a rebuilt graph");
    let mut out = Vec::new();
    let mut goals = Vec::new();
    let mut subst = vec![None; pattern.vars.len()];
    let mut found: Vec<Subst> = Vec::new();
    for class in g.classes() {
        found.clear();
        goals.push((&pattern.root, class.id));
        let budget = limit - out.len();
        let complete = solve(g, &mut goals, &mut subst, &mut |s| {
            found.push(s.iter().map(|b| b.expect("all variables bound")).collect());
            found.len() <= budget
        });
        goals.clear();
        found.sort_unstable();
        found.dedup();
        let complete = complete && found.len() <= budget;
        found.truncate(budget);
        out.extend(found.drain(..).map(|s| (class.id, s)));
        if !complete {
            return (out, false);
        }
    }
    (out, true)
}

/// Finds every class representing an instance of `pattern`, in order of
/// class id and then substitution.
pub fn ematch(g: &EGraph, pattern: &Pattern) -> Vec<(Id, Subst)> {
    ematch_limited(g, pattern, usize::MAX).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    Structural,
    ArithId,
    BoolId,
    MbaBridge,
    ConstFold,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::Structural,
        Group::ArithId,
        Group::BoolId,
        Group::MbaBridge,
        Group::ConstFold,
    ];
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::Structural => "structural",
            Group::ArithId => "arithid",
            Group::BoolId => "boolid",
            Group::MbaBridge => "mbabridge",
            Group::ConstFold => "constfold",
        };
        f.write_str(s)
    }
}

impl FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Group::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                format!("unknown rule group `{s}` (expected structural, arithid, boolid, mbabridge or constfold)")
            })
    }
}

/// Builds a right-hand side from the values of the constant-bound pattern
/// variables, or declines with `None`.
pub type DynamicBuilder = Arc<dyn Fn(&[u64]) -> Option<PatNode> + Send + Sync>;

#[derive(Clone)]
pub enum Rhs {
    Pattern(PatNode),
    /// Only matches where every variable in `const_vars` is bound to a class
    /// with a known constant are kept.
    Dynamic {
        const_vars: Vec<usize>,
        build: DynamicBuilder,
    },
}

impl fmt::Debug for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Pattern(p) => f.debug_tuple("Pattern").field(p).finish(),
            Rhs::Dynamic { const_vars, .. } => f
                .debug_struct("Dynamic")
                .field("const_vars", const_vars)
                .finish_non_exhaustive(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub name: String,
    pub lhs: Pattern,
    pub rhs: Rhs,
    /// Declared as one direction of an equation; the other direction, when
    /// distinct, is its own entry named `<name>-rev`.
    pub bidirectional: bool,
    pub group: Group,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule `{rule}`: dynamic right-hand side invoked on non-constant binding `{var}`")]
    DynamicRhs { rule: String, var: String },
}

impl Rule {
    pub fn new(name: &str, group: Group, lhs: &str, rhs: &str, width: Width) -> Result<Self, PatternError> {
        let lhs = Pattern::parse(lhs, width)?;
        let rhs = Pattern::parse_rhs(rhs, width, &lhs.vars)?;
        Ok(Rule {
            name: name.to_string(),
            lhs,
            rhs: Rhs::Pattern(rhs),
            bidirectional: false,
            group,
        })
    }

    pub fn dynamic(
        name: &str,
        group: Group,
        lhs: Pattern,
        const_vars: &[&str],
        build: impl Fn(&[u64]) -> Option<PatNode> + Send + Sync + 'static,
    ) -> Result<Self, PatternError> {
        let const_vars = const_vars
            .iter()
            .map(|v| {
                lhs.vars
                    .iter()
                    .position(|n| n == v)
                    .ok_or_else(|| PatternError::UnboundVar(v.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Rule {
            name: name.to_string(),
            lhs,
            rhs: Rhs::Dynamic {
                const_vars,
                build: Arc::new(build),
            },
            bidirectional: false,
            group,
        })
    }

    /// The equation read right to left, or `None` when it is the same rule
    /// (commutativity) or the rhs is computed.
    fn reversed(&self) -> Option<Rule> {
        let Rhs::Pattern(rhs) = &self.rhs else {
            return None;
        };
        let mut used = Vec::new();
        rhs.collect_vars(&mut used);
        // renumber so the reversed lhs lists variables in first-occurrence order
        if used.len() != self.lhs.vars.len() {
            return None;
        }
        let vars: Vec<String> = used.iter().map(|&i| self.lhs.vars[i].clone()).collect();
        let remap = |p: &PatNode| renumber(p, &used);
        let lhs_root = remap(rhs);
        let reversed = Rule {
            name: format!("{}-rev", self.name),
            lhs: Pattern { root: lhs_root, vars },
            rhs: Rhs::Pattern(remap(&self.lhs.root)),
            bidirectional: true,
            group: self.group,
        };
        let same = {
            let mut a = self.lhs.clone();
            let mut b = reversed.lhs.clone();
            a.vars.clear();
            b.vars.clear();
            a == b && matches!((&self.rhs, &reversed.rhs), (Rhs::Pattern(x), Rhs::Pattern(y)) if x == y)
        };
        (!same).then_some(reversed)
    }

    /// Matches of the lhs that satisfy the constant guard of a dynamic rhs.
    pub fn search(&self, g: &EGraph) -> Vec<(Id, Subst)> {
        self.search_limited(g, usize::MAX).0
    }

    /// [`Rule::search`] over at most `limit` raw e-matches; the flag is
    /// false when more existed.
    pub fn search_limited(&self, g: &EGraph, limit: usize) -> (Vec<(Id, Subst)>, bool) {
        let (mut matches, complete) = ematch_limited(g, &self.lhs, limit);
        if let Rhs::Dynamic { const_vars, .. } = &self.rhs {
            matches.retain(|(_, s)| const_vars.iter().all(|&v| g.constant(s[v]).is_some()));
        }
        (matches, complete)
    }

    fn rhs_for(&self, g: &EGraph, subst: &Subst) -> Result<Option<PatNode>, RewriteError> {
        match &self.rhs {
            Rhs::Pattern(p) => Ok(Some(p.clone())),
            Rhs::Dynamic { const_vars, build } => {
                let mut values = Vec::with_capacity(const_vars.len());
                for &v in const_vars {
                    match g.constant(subst[v]) {
                        Some(c) => values.push(c),
                        None => {
                            return Err(RewriteError::DynamicRhs {
                                rule: self.name.clone(),
                                var: self.lhs.vars[v].clone(),
                            })
                        }
                    }
                }
                Ok(build(&values))
            }
        }
    }

    /// Ground instances `(lhs, rhs)` of this rule at `width`, for soundness
    /// checking. Static rules give one pair over their pattern variables;
    /// dynamic rules give one pair per assignment of their constant-bound
    /// variables, which is only practical for small widths.
    pub fn instances(&self, width: Width) -> Vec<(Expr, Expr)> {
        let names = &self.lhs.vars;
        match &self.rhs {
            Rhs::Pattern(p) => vec![(self.lhs.root.to_expr(names, &[]), p.to_expr(names, &[]))],
            Rhs::Dynamic { const_vars, build } => {
                assert!(width.bits() * const_vars.len() as u32 <= 16, "too many instances");
                let count = 1u64 << (width.bits() * const_vars.len() as u32);
                let mut out = Vec::new();
                for index in 0..count {
                    let values: Vec<u64> = (0..const_vars.len())
                        .map(|k| (index >> (k as u32 * width.bits())) & width.mask())
                        .collect();
                    if let Some(rhs) = build(&values) {
                        let consts: Vec<(usize, u64)> =
                            const_vars.iter().copied().zip(values.iter().copied()).collect();
                        out.push((self.lhs.root.to_expr(names, &consts), rhs.to_expr(names, &consts)));
                    }
                }
                out
            }
        }
    }
}

fn renumber(p: &PatNode, order: &[usize]) -> PatNode {
    match p {
        PatNode::Var(i) => PatNode::Var(order.iter().position(|o| o == i).expect("used var")),
        PatNode::Const(c) => PatNode::Const(*c),
        PatNode::Bin(op, l, r) => PatNode::bin(*op, renumber(l, order), renumber(r, order)),
    }
}

fn instantiate(g: &mut EGraph, pat: &PatNode, subst: &Subst) -> Id {
    match pat {
        PatNode::Var(i) => subst[*i],
        PatNode::Const(c) => g.add_const(*c),
        PatNode::Bin(op, l, r) => {
            let l = instantiate(g, l, subst);
            let r = instantiate(g, r, subst);
            g.add(ENode::Bin(*op, [l, r]))
        }
    }
}

/// Adds each match's right-hand side and unions it with the matched class.
/// Returns how many unions merged distinct classes.
pub fn apply_matches(g: &mut EGraph, rule: &Rule, matches: &[(Id, Subst)]) -> Result<usize, RewriteError> {
    let mut merges = 0;
    for (class, subst) in matches {
        let Some(rhs) = rule.rhs_for(g, subst)? else {
            continue;
        };
        let id = instantiate(g, &rhs, subst);
        if g.union(*class, id).1 {
            merges += 1;
        }
    }
    Ok(merges)
}

#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn new(rules: Vec<Rule>) -> Self {
        RuleSet { rules }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// Keeps only rules whose group is listed.
    pub fn with_groups(&self, groups: &[Group]) -> RuleSet {
        RuleSet {
            rules: self
                .rules
                .iter()
                .filter(|r| groups.contains(&r.group))
                .cloned()
                .collect(),
        }
    }

    pub fn without_group(&self, group: Group) -> RuleSet {
        RuleSet {
            rules: self.rules.iter().filter(|r| r.group != group).cloned().collect(),
        }
    }

    /// Registers `rule` and, for a two-way equation, its reverse.
    pub fn push_equation(&mut self, mut rule: Rule) {
        rule.bidirectional = true;
        let rev = rule.reversed();
        self.rules.push(rule);
        if let Some(rev) = rev {
            self.rules.push(rev);
        }
    }

    pub fn push(&mut self, rule: Rule) {
        self.rules.push(rule);
    }
}

/// The compiled-in catalog with the all-ones mask of `width` baked in.
pub fn default_ruleset(width: Width) -> RuleSet {
    let m = width.mask();
    let mut set = RuleSet::default();
    let rule = |name: &str, group: Group, lhs: &str, rhs: &str| {
        let lhs = lhs.replace('M', &m.to_string());
        let rhs = rhs.replace('M', &m.to_string());
        Rule::new(name, group, &lhs, &rhs, width).unwrap_or_else(|e| panic!("catalog rule {name}: {e}"))
    };

    use Group::*;
    for (name, op) in [("add", "+"), ("mul", "*"), ("and", "&"), ("or", "|"), ("xor", "^")] {
        set.push_equation(rule(
            &format!("comm-{name}"),
            Structural,
            &format!("x{op}y"),
            &format!("y{op}x"),
        ));
        set.push_equation(rule(
            &format!("assoc-{name}"),
            Structural,
            &format!("(x{op}y){op}z"),
            &format!("x{op}(y{op}z)"),
        ));
    }

    for (name, lhs, rhs) in [
        ("add-0", "x+0", "x"),
        ("mul-0", "x*0", "0"),
        ("mul-1", "x*1", "x"),
        ("sub-0", "x-0", "x"),
        ("sub-self", "x-x", "0"),
        ("add-same", "x+x", "2*x"),
    ] {
        set.push(rule(name, ArithId, lhs, rhs));
    }
    set.push_equation(rule("neg-def", ArithId, "0-y", "(y^M)+1"));
    set.push_equation(rule("sub-via-neg", ArithId, "x-y", "x+(0-y)"));
    set.push_equation(rule("distribute", ArithId, "x*(y+z)", "x*y+x*z"));
    // variable shift amounts are not expressible in the text syntax
    let shl_lhs = Pattern {
        root: PatNode::bin(BinOp::Shl, PatNode::Var(0), PatNode::Var(1)),
        vars: vec!["x".into(), "c".into()],
    };
    let mut shl = Rule::dynamic("shl-to-mul", ArithId, shl_lhs, &["c"], move |c| {
        let factor = if c[0] >= width.bits() as u64 {
            0
        } else {
            width.reduce(1 << c[0])
        };
        Some(PatNode::bin(BinOp::Mul, PatNode::Var(0), PatNode::Const(factor)))
    })
    .expect("shl-to-mul");
    shl.bidirectional = true;
    set.push(shl);
    let mul_lhs = Pattern::parse("x*c", width).expect("pattern");
    let mut mul = Rule::dynamic("shl-to-mul-rev", ArithId, mul_lhs, &["c"], |c| {
        c[0].is_power_of_two().then(|| {
            PatNode::bin(
                BinOp::Shl,
                PatNode::Var(0),
                PatNode::Const(c[0].trailing_zeros() as u64),
            )
        })
    })
    .expect("shl-to-mul-rev");
    mul.bidirectional = true;
    set.push(mul);

    for (name, lhs, rhs) in [
        ("and-self", "x&x", "x"),
        ("or-self", "x|x", "x"),
        ("xor-self", "x^x", "0"),
        ("and-0", "x&0", "0"),
        ("and-mask", "x&M", "x"),
        ("or-0", "x|0", "x"),
        ("or-mask", "x|M", "M"),
        ("xor-0", "x^0", "x"),
        ("absorb-and", "x&(x|y)", "x"),
        ("absorb-or", "x|(x&y)", "x"),
        ("not-not", "(x^M)^M", "x"),
    ] {
        set.push(rule(name, BoolId, lhs, rhs));
    }
    for (name, lhs, rhs) in [
        ("and-or-distrib", "x&(y|z)", "(x&y)|(x&z)"),
        ("or-and-distrib", "x|(y&z)", "(x|y)&(x|z)"),
        ("demorgan-and", "(x&y)^M", "(x^M)|(y^M)"),
        ("demorgan-or", "(x|y)^M", "(x^M)&(y^M)"),
    ] {
        set.push_equation(rule(name, BoolId, lhs, rhs));
    }

    for (name, lhs, rhs) in [
        ("mba-add1", "x+y", "(x|y)+(x&y)"),
        ("mba-add2", "x+y", "(x^y)+2*(x&y)"),
        ("mba-or", "x|y", "x+((x^M)&y)"),
        ("mba-xor", "x^y", "(x|y)-(x&y)"),
        ("mba-and", "x&y", "(x|y)-(x^y)"),
        ("mba-sub", "x-y", "(x&(y^M))-((x^M)&y)"),
    ] {
        set.push_equation(rule(name, MbaBridge, lhs, rhs));
    }

    for op in BinOp::ALL {
        let name = format!("fold-{}", format!("{op:?}").to_lowercase());
        let lhs = Pattern {
            root: PatNode::bin(op, PatNode::Var(0), PatNode::Var(1)),
            vars: vec!["a".into(), "b".into()],
        };
        set.push(
            Rule::dynamic(&name, ConstFold, lhs, &["a", "b"], move |v| {
                Some(PatNode::Const(op.apply(v[0], v[1], width)))
            })
            .expect("fold rule"),
        );
    }
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationLimits {
    pub max_iterations: usize,
    pub max_nodes: usize,
    pub max_millis: u64,
}

impl Default for SaturationLimits {
    fn default() -> Self {
        SaturationLimits {
            max_iterations: 30,
            max_nodes: 50_000,
            max_millis: 5_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Saturated,
    IterationLimit,
    NodeLimit,
    TimeLimit,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StopReason::Saturated => "saturated",
            StopReason::IterationLimit => "iteration-limit",
            StopReason::NodeLimit => "node-limit",
            StopReason::TimeLimit => "time-limit",
        };
        f.write_str(s)
    }
}

impl FromStr for StopReason {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            StopReason::Saturated,
            StopReason::IterationLimit,
            StopReason::NodeLimit,
            StopReason::TimeLimit,
        ]
        .into_iter()
        .find(|r| r.to_string() == s)
        .ok_or_else(|| format!("unknown stop reason `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub stop_reason: StopReason,
    pub iterations: usize,
    pub nodes_start: usize,
    pub nodes_end: usize,
    /// Node count after each completed iteration.
    pub node_trajectory: Vec<usize>,
    pub millis: u64,
}

/// Runs match / apply / rebuild rounds until an iteration merges nothing
/// or a limit trips. Every rule is matched against the same rebuilt graph
/// before anything is applied; a rule reports at most `max_nodes` matches
/// per iteration. Limits are checked between iterations; the node and time
/// limits also cut an iteration's application phase short.
pub fn saturate(g: &mut EGraph, rules: &RuleSet, limits: &SaturationLimits) -> SaturationReport {
    let start = Instant::now();
    let budget = Duration::from_millis(limits.max_millis);
    if !g.is_clean() {
        g.rebuild();
    }
    let nodes_start = g.node_count();
    let mut iterations = 0;
    let mut trajectory = Vec::new();
    let stop_reason = loop {
        if iterations >= limits.max_iterations {
            break StopReason::IterationLimit;
        }
        if g.node_count() > limits.max_nodes {
            break StopReason::NodeLimit;
        }
        if start.elapsed() > budget {
            break StopReason::TimeLimit;
        }

        // applying more matches of one rule than the node budget is futile
        let cap = limits.max_nodes.max(1);
        let snapshot: &EGraph = g;
        let searched: Vec<(Vec<(Id, Subst)>, bool)> = rules
            .rules
            .par_iter()
            .map(|r| r.search_limited(snapshot, cap))
            .collect();

        // a truncated search means a quiet iteration proves nothing
        let mut truncated = false;
        let mut merges = 0;
        let mut cut = None;
        for (rule, (found, complete)) in rules.rules.iter().zip(&searched) {
            truncated |= !complete;
            if cut.is_some() {
                continue;
            }
            merges += apply_matches(g, rule, found).expect("catalog dynamic rules are guarded");
            if g.node_count() > limits.max_nodes {
                cut = Some(StopReason::NodeLimit);
            } else if start.elapsed() > budget {
                cut = Some(StopReason::TimeLimit);
            }
        }
        merges += g.rebuild();
        iterations += 1;
        trajectory.push(g.node_count());
        if let Some(reason) = cut {
            break reason;
        }
        if merges == 0 && !truncated {
            break StopReason::Saturated;
        }
    };
    SaturationReport {
        stop_reason,
        iterations,
        nodes_start,
        nodes_end: g.node_count(),
        node_trajectory: trajectory,
        millis: start.elapsed().as_millis() as u64,
    }
}
