//! Fixed-width bitvector evaluation and the equivalence oracle.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{free_vars, BinOp, Expr, UnOp, Width};
use crate::rng::XorShift64Star;

/// Largest `vars * bits` product the exhaustive checker accepts.
pub const EXHAUSTIVE_BUDGET_BITS: u32 = 24;

/// A variable assignment. Bindings keep insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Env(Vec<(String, u64)>);

impl Env {
    pub fn new() -> Self {
        Env(Vec::new())
    }

    pub fn insert(&mut self, name: impl Into<String>, value: u64) {
        let name = name.into();
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(n, v)| (n.as_str(), *v))
    }

    fn from_values(names: &[String], values: &[u64]) -> Self {
        Env(names.iter().cloned().zip(values.iter().copied()).collect())
    }
}

impl<S: Into<String>> FromIterator<(S, u64)> for Env {
    fn from_iter<I: IntoIterator<Item = (S, u64)>>(iter: I) -> Self {
        let mut env = Env::new();
        for (n, v) in iter {
            env.insert(n, v);
        }
        env
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}: {v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

impl BinOp {
    /// Applies the operator to two values already reduced to `width`.
    pub fn apply(self, a: u64, b: u64, width: Width) -> u64 {
        let r = match self {
            BinOp::Add => a.wrapping_add(b),
            BinOp::Sub => a.wrapping_sub(b),
            BinOp::Mul => a.wrapping_mul(b),
            BinOp::And => a & b,
            BinOp::Or => a | b,
            BinOp::Xor => a ^ b,
            BinOp::Shl => {
                if b >= width.bits() as u64 {
                    0
                } else {
                    a << b
                }
            }
        };
        width.reduce(r)
    }
}

impl UnOp {
    pub fn apply(self, a: u64, width: Width) -> u64 {
        match self {
            UnOp::Neg => width.reduce(a.wrapping_neg()),
            UnOp::Not => width.reduce(!a),
        }
    }
}

/// Evaluates `e` under `env` with all arithmetic modulo `2^width`.
pub fn eval(e: &Expr, env: &Env, width: Width) -> Result<u64, EvalError> {
    Ok(match e {
        Expr::Const(v) => width.reduce(*v),
        Expr::Var(n) => width.reduce(env.get(n).ok_or_else(|| EvalError::UnboundVariable(n.clone()))?),
        Expr::Unary(op, c) => op.apply(eval(c, env, width)?, width),
        Expr::Binary(op, l, r) => op.apply(eval(l, env, width)?, eval(r, env, width)?, width),
    })
}

#[derive(Debug, Clone, Copy)]
enum Instr {
    Const(u64),
    Var(usize),
    Un(UnOp),
    Bin(BinOp),
}

/// Postfix form of an expression with variables resolved to slots, for
/// the hot loops of the checkers.
#[derive(Debug, Clone)]
struct Program {
    code: Vec<Instr>,
    width: Width,
}

impl Program {
    fn compile(e: &Expr, slots: &[String], width: Width) -> Result<Self, EvalError> {
        fn go(e: &Expr, slots: &[String], width: Width, code: &mut Vec<Instr>) -> Result<(), EvalError> {
            match e {
                Expr::Const(v) => code.push(Instr::Const(width.reduce(*v))),
                Expr::Var(n) => {
                    let slot = slots
                        .iter()
                        .position(|s| s == n)
                        .ok_or_else(|| EvalError::UnboundVariable(n.clone()))?;
                    code.push(Instr::Var(slot));
                }
                Expr::Unary(op, c) => {
                    go(c, slots, width, code)?;
                    code.push(Instr::Un(*op));
                }
                Expr::Binary(op, l, r) => {
                    go(l, slots, width, code)?;
                    go(r, slots, width, code)?;
                    code.push(Instr::Bin(*op));
                }
            }
            Ok(())
        }
        let mut code = Vec::new();
        go(e, slots, width, &mut code)?;
        Ok(Program { code, width })
    }

    fn run(&self, values: &[u64], stack: &mut Vec<u64>) -> u64 {
        stack.clear();
        for instr in &self.code {
            match *instr {
                Instr::Const(v) => stack.push(v),
                Instr::Var(slot) => stack.push(values[slot]),
                Instr::Un(op) => {
                    let a = stack.pop().expect("operand");
                    stack.push(op.apply(a, self.width));
                }
                Instr::Bin(op) => {
                    let b = stack.pop().expect("operand");
                    let a = stack.pop().expect("operand");
                    stack.push(op.apply(a, b, self.width));
                }
            }
        }
        stack.pop().expect("result")
    }

    /// Evaluates [`LANES`] assignments at once; `inputs[slot][lane]`.
    fn run_lanes(&self, inputs: &[Lanes], stack: &mut Vec<Lanes>) -> Lanes {
        let mask = self.width.mask();
        let bits = self.width.bits() as u64;
        stack.clear();
        for instr in &self.code {
            match *instr {
                Instr::Const(v) => stack.push([v; LANES]),
                Instr::Var(slot) => stack.push(inputs[slot]),
                Instr::Un(op) => {
                    let a = stack.last_mut().expect("operand");
                    match op {
                        UnOp::Neg => a.iter_mut().for_each(|x| *x = x.wrapping_neg() & mask),
                        UnOp::Not => a.iter_mut().for_each(|x| *x = !*x & mask),
                    }
                }
                Instr::Bin(op) => {
                    let b = stack.pop().expect("operand");
                    let a = stack.last_mut().expect("operand");
                    match op {
                        BinOp::Add => lanewise(a, &b, mask, u64::wrapping_add),
                        BinOp::Sub => lanewise(a, &b, mask, u64::wrapping_sub),
                        BinOp::Mul => lanewise(a, &b, mask, u64::wrapping_mul),
                        BinOp::And => lanewise(a, &b, mask, |x, y| x & y),
                        BinOp::Or => lanewise(a, &b, mask, |x, y| x | y),
                        BinOp::Xor => lanewise(a, &b, mask, |x, y| x ^ y),
                        BinOp::Shl => lanewise(a, &b, mask, |x, y| if y >= bits { 0 } else { x << y }),
                    }
                }
            }
        }
        stack.pop().expect("result")
    }
}

const LANES: usize = 64;
type Lanes = [u64; LANES];

#[inline(always)]
fn lanewise(a: &mut Lanes, b: &Lanes, mask: u64, f: impl Fn(u64, u64) -> u64) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = f(*x, y) & mask;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquivStatus {
    Equivalent,
    NotEquivalent,
    ProbablyEquivalent,
}

impl fmt::Display for EquivStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EquivStatus::Equivalent => "Equivalent",
            EquivStatus::NotEquivalent => "NotEquivalent",
            EquivStatus::ProbablyEquivalent => "ProbablyEquivalent",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivVerdict {
    pub status: EquivStatus,
    /// Present exactly when `status` is `NotEquivalent`.
    pub counterexample: Option<Env>,
    pub assignments_checked: u64,
}

impl EquivVerdict {
    pub fn holds(&self) -> bool {
        self.status != EquivStatus::NotEquivalent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("exhaustive check over {vars} variables at {bits} bits exceeds the {EXHAUSTIVE_BUDGET_BITS}-bit budget")]
    BudgetExceeded { vars: usize, bits: u32 },
}

/// Variables of `a` then any extra ones of `b`, in first-occurrence order.
pub fn joint_vars(a: &Expr, b: &Expr) -> Vec<String> {
    let mut vars = free_vars(a);
    for v in free_vars(b) {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars
}

const CHUNK: u64 = 1 << 14;

/// Checks every assignment. Assignments are enumerated lexicographically
/// with the first variable most significant, so the reported
/// counterexample is the lexicographically first one.
pub fn equiv_exhaustive(a: &Expr, b: &Expr, width: Width) -> Result<EquivVerdict, EquivError> {
    let vars = joint_vars(a, b);
    let n = vars.len();
    let bits = width.bits();
    if n as u64 * bits as u64 > EXHAUSTIVE_BUDGET_BITS as u64 {
        return Err(EquivError::BudgetExceeded { vars: n, bits });
    }
    let pa = Program::compile(a, &vars, width).expect("all variables bound");
    let pb = Program::compile(b, &vars, width).expect("all variables bound");
    let total: u64 = 1 << (n as u32 * bits);
    let mask = width.mask();
    let decode = |index: u64, values: &mut [u64]| {
        for (k, slot) in values.iter_mut().enumerate() {
            let shift = (n - 1 - k) as u32 * bits;
            *slot = (index >> shift) & mask;
        }
    };

    let chunks = total.div_ceil(CHUNK);
    let first_bad = (0..chunks).into_par_iter().find_map_first(|chunk| {
        let mut values = vec![0u64; n];
        let mut inputs = vec![[0u64; LANES]; n];
        let mut stack = Vec::with_capacity(32);
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut base = start;
        while base < end {
            let live = (end - base).min(LANES as u64) as usize;
            for lane in 0..LANES {
                // spare lanes of a short block repeat its last assignment
                decode(base + lane.min(live - 1) as u64, &mut values);
                for (slot, v) in inputs.iter_mut().zip(&values) {
                    slot[lane] = *v;
                }
            }
            let ra = pa.run_lanes(&inputs, &mut stack);
            let rb = pb.run_lanes(&inputs, &mut stack);
            if let Some(lane) = (0..live).find(|&l| ra[l] != rb[l]) {
                return Some(base + lane as u64);
            }
            base += LANES as u64;
        }
        None
    });

    Ok(match first_bad {
        Some(i) => {
            let mut values = vec![0u64; n];
            decode(i, &mut values);
            EquivVerdict {
                status: EquivStatus::NotEquivalent,
                counterexample: Some(Env::from_values(&vars, &values)),
                assignments_checked: i + 1,
            }
        }
        None => EquivVerdict {
            status: EquivStatus::Equivalent,
            counterexample: None,
            assignments_checked: total,
        },
    })
}

/// Compares the two expressions on `samples` seeded pseudo-random
/// assignments (see [`crate::rng`]).
pub fn equiv_random(a: &Expr, b: &Expr, width: Width, samples: u64, seed: u64) -> EquivVerdict {
    let vars = joint_vars(a, b);
    let pa = Program::compile(a, &vars, width).expect("all variables bound");
    let pb = Program::compile(b, &vars, width).expect("all variables bound");
    let mut rng = XorShift64Star::new(seed);
    let mut values = vec![0u64; vars.len()];
    let mut stack = Vec::with_capacity(32);
    for i in 0..samples.max(1) {
        for v in values.iter_mut() {
            *v = width.reduce(rng.next_u64());
        }
        if pa.run(&values, &mut stack) != pb.run(&values, &mut stack) {
            return EquivVerdict {
                status: EquivStatus::NotEquivalent,
                counterexample: Some(Env::from_values(&vars, &values)),
                assignments_checked: i + 1,
            };
        }
    }
    EquivVerdict {
        status: EquivStatus::ProbablyEquivalent,
        counterexample: None,
        assignments_checked: samples.max(1),
    }
}

/// Sampling parameters for [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPolicy {
    pub samples: u64,
    pub seed: u64,
    /// Assignment bits the exhaustive stage may spend, at most
    /// [`EXHAUSTIVE_BUDGET_BITS`].
    pub exhaustive_bits: u32,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        VerifyPolicy {
            samples: 10_000,
            seed: 0,
            exhaustive_bits: EXHAUSTIVE_BUDGET_BITS,
        }
    }
}

/// Combined outcome of the two-stage check run by [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub status: EquivStatus,
    /// Width of the exhaustive stage, if one ran.
    pub exhaustive_width: Option<Width>,
    pub exhaustive_assignments: u64,
    pub random_samples: u64,
    pub width: Width,
    /// Differing assignment and the width it was found at.
    pub counterexample: Option<(Width, Env)>,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((w, env)) = &self.counterexample {
            return write!(f, "NotEquivalent (counterexample at width {w}: {env})");
        }
        match (self.exhaustive_width, self.random_samples) {
            (Some(w), 0) if w == self.width => write!(
                f,
                "{} (exhaustive, {} assignments)",
                self.status, self.exhaustive_assignments
            ),
            (Some(w), n) => write!(
                f,
                "{} (exhaustive at width {w}, {} assignments; random at width {}, {n} samples)",
                self.status, self.exhaustive_assignments, self.width
            ),
            (None, n) => write!(f, "{} (random, {n} samples)", self.status),
        }
    }
}

/// Verifies `a == b` exhaustively at the widest width the budget allows
/// (at most `width`), then by random sampling at `width` if the exhaustive
/// stage could not cover the full width. Both stages must pass.
pub fn verify(a: &Expr, b: &Expr, width: Width, policy: VerifyPolicy) -> Verification {
    let n = joint_vars(a, b).len() as u32;
    let budget = policy.exhaustive_bits.min(EXHAUSTIVE_BUDGET_BITS);
    let reduced_bits = budget.checked_div(n).map_or(width.bits(), |b| width.bits().min(b));
    let mut out = Verification {
        status: EquivStatus::Equivalent,
        exhaustive_width: None,
        exhaustive_assignments: 0,
        random_samples: 0,
        width,
        counterexample: None,
    };
    if let Ok(reduced) = Width::new(reduced_bits) {
        let verdict = equiv_exhaustive(&a.at_width(reduced), &b.at_width(reduced), reduced)
            .expect("reduced width fits the budget");
        out.exhaustive_width = Some(reduced);
        out.exhaustive_assignments = verdict.assignments_checked;
        if let Some(env) = verdict.counterexample {
            out.status = EquivStatus::NotEquivalent;
            out.counterexample = Some((reduced, env));
            return out;
        }
        if reduced == width {
            return out;
        }
    }
    let verdict = equiv_random(a, b, width, policy.samples, policy.seed);
    out.random_samples = verdict.assignments_checked;
    out.status = verdict.status;
    if let Some(env) = verdict.counterexample {
        out.counterexample = Some((width, env));
    }
    out
}
