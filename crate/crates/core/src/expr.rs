//! The MBA expression language: fixed-width bitvector terms, their infix
//! text syntax, unary-operator elimination and MBA shape classification.
//!
//! Operator precedence, tightest first:
//!
//! | level | operators         |
//! |-------|-------------------|
//! | 7     | unary `~`, `-`    |
//! | 6     | `*`               |
//! | 5     | `+`, binary `-`   |
//! | 4     | `<<`              |
//! | 3     | `&`               |
//! | 2     | `^`               |
//! | 1     | `\|`              |
//!
//! All binary operators are left-associative.

use std::fmt;

use thiserror::Error;

/// Number of bits in every value of an expression, between 1 and 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Width(u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("width must be between 1 and 64 bits, got {0}")]
pub struct WidthError(pub u32);

impl Width {
    pub const MAX_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self, WidthError> {
        if (1..=Self::MAX_BITS).contains(&bits) {
            Ok(Width(bits))
        } else {
            Err(WidthError(bits))
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The all-ones value `2^bits - 1`.
    pub fn mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    /// Reduces `value` modulo `2^bits`.
    pub fn reduce(self, value: u64) -> u64 {
        value & self.mask()
    }
}

impl Default for Width {
    fn default() -> Self {
        Width(64)
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnOp {
    /// Two's complement negation.
    Neg,
    /// Bitwise complement.
    Not,
}

/// Binary operators. The declaration order is the extraction tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    And,
    Or,
    Xor,
    Shl,
}

impl BinOp {
    pub const ALL: [BinOp; 7] = [
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::And,
        BinOp::Or,
        BinOp::Xor,
        BinOp::Shl,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Xor => "^",
            BinOp::Shl => "<<",
        }
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::Xor => 2,
            BinOp::And => 3,
            BinOp::Shl => 4,
            BinOp::Add | BinOp::Sub => 5,
            BinOp::Mul => 6,
        }
    }

    pub fn is_bitwise(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or | BinOp::Xor)
    }

    pub fn is_arithmetic(self) -> bool {
        !self.is_bitwise()
    }
}

impl UnOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Neg => "-",
            UnOp::Not => "~",
        }
    }
}

const UNARY_PRECEDENCE: u8 = 7;
const ATOM_PRECEDENCE: u8 = 8;

/// An immutable MBA expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(u64),
    Var(String),
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Self {
        Expr::Var(name.into())
    }

    pub fn unary(op: UnOp, child: Expr) -> Self {
        Expr::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinOp, left: Expr, right: Expr) -> Self {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Const(_) | Expr::Var(_) => ATOM_PRECEDENCE,
            Expr::Unary(..) => UNARY_PRECEDENCE,
            Expr::Binary(op, ..) => op.precedence(),
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Expr::Const(_))
    }

    /// True when the tree contains no variable.
    pub fn is_ground(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var(_) => false,
            Expr::Unary(_, c) => c.is_ground(),
            Expr::Binary(_, l, r) => l.is_ground() && r.is_ground(),
        }
    }

    /// Re-reduces every constant to `width`. Used when checking an
    /// expression at a narrower width than the one it was parsed at.
    pub fn at_width(&self, width: Width) -> Expr {
        match self {
            Expr::Const(v) => Expr::Const(width.reduce(*v)),
            Expr::Var(n) => Expr::Var(n.clone()),
            Expr::Unary(op, c) => Expr::unary(*op, c.at_width(width)),
            Expr::Binary(op, l, r) => Expr::binary(*op, l.at_width(width), r.at_width(width)),
        }
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Const(_) | Expr::Var(_) => {}
            Expr::Unary(_, c) => c.walk(f),
            Expr::Binary(_, l, r) => {
                l.walk(f);
                r.walk(f);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Zero-based character offset of the offending token.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(u64),
    Op(BinOp),
    Tilde,
    LParen,
    RParen,
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Ident(n) => format!("identifier `{n}`"),
        Token::Number(v) => format!("number `{v}`"),
        Token::Op(op) => format!("`{}`", op.symbol()),
        Token::Tilde => "`~`".into(),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Op(BinOp::Add),
            '-' => Token::Op(BinOp::Sub),
            '*' => Token::Op(BinOp::Mul),
            '&' => Token::Op(BinOp::And),
            '|' => Token::Op(BinOp::Or),
            '^' => Token::Op(BinOp::Xor),
            '~' => Token::Tilde,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '<' => {
                if chars.get(i + 1) == Some(&'<') {
                    i += 1;
                    Token::Op(BinOp::Shl)
                } else {
                    return Err(ParseError::new(i, "expected `<<`"));
                }
            }
            c if c.is_ascii_digit() => {
                let (value, next) = lex_number(&chars, i)?;
                out.push((start, Token::Number(value)));
                i = next;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push((start, Token::Ident(chars[i..j].iter().collect())));
                i = j;
                continue;
            }
            other => return Err(ParseError::new(i, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Lexes a decimal or `0x` literal, wrapping modulo 2^64. Since every width
/// divides 64 bits this is consistent with the later reduction.
fn lex_number(chars: &[char], start: usize) -> Result<(u64, usize), ParseError> {
    let hex = chars[start] == '0' && matches!(chars.get(start + 1), Some('x') | Some('X'));
    let (radix, mut i) = if hex { (16, start + 2) } else { (10, start) };
    let digits_start = i;
    let mut value: u64 = 0;
    while let Some(d) = chars.get(i).and_then(|c| c.to_digit(radix)) {
        value = value.wrapping_mul(radix as u64).wrapping_add(d as u64);
        i += 1;
    }
    if i == digits_start {
        return Err(ParseError::new(start, "hex literal has no digits"));
    }
    if chars.get(i).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
        return Err(ParseError::new(i, "malformed number literal"));
    }
    Ok((value, i))
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    width: Width,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        tok
    }

    fn expr(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(op)) = self.peek() {
            let op = *op;
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs_at = self.offset();
            let rhs = self.expr(prec + 1)?;
            if op == BinOp::Shl && !rhs.is_const() {
                return Err(ParseError::new(rhs_at, "shift amount must be a constant"));
            }
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Token::Tilde) => {
                self.bump();
                Ok(Expr::unary(UnOp::Not, self.unary()?))
            }
            Some(Token::Op(BinOp::Sub)) => {
                self.bump();
                Ok(Expr::unary(UnOp::Neg, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Ident(name)) => Ok(Expr::Var(name)),
            Some(Token::Number(v)) => Ok(Expr::Const(self.width.reduce(v))),
            Some(Token::LParen) => {
                let inner = self.expr(1)?;
                let close = self.offset();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    Some(tok) => Err(ParseError::new(
                        close,
                        format!("expected `)`, found {}", describe(&tok)),
                    )),
                    None => Err(ParseError::new(close, "unbalanced parentheses: missing `)`")),
                }
            }
            Some(tok) => Err(ParseError::new(
                at,
                format!("expected an operand, found {}", describe(&tok)),
            )),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

/// Parses infix expression text, reducing constants modulo `2^width`.
pub fn parse(text: &str, width: Width) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let end = text.chars().count();
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        width,
    };
    let e = parser.expr(1)?;
    if let Some(tok) = parser.peek() {
        let msg = match tok {
            Token::RParen => "unbalanced parentheses: unexpected `)`".to_string(),
            other => format!("unexpected trailing {}", describe(other)),
        };
        return Err(ParseError::new(parser.offset(), msg));
    }
    Ok(e)
}

fn render_into(e: &Expr, out: &mut String) {
    match e {
        Expr::Const(v) => out.push_str(&v.to_string()),
        Expr::Var(n) => out.push_str(n),
        Expr::Unary(op, child) => {
            out.push_str(op.symbol());
            render_child(child, child.precedence() < UNARY_PRECEDENCE, out);
        }
        Expr::Binary(op, l, r) => {
            let p = op.precedence();
            render_child(l, l.precedence() < p, out);
            out.push_str(op.symbol());
            render_child(r, r.precedence() <= p, out);
        }
    }
}

fn render_child(e: &Expr, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        render_into(e, out);
        out.push(')');
    } else {
        render_into(e, out);
    }
}

/// Renders with the minimal parentheses needed to reparse to the same tree.
pub fn render(e: &Expr) -> String {
    let mut out = String::new();
    render_into(e, &mut out);
    out
}

/// Undoes unary elimination for display: `a ^ mask` becomes `~a` and
/// `0 - a` becomes `-a`.
pub fn resugar(e: &Expr, width: Width) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Unary(op, c) => Expr::unary(*op, resugar(c, width)),
        Expr::Binary(BinOp::Xor, l, r) if **r == Expr::Const(width.mask()) => Expr::unary(UnOp::Not, resugar(l, width)),
        Expr::Binary(BinOp::Sub, l, r) if **l == Expr::Const(0) => Expr::unary(UnOp::Neg, resugar(r, width)),
        Expr::Binary(op, l, r) => Expr::binary(*op, resugar(l, width), resugar(r, width)),
    }
}

/// Eliminates unary operators: `-x` becomes `0 - x` and `~x` becomes
/// `x ^ mask`.
pub fn preprocess(e: &Expr, width: Width) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Unary(UnOp::Neg, c) => Expr::binary(BinOp::Sub, Expr::Const(0), preprocess(c, width)),
        Expr::Unary(UnOp::Not, c) => Expr::binary(BinOp::Xor, preprocess(c, width), Expr::Const(width.mask())),
        Expr::Binary(op, l, r) => Expr::binary(*op, preprocess(l, width), preprocess(r, width)),
    }
}

/// Number of nodes in the tree.
pub fn ast_size(e: &Expr) -> usize {
    match e {
        Expr::Const(_) | Expr::Var(_) => 1,
        Expr::Unary(_, c) => 1 + ast_size(c),
        Expr::Binary(_, l, r) => 1 + ast_size(l) + ast_size(r),
    }
}

/// Distinct variable names in first-occurrence order.
pub fn free_vars(e: &Expr) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    e.walk(&mut |n| {
        if let Expr::Var(name) = n {
            if !out.iter().any(|v| v == name) {
                out.push(name.clone());
            }
        }
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MbaClass {
    Linear,
    Polynomial,
    NonPolynomial,
    NotMba,
}

impl fmt::Display for MbaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MbaClass::Linear => "linear",
            MbaClass::Polynomial => "polynomial",
            MbaClass::NonPolynomial => "non-polynomial",
            MbaClass::NotMba => "not-mba",
        };
        f.write_str(s)
    }
}

/// A subtree built only from variables, constants and bitwise operators,
/// or a variable-free subtree (which denotes a constant).
fn is_bitwise_term(e: &Expr) -> bool {
    e.is_ground()
        || match e {
            Expr::Var(_) => true,
            Expr::Unary(UnOp::Not, c) => is_bitwise_term(c),
            Expr::Binary(op, l, r) if op.is_bitwise() => is_bitwise_term(l) && is_bitwise_term(r),
            _ => false,
        }
}

/// Degree of `e` as a polynomial whose indeterminates are bitwise terms,
/// or `None` when a bitwise operator is applied over arithmetic.
fn bitwise_degree(e: &Expr) -> Option<u32> {
    if e.is_ground() {
        return Some(0);
    }
    if is_bitwise_term(e) {
        return Some(1);
    }
    match e {
        Expr::Unary(UnOp::Neg, c) => bitwise_degree(c),
        Expr::Binary(BinOp::Add | BinOp::Sub, l, r) => Some(bitwise_degree(l)?.max(bitwise_degree(r)?)),
        Expr::Binary(BinOp::Mul, l, r) => Some(bitwise_degree(l)? + bitwise_degree(r)?),
        // shift by a constant scales by a constant
        Expr::Binary(BinOp::Shl, l, r) if r.is_ground() => bitwise_degree(l),
        _ => None,
    }
}

/// Classifies an expression by MBA shape. Expressions that do not mix
/// arithmetic and bitwise operators are `NotMba`.
pub fn classify(e: &Expr) -> MbaClass {
    let mut arith = false;
    let mut bitwise = false;
    e.walk(&mut |n| match n {
        Expr::Binary(op, ..) if op.is_bitwise() => bitwise = true,
        Expr::Binary(..) | Expr::Unary(UnOp::Neg, _) => arith = true,
        Expr::Unary(UnOp::Not, _) => bitwise = true,
        _ => {}
    });
    if !(arith && bitwise) {
        return MbaClass::NotMba;
    }
    match bitwise_degree(e) {
        Some(0 | 1) => MbaClass::Linear,
        Some(_) => MbaClass::Polynomial,
        None => MbaClass::NonPolynomial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(bits: u32) -> Width {
        Width::new(bits).unwrap()
    }

    fn p(text: &str) -> Expr {
        parse(text, w(8)).unwrap()
    }

    fn v(n: &str) -> Expr {
        Expr::var(n)
    }

    #[test]
    fn width_bounds() {
        assert!(Width::new(0).is_err());
        assert!(Width::new(65).is_err());
        assert_eq!(w(16).mask(), 0xffff);
        assert_eq!(w(64).mask(), u64::MAX);
        assert_eq!(w(1).mask(), 1);
    }

    #[test]
    fn parses_obfuscated_addition() {
        let expected = Expr::binary(
            BinOp::Sub,
            Expr::binary(BinOp::Add, Expr::binary(BinOp::Or, v("x"), v("y")), v("y")),
            Expr::binary(BinOp::And, Expr::unary(UnOp::Not, v("x")), v("y")),
        );
        assert_eq!(p("(x|y)+y-(~x&y)"), expected);
    }

    #[test]
    fn parses_atoms_and_shift() {
        assert_eq!(p("x"), v("x"));
        assert_eq!(p("a<<1"), Expr::binary(BinOp::Shl, v("a"), Expr::Const(1)));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("a|b^c&d"), p("a|(b^(c&d))"));
        assert_eq!(p("a&b<<1"), p("a&(b<<1)"));
        assert!(parse("a<<1+2", w(8)).is_err());
        assert_eq!(p("a<<(2)"), Expr::binary(BinOp::Shl, v("a"), Expr::Const(2)));
        assert_eq!(p("a-b-c"), p("(a-b)-c"));
        assert_eq!(p("a+b*c"), p("a+(b*c)"));
        assert_eq!(p("-a*b"), p("(-a)*b"));
        assert_eq!(p("~a+b"), p("(~a)+b"));
    }

    #[test]
    fn constants_reduce_mod_width() {
        assert_eq!(p("300"), Expr::Const(44));
        assert_eq!(p("0xff"), Expr::Const(255));
        assert_eq!(parse("0xFFFFF", w(16)).unwrap(), Expr::Const(0xffff));
        assert_eq!(parse("18446744073709551617", w(64)).unwrap(), Expr::Const(1));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse("x+", w(8)).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(e.to_string().contains("column 3"));

        let e = parse("(x+y", w(8)).unwrap_err();
        assert!(e.message.contains("unbalanced"));

        let e = parse("x+y)", w(8)).unwrap_err();
        assert_eq!(e.position, 3);
        assert!(e.message.contains("unbalanced"));

        let e = parse("x $ y", w(8)).unwrap_err();
        assert_eq!(e.position, 2);

        let e = parse("x y", w(8)).unwrap_err();
        assert!(e.message.contains("trailing"));

        assert!(parse("x<y", w(8)).is_err());
        assert!(parse("0x", w(8)).is_err());
        assert!(parse("12ab", w(8)).is_err());
        assert!(parse("", w(8)).is_err());
    }

    #[test]
    fn variable_shift_amount_is_rejected() {
        let e = parse("x<<y", w(8)).unwrap_err();
        assert_eq!(e.position, 3);
        assert!(e.message.contains("shift"));
    }

    #[test]
    fn render_minimal_parens() {
        assert_eq!(render(&p("(x|y)+y-(~x&y)")), "(x|y)+y-(~x&y)");
        assert_eq!(render(&v("x")), "x");
        assert_eq!(render(&Expr::binary(BinOp::Add, v("x"), v("y"))), "x+y");
        assert_eq!(render(&p("a-(b-c)")), "a-(b-c)");
        assert_eq!(render(&p("(a-b)-c")), "a-b-c");
        assert_eq!(render(&p("~(a&b)")), "~(a&b)");
        assert_eq!(render(&p("x- -y")), "x--y");
        assert_eq!(render(&p("2*(x&y)")), "2*(x&y)");
    }

    #[test]
    fn resugar_restores_unary_forms() {
        let width = w(8);
        let e = preprocess(&p("(x|y)+y-(~x&y)"), width);
        assert_eq!(render(&e), "(x|y)+y-((x^255)&y)");
        assert_eq!(render(&resugar(&e, width)), "(x|y)+y-(~x&y)");
        assert_eq!(render(&resugar(&preprocess(&p("-x"), width), width)), "-x");
    }

    #[test]
    fn preprocess_eliminates_unary() {
        assert_eq!(
            preprocess(&Expr::unary(UnOp::Not, v("x")), w(16)),
            Expr::binary(BinOp::Xor, v("x"), Expr::Const(0xffff))
        );
        assert_eq!(
            preprocess(&Expr::unary(UnOp::Neg, v("x")), w(8)),
            Expr::binary(BinOp::Sub, Expr::Const(0), v("x"))
        );
        assert_eq!(preprocess(&v("x"), w(8)), v("x"));
    }

    #[test]
    fn ast_sizes() {
        assert_eq!(ast_size(&p("x+y")), 3);
        assert_eq!(ast_size(&Expr::Const(0)), 1);
        let e = p("(x|y)+y-(~x&y)");
        assert_eq!(ast_size(&e), 10);
        assert_eq!(ast_size(&preprocess(&e, w(8))), 11);
    }

    #[test]
    fn free_vars_first_occurrence() {
        assert_eq!(free_vars(&p("(x|y)+y-(~x&y)")), vec!["x", "y"]);
        assert!(free_vars(&Expr::Const(5)).is_empty());
        assert_eq!(free_vars(&p("b+a+b")), vec!["b", "a"]);
    }

    #[test]
    fn classification() {
        let c = |t: &str| classify(&preprocess(&p(t), w(8)));
        assert_eq!(c("2*(x&y)+3*(x^y)"), MbaClass::Linear);
        assert_eq!(c("(x|y)+y-(~x&y)"), MbaClass::Linear);
        assert_eq!(c("x*y+3*(x&y)"), MbaClass::Polynomial);
        assert_eq!(c("x*y+3*(x&y)+4*(x&~y)*((x|y)-2)"), MbaClass::Polynomial);
        assert_eq!(c("(x+y)&z"), MbaClass::NonPolynomial);
        assert_eq!(c("x+y"), MbaClass::NotMba);
        assert_eq!(c("x&y"), MbaClass::NotMba);
        assert_eq!(c("((x&y)<<2)-x"), MbaClass::Linear);
    }
}
