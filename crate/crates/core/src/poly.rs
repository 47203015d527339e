//! Multilinear integer polynomials over idempotent class variables.
//!
//! Every variable satisfies `x * x = x`, so a [`Poly`] is a sparse map from
//! square-free monomials to nonzero integer coefficients. That normal form is
//! unique: two polynomials agree on every 0/1 assignment exactly when their
//! term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("operands belong to different variable contexts")]
    ContextMismatch,
    #[error("assignment does not bind variable `{0}`")]
    MissingAssignment(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidName(String),
    #[error("a context holds at most 64 variables, got {0}")]
    TooManyVariables(usize),
}

/// Index of a variable inside its [`Context`]. Ordering follows the context's
/// canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u8);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn bit(self) -> u64 {
        1u64 << self.0
    }
}

/// An ordered universe of class variables.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Context {
    names: Vec<String>,
}

impl Context {
    pub fn new<I, S>(names: I) -> Result<Arc<Context>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > 64 {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(PolyError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Context { names }))
    }

    /// The universe used throughout: `x, y, z, v, v', w, w'`.
    pub fn boole() -> Arc<Context> {
        Context::new(["x", "y", "z", "v", "v'", "w", "w'"]).expect("static names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(|i| VarId(i as u8))
    }

    /// Like [`Context::var`] but panics on unknown names; for names fixed in code.
    pub fn expect_var(&self, name: &str) -> VarId {
        self.var(name).unwrap_or_else(|| panic!("variable `{name}` is not in the context"))
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.names[var.index()]
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len()).map(|i| VarId(i as u8))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '\'')
}

/// A square-free product of variables, stored as a bit set over the context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn of(vars: &[VarId]) -> Monomial {
        Monomial(vars.iter().fold(0, |acc, v| acc | v.bit()))
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, var: VarId) -> bool {
        self.0 & var.bit() != 0
    }

    pub fn vars(self) -> impl Iterator<Item = VarId> {
        let bits = self.0;
        (0..64u8).filter(move |i| bits & (1 << i) != 0).map(VarId)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Idempotent product: `x * x = x`.
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.vars().cmp(other.vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total or partial 0/1 assignment, as a pair of bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Assignment {
    bound: u64,
    ones: u64,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every variable bound; the ones are those in `ones`.
    pub fn total(ones: u64) -> Self {
        Assignment { bound: u64::MAX, ones }
    }

    pub fn with(mut self, var: VarId, value: bool) -> Self {
        self.set(var, value);
        self
    }

    pub fn set(&mut self, var: VarId, value: bool) {
        self.bound |= var.bit();
        if value {
            self.ones |= var.bit();
        } else {
            self.ones &= !var.bit();
        }
    }

    pub fn get(&self, var: VarId) -> Option<bool> {
        (self.bound & var.bit() != 0).then_some(self.ones & var.bit() != 0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(ctx: &Arc<Context>) -> Poly {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<Context>, value: impl Into<BigInt>) -> Poly {
        Poly::monomial(ctx, Monomial::ONE, value)
    }

    pub fn one(ctx: &Arc<Context>) -> Poly {
        Poly::constant(ctx, 1)
    }

    pub fn var(ctx: &Arc<Context>, var: VarId) -> Poly {
        Poly::monomial(ctx, Monomial::of(&[var]), 1)
    }

    /// `1 - var`.
    pub fn not_var(ctx: &Arc<Context>, var: VarId) -> Poly {
        Poly::one(ctx) - Poly::var(ctx, var)
    }

    pub fn monomial(ctx: &Arc<Context>, m: Monomial, coeff: impl Into<BigInt>) -> Poly {
        let mut p = Poly::zero(ctx);
        p.add_term(m, coeff.into());
        p
    }

    /// Product over `(var, value)` of `var` or `1 - var`.
    pub fn literal_product(ctx: &Arc<Context>, lits: impl IntoIterator<Item = (VarId, bool)>) -> Poly {
        lits.into_iter().fold(Poly::one(ctx), |acc, (v, positive)| {
            let factor = if positive { Poly::var(ctx, v) } else { Poly::not_var(ctx, v) };
            &acc * &factor
        })
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Variables occurring in some term, in canonical order.
    pub fn variables(&self) -> Vec<VarId> {
        let mask = self.terms.keys().fold(0u64, |acc, m| acc | m.mask());
        Monomial(mask).vars().collect()
    }

    pub fn mentions(&self, var: VarId) -> bool {
        self.terms.keys().any(|m| m.contains(var))
    }

    fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn same_context(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_context(other)?;
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    /// Simultaneous substitution followed by idempotent normalization.
    pub fn substitute(&self, bindings: &[(VarId, Poly)]) -> Result<Poly, PolyError> {
        for (_, p) in bindings {
            self.same_context(p)?;
        }
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&self.ctx, c.clone());
            let mut rest = *m;
            for (var, replacement) in bindings {
                if m.contains(*var) {
                    term = &term * replacement;
                    rest = Monomial(rest.0 & !var.bit());
                }
            }
            term = &term * &Poly::monomial(&self.ctx, rest, 1);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitute a 0/1 constant for one variable.
    pub fn fix(&self, var: VarId, value: bool) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.contains(var) {
                if value {
                    out.add_term(Monomial(m.0 & !var.bit()), c.clone());
                }
            } else {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<BigInt, PolyError> {
        let mut sum = BigInt::zero();
        for (m, c) in &self.terms {
            let missing = m.0 & !assignment.bound;
            if missing != 0 {
                let var = Monomial(missing).vars().next().expect("nonzero mask");
                return Err(PolyError::MissingAssignment(self.ctx.name(var).to_string()));
            }
            if m.0 & assignment.ones == m.0 {
                sum += c;
            }
        }
        Ok(sum)
    }

    /// Evaluate with every variable in `ones` set to 1 and every other variable 0.
    pub fn eval_mask(&self, ones: u64) -> BigInt {
        self.terms.iter().filter(|(m, _)| m.0 & ones == m.0).map(|(_, c)| c).sum()
    }

    pub fn parse(text: &str, ctx: &Arc<Context>) -> Result<Poly, PolyError> {
        let mut parser = Parser::new(text, ctx);
        let p = parser.expr()?;
        parser.expect_end()?;
        Ok(p)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || *m == Monomial::ONE {
                factors.push(magnitude.to_string());
            }
            factors.extend(m.vars().map(|v| self.ctx.name(v).to_string()));
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands come from different contexts.
        impl ops::$trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }

        impl ops::$trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    NotEqual,
}

/// `lhs = rhs`, or `lhs != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Poly,
    pub rhs: Poly,
    pub relation: Relation,
}

impl Equation {
    pub fn equal(lhs: Poly, rhs: Poly) -> Result<Equation, PolyError> {
        lhs.same_context(&rhs)?;
        Ok(Equation { lhs, rhs, relation: Relation::Equal })
    }

    pub fn not_zero(lhs: Poly) -> Equation {
        let rhs = Poly::zero(lhs.context());
        Equation { lhs, rhs, relation: Relation::NotEqual }
    }

    pub fn is_zero(lhs: Poly) -> Equation {
        let rhs = Poly::zero(lhs.context());
        Equation { lhs, rhs, relation: Relation::Equal }
    }

    pub fn context(&self) -> &Arc<Context> {
        self.lhs.context()
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> Poly {
        &self.lhs - &self.rhs
    }

    pub fn substitute(&self, bindings: &[(VarId, Poly)]) -> Result<Equation, PolyError> {
        Ok(Equation {
            lhs: self.lhs.substitute(bindings)?,
            rhs: self.rhs.substitute(bindings)?,
            relation: self.relation,
        })
    }

    pub fn parse(text: &str, ctx: &Arc<Context>) -> Result<Equation, PolyError> {
        let mut parser = Parser::new(text, ctx);
        let eq = parser.equation()?;
        parser.expect_end()?;
        Ok(eq)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::Equal => write!(f, "{} = {}", self.lhs, self.rhs),
            Relation::NotEqual => write!(f, "{} != 0", self.lhs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    ctx: Arc<Context>,
    equations: Vec<Equation>,
}

impl EquationSystem {
    pub fn new(ctx: &Arc<Context>, equations: Vec<Equation>) -> Result<Self, PolyError> {
        for eq in &equations {
            if **eq.context() != **ctx {
                return Err(PolyError::ContextMismatch);
            }
        }
        Ok(EquationSystem { ctx: ctx.clone(), equations })
    }

    /// Equations separated by `;` or newlines.
    pub fn parse(text: &str, ctx: &Arc<Context>) -> Result<Self, PolyError> {
        let mut equations = Vec::new();
        let mut offset = 0;
        for piece in text.split([';', '\n']) {
            if !piece.trim().is_empty() {
                let eq = Equation::parse(piece, ctx).map_err(|e| shift(e, offset))?;
                equations.push(eq);
            }
            offset += piece.len() + 1;
        }
        EquationSystem::new(ctx, equations)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Variables mentioned anywhere in the system, in canonical order.
    pub fn variables(&self) -> Vec<VarId> {
        let mask = self
            .equations
            .iter()
            .flat_map(|eq| [&eq.lhs, &eq.rhs])
            .flat_map(|p| p.terms.keys())
            .fold(0u64, |acc, m| acc | m.mask());
        Monomial(mask).vars().collect()
    }

    pub fn substitute(&self, bindings: &[(VarId, Poly)]) -> Result<Self, PolyError> {
        let equations = self.equations.iter().map(|eq| eq.substitute(bindings)).collect::<Result<_, _>>()?;
        Ok(EquationSystem { ctx: self.ctx.clone(), equations })
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, eq) in self.equations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{eq}")?;
        }
        Ok(())
    }
}

fn shift(err: PolyError, offset: usize) -> PolyError {
    match err {
        PolyError::Syntax { pos, message } => PolyError::Syntax { pos: pos + offset, message },
        PolyError::UnknownVariable { name, pos } => PolyError::UnknownVariable { name, pos: pos + offset },
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Equals,
    NotEquals,
    End,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a Arc<Context>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ctx: &'a Arc<Context>) -> Self {
        Parser { src, pos: 0, ctx }
    }

    fn error<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and its start offset without consuming it.
    fn peek(&mut self) -> Result<(Token, usize, usize), PolyError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Token::End, start, start));
        };
        let single = |t| Ok((t, start, start + 1));
        match c {
            '+' => single(Token::Plus),
            '-' => single(Token::Minus),
            '*' => single(Token::Star),
            '^' => single(Token::Caret),
            '(' => single(Token::LParen),
            ')' => single(Token::RParen),
            '=' => single(Token::Equals),
            '!' if rest.starts_with("!=") => Ok((Token::NotEquals, start, start + 2)),
            c if c.is_ascii_digit() => {
                let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let value = rest[..len].parse::<BigInt>().expect("digits parse");
                Ok((Token::Int(value), start, start + len))
            }
            c if c.is_ascii_alphabetic() => {
                let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '\'')).unwrap_or(rest.len());
                Ok((Token::Ident(rest[..len].to_string()), start, start + len))
            }
            other => self.error(start, format!("unexpected character `{other}`")),
        }
    }

    fn next(&mut self) -> Result<(Token, usize), PolyError> {
        let (tok, start, end) = self.peek()?;
        self.pos = end;
        Ok((tok, start))
    }

    fn expect_end(&mut self) -> Result<(), PolyError> {
        match self.peek()? {
            (Token::End, _, _) => Ok(()),
            (tok, pos, _) => self.error(pos, format!("unexpected {tok:?} after expression")),
        }
    }

    fn equation(&mut self) -> Result<Equation, PolyError> {
        let lhs = self.expr()?;
        match self.next()? {
            (Token::Equals, _) => {
                let rhs = self.expr()?;
                Equation::equal(lhs, rhs)
            }
            (Token::NotEquals, _) => match self.next()? {
                (Token::Int(n), _) if n.is_zero() => Ok(Equation::not_zero(lhs)),
                (_, pos) => self.error(pos, "`!=` must be followed by `0`"),
            },
            (_, pos) => self.error(pos, "expected `=` or `!=`"),
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        // A leading minus is accepted so that printed polynomials re-parse.
        let negate = matches!(self.peek()?.0, Token::Minus);
        if negate {
            self.next()?;
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek()?.0 {
                Token::Plus => {
                    self.next()?;
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.next()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while matches!(self.peek()?.0, Token::Star) {
            self.next()?;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if matches!(self.peek()?.0, Token::Caret) {
            self.next()?;
            match self.next()? {
                (Token::Int(n), _) if n == BigInt::from(2) => return Ok(base.square()),
                (_, pos) => return self.error(pos, "only the exponent 2 is allowed"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.next()? {
            (Token::Ident(name), pos) => match self.ctx.var(&name) {
                Some(v) => Ok(Poly::var(self.ctx, v)),
                None => Err(PolyError::UnknownVariable { name, pos }),
            },
            (Token::Int(n), _) => Ok(Poly::constant(self.ctx, n)),
            (Token::LParen, _) => {
                let inner = self.expr()?;
                match self.next()? {
                    (Token::RParen, _) => Ok(inner),
                    (_, pos) => self.error(pos, "expected `)`"),
                }
            }
            (Token::End, pos) => self.error(pos, "unexpected end of input"),
            (tok, pos) => self.error(pos, format!("unexpected {tok:?}")),
        }
    }
}
