//! Constituent expansion and tabulated solution of `E = 0` for a class.
//!
//! Rows are numbered by reading the 0/1 values of the listed variables as a
//! binary number with the first variable most significant, plus one. With the
//! list `z, v, v', w, w'` row 1 is all zeros, row 2 has `w' = 1` and row 17
//! has `z = 1`.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::poly::{Assignment, Context, Poly, PolyError, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("variable `{0}` does not occur in the equation")]
    AbsentUnknown(String),
    #[error("variable `{0}` occurs in the polynomial but not in the expansion list")]
    UnlistedVariable(String),
    #[error("variable `{0}` is not among the constituent variables")]
    NotAConstituentVariable(String),
    #[error("value {0} does not fit a table coefficient")]
    Overflow(BigInt),
    #[error("expansion over {0} variables is too large")]
    TooManyVariables(usize),
}

/// One full product over an ordered variable list, identified by its bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constituent {
    bits: u32,
    arity: u8,
}

impl Constituent {
    pub fn new(bits: u32, arity: usize) -> Constituent {
        assert!(arity <= 16 && (bits as u64) < (1u64 << arity));
        Constituent { bits, arity: arity as u8 }
    }

    /// From a 1-based table row number.
    pub fn from_row(row: usize, arity: usize) -> Constituent {
        Constituent::new((row - 1) as u32, arity)
    }

    pub fn all(arity: usize) -> impl Iterator<Item = Constituent> {
        (0..1u32 << arity).map(move |b| Constituent::new(b, arity))
    }

    pub fn row(self) -> usize {
        self.bits as usize + 1
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn arity(self) -> usize {
        self.arity as usize
    }

    /// Value of the `i`-th listed variable.
    pub fn value(self, i: usize) -> bool {
        (self.bits >> (self.arity as usize - 1 - i)) & 1 == 1
    }

    pub fn values(self) -> impl Iterator<Item = bool> {
        (0..self.arity as usize).map(move |i| self.value(i))
    }

    pub fn assignment(self, vars: &[VarId]) -> Assignment {
        vars.iter().enumerate().fold(Assignment::new(), |a, (i, v)| a.with(*v, self.value(i)))
    }

    pub fn to_poly(self, ctx: &Arc<Context>, vars: &[VarId]) -> Poly {
        Poly::literal_product(ctx, vars.iter().enumerate().map(|(i, v)| (*v, self.value(i))))
    }

    /// Juxtaposed product such as `z(1-v)(1-v')w(1-w')`.
    pub fn display(self, ctx: &Context, vars: &[VarId]) -> String {
        let mut out = String::new();
        for (i, v) in vars.iter().enumerate() {
            if self.value(i) {
                out.push_str(ctx.name(*v));
            } else {
                let _ = write!(out, "(1-{})", ctx.name(*v));
            }
        }
        out
    }

    /// Drop position `i`.
    fn without(self, i: usize) -> Constituent {
        let n = self.arity as usize;
        let shift = n - 1 - i;
        let high = (self.bits >> (shift + 1)) << shift;
        let low = self.bits & ((1 << shift) - 1);
        Constituent::new(high | low, n - 1)
    }
}

/// An unreduced quotient, kept exactly as tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub num: i64,
    pub den: i64,
}

impl Coefficient {
    pub fn new(num: i64, den: i64) -> Coefficient {
        Coefficient { num, den }
    }

    pub fn class(self) -> CoeffClass {
        classify_coefficient(self)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffClass {
    One,
    Zero,
    Indef,
    Infinite,
}

impl CoeffClass {
    /// The symbol used in the Value column.
    pub fn symbol(self) -> &'static str {
        match self {
            CoeffClass::One => "1",
            CoeffClass::Zero => "0",
            CoeffClass::Indef => "0/0",
            CoeffClass::Infinite => "∞",
        }
    }

    pub fn json_name(self) -> &'static str {
        match self {
            CoeffClass::One => "one",
            CoeffClass::Zero => "zero",
            CoeffClass::Indef => "indef",
            CoeffClass::Infinite => "infinite",
        }
    }

    pub fn from_json_name(name: &str) -> Option<CoeffClass> {
        [CoeffClass::One, CoeffClass::Zero, CoeffClass::Indef, CoeffClass::Infinite]
            .into_iter()
            .find(|c| c.json_name() == name)
    }

    pub fn from_symbol(symbol: &str) -> Option<CoeffClass> {
        [CoeffClass::One, CoeffClass::Zero, CoeffClass::Indef, CoeffClass::Infinite]
            .into_iter()
            .find(|c| c.symbol() == symbol)
    }
}

/// `0/0` is indefinite, `b/b` is one, `0/b` is zero and everything else
/// (including `n/0` and fractional values such as `2/4`) is infinite.
pub fn classify_coefficient(c: Coefficient) -> CoeffClass {
    match (c.num, c.den) {
        (0, 0) => CoeffClass::Indef,
        (_, 0) => CoeffClass::Infinite,
        (0, _) => CoeffClass::Zero,
        (n, d) if n == d => CoeffClass::One,
        _ => CoeffClass::Infinite,
    }
}

/// `(E1, E0)` with `p = E1*var + E0*(1 - var)`.
pub fn split_about(p: &Poly, var: VarId) -> Result<(Poly, Poly), ExpandError> {
    if var.index() >= p.context().len() {
        return Err(PolyError::ContextMismatch.into());
    }
    Ok((p.fix(var, true), p.fix(var, false)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub vars: Vec<VarId>,
    pub rows: Vec<(Constituent, BigInt)>,
}

impl Expansion {
    /// `Σ value · constituent`.
    pub fn to_poly(&self, ctx: &Arc<Context>) -> Poly {
        self.rows.iter().fold(Poly::zero(ctx), |acc, (c, value)| {
            acc + c.to_poly(ctx, &self.vars) * Poly::constant(ctx, value.clone())
        })
    }

    pub fn value_at_row(&self, row: usize) -> &BigInt {
        &self.rows[row - 1].1
    }
}

pub fn expand_full(p: &Poly, vars: &[VarId]) -> Result<Expansion, ExpandError> {
    if vars.len() > 16 {
        return Err(ExpandError::TooManyVariables(vars.len()));
    }
    if let Some(v) = p.variables().into_iter().find(|v| !vars.contains(v)) {
        return Err(ExpandError::UnlistedVariable(p.context().name(v).to_string()));
    }
    let rows = Constituent::all(vars.len())
        .map(|c| {
            let value = p.eval(&c.assignment(vars))?;
            Ok((c, value))
        })
        .collect::<Result<_, PolyError>>()?;
    Ok(Expansion { vars: vars.to_vec(), rows })
}

/// What a solution expresses: the unknown, its complement, or either one
/// multiplied by a selector variable (`vx`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Target {
    pub unknown: VarId,
    pub complement: bool,
    pub selector: Option<VarId>,
}

impl Target {
    pub fn class(unknown: VarId) -> Target {
        Target { unknown, complement: false, selector: None }
    }

    pub fn complement(unknown: VarId) -> Target {
        Target { unknown, complement: true, selector: None }
    }

    pub fn selected_by(self, selector: VarId) -> Target {
        Target { selector: Some(selector), ..self }
    }

    pub fn display(&self, ctx: &Context) -> String {
        let base = ctx.name(self.unknown);
        match (self.selector, self.complement) {
            (None, false) => base.to_string(),
            (None, true) => format!("1-{base}"),
            (Some(s), false) => format!("{}{base}", ctx.name(s)),
            (Some(s), true) => format!("{}(1-{base})", ctx.name(s)),
        }
    }

    pub fn to_poly(&self, ctx: &Arc<Context>) -> Poly {
        let base = if self.complement { Poly::not_var(ctx, self.unknown) } else { Poly::var(ctx, self.unknown) };
        match self.selector {
            Some(s) => Poly::var(ctx, s) * base,
            None => base,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionRow {
    pub constituent: Constituent,
    pub coeff: Coefficient,
    pub class: CoeffClass,
}

/// A tabulated solution: one row per constituent of `vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionExpansion {
    ctx: Arc<Context>,
    pub label: Option<String>,
    pub target: Target,
    pub vars: Vec<VarId>,
    pub rows: Vec<SolutionRow>,
}

fn small(value: BigInt) -> Result<i64, ExpandError> {
    i64::try_from(&value).map_err(|_| ExpandError::Overflow(value))
}

/// Solve `e = 0` for `unknown` (or `1 - unknown`) by tabulating the quotient
/// over the constituents of `vars`.
///
/// The denominator is `E1 - E0`; the numerator is `-E0` for the class and
/// `E1` for its complement.
pub fn solve_for(e: &Poly, target: Target, vars: &[VarId]) -> Result<SolutionExpansion, ExpandError> {
    let ctx = e.context();
    let x = target.unknown;
    if !e.mentions(x) {
        return Err(ExpandError::AbsentUnknown(ctx.name(x).to_string()));
    }
    if vars.contains(&x) {
        return Err(ExpandError::NotAConstituentVariable(ctx.name(x).to_string()));
    }
    if vars.len() > 16 {
        return Err(ExpandError::TooManyVariables(vars.len()));
    }
    let (e1, e0) = split_about(e, x)?;
    for v in e1.variables().into_iter().chain(e0.variables()) {
        if !vars.contains(&v) {
            return Err(ExpandError::UnlistedVariable(ctx.name(v).to_string()));
        }
    }
    let rows = Constituent::all(vars.len())
        .map(|c| {
            let a = c.assignment(vars);
            let v1 = e1.eval(&a)?;
            let v0 = e0.eval(&a)?;
            let den = small(&v1 - &v0)?;
            let num = if target.complement { small(v1)? } else { small(-v0)? };
            let coeff = Coefficient::new(num, den);
            Ok(SolutionRow { constituent: c, coeff, class: classify_coefficient(coeff) })
        })
        .collect::<Result<_, ExpandError>>()?;
    Ok(SolutionExpansion {
        ctx: ctx.clone(),
        label: None,
        target: Target { selector: None, ..target },
        vars: vars.to_vec(),
        rows,
    })
}

/// Multiply a solution by `var`: rows with `var = 0` become zero.
pub fn multiply_solution(s: &SolutionExpansion, var: VarId) -> Result<SolutionExpansion, ExpandError> {
    let pos = s.position(var)?;
    let rows = s
        .rows
        .iter()
        .map(|r| {
            if r.constituent.value(pos) {
                *r
            } else {
                SolutionRow { coeff: Coefficient::new(0, 1), class: CoeffClass::Zero, ..*r }
            }
        })
        .collect();
    Ok(SolutionExpansion { rows, target: s.target.selected_by(var), ..s.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintEquation {
    pub poly: Poly,
}

/// Sum of the infinite-class constituents, to be set equal to zero.
pub fn constraint_of(s: &SolutionExpansion) -> ConstraintEquation {
    let poly = s
        .rows
        .iter()
        .filter(|r| r.class == CoeffClass::Infinite)
        .fold(Poly::zero(&s.ctx), |acc, r| acc + r.constituent.to_poly(&s.ctx, &s.vars));
    ConstraintEquation { poly }
}

impl SolutionExpansion {
    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn position(&self, var: VarId) -> Result<usize, ExpandError> {
        self.vars
            .iter()
            .position(|v| *v == var)
            .ok_or_else(|| ExpandError::NotAConstituentVariable(self.ctx.name(var).to_string()))
    }

    pub fn row(&self, number: usize) -> &SolutionRow {
        &self.rows[number - 1]
    }

    /// The row whose constituent is active under `a`.
    pub fn active_row(&self, a: &Assignment) -> Option<&SolutionRow> {
        let mut bits = 0u32;
        for v in &self.vars {
            bits = (bits << 1) | a.get(*v)? as u32;
        }
        Some(&self.rows[bits as usize])
    }

    /// Rows with the given class whose constituent has `vars[0]` equal to `side`.
    pub fn side_rows(&self, side: bool, class: CoeffClass) -> impl Iterator<Item = &SolutionRow> + '_ {
        self.rows.iter().filter(move |r| r.class == class && r.constituent.value(0) == side)
    }

    /// Set each of `ones` to 1: drop those variables and keep only the rows
    /// that agree, re-indexed over the remaining variables.
    pub fn restrict(&self, ones: &[VarId]) -> Result<SolutionExpansion, ExpandError> {
        let mut positions = ones.iter().map(|v| self.position(*v)).collect::<Result<Vec<_>, _>>()?;
        positions.sort_unstable();
        positions.dedup();
        let vars = self.vars.iter().enumerate().filter(|(i, _)| !positions.contains(i)).map(|(_, v)| *v).collect();
        let rows = self
            .rows
            .iter()
            .filter(|r| positions.iter().all(|&p| r.constituent.value(p)))
            .map(|r| {
                let c = positions.iter().rev().fold(r.constituent, |c, &p| c.without(p));
                SolutionRow { constituent: c, ..*r }
            })
            .collect();
        let target = match self.target.selector {
            Some(s) if ones.contains(&s) => Target { selector: None, ..self.target },
            _ => self.target,
        };
        Ok(SolutionExpansion { vars, rows, target, ..self.clone() })
    }

    /// Fixed-width table with row number, variable bits, coefficient, value
    /// and constituent.
    pub fn to_paper_table(&self) -> String {
        let names: Vec<&str> = self.vars.iter().map(|v| self.ctx.name(*v)).collect();
        let widths: Vec<usize> = names.iter().map(|n| n.len().max(1)).collect();
        let mut out = String::new();
        let title = match &self.label {
            Some(l) => format!("Case {l}: table for {}", self.target.display(&self.ctx)),
            None => format!("Table for {}", self.target.display(&self.ctx)),
        };
        let _ = writeln!(out, "{title}");
        let mut header = String::from("    ");
        for (n, w) in names.iter().zip(&widths) {
            let _ = write!(header, " {n:>w$}");
        }
        let _ = write!(header, " {:>7}  {:<5} Constituent", "Coeff", "Value");
        out.push_str(&header);
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{:>3}.", r.constituent.row());
            for (i, w) in widths.iter().enumerate() {
                let _ = write!(out, " {:>w$}", r.constituent.value(i) as u8);
            }
            let _ = writeln!(
                out,
                " {:>7}  {:<5} {}",
                r.coeff.to_string(),
                r.class.symbol(),
                r.constituent.display(&self.ctx, &self.vars)
            );
        }
        out
    }

    /// Same schema as the golden table files.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = Map::new();
                obj.insert("row".into(), json!(r.constituent.row()));
                for (i, v) in self.vars.iter().enumerate() {
                    obj.insert(self.ctx.name(*v).to_string(), json!(r.constituent.value(i) as u8));
                }
                obj.insert("num".into(), json!(r.coeff.num));
                obj.insert("den".into(), json!(r.coeff.den));
                obj.insert("class".into(), json!(r.class.json_name()));
                Value::Object(obj)
            })
            .collect();
        json!({
            "kind": "table",
            "case": self.label,
            "target": self.target.display(&self.ctx),
            "vars": self.vars.iter().map(|v| self.ctx.name(*v)).collect::<Vec<_>>(),
            "rows": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<Context> {
        Context::boole()
    }

    fn five(c: &Context) -> Vec<VarId> {
        ["z", "v", "v'", "w", "w'"].map(|n| c.expect_var(n)).to_vec()
    }

    fn case_i_e(c: &Arc<Context>) -> Poly {
        Poly::parse("((v*x - v')^2 + (w*z - w')^2)*(v*x + w*z)", c).unwrap()
    }

    #[test]
    fn row_numbering() {
        let c = Constituent::from_row(19, 5);
        assert_eq!(c.values().collect::<Vec<_>>(), vec![true, false, false, true, false]);
        assert_eq!(Constituent::from_row(2, 5).values().last(), Some(true));
        assert!(Constituent::from_row(17, 5).value(0));
        let cx = ctx();
        assert_eq!(c.display(&cx, &five(&cx)), "z(1-v)(1-v')w(1-w')");
    }

    #[test]
    fn classify() {
        assert_eq!(classify_coefficient(Coefficient::new(0, 0)), CoeffClass::Indef);
        assert_eq!(classify_coefficient(Coefficient::new(-1, -1)), CoeffClass::One);
        assert_eq!(classify_coefficient(Coefficient::new(-1, 3)), CoeffClass::Infinite);
        assert_eq!(classify_coefficient(Coefficient::new(0, 2)), CoeffClass::Zero);
        assert_eq!(classify_coefficient(Coefficient::new(-1, 0)), CoeffClass::Infinite);
        assert_eq!(classify_coefficient(Coefficient::new(2, 4)), CoeffClass::Infinite);
        for n in -4..=4 {
            for d in -4..=4 {
                let c = Coefficient::new(n, d);
                assert_eq!(c.class(), Coefficient::new(-n, -d).class());
            }
        }
    }

    #[test]
    fn split_identity() {
        let c = ctx();
        let x = c.expect_var("x");
        let e = case_i_e(&c);
        let (e1, e0) = split_about(&e, x).unwrap();
        assert_eq!(e1, Poly::parse("((v - v')^2 + (w*z - w')^2)*(v + w*z)", &c).unwrap());
        assert_eq!(e0, Poly::parse("(v' + (w*z - w')^2)*w*z", &c).unwrap());
        let rebuilt = &e1 * &Poly::var(&c, x) + &e0 * &Poly::not_var(&c, x);
        assert_eq!(rebuilt, e);
        let (a, b) = split_about(&Poly::var(&c, x), x).unwrap();
        assert_eq!((a, b), (Poly::one(&c), Poly::zero(&c)));
    }

    #[test]
    fn expansion_rows() {
        let c = ctx();
        let [x, y] = ["x", "y"].map(|n| c.expect_var(n));
        let ex = expand_full(&Poly::var(&c, x), &[x]).unwrap();
        assert_eq!(ex.rows, vec![(Constituent::new(0, 1), 0.into()), (Constituent::new(1, 1), 1.into())]);
        let ones = expand_full(&Poly::one(&c), &[x, y]).unwrap();
        assert!(ones.rows.iter().all(|(_, v)| *v == BigInt::from(1)));
        assert_eq!(ones.to_poly(&c), Poly::one(&c));
        assert!(matches!(expand_full(&Poly::var(&c, y), &[x]), Err(ExpandError::UnlistedVariable(_))));

        let e = case_i_e(&c);
        let (e1, e0) = split_about(&e, x).unwrap();
        let diff = expand_full(&(&e0 - &e1), &five(&c)).unwrap();
        assert_eq!(*diff.value_at_row(27), BigInt::from(-3));
        assert_eq!(diff.to_poly(&c), &e0 - &e1);
    }

    #[test]
    fn solve_rows() {
        let c = ctx();
        let x = c.expect_var("x");
        let e = case_i_e(&c);
        let sx = solve_for(&e, Target::class(x), &five(&c)).unwrap();
        assert_eq!(sx.row(19).coeff, Coefficient::new(-1, 0));
        assert_eq!(sx.row(19).class, CoeffClass::Infinite);
        assert_eq!(sx.row(27).coeff, Coefficient::new(-1, 3));
        let snx = solve_for(&e, Target::complement(x), &five(&c)).unwrap();
        assert_eq!(snx.row(25).coeff, Coefficient::new(1, 1));
        assert_eq!(snx.row(25).class, CoeffClass::One);

        let e2 = Poly::parse("((v*x - v')^2 + w*z)*(v*x + (w*z - w')^2)", &c).unwrap();
        let s2 = solve_for(&e2, Target::class(x), &five(&c)).unwrap();
        assert_eq!(s2.row(14).coeff, Coefficient::new(-1, -1));
        assert_eq!(s2.row(14).class, CoeffClass::One);

        assert!(matches!(
            solve_for(&Poly::var(&c, c.expect_var("z")), Target::class(x), &five(&c)),
            Err(ExpandError::AbsentUnknown(_))
        ));
    }

    #[test]
    fn multiply_by_selector() {
        let c = ctx();
        let x = c.expect_var("x");
        let v = c.expect_var("v");
        let sx = solve_for(&case_i_e(&c), Target::class(x), &five(&c)).unwrap();
        let vx = multiply_solution(&sx, v).unwrap();
        let ones: Vec<usize> =
            vx.rows.iter().filter(|r| r.class == CoeffClass::One).map(|r| r.constituent.row()).collect();
        assert_eq!(ones, vec![32]);
        assert_eq!(vx.target.display(&c), "vx");
        assert!(vx.rows.iter().filter(|r| !r.constituent.value(1)).all(|r| r.class == CoeffClass::Zero));
        assert!(multiply_solution(&sx, x).is_err());
    }

    #[test]
    fn constraint_contains_infinite_rows() {
        let c = ctx();
        let x = c.expect_var("x");
        let e = case_i_e(&c);
        let vars = five(&c);
        let sx = solve_for(&e, Target::class(x), &vars).unwrap();
        let constraint = constraint_of(&sx);
        let row19 = Constituent::from_row(19, 5).to_poly(&c, &vars);
        assert_eq!(&constraint.poly * &row19, row19);
        // E = 0 forces the constraint polynomial to vanish, over all 2^6 points.
        let mut all = vars.clone();
        all.push(x);
        for bits in 0..64u32 {
            let a = Constituent::new(bits, 6).assignment(&all);
            if e.eval(&a).unwrap() == BigInt::from(0) {
                assert_eq!(constraint.poly.eval(&a).unwrap(), BigInt::from(0));
            }
        }
        let no_inf = solve_for(&Poly::var(&c, x), Target::class(x), &[]).unwrap();
        assert!(constraint_of(&no_inf).poly.is_zero());
    }

    #[test]
    fn restrict_drops_variables() {
        let c = ctx();
        let x = c.expect_var("x");
        let [v, wp] = ["v", "w'"].map(|n| c.expect_var(n));
        let sx = solve_for(&case_i_e(&c), Target::class(x), &five(&c)).unwrap();
        let r = sx.restrict(&[v, wp]).unwrap();
        assert_eq!(r.vars.len(), 3);
        assert_eq!(r.rows.len(), 8);
        // (z, v', w) = (1, 1, 1) corresponds to row 32
        assert_eq!(r.rows[7].coeff, sx.row(32).coeff);
    }

    #[test]
    fn table_text_layout() {
        let c = ctx();
        let x = c.expect_var("x");
        let sx = solve_for(&case_i_e(&c), Target::class(x), &five(&c)).unwrap().with_label("I");
        let text = sx.to_paper_table();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 34);
        assert_eq!(lines[0], "Case I: table for x");
        assert!(lines[20].starts_with(" 19."), "{}", lines[20]);
        assert!(lines[20].contains("-1/0"));
        assert!(lines[20].ends_with("z(1-v)(1-v')w(1-w')"));
    }
}
