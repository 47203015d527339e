//! Finite-model semantics for class statements.
//!
//! A model gives each Venn region of a short list of terms a cardinality.
//! Statements of the form `p = q` and `p != 0` only look at which regions
//! are occupied; cardinality statements look at the counts.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::poly::{Assignment, Context, Equation, EquationSystem, Poly, Relation, VarId};

pub const MAX_TERMS: usize = 4;
pub const MAX_COUNT: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "at most {MAX_TERMS} terms and cardinality bound {MAX_COUNT} are supported (got {terms} terms, bound {c_max})"
    )]
    BoundsExceeded { terms: usize, c_max: u8 },
    #[error("`{0}` is not a term of the model")]
    UnknownTerm(String),
    #[error("`{0}` is not a product of literals")]
    NotLiteral(String),
    #[error("`{0}` is not of the form selector * literal")]
    NotSelectedLiteral(String),
    #[error("cardinality {k} exceeds the bound {c_max}")]
    CardinalityBound { k: u32, c_max: u8 },
    #[error("unknown convention `{0}` (expected none, nonempty-terms, nonempty-middle, nonempty-v-selection)")]
    UnknownConvention(String),
    #[error("no condensed form {0} (expected 1 to 4)")]
    UnknownForm(u8),
}

/// Cardinalities of the `2^n` regions; region bits read the first term as
/// the most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionModel {
    pub terms: Vec<VarId>,
    pub counts: Vec<u8>,
}

impl RegionModel {
    pub fn region_count(&self) -> usize {
        self.counts.len()
    }

    /// Bit `r` is set when region `r` is nonempty.
    pub fn occupancy(&self) -> u32 {
        self.counts.iter().enumerate().filter(|(_, c)| **c > 0).fold(0, |acc, (r, _)| acc | 1 << r)
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().map(|c| *c as u32).sum()
    }

    pub fn region_assignment(&self, region: usize) -> Assignment {
        let n = self.terms.len();
        let mut a = Assignment::new();
        for (i, t) in self.terms.iter().enumerate() {
            a.set(*t, region >> (n - 1 - i) & 1 == 1);
        }
        a
    }

    /// Total count of the regions where a 0/1 class expression is 1.
    pub fn cardinality(&self, class: &Poly) -> Result<u32, OracleError> {
        let regions = regions_where(class, &self.terms, |v| v != 0)?;
        Ok(self.counts.iter().enumerate().filter(|(r, _)| regions & (1 << r) != 0).map(|(_, c)| *c as u32).sum())
    }

    pub fn region_name(&self, ctx: &Context, region: usize) -> String {
        let n = self.terms.len();
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if region >> (n - 1 - i) & 1 == 1 {
                    ctx.name(*t).to_string()
                } else {
                    format!("(1-{})", ctx.name(*t))
                }
            })
            .collect()
    }

    /// Occupied regions only, e.g. `{x(1-y)z: 1}`.
    pub fn display(&self, ctx: &Context) -> String {
        let parts: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(r, c)| format!("{}: {c}", self.region_name(ctx, r)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn to_json(&self, ctx: &Context) -> Value {
        let mut regions = Map::new();
        for (r, c) in self.counts.iter().enumerate() {
            if *c > 0 {
                regions.insert(self.region_name(ctx, r), json!(c));
            }
        }
        json!({
            "terms": self.terms.iter().map(|t| ctx.name(*t)).collect::<Vec<_>>(),
            "regions": regions,
        })
    }
}

fn check_bounds(terms: usize, c_max: u8) -> Result<(), OracleError> {
    if terms > MAX_TERMS || c_max > MAX_COUNT {
        return Err(OracleError::BoundsExceeded { terms, c_max });
    }
    Ok(())
}

/// All `(c_max + 1)^(2^n)` models in lexicographic order of their counts.
pub fn enumerate_models(terms: &[VarId], c_max: u8) -> Result<impl Iterator<Item = RegionModel>, OracleError> {
    check_bounds(terms.len(), c_max)?;
    let regions = 1usize << terms.len();
    let base = c_max as u64 + 1;
    let total = base.pow(regions as u32);
    let terms = terms.to_vec();
    Ok((0..total).map(move |mut index| {
        let mut counts = vec![0u8; regions];
        for slot in counts.iter_mut().rev() {
            *slot = (index % base) as u8;
            index /= base;
        }
        RegionModel { terms: terms.clone(), counts }
    }))
}

/// Regions (as a bit set) whose value of `p` satisfies `pred`.
fn regions_where(p: &Poly, terms: &[VarId], pred: impl Fn(i64) -> bool) -> Result<u32, OracleError> {
    let ctx = p.context();
    if let Some(v) = p.variables().into_iter().find(|v| !terms.contains(v)) {
        return Err(OracleError::UnknownTerm(ctx.name(v).to_string()));
    }
    let n = terms.len();
    let mut set = 0;
    for region in 0..1usize << n {
        let mut a = Assignment::new();
        for (i, t) in terms.iter().enumerate() {
            a.set(*t, region >> (n - 1 - i) & 1 == 1);
        }
        let value = p.eval(&a).expect("assignment covers every term");
        let value = i64::try_from(&value).unwrap_or(i64::MAX);
        if pred(value) {
            set |= 1 << region;
        }
    }
    Ok(set)
}

/// A statement reduced to region bits: `Empty(r)` holds when no region of
/// `r` is occupied, `Occupied(r)` when some region of `r` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Compiled {
    Empty(u32),
    Occupied(u32),
}

impl Compiled {
    fn of(eq: &Equation, terms: &[VarId]) -> Result<Compiled, OracleError> {
        let diff = eq.difference();
        let regions = regions_where(&diff, terms, |v| v != 0)?;
        Ok(match eq.relation {
            Relation::Equal => Compiled::Empty(regions),
            Relation::NotEqual => Compiled::Occupied(regions),
        })
    }

    fn holds(self, occupancy: u32) -> bool {
        match self {
            Compiled::Empty(r) => occupancy & r == 0,
            Compiled::Occupied(r) => occupancy & r != 0,
        }
    }
}

pub fn holds(m: &RegionModel, stmt: &Equation) -> Result<bool, OracleError> {
    Ok(Compiled::of(stmt, &m.terms)?.holds(m.occupancy()))
}

/// A product of term literals set `= 0` or `!= 0`, such as `x(1-y) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralStatement {
    /// `(term, positive)`, sorted and without repeats.
    pub literals: Vec<(VarId, bool)>,
    pub nonzero: bool,
}

impl LiteralStatement {
    pub fn new(literals: impl IntoIterator<Item = (VarId, bool)>, nonzero: bool) -> Self {
        let mut literals: Vec<_> = literals.into_iter().collect();
        literals.sort();
        literals.dedup();
        LiteralStatement { literals, nonzero }
    }

    pub fn zero(literals: impl IntoIterator<Item = (VarId, bool)>) -> Self {
        Self::new(literals, false)
    }

    pub fn nonzero(literals: impl IntoIterator<Item = (VarId, bool)>) -> Self {
        Self::new(literals, true)
    }

    pub fn to_equation(&self, ctx: &Arc<Context>) -> Equation {
        let p = Poly::literal_product(ctx, self.literals.iter().copied());
        if self.nonzero {
            Equation::not_zero(p)
        } else {
            Equation::is_zero(p)
        }
    }

    pub fn negation(&self) -> Self {
        LiteralStatement { nonzero: !self.nonzero, ..self.clone() }
    }

    pub fn display(&self, ctx: &Context) -> String {
        let mut product: String = self
            .literals
            .iter()
            .map(|(v, positive)| if *positive { ctx.name(*v).to_string() } else { format!("(1-{})", ctx.name(*v)) })
            .collect();
        if product.is_empty() {
            product.push('1');
        }
        format!("{product} {} 0", if self.nonzero { "!=" } else { "=" })
    }
}

/// Existential import assumptions placed on models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Convention {
    /// Every term and every complement is nonempty.
    pub nonempty_terms: bool,
    /// The middle term is nonempty.
    pub nonempty_middle: bool,
    /// Each selector product `v s` in a premise denotes a nonempty class.
    pub nonempty_selection: bool,
}

impl Convention {
    pub const NONE: Convention =
        Convention { nonempty_terms: false, nonempty_middle: false, nonempty_selection: false };
    pub const TERMS: Convention = Convention { nonempty_terms: true, ..Convention::NONE };
    pub const MIDDLE: Convention = Convention { nonempty_middle: true, ..Convention::NONE };
    pub const SELECTION: Convention = Convention { nonempty_selection: true, ..Convention::NONE };

    pub fn all() -> impl Iterator<Item = Convention> {
        (0..8u8).map(|b| Convention {
            nonempty_terms: b & 1 != 0,
            nonempty_middle: b & 2 != 0,
            nonempty_selection: b & 4 != 0,
        })
    }

    /// Every assumption of `self` is also made by `other`.
    pub fn weaker_or_equal(self, other: Convention) -> bool {
        (!self.nonempty_terms || other.nonempty_terms)
            && (!self.nonempty_middle || other.nonempty_middle)
            && (!self.nonempty_selection || other.nonempty_selection)
    }

    /// Whether a model meets the region-level assumptions. Selection is
    /// handled when premises are compiled.
    pub fn admits(self, m: &RegionModel, middle: Option<VarId>) -> bool {
        let middle = middle.and_then(|y| m.terms.iter().position(|t| *t == y));
        self.admits_occupancy(m.occupancy(), m.terms.len(), middle)
    }

    fn admits_occupancy(self, occ: u32, n: usize, middle: Option<usize>) -> bool {
        let has =
            |i: usize, value: bool| (0..1u32 << n).any(|r| occ & (1 << r) != 0 && (r >> (n - 1 - i) & 1 == 1) == value);
        if self.nonempty_terms && !(0..n).all(|i| has(i, true) && has(i, false)) {
            return false;
        }
        if self.nonempty_middle && middle.is_some_and(|i| !has(i, true)) {
            return false;
        }
        true
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        if self.nonempty_terms {
            names.push("nonempty-terms");
        }
        if self.nonempty_middle {
            names.push("nonempty-middle");
        }
        if self.nonempty_selection {
            names.push("nonempty-v-selection");
        }
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join("+"))
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = OracleError;
    fn from_str(s: &str) -> Result<Self, OracleError> {
        let mut conv = Convention::NONE;
        for part in s.split(['+', ',']).map(str::trim) {
            match part {
                "none" => {}
                "nonempty-terms" | "terms" => conv.nonempty_terms = true,
                "nonempty-middle" | "middle" => conv.nonempty_middle = true,
                "nonempty-v-selection" | "nonempty-selection" | "selection" => conv.nonempty_selection = true,
                other => return Err(OracleError::UnknownConvention(other.to_string())),
            }
        }
        Ok(conv)
    }
}

/// Literals `(var, positive)` when `p` is a product of literals.
pub fn literal_factors(p: &Poly) -> Option<Vec<(VarId, bool)>> {
    let vars = p.variables();
    if vars.len() > 16 {
        return None;
    }
    let mut on = Vec::new();
    for mask in 0..1u32 << vars.len() {
        let mut a = Assignment::new();
        for (i, v) in vars.iter().enumerate() {
            a.set(*v, mask >> i & 1 == 1);
        }
        let value = p.eval(&a).ok()?;
        if value == 1.into() {
            on.push(mask);
        } else if value != 0.into() {
            return None;
        }
    }
    if on.is_empty() {
        return None;
    }
    // A cube is fixed on exactly the variables it mentions, and a
    // multilinear normal form mentions only variables it depends on.
    let lits: Vec<(VarId, bool)> = vars.iter().enumerate().map(|(i, v)| (*v, on[0] >> i & 1 == 1)).collect();
    let fixed = lits.iter().enumerate().all(|(i, (_, b))| on.iter().all(|m| (m >> i & 1 == 1) == *b));
    (fixed && on.len() == 1).then_some(lits)
}

/// One side of a selector equation: selector variables times one literal.
fn selected_literal(p: &Poly, terms: &[VarId]) -> Result<(Vec<VarId>, (VarId, bool)), OracleError> {
    let bad = || OracleError::NotSelectedLiteral(p.to_string());
    let lits = literal_factors(p).ok_or_else(bad)?;
    let (term_lits, selectors): (Vec<_>, Vec<_>) = lits.into_iter().partition(|(v, _)| terms.contains(v));
    if term_lits.len() != 1 || selectors.iter().any(|(_, positive)| !positive) {
        return Err(bad());
    }
    Ok((selectors.into_iter().map(|(v, _)| v).collect(), term_lits[0]))
}

fn flip((v, b): (VarId, bool)) -> (VarId, bool) {
    (v, !b)
}

/// Translate premises written with selector variables (`x = v*y`,
/// `v*x = v'*y`) into literal statements over `terms`.
///
/// A bare side is the whole class, so `a = v b` gives `a(1-b) = 0` and
/// `a = b` gives inclusion both ways. Under the selection convention any
/// equation with a selected side also gives `a b != 0`.
pub fn compile_premises(
    sys: &EquationSystem,
    terms: &[VarId],
    conv: Convention,
) -> Result<Vec<LiteralStatement>, OracleError> {
    let mut out = Vec::new();
    for eq in sys.equations() {
        if eq.relation == Relation::NotEqual {
            let lits = literal_factors(&eq.difference()).ok_or_else(|| OracleError::NotLiteral(eq.to_string()))?;
            if let Some((v, _)) = lits.iter().find(|(v, _)| !terms.contains(v)) {
                return Err(OracleError::UnknownTerm(sys.context().name(*v).to_string()));
            }
            out.push(LiteralStatement::nonzero(lits));
            continue;
        }
        let (sel_a, a) = selected_literal(&eq.lhs, terms)?;
        let (sel_b, b) = selected_literal(&eq.rhs, terms)?;
        match (sel_a.is_empty(), sel_b.is_empty()) {
            (true, true) => {
                out.push(LiteralStatement::zero([a, flip(b)]));
                out.push(LiteralStatement::zero([b, flip(a)]));
            }
            (true, false) => out.push(LiteralStatement::zero([a, flip(b)])),
            (false, true) => out.push(LiteralStatement::zero([b, flip(a)])),
            (false, false) => {}
        }
        if conv.nonempty_selection && !(sel_a.is_empty() && sel_b.is_empty()) {
            out.push(LiteralStatement::nonzero([a, b]));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Premises and a conclusion over a fixed list of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    pub terms: Vec<VarId>,
    pub middle: Option<VarId>,
    pub premises: Vec<LiteralStatement>,
    pub conclusion: LiteralStatement,
}

impl Argument {
    /// Terms `x, y, z` with `y` as the middle.
    pub fn syllogism(ctx: &Context, premises: Vec<LiteralStatement>, conclusion: LiteralStatement) -> Argument {
        Argument {
            terms: ["x", "y", "z"].map(|n| ctx.expect_var(n)).to_vec(),
            middle: Some(ctx.expect_var("y")),
            premises,
            conclusion,
        }
    }

    pub fn display(&self, ctx: &Context) -> String {
        let premises: Vec<String> = self.premises.iter().map(|p| p.display(ctx)).collect();
        format!("{} therefore {}", premises.join("; "), self.conclusion.display(ctx))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    /// Smallest by total count, then by counts in region order.
    pub countermodel: Option<RegionModel>,
    pub models_checked: u64,
}

fn compile_all(stmts: &[LiteralStatement], ctx: &Arc<Context>, terms: &[VarId]) -> Result<Vec<Compiled>, OracleError> {
    stmts.iter().map(|s| Compiled::of(&s.to_equation(ctx), terms)).collect()
}

fn min_model(best: &mut Option<RegionModel>, counts: &[u8], terms: &[VarId]) {
    let total = |c: &[u8]| c.iter().map(|n| *n as u32).sum::<u32>();
    let better = match best {
        None => true,
        Some(b) => (total(counts), counts) < (b.total(), b.counts.as_slice()),
    };
    if better {
        *best = Some(RegionModel { terms: terms.to_vec(), counts: counts.to_vec() });
    }
}

/// Visit every model in the order of [`enumerate_models`] with its
/// occupancy bits, reusing one buffer. Returns the number visited.
fn scan_models(terms: usize, c_max: u8, mut visit: impl FnMut(&[u8], u32)) -> u64 {
    let regions = 1usize << terms;
    let mut counts = vec![0u8; regions];
    let mut occ = 0u32;
    let mut visited = 0;
    loop {
        visit(&counts, occ);
        visited += 1;
        let mut i = regions;
        loop {
            if i == 0 {
                return visited;
            }
            i -= 1;
            if counts[i] < c_max {
                counts[i] += 1;
                occ |= 1 << i;
                break;
            }
            counts[i] = 0;
            occ &= !(1 << i);
        }
    }
}

pub fn valid(arg: &Argument, conv: Convention, ctx: &Arc<Context>, c_max: u8) -> Result<Verdict, OracleError> {
    check_bounds(arg.terms.len(), c_max)?;
    let premises = compile_all(&arg.premises, ctx, &arg.terms)?;
    let conclusion = Compiled::of(&arg.conclusion.to_equation(ctx), &arg.terms)?;
    let middle = arg.middle.and_then(|y| arg.terms.iter().position(|t| *t == y));
    let n = arg.terms.len();
    let mut counter = None;
    let checked = scan_models(n, c_max, |counts, occ| {
        if conv.admits_occupancy(occ, n, middle) && premises.iter().all(|p| p.holds(occ)) && !conclusion.holds(occ) {
            min_model(&mut counter, counts, &arg.terms);
        }
    });
    Ok(Verdict { valid: counter.is_none(), countermodel: counter, models_checked: checked })
}

/// Every `a b = 0` and `a b != 0`, with `a` a literal of `left` and `b` a
/// literal of `right`, that the premises entail.
pub fn entailed_conclusions(
    premises: &[LiteralStatement],
    ctx: &Arc<Context>,
    left: VarId,
    right: VarId,
    conv: Convention,
    c_max: u8,
) -> Result<Vec<LiteralStatement>, OracleError> {
    let mut out = Vec::new();
    for nonzero in [false, true] {
        for a in [true, false] {
            for b in [true, false] {
                let conclusion = LiteralStatement::new([(left, a), (right, b)], nonzero);
                let arg = Argument::syllogism(ctx, premises.to_vec(), conclusion.clone());
                if valid(&arg, conv, ctx, c_max)?.valid {
                    out.push(conclusion);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityVerdict {
    pub entailed: bool,
    pub countermodel: Option<RegionModel>,
    pub models_checked: u64,
}

/// Whether every model of the premises (counts up to `c_max`) gives `class`
/// at least `k` elements.
pub fn check_cardinality_entailment(
    premises: &[Equation],
    terms: &[VarId],
    class: &Poly,
    k: u32,
    c_max: u8,
) -> Result<CardinalityVerdict, OracleError> {
    if k > c_max as u32 {
        return Err(OracleError::CardinalityBound { k, c_max });
    }
    check_bounds(terms.len(), c_max)?;
    let compiled = premises.iter().map(|p| Compiled::of(p, terms)).collect::<Result<Vec<_>, _>>()?;
    let regions = regions_where(class, terms, |v| v != 0)?;
    let mut counter = None;
    let checked = scan_models(terms.len(), c_max, |counts, occ| {
        let size: u32 = (0..counts.len()).filter(|r| regions & (1 << r) != 0).map(|r| counts[r] as u32).sum();
        if size < k && compiled.iter().all(|p| p.holds(occ)) {
            min_model(&mut counter, counts, terms);
        }
    });
    Ok(CardinalityVerdict { entailed: counter.is_none(), countermodel: counter, models_checked: checked })
}

/// Symbols of the condensed forms: `α` ranges over literals of `x`, `β`
/// over `z`, `γ` over `y`; `bar` complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pattern {
    pub factors: [(Sym, bool); 2],
    pub nonzero: bool,
}

impl Pattern {
    const fn new(a: (Sym, bool), b: (Sym, bool), nonzero: bool) -> Pattern {
        Pattern { factors: [a, b], nonzero }
    }

    pub fn display(&self) -> String {
        let product: String = self
            .factors
            .iter()
            .map(|(s, bar)| {
                let c = match s {
                    Sym::Alpha => "α",
                    Sym::Beta => "β",
                    Sym::Gamma => "γ",
                };
                if *bar {
                    format!("{c}\u{305}")
                } else {
                    c.to_string()
                }
            })
            .collect();
        format!("{product} {} 0", if self.nonzero { "!=" } else { "=" })
    }

    fn instantiate(&self, ctx: &Context, signs: [bool; 3]) -> LiteralStatement {
        LiteralStatement::new(
            self.factors.iter().map(|(s, bar)| {
                let (name, positive) = match s {
                    Sym::Alpha => ("x", signs[0]),
                    Sym::Beta => ("z", signs[1]),
                    Sym::Gamma => ("y", signs[2]),
                };
                (ctx.expect_var(name), positive != *bar)
            }),
            self.nonzero,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensedForm {
    pub id: u8,
    pub premises: [Pattern; 2],
    pub conclusion: Option<Pattern>,
}

const A: Sym = Sym::Alpha;
const B: Sym = Sym::Beta;
const G: Sym = Sym::Gamma;

/// The four condensed valid forms.
pub fn condensed_form(id: u8) -> Result<CondensedForm, OracleError> {
    let ag0 = Pattern::new((A, false), (G, false), false);
    let (premise, conclusion) = match id {
        1 => (Pattern::new((B, false), (G, false), false), Pattern::new((A, true), (B, true), true)),
        2 => (Pattern::new((B, false), (G, true), false), Pattern::new((A, false), (B, false), false)),
        3 => (Pattern::new((B, false), (G, false), true), Pattern::new((A, true), (B, false), true)),
        4 => (Pattern::new((B, false), (G, true), true), Pattern::new((A, false), (B, false), true)),
        other => return Err(OracleError::UnknownForm(other)),
    };
    Ok(CondensedForm { id, premises: [ag0, premise], conclusion: Some(conclusion) })
}

/// The two particular premise pairs with no conclusion.
pub fn no_conclusion_pairs() -> [CondensedForm; 2] {
    let ag = Pattern::new((A, false), (G, false), true);
    [
        CondensedForm { id: 5, premises: [ag, Pattern::new((B, false), (G, false), true)], conclusion: None },
        CondensedForm { id: 6, premises: [ag, Pattern::new((B, false), (G, true), true)], conclusion: None },
    ]
}

impl CondensedForm {
    pub fn display(&self) -> String {
        let premises = format!("{}; {}", self.premises[0].display(), self.premises[1].display());
        match &self.conclusion {
            Some(c) => format!("{premises} therefore {}", c.display()),
            None => premises,
        }
    }

    /// The eight instances with `α, β, γ` each a term or its complement.
    pub fn instances(&self, ctx: &Context) -> Vec<([bool; 3], Vec<LiteralStatement>, Option<LiteralStatement>)> {
        (0..8u8)
            .map(|b| {
                let signs = [b & 4 == 0, b & 2 == 0, b & 1 == 0];
                let premises = self.premises.iter().map(|p| p.instantiate(ctx, signs)).collect();
                (signs, premises, self.conclusion.map(|c| c.instantiate(ctx, signs)))
            })
            .collect()
    }
}

/// Outcome of one instance of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceVerdict {
    pub argument: Argument,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormVerdict {
    pub form: CondensedForm,
    pub convention: Convention,
    pub valid: bool,
    pub instances: Vec<InstanceVerdict>,
    pub models_checked: u64,
}

impl FormVerdict {
    pub fn first_failure(&self) -> Option<&InstanceVerdict> {
        self.instances.iter().find(|i| !i.verdict.valid)
    }
}

pub fn check_form(
    form: &CondensedForm,
    conv: Convention,
    ctx: &Arc<Context>,
    c_max: u8,
) -> Result<FormVerdict, OracleError> {
    if form.conclusion.is_none() {
        return Err(OracleError::UnknownForm(form.id));
    }
    let mut instances = Vec::new();
    for (_, premises, conclusion) in form.instances(ctx) {
        let arg = Argument::syllogism(ctx, premises, conclusion.expect("form has a conclusion"));
        let verdict = valid(&arg, conv, ctx, c_max)?;
        instances.push(InstanceVerdict { argument: arg, verdict });
    }
    let models_checked = instances.iter().map(|i| i.verdict.models_checked).sum();
    let valid = instances.iter().all(|i| i.verdict.valid);
    Ok(FormVerdict { form: form.clone(), convention: conv, valid, instances, models_checked })
}

/// An instance's premises and the extreme statements they entail.
pub type EntailedByInstance = (Vec<LiteralStatement>, Vec<LiteralStatement>);

/// Entailed extreme statements for each instance of a premise pair.
pub fn check_no_conclusion(
    form: &CondensedForm,
    conv: Convention,
    ctx: &Arc<Context>,
    c_max: u8,
) -> Result<Vec<EntailedByInstance>, OracleError> {
    let (x, z) = (ctx.expect_var("x"), ctx.expect_var("z"));
    form.instances(ctx)
        .into_iter()
        .map(|(_, premises, _)| {
            let entailed = entailed_conclusions(&premises, ctx, x, z, conv, c_max)?;
            Ok((premises, entailed))
        })
        .collect()
}

pub fn verdict_json(arg: &Argument, conv: Convention, verdict: &Verdict, ctx: &Context) -> Value {
    let mut obj = Map::new();
    obj.insert("argument".into(), json!(arg.display(ctx)));
    obj.insert("convention".into(), json!(conv.to_string()));
    obj.insert("valid".into(), json!(verdict.valid));
    if let Some(m) = &verdict.countermodel {
        obj.insert("countermodel".into(), m.to_json(ctx));
    }
    obj.insert("models_checked".into(), json!(verdict.models_checked));
    Value::Object(obj)
}

pub fn form_json(v: &FormVerdict, ctx: &Context) -> Value {
    let mut obj = Map::new();
    obj.insert("argument".into(), json!(format!("form {}: {}", v.form.id, v.form.display())));
    obj.insert("convention".into(), json!(v.convention.to_string()));
    obj.insert("valid".into(), json!(v.valid));
    if let Some(f) = v.first_failure() {
        obj.insert("instance".into(), json!(f.argument.display(ctx)));
        if let Some(m) = &f.verdict.countermodel {
            obj.insert("countermodel".into(), m.to_json(ctx));
        }
    }
    obj.insert("models_checked".into(), json!(v.models_checked));
    Value::Object(obj)
}
