//! Categorical propositions, the search over substitutions of 1 for the
//! selector classes, and the rules of inference for like and unlike middle
//! terms.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::expand::{ExpandError, SolutionExpansion};
use crate::minimize::{render_solution, BooleExpression};
use crate::oracle::{self, Argument, Convention, LiteralStatement, OracleError, Verdict};
use crate::poly::{Context, Equation, EquationSystem, Poly, PolyError, VarId};

/// The selector classes, in substitution order.
pub const SELECTORS: [&str; 4] = ["v", "v'", "w", "w'"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyllogismError {
    #[error("cannot parse `{text}`: {message}")]
    Parse { text: String, message: String },
    #[error("`{0}` does not contain the middle term Y exactly once")]
    NoMiddle(String),
    #[error("one premise must relate X to Y and the other Z to Y")]
    Extremes,
    #[error(transparent)]
    Expand(#[from] ExpandError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A set of selectors set to 1, as a bit set over [`SELECTORS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Substitution(u8);

impl Substitution {
    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Option<Substitution> {
        let mut bits = 0;
        for n in names {
            bits |= 1 << SELECTORS.iter().position(|s| *s == n)?;
        }
        Some(Substitution(bits))
    }

    /// Never both of `v, v'` nor both of `w, w'`.
    pub fn is_permissible(self) -> bool {
        self.0 & 0b0011 != 0b0011 && self.0 & 0b1100 != 0b1100
    }

    pub fn names(self) -> Vec<&'static str> {
        (0..4).filter(|i| self.0 & (1 << i) != 0).map(|i| SELECTORS[i]).collect()
    }

    pub fn contains(self, name: &str) -> bool {
        self.names().contains(&name)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn vars(self, ctx: &Context) -> Option<Vec<VarId>> {
        self.names().into_iter().map(|n| ctx.var(n)).collect()
    }

    /// Apply to an equation system.
    pub fn apply(self, sys: &EquationSystem) -> Result<EquationSystem, SyllogismError> {
        let ctx = sys.context();
        let bindings: Vec<(VarId, Poly)> =
            self.names().into_iter().filter_map(|n| ctx.var(n)).map(|v| (v, Poly::one(ctx))).collect();
        Ok(sys.substitute(&bindings)?)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.names().iter().map(|n| format!("{n}=1")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The nine permissible substitutions, by size and then by selector order.
pub fn permissible_substitutions() -> Vec<Substitution> {
    let mut subs: Vec<Substitution> = (0..16u8).map(Substitution).filter(|s| s.is_permissible()).collect();
    subs.sort_by_key(|s| {
        let mut idx: Vec<usize> = (0..4).filter(|i| s.0 & (1 << i) != 0).collect();
        idx.insert(0, s.len());
        idx
    });
    subs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedConclusion {
    pub substitution: Substitution,
    /// Value of the side variable on the part that vanished.
    pub vanished: bool,
    pub residual: BooleExpression,
    pub solution: SolutionExpansion,
    pub reading: Option<CategoricalProposition>,
}

impl ReducedConclusion {
    pub fn vanished_name(&self) -> String {
        let name = self.residual.context().name(self.residual.side_var);
        if self.vanished {
            name.to_string()
        } else {
            format!("1-{name}")
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ones": self.substitution.names(),
            "vanished": self.vanished_name(),
            "residual": self.residual.to_json(),
            "reading": self.reading.map(|r| r.to_string()),
        })
    }
}

impl fmt::Display for ReducedConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: coefficient of {} vanishes, {}", self.substitution, self.vanished_name(), self.residual)?;
        if let Some(r) = &self.reading {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

/// Try each permissible substitution and keep those that make the whole
/// coefficient of `z` or of `1-z` vanish.
///
/// Only selectors among the solution's variables take part. A selector that
/// multiplies the target is never substituted, since setting it to 1 changes
/// what is being solved for.
pub fn vanish_search(s: &SolutionExpansion) -> Result<Vec<ReducedConclusion>, SyllogismError> {
    let ctx = s.context();
    let selector = s.target.selector.map(|v| ctx.name(v).to_string());
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for sub in permissible_substitutions() {
        if selector.as_deref().is_some_and(|sel| sub.contains(sel)) {
            continue;
        }
        let Some(ones) = sub.vars(ctx) else { continue };
        if ones.iter().any(|v| !s.vars[1..].contains(v)) {
            continue;
        }
        if seen.contains(&sub) {
            continue;
        }
        seen.push(sub);
        let restricted = s.restrict(&ones)?;
        let residual = render_solution(&restricted);
        for side in [true, false] {
            if residual.side(side).is_empty() {
                out.push(ReducedConclusion {
                    substitution: sub,
                    vanished: side,
                    reading: conclusion_to_categorical(&residual),
                    residual: residual.clone(),
                    solution: restricted.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    X,
    Y,
    Z,
}

impl Term {
    pub fn var_name(self) -> &'static str {
        match self {
            Term::X => "x",
            Term::Y => "y",
            Term::Z => "z",
        }
    }

    fn from_var_name(name: &str) -> Option<Term> {
        match name {
            "x" => Some(Term::X),
            "y" => Some(Term::Y),
            "z" => Some(Term::Z),
            _ => None,
        }
    }
}

/// A term or its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TermLiteral {
    pub term: Term,
    pub negated: bool,
}

impl TermLiteral {
    pub fn new(term: Term, negated: bool) -> Self {
        TermLiteral { term, negated }
    }

    pub fn complement(self) -> Self {
        TermLiteral { negated: !self.negated, ..self }
    }

    pub fn to_poly(self, ctx: &Arc<Context>) -> Poly {
        let v = ctx.expect_var(self.term.var_name());
        if self.negated {
            Poly::not_var(ctx, v)
        } else {
            Poly::var(ctx, v)
        }
    }

    fn literal(self, ctx: &Context) -> (VarId, bool) {
        (ctx.expect_var(self.term.var_name()), !self.negated)
    }
}

impl fmt::Display for TermLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.term {
            Term::X => "X",
            Term::Y => "Y",
            Term::Z => "Z",
        };
        if self.negated {
            write!(f, "not-{name}")
        } else {
            f.write_str(name)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Universal,
    Particular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quality {
    Affirmative,
    Negative,
}

/// `All|Some S is|is-not P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CategoricalProposition {
    pub quantity: Quantity,
    pub quality: Quality,
    pub subject: TermLiteral,
    pub predicate: TermLiteral,
}

impl CategoricalProposition {
    /// Build from the class the subject is said to lie in (or meet); a
    /// complemented class becomes a negative proposition.
    pub fn relating(quantity: Quantity, subject: TermLiteral, class: TermLiteral) -> Self {
        let quality = if class.negated { Quality::Negative } else { Quality::Affirmative };
        CategoricalProposition { quantity, quality, subject, predicate: TermLiteral { negated: false, ..class } }
    }

    pub fn parse(text: &str) -> Result<Self, SyllogismError> {
        let err = |message: &str| SyllogismError::Parse { text: text.to_string(), message: message.to_string() };
        let lower = text.trim().to_lowercase();
        let words: Vec<&str> = lower.split_whitespace().collect();
        let (quantifier, rest) = words.split_first().ok_or_else(|| err("empty proposition"))?;
        let quantity = match *quantifier {
            "all" => Quantity::Universal,
            "some" => Quantity::Particular,
            _ => return Err(err("expected `all` or `some`")),
        };
        let (quality, subject, predicate) = match rest {
            [s, "is", p] => (Quality::Affirmative, s, p),
            [s, "is-not", p] | [s, "is", "not", p] => (Quality::Negative, s, p),
            _ => return Err(err("expected `<term> is <term>` or `<term> is-not <term>`")),
        };
        let term = |w: &str| -> Result<TermLiteral, SyllogismError> {
            let (negated, name) = match w.strip_prefix("not-") {
                Some(n) => (true, n),
                None => (false, w),
            };
            let term = match name {
                "x" => Term::X,
                "y" => Term::Y,
                "z" => Term::Z,
                _ => return Err(err("terms are X, Y and Z, optionally prefixed with not-")),
            };
            Ok(TermLiteral { term, negated })
        };
        Ok(CategoricalProposition { quantity, quality, subject: term(subject)?, predicate: term(predicate)? })
    }

    /// The predicate, complemented for a negative proposition.
    pub fn effective_predicate(&self) -> TermLiteral {
        match self.quality {
            Quality::Affirmative => self.predicate,
            Quality::Negative => self.predicate.complement(),
        }
    }

    /// `s(1-p) = 0` for a universal, `s p != 0` for a particular.
    pub fn literal_form(&self, ctx: &Context) -> LiteralStatement {
        let s = self.subject.literal(ctx);
        let p = self.effective_predicate().literal(ctx);
        match self.quantity {
            Quantity::Universal => LiteralStatement::zero([s, (p.0, !p.1)]),
            Quantity::Particular => LiteralStatement::nonzero([s, p]),
        }
    }

    /// Terms with their distribution: the subject of a universal is
    /// universal, every other term particular.
    fn sides(&self) -> [Side; 2] {
        [(self.subject, self.quantity == Quantity::Universal), (self.effective_predicate(), false)]
    }
}

impl fmt::Display for CategoricalProposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.quantity {
            Quantity::Universal => "All",
            Quantity::Particular => "Some",
        };
        let copula = match self.quality {
            Quality::Affirmative => "is",
            Quality::Negative => "is-not",
        };
        write!(f, "{q} {} {copula} {}", self.subject, self.predicate)
    }
}

impl std::str::FromStr for CategoricalProposition {
    type Err = SyllogismError;
    fn from_str(s: &str) -> Result<Self, SyllogismError> {
        CategoricalProposition::parse(s)
    }
}

/// The middle side and the extreme side of a premise.
/// A term literal and whether it is distributed (universal).
type Side = (TermLiteral, bool);

fn split_premise(p: &CategoricalProposition) -> Result<(Side, Side), SyllogismError> {
    let [a, b] = p.sides();
    match (a.0.term == Term::Y, b.0.term == Term::Y) {
        (true, false) => Ok((a, b)),
        (false, true) => Ok((b, a)),
        _ => Err(SyllogismError::NoMiddle(p.to_string())),
    }
}

/// Put the premise about X first.
fn order_premises(
    p1: CategoricalProposition,
    p2: CategoricalProposition,
) -> Result<[CategoricalProposition; 2], SyllogismError> {
    let e1 = split_premise(&p1)?.1 .0.term;
    let e2 = split_premise(&p2)?.1 .0.term;
    match (e1, e2) {
        (Term::X, Term::Z) => Ok([p1, p2]),
        (Term::Z, Term::X) => Ok([p2, p1]),
        _ => Err(SyllogismError::Extremes),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    /// The premises, the one about X first.
    pub premises: [CategoricalProposition; 2],
    /// `s = v p` for a universal, `v s = v' p` for a particular; the second
    /// premise uses `w, w'`.
    pub system: EquationSystem,
    pub literal: [LiteralStatement; 2],
    /// Both premises particular: the rules draw nothing, the oracle decides.
    pub both_particular: bool,
}

pub fn to_equations(
    p1: &CategoricalProposition,
    p2: &CategoricalProposition,
    ctx: &Arc<Context>,
) -> Result<Translation, SyllogismError> {
    let premises = order_premises(*p1, *p2)?;
    let mut equations = Vec::new();
    for (p, (sel, sel2)) in premises.iter().zip([("v", "v'"), ("w", "w'")]) {
        let s = p.subject.to_poly(ctx);
        let q = p.effective_predicate().to_poly(ctx);
        let a = Poly::var(ctx, ctx.expect_var(sel));
        let eq = match p.quantity {
            Quantity::Universal => Equation::equal(s, &a * &q)?,
            Quantity::Particular => Equation::equal(&a * &s, Poly::var(ctx, ctx.expect_var(sel2)) * q)?,
        };
        equations.push(eq);
    }
    Ok(Translation {
        premises,
        system: EquationSystem::new(ctx, equations)?,
        literal: [premises[0].literal_form(ctx), premises[1].literal_form(ctx)],
        both_particular: premises.iter().all(|p| p.quantity == Quantity::Particular),
    })
}

/// Categorical reading of a solution with one vanished side: `t = (...) s`
/// says `t` lies in `s`; a selected `v t = (...) s` says some `t` is `s`.
pub fn conclusion_to_categorical(e: &BooleExpression) -> Option<CategoricalProposition> {
    let ctx = e.context();
    let surviving = match (e.side(true).is_empty(), e.side(false).is_empty()) {
        (true, false) => false,
        (false, true) => true,
        _ => return None,
    };
    let target = TermLiteral::new(Term::from_var_name(ctx.name(e.target.unknown))?, e.target.complement);
    let side = TermLiteral::new(Term::from_var_name(ctx.name(e.side_var))?, !surviving);
    let quantity = if e.target.selector.is_some() { Quantity::Particular } else { Quantity::Universal };
    Some(CategoricalProposition::relating(quantity, target, side))
}

/// Check a reading against the premises by enumerating models over
/// `x, y, z`.
pub fn certify(
    premises: &EquationSystem,
    reading: &CategoricalProposition,
    conv: Convention,
) -> Result<Verdict, SyllogismError> {
    let ctx = premises.context();
    let arg = Argument::syllogism(ctx, Vec::new(), reading.literal_form(ctx));
    let compiled = oracle::compile_premises(premises, &arg.terms, conv)?;
    let arg = Argument { premises: compiled, ..arg };
    Ok(oracle::valid(&arg, conv, ctx, 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Like middle terms: one middle universal, equate the extremes.
    LikeMiddles,
    /// Unlike middle terms, a universal extreme: change its quantity and
    /// quality and equate it to the other extreme.
    UniversalExtreme,
    /// Unlike middle terms, both universal: change either extreme and equate
    /// it to the other unchanged.
    UniversalMiddles,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::LikeMiddles => "like middle terms, one universal: equate the extremes",
            Rule::UniversalExtreme => "unlike middle terms, a universal extreme",
            Rule::UniversalMiddles => "unlike middle terms, both universal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: Option<Rule>,
    pub conclusion: Option<CategoricalProposition>,
}

impl fmt::Display for RuleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rule, self.conclusion) {
            (Some(r), Some(c)) => write!(f, "{c} ({r})"),
            _ => f.write_str("no rule applies"),
        }
    }
}

/// Boole's conditions and rules of inference, with quantity and quality
/// read off the terms.
pub fn rule_verdict(p1: &CategoricalProposition, p2: &CategoricalProposition) -> Result<RuleVerdict, SyllogismError> {
    let [first, second] = order_premises(*p1, *p2)?;
    let (m1, e1) = split_premise(&first)?;
    let (m2, e2) = split_premise(&second)?;
    let conclude = |rule, subject: (TermLiteral, bool), class: TermLiteral| RuleVerdict {
        rule: Some(rule),
        conclusion: Some(CategoricalProposition::relating(
            if subject.1 { Quantity::Universal } else { Quantity::Particular },
            subject.0,
            class,
        )),
    };
    let none = RuleVerdict { rule: None, conclusion: None };
    if m1.0.negated == m2.0.negated {
        if !(m1.1 || m2.1) {
            return Ok(none);
        }
        let (subject, other) = if e2.1 && !e1.1 { (e2, e1) } else { (e1, e2) };
        return Ok(conclude(Rule::LikeMiddles, subject, other.0));
    }
    if e1.1 || e2.1 {
        let (universal, other) = if e1.1 { (e1, e2) } else { (e2, e1) };
        return Ok(conclude(Rule::UniversalExtreme, other, universal.0.complement()));
    }
    if m1.1 && m2.1 {
        return Ok(conclude(Rule::UniversalMiddles, (e1.0.complement(), true), e2.0));
    }
    Ok(none)
}

/// Every premise over X, Y and Z in the controlled language: 32 of them.
pub fn all_premises(extreme: Term) -> Vec<CategoricalProposition> {
    let mut out = Vec::new();
    for quantity in [Quantity::Universal, Quantity::Particular] {
        for quality in [Quality::Affirmative, Quality::Negative] {
            for middle_first in [false, true] {
                for sn in [false, true] {
                    for pn in [false, true] {
                        let (s, p) = if middle_first { (Term::Y, extreme) } else { (extreme, Term::Y) };
                        out.push(CategoricalProposition {
                            quantity,
                            quality,
                            subject: TermLiteral::new(s, sn),
                            predicate: TermLiteral::new(p, pn),
                        });
                    }
                }
            }
        }
    }
    out
}
