//! Exact two-level minimization of constituent sets and Boole-style printing
//! of tabulated solutions.
//!
//! Covers are minimal among prime-implicant covers. Ties are broken by fewer
//! literals, then by the implicants' literal patterns read in variable order
//! (positive before complemented before absent).

use std::collections::{BTreeSet, HashSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::expand::{CoeffClass, Constituent, SolutionExpansion, Target};
use crate::poly::{Context, Poly, VarId};

/// Minterm sets are bit sets over at most `2^6` constituents.
pub const MAX_VARS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimizeError {
    #[error("constituent over {found} variables, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("`{0}` is not a class expression: it takes the value {1}")]
    NotAClass(String, BigInt),
}

/// A product of literals. Bit `arity - 1 - i` stands for the `i`-th variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Implicant {
    care: u32,
    value: u32,
    arity: u8,
}

impl Implicant {
    pub fn new(literals: &[Option<bool>]) -> Implicant {
        let arity = literals.len();
        let mut care = 0;
        let mut value = 0;
        for (i, lit) in literals.iter().enumerate() {
            let bit = 1 << (arity - 1 - i);
            if let Some(b) = lit {
                care |= bit;
                if *b {
                    value |= bit;
                }
            }
        }
        Implicant { care, value, arity: arity as u8 }
    }

    pub fn literal(&self, i: usize) -> Option<bool> {
        let bit = 1 << (self.arity as usize - 1 - i);
        (self.care & bit != 0).then_some(self.value & bit != 0)
    }

    pub fn literals(&self) -> Vec<Option<bool>> {
        (0..self.arity as usize).map(|i| self.literal(i)).collect()
    }

    pub fn literal_count(&self) -> u32 {
        self.care.count_ones()
    }

    pub fn covers(&self, bits: u32) -> bool {
        bits & self.care == self.value
    }

    /// Bit set of covered minterms.
    pub fn minterms(&self) -> u64 {
        (0..1u32 << self.arity).filter(|m| self.covers(*m)).fold(0, |acc, m| acc | 1 << m)
    }

    fn sort_key(&self) -> Vec<u8> {
        self.literals()
            .into_iter()
            .map(|l| match l {
                Some(true) => 0,
                Some(false) => 1,
                None => 2,
            })
            .collect()
    }

    pub fn display(&self, ctx: &Context, vars: &[VarId]) -> String {
        let mut out = String::new();
        for (i, v) in vars.iter().enumerate() {
            match self.literal(i) {
                Some(true) => out.push_str(ctx.name(*v)),
                Some(false) => {
                    let _ = write!(out, "(1-{})", ctx.name(*v));
                }
                None => {}
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn to_poly(&self, ctx: &Arc<Context>, vars: &[VarId]) -> Poly {
        Poly::literal_product(ctx, vars.iter().enumerate().filter_map(|(i, v)| self.literal(i).map(|b| (*v, b))))
    }

    fn to_json(self, ctx: &Context, vars: &[VarId]) -> Value {
        let mut obj = Map::new();
        for (i, v) in vars.iter().enumerate() {
            if let Some(b) = self.literal(i) {
                obj.insert(ctx.name(*v).to_string(), json!(b as u8));
            }
        }
        Value::Object(obj)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub vars: Vec<VarId>,
    pub implicants: Vec<Implicant>,
}

impl Cover {
    pub fn empty(vars: &[VarId]) -> Cover {
        Cover { vars: vars.to_vec(), implicants: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.implicants.is_empty()
    }

    pub fn minterms(&self) -> u64 {
        self.implicants.iter().fold(0, |acc, i| acc | i.minterms())
    }

    pub fn literal_count(&self) -> u32 {
        self.implicants.iter().map(Implicant::literal_count).sum()
    }

    pub fn to_poly(&self, ctx: &Arc<Context>) -> Poly {
        // Implicants may overlap, so build the union pointwise.
        let mut acc = Poly::zero(ctx);
        for c in Constituent::all(self.vars.len()) {
            if self.minterms() & (1 << c.bits()) != 0 {
                acc = acc + c.to_poly(ctx, &self.vars);
            }
        }
        acc
    }

    /// Sum of products; `0` when empty.
    pub fn display(&self, ctx: &Context) -> String {
        if self.implicants.is_empty() {
            return "0".into();
        }
        self.terms(ctx, false).join(" + ")
    }

    /// Like [`Cover::display`], abbreviating exclusive-or pairs with `△`.
    pub fn display_with_delta(&self, ctx: &Context) -> String {
        if self.implicants.is_empty() {
            return "0".into();
        }
        self.terms(ctx, true).join(" + ")
    }

    /// Printed terms, with `a△b` for pairs `a(1-b) + (1-a)b` sharing the rest.
    fn terms(&self, ctx: &Context, delta: bool) -> Vec<String> {
        let mut used = vec![false; self.implicants.len()];
        let mut out = Vec::new();
        for i in 0..self.implicants.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let a = self.implicants[i];
            let partner = if delta {
                (i + 1..self.implicants.len()).find(|&j| !used[j] && xor_pair(a, self.implicants[j]).is_some())
            } else {
                None
            };
            match partner {
                Some(j) => {
                    used[j] = true;
                    let (p, q) = xor_pair(a, self.implicants[j]).expect("checked");
                    let common = Implicant { care: a.care & !(bit_of(&a, p) | bit_of(&a, q)), ..a };
                    let prefix = if common.care == 0 { String::new() } else { common.display(ctx, &self.vars) };
                    out.push(format!("{prefix}({}△{})", ctx.name(self.vars[p]), ctx.name(self.vars[q])));
                }
                None => out.push(a.display(ctx, &self.vars)),
            }
        }
        out
    }

    fn to_json(&self, ctx: &Context) -> Value {
        Value::Array(self.implicants.iter().map(|i| i.to_json(ctx, &self.vars)).collect())
    }
}

fn bit_of(imp: &Implicant, i: usize) -> u32 {
    1 << (imp.arity as usize - 1 - i)
}

/// Positions `(p, q)` when `a` and `b` agree everywhere except two cared
/// variables on which they read `(1, 0)` and `(0, 1)` in some order.
fn xor_pair(a: Implicant, b: Implicant) -> Option<(usize, usize)> {
    if a.care != b.care || a.arity != b.arity {
        return None;
    }
    let diff = a.value ^ b.value;
    if diff.count_ones() != 2 {
        return None;
    }
    let n = a.arity as usize;
    let positions: Vec<usize> = (0..n).filter(|&i| diff & (1 << (n - 1 - i)) != 0).collect();
    let (p, q) = (positions[0], positions[1]);
    (a.literal(p) != a.literal(q)).then_some((p, q))
}

/// Prime implicants of an ON-set with no don't-cares.
fn prime_implicants(on: u64, arity: usize) -> Vec<Implicant> {
    let mut current: BTreeSet<(u32, u32)> =
        (0..1u32 << arity).filter(|m| on & (1 << m) != 0).map(|m| ((1 << arity) - 1, m)).collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut next = BTreeSet::new();
        let mut merged = HashSet::new();
        let items: Vec<_> = current.iter().copied().collect();
        for (i, &(care_a, val_a)) in items.iter().enumerate() {
            for &(care_b, val_b) in &items[i + 1..] {
                let diff = val_a ^ val_b;
                if care_a == care_b && diff.count_ones() == 1 {
                    next.insert((care_a & !diff, val_a & !diff));
                    merged.insert((care_a, val_a));
                    merged.insert((care_b, val_b));
                }
            }
        }
        primes.extend(items.into_iter().filter(|it| !merged.contains(it)).map(|(care, value)| Implicant {
            care,
            value,
            arity: arity as u8,
        }));
        current = next;
    }
    primes
}

type CoverKey = (usize, u32, Vec<Vec<u8>>);

fn cover_key(chosen: &[Implicant]) -> CoverKey {
    let mut keys: Vec<Vec<u8>> = chosen.iter().map(Implicant::sort_key).collect();
    keys.sort();
    (chosen.len(), chosen.iter().map(Implicant::literal_count).sum(), keys)
}

fn search_cover(
    uncovered: u64,
    primes: &[(Implicant, u64)],
    chosen: &mut Vec<Implicant>,
    best: &mut Option<(CoverKey, Vec<Implicant>)>,
) {
    if let Some((key, _)) = best {
        if chosen.len() > key.0 {
            return;
        }
    }
    if uncovered == 0 {
        let key = cover_key(chosen);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            *best = Some((key, chosen.clone()));
        }
        return;
    }
    let target = uncovered.trailing_zeros();
    for (imp, mask) in primes {
        if mask & (1 << target) != 0 && !chosen.contains(imp) {
            chosen.push(*imp);
            search_cover(uncovered & !mask, primes, chosen, best);
            chosen.pop();
        }
    }
}

/// Minimal cover of a minterm bit set over `vars`.
pub fn minimize_set(on: u64, vars: &[VarId]) -> Result<Cover, MinimizeError> {
    let arity = vars.len();
    if arity > MAX_VARS {
        return Err(MinimizeError::TooManyVariables(arity));
    }
    let on = if arity == MAX_VARS { on } else { on & ((1u64 << (1 << arity)) - 1) };
    if on == 0 {
        return Ok(Cover::empty(vars));
    }
    let primes: Vec<(Implicant, u64)> = prime_implicants(on, arity).into_iter().map(|p| (p, p.minterms())).collect();
    let mut best = None;
    search_cover(on, &primes, &mut Vec::new(), &mut best);
    let (_, mut implicants) = best.expect("primes always cover the ON-set");
    implicants.sort_by_key(Implicant::sort_key);
    Ok(Cover { vars: vars.to_vec(), implicants })
}

pub fn minimize_constituents(on: &[Constituent], vars: &[VarId]) -> Result<Cover, MinimizeError> {
    if vars.len() > MAX_VARS {
        return Err(MinimizeError::TooManyVariables(vars.len()));
    }
    let mut set = 0u64;
    for c in on {
        if c.arity() != vars.len() {
            return Err(MinimizeError::WrongArity { expected: vars.len(), found: c.arity() });
        }
        set |= 1 << c.bits();
    }
    minimize_set(set, vars)
}

/// Minterms over `vars` where a 0/1-valued polynomial equals 1.
pub fn minterms_of_poly(p: &Poly, vars: &[VarId]) -> Result<u64, MinimizeError> {
    if vars.len() > MAX_VARS {
        return Err(MinimizeError::TooManyVariables(vars.len()));
    }
    let mut set = 0;
    for c in Constituent::all(vars.len()) {
        let value = p.eval(&c.assignment(vars)).map_err(|_| MinimizeError::VariableMismatch)?;
        if value == BigInt::from(1) {
            set |= 1 << c.bits();
        } else if value != BigInt::from(0) {
            return Err(MinimizeError::NotAClass(p.to_string(), value));
        }
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideExpr {
    pub definite: Cover,
    pub indefinite: Cover,
}

impl SideExpr {
    pub fn is_empty(&self) -> bool {
        self.definite.is_empty() && self.indefinite.is_empty()
    }
}

/// A solution printed as `target = [D + 0/0 I] z + [D' + 0/0 I'] (1-z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleExpression {
    ctx: Arc<Context>,
    pub target: Target,
    pub side_var: VarId,
    pub vars: Vec<VarId>,
    /// Index 0 is the `side_var = 1` part, index 1 the `side_var = 0` part.
    pub sides: [SideExpr; 2],
    pub delta: bool,
}

/// Minimize the one-rows and indefinite rows of each side separately. The
/// first constituent variable is the side variable.
pub fn render_solution(s: &SolutionExpansion) -> BooleExpression {
    let ctx = s.context().clone();
    let rest = s.vars[1..].to_vec();
    let n = rest.len();
    let side = |value: bool| {
        let set =
            |class| s.side_rows(value, class).fold(0u64, |acc, r| acc | 1 << (r.constituent.bits() & ((1 << n) - 1)));
        SideExpr {
            definite: minimize_set(set(CoeffClass::One), &rest).expect("at most 5 remaining variables"),
            indefinite: minimize_set(set(CoeffClass::Indef), &rest).expect("at most 5 remaining variables"),
        }
    };
    BooleExpression {
        target: s.target,
        side_var: s.vars[0],
        vars: rest.clone(),
        sides: [side(true), side(false)],
        delta: true,
        ctx,
    }
}

impl BooleExpression {
    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn side(&self, side_value: bool) -> &SideExpr {
        &self.sides[if side_value { 0 } else { 1 }]
    }

    pub fn without_delta(mut self) -> Self {
        self.delta = false;
        self
    }

    fn side_factor(&self, side_value: bool) -> String {
        let name = self.ctx.name(self.side_var);
        if side_value {
            name.to_string()
        } else {
            format!("(1-{name})")
        }
    }

    fn render_side(&self, side_value: bool) -> Option<String> {
        let side = self.side(side_value);
        if side.is_empty() {
            return None;
        }
        let factor = self.side_factor(side_value);
        let mut pieces = side.definite.terms(&self.ctx, self.delta);
        if !side.indefinite.is_empty() {
            let terms = side.indefinite.terms(&self.ctx, self.delta);
            let group = if terms.len() == 1 { terms[0].clone() } else { format!("({})", terms.join(" + ")) };
            pieces.push(format!("0/0 {group}"));
        }
        Some(match pieces.as_slice() {
            [one] if one == "1" => factor,
            [one] if !side.definite.is_empty() => format!("{one}{factor}"),
            [one] => format!("{one}{factor}"),
            _ => format!("({}){factor}", pieces.join(" + ")),
        })
    }

    /// Right-hand side only.
    pub fn rhs(&self) -> String {
        let parts: Vec<String> = [true, false].into_iter().filter_map(|s| self.render_side(s)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        let side_name = self.ctx.name(self.side_var);
        let side = |s: &SideExpr| {
            json!({
                "definite": s.definite.to_json(&self.ctx),
                "indefinite": s.indefinite.to_json(&self.ctx),
            })
        };
        json!({
            "target": self.target.display(&self.ctx),
            "side_var": side_name,
            "vars": self.vars.iter().map(|v| self.ctx.name(*v)).collect::<Vec<_>>(),
            "sides": {
                side_name: side(&self.sides[0]),
                format!("1-{side_name}"): side(&self.sides[1]),
            },
            "text": self.to_string(),
        })
    }
}

impl fmt::Display for BooleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.target.display(&self.ctx), self.rhs())
    }
}

pub fn covers_equal(a: &Cover, b: &Cover) -> Result<bool, MinimizeError> {
    if a.vars != b.vars {
        return Err(MinimizeError::VariableMismatch);
    }
    Ok(a.minterms() == b.minterms())
}

/// Per side and per class set equality.
pub fn semantically_equal(a: &BooleExpression, b: &BooleExpression) -> Result<bool, MinimizeError> {
    if a.vars != b.vars || a.side_var != b.side_var {
        return Err(MinimizeError::VariableMismatch);
    }
    for (sa, sb) in a.sides.iter().zip(&b.sides) {
        if !covers_equal(&sa.definite, &sb.definite)? || !covers_equal(&sa.indefinite, &sb.indefinite)? {
            return Ok(false);
        }
    }
    Ok(true)
}
