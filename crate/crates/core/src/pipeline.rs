//! Reduction, elimination and solution, chained.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::expand::{multiply_solution, solve_for, ExpandError, SolutionExpansion, Target};
use crate::minimize::{render_solution, BooleExpression};
use crate::poly::{Context, EquationSystem, Poly, PolyError, Relation, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Expand(#[from] ExpandError),
    #[error("cannot reduce a system containing an inequation")]
    Inequation,
    #[error("the premises must mention `{0}`")]
    MissingVariable(&'static str),
}

/// `Σ (lhs - rhs)^2`; zero exactly where every equation holds.
pub fn reduce_system(sys: &EquationSystem) -> Result<Poly, PipelineError> {
    let mut acc = Poly::zero(sys.context());
    for eq in sys.equations() {
        if eq.relation == Relation::NotEqual {
            return Err(PipelineError::Inequation);
        }
        acc = acc + eq.difference().square();
    }
    Ok(acc)
}

/// `p(var = 1) * p(var = 0)`.
pub fn eliminate(p: &Poly, var: VarId) -> Poly {
    &p.fix(var, true) * &p.fix(var, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    I,
    II,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
        })
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" | "i" | "1" => Ok(CaseLabel::I),
            "II" | "ii" | "2" => Ok(CaseLabel::II),
            other => Err(format!("unknown case `{other}` (expected I or II)")),
        }
    }
}

/// Which of `x`, `1 - x`, `vx`, `v(1 - x)` to solve for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetKind {
    X,
    NotX,
    VX,
    VNotX,
}

impl TargetKind {
    /// The targets tabulated for the two cases.
    pub const ALL: [TargetKind; 3] = [TargetKind::X, TargetKind::NotX, TargetKind::VX];

    pub fn is_selected(self) -> bool {
        matches!(self, TargetKind::VX | TargetKind::VNotX)
    }

    pub fn target(self, ctx: &Context) -> Target {
        let x = ctx.expect_var("x");
        match self {
            TargetKind::X => Target::class(x),
            TargetKind::NotX => Target::complement(x),
            TargetKind::VX => Target::class(x).selected_by(ctx.expect_var("v")),
            TargetKind::VNotX => Target::complement(x).selected_by(ctx.expect_var("v")),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TargetKind::X => "x",
            TargetKind::NotX => "1-x",
            TargetKind::VX => "vx",
            TargetKind::VNotX => "v(1-x)",
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TargetKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" => Ok(TargetKind::X),
            "1-x" | "not-x" => Ok(TargetKind::NotX),
            "vx" => Ok(TargetKind::VX),
            "v(1-x)" | "v-not-x" => Ok(TargetKind::VNotX),
            other => Err(format!("unknown target `{other}` (expected x, 1-x, vx or v(1-x))")),
        }
    }
}

/// Which of `x`, `y`, `z` are replaced by their complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Negations {
    pub x: bool,
    pub y: bool,
    pub z: bool,
}

impl Negations {
    pub fn all() -> impl Iterator<Item = Negations> {
        (0..8u8).map(|b| Negations { x: b & 4 != 0, y: b & 2 != 0, z: b & 1 != 0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub label: CaseLabel,
    pub negations: Negations,
}

impl CaseSpec {
    pub fn canonical(label: CaseLabel) -> CaseSpec {
        CaseSpec { label, negations: Negations::default() }
    }

    /// Case I: `vx = v'y, wz = w'y`; Case II: `vx = v'y, wz = w'(1-y)`, with
    /// the negation variant applied.
    pub fn premises(&self, ctx: &Arc<Context>) -> EquationSystem {
        let text = match self.label {
            CaseLabel::I => "v*x = v'*y; w*z = w'*y",
            CaseLabel::II => "v*x = v'*y; w*z = w'*(1 - y)",
        };
        let sys = EquationSystem::parse(text, ctx).expect("fixed premises parse");
        let bindings: Vec<(VarId, Poly)> = [("x", self.negations.x), ("y", self.negations.y), ("z", self.negations.z)]
            .into_iter()
            .filter(|(_, neg)| *neg)
            .map(|(n, _)| {
                let v = ctx.expect_var(n);
                (v, Poly::not_var(ctx, v))
            })
            .collect();
        sys.substitute(&bindings).expect("same context")
    }
}

/// The constituent variables for the two tabulated cases: `z, v, v', w, w'`.
pub fn case_vars(ctx: &Context) -> Vec<VarId> {
    ["z", "v", "v'", "w", "w'"].map(|n| ctx.expect_var(n)).to_vec()
}

/// Solve the eliminated equation `e` for a target over `vars`.
pub fn solve_target(e: &Poly, kind: TargetKind, vars: &[VarId]) -> Result<SolutionExpansion, PipelineError> {
    let ctx = e.context();
    let target = kind.target(ctx);
    let base = Target { selector: None, ..target };
    let solution = solve_for(e, base, vars)?;
    Ok(match target.selector {
        Some(s) => multiply_solution(&solution, s)?,
        None => solution,
    })
}

pub fn run_case(case: CaseSpec, kind: TargetKind, ctx: &Arc<Context>) -> Result<SolutionExpansion, PipelineError> {
    let r = reduce_system(&case.premises(ctx))?;
    let e = eliminate(&r, ctx.expect_var("y"));
    Ok(solve_target(&e, kind, &case_vars(ctx))?.with_label(case.label.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedConclusion {
    pub target: TargetKind,
    pub expression: BooleExpression,
    pub solution: SolutionExpansion,
}

impl fmt::Display for DerivedConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expression.fmt(f)
    }
}

/// Reduce, eliminate `y`, solve for the target over `z` followed by the
/// remaining premise variables in context order, then minimize.
pub fn run_argument(premises: &EquationSystem, kind: TargetKind) -> Result<DerivedConclusion, PipelineError> {
    let ctx = premises.context();
    let x = ctx.var("x").ok_or(PipelineError::MissingVariable("x"))?;
    let y = ctx.var("y").ok_or(PipelineError::MissingVariable("y"))?;
    let z = ctx.var("z").ok_or(PipelineError::MissingVariable("z"))?;
    let mentioned = premises.variables();
    if !mentioned.contains(&z) {
        return Err(PipelineError::MissingVariable("z"));
    }
    let mut vars = vec![z];
    vars.extend(mentioned.into_iter().filter(|v| ![x, y, z].contains(v)));
    if kind.is_selected() && !vars.contains(&ctx.expect_var("v")) {
        vars.push(ctx.expect_var("v"));
    }
    let r = reduce_system(premises)?;
    let e = eliminate(&r, y);
    let solution = solve_target(&e, kind, &vars)?;
    let expression = render_solution(&solution);
    Ok(DerivedConclusion { target: kind, expression, solution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ctx() -> Arc<Context> {
        Context::boole()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, &ctx()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let c = ctx();
        let r1 = reduce_system(&CaseSpec::canonical(CaseLabel::I).premises(&c)).unwrap();
        assert_eq!(r1, p("(v*x - v'*y)^2 + (w*z - w'*y)^2"));
        let r2 = reduce_system(&CaseSpec::canonical(CaseLabel::II).premises(&c)).unwrap();
        assert_eq!(r2, p("(v*x - v'*y)^2 + (w*z - w'*(1 - y))^2"));
        let sym = reduce_system(&EquationSystem::parse("y = x", &c).unwrap()).unwrap();
        assert_eq!(sym, p("x + y - 2*x*y"));
        assert_eq!(reduce_system(&EquationSystem::parse("x*y != 0", &c).unwrap()), Err(PipelineError::Inequation));
    }

    #[test]
    fn eliminate_examples() {
        let c = ctx();
        let y = c.expect_var("y");
        let e1 = eliminate(&p("(v*x - v'*y)^2 + (w*z - w'*y)^2"), y);
        assert_eq!(e1, p("((v*x - v')^2 + (w*z - w')^2)*(v*x + w*z)"));
        let e2 = eliminate(&p("(v*x - v'*y)^2 + (w*z - w'*(1 - y))^2"), y);
        assert_eq!(e2, p("((v*x - v')^2 + w*z)*(v*x + (w*z - w')^2)"));
        assert!(eliminate(&p("(y - x)^2"), y).is_zero());
        // absent variable: p * p
        assert_eq!(eliminate(&p("x + z"), y), p("(x + z)^2"));
    }

    #[test]
    fn variants_are_distinct() {
        let c = ctx();
        let systems: Vec<String> =
            Negations::all().map(|n| CaseSpec { label: CaseLabel::I, negations: n }.premises(&c).to_string()).collect();
        let mut dedup = systems.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
    }

    #[test]
    fn elimination_is_existential_projection() {
        let c = ctx();
        let y = c.expect_var("y");
        for label in [CaseLabel::I, CaseLabel::II] {
            for neg in Negations::all() {
                let r = reduce_system(&CaseSpec { label, negations: neg }.premises(&c)).unwrap();
                let e = eliminate(&r, y);
                for mask in 0..1u64 << 7 {
                    let without_y = mask & !(1 << y.index());
                    let exists = r.eval_mask(without_y) == BigInt::from(0)
                        || r.eval_mask(without_y | 1 << y.index()) == BigInt::from(0);
                    assert_eq!(e.eval_mask(without_y) == BigInt::from(0), exists);
                }
            }
        }
    }

    #[test]
    fn argument_conclusions_print() {
        let c = ctx();
        let a = run_argument(&EquationSystem::parse("x = v*y; w*z = y", &c).unwrap(), TargetKind::X).unwrap();
        assert_eq!(a.to_string(), "x = vwz");
        let d = run_argument(&EquationSystem::parse("v*x = y; w*z = y", &c).unwrap(), TargetKind::VX).unwrap();
        assert_eq!(d.to_string(), "vx = vwz");
    }
}
