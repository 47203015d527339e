use boole_core::expand::{solve_for, CoeffClass, Target};
use boole_core::minimize::render_solution;
use boole_core::pipeline::{case_vars, eliminate, reduce_system, run_case, CaseLabel, CaseSpec, TargetKind};
use boole_core::poly::{Context, VarId};

#[test]
fn constants_commute_with_elimination_and_solving() {
    let ctx = Context::boole();
    let (x, y, z) = (ctx.expect_var("x"), ctx.expect_var("y"), ctx.expect_var("z"));
    let selectors: Vec<VarId> = ["v", "v'", "w", "w'"].iter().map(|n| ctx.expect_var(n)).collect();
    for label in [CaseLabel::I, CaseLabel::II] {
        let r = reduce_system(&CaseSpec::canonical(label).premises(&ctx)).unwrap();
        let e = eliminate(&r, y);
        let full = run_case(CaseSpec::canonical(label), TargetKind::X, &ctx).unwrap();
        for bits in 0..16u32 {
            let fix = |mut p: boole_core::poly::Poly| {
                for (i, v) in selectors.iter().enumerate() {
                    p = p.fix(*v, bits >> (3 - i) & 1 == 1);
                }
                p
            };
            let e_fixed_first = eliminate(&fix(r.clone()), y);
            assert_eq!(e_fixed_first, fix(e.clone()), "case {label}, selectors {bits:04b}");

            for zv in [false, true] {
                let whole = full.rows.iter().find(|w| w.constituent.bits() == (u32::from(zv) << 4 | bits)).unwrap();
                let class = if e_fixed_first.mentions(x) {
                    let s = solve_for(&e_fixed_first, Target::class(x), &[z]).unwrap();
                    s.rows[usize::from(zv)].class
                } else if e_fixed_first.fix(z, zv).is_zero() {
                    CoeffClass::Indef
                } else {
                    CoeffClass::Infinite
                };
                assert_eq!(class, whole.class, "case {label}, selectors {bits:04b}, z = {zv}");
            }
        }
    }
}

#[test]
fn rendered_solutions_cover_their_rows() {
    let ctx = Context::boole();
    let targets = [TargetKind::X, TargetKind::NotX, TargetKind::VX];
    for label in [CaseLabel::I, CaseLabel::II] {
        for kind in targets {
            let s = run_case(CaseSpec::canonical(label), kind, &ctx).unwrap();
            let e = render_solution(&s);
            assert_eq!(e.vars, case_vars(&ctx)[1..].to_vec());
            for side in [true, false] {
                let mask = |class| s.side_rows(side, class).fold(0u64, |m, r| m | 1 << (r.constituent.bits() & 15));
                assert_eq!(e.side(side).definite.minterms(), mask(CoeffClass::One), "{label} {kind}");
                assert_eq!(e.side(side).indefinite.minterms(), mask(CoeffClass::Indef), "{label} {kind}");
            }
        }
    }
}
