use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use boole_core::expand::{classify_coefficient, expand_full, solve_for, CoeffClass, Coefficient, Target};
use boole_core::oracle::{self, Argument, Convention, LiteralStatement};
use boole_core::pipeline::reduce_system;
use boole_core::poly::{Context, Equation, EquationSystem, Poly, VarId};

#[derive(Debug, Clone)]
enum Expr {
    Const(i64),
    Var(usize),
    Not(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf =
        prop_oneof![(-3i64..4).prop_map(Expr::Const), (0usize..7).prop_map(Expr::Var), (0usize..7).prop_map(Expr::Not)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

fn build(e: &Expr, ctx: &Arc<Context>) -> Poly {
    let var = |i: usize| ctx.vars().nth(i).unwrap();
    match e {
        Expr::Const(c) => Poly::constant(ctx, *c),
        Expr::Var(i) => Poly::var(ctx, var(*i)),
        Expr::Not(i) => Poly::not_var(ctx, var(*i)),
        Expr::Add(a, b) => build(a, ctx) + build(b, ctx),
        Expr::Sub(a, b) => build(a, ctx) - build(b, ctx),
        Expr::Mul(a, b) => build(a, ctx) * build(b, ctx),
    }
}

/// Plain integer arithmetic at a 0/1 point, bit `i` of `mask` for variable `i`.
fn eval(e: &Expr, mask: u64) -> i64 {
    match e {
        Expr::Const(c) => *c,
        Expr::Var(i) => (mask >> i & 1) as i64,
        Expr::Not(i) => 1 - (mask >> i & 1) as i64,
        Expr::Add(a, b) => eval(a, mask) + eval(b, mask),
        Expr::Sub(a, b) => eval(a, mask) - eval(b, mask),
        Expr::Mul(a, b) => eval(a, mask) * eval(b, mask),
    }
}

fn statement() -> impl Strategy<Value = (usize, usize, bool, bool, bool)> {
    (0usize..3, 1usize..3, any::<bool>(), any::<bool>(), any::<bool>())
}

fn literal(ctx: &Context, (a, step, pa, pb, nonzero): (usize, usize, bool, bool, bool)) -> LiteralStatement {
    let terms: Vec<VarId> = ["x", "y", "z"].iter().map(|n| ctx.expect_var(n)).collect();
    LiteralStatement::new([(terms[a], pa), (terms[(a + step) % 3], pb)], nonzero)
}

proptest! {
    #[test]
    fn polynomial_agrees_with_pointwise_arithmetic(e in expr()) {
        let ctx = Context::boole();
        let p = build(&e, &ctx);
        for mask in 0..1u64 << ctx.len() {
            let expected = eval(&e, mask);
            prop_assert_eq!(p.eval_mask(mask), BigInt::from(expected));
        }
    }

    #[test]
    fn printing_then_parsing_is_a_fixpoint(e in expr()) {
        let ctx = Context::boole();
        let p = build(&e, &ctx);
        let text = p.to_string();
        let q = Poly::parse(&text, &ctx).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.to_string(), text);
    }

    #[test]
    fn expansion_reconstructs_the_polynomial(e in expr()) {
        let ctx = Context::boole();
        let p = build(&e, &ctx);
        let vars: Vec<VarId> = ctx.vars().collect();
        prop_assert_eq!(expand_full(&p, &vars).unwrap().to_poly(&ctx), p);
    }

    #[test]
    fn solution_rows_describe_the_roots(e in expr()) {
        let ctx = Context::boole();
        let p = build(&e, &ctx);
        let x = ctx.expect_var("x");
        prop_assume!(p.mentions(x));
        let vars: Vec<VarId> = ctx.vars().filter(|v| *v != x).collect();
        let s = solve_for(&p, Target::class(x), &vars).unwrap();
        let zero = BigInt::from(0);
        for row in &s.rows {
            for xv in [false, true] {
                let a = row.constituent.assignment(&vars).with(x, xv);
                let admitted = match row.class {
                    CoeffClass::Infinite => false,
                    CoeffClass::One => xv,
                    CoeffClass::Zero => !xv,
                    CoeffClass::Indef => true,
                };
                prop_assert_eq!(p.eval(&a).unwrap() == zero, admitted);
            }
        }
    }

    #[test]
    fn normal_form_is_canonical(a in expr(), b in expr()) {
        let ctx = Context::boole();
        let (p, q) = (build(&a, &ctx), build(&b, &ctx));
        let pointwise = (0..1u64 << ctx.len()).all(|m| p.eval_mask(m) == q.eval_mask(m));
        prop_assert_eq!(pointwise, p == q);
        // Same function, different construction.
        let x = Poly::var(&ctx, ctx.expect_var("x"));
        let split = &x * &p + (Poly::one(&ctx) - x) * p.clone();
        prop_assert_eq!(split, p);
    }

    #[test]
    fn fixing_a_variable_commutes_with_evaluation(e in expr(), var in 0usize..7, value: bool) {
        let ctx = Context::boole();
        let p = build(&e, &ctx);
        let v = ctx.vars().nth(var).unwrap();
        let fixed = p.fix(v, value);
        let constant = if value { Poly::one(&ctx) } else { Poly::zero(&ctx) };
        prop_assert_eq!(&p.substitute(&[(v, constant)]).unwrap(), &fixed);
        for mask in 0..1u64 << ctx.len() {
            let forced = if value { mask | 1 << v.index() } else { mask & !(1 << v.index()) };
            prop_assert_eq!(fixed.eval_mask(mask), p.eval_mask(forced));
        }
    }

    #[test]
    fn reduction_vanishes_exactly_where_every_equation_holds(a in expr(), b in expr(), c in expr(), d in expr()) {
        let ctx = Context::boole();
        let eqs = vec![
            Equation::equal(build(&a, &ctx), build(&b, &ctx)).unwrap(),
            Equation::equal(build(&c, &ctx), build(&d, &ctx)).unwrap(),
        ];
        let r = reduce_system(&EquationSystem::new(&ctx, eqs.clone()).unwrap()).unwrap();
        for mask in 0..1u64 << ctx.len() {
            let all = eqs.iter().all(|eq| eq.difference().eval_mask(mask) == BigInt::from(0));
            prop_assert_eq!(r.eval_mask(mask) == BigInt::from(0), all);
        }
    }

    #[test]
    fn class_ignores_a_common_sign_flip(num in -6i64..7, den in -6i64..7) {
        prop_assert_eq!(
            classify_coefficient(Coefficient::new(num, den)),
            classify_coefficient(Coefficient::new(-num, -den))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn occupancy_decides_emptiness_statements(p1 in statement(), p2 in statement(), c in statement()) {
        let ctx = Context::boole();
        let arg = Argument::syllogism(&ctx, vec![literal(&ctx, p1), literal(&ctx, p2)], literal(&ctx, c));
        for conv in Convention::all() {
            let one = oracle::valid(&arg, conv, &ctx, 1).unwrap();
            let two = oracle::valid(&arg, conv, &ctx, 2).unwrap();
            prop_assert_eq!(one.valid, two.valid);
            prop_assert_eq!(one.countermodel, two.countermodel);
        }
    }

    #[test]
    fn stronger_conventions_keep_validity(p1 in statement(), p2 in statement(), c in statement()) {
        let ctx = Context::boole();
        let arg = Argument::syllogism(&ctx, vec![literal(&ctx, p1), literal(&ctx, p2)], literal(&ctx, c));
        let verdicts: Vec<_> = Convention::all().map(|conv| (conv, oracle::valid(&arg, conv, &ctx, 1).unwrap())).collect();
        for (weak, v) in &verdicts {
            for (strong, w) in &verdicts {
                if weak.weaker_or_equal(*strong) && v.valid {
                    prop_assert!(w.valid, "valid under {} but not {}", weak, strong);
                }
            }
            if let Some(m) = &v.countermodel {
                prop_assert!(weak.admits(m, arg.middle));
                for p in &arg.premises {
                    prop_assert!(oracle::holds(m, &p.to_equation(&ctx)).unwrap());
                }
                prop_assert!(!oracle::holds(m, &arg.conclusion.to_equation(&ctx)).unwrap());
            }
        }
    }
}
