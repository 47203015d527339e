//! One PASS/FAIL line per acceptance criterion. Expected values come from the
//! golden corpus; derived values are recomputed here by direct evaluation.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::Value;

use boole_core::expand::{CoeffClass, Constituent};
use boole_core::minimize::{minimize_constituents, minterms_of_poly, render_solution, BooleExpression};
use boole_core::oracle::{
    check_cardinality_entailment, check_form, check_no_conclusion, condensed_form, no_conclusion_pairs, Convention,
};
use boole_core::pipeline::{eliminate, reduce_system, run_argument, run_case, CaseLabel, CaseSpec, TargetKind};
use boole_core::poly::{Context, EquationSystem, Poly, VarId};
use boole_core::syllogism::vanish_search;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Arc<Context>) -> Outcome, Option<Duration>);

fn golden(name: &str) -> Value {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "golden", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().expect("array").iter().map(|s| s.as_str().expect("string").to_string()).collect()
}

fn minterms(exprs: &[String], ctx: &Arc<Context>, vars: &[VarId]) -> u64 {
    exprs
        .iter()
        .map(|e| minterms_of_poly(&Poly::parse(e, ctx).expect("golden parses"), vars).expect("in vars"))
        .fold(0, |a, b| a | b)
}

/// `[z definite, z indefinite, 1-z definite, 1-z indefinite]`.
fn golden_sides(v: &Value, ctx: &Arc<Context>, vars: &[VarId]) -> [u64; 4] {
    let side = |k: &str, part: &str| minterms(&strings(&v[k][part]), ctx, vars);
    [side("z", "definite"), side("z", "indefinite"), side("not_z", "definite"), side("not_z", "indefinite")]
}

fn sides(e: &BooleExpression) -> [u64; 4] {
    [
        e.side(true).definite.minterms(),
        e.side(true).indefinite.minterms(),
        e.side(false).definite.minterms(),
        e.side(false).indefinite.minterms(),
    ]
}

fn case(v: &Value) -> CaseLabel {
    v["case"].as_str().expect("case").parse().expect("case label")
}

fn target(v: &Value) -> TargetKind {
    v["target"].as_str().expect("target").parse().expect("target")
}

fn tables(ctx: &Arc<Context>) -> Outcome {
    let x = ctx.expect_var("x");
    let mut rows_seen = 0;
    let mut problems = Vec::new();
    for file in ["table_case_i_x.json", "table_case_i_not_x.json", "table_case_ii_x.json", "table_case_ii_not_x.json"] {
        let g = golden(file);
        let (label, kind) = (case(&g), target(&g));
        let s = run_case(CaseSpec::canonical(label), kind, ctx).map_err(|e| e.to_string())?;
        let e = eliminate(&reduce_system(&CaseSpec::canonical(label).premises(ctx)).unwrap(), ctx.expect_var("y"));
        let grows = g["rows"].as_array().expect("rows");
        if grows.len() != 32 || s.rows.len() != 32 {
            problems.push(format!("{file}: row count"));
        }
        for (gr, row) in grows.iter().zip(&s.rows) {
            rows_seen += 1;
            let n = gr["row"].as_u64().unwrap() as usize;
            let mut bad = n != row.constituent.row();
            for (i, v) in s.vars.iter().enumerate() {
                bad |= gr[ctx.name(*v)].as_u64() != Some(row.constituent.value(i) as u64);
            }
            // Independent recomputation from E at x = 1 and x = 0.
            let a = row.constituent.assignment(&s.vars).with(ctx.expect_var("y"), false);
            let e1 = e.eval(&a.with(x, true)).unwrap();
            let e0 = e.eval(&a.with(x, false)).unwrap();
            let den = &e1 - &e0;
            let num = if kind == TargetKind::NotX { e1.clone() } else { -e0.clone() };
            let class = match (num == BigInt::from(0), den == BigInt::from(0)) {
                (true, true) => CoeffClass::Indef,
                (_, false) if num == den => CoeffClass::One,
                (true, false) => CoeffClass::Zero,
                _ => CoeffClass::Infinite,
            };
            bad |= gr["num"].as_i64() != Some(row.coeff.num) || gr["den"].as_i64() != Some(row.coeff.den);
            bad |= BigInt::from(row.coeff.num) != num || BigInt::from(row.coeff.den) != den;
            bad |= gr["class"].as_str() != Some(row.class.json_name()) || row.class != class;
            if bad {
                problems.push(format!("{file}: row {n}"));
            }
        }
    }
    match problems.is_empty() {
        true => Ok(format!("{rows_seen} rows, 0 mismatches")),
        false => Err(format!("{} mismatches: {}", problems.len(), problems.join(", "))),
    }
}

fn formulas(ctx: &Arc<Context>) -> Outcome {
    let mut problems = Vec::new();
    for id in ["I", "II", "III", "IV", "V", "VI"] {
        let g = golden(&format!("formula_{id}.json"));
        let s = run_case(CaseSpec::canonical(case(&g)), target(&g), ctx).map_err(|e| e.to_string())?;
        let e = render_solution(&s);
        if sides(&e) != golden_sides(&g, ctx, &e.vars) {
            problems.push(format!("({id}.) {e}"));
        }
        let corrected = match id {
            "II" => Some((false, "v*(1-v')")),
            "III" => Some((false, "v*v'*(1-w')")),
            _ => None,
        };
        if let Some((side, term)) = corrected {
            let t = minterms(&[term.to_string()], ctx, &e.vars);
            let part = e.side(side);
            if (part.definite.minterms() | part.indefinite.minterms()) & t != t {
                problems.push(format!("({id}.) lacks {term}"));
            }
        }
    }
    match problems.is_empty() {
        true => Ok("6 formulas equal per class and side, corrected terms present".into()),
        false => Err(problems.join("; ")),
    }
}

fn searches(ctx: &Arc<Context>) -> Outcome {
    let mut problems = Vec::new();
    let mut hits = 0;
    for file in ["search_case_i.json", "search_case_ii.json"] {
        let g = golden(file);
        for sol in g["solutions"].as_array().unwrap() {
            let kind = target(sol);
            let s = run_case(CaseSpec::canonical(case(&g)), kind, ctx).map_err(|e| e.to_string())?;
            let mut expected: Vec<(Vec<String>, String, [u64; 4])> = sol["hits"]
                .as_array()
                .unwrap()
                .iter()
                .map(|h| {
                    let mut ones = strings(&h["ones"]);
                    ones.sort();
                    let vars: Vec<VarId> = ["v", "v'", "w", "w'"]
                        .into_iter()
                        .filter(|n| !ones.iter().any(|o| o == n))
                        .map(|n| ctx.expect_var(n))
                        .collect();
                    (ones, h["vanished"].as_str().unwrap().to_string(), golden_sides(h, ctx, &vars))
                })
                .collect();
            let mut actual: Vec<_> = vanish_search(&s)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|h| {
                    let mut ones: Vec<String> = h.substitution.names().iter().map(|n| n.to_string()).collect();
                    ones.sort();
                    (ones, h.vanished_name(), sides(&h.residual))
                })
                .collect();
            expected.sort();
            actual.sort();
            hits += actual.len();
            if expected != actual {
                problems.push(format!("Case {} {kind}", case(&g)));
            }
        }
    }
    match problems.is_empty() {
        true => Ok(format!("6 solutions, {hits} vanishing substitutions, sets equal")),
        false => Err(problems.join("; ")),
    }
}

fn arguments(ctx: &Arc<Context>) -> Outcome {
    let g = golden("arguments.json");
    let mut problems = Vec::new();
    let args = g["arguments"].as_array().unwrap();
    for a in args {
        let sys = EquationSystem::parse(a["premises"].as_str().unwrap(), ctx).map_err(|e| e.to_string())?;
        let d = run_argument(&sys, target(a)).map_err(|e| e.to_string())?;
        if sides(&d.expression) != golden_sides(a, ctx, &d.expression.vars) {
            problems.push(format!("Case {} ({}): {d}", case(a), a["label"].as_str().unwrap()));
        }
    }
    match problems.is_empty() {
        true => Ok(format!("{} arguments reproduced", args.len())),
        false => Err(problems.join("; ")),
    }
}

fn pointwise(ctx: &Arc<Context>) -> Outcome {
    let (x, y) = (ctx.expect_var("x"), ctx.expect_var("y"));
    let zero = BigInt::from(0);
    let mut failures = 0;
    let mut points = 0;
    for label in [CaseLabel::I, CaseLabel::II] {
        let r = reduce_system(&CaseSpec::canonical(label).premises(ctx)).unwrap();
        let e = eliminate(&r, y);
        for mask in 0..1u64 << ctx.len() {
            points += 1;
            let y1 = mask | 1 << y.index();
            let y0 = mask & !(1 << y.index());
            let exists = r.eval_mask(y1) == zero || r.eval_mask(y0) == zero;
            failures += usize::from((e.eval_mask(mask) == zero) != exists);
        }
        for kind in [TargetKind::X, TargetKind::NotX] {
            let s = run_case(CaseSpec::canonical(label), kind, ctx).map_err(|e| e.to_string())?;
            for bits in 0..1u32 << s.vars.len() {
                let row = &s.rows[Constituent::new(bits, s.vars.len()).row() - 1];
                for xv in [false, true] {
                    points += 1;
                    let a = row.constituent.assignment(&s.vars).with(x, xv).with(y, false);
                    let t = xv != (kind == TargetKind::NotX);
                    let admitted = row.class != CoeffClass::Infinite
                        && (row.class != CoeffClass::One || t)
                        && (row.class != CoeffClass::Zero || !t);
                    failures += usize::from((e.eval(&a).unwrap() == zero) != admitted);
                }
            }
        }
    }
    match failures {
        0 => Ok(format!("{points} points, 0 failures")),
        n => Err(format!("{n} failures over {points} points")),
    }
}

fn oracle_suite(ctx: &Arc<Context>) -> Outcome {
    let c_max = 2;
    let mut lines = Vec::new();
    let mut problems = Vec::new();
    let verdict = |id: u8, conv: Convention| check_form(&condensed_form(id).unwrap(), conv, ctx, c_max).unwrap();
    for id in [2, 3] {
        if !verdict(id, Convention::NONE).valid {
            problems.push(format!("form {id} not valid without import"));
        }
    }
    let f1 = verdict(1, Convention::NONE);
    match f1.first_failure().and_then(|f| f.verdict.countermodel.as_ref()) {
        Some(m) if !f1.valid => {
            let place = if m.total() == 0 { "the empty model".to_string() } else { m.display(ctx) };
            lines.push(format!("form 1 fails in {place}"))
        }
        _ => problems.push("form 1 has no countermodel without import".into()),
    }
    if !verdict(1, Convention::TERMS).valid {
        problems.push("form 1 not valid under nonempty-terms".into());
    }
    for pair in no_conclusion_pairs() {
        for (_, entailed) in check_no_conclusion(&pair, Convention::NONE, ctx, c_max).unwrap() {
            if !entailed.is_empty() {
                problems.push(format!("pair {} entails something", pair.display()));
            }
        }
    }
    // Form 4: report, then check the report against itself.
    let all: Vec<_> = Convention::all().map(|c| verdict(4, c)).collect();
    for v in &all {
        let inner = v.instances.iter().all(|i| i.verdict.valid == i.verdict.countermodel.is_none());
        if !inner || v.valid != v.first_failure().is_none() {
            problems.push(format!("form 4 under {} inconsistent", v.convention));
        }
        for w in &all {
            if v.valid && v.convention.weaker_or_equal(w.convention) && !w.valid {
                problems.push(format!("form 4 valid under {} but not {}", v.convention, w.convention));
            }
        }
    }
    let valid_under: Vec<String> = all.iter().filter(|v| v.valid).map(|v| v.convention.to_string()).collect();
    lines.push(format!(
        "form 4 (import convention left open) valid under: {}",
        if valid_under.is_empty() { "no convention".into() } else { valid_under.join(", ") }
    ));
    if let Some(f) = all[0].first_failure() {
        lines.push(format!(
            "form 4 fails: {} in {}",
            f.argument.display(ctx),
            f.verdict.countermodel.as_ref().map(|m| m.display(ctx)).unwrap_or_default()
        ));
    }
    match problems.is_empty() {
        true => Ok(lines.join("; ")),
        false => Err(problems.join("; ")),
    }
}

fn cardinality(ctx: &Arc<Context>) -> Outcome {
    let sys = EquationSystem::parse("x*y != 0; x*(1-y) != 0", ctx).unwrap();
    let terms = [ctx.expect_var("x"), ctx.expect_var("y")];
    let class = Poly::var(ctx, terms[0]);
    let two = check_cardinality_entailment(sys.equations(), &terms, &class, 2, 3).map_err(|e| e.to_string())?;
    let three = check_cardinality_entailment(sys.equations(), &terms, &class, 3, 3).map_err(|e| e.to_string())?;
    match (two.entailed, three.entailed) {
        (true, false) => Ok(format!(
            "|X| >= 2 entailed, |X| >= 3 fails in {} ({} models)",
            three.countermodel.as_ref().map(|m| m.display(ctx)).unwrap_or_default(),
            two.models_checked
        )),
        (a, b) => Err(format!("|X| >= 2 entailed: {a}; |X| >= 3 entailed: {b}")),
    }
}

fn groupings(ctx: &Arc<Context>) -> Outcome {
    let g = golden("groupings.json");
    let vars: Vec<VarId> = strings(&g["vars"]).iter().map(|n| ctx.expect_var(n)).collect();
    let mut problems = Vec::new();
    let groups = g["groups"].as_array().unwrap();
    for grp in groups {
        let rows: Vec<usize> = grp["rows"].as_array().unwrap().iter().map(|r| r.as_u64().unwrap() as usize).collect();
        let on: Vec<Constituent> = rows.iter().map(|r| Constituent::new(((r - 1) % 16) as u32, vars.len())).collect();
        let first = minimize_constituents(&on, &vars).map_err(|e| e.to_string())?;
        let expected = minterms(&[grp["expr"].as_str().unwrap().to_string()], ctx, &vars);
        let deterministic = (0..5).all(|_| minimize_constituents(&on, &vars).as_ref() == Ok(&first));
        if first.minterms() != expected || !deterministic {
            problems.push(format!("rows {rows:?}: {}", first.display_with_delta(ctx)));
        }
    }
    match problems.is_empty() {
        true => Ok(format!("{} groupings equal, minimizer deterministic", groups.len())),
        false => Err(problems.join("; ")),
    }
}

fn main() -> ExitCode {
    let ctx = Context::boole();
    let criteria: [Criterion; 8] = [
        ("table reproduction", tables, Some(Duration::from_secs(1))),
        ("formula reproduction", formulas, None),
        ("substitution search", searches, None),
        ("end-to-end arguments", arguments, None),
        ("pointwise solution theorem", pointwise, None),
        ("oracle suite", oracle_suite, Some(Duration::from_secs(5))),
        ("cardinality example", cardinality, None),
        ("minimization groupings", groupings, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run(&ctx);
        let took = start.elapsed();
        if let (Ok(msg), Some(limit)) = (&outcome, budget) {
            if took > limit {
                outcome = Err(format!("{msg}; took {took:.2?}, budget {limit:.0?}"));
            }
        }
        let timing = budget.map(|_| format!(" [{took:.2?}]")).unwrap_or_default();
        match outcome {
            Ok(msg) => println!("PASS {}. {name}{timing}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}. {name}{timing}: {msg}", i + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
