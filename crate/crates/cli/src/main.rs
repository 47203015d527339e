use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use boole_core::minimize::render_solution;
use boole_core::oracle::{
    self, check_cardinality_entailment, check_form, check_no_conclusion, condensed_form, no_conclusion_pairs,
    Convention,
};
use boole_core::pipeline::{eliminate, reduce_system, run_argument, run_case, CaseLabel, CaseSpec, TargetKind};
use boole_core::poly::{Context, EquationSystem, Poly, VarId};
use boole_core::report::{repro_report, GoldenSet};
use boole_core::syllogism::{
    self, certify, rule_verdict, to_equations, vanish_search, CategoricalProposition, Quantity, Term,
};

#[derive(Parser)]
#[command(name = "boole", version, about = "Reduce, eliminate and solve class equations; check syllogisms")]
struct Cli {
    /// Output layout
    #[arg(long, global = true, value_enum, default_value_t = Format::Paper)]
    format: Format,

    /// Write the artifact here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Paper,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Combine equations into one: the sum of squared differences
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// Reduce, then eliminate a variable
    Eliminate {
        #[command(flatten)]
        input: Input,
        /// Variable to eliminate
        #[arg(long, default_value = "y")]
        var: String,
    },
    /// Reduce, eliminate y and solve for a target
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "x")]
        target: TargetKind,
    },
    /// The 32-row table for one case and target
    Table {
        #[arg(long)]
        case: CaseLabel,
        #[arg(long, default_value = "x")]
        target: TargetKind,
    },
    /// Substitutions of 1 for v, v', w, w' that make a coefficient vanish
    Search {
        #[arg(long)]
        case: CaseLabel,
        /// Defaults to x, 1-x and vx
        #[arg(long)]
        target: Option<TargetKind>,
    },
    /// Draw a conclusion from two premises
    Argue {
        /// Equations, e.g. "x = v*y; w*z = y"
        #[arg(long, conflicts_with = "syllogism", required_unless_present = "syllogism")]
        premises: Option<String>,
        /// Categorical premises, e.g. "All X is Y; Some Z is Y"
        #[arg(long)]
        syllogism: Option<String>,
        #[arg(long, default_value = "x")]
        target: TargetKind,
    },
    /// Check forms and premise pairs against every finite model
    Oracle {
        #[command(flatten)]
        which: OracleWhich,
        /// none, nonempty-terms, nonempty-middle, nonempty-v-selection, or a `+` list
        #[arg(long, default_value = "none")]
        convention: Convention,
        /// Largest region cardinality enumerated
        #[arg(long)]
        c_max: Option<u8>,
        /// Premises for --cardinality
        #[arg(long, default_value = "x*y != 0; x*(1-y) != 0")]
        premises: String,
    },
    /// Regenerate every artifact and compare with the golden files
    Repro {
        /// Read golden files from here instead of the built-in copies
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Equations separated by `;`
    #[arg(long, required_unless_present = "case", conflicts_with = "case")]
    premises: Option<String>,
    /// One of the two tabulated cases instead of explicit premises
    #[arg(long)]
    case: Option<CaseLabel>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OracleWhich {
    /// Condensed form 1 to 4
    #[arg(long)]
    form: Option<u8>,
    /// Premise pair 1 or 2 that has no conclusion
    #[arg(long)]
    pair: Option<u8>,
    /// Check that the premises force |X| >= K
    #[arg(long)]
    cardinality: Option<u32>,
}

struct Output {
    text: String,
    json: Value,
    status: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, status: 0 }
    }
}

fn system(input: &Input, ctx: &Arc<Context>) -> Result<EquationSystem, String> {
    match (&input.premises, input.case) {
        (Some(p), _) => EquationSystem::parse(p, ctx).map_err(|e| e.to_string()),
        (None, Some(c)) => Ok(CaseSpec::canonical(c).premises(ctx)),
        (None, None) => Err("give --premises or --case".into()),
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    let ctx = Context::boole();
    match &cli.command {
        Command::Reduce { input } => {
            let sys = system(input, &ctx)?;
            let r = reduce_system(&sys).map_err(|e| e.to_string())?;
            Ok(Output::ok(format!("R = {r}\n"), json!({"premises": sys.to_string(), "reduced": r.to_string()})))
        }
        Command::Eliminate { input, var } => {
            let sys = system(input, &ctx)?;
            let v = ctx.var(var).ok_or_else(|| format!("--var: unknown variable `{var}`"))?;
            let r = reduce_system(&sys).map_err(|e| e.to_string())?;
            let e = eliminate(&r, v);
            Ok(Output::ok(
                format!("E = {e}\n"),
                json!({"premises": sys.to_string(), "reduced": r.to_string(), "eliminated": var, "result": e.to_string()}),
            ))
        }
        Command::Solve { input, target } => solve(input, *target, &ctx),
        Command::Table { case, target } => {
            let s = run_case(CaseSpec::canonical(*case), *target, &ctx).map_err(|e| e.to_string())?;
            Ok(Output::ok(s.to_paper_table(), s.to_json()))
        }
        Command::Search { case, target } => {
            let targets = match target {
                Some(t) => vec![*t],
                None => TargetKind::ALL.to_vec(),
            };
            let mut text = String::new();
            let mut solutions = Vec::new();
            for t in targets {
                let s = run_case(CaseSpec::canonical(*case), t, &ctx).map_err(|e| e.to_string())?;
                let hits = vanish_search(&s).map_err(|e| e.to_string())?;
                let _ = writeln!(text, "Case {case}, {t}:");
                if hits.is_empty() {
                    let _ = writeln!(text, "  no substitution makes a coefficient vanish");
                }
                for h in &hits {
                    let _ = writeln!(text, "  {h}");
                }
                solutions
                    .push(json!({"target": t.name(), "hits": hits.iter().map(|h| h.to_json()).collect::<Vec<_>>()}));
            }
            Ok(Output::ok(text, json!({"case": case.to_string(), "solutions": solutions})))
        }
        Command::Argue { premises: Some(p), target, .. } => {
            let sys = EquationSystem::parse(p, &ctx).map_err(|e| e.to_string())?;
            let d = run_argument(&sys, *target).map_err(|e| e.to_string())?;
            let reading = syllogism::conclusion_to_categorical(&d.expression);
            let mut text = format!("{d}\n");
            if let Some(r) = reading {
                let _ = writeln!(text, "reads: {r}");
            }
            Ok(Output::ok(
                text,
                json!({"premises": sys.to_string(), "conclusion": d.expression.to_json(), "reading": reading.map(|r| r.to_string())}),
            ))
        }
        Command::Argue { syllogism: Some(s), .. } => argue_syllogism(s, &ctx),
        Command::Argue { .. } => Err("give --premises or --syllogism".into()),
        Command::Oracle { which, convention, c_max, premises } => {
            oracle_command(which, *convention, *c_max, premises, &ctx)
        }
        Command::Repro { golden_dir } => {
            let goldens = match golden_dir {
                Some(d) => GoldenSet::from_dir(d).map_err(|e| e.to_string())?,
                None => GoldenSet::bundled(),
            };
            let report = repro_report(&goldens).map_err(|e| e.to_string())?;
            Ok(Output { text: report.to_text(), json: report.to_json(), status: if report.passed() { 0 } else { 1 } })
        }
    }
}

fn solve(input: &Input, target: TargetKind, ctx: &Arc<Context>) -> Result<Output, String> {
    if let Some(case) = input.case {
        let s = run_case(CaseSpec::canonical(case), target, ctx).map_err(|e| e.to_string())?;
        let e = render_solution(&s);
        return Ok(Output::ok(format!("{e}\n"), json!({"expression": e.to_json(), "table": s.to_json()})));
    }
    let sys = system(input, ctx)?;
    let d = run_argument(&sys, target).map_err(|e| e.to_string())?;
    Ok(Output::ok(format!("{d}\n"), json!({"expression": d.expression.to_json(), "table": d.solution.to_json()})))
}

/// Selected targets are read only when the selector multiplies X itself.
fn targets_for(first: &CategoricalProposition) -> Vec<TargetKind> {
    let mut kinds = vec![TargetKind::X, TargetKind::NotX];
    if first.quantity == Quantity::Particular && first.subject.term == Term::X {
        kinds.push(if first.subject.negated { TargetKind::VNotX } else { TargetKind::VX });
    }
    kinds
}

fn argue_syllogism(text: &str, ctx: &Arc<Context>) -> Result<Output, String> {
    let parts: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let [a, b] = parts.as_slice() else {
        return Err("--syllogism takes two premises separated by `;`".into());
    };
    let p1: CategoricalProposition = a.parse().map_err(|e: syllogism::SyllogismError| e.to_string())?;
    let p2: CategoricalProposition = b.parse().map_err(|e: syllogism::SyllogismError| e.to_string())?;
    let t = to_equations(&p1, &p2, ctx).map_err(|e| e.to_string())?;
    let verdict = rule_verdict(&p1, &p2).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "premises:  {}; {}", t.premises[0], t.premises[1]);
    let _ = writeln!(out, "equations: {}", t.system);
    let _ = writeln!(out, "literal:   {}; {}", t.literal[0].display(ctx), t.literal[1].display(ctx));
    if t.both_particular {
        let _ = writeln!(out, "note:      both premises are particular");
    }
    let _ = writeln!(out, "rule:      {verdict}");
    let mut rule_checks = Vec::new();
    if let Some(c) = verdict.conclusion {
        for conv in [Convention::NONE, Convention::MIDDLE, Convention::TERMS] {
            let arg = oracle::Argument::syllogism(ctx, t.literal.to_vec(), c.literal_form(ctx));
            let v = oracle::valid(&arg, conv, ctx, 1).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "           {} under {conv}", if v.valid { "valid" } else { "not valid" });
            rule_checks.push(oracle::verdict_json(&arg, conv, &v, ctx));
        }
    }
    let mut derived = Vec::new();
    for kind in targets_for(&t.premises[0]) {
        let d = run_argument(&t.system, kind).map_err(|e| e.to_string())?;
        let hit =
            vanish_search(&d.solution).map_err(|e| e.to_string())?.into_iter().find(|h| h.substitution.is_empty());
        let reading = hit.as_ref().and_then(|h| h.reading);
        let _ = write!(out, "derived:   {d}");
        let mut certified = None;
        if let Some(r) = reading {
            let v = certify(&t.system, &r, Convention::SELECTION).map_err(|e| e.to_string())?;
            let _ = write!(
                out,
                "  => {r} ({} under {})",
                if v.valid { "certified" } else { "not certified" },
                Convention::SELECTION
            );
            certified = Some(v.valid);
        }
        out.push('\n');
        derived.push(json!({
            "target": kind.name(),
            "conclusion": d.expression.to_string(),
            "reading": reading.map(|r| r.to_string()),
            "certified": certified,
        }));
    }
    let json = json!({
        "premises": [t.premises[0].to_string(), t.premises[1].to_string()],
        "equations": t.system.to_string(),
        "literal": [t.literal[0].display(ctx), t.literal[1].display(ctx)],
        "both_particular": t.both_particular,
        "rule": verdict.rule.map(|r| r.to_string()),
        "rule_conclusion": verdict.conclusion.map(|c| c.to_string()),
        "rule_checks": rule_checks,
        "derived": derived,
    });
    Ok(Output::ok(out, json))
}

fn oracle_command(
    which: &OracleWhich,
    conv: Convention,
    c_max: Option<u8>,
    premises: &str,
    ctx: &Arc<Context>,
) -> Result<Output, String> {
    if let Some(id) = which.form {
        let f = condensed_form(id).map_err(|e| e.to_string())?;
        let v = check_form(&f, conv, ctx, c_max.unwrap_or(2)).map_err(|e| e.to_string())?;
        let mut text = format!("form {id}: {}\nconvention: {conv}\n", f.display());
        match v.first_failure() {
            None => {
                let _ = writeln!(text, "valid: all 8 instances hold in every model ({} models)", v.models_checked);
            }
            Some(fail) => {
                let _ = writeln!(text, "invalid: {}", fail.argument.display(ctx));
                if let Some(m) = &fail.verdict.countermodel {
                    let _ = writeln!(text, "countermodel: {}", m.display(ctx));
                }
            }
        }
        return Ok(Output::ok(text, oracle::form_json(&v, ctx)));
    }
    if let Some(n) = which.pair {
        let pair = usize::from(n)
            .checked_sub(1)
            .and_then(|i| no_conclusion_pairs().get(i).cloned())
            .ok_or_else(|| format!("--pair: expected 1 or 2, got {n}"))?;
        let results = check_no_conclusion(&pair, conv, ctx, c_max.unwrap_or(2)).map_err(|e| e.to_string())?;
        let mut text = format!("premises: {}\nconvention: {conv}\n", pair.display());
        let mut records = Vec::new();
        for (premises, entailed) in &results {
            let p: Vec<String> = premises.iter().map(|s| s.display(ctx)).collect();
            let e: Vec<String> = entailed.iter().map(|s| s.display(ctx)).collect();
            let _ = writeln!(
                text,
                "{}: {}",
                p.join("; "),
                if e.is_empty() { "no conclusion".into() } else { e.join("; ") }
            );
            records.push(json!({"premises": p, "entailed": e}));
        }
        return Ok(Output::ok(
            text,
            json!({"pair": pair.display(), "convention": conv.to_string(), "instances": records}),
        ));
    }
    let k = which.cardinality.expect("one of the group is present");
    let sys = EquationSystem::parse(premises, ctx).map_err(|e| e.to_string())?;
    let terms: Vec<VarId> = ["x", "y", "z"]
        .into_iter()
        .map(|n| ctx.expect_var(n))
        .filter(|v| *v == ctx.expect_var("x") || sys.variables().contains(v))
        .collect();
    let class = Poly::var(ctx, ctx.expect_var("x"));
    let c_max = c_max.unwrap_or(3);
    let v = check_cardinality_entailment(sys.equations(), &terms, &class, k, c_max).map_err(|e| e.to_string())?;
    let mut text = format!("premises: {sys}\n|X| >= {k}: {}\n", if v.entailed { "entailed" } else { "not entailed" });
    if let Some(m) = &v.countermodel {
        let _ = writeln!(text, "countermodel: {}", m.display(ctx));
    }
    let _ = writeln!(text, "models checked: {} (counts up to {c_max})", v.models_checked);
    let mut record = json!({
        "argument": format!("{sys} therefore |x| >= {k}"),
        "convention": "none",
        "valid": v.entailed,
        "models_checked": v.models_checked,
    });
    if let Some(m) = &v.countermodel {
        record["countermodel"] = m.to_json(ctx);
    }
    Ok(Output::ok(text, record))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Paper => out.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("values serialize");
            s.push('\n');
            s
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(out.status)
}
