//! `ewsg`: tables, checks, branching, spectra, irreducibility certificates and
//! canonical forms from the command line.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ewsg::branching::weyl_dim;
use ewsg::canonical::{function_values, reduce_to_canonical, template};
use ewsg::cases::{CaseSpec, Params, LETTERS};
use ewsg::groups::rng_for;
use ewsg::matrix::fmt_q;
use ewsg::semigroup::certify_case;
use ewsg::spectrum::{case1_character, case_spectrum, diag_spectrum_with, Chain, DEFAULT_DEGREE_BOUND};
use ewsg::suite::verify_case;
use ewsg::verify::{sample_nonvanishing, CheckReport, DEFAULT_TRIALS};
use ewsg::{Error, Execution, ExtendedWeight, Weight};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ewsg", version, about = "Extended weight semigroups of spherical homogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct CaseArgs {
    /// Row of the table, 1 to 8.
    #[arg(long)]
    case: u8,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Generators of the extended weight semigroup.
    Table {
        #[command(flatten)]
        case: CaseArgs,
        /// Degree bound for the spectrum of Cases 1 and 2.
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
    },
    /// Runs every check for one case.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Restriction of a highest weight along the chain of Case 1 or 2.
    Branch {
        #[command(flatten)]
        case: CaseArgs,
        /// Coefficients of the weight of the larger group, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
    },
    /// Spectrum of Case 1 or 2 up to a degree bound.
    Spectrum {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
    },
    /// Irreducibility certificates of the table generators (Cases 3 to 8).
    Irreducible {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Canonical form of a random point, with its transcript.
    Canonical {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Printed output and whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

fn params(a: &CaseArgs) -> Params {
    let uses_m = matches!(a.case, 3 | 4 | 5 | 7 | 8);
    let m = if uses_m { a.m.unwrap_or(1) } else { 0 };
    let l = if a.case == 7 { a.l.unwrap_or(1) } else { 0 };
    Params::new(a.n, m, l)
}

fn spec(a: &CaseArgs) -> Result<CaseSpec, Error> {
    CaseSpec::new(a.case, params(a))
}

fn header(command: &str, a: &CaseArgs) -> serde_json::Map<String, Value> {
    let p = params(a);
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(1));
    m.insert("command".into(), json!(command));
    m.insert("case".into(), json!(a.case));
    m.insert("params".into(), json!({"n": p.n, "m": p.m, "l": p.l}));
    m
}

fn json_out(mut m: serde_json::Map<String, Value>, passed: bool) -> Outcome {
    m.insert("passed".into(), json!(passed));
    let text = serde_json::to_string_pretty(&Value::Object(m)).expect("json") + "\n";
    Outcome { text, passed }
}

fn tsv(rows: Vec<Vec<String>>) -> String {
    rows.into_iter().map(|r| r.join("\t") + "\n").collect()
}

fn coeffs(w: &Weight) -> String {
    w.coeffs()
        .iter()
        .map(|c| c.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn weight_json(w: &ExtendedWeight) -> Value {
    json!({"label": w.render(&LETTERS), "weight": w})
}

/// With a character on `H` only the extended weights need to be multiplicity free.
fn spectrum_ok(s: &CaseSpec, multiplicity_free: bool, stable: bool) -> bool {
    stable && (multiplicity_free || s.has_character())
}

fn table(a: &CaseArgs, degree_bound: usize) -> Result<Outcome, Error> {
    let s = spec(a)?;
    let format = a.format.unwrap_or(Format::Json);
    let (rows, passed, extra): (Vec<(String, ExtendedWeight)>, bool, Option<Value>) = if a.case <= 2 {
        let sp = case_spectrum(a.case, a.n, degree_bound, Execution::Parallel)?;
        let listed = s.table_generators();
        let mut table: Vec<Weight> = match &listed {
            Ok(g) => g.iter().map(|(_, w)| w.weight.clone()).collect(),
            Err(_) => vec![],
        };
        table.sort();
        let matches = table == sp.indecomposables;
        let rows: Vec<(String, ExtendedWeight)> = sp
            .indecomposables
            .iter()
            .map(|w| {
                let c = if a.case == 1 { case1_character(a.n, w).unwrap_or(0) } else { 0 };
                let label = listed
                    .as_ref()
                    .ok()
                    .and_then(|g| g.iter().find(|(_, e)| &e.weight == w).map(|(n, _)| n.clone()))
                    .unwrap_or_default();
                (label, ExtendedWeight::new(w.clone(), c))
            })
            .collect();
        let extra = json!({
            "degree_bound": degree_bound,
            "multiplicity_free": sp.multiplicity_free,
            "stable": sp.stable,
            "matches_table": matches,
        });
        let rows = match listed {
            Ok(g) if matches => g,
            _ => rows,
        };
        (rows, spectrum_ok(&s, sp.multiplicity_free, sp.stable) && matches, Some(extra))
    } else {
        (s.table_generators()?, true, None)
    };
    let rank = ewsg::weight::rank_of_weights(&rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>());
    let passed = passed && rank == rows.len();
    if format == Format::Tsv {
        let mut out = vec![vec!["function".into(), "weight".into(), "coefficients".into(), "char".into()]];
        for (n, w) in &rows {
            out.push(vec![n.clone(), w.render(&LETTERS), coeffs(&w.weight), w.char.to_string()]);
        }
        return Ok(Outcome { text: tsv(out), passed });
    }
    let mut m = header("table", a);
    let gens: Vec<Value> = rows
        .iter()
        .map(|(n, w)| {
            let mut v = weight_json(w);
            v["function"] = json!(n);
            v
        })
        .collect();
    m.insert("generators".into(), Value::Array(gens));
    m.insert("rank".into(), json!(rank));
    if let Some(e) = extra {
        m.insert("spectrum".into(), e);
    }
    Ok(json_out(m, passed))
}

fn reports_tsv(reports: &[CheckReport]) -> String {
    let mut rows = vec![vec!["check".into(), "subject".into(), "trials".into(), "failed".into(), "passed".into()]];
    for r in reports {
        let failed: Vec<String> = r.failed_trials.iter().map(usize::to_string).collect();
        rows.push(vec![
            r.check.clone(),
            r.subject.clone(),
            r.trials.to_string(),
            failed.join(","),
            r.passed.to_string(),
        ]);
    }
    tsv(rows)
}

fn verify(a: &CaseArgs, sm: &Sampling) -> Result<Outcome, Error> {
    if sm.trials == 0 {
        return Err(Error::Parameters("trials must be at least 1".into()));
    }
    let s = spec(a)?;
    let reports = verify_case(&s, sm.trials, sm.seed, Execution::Parallel)?;
    let passed = reports.iter().all(|r| r.passed);
    if a.format == Some(Format::Tsv) {
        return Ok(Outcome { text: reports_tsv(&reports), passed });
    }
    let mut m = header("verify", a);
    m.insert("trials".into(), json!(sm.trials));
    m.insert("seed".into(), json!(sm.seed));
    m.insert("checks".into(), serde_json::to_value(&reports).expect("json"));
    Ok(json_out(m, passed))
}

fn chain(a: &CaseArgs) -> Result<Chain, Error> {
    match a.case {
        1 => Ok(Chain::Sl(a.n)),
        2 => Ok(Chain::Spin(a.n)),
        c => Err(Error::Unsupported(format!("case {c} has no branching chain; use case 1 or 2"))),
    }
}

fn branch(a: &CaseArgs, weight: &[i64]) -> Result<Outcome, Error> {
    spec(a)?;
    let ch = chain(a)?;
    let (small, big) = ch.groups()?;
    let lambda = Weight::new(&[big], vec![weight.to_vec()])?;
    let b = ch.branch(&lambda)?;
    let dim = weyl_dim(big, &lambda)?;
    let mut total: u128 = 0;
    let mut rows = Vec::new();
    for (mu, mult) in &b.entries {
        let d = weyl_dim(small, mu)?;
        total += d * u128::from(*mult);
        rows.push((mu, *mult, d));
    }
    let passed = total == dim;
    if a.format == Some(Format::Tsv) {
        let mut out = vec![vec!["coefficients".into(), "multiplicity".into(), "dimension".into()]];
        for (mu, mult, d) in rows {
            out.push(vec![coeffs(mu), mult.to_string(), d.to_string()]);
        }
        return Ok(Outcome { text: tsv(out), passed });
    }
    let mut m = header("branch", a);
    m.insert("group".into(), json!(big.to_string()));
    m.insert("subgroup".into(), json!(small.to_string()));
    m.insert("weight".into(), json!(weight));
    m.insert("dimension".into(), json!(dim.to_string()));
    m.insert("restricted_dimension".into(), json!(total.to_string()));
    let cons: Vec<Value> = rows
        .into_iter()
        .map(|(mu, mult, d)| json!({"weight": mu.coeffs()[0], "multiplicity": mult, "dimension": d.to_string()}))
        .collect();
    m.insert("constituents".into(), Value::Array(cons));
    Ok(json_out(m, passed))
}

fn spectrum(a: &CaseArgs, degree_bound: usize) -> Result<Outcome, Error> {
    let ch = chain(a)?;
    let entries = diag_spectrum_with(ch, degree_bound, Execution::Parallel)?;
    let sp = case_spectrum(a.case, a.n, degree_bound, Execution::Parallel)?;
    let passed = spectrum_ok(&spec(a)?, sp.multiplicity_free, sp.stable);
    let indec = |w: &Weight| sp.indecomposables.contains(w);
    if a.format == Some(Format::Json) {
        let mut m = header("spectrum", a);
        m.insert("degree_bound".into(), json!(degree_bound));
        m.insert("multiplicity_free".into(), json!(sp.multiplicity_free));
        m.insert("stable".into(), json!(sp.stable));
        let es: Vec<Value> = entries
            .iter()
            .map(|e| json!({"weight": e.weight, "multiplicity": e.multiplicity, "indecomposable": indec(&e.weight)}))
            .collect();
        m.insert("entries".into(), Value::Array(es));
        return Ok(json_out(m, passed));
    }
    let mut out = vec![vec![
        "weight".into(),
        "coefficients".into(),
        "multiplicity".into(),
        "indecomposable".into(),
    ]];
    for e in &entries {
        out.push(vec![
            e.weight.render(&LETTERS),
            coeffs(&e.weight),
            e.multiplicity.to_string(),
            indec(&e.weight).to_string(),
        ]);
    }
    Ok(Outcome { text: tsv(out), passed })
}

fn irreducible(a: &CaseArgs) -> Result<Outcome, Error> {
    let s = spec(a)?;
    let verdicts = certify_case(&s)?;
    let passed = verdicts.iter().all(|v| v.irreducible);
    if a.format == Some(Format::Tsv) {
        let mut out = vec![vec!["function".into(), "weight".into(), "a1".into(), "a2".into(), "irreducible".into()]];
        for v in &verdicts {
            out.push(vec![
                v.name.clone(),
                v.weight.clone(),
                v.a1.irreducible.to_string(),
                v.a2.as_ref().map_or("-".into(), |c| c.irreducible.to_string()),
                v.irreducible.to_string(),
            ]);
        }
        return Ok(Outcome { text: tsv(out), passed });
    }
    let mut m = header("irreducible", a);
    m.insert("generators".into(), serde_json::to_value(&verdicts).expect("json"));
    Ok(json_out(m, passed))
}

fn canonical(a: &CaseArgs, seed: u64) -> Result<Outcome, Error> {
    let s = spec(a)?;
    let names: Vec<&str> = s.functions.iter().map(|f| f.name.as_str()).collect();
    let mut rng = rng_for(seed, 0);
    let (g, _) = sample_nonvanishing(&s, &names, &mut rng)?;
    let form = reduce_to_canonical(&s, &g)?;
    let values = function_values(&s, &g);
    let tpl = template(&s)?;
    let mut matches = Vec::new();
    for (sl, t) in form.slices.iter().zip(&tpl) {
        matches.push(sl.matrix == t.eval(&values)?);
    }
    let passed = matches.iter().all(|&x| x);
    if a.format == Some(Format::Tsv) {
        let mut out = vec![vec!["slice".into(), "row".into(), "column".into(), "value".into(), "template".into()]];
        for (sl, t) in form.slices.iter().zip(&tpl) {
            for (i, row) in t.entries.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    out.push(vec![
                        sl.name.clone(),
                        (i + 1).to_string(),
                        sl.columns[j].to_string(),
                        fmt_q(&sl.matrix[(i, j)]),
                        e.to_string(),
                    ]);
                }
            }
        }
        return Ok(Outcome { text: tsv(out), passed });
    }
    let mut m = header("canonical", a);
    m.insert("seed".into(), json!(seed));
    let vals: serde_json::Map<String, Value> = values.iter().map(|(k, v)| (k.clone(), json!(fmt_q(v)))).collect();
    m.insert("function_values".into(), Value::Object(vals));
    let slices: Vec<Value> = form
        .slices
        .iter()
        .zip(&tpl)
        .zip(&matches)
        .map(|((sl, t), ok)| {
            json!({"name": sl.name, "columns": sl.columns, "matrix": sl.matrix, "template": t.entries, "matches": ok})
        })
        .collect();
    m.insert("slices".into(), Value::Array(slices));
    m.insert("transcript".into(), serde_json::to_value(&form.transcript).expect("json"));
    Ok(json_out(m, passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table { case, degree_bound } => table(case, *degree_bound),
        Command::Verify { case, sampling } => verify(case, sampling),
        Command::Branch { case, weight } => branch(case, weight),
        Command::Spectrum { case, degree_bound } => spectrum(case, *degree_bound),
        Command::Irreducible { case } => irreducible(case),
        Command::Canonical { case, seed } => canonical(case, *seed),
    };
    match result {
        Ok(o) => {
            print!("{}", o.text);
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e @ (Error::Parameters(_) | Error::Unsupported(_) | Error::Length { .. } | Error::NotDominant)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
