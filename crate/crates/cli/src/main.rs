use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nakayama_core::homotopy::{
    build_tilting_long_relation, build_tilting_omega, has_omega_tilting, long_relation_algebra,
    long_relation_endomorphism_algebra, stalk_sum,
};
use nakayama_core::{
    build_a_big_omega, build_a_omega, classify, derived_invariant_check, euler_nonnegative, explain_wildness,
    parse_presentation, run_corpus, singularity_descriptor, verify_tilting, CorpusConfig, Error, FieldKind,
    GeneralPresentation, NakayamaPresentation, Verdict,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "nakayama", version, about = "Derived representation type of Nakayama algebras")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide derived tame or wild, with witness and condition report.
    Classify(Input),
    /// Build the contracted gentle algebra and its skewed-gentle model.
    Construct(Input),
    /// Singularity-category descriptor of a tame cycle algebra.
    Singularity(Input),
    /// Compare relation counts of two tame cycle algebras.
    Invariant(Pair),
    /// Build a two-term tilting complex and check it in the homotopy category.
    VerifyTilting {
        #[command(flatten)]
        input: Input,
        /// `Q` or a prime `p`.
        #[arg(long, default_value = "Q")]
        field: FieldKind,
    },
    /// Run the invariant suite over a seeded random corpus.
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include per-item reports.
        #[arg(long)]
        items: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Inline presentation such as `cycle n=3 rel=(0,3),(1,3)`, or `-` for stdin.
    presentation: Option<String>,
    #[arg(long, conflicts_with = "presentation")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Pair {
    /// Two inline presentations; `-` reads one from stdin.
    #[arg(num_args = 0..=2)]
    presentations: Vec<String>,
    #[arg(long)]
    file: Vec<PathBuf>,
}

enum Failure {
    Error(Error),
    /// The command ran but a check failed.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn read_source(inline: Option<&str>, file: Option<&PathBuf>) -> Result<String, Error> {
    let io_err = |e: io::Error| Error::Invalid(e.to_string());
    match (inline, file) {
        (Some("-"), _) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        }
        (Some(s), _) => Ok(s.to_string()),
        (None, Some(p)) => fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
        (None, None) => Err(Error::Invalid("no presentation given".into())),
    }
}

fn load(input: &Input) -> Result<NakayamaPresentation, Error> {
    parse_presentation(read_source(input.presentation.as_deref(), input.file.as_ref())?.trim())
}

fn load_pair(pair: &Pair) -> Result<(NakayamaPresentation, NakayamaPresentation), Error> {
    let mut texts = Vec::new();
    for s in &pair.presentations {
        texts.push(read_source(Some(s), None)?);
    }
    for p in &pair.file {
        texts.push(read_source(None, Some(p))?);
    }
    if texts.len() != 2 {
        return Err(Error::Invalid(format!("expected two presentations, got {}", texts.len())));
    }
    Ok((parse_presentation(texts[0].trim())?, parse_presentation(texts[1].trim())?))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn summary(a: &NakayamaPresentation) -> Value {
    json!({
        "presentation": a.to_string(),
        "dimension": a.dimension(),
        "kupisch": a.kupisch_series().0,
        "relations": a.relation_names(),
    })
}

fn cmd_classify(a: &NakayamaPresentation) -> Result<Value, Failure> {
    let c = classify(a);
    let mut out = summary(a);
    out["classification"] = to_value(&c);
    if !a.kind().is_cycle() {
        out["euler"] = to_value(&euler_nonnegative(a)?);
    }
    if c.verdict == Verdict::DerivedWild {
        out["explanation"] = to_value(&explain_wildness(a)?);
    }
    Ok(out)
}

fn cmd_construct(a: &NakayamaPresentation) -> Result<Value, Failure> {
    if !a.kind().is_cycle() {
        return Err(Error::WrongKind { expected: "cycle" }.into());
    }
    if classify(a).verdict == Verdict::DerivedWild {
        return Err(Error::Wild.into());
    }
    let om = build_a_omega(a)?;
    let big = build_a_big_omega(&om.triple)?;
    let mut out = summary(a);
    let Value::Object(fields) = to_value(&om) else {
        unreachable!("contraction serializes to an object")
    };
    for (k, v) in fields {
        out[k] = v;
    }
    out["a_big_omega"] = to_value(&big);
    Ok(out)
}

fn cmd_singularity(a: &NakayamaPresentation) -> Result<Value, Failure> {
    let d = singularity_descriptor(a)?;
    let mut out = summary(a);
    out["descriptor"] = to_value(&d);
    out["category"] = Value::String(d.to_string());
    Ok(out)
}

fn cmd_invariant(a: &NakayamaPresentation, b: &NakayamaPresentation) -> Result<Value, Failure> {
    let r = derived_invariant_check(a, b)?;
    Ok(json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "report": to_value(&r),
    }))
}

/// Picks the construction that applies to `a` and its expected endomorphism algebra.
fn tilting_for(a: &NakayamaPresentation) -> Result<(&'static str, nakayama_core::TiltingComplex, GeneralPresentation), Error> {
    if has_omega_tilting(a) {
        let om = build_a_omega(a)?;
        return Ok(("omega", build_tilting_omega(a)?, build_a_big_omega(&om.triple)?));
    }
    if a.kind().is_cycle() && a.n() >= 4 && long_relation_algebra(a.n()).is_ok_and(|b| b == *a) {
        return Ok((
            "long_relation",
            build_tilting_long_relation(a)?,
            long_relation_endomorphism_algebra(a.n())?,
        ));
    }
    Ok(("stalks", stalk_sum(a)?, GeneralPresentation::from_nakayama(a)))
}

fn cmd_verify_tilting(a: &NakayamaPresentation, field: FieldKind) -> Result<Value, Failure> {
    let (construction, t, expected) = tilting_for(a)?;
    let report = verify_tilting(a, &t, &expected, field)?;
    let mut out = summary(a);
    out["construction"] = Value::String(construction.into());
    out["tilting"] = to_value(&t);
    out["report"] = to_value(&report);
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn cmd_corpus(config: CorpusConfig, items: bool) -> Result<Value, Failure> {
    let s = run_corpus(config)?;
    let mut out = to_value(&s);
    let failing: Vec<Value> = s.items.iter().filter(|r| !r.violations.is_empty()).map(to_value).collect();
    if !items {
        out.as_object_mut().expect("object").remove("items");
    }
    out["failing_items"] = Value::Array(failing);
    if s.violations == 0 {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

const INLINE_WIDTH: usize = 88;

/// One-line rendering of any JSON value.
fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter().map(|(k, v)| format!("{k}: {}", compact(v))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn render_object(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in m {
        let line = compact(v);
        if pad.len() + k.len() + line.len() <= INLINE_WIDTH || !(v.is_object() || v.is_array()) {
            out.push_str(&format!("{pad}{k}: {line}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        match v {
            Value::Object(inner) => render_object(inner, indent + 1, out),
            Value::Array(xs) => render_items(xs, indent + 1, out),
            _ => unreachable!(),
        }
    }
}

fn render_items(xs: &[Value], indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for x in xs {
        let line = compact(x);
        match x {
            Value::Object(m) if pad.len() + line.len() > INLINE_WIDTH => {
                out.push_str(&format!("{pad}-\n"));
                render_object(m, indent + 1, out);
            }
            Value::Array(inner) if pad.len() + line.len() > INLINE_WIDTH => {
                out.push_str(&format!("{pad}-\n"));
                render_items(inner, indent + 1, out);
            }
            _ => out.push_str(&format!("{pad}- {line}\n")),
        }
    }
}

fn emit(v: &Value, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(v).expect("json"));
    } else {
        let mut s = String::new();
        match v {
            Value::Object(m) => render_object(m, 0, &mut s),
            other => s = compact(other) + "\n",
        }
        print!("{s}");
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Classify(i) => cmd_classify(&load(i)?),
        Command::Construct(i) => cmd_construct(&load(i)?),
        Command::Singularity(i) => cmd_singularity(&load(i)?),
        Command::Invariant(p) => {
            let (a, b) = load_pair(p)?;
            cmd_invariant(&a, &b)
        }
        Command::VerifyTilting { input, field } => cmd_verify_tilting(&load(input)?, *field),
        Command::Corpus {
            seed,
            n_max,
            count,
            jobs,
            items,
        } => cmd_corpus(
            CorpusConfig {
                seed: *seed,
                n_max: *n_max,
                count: *count,
                jobs: *jobs,
            },
            *items,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&v, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            emit(&v, cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            if cli.json {
                emit(&json!({"error": {"code": e.code(), "message": e.to_string()}}), true);
            }
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
