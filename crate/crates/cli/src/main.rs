//! `dsp`: JSON front end for dsp-core.
//!
//! Every command prints one JSON document (or JSON lines for `enumerate`).
//! Exit status 0 is success, 1 a negative decision, 2 an input error; input
//! errors print `{"error": {"kind": …, "message": …}}`.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use dsp_core::catalog::{base_list, enumerate_rigid, MvTuple};
use dsp_core::constructions::{
    build_almost_special, build_nice, make_example, make_merged, prepare_construction, verify_tuple,
    ExampleId, MatrixTuple,
};
use dsp_core::exactmat::{parse_rat, ri, Rat};
use dsp_core::jnf::{classify_family, AlmostCase, JnfTuple};
use dsp_core::reduction::{condition_report, is_good, reduce_chain, verdict, Status};
use dsp_core::spectra::{
    distance, find_relation, genericize, spectra_invariants, summarize, GenericizeMode, RelationMode, Spectrum,
    DEFAULT_U_MAX,
};
use dsp_core::DspError;

const DEFAULT_MAX_N: usize = 12;

#[derive(Parser)]
#[command(name = "dsp", version, about = "Exact tools for the Deligne-Simpson problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    A,
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Goodness of a Jordan-form tuple and its reduction chain.
    Check { input: PathBuf },
    /// Reduction chain only.
    Reduce { input: PathBuf },
    /// q, d, m0 and primitivity of xi for a spectrum.
    Spectra { input: PathBuf },
    /// Genericity: first violated relation and distance, or a generic lift.
    Generic {
        input: PathBuf,
        /// Require sums in Z also in the additive version.
        #[arg(long)]
        strong: bool,
        #[arg(long, default_value_t = 1)]
        min_kappa: usize,
        /// Leave out (gamma*) and its multiples when measuring distance.
        #[arg(long)]
        exclude_gamma_star: bool,
        /// Lift the (multiplicative) exponents to additive ones at distance >= H.
        #[arg(long, value_name = "H")]
        lift: Option<u64>,
        #[arg(long, value_enum, default_value = "a")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_U_MAX)]
        u_max: u64,
    },
    /// Verdict of the decision table.
    Verdict {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_kappa: usize,
    },
    /// Case label of a tuple of single-label forms, or a construction plan.
    Classify {
        input: PathBuf,
        #[arg(long)]
        plan: bool,
    },
    /// Build an explicit tuple of matrices.
    Construct {
        #[arg(long, value_name = "exK", conflicts_with_all = ["nice", "almost_special"])]
        example: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// JSON array of zero-sum blocks to glue.
        #[arg(long, value_name = "FILE", requires = "m0")]
        nice: Option<PathBuf>,
        #[arg(long)]
        m0: Option<usize>,
        #[arg(long, value_name = "CASE", requires = "g")]
        almost_special: Option<String>,
        #[arg(long)]
        g: Option<usize>,
        /// Comma-separated weights, e.g. "1,2,-3/2".
        #[arg(long)]
        alphas: Option<String>,
        /// Draw random distinct nonzero integer weights from the seed.
        #[arg(long)]
        random_alphas: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Merge of two minimal nilpotent classes.
    Merge {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        r2: usize,
    },
    /// Certified report on a matrix tuple.
    Verify {
        input: PathBuf,
        /// Jordan-form tuple the matrices should realize.
        #[arg(long, value_name = "FILE")]
        expected: Option<PathBuf>,
    },
    /// Catalog records as JSON lines.
    Enumerate {
        #[arg(long, conflicts_with = "base_list")]
        rigidity: Option<i64>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, value_name = "H", allow_hyphen_values = true)]
        base_list: Option<i64>,
    },
}

enum Outcome {
    Doc(Value, bool),
    Lines(Vec<Value>),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_input(path: &PathBuf) -> Result<String, DspError> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| DspError::Parse(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| DspError::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, DspError> {
    serde_json::from_str(&read_input(path)?).map_err(|e| DspError::Parse(e.to_string()))
}

fn max_n() -> Result<usize, DspError> {
    match std::env::var("DSP_MAX_N") {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(v) => v.trim().parse().map_err(|_| DspError::Parse(format!("DSP_MAX_N={v:?} is not a number"))),
    }
}

fn read_spectrum(path: &PathBuf) -> Result<Spectrum, DspError> {
    let s: Spectrum = parse_json(path)?;
    let cap = max_n()?;
    if s.n() > cap {
        return Err(DspError::SizeUnsupported { what: format!("relation scan (DSP_MAX_N = {cap})"), n: s.n() });
    }
    Ok(s)
}

fn parse_alphas(s: &str) -> Result<Vec<Rat>, DspError> {
    s.split(',').map(parse_rat).collect()
}

fn random_alphas(k: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rat> = Vec::with_capacity(k);
    while out.len() < k {
        let v = ri(rng.gen_range(-50..=50));
        if v != ri(0) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn weights(alphas: &Option<String>, random: bool, seed: u64, k: usize) -> Result<Option<Vec<Rat>>, DspError> {
    match (alphas, random) {
        (Some(s), _) => parse_alphas(s).map(Some),
        (None, true) => Ok(Some(random_alphas(k, seed))),
        (None, false) => Ok(None),
    }
}

fn run(cmd: Command) -> Result<Outcome, DspError> {
    match cmd {
        Command::Check { input } => {
            let t: JnfTuple = parse_json(&input)?;
            let chain = reduce_chain(&t);
            let good = is_good(&t);
            Ok(Outcome::Doc(json!({"good": good, "n_s": chain.n_s(), "chain": to_value(&chain)}), good))
        }
        Command::Reduce { input } => {
            let t: JnfTuple = parse_json(&input)?;
            Ok(Outcome::Doc(to_value(&reduce_chain(&t)), true))
        }
        Command::Spectra { input } => {
            let s = read_spectrum(&input)?;
            Ok(Outcome::Doc(to_value(&spectra_invariants(&s)?), true))
        }
        Command::Generic { input, strong, min_kappa, exclude_gamma_star, lift, mode, u_max } => {
            let s = read_spectrum(&input)?;
            if let Some(h) = lift {
                let mode = match mode {
                    ModeArg::A => GenericizeMode::A,
                    ModeArg::B => GenericizeMode::B,
                };
                let out = genericize(s.exponents(), s.tuple(), h, mode, u_max)?;
                let lifted = Spectrum::new(s.tuple().clone(), out.clone())?;
                let exclude = matches!(mode, GenericizeMode::B);
                let d = distance(&lifted, exclude, 1);
                return Ok(Outcome::Doc(
                    json!({"exponents": to_value(&out), "distance": d.map(|x| x.to_string())}),
                    true,
                ));
            }
            let rmode = if strong { RelationMode::StronglyGeneric } else { RelationMode::Generic };
            let rel = find_relation(&s, rmode, min_kappa);
            let d = distance(&s, exclude_gamma_star, min_kappa);
            let generic = rel.is_none();
            Ok(Outcome::Doc(
                json!({
                    "generic": generic,
                    "relation": to_value(&rel),
                    "distance": d.map(|x| x.to_string()),
                }),
                generic,
            ))
        }
        Command::Verdict { input, min_kappa } => {
            let s = read_spectrum(&input)?;
            let summary = summarize(&s, min_kappa)?;
            let v = verdict(s.tuple(), &summary);
            let ok = v.status != Status::NotSolvable;
            Ok(Outcome::Doc(json!({"verdict": to_value(&v), "summary": to_value(&summary)}), ok))
        }
        Command::Classify { input, plan } => {
            let t: JnfTuple = parse_json(&input)?;
            if plan {
                return Ok(Outcome::Doc(to_value(&prepare_construction(&t)?), true));
            }
            Ok(Outcome::Doc(json!({"label": to_value(&classify_family(&t)?)}), true))
        }
        Command::Construct { example, n, nice, m0, almost_special, g, alphas, random_alphas, seed } => {
            let t: MatrixTuple = if let Some(id) = example {
                let id: ExampleId = id.parse()?;
                let base = make_example(id, n.unwrap_or(id.default_size()))?;
                match weights(&alphas, random_alphas, seed, base.alphas.len())? {
                    Some(a) => base.with_alphas(a)?,
                    None => base,
                }
            } else if let Some(path) = nice {
                let blocks: Vec<MatrixTuple> = parse_json(&path)?;
                let k = blocks.first().map_or(0, |b| b.mats.len());
                build_nice(&blocks, m0.unwrap_or(1), weights(&alphas, random_alphas, seed, k)?)?
            } else if let Some(case) = almost_special {
                let case: AlmostCase = case.parse()?;
                let k = if case == AlmostCase::A1 { 4 } else { 3 };
                build_almost_special(case, g.unwrap_or(2), weights(&alphas, random_alphas, seed, k)?)?
            } else {
                return Err(DspError::Parse("one of --example, --nice, --almost-special is required".into()));
            };
            Ok(Outcome::Doc(to_value(&t), true))
        }
        Command::Merge { n, r1, r2 } => {
            let (a, a1, a2) = make_merged(n, r1, r2)?;
            Ok(Outcome::Doc(json!({"a": to_value(&a), "a_prime": to_value(&a1), "a_merged": to_value(&a2)}), true))
        }
        Command::Verify { input, expected } => {
            let t: MatrixTuple = parse_json(&input)?;
            let e: Option<JnfTuple> = expected.as_ref().map(parse_json).transpose()?;
            let r = verify_tuple(&t, e.as_ref());
            let ok = r.zero_sum && r.centralizer_trivial && r.types_match != Some(false);
            Ok(Outcome::Doc(to_value(&r), ok))
        }
        Command::Enumerate { rigidity, n_max, p, base_list: h } => {
            let tuples: Vec<MvTuple> = match (rigidity, h) {
                (_, Some(h)) => base_list(h, n_max)?,
                (Some(2) | None, None) => enumerate_rigid(n_max, p)?,
                (Some(r), None) => return Err(DspError::UnsupportedIndex(r)),
            };
            Ok(Outcome::Lines(
                tuples
                    .iter()
                    .map(|t| json!({"tuple": to_value(t), "report": to_value(&condition_report(&t.to_jnf()))}))
                    .collect(),
            ))
        }
    }
}

fn error_doc(kind: &str, message: &str) -> Value {
    json!({"error": {"kind": kind, "message": message}})
}

fn emit(v: &Value) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            emit(&error_doc("Usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Doc(v, ok)) => {
            emit(&v);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Outcome::Lines(lines)) => {
            for l in &lines {
                emit(l);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&error_doc(e.kind(), &e.to_string()));
            ExitCode::from(2)
        }
    }
}
