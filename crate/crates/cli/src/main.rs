//! `whsl`: command-line front end for the classification library.

mod render;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use whsl_core::enumerator::{classify, divisor_search, special_alpha_nonpositive, ClassifyOptions};
use whsl_core::graded_ring::{
    a_invariant, deg_d, genus, geometric_genus, hilbert_coeffs, normality_filter, WeightedType,
};
use whsl_core::paper::verify_paper;
use whsl_core::resolution::{build_graph, intersection_matrix, is_negative_definite, to_dot};
use whsl_core::{Error, FractionalDivisor};

pub const SCHEMA_VERSION: &str = "1";

const ALPHA_GUARD: i64 = 12;

#[derive(Parser, Debug)]
#[command(name = "whsl", version, about = "Classify weighted homogeneous surface singularities by a-invariant")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for the divisor search (default: available parallelism).
    #[arg(long, global = true, env = "WHSL_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
enum Command {
    /// a-invariant, deg D, genus, p_g, Hilbert coefficients and normality verdict of a type.
    Invariants {
        a: u64,
        b: u64,
        c: u64,
        h: u64,
        /// Last degree of the Hilbert series to print (default 3h).
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// All types and divisors with the given a-invariant.
    Enumerate {
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        /// Horizon for the dimension comparison (default 3h).
        #[arg(long)]
        max_n: Option<u64>,
        /// Allow alpha above 12.
        #[arg(long)]
        force: bool,
    },
    /// Resolution graphs in DOT form.
    Resolve(ResolveArgs),
    /// Compare the enumeration with the published case listings.
    VerifyPaper {
        /// a-invariant in 1..=6; all of them if omitted.
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Closed-form answer for alpha <= 0.
    Families {
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
    },
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("input").required(true).multiple(false)))]
struct ResolveArgs {
    /// Divisor as JSON: {"genus":g,"degE":e,"branches":[[p,q],...]}.
    #[arg(long, group = "input")]
    divisor: Option<String>,
    /// Weighted type a b c h; every realizing divisor is resolved.
    #[arg(long = "type", group = "input", num_args = 4, value_names = ["A", "B", "C", "H"])]
    wtype: Option<Vec<u64>>,
    /// Every entry of the classification for this a-invariant.
    #[arg(long, group = "input")]
    alpha: Option<u64>,
    /// Fail with exit code 4 unless every intersection matrix is negative definite.
    #[arg(long)]
    check: bool,
}

/// Failure with a stable exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
    fn no_realization(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
    fn verification(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoRealization(_) | Error::NotNormal(_) => Failure::no_realization(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// What a command produced: JSON payload, table text, and an optional failure after printing.
struct Outcome {
    payload: Value,
    table: String,
    failure: Option<Failure>,
}

impl Outcome {
    fn ok(payload: Value, table: String) -> Self {
        Self { payload, table, failure: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = ClassifyOptions { workers: cli.workers, max_n: None };
    match run(&cli.command, opts) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => {
                    let record = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": &cli.command,
                        "payload": out.payload,
                    });
                    serde_json::to_string_pretty(&record).expect("serializable") + "\n"
                }
                Format::Table => out.table,
            };
            // a closed pipe (e.g. `| head`) is not an error
            if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("whsl: {e}");
                    return ExitCode::FAILURE;
                }
            }
            match out.failure {
                Some(f) => {
                    eprintln!("whsl: {}", f.message);
                    ExitCode::from(f.code)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("whsl: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: &Command, opts: ClassifyOptions) -> Result<Outcome, Failure> {
    match cmd {
        Command::Invariants { a, b, c, h, max_n } => invariants(*a, *b, *c, *h, *max_n),
        Command::Enumerate { alpha, max_n, force } => {
            if *alpha <= 0 {
                return families(*alpha);
            }
            if *alpha > ALPHA_GUARD && !force {
                return Err(Failure::usage(format!(
                    "alpha {alpha} exceeds {ALPHA_GUARD}; pass --force to run anyway"
                )));
            }
            enumerate(*alpha as u64, ClassifyOptions { max_n: *max_n, ..opts })
        }
        Command::Resolve(args) => resolve(args, opts),
        Command::VerifyPaper { alpha } => verify(*alpha, opts),
        Command::Families { alpha } => families(*alpha),
    }
}

fn invariants(a: u64, b: u64, c: u64, h: u64, max_n: Option<u64>) -> Result<Outcome, Failure> {
    let wt = WeightedType::new(a, b, c, h)?;
    let alpha = a_invariant(&wt);
    let n = max_n.unwrap_or(3 * h);
    let coeffs = hilbert_coeffs(&wt, n)?;
    let (g, pg) = if alpha >= 0 {
        (Some(genus(&wt)?), Some(geometric_genus(&wt)?))
    } else {
        (None, None)
    };
    let violations = normality_filter(&wt, alpha);
    let payload = json!({
        "type": wt,
        "alpha": alpha,
        "degD": deg_d(&wt),
        "genus": g,
        "p_g": pg,
        "hilbert": coeffs,
        "normality": { "pass": violations.is_empty(), "violations": violations },
    });
    let table = render::invariants(&wt, alpha, g, pg, &coeffs, &violations);
    Ok(Outcome::ok(payload, table))
}

fn enumerate(alpha: u64, opts: ClassifyOptions) -> Result<Outcome, Failure> {
    let entries = classify(alpha, opts)?;
    let payload = json!({ "alpha": alpha, "count": entries.len(), "entries": entries });
    let table = render::entries(alpha, &entries);
    Ok(Outcome::ok(payload, table))
}

struct Resolved {
    label: String,
    divisor: FractionalDivisor,
}

fn resolve(args: &ResolveArgs, opts: ClassifyOptions) -> Result<Outcome, Failure> {
    let targets: Vec<Resolved> = if let Some(text) = &args.divisor {
        let divisor: FractionalDivisor =
            serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad divisor JSON: {e}")))?;
        vec![Resolved { label: divisor.to_string(), divisor }]
    } else if let Some(t) = &args.wtype {
        let wt = WeightedType::new(t[0], t[1], t[2], t[3])?;
        let ds = divisor_search(&wt)?;
        if ds.is_empty() {
            return Err(Failure::no_realization(format!("type {wt} has no divisor realization")));
        }
        ds.into_iter()
            .map(|d| Resolved { label: format!("{wt} {d}"), divisor: d })
            .collect()
    } else if let Some(alpha) = args.alpha {
        if alpha == 0 {
            return Err(Failure::usage("alpha must be positive"));
        }
        classify(alpha, opts)?
            .into_iter()
            .flat_map(|e| {
                e.divisors
                    .into_iter()
                    .map(move |d| Resolved { label: format!("{} {d}", e.wt), divisor: d })
            })
            .collect()
    } else {
        unreachable!("clap enforces one input")
    };

    let mut graphs = Vec::new();
    let mut table = String::new();
    let mut bad = Vec::new();
    for t in &targets {
        let g = build_graph(&t.divisor)?;
        let definite = is_negative_definite(&intersection_matrix(&g));
        if !definite {
            bad.push(t.label.clone());
        }
        let dot = to_dot(&g);
        table.push_str(&format!("// {}\n{dot}", t.label));
        graphs.push(json!({
            "source": t.label,
            "divisor": t.divisor,
            "graph": g,
            "negativeDefinite": definite,
            "dot": dot,
        }));
    }
    let failure = (args.check && !bad.is_empty())
        .then(|| Failure::verification(format!("not negative definite: {}", bad.join(", "))));
    Ok(Outcome {
        payload: json!({ "graphs": graphs }),
        table,
        failure,
    })
}

fn verify(alpha: Option<u64>, opts: ClassifyOptions) -> Result<Outcome, Failure> {
    let alphas: Vec<u64> = match alpha {
        Some(a) if (1..=6).contains(&a) => vec![a],
        Some(a) => return Err(Failure::usage(format!("alpha must be in 1..=6, got {a}"))),
        None => (1..=6).collect(),
    };
    let mut reports = Vec::new();
    let mut table = String::new();
    let mut missing = 0;
    for a in alphas {
        let rec = verify_paper(a, opts)?;
        missing += rec.missing.len();
        if !table.is_empty() {
            table.push('\n');
        }
        table.push_str(&rec.to_string());
        reports.push(rec);
    }
    let failure = (missing > 0).then(|| Failure::verification(format!("{missing} printed cases not reproduced")));
    Ok(Outcome {
        payload: json!({ "reports": reports }),
        table,
        failure,
    })
}

fn families(alpha: i64) -> Result<Outcome, Failure> {
    let items = special_alpha_nonpositive(alpha)?;
    let table = render::families(alpha, &items);
    Ok(Outcome::ok(json!({ "alpha": alpha, "items": items }), table))
}
