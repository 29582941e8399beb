//! `aont` — exact verification, analysis, and construction of
//! all-or-nothing transforms from the command line.
//!
//! Exit codes: 0 when the requested check passes (or the command has no
//! verdict), 1 when a verdict fails, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use serde_json::{json, Value};

use aont::columns::ColumnSet;
use aont::format::{parse_array_file, parse_dist_file, write_array_file, ArrayFile};
use aont::randomized::{verify_randomized_perfect_security, RandomizedScheme};
use aont::search::{enumerate_aonts, SearchMode, SearchSpec};
use aont::security::{
    conditional_entropy, entropy, input_marginal_table, is_weakly_secure, mutual_information,
    SecurityVerdict, SecurityWitness, WitnessKind,
};
use aont::unbiased::{verify_aont, FailedCheck, UnbiasednessReport};
use aont::{Alphabet, Transform};

#[derive(Parser)]
#[command(name = "aont", version, about = "Exact toolkit for all-or-nothing transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an array file against the combinatorial definition
    Verify(VerifyArgs),
    /// Exact perfect/weak security analysis under an input distribution
    Analyze(AnalyzeArgs),
    /// Run the randomized protocol, or verify its security guarantee
    Randomize(RandomizeArgs),
    /// Enumerate transforms with the required structure for small parameters
    Search(SearchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Array file to check
    array: PathBuf,
    /// Protection parameter; defaults to the t declared in the file header
    #[arg(long)]
    t: Option<usize>,
    /// Emit a machine-readable report
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Array file describing the transform
    array: PathBuf,
    /// Input distribution file (same alphabet and arity as the array)
    #[arg(long)]
    dist: PathBuf,
    /// Protection parameter; defaults to the t declared in the file header
    #[arg(long)]
    t: Option<usize>,
    /// Emit a machine-readable report
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RandomizeArgs {
    /// Array file describing the transform
    array: PathBuf,
    /// Designated input columns (exactly t of them)
    #[arg(long, num_args = 1.., required = true, value_name = "COL")]
    designate: Vec<usize>,
    /// Designated symbols to encode (encode mode)
    #[arg(long, num_args = 1.., value_name = "SYM", conflicts_with = "verify", requires = "seed")]
    input: Option<Vec<String>>,
    /// Seed for the deterministic randomness (encode mode)
    #[arg(long, requires = "input")]
    seed: Option<u64>,
    /// Check the protocol's security guarantee instead of encoding
    #[arg(long, requires = "dist")]
    verify: bool,
    /// Distribution file over the designated tuple (verify mode)
    #[arg(long, requires = "verify", conflicts_with_all = ["input", "seed"])]
    dist: Option<PathBuf>,
    /// Emit a machine-readable report
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Protection parameter
    #[arg(long)]
    t: usize,
    /// Number of input (and output) coordinates
    #[arg(long)]
    s: usize,
    /// Alphabet size
    #[arg(long)]
    v: usize,
    /// Report the exact count without materializing solutions
    #[arg(long, conflicts_with_all = ["limit", "out"])]
    count_only: bool,
    /// Stop the search after this many solutions
    #[arg(long, value_name = "K")]
    limit: Option<usize>,
    /// Write each solution as an array file into this directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Keep only the representative with first row fixed from each
    /// output-translation orbit
    #[arg(long)]
    canonical: bool,
    /// Emit a machine-readable report
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Randomize(args) => run_randomize(args),
        Command::Search(args) => run_search(args),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_array(path: &Path) -> Result<ArrayFile, String> {
    parse_array_file(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}

/// `(a, b)` — tuple of symbols for a tuple of symbol indices.
fn show_tuple(alphabet: &Alphabet, tuple: &[usize]) -> String {
    let symbols: Vec<&str> = tuple
        .iter()
        .map(|&i| alphabet.symbol(i).unwrap_or("?"))
        .collect();
    format!("({})", symbols.join(", "))
}

fn tuple_json(alphabet: &Alphabet, tuple: &[usize]) -> Value {
    json!(tuple
        .iter()
        .map(|&i| alphabet.symbol(i).unwrap_or("?"))
        .collect::<Vec<_>>())
}

// ---------------------------------------------------------------- verify

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let file = load_array(&args.array)?;
    let t = args.t.unwrap_or(file.t);
    let report = verify_aont(&file.array, t).map_err(|e| e.to_string())?;
    let alphabet = file.array.alphabet();

    if args.json {
        let doc = json!({
            "command": "verify",
            "file": args.array.display().to_string(),
            "t": t,
            "s": file.array.s(),
            "v": file.array.v(),
            "rows": file.array.row_count(),
            "pass": report.pass,
            "failure": report.first_failure().map(|f| failure_json(alphabet, &f)),
        });
        print_json(&doc);
    } else {
        println!(
            "array: {} (t={}, s={}, v={}, rows={})",
            args.array.display(),
            t,
            file.array.s(),
            file.array.v(),
            file.array.row_count()
        );
        println!("verdict: {}", if report.pass { "PASS" } else { "FAIL" });
        if let Some(failure) = report.first_failure() {
            println!("failure: {}", failure_human(alphabet, &failure));
        }
    }
    Ok(exit_for(report.pass))
}

fn bias_human(alphabet: &Alphabet, report: &UnbiasednessReport) -> String {
    match &report.first_violation {
        Some(violation) => format!(
            "tuple {} occurs {} times, expected {}",
            show_tuple(alphabet, &violation.tuple),
            violation.observed,
            report.expected_count
        ),
        None => "unbiased".to_string(),
    }
}

fn failure_human(alphabet: &Alphabet, failure: &FailedCheck<'_>) -> String {
    match failure {
        FailedCheck::Inputs(report) => format!(
            "input columns {} are biased: {}",
            report.subset,
            bias_human(alphabet, report)
        ),
        FailedCheck::Outputs(report) => format!(
            "output columns {} are biased: {}",
            report.subset,
            bias_human(alphabet, report)
        ),
        FailedCheck::Pair(pair) => format!(
            "witness I={}, J={}: {}",
            pair.input_cols,
            pair.output_cols,
            bias_human(alphabet, &pair.report)
        ),
    }
}

fn bias_json(alphabet: &Alphabet, report: &UnbiasednessReport) -> (Value, Value) {
    match &report.first_violation {
        Some(violation) => (
            tuple_json(alphabet, &violation.tuple),
            json!(violation.observed),
        ),
        None => (Value::Null, Value::Null),
    }
}

fn failure_json(alphabet: &Alphabet, failure: &FailedCheck<'_>) -> Value {
    match failure {
        FailedCheck::Inputs(report) => {
            let (tuple, observed) = bias_json(alphabet, report);
            json!({
                "family": "inputs",
                "columns": report.subset.indices(),
                "tuple": tuple,
                "observed": observed,
                "expected": report.expected_count,
            })
        }
        FailedCheck::Outputs(report) => {
            let (tuple, observed) = bias_json(alphabet, report);
            json!({
                "family": "outputs",
                "columns": report.subset.indices(),
                "tuple": tuple,
                "observed": observed,
                "expected": report.expected_count,
            })
        }
        FailedCheck::Pair(pair) => {
            let (tuple, observed) = bias_json(alphabet, &pair.report);
            json!({
                "family": "pair",
                "input_columns": pair.input_cols.indices(),
                "output_columns": pair.output_cols.indices(),
                "tuple": tuple,
                "observed": observed,
                "expected": pair.report.expected_count,
            })
        }
    }
}

// ---------------------------------------------------------------- analyze

fn run_analyze(args: AnalyzeArgs) -> Result<ExitCode, String> {
    let file = load_array(&args.array)?;
    let t = args.t.unwrap_or(file.t);
    let s = file.array.s();
    let alphabet = file.array.alphabet().clone();
    let dist = parse_dist_file(&read_file(&args.dist)?, &alphabet, s)
        .map_err(|e| format!("{}: {e}", args.dist.display()))?;
    let phi = file
        .array
        .to_transform(t)
        .map_err(|e| format!("{}: {e}", args.array.display()))?;

    let verdict = is_weakly_secure(&dist, &phi, t).map_err(|e| e.to_string())?;
    let pass = verdict.weak && verdict.perfect != Some(false);

    let mut table = Vec::new();
    for i_cols in (1..=s).combinations(t) {
        for j_cols in (s + 1..=2 * s).combinations(s - t) {
            let input_cols = ColumnSet::new(i_cols.iter().copied(), s).map_err(|e| e.to_string())?;
            let output_cols = ColumnSet::new(j_cols, s).map_err(|e| e.to_string())?;
            let h_prior = entropy(&input_marginal_table(&dist, &input_cols).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let h_posterior = conditional_entropy(&dist, &phi, &input_cols, &output_cols)
                .map_err(|e| e.to_string())?;
            let info = mutual_information(&dist, &phi, &input_cols, &output_cols)
                .map_err(|e| e.to_string())?;
            table.push((input_cols, output_cols, h_prior, h_posterior, info));
        }
    }

    if args.json {
        let rows: Vec<Value> = table
            .iter()
            .map(|(i, j, h_prior, h_posterior, info)| {
                json!({
                    "input_columns": i.indices(),
                    "output_columns": j.indices(),
                    "h_prior": h_prior,
                    "h_posterior": h_posterior,
                    "mutual_information": info,
                })
            })
            .collect();
        let doc = json!({
            "command": "analyze",
            "file": args.array.display().to_string(),
            "dist": args.dist.display().to_string(),
            "t": t,
            "s": s,
            "v": file.array.v(),
            "perfect": verdict.perfect,
            "weak": verdict.weak,
            "witness": verdict.witness.as_ref().map(|w| witness_json(&alphabet, w)),
            "table": rows,
        });
        print_json(&doc);
    } else {
        println!(
            "array: {} (t={}, s={}, v={})",
            args.array.display(),
            t,
            s,
            file.array.v()
        );
        println!("distribution: {}", args.dist.display());
        match verdict.perfect {
            Some(true) => println!("perfect security: PASS"),
            Some(false) => println!("perfect security: FAIL"),
            None => println!("perfect security: not defined at t = s"),
        }
        println!(
            "weak security: {}",
            if verdict.weak { "PASS" } else { "FAIL" }
        );
        if let Some(witness) = &verdict.witness {
            println!("witness: {}", witness_human(&alphabet, witness));
        }
        for (i, j, h_prior, h_posterior, info) in &table {
            println!(
                "I={i} J={j}: H(X_I) = {h_prior:.6}, H(X_I|Y_J) = {h_posterior:.6}, I(X_I;Y_J) = {info:.6}"
            );
        }
    }
    Ok(exit_for(pass))
}

fn witness_human(alphabet: &Alphabet, witness: &SecurityWitness) -> String {
    let place = format!(
        "I={}, J={}, u={}, y={}",
        witness.input_cols,
        witness.output_cols,
        show_tuple(alphabet, &witness.input_tuple),
        show_tuple(alphabet, &witness.output_tuple)
    );
    match witness.kind {
        WitnessKind::ProductEquality => format!(
            "joint differs from the product at {place}: joint = {}, product = {}",
            witness.lhs, witness.rhs
        ),
        WitnessKind::ZeroPosterior => format!(
            "posterior vanishes at {place}: joint = 0 while the prior is {}",
            witness.rhs
        ),
    }
}

fn witness_json(alphabet: &Alphabet, witness: &SecurityWitness) -> Value {
    json!({
        "kind": match witness.kind {
            WitnessKind::ProductEquality => "product-equality",
            WitnessKind::ZeroPosterior => "zero-posterior",
        },
        "input_columns": witness.input_cols.indices(),
        "output_columns": witness.output_cols.indices(),
        "u": tuple_json(alphabet, &witness.input_tuple),
        "y": tuple_json(alphabet, &witness.output_tuple),
        "lhs": witness.lhs.to_string(),
        "rhs": witness.rhs.to_string(),
    })
}

// -------------------------------------------------------------- randomize

fn run_randomize(args: RandomizeArgs) -> Result<ExitCode, String> {
    let file = load_array(&args.array)?;
    let s = file.array.s();
    let alphabet = file.array.alphabet().clone();
    let phi = file
        .array
        .to_transform(file.t)
        .map_err(|e| format!("{}: {e}", args.array.display()))?;
    let designated =
        ColumnSet::new(args.designate.iter().copied(), s).map_err(|e| e.to_string())?;
    let scheme = RandomizedScheme::new(phi, designated).map_err(|e| e.to_string())?;

    match (&args.input, args.verify) {
        (Some(symbols), false) => {
            let seed = args.seed.expect("clap enforces --seed with --input");
            let u = alphabet.indices_of(symbols).map_err(|e| e.to_string())?;
            let y = scheme.encode(&u, seed).map_err(|e| e.to_string())?;
            let tokens = alphabet.tuple_of_indices(&y).map_err(|e| e.to_string())?;
            if args.json {
                let doc = json!({
                    "command": "randomize",
                    "mode": "encode",
                    "file": args.array.display().to_string(),
                    "designate": scheme.designated().indices(),
                    "input": symbols,
                    "seed": seed,
                    "output": tokens,
                });
                print_json(&doc);
            } else {
                println!("{}", tokens.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        (None, true) => {
            let dist_path = args
                .dist
                .clone()
                .expect("clap enforces --dist with --verify");
            let dist_u = parse_dist_file(&read_file(&dist_path)?, &alphabet, scheme.phi().t())
                .map_err(|e| format!("{}: {e}", dist_path.display()))?;
            let verdict =
                verify_randomized_perfect_security(&scheme, &dist_u).map_err(|e| e.to_string())?;
            let pass = verdict.perfect == Some(true) && verdict.weak;
            render_randomized_verdict(&args, &alphabet, &scheme, &dist_path, &verdict, pass);
            Ok(exit_for(pass))
        }
        _ => Err("choose either --input <SYM>... --seed <N> or --verify --dist <FILE>".to_string()),
    }
}

fn render_randomized_verdict(
    args: &RandomizeArgs,
    alphabet: &Alphabet,
    scheme: &RandomizedScheme,
    dist_path: &Path,
    verdict: &SecurityVerdict,
    pass: bool,
) {
    if args.json {
        let doc = json!({
            "command": "randomize",
            "mode": "verify",
            "file": args.array.display().to_string(),
            "designate": scheme.designated().indices(),
            "dist": dist_path.display().to_string(),
            "perfect": verdict.perfect,
            "weak": verdict.weak,
            "witness": verdict.witness.as_ref().map(|w| witness_json(alphabet, w)),
            "pass": pass,
        });
        print_json(&doc);
    } else {
        println!(
            "scheme: {} with designated inputs {}",
            args.array.display(),
            scheme.designated()
        );
        println!("perfect security: {}", if pass { "PASS" } else { "FAIL" });
        if let Some(witness) = &verdict.witness {
            println!("witness: {}", witness_human(alphabet, witness));
        }
    }
}

// ----------------------------------------------------------------- search

fn run_search(args: SearchArgs) -> Result<ExitCode, String> {
    let collect = args.out.is_some() || args.limit.is_some();
    let spec = SearchSpec {
        t: args.t,
        s: args.s,
        v: args.v,
        mode: if collect {
            SearchMode::Collect
        } else {
            SearchMode::CountOnly
        },
        limit: args.limit,
        canonical_only: args.canonical,
    };
    let outcome = enumerate_aonts(&spec).map_err(|e| e.to_string())?;

    let mut files = Vec::new();
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        for (index, solution) in outcome.solutions.iter().enumerate() {
            files.push(write_solution(dir, index, solution)?);
        }
    }

    if args.json {
        let doc = json!({
            "command": "search",
            "t": args.t,
            "s": args.s,
            "v": args.v,
            "canonical": args.canonical,
            "count": outcome.count,
            "truncated": outcome.truncated,
            "files": files,
        });
        print_json(&doc);
    } else {
        println!("count: {}", outcome.count);
        if outcome.truncated {
            println!("truncated: stopped at the collection limit");
        }
        if let Some(dir) = &args.out {
            println!("wrote {} array files to {}", files.len(), dir.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_solution(dir: &Path, index: usize, solution: &Transform) -> Result<String, String> {
    let path = dir.join(format!("{index:06}.aont"));
    let text = write_array_file(solution.t(), &solution.to_array());
    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(path.display().to_string())
}
