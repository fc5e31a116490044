//! Command-line front end. Exit codes: 0 success, 1 failed check, 2 bad input.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pontableau::flagcomb::{
    almost_transverse_array, array_from_flag_triple, check_almost_transverse_bound, dim_y_first_version,
    expected_dimension, is_coherent, moves_from, structured_array, verify_coherence_equals_move_class, FourTerms,
    NestedSetSequence, Permutation,
};
use pontableau::pontableaux::{euler_characteristic_by_pontableaux, euler_characteristic_by_tableaux, StrataPoset};
use pontableau::rsk::{frame_rows, rsk_forward_traced, rsk_inverse, worked_example, RskInput, RskOutput};
use pontableau::shapes::{BnData, SkewShape};
use pontableau::symfunc::{refined_expansion, row_refined_grothendieck};
use pontableau::tableaux::{count_ssvt, count_standard_svt};
use pontableau::verify::{run, Limits, Suite};

#[derive(Parser)]
#[command(name = "pontableau", version, about = "Euler characteristics of twice-pointed Brill-Noether varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the skew shape sigma with rho and rho_hat.
    Sigma {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count standard or semistandard set-valued tableaux.
    CountSvt {
        #[command(flatten)]
        family: Family,
        /// Shape as JSON, e.g. '[[0,0],[1,0]]'; overrides the family.
        #[arg(long)]
        shape: Option<String>,
        /// Standard tableaux using each of 1..=N once (defaults to g).
        #[arg(long)]
        labels: Option<u32>,
        /// Semistandard tableaux with this content.
        #[arg(long, value_delimiter = ',')]
        content: Option<Vec<u32>>,
        /// Per-row excess, with --content.
        #[arg(long, value_delimiter = ',')]
        excess: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Euler characteristic by tableaux, by pontableaux, or both.
    Chi {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The poset of pontableaux.
    Pontableaux {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value_t = PosetFormat::Text)]
        format: PosetFormat,
        /// In DOT output, enclose strata with the same underlying tableau.
        #[arg(long)]
        group: bool,
    },
    /// Compare RG_sigma with its skew-Schur expansion.
    Expand {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 3)]
        n_x: usize,
        /// Defaults to |sigma| + 2.
        #[arg(long)]
        max_deg: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Skew set-valued RSK insertion.
    Rsk {
        /// JSON input for the forward insertion; the worked example if absent.
        #[arg(long)]
        input: Option<String>,
        /// JSON output to run backward instead.
        #[arg(long, conflicts_with = "input")]
        inverse: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Permutation coherence and flag intersection arrays.
    Flags {
        #[command(subcommand)]
        command: FlagCommand,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the full acceptance limits instead of the quick ones.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        max_boxes: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum FlagCommand {
    /// Intersection array of three random flags over F_p, with both formulas.
    Array {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        /// Draw flags from random Schubert cells instead of uniformly.
        #[arg(long)]
        structured: bool,
    },
    /// Coherence of a pair and its one-move neighbours.
    Coherent {
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        tau: Vec<usize>,
    },
    /// Coherent pairs against the move class of (omega, id).
    Moves {
        #[arg(long, default_value_t = 4)]
        max_d: usize,
    },
    /// The correction-term bound for an almost-transverse pair.
    Almost {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 101)]
        prime: u64,
    },
    /// Expected dimension of a flag Richardson variety.
    Expected {
        #[arg(long)]
        d: usize,
        /// One set of A per flag, comma-separated, repeated.
        #[arg(long = "a")]
        a: Vec<String>,
        #[arg(long = "b")]
        b: Vec<String>,
    },
}

#[derive(Args)]
struct Family {
    #[arg(long, allow_hyphen_values = true)]
    g: Option<i64>,
    /// Inferred from the length of alpha or beta when absent.
    #[arg(long)]
    r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<i64>>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PosetFormat {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Via {
    Tableaux,
    Pontableaux,
    Both,
}

/// Bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

impl Family {
    fn data(&self) -> Result<BnData, Failure> {
        let (Some(g), Some(d)) = (self.g, self.d) else {
            return Err(usage("--g and --d are required"));
        };
        let inferred = self.alpha.as_ref().or(self.beta.as_ref()).map(|v| v.len() as i64 - 1);
        let r = match (self.r, inferred) {
            (Some(r), Some(i)) if r != i => {
                return Err(usage(format!("--r {r} but the sequences have length {}", i + 1)))
            }
            (Some(r), _) | (None, Some(r)) => r,
            (None, None) => return Err(usage("give --r or the ramification sequences")),
        };
        if r < 0 {
            return Err(usage("r must be non-negative"));
        }
        let zeros = vec![0; (r + 1) as usize];
        let alpha = self.alpha.clone().unwrap_or_else(|| zeros.clone());
        let beta = self.beta.clone().unwrap_or(zeros);
        BnData::new(g, r, d, alpha, beta).map_err(usage)
    }
}

fn parse_shape(text: &str) -> Result<SkewShape, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("shape: {e}")))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Sigma { family, format } => sigma(&family.data()?, format),
        Command::CountSvt { family, shape, labels, content, excess, format } => {
            count(&family, shape, labels, content, excess, format)
        }
        Command::Chi { family, via, format } => chi(&family.data()?, via, format),
        Command::Pontableaux { family, format, group } => pontableaux(&family.data()?, format, group),
        Command::Expand { shape, n_x, max_deg, format } => expand(&parse_shape(&shape)?, n_x, max_deg, format),
        Command::Rsk { input, inverse, format } => rsk(input, inverse, format),
        Command::Flags { command } => flags(command),
        Command::Verify { suite, seed, full, max_boxes, output } => verify(suite, seed, full, max_boxes, output),
    }
}

fn sigma(data: &BnData, format: Format) -> Outcome {
    let s = data.sigma();
    match format {
        Format::Json => print_json(&json!({
            "data": data, "sigma": s, "boxes": s.len(), "rho": data.rho(), "rho_hat": data.rho_hat(),
        })),
        Format::Text => {
            print!("{}", s.diagram());
            println!("|sigma| = {}", s.len());
            println!("rho = {}", data.rho());
            println!("rho_hat = {}", data.rho_hat());
        }
    }
    Ok(())
}

fn count(
    family: &Family,
    shape: Option<String>,
    labels: Option<u32>,
    content: Option<Vec<u32>>,
    excess: Option<Vec<u32>>,
    format: Format,
) -> Outcome {
    let (shape, default_labels) = match shape {
        Some(text) => (parse_shape(&text)?, None),
        None => {
            let data = family.data()?;
            (data.sigma(), Some(data.g.max(0) as u32))
        }
    };
    let (kind, value) = match (content, labels.or(default_labels)) {
        (Some(c), _) => {
            if c.len() > 64 {
                return Err(usage("content is limited to 64 labels"));
            }
            ("semistandard", count_ssvt(&shape, &c, excess.as_deref()))
        }
        (None, Some(n)) => {
            if n > 64 {
                return Err(usage("at most 64 labels"));
            }
            ("standard", count_standard_svt(&shape, n))
        }
        (None, None) => return Err(usage("give --labels or --content")),
    };
    match format {
        Format::Json => print_json(&json!({"shape": shape, "kind": kind, "count": value})),
        Format::Text => println!("{value}"),
    }
    Ok(())
}

fn chi(data: &BnData, via: Via, format: Format) -> Outcome {
    let empty = data.rho_hat() < 0;
    let tableaux = matches!(via, Via::Tableaux | Via::Both).then(|| euler_characteristic_by_tableaux(data));
    let pontableaux = matches!(via, Via::Pontableaux | Via::Both).then(|| euler_characteristic_by_pontableaux(data));
    let value = tableaux.or(pontableaux).unwrap_or(0);
    let agree = tableaux.zip(pontableaux).is_none_or(|(a, b)| a == b);
    match format {
        Format::Json => print_json(&json!({
            "data": data, "chi": value, "tableaux": tableaux, "pontableaux": pontableaux, "empty": empty,
        })),
        Format::Text => {
            if empty {
                println!("empty variety: rho_hat = {} < 0", data.rho_hat());
            }
            if let Some(t) = tableaux {
                println!("by tableaux: (-1)^(g - |sigma|) * #standard set-valued tableaux = {t}");
            }
            if let Some(p) = pontableaux {
                println!("by pontableaux: sum of mu * chi over strata = {p}");
            }
            println!("chi = {value}");
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Check(format!("routes disagree: {tableaux:?} vs {pontableaux:?}")))
    }
}

fn pontableaux(data: &BnData, format: PosetFormat, group: bool) -> Outcome {
    let strata = StrataPoset::new(data);
    match format {
        PosetFormat::Dot => print!("{}", strata.to_dot(group)),
        PosetFormat::Json => print_json(&strata.report()),
        PosetFormat::Text => {
            for (i, (p, s)) in strata.nodes.iter().zip(strata.statistics()).enumerate() {
                println!("#{i}: dim {} mu {} chi {}", s.dim, s.mu, s.chi);
                println!("{}", p.labeling());
            }
            println!("strata: {}", strata.nodes.len());
            for (dim, n) in strata.dimension_counts().iter().rev() {
                println!("dimension {dim}: {n}");
            }
            println!("covers: {}", strata.poset.covers().len());
            println!("chi = {}", strata.euler_characteristic());
        }
    }
    Ok(())
}

fn expand(shape: &SkewShape, n_x: usize, max_deg: Option<u32>, format: Format) -> Outcome {
    let max_deg = max_deg.unwrap_or(shape.len() as u32 + 2);
    let n_w = shape.row_span();
    let direct = row_refined_grothendieck(shape, n_x, n_w, max_deg).map_err(usage)?;
    let expanded = refined_expansion(shape, n_x, n_w, max_deg).map_err(usage)?;
    let equal = direct == expanded;
    match format {
        Format::Json => print_json(&json!({
            "shape": shape, "n_x": n_x, "n_w": n_w, "max_deg": max_deg,
            "direct": direct, "expansion": expanded, "equal": equal,
        })),
        Format::Text => {
            println!("RG = {direct}");
            println!("expansion = {expanded}");
            println!("equal: {equal}");
        }
    }
    if equal {
        Ok(())
    } else {
        Err(Failure::Check("the expansion differs from RG".into()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn rsk(input: Option<String>, inverse: Option<String>, format: Format) -> Outcome {
    if let Some(path) = inverse {
        let output: RskOutput = read_json(&path)?;
        let back = rsk_inverse(&output).map_err(usage)?;
        match format {
            Format::Json => print_json(&back),
            Format::Text => {
                println!("tableau:\n{}", back.tableau);
                println!("above sigma:\n{}", back.above);
            }
        }
        return Ok(());
    }
    let input: RskInput = match input {
        Some(path) => read_json(&path)?,
        None => worked_example(),
    };
    let (output, frames) = rsk_forward_traced(&input).map_err(usage)?;
    match format {
        Format::Json => print_json(&json!({"input": input, "frames": frames, "output": output})),
        Format::Text => {
            for (i, f) in frames.iter().enumerate() {
                println!("frame {} (row {}, label {} ends at {}):", i + 1, f.stage, f.moved, f.new_box);
                for row in frame_rows(&f.tableau) {
                    let cells: Vec<String> = row.iter().map(|(x, l)| format!("{x}:{l:?}")).collect();
                    println!("  {}", cells.join(" "));
                }
            }
            println!("tableau:\n{}", output.tableau);
            println!("below sigma:\n{}", output.below);
        }
    }
    Ok(())
}

fn parse_sets(d: usize, sets: &[String]) -> Result<NestedSetSequence, Failure> {
    let parsed = sets
        .iter()
        .map(|s| {
            s.split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<BTreeSet<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    NestedSetSequence::new(d, parsed).map_err(usage)
}

fn flags(command: FlagCommand) -> Outcome {
    match command {
        FlagCommand::Array { d, seed, prime, structured } => {
            let a = if structured { structured_array(d, prime, seed) } else { array_from_flag_triple(d, prime, seed) }
                .map_err(usage)?;
            let terms = FourTerms::of(&a);
            let first = dim_y_first_version(&a);
            print_json(&json!({
                "d": d, "prime": prime, "seed": seed, "structured": structured, "array": a,
                "terms": terms, "four_term": terms.value(), "first_version": first,
            }));
            if first != terms.value() {
                return Err(Failure::Check("the two dimension formulas differ".into()));
            }
        }
        FlagCommand::Coherent { sigma, tau } => {
            let s = Permutation::new(sigma).map_err(usage)?;
            let t = Permutation::new(tau).map_err(usage)?;
            let coherent = is_coherent(&s, &t).map_err(usage)?;
            let moves: Vec<_> = moves_from(&s, &t).into_iter().collect();
            print_json(&json!({"sigma": s, "tau": t, "coherent": coherent, "moves": moves}));
        }
        FlagCommand::Moves { max_d } => {
            let mut reports = Vec::new();
            for d in 0..=max_d {
                reports.push(verify_coherence_equals_move_class(d).map_err(usage)?);
            }
            print_json(&reports);
            if !reports.iter().all(|r| r.passed()) {
                return Err(Failure::Check("coherence differs from the move class".into()));
            }
        }
        FlagCommand::Almost { d, t, seed, prime } => {
            let a = almost_transverse_array(d, t, prime, seed).map_err(usage)?;
            let report = check_almost_transverse_bound(&a, t);
            print_json(&json!({"d": d, "t": t, "seed": seed, "prime": prime, "array": a, "report": report}));
        }
        FlagCommand::Expected { d, a, b } => {
            let (a, b) = (parse_sets(d, &a)?, parse_sets(d, &b)?);
            let value = expected_dimension(&a, &b).map_err(usage)?;
            println!("{value}");
        }
    }
    Ok(())
}

fn verify(suite: Suite, seed: u64, full: bool, max_boxes: Option<usize>, output: Option<String>) -> Outcome {
    let mut limits = if full { Limits::full() } else { Limits::quick() };
    if let Some(n) = max_boxes {
        if n == 0 {
            eprintln!("warning: --max-boxes 0 leaves the shape suites empty");
        }
        limits = limits.with_max_boxes(n);
    }
    let start = Instant::now();
    let report = run(suite, &limits, seed);
    eprintln!("wall time: {:.2?}", start.elapsed());
    let text = report.to_json();
    match output {
        Some(path) => fs::write(&path, text + "\n").map_err(|e| usage(format!("{path}: {e}")))?,
        None => println!("{text}"),
    }
    for s in &report.suites {
        eprintln!("{}: {} cases, {} failures", s.suite, s.cases, s.failure_count);
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} failures", report.failure_count)))
    }
}
