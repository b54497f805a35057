//! Command-line front end for the huffpoly library.
//!
//! Exit codes: 0 on success, 1 when a verification check or cost cross-check
//! disagrees, 2 on usage or input validation errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use huffpoly::golden;
use huffpoly::huffman::{build_huffman, WeightSequence};
use huffpoly::minimizing::{
    binary_closed_form_cost, closed_form_cost, cost_report, cost_table, g_value_sum,
    minimizing_sequence, representative_table, MinimizingSpec,
};
use huffpoly::oracle::{
    exhaustive_optimal_cost, max_height_check, minimality_search, small_instance_corpus,
    OracleError, SearchBounds,
};
use huffpoly::poly::{fibonacci_like_listing, fibonacci_like_polys, g_value};

#[derive(Parser)]
#[command(
    name = "huffpoly",
    version,
    about = "m-ary Huffman trees, their Fibonacci-like polynomials, and \
             minimizing absolutely ordered weight sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the polynomials G_0 .. G_{count-1}
    Polys {
        /// How many polynomials to print
        #[arg(long, default_value_t = 21)]
        count: usize,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
    /// Minimizing sequence for N internal nodes and arity M, with its
    /// closed-form cost checked against actual construction
    Pmin {
        /// Number of internal nodes (N >= 1)
        internal_nodes: usize,
        /// Tree arity (M >= 2)
        arity: usize,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
    /// Build the m-ary Huffman tree over the given weights
    Huffman {
        /// Weights, whitespace-separated (also accepted inside one argument)
        weights: Vec<String>,
        /// Tree arity
        #[arg(short = 'm', long)]
        arity: usize,
        /// Read weights from a whitespace/newline-separated file instead
        #[arg(long, conflicts_with = "weights")]
        file: Option<PathBuf>,
        /// Print every intermediate sequence
        #[arg(long)]
        trace: bool,
        /// Print the prefix-free codewords
        #[arg(long)]
        codes: bool,
        /// Append unit-weight dummies until the size condition holds
        #[arg(long)]
        pad: bool,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
    /// Emit table 1 (representative values G_i(m)) or table 2 (elongated
    /// tree costs); defaults reproduce the golden files
    Tables {
        /// Which table: 1 or 2
        which: u8,
        /// Largest m row for table 1 (default 15)
        #[arg(long)]
        max_m: Option<u64>,
        /// Largest i column for table 1 (default 13)
        #[arg(long)]
        max_i: Option<usize>,
        /// Largest arity row for table 2 (default 21)
        #[arg(long)]
        max_arity: Option<usize>,
        /// Largest N column for table 2 (default 10)
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run a verification suite; exits 0 only if every check passes
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Candidate budget for the oracle searches (accepts forms like 1e6)
        #[arg(long, value_parser = parse_budget, default_value = "10000000")]
        budget: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RecordFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Tables,
    Formulas,
    Oracle,
    All,
}

fn parse_budget(text: &str) -> Result<u64, String> {
    if text.contains(['e', 'E']) {
        let value: f64 = text
            .parse()
            .map_err(|_| format!("invalid budget `{text}`"))?;
        if value < 0.0 || value > u64::MAX as f64 {
            return Err(format!("budget `{text}` out of range"));
        }
        Ok(value as u64)
    } else {
        text.parse().map_err(|_| format!("invalid budget `{text}`"))
    }
}

fn main() -> ExitCode {
    // die quietly on closed pipes (`huffpoly tables 1 | head`) like any
    // other line-oriented tool
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)` = success, `Ok(false)` = verification mismatch (exit 1),
/// `Err` = usage/validation problem (exit 2).
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Polys { count, format } => cmd_polys(count, format),
        Command::Pmin {
            internal_nodes,
            arity,
            format,
        } => cmd_pmin(internal_nodes, arity, format),
        Command::Huffman {
            weights,
            arity,
            file,
            trace,
            codes,
            pad,
            format,
        } => cmd_huffman(&weights, arity, file.as_deref(), trace, codes, pad, format),
        Command::Tables {
            which,
            max_m,
            max_i,
            max_arity,
            max_n,
            format,
        } => cmd_tables(which, max_m, max_i, max_arity, max_n, format),
        Command::Verify { suite, budget } => Ok(cmd_verify(suite, budget)),
    }
}

fn cmd_polys(count: usize, format: RecordFormat) -> Result<bool, String> {
    match format {
        RecordFormat::Text => print!("{}", fibonacci_like_listing(count)),
        RecordFormat::Json => {
            let polys: Vec<_> = fibonacci_like_polys(count)
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    json!({
                        "index": i,
                        "polynomial": p.to_string(),
                        "coefficients": p.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({ "count": count, "polynomials": polys });
            println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
        }
    }
    Ok(true)
}

fn cmd_pmin(internal_nodes: usize, arity: usize, format: RecordFormat) -> Result<bool, String> {
    let spec = MinimizingSpec::new(internal_nodes, arity).map_err(|e| e.to_string())?;
    let report = cost_report(spec);
    match format {
        RecordFormat::Text => {
            println!("sequence: {}", join_weights(report.sequence.weights()));
            println!("formula cost: {}", report.formula_cost);
            println!("constructed cost: {}", report.constructed_cost);
            println!("agreement: {}", yes_no(report.agreement()));
        }
        RecordFormat::Json => {
            let doc = json!({
                "internal_nodes": internal_nodes,
                "arity": arity,
                "sequence": weight_strings(report.sequence.weights()),
                "formula_cost": report.formula_cost.to_string(),
                "constructed_cost": report.constructed_cost.to_string(),
                "agreement": report.agreement(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
        }
    }
    Ok(report.agreement())
}

fn cmd_huffman(
    inline: &[String],
    arity: usize,
    file: Option<&std::path::Path>,
    trace: bool,
    codes: bool,
    pad: bool,
    format: RecordFormat,
) -> Result<bool, String> {
    let mut tokens: Vec<String> = Vec::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        tokens.extend(text.split_whitespace().map(str::to_owned));
    } else {
        tokens.extend(
            inline
                .iter()
                .flat_map(|arg| arg.split_whitespace())
                .map(str::to_owned),
        );
    }
    if tokens.is_empty() {
        return Err("no weights given; pass them inline or via --file".into());
    }
    let mut weights: Vec<BigInt> = Vec::with_capacity(tokens.len());
    for token in &tokens {
        weights.push(BigInt::from_str(token).map_err(|_| format!("invalid weight `{token}`"))?);
    }
    let given = weights.len();
    let mut padded = 0usize;
    if pad && arity >= 2 {
        while !(weights.len() - 1).is_multiple_of(arity - 1) {
            weights.push(BigInt::one());
            padded += 1;
        }
    }
    let (input, order) =
        WeightSequence::from_unsorted(weights, arity).map_err(|e| e.to_string())?;
    let is_pad = |position: usize| order[position] >= given;

    let (tree, merge_trace) = build_huffman(&input);
    let ordered = input.is_absolutely_ordered();
    let elongated = tree.is_elongated();
    let left_sided = tree.is_left_sided().ok();

    match format {
        RecordFormat::Text => {
            println!("weights: {}", join_weights(input.weights()));
            println!("arity: {arity}");
            if padded > 0 {
                println!("padding: {padded} unit weight(s) appended");
            }
            println!("cost: {}", tree.cost());
            println!("height: {}", tree.height());
            println!("elongated: {}", yes_no(elongated));
            match left_sided {
                Some(flag) => println!("left-sided: {}", yes_no(flag)),
                None => println!("left-sided: n/a"),
            }
            println!("absolutely ordered: {}", yes_no(ordered));
            if trace {
                println!("trace:");
                for step in merge_trace.steps() {
                    println!("  {}", join_weights(step.sequence()));
                }
            }
            if codes {
                println!("codes:");
                for (position, code) in tree.codewords() {
                    let mark = if is_pad(position) { " (pad)" } else { "" };
                    println!(
                        "  [{position}] weight {} -> {code}{mark}",
                        input.weights()[position]
                    );
                }
            }
        }
        RecordFormat::Json => {
            let mut doc = json!({
                "weights": weight_strings(input.weights()),
                "arity": arity,
                "padding": padded,
                "cost": tree.cost().to_string(),
                "height": tree.height(),
                "elongated": elongated,
                "left_sided": left_sided,
                "absolutely_ordered": ordered,
            });
            if trace {
                doc["trace"] = merge_trace
                    .steps()
                    .iter()
                    .map(|s| json!(weight_strings(s.sequence())))
                    .collect();
            }
            if codes {
                doc["codes"] = tree
                    .codewords()
                    .iter()
                    .map(|(position, code)| {
                        json!({
                            "index": position,
                            "weight": input.weights()[*position].to_string(),
                            "code": code.to_string(),
                            "pad": is_pad(*position),
                        })
                    })
                    .collect();
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
        }
    }
    Ok(true)
}

fn cmd_tables(
    which: u8,
    max_m: Option<u64>,
    max_i: Option<usize>,
    max_arity: Option<usize>,
    max_n: Option<usize>,
    format: TableFormat,
) -> Result<bool, String> {
    let table = match which {
        1 => {
            if max_arity.is_some() || max_n.is_some() {
                return Err("--max-arity/--max-n apply to table 2; use --max-m/--max-i".into());
            }
            let rows = max_m.unwrap_or(15);
            let cols = max_i.unwrap_or(13);
            if rows < 1 {
                return Err("--max-m must be at least 1".into());
            }
            representative_table(rows, cols)
        }
        2 => {
            if max_m.is_some() || max_i.is_some() {
                return Err("--max-m/--max-i apply to table 1; use --max-arity/--max-n".into());
            }
            let rows = max_arity.unwrap_or(21);
            let cols = max_n.unwrap_or(10);
            if rows < 2 {
                return Err("--max-arity must be at least 2".into());
            }
            if cols < 1 {
                return Err("--max-n must be at least 1".into());
            }
            cost_table(rows, cols)
        }
        other => return Err(format!("unknown table {other}; expected 1 or 2")),
    };
    match format {
        TableFormat::Csv => print!("{}", table.to_csv()),
        TableFormat::Markdown => print!("{}", table.to_markdown()),
    }
    Ok(true)
}

struct CheckRun {
    passed: usize,
    failed: usize,
    skipped: usize,
}

impl CheckRun {
    fn new() -> Self {
        CheckRun {
            passed: 0,
            failed: 0,
            skipped: 0,
        }
    }

    fn record(&mut self, name: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => {
                self.passed += 1;
                println!("PASS {name}");
            }
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.skipped += 1;
        println!("SKIP {name}: {reason}");
    }

    fn merge(&mut self, other: CheckRun) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
    }
}

fn cmd_verify(suite: Suite, budget: u64) -> bool {
    let mut run = CheckRun::new();
    match suite {
        Suite::Tables => run.merge(verify_tables()),
        Suite::Formulas => run.merge(verify_formulas()),
        Suite::Oracle => run.merge(verify_oracle(budget)),
        Suite::All => {
            run.merge(verify_tables());
            run.merge(verify_formulas());
            run.merge(verify_oracle(budget));
        }
    }
    println!(
        "result: {} passed, {} failed, {} skipped",
        run.passed, run.failed, run.skipped
    );
    run.failed == 0
}

fn verify_tables() -> CheckRun {
    let mut run = CheckRun::new();
    run.record(
        "table1.csv matches emitted 15x14 table",
        if representative_table(15, 13).to_csv() == golden::TABLE1_CSV {
            Ok(())
        } else {
            Err("emitted CSV differs from the frozen file".into())
        },
    );
    run.record(
        "table2.csv matches emitted 20x10 table",
        if cost_table(21, 10).to_csv() == golden::TABLE2_CSV {
            Ok(())
        } else {
            Err("emitted CSV differs from the frozen file".into())
        },
    );
    run
}

fn verify_formulas() -> CheckRun {
    let mut run = CheckRun::new();

    run.record("fibonacci normalization G_i(1), i <= 50", {
        let (mut a, mut b) = (BigInt::one(), BigInt::one());
        let mut outcome = Ok(());
        for i in 0..=50usize {
            if g_value(i, 1) != a {
                outcome = Err(format!("mismatch at i = {i}"));
                break;
            }
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        outcome
    });

    run.record("partial sum closed form, m <= 10, N <= 30", {
        let mut outcome = Ok(());
        'sum: for m in 1..=10u64 {
            for upper in 0..=30usize {
                let direct: BigInt = (0..=upper).map(|i| g_value(i, m)).sum();
                let closed = g_value_sum(upper, m);
                let cleared = BigInt::from(m) * &closed;
                let rhs = g_value(upper + 2, m) + BigInt::from(m) - BigInt::from(2);
                if closed != direct || cleared != rhs {
                    outcome = Err(format!("mismatch at N = {upper}, m = {m}"));
                    break 'sum;
                }
            }
        }
        outcome
    });

    run.record("closed-form cost vs construction, arity <= 8, N <= 15", {
        let mut outcome = Ok(());
        'cost: for arity in 2..=8usize {
            for merges in 1..=15usize {
                let spec = MinimizingSpec::new(merges, arity).expect("valid spec");
                let sequence = minimizing_sequence(spec);
                let (tree, _) = build_huffman(&sequence);
                let shape_ok = sequence.is_absolutely_ordered()
                    && tree.is_elongated()
                    && tree.is_left_sided() == Ok(true)
                    && tree.height() == merges;
                if closed_form_cost(spec) != tree.cost() || !shape_ok {
                    outcome = Err(format!("mismatch at arity = {arity}, N = {merges}"));
                    break 'cost;
                }
            }
        }
        outcome
    });

    run.record("binary special case, N <= 30", {
        let mut outcome = Ok(());
        for merges in 1..=30usize {
            let spec = MinimizingSpec::new(merges, 2).expect("valid spec");
            if closed_form_cost(spec) != binary_closed_form_cost(merges) {
                outcome = Err(format!("mismatch at N = {merges}"));
                break;
            }
        }
        outcome
    });

    run
}

fn verify_oracle(budget: u64) -> CheckRun {
    let mut run = CheckRun::new();

    run.record("construction optimality on 200 small instances", {
        let mut outcome = Ok(());
        for input in small_instance_corpus(200, 0x0ddba11) {
            let (tree, _) = build_huffman(&input);
            match exhaustive_optimal_cost(&input) {
                Ok(best) if best == tree.cost() => {}
                Ok(best) => {
                    outcome = Err(format!(
                        "construction cost {} but exhaustive minimum {best} on {:?}",
                        tree.cost(),
                        input.weights()
                    ));
                    break;
                }
                Err(err) => {
                    outcome = Err(err.to_string());
                    break;
                }
            }
        }
        outcome
    });

    for (arity, merges) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let name = format!("minimizing sequence is minimal (arity {arity}, N {merges})");
        let spec = MinimizingSpec::new(merges, arity).expect("valid spec");
        let reference = minimizing_sequence(spec);
        let largest: u64 = reference
            .weights()
            .last()
            .expect("non-empty")
            .try_into()
            .expect("reference weights fit in u64 at these sizes");
        let bounds = SearchBounds::new(spec, largest + 1).with_budget(budget);
        match minimality_search(&bounds) {
            Ok(found) if found.matches_reference => run.record(&name, Ok(())),
            Ok(found) => run.record(
                &name,
                Err(format!(
                    "search found cost {} below reference {}",
                    found.best_cost, found.reference_cost
                )),
            ),
            Err(OracleError::BudgetExceeded { candidates, budget }) => run.skip(
                &name,
                &format!("{candidates} candidates exceed budget {budget}"),
            ),
            Err(err) => run.record(&name, Err(err.to_string())),
        }
    }

    run.record("elongated chains attain maximum height", {
        let mut outcome = Ok(());
        for (arity, leaves) in [
            (2, 3),
            (2, 5),
            (2, 7),
            (2, 9),
            (3, 5),
            (3, 7),
            (3, 9),
            (4, 7),
            (5, 9),
        ] {
            match max_height_check(arity, leaves) {
                Ok(true) => {}
                Ok(false) => {
                    outcome =
                        Err(format!("a taller shape exists at arity {arity}, n {leaves}"));
                    break;
                }
                Err(err) => {
                    outcome = Err(err.to_string());
                    break;
                }
            }
        }
        outcome
    });

    run
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn join_weights(weights: &[BigInt]) -> String {
    weights
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn weight_strings(weights: &[BigInt]) -> Vec<String> {
    weights.iter().map(BigInt::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_parsing() {
        assert_eq!(parse_budget("10000000"), Ok(10_000_000));
        assert_eq!(parse_budget("1e6"), Ok(1_000_000));
        assert_eq!(parse_budget("2.5E3"), Ok(2500));
        assert!(parse_budget("abc").is_err());
        assert!(parse_budget("-1e3").is_err());
    }

    #[test]
    fn default_budget_matches_oracle_default() {
        assert_eq!(parse_budget("10000000"), Ok(huffpoly::oracle::DEFAULT_BUDGET));
    }
}
