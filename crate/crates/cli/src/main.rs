//! `flipswap`: generate, count, verify and benchmark flip-swap languages.
//!
//! Languages are given as expressions:
//!
//! ```text
//! expr     := term ( '|' term )*          union
//! term     := factor ( '&' factor )*      intersection
//! factor   := primary ( '/' bits )*       right quotient
//! primary  := name [ '(' args ')' ] | '(' expr ')'
//! ```
//!
//! Exit status: 0 on success, 2 for usage or parse errors, 3 when a check
//! fails or the predicate turns out not to be a flip-swap language.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use flipswap::engine::{self, check_flip_swap, poset_tree, Entry, ProbeStats};
use flipswap::expr::{self, BuildOptions, Expr};
use flipswap::languages::{registry_languages, sort_items, MembershipTester, Pivot};
use flipswap::oracle::{verify, VerifyReport};
use flipswap::{BinaryString, Error, ENUMERATION_BOUND};

const LANG_HELP: &str = "Language expression, e.g. 'necklace & weight_le(3)'. Atoms: all, \
weight_le(k), lex_le(bits), inversions_le(k), transpositions_le(k), lt_reversal, le_reversal \
(neckties), lt_comp_reversal, le_comp_reversal, forbidden_run(t), forbidden_prefix(bits), \
prefix_normal, necklace, lyndon, prenecklace, pseudo_necklace, dyck_left_factor(k), \
knapsack(w1,...,wn[;capacity]), dyck_words(k). Operators: '|' union, '&' intersection, \
'/ bits' quotient, parentheses.";

#[derive(Parser, Debug)]
#[command(
    name = "flipswap",
    version,
    about = "Flip-swap languages in binary reflected Gray code order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the language, one string per line, b1 first.
    Generate(GenerateArgs),
    /// Print the number of strings in the language.
    Count(LangArgs),
    /// Run the exhaustive checks against the brute-force oracle.
    Verify(VerifyArgs),
    /// Time a full generation run and report membership-probe counts.
    Bench(BenchArgs),
    /// Print the parent tree on all strings of length n.
    Poset(PosetArgs),
}

#[derive(Args, Debug, Clone)]
struct LangArgs {
    #[arg(long = "lang", help = LANG_HELP)]
    lang: String,
    /// String length.
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Pivot symbol; defaults to each language's natural pivot.
    #[arg(long, value_parser = ["0", "1"])]
    pivot: Option<String>,
    /// Knapsack capacity when the expression does not give one.
    #[arg(long)]
    capacity: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    lang: LangArgs,
    /// Append the case label, the operation and t to each line.
    #[arg(long)]
    annotate: bool,
    /// Print only the number of strings.
    #[arg(long)]
    count_only: bool,
    /// Check closure exhaustively before generating (n <= 16).
    #[arg(long)]
    check: bool,
    /// Write run statistics as JSON to this path.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "lang", help = LANG_HELP, required_unless_present = "registry")]
    lang: Option<String>,
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    #[arg(long, value_parser = ["0", "1"])]
    pivot: Option<String>,
    #[arg(long)]
    capacity: Option<u64>,
    /// Verify every built-in language for each n in --n-min..=--n-max.
    #[arg(long, conflicts_with = "lang")]
    registry: bool,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    lang: LangArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct PosetArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Emit a Graphviz description instead of the edge list.
    #[arg(long)]
    dot: bool,
    /// Fill the members of this language in the DOT output.
    #[arg(long, requires = "dot")]
    highlight: Option<String>,
    #[arg(long, value_parser = ["0", "1"])]
    pivot: Option<String>,
    #[arg(long)]
    capacity: Option<u64>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 2,
            error: error.into(),
        }
    }

    fn check(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 3,
            error: error.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            error: e.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure { code: 1, error: e }
    }
}

/// Library errors from generation: a runaway or broken walk means the
/// predicate is not flip-swap.
fn generation_failure(e: Error) -> Failure {
    match e {
        Error::NonTerminating { .. } | Error::LanguageTooSmall | Error::NotAMember(_) => {
            Failure::check(anyhow::anyhow!("{e}; the language is not flip-swap"))
        }
        other => Failure::usage(other),
    }
}

type CmdResult = Result<(), Failure>;

fn parse_pivot(p: &Option<String>) -> Option<Pivot> {
    p.as_deref()
        .map(|p| if p == "0" { Pivot::Zero } else { Pivot::One })
}

fn build_tester(
    lang: &str,
    n: usize,
    pivot: Option<Pivot>,
    capacity: Option<u64>,
) -> Result<(Expr, MembershipTester), Failure> {
    let e = expr::parse(lang)
        .map_err(|err| Failure::usage(anyhow::anyhow!("--lang {lang:?}: {err}")))?;
    let tester = e
        .build(n, &BuildOptions { pivot, capacity })
        .map_err(|err| Failure::usage(anyhow::anyhow!("--lang {lang:?}: {err}")))?;
    Ok((e, tester))
}

fn tester_from(args: &LangArgs) -> Result<(Expr, MembershipTester), Failure> {
    build_tester(
        &args.lang,
        args.n as usize,
        parse_pivot(&args.pivot),
        args.capacity,
    )
}

/// Reports the item order used for every knapsack atom on standard error.
fn note_knapsack_order(e: &Expr) {
    for atom in e.atoms() {
        if let Expr::Atom { name, args, .. } = atom {
            if name != "knapsack" {
                continue;
            }
            let Ok(weights) = args
                .iter()
                .map(|a| a.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
            else {
                continue;
            };
            let (sorted, order) = sort_items(&weights);
            let cells: Vec<String> = order
                .iter()
                .zip(&sorted)
                .enumerate()
                .map(|(pos, (item, w))| format!("{}:item{}(w={w})", pos + 1, item + 1))
                .collect();
            eprintln!("knapsack positions: {}", cells.join(" "));
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn annotate_line(e: &Entry) -> String {
    match &e.step {
        None => format!("{} - - t=-", e.value),
        Some(s) => format!(
            "{} {} {} t={}",
            e.value,
            s.case,
            s.changed,
            s.t_alpha.map_or("-".to_string(), |t| t.to_string())
        ),
    }
}

fn json_line(e: &Entry, annotate: bool) -> serde_json::Value {
    match (&e.step, annotate) {
        (Some(s), true) => json!({
            "value": e.value,
            "case": s.case,
            "changed": s.changed.as_slice(),
            "t": s.t_alpha,
            "probes": s.probes,
            "next": s.next,
        }),
        _ => json!({ "value": e.value }),
    }
}

/// Hamming distances between consecutive emitted strings.
#[derive(Default)]
struct DistanceTally {
    first: Option<BinaryString>,
    last: Option<BinaryString>,
    max: usize,
    histogram: BTreeMap<usize, u64>,
}

impl DistanceTally {
    fn push(&mut self, s: &BinaryString) {
        if let Some(prev) = &self.last {
            let d = prev.hamming(s).expect("equal lengths");
            self.max = self.max.max(d);
            *self.histogram.entry(d).or_insert(0) += 1;
        } else {
            self.first = Some(s.clone());
        }
        self.last = Some(s.clone());
    }

    fn wrap(&self) -> Option<usize> {
        match (&self.first, &self.last) {
            (Some(a), Some(b)) if a != b => b.hamming(a).ok(),
            _ => None,
        }
    }
}

fn stats_json(
    t: &MembershipTester,
    stats: &ProbeStats,
    gray: Option<&DistanceTally>,
    seconds: f64,
) -> serde_json::Value {
    let mut v = json!({
        "language": t.name(),
        "n": t.n(),
        "pivot": t.pivot(),
        "cost_class": t.cost(),
        "strings": stats.strings,
        "steps": stats.steps,
        "loop_probes": stats.loop_probes,
        "membership_calls": stats.membership_calls,
        "loop_probes_per_string": stats.loop_ratio(),
        "seconds": seconds,
    });
    if let Some(g) = gray {
        v["max_distance"] = json!(g.max);
        v["wrap_distance"] = json!(g.wrap());
        v["cyclic"] = json!(t.contains_origin() && g.wrap().is_none_or(|d| d <= 2));
        v["distance_histogram"] = json!(g.histogram);
    }
    v
}

fn write_stats(path: &PathBuf, value: &serde_json::Value) -> io::Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    f.flush()
}

fn precheck(tester: &MembershipTester) -> CmdResult {
    let report = check_flip_swap(tester).map_err(Failure::usage)?;
    if let Some(c) = report.counterexamples.first() {
        return Err(Failure::check(anyhow::anyhow!(
            "{} is not flip-swap: {} of member {} is {}, which is not a member ({} violations)",
            tester.name(),
            c.operation,
            c.member,
            c.image,
            report.violations
        )));
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> CmdResult {
    let (e, tester) = tester_from(&args.lang)?;
    note_knapsack_order(&e);
    if args.check {
        precheck(&tester)?;
    }
    let start = Instant::now();
    let mut out = open_output(&args.output)?;
    let mut generator = engine::generate(&tester);
    let mut tally = args.stats.as_ref().map(|_| DistanceTally::default());
    for entry in generator.by_ref() {
        let entry = entry.map_err(generation_failure)?;
        if let Some(t) = tally.as_mut() {
            t.push(&entry.value);
        }
        if args.count_only {
            continue;
        }
        match args.format {
            Format::Text if args.annotate => writeln!(out, "{}", annotate_line(&entry))?,
            Format::Text => writeln!(out, "{}", entry.value)?,
            Format::JsonLines => writeln!(out, "{}", json_line(&entry, args.annotate))?,
        }
    }
    let stats = generator.stats();
    if args.count_only {
        match args.format {
            Format::Text => writeln!(out, "{}", stats.strings)?,
            Format::JsonLines => writeln!(out, "{}", json!({ "count": stats.strings }))?,
        }
    }
    out.flush()?;
    if let (Some(path), Some(t)) = (&args.stats, tally) {
        write_stats(
            path,
            &stats_json(&tester, &stats, Some(&t), start.elapsed().as_secs_f64()),
        )?;
    }
    Ok(())
}

fn cmd_count(args: &LangArgs) -> CmdResult {
    let (e, tester) = tester_from(args)?;
    note_knapsack_order(&e);
    let stats = engine::count(&tester).map_err(generation_failure)?;
    println!("{}", stats.strings);
    Ok(())
}

fn print_reports(reports: &[VerifyReport], format: ReportFormat) -> io::Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    match format {
        ReportFormat::Text => {
            for r in reports {
                write!(out, "{}", r.to_text())?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} languages verified, {failed} failed", reports.len())?;
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, reports)?;
            writeln!(out)?;
        }
    }
    out.flush()
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let mut reports = Vec::new();
    if args.registry {
        if args.n_min == 0 || args.n_max > ENUMERATION_BOUND || args.n_min > args.n_max {
            return Err(Failure::usage(anyhow::anyhow!(
                "--n-min/--n-max must satisfy 1 <= n-min <= n-max <= {ENUMERATION_BOUND}"
            )));
        }
        let ns: Vec<usize> = match args.n {
            Some(n) => vec![n as usize],
            None => (args.n_min..=args.n_max).collect(),
        };
        for n in ns {
            for (lang, pivot) in registry_languages(n) {
                let tester = lang.tester_with_pivot(n, pivot).map_err(Failure::usage)?;
                reports.push(verify(&tester).map_err(Failure::usage)?);
            }
        }
    } else {
        let lang = args.lang.as_deref().expect("clap requires --lang");
        let n = args
            .n
            .ok_or_else(|| Failure::usage(anyhow::anyhow!("-n is required with --lang")))?;
        let (e, tester) = build_tester(lang, n as usize, parse_pivot(&args.pivot), args.capacity)?;
        note_knapsack_order(&e);
        reports.push(verify(&tester).map_err(Failure::usage)?);
    }
    print_reports(&reports, args.format)?;
    if reports.iter().all(VerifyReport::passed) {
        Ok(())
    } else {
        Err(Failure::check(anyhow::anyhow!("verification failed")))
    }
}

fn cmd_bench(args: &BenchArgs) -> CmdResult {
    let (e, tester) = tester_from(&args.lang)?;
    note_knapsack_order(&e);
    let start = Instant::now();
    let stats = engine::count(&tester).map_err(generation_failure)?;
    let secs = start.elapsed().as_secs_f64();
    let per_string_ns = if stats.strings == 0 {
        0.0
    } else {
        secs * 1e9 / stats.strings as f64
    };
    match args.format {
        ReportFormat::Json => {
            let mut v = stats_json(&tester, &stats, None, secs);
            v["ns_per_string"] = json!(per_string_ns);
            println!(
                "{}",
                serde_json::to_string_pretty(&v).context("serializing report")?
            );
        }
        ReportFormat::Text => {
            println!("language          {}", tester.name());
            println!("n                 {}", tester.n());
            println!("pivot             {}", tester.pivot());
            println!("tester cost       {:?}", tester.cost());
            println!("strings           {}", stats.strings);
            println!("wall time         {:.3} ms", secs * 1e3);
            println!("per string        {per_string_ns:.1} ns");
            println!("membership calls  {}", stats.membership_calls);
            println!("loop probes       {}", stats.loop_probes);
            println!("loop probes / |S| {:.4}", stats.loop_ratio());
        }
    }
    Ok(())
}

fn cmd_poset(args: &PosetArgs) -> CmdResult {
    let n = args.n as usize;
    let tree = poset_tree(n).map_err(Failure::usage)?;
    let highlight = match &args.highlight {
        Some(lang) => Some(build_tester(lang, n, parse_pivot(&args.pivot), args.capacity)?.1),
        None => None,
    };
    let text = if args.dot {
        tree.to_dot(highlight.as_ref())
    } else {
        tree.edge_list()
    };
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Count(a) => cmd_count(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Poset(a) => cmd_poset(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(io) = f.error.downcast_ref::<io::Error>() {
                if io.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
