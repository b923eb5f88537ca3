//! `ddp` — construct, verify, count, and enumerate distinct-divisor
//! orderings of finite groups from the command line.
//!
//! Groups are described by a small descriptor language (`Z12`, `D5`,
//! `Z2xZ4`, `SD(7,3;2)`, `Heis3`, `Perm[(0 1 2);(0 1)(2 3)]`). Output is
//! plain text by default and structured JSON with `--json`; enumerating
//! commands emit one row or JSON object per result.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
//! 3 no ordering exists, 4 search budget exhausted.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ddp_cli::{count_ddp_parallel, deadline_from_budget, DeadlineMonitor, GroupInfo, Record};
use ddp_core::construct::{
    ddp_abelian, ddp_count_lower_bound, slonimsky_abelian, triangular_on, variant_on,
};
use ddp_core::ddp::{divisors, verify_ddp, verify_slonimsky, DdpSequence};
use ddp_core::error::Error;
use ddp_core::group::{
    build_group_with, parse_descriptor, quotient, upper_central_series, GroupBuildOptions,
    GroupDescriptor, GroupTable, Subgroup,
};
use ddp_core::lift::{
    lift_ddp, lift_via_central_series, prime_semidirect_ddp, semidirect_ddp, LiftChoice,
};
use ddp_core::search::{exists_ddp_monitored, DdpEnumerator, StepOutcome, FEASIBILITY_CAP};

#[derive(Parser)]
#[command(
    name = "ddp",
    version,
    about = "Distinct-divisor orderings of finite groups"
)]
struct Cli {
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group built from a descriptor.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Check a sequence for distinct divisors (or for normal form).
    Verify(VerifyArgs),
    /// Produce a verified ordering by the requested construction.
    Construct(ConstructArgs),
    /// Count all orderings by exhaustive search.
    Count(CountArgs),
    /// List orderings in lexicographic order, one per line.
    Enumerate(EnumerateArgs),
    /// Ordering counts for cyclic groups of even order 2, 4, …, max-n.
    Oeis(OeisArgs),
    /// Closed-form lower bound on the number of orderings of
    /// Z_{2^m} × Z_{n1} × … × Z_{nk}.
    Bound(BoundArgs),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, commutativity, involutions, real elements, center, nilpotency.
    Info {
        /// Group descriptor, e.g. Z12, D5, Z2xZ4, SD(7,3;2), Heis3.
        descriptor: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Group descriptor the sequence lives in.
    descriptor: String,
    /// The sequence inline: comma- or space-separated element indices.
    #[arg(long, conflicts_with = "file")]
    seq: Option<String>,
    /// Read the sequence from a file (indices separated by commas,
    /// spaces, or newlines).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Check the abelian normal form (distinct signed differences,
    /// mirror sums) instead of the distinct-divisor property.
    #[arg(long)]
    slonimsky: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Group descriptor — or, with --method prime, a prime p ≡ 3 (mod 4).
    target: String,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Generators of the kernel for --method lift (element indices).
    #[arg(long)]
    kernel: Option<String>,
    /// Give up after this many seconds when a search is involved.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Pick a construction from the group's structure, falling back to
    /// search.
    Auto,
    /// Triangular-number ordering of a cyclic 2-group.
    Triangular,
    /// The reversed-tail variant of the triangular ordering.
    Variant,
    /// Normal-form ordering of an odd abelian group (not a
    /// distinct-divisor ordering).
    Slonimsky,
    /// Lift through the quotient by --kernel.
    Lift,
    /// Cyclic-by-cyclic semidirect product construction, SD(m,n;u) only.
    Semidirect,
    /// The Z_p ⋊ Z_{p−1} family for primes p ≡ 3 (mod 4).
    Prime,
}

#[derive(Args)]
struct CountArgs {
    descriptor: String,
    /// Give up after this many seconds and report the partial count.
    #[arg(long)]
    budget: Option<f64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    descriptor: String,
    /// Stop after this many orderings.
    #[arg(long)]
    max: Option<usize>,
    /// Give up after this many seconds.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Args)]
struct OeisArgs {
    /// Largest cyclic order to count (even; at most 16).
    #[arg(long = "max-n", default_value_t = 14)]
    max_n: u64,
    /// Give up after this many seconds (across the whole sweep).
    #[arg(long)]
    budget: Option<f64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct BoundArgs {
    /// Exponent of the cyclic 2-part Z_{2^m}.
    #[arg(long)]
    m: u32,
    /// Orders of the odd cyclic factors, comma-separated.
    #[arg(long, value_delimiter = ',')]
    odd: Vec<u64>,
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage<E: Display>(e: E) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn core_failure(e: Error) -> Failure {
    let code = match e {
        Error::NoDdpExists => 3,
        _ => 2,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn timeout(message: String) -> Failure {
    Failure { code: 4, message }
}

struct Printer {
    json: bool,
}

/// Print one line to stdout; when the consumer has closed the pipe
/// (`… | head`), stop quietly instead of panicking.
fn out(line: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{line}").is_err() {
        std::process::exit(0);
    }
}

impl Printer {
    fn emit(&self, record: &Record, text: &[String]) {
        if self.json {
            self.emit_json(record);
        } else {
            for line in text {
                out(line);
            }
        }
    }

    fn emit_json(&self, record: &Record) {
        out(&serde_json::to_string(record).expect("records always serialize"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let printer = Printer { json: cli.json };
    match run(&printer, &cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(p: &Printer, command: &Command) -> Result<u8, Failure> {
    match command {
        Command::Group(GroupCommand::Info { descriptor }) => cmd_group_info(p, descriptor),
        Command::Verify(args) => cmd_verify(p, args),
        Command::Construct(args) => cmd_construct(p, args),
        Command::Count(args) => cmd_count(p, args),
        Command::Enumerate(args) => cmd_enumerate(p, args),
        Command::Oeis(args) => cmd_oeis(p, args),
        Command::Bound(args) => cmd_bound(p, args),
    }
}

/// Group-building options, honoring the DDP_ORDER_LIMIT override.
fn build_options() -> Result<GroupBuildOptions, Failure> {
    let mut opts = GroupBuildOptions::default();
    if let Ok(text) = std::env::var("DDP_ORDER_LIMIT") {
        opts.order_limit = text
            .trim()
            .parse()
            .map_err(|_| usage(format!("DDP_ORDER_LIMIT must be an integer, got {text:?}")))?;
    }
    Ok(opts)
}

fn load_group(descriptor: &str) -> Result<Arc<GroupTable>, Failure> {
    let desc = parse_descriptor(descriptor).map_err(core_failure)?;
    let table = build_group_with(&desc, &build_options()?).map_err(core_failure)?;
    Ok(Arc::new(table))
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Record and text lines for an emitted sequence: raw indices, decoded
/// labels, and consecutive divisors.
fn sequence_output(
    command: &str,
    g: &Arc<GroupTable>,
    elements: &[usize],
) -> (Record, Vec<String>) {
    let mut record = Record::new(command);
    record.group = Some(g.descriptor().to_string());
    record.order = Some(g.order());
    record.sequence = Some(elements.to_vec());
    let labels: Vec<String> = elements
        .iter()
        .map(|&x| g.label(x).to_string())
        .collect();
    let divs = divisors(g, elements).ok();
    let mut text = vec![
        format!("group: {} (order {})", g.descriptor(), g.order()),
        format!("sequence: {}", join(elements)),
        format!("labels: {}", labels.join(", ")),
    ];
    if let Some(d) = &divs {
        text.push(format!("divisors: {}", join(d)));
    }
    record.labels = Some(labels);
    record.divisors = divs;
    (record, text)
}

fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn cmd_group_info(p: &Printer, descriptor: &str) -> Result<u8, Failure> {
    let started = Instant::now();
    let g = load_group(descriptor)?;
    let info = GroupInfo {
        abelian: g.is_abelian(),
        involutions: g.involutions().len(),
        real_elements: g.real_elements().len(),
        center_order: g.center().order(),
        nilpotent: upper_central_series(&g).nilpotent,
    };
    let text = vec![
        format!("group: {} (order {})", g.descriptor(), g.order()),
        format!("abelian: {}", info.abelian),
        format!("involutions: {}", info.involutions),
        format!("real elements: {}", info.real_elements),
        format!("center order: {}", info.center_order),
        format!("nilpotent: {}", info.nilpotent),
    ];
    let mut record = Record::new("group info");
    record.group = Some(g.descriptor().to_string());
    record.order = Some(g.order());
    record.info = Some(info);
    record.ms = Some(started.elapsed().as_millis());
    p.emit(&record, &text);
    Ok(0)
}

fn read_sequence(args: &VerifyArgs) -> Result<Vec<usize>, Failure> {
    let text = match (&args.seq, &args.file) {
        (Some(inline), None) => inline.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        _ => return Err(usage("provide exactly one of --seq or --file")),
    };
    parse_sequence(&text)
}

fn parse_sequence(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|token| !token.is_empty())
        .map(|token| {
            token
                .parse::<usize>()
                .map_err(|_| usage(format!("not an element index: {token:?}")))
        })
        .collect()
}

fn cmd_verify(p: &Printer, args: &VerifyArgs) -> Result<u8, Failure> {
    let started = Instant::now();
    let g = load_group(&args.descriptor)?;
    let seq = read_sequence(args)?;
    let (ok, verdict) = if args.slonimsky {
        let v = verify_slonimsky(&g, &seq).map_err(core_failure)?;
        (v.is_ok(), v.to_string())
    } else {
        let v = verify_ddp(&g, &seq).map_err(core_failure)?;
        (v.is_ok(), v.to_string())
    };
    let (mut record, mut text) = sequence_output("verify", &g, &seq);
    record.verdict = Some(verdict.clone());
    record.ms = Some(started.elapsed().as_millis());
    text.push(format!("verdict: {verdict}"));
    p.emit(&record, &text);
    Ok(u8::from(!ok))
}

/// Structure-driven choice of construction: direct formulas for abelian
/// groups, the lifting constructions for semidirect products and for
/// products with an odd nilpotent first factor, exhaustive search
/// otherwise.
fn construct_auto(g: &Arc<GroupTable>, budget: Option<f64>) -> Result<DdpSequence, Failure> {
    if g.order() == 1 {
        return DdpSequence::new(g.clone(), vec![0]).map_err(core_failure);
    }
    if g.is_abelian() {
        return ddp_abelian(g).map_err(core_failure);
    }
    if let GroupDescriptor::SemidirectCyclic { m, n, u } = *g.descriptor() {
        // the closed form needs an odd kernel and an even quotient;
        // other semidirect products fall through to the search below
        if m % 2 == 1 && n % 2 == 0 {
            return semidirect_ddp(m, n, u).map_err(core_failure);
        }
    }
    if let GroupDescriptor::DirectProduct(parts) = g.descriptor() {
        if parts.len() >= 2 {
            let opts = build_options()?;
            let head =
                Arc::new(build_group_with(&parts[0], &opts).map_err(core_failure)?);
            if head.order() > 1
                && head.order() % 2 == 1
                && upper_central_series(&head).nilpotent
            {
                let tail_desc = if parts.len() == 2 {
                    parts[1].clone()
                } else {
                    GroupDescriptor::DirectProduct(parts[1..].to_vec())
                };
                let tail =
                    Arc::new(build_group_with(&tail_desc, &opts).map_err(core_failure)?);
                let seed = construct_auto(&tail, budget)?;
                let lifted =
                    lift_via_central_series(&head, &tail, &seed).map_err(core_failure)?;
                // same multiplication table, but keep the original descriptor
                return DdpSequence::new(g.clone(), lifted.into_elements())
                    .map_err(core_failure);
            }
        }
    }
    let mut monitor = DeadlineMonitor::from_budget(budget);
    match exists_ddp_monitored(g, &mut monitor) {
        StepOutcome::Found(seq) => DdpSequence::new(g.clone(), seq).map_err(core_failure),
        StepOutcome::Exhausted => Err(core_failure(Error::NoDdpExists)),
        StepOutcome::Aborted => Err(timeout(
            "search budget exhausted before finding an ordering".to_string(),
        )),
    }
}

fn construct_lift(g: &Arc<GroupTable>, args: &ConstructArgs) -> Result<DdpSequence, Failure> {
    let kernel_text = args
        .kernel
        .as_ref()
        .ok_or_else(|| usage("--method lift needs --kernel with generator indices"))?;
    let generators = parse_sequence(kernel_text)?;
    let kernel = Subgroup::generated_by(g, &generators).map_err(core_failure)?;
    let (quotient_table, projection) = quotient(g, &kernel).map_err(core_failure)?;
    let base = construct_auto(&quotient_table, args.budget)?;
    lift_ddp(&projection, &base, &LiftChoice::Default).map_err(core_failure)
}

fn cmd_construct(p: &Printer, args: &ConstructArgs) -> Result<u8, Failure> {
    let started = Instant::now();
    if args.method == Method::Prime {
        let prime: u64 = args
            .target
            .parse()
            .map_err(|_| usage("--method prime expects a prime number as the target"))?;
        let seq = prime_semidirect_ddp(prime).map_err(core_failure)?;
        let (mut record, text) = sequence_output("construct", seq.group(), seq.elements());
        record.ms = Some(started.elapsed().as_millis());
        p.emit(&record, &text);
        return Ok(0);
    }
    let g = load_group(&args.target)?;
    if args.method == Method::Slonimsky {
        let seq = slonimsky_abelian(&g).map_err(core_failure)?;
        let (mut record, text) = sequence_output("construct", &g, &seq);
        record.ms = Some(started.elapsed().as_millis());
        p.emit(&record, &text);
        return Ok(0);
    }
    let seq = match args.method {
        Method::Auto => construct_auto(&g, args.budget)?,
        Method::Triangular => triangular_on(&g).map_err(core_failure)?,
        Method::Variant => variant_on(&g).map_err(core_failure)?,
        Method::Lift => construct_lift(&g, args)?,
        Method::Semidirect => match *g.descriptor() {
            GroupDescriptor::SemidirectCyclic { m, n, u } => {
                semidirect_ddp(m, n, u).map_err(core_failure)?
            }
            _ => return Err(usage("--method semidirect needs an SD(m,n;u) descriptor")),
        },
        Method::Slonimsky | Method::Prime => unreachable!("handled above"),
    };
    let (mut record, text) = sequence_output("construct", seq.group(), seq.elements());
    record.ms = Some(started.elapsed().as_millis());
    p.emit(&record, &text);
    Ok(0)
}

fn cmd_count(p: &Printer, args: &CountArgs) -> Result<u8, Failure> {
    let started = Instant::now();
    let g = load_group(&args.descriptor)?;
    let deadline = deadline_from_budget(args.budget);
    let threads = args.threads.unwrap_or_else(default_threads);
    let outcome = count_ddp_parallel(&g, threads, deadline);
    let mut record = Record::new("count");
    record.group = Some(g.descriptor().to_string());
    record.order = Some(g.order());
    record.count = Some(outcome.total().to_string());
    record.exact = Some(outcome.is_exact());
    record.ms = Some(started.elapsed().as_millis());
    let qualifier = if outcome.is_exact() {
        ""
    } else {
        " (partial: budget exhausted)"
    };
    let text = vec![format!("count: {}{qualifier}", outcome.total())];
    p.emit(&record, &text);
    Ok(if outcome.is_exact() { 0 } else { 4 })
}

fn cmd_enumerate(p: &Printer, args: &EnumerateArgs) -> Result<u8, Failure> {
    let g = load_group(&args.descriptor)?;
    let max = args.max.unwrap_or(usize::MAX);
    let mut monitor = DeadlineMonitor::from_budget(args.budget);
    let mut walker = DdpEnumerator::new(g.clone());
    let mut emitted = 0usize;
    while emitted < max {
        match walker.next_monitored(&mut monitor) {
            StepOutcome::Found(seq) => {
                if p.json {
                    let (record, _) = sequence_output("enumerate", &g, &seq);
                    p.emit_json(&record);
                } else {
                    out(&join(&seq));
                }
                emitted += 1;
            }
            StepOutcome::Exhausted => break,
            StepOutcome::Aborted => {
                return Err(timeout(format!(
                    "budget exhausted after {emitted} orderings"
                )))
            }
        }
    }
    Ok(0)
}

fn cmd_oeis(p: &Printer, args: &OeisArgs) -> Result<u8, Failure> {
    if args.max_n > FEASIBILITY_CAP {
        return Err(core_failure(Error::BeyondFeasibilityCap {
            n: args.max_n,
            cap: FEASIBILITY_CAP,
        }));
    }
    let deadline = deadline_from_budget(args.budget);
    let threads = args.threads.unwrap_or_else(default_threads);
    let mut n = 2;
    while n <= args.max_n {
        let started = Instant::now();
        let g = load_group(&format!("Z{n}"))?;
        let outcome = count_ddp_parallel(&g, threads, deadline);
        if !outcome.is_exact() {
            return Err(timeout(format!("budget exhausted counting order {n}")));
        }
        if p.json {
            let mut record = Record::new("oeis");
            record.group = Some(g.descriptor().to_string());
            record.order = Some(g.order());
            record.count = Some(outcome.total().to_string());
            record.exact = Some(true);
            record.ms = Some(started.elapsed().as_millis());
            p.emit_json(&record);
        } else {
            out(&format!("{n} {}", outcome.total()));
        }
        n += 2;
    }
    Ok(0)
}

fn cmd_bound(p: &Printer, args: &BoundArgs) -> Result<u8, Failure> {
    let started = Instant::now();
    let bound = ddp_count_lower_bound(args.m, &args.odd).map_err(core_failure)?;
    let mut record = Record::new("bound");
    record.count = Some(bound.to_string());
    record.exact = Some(true);
    record.ms = Some(started.elapsed().as_millis());
    let text = vec![format!("bound: {bound}")];
    p.emit(&record, &text);
    Ok(0)
}
