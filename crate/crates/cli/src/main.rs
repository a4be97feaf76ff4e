use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gapwords::blockwise::{
    blockwise_table, special_factors_blockwise, special_factors_nondecreasing, summary_covering, BlockMethod,
};
use gapwords::closed_form::{
    complexity_closed, complexity_table, special_counts_injective, special_factors_increasing, TableMethod,
};
use gapwords::constructor::{build_affine_word, build_blockwise_affine};
use gapwords::diagram::{build_diagram, render_diagram, DiagramFormat};
use gapwords::oracle::{oracle_table, CountingBackend};
use gapwords::profile::{ComplexityProfile, Family};
use gapwords::realizability::{conjecture_probe, realizable, verify_witness};
use gapwords::{classify, Error, GapClass, GapSpec, TailRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

mod record;

use record::{spec_hash, Emitter, Method, Row};

/// Factor complexity of binary words given by the distances between their 1's.
#[derive(Parser)]
#[command(name = "gapwords", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate f(n), its first difference and s(n).
    Complexity(ComplexityArgs),
    /// Decide whether a complexity table belongs to a gap increasing word.
    Realizable(RealizableArgs),
    /// Build a word with complexity a*n + b from some point on.
    Construct(ConstructArgs),
    /// Draw the partition diagram at window length n.
    Diagram(DiagramArgs),
    /// Time the closed form against enumeration.
    Bench(BenchArgs),
    /// Report the regularity classes of a gap function.
    Classify(ClassifyArgs),
    /// Probe random gap increasing words for complexities shared by several words.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct ComplexityArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value_t = 1)]
    n_from: u64,
    #[arg(long, default_value_t = 20)]
    n_to: u64,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    /// Compare every row with factor enumeration; exit 2 on any difference.
    #[arg(long)]
    cross_check: bool,
    #[arg(long)]
    csv: bool,
    /// Append wall-clock times per phase (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ex42,
    Ex43,
}

#[derive(Args)]
struct RealizableArgs {
    /// JSON file holding {"f": [...]} or {"family": ..., "q": ..., "N": ...}.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    profile: Option<PathBuf>,
    #[arg(long, value_enum, requires = "q")]
    family: Option<FamilyArg>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 300)]
    horizon: u64,
    /// Check accepted witnesses by enumeration up to this length.
    #[arg(long)]
    verify: Option<u64>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    /// Allow blockwise injective words, which adds slope 0.
    #[arg(long)]
    blockwise: bool,
    /// Write the spec JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = [1_000u64, 1_000_000, 1_000_000_000])]
    n_list: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    repeat: u32,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value_t = 1000)]
    horizon: u64,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 20)]
    count: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60)]
    horizon: u64,
}

enum Status {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout().lock();
    match run(cli.command, stdout) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(2),
        Err(err) => {
            if let Some(e) = err.downcast_ref::<io::Error>() {
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run<W: Write>(command: Command, out: W) -> Result<Status> {
    match command {
        Command::Complexity(args) => cmd_complexity(args, out),
        Command::Realizable(args) => cmd_realizable(args, out),
        Command::Construct(args) => cmd_construct(args, out),
        Command::Diagram(args) => cmd_diagram(args, out),
        Command::Bench(args) => cmd_bench(args, out),
        Command::Classify(args) => cmd_classify(args, out),
        Command::Experiment(args) => cmd_experiment(args, out),
    }
}

fn load_spec(path: &Path) -> Result<GapSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GapSpec::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn table_rows(spec: &GapSpec, method: Method, from: u64, to: u64) -> Result<Vec<Row>> {
    let last = to + 1;
    // f and s indexed by n, f(0) = 1
    let mut f = vec![1u64; last as usize + 1];
    let mut s = vec![0u64; last as usize + 1];
    let mut certified = vec![true; last as usize + 1];
    match method {
        Method::Closed => {
            for n in from..=last {
                f[n as usize] = complexity_closed(spec, n)?;
            }
            for n in from..=to {
                s[n as usize] = special_factors_increasing(spec, n)?;
            }
        }
        Method::Recurrence => {
            let table = complexity_table(spec, last, TableMethod::Recurrence)?;
            f[1..].copy_from_slice(table.values());
            s[..=to as usize].copy_from_slice(&special_counts_injective(spec, to)?);
        }
        Method::Blockwise | Method::Nondecreasing => {
            let block = match method {
                Method::Blockwise => BlockMethod::Blockwise,
                _ => BlockMethod::NonDecreasing,
            };
            let table = blockwise_table(spec, last, block)?;
            f[1..].copy_from_slice(table.values());
            let summary = summary_covering(spec, last)?;
            for n in from..=to {
                s[n as usize] = match block {
                    BlockMethod::Blockwise => special_factors_blockwise(&summary, n)?,
                    BlockMethod::NonDecreasing => special_factors_nondecreasing(&summary, n)?,
                };
            }
        }
        Method::Oracle => {
            for c in oracle_table(spec, last, CountingBackend::Automaton)? {
                f[c.n as usize] = c.distinct_count;
                s[c.n as usize] = c.special_count;
                certified[c.n as usize] = c.certified;
            }
        }
    }
    (from..=to)
        .map(|n| {
            let i = n as usize;
            let delta_f = f[i + 1]
                .checked_sub(f[i])
                .with_context(|| format!("complexity decreases at n = {n}"))?;
            Ok(Row {
                n,
                f: f[i],
                delta_f,
                s: s[i],
                method,
                certified: certified[i],
            })
        })
        .collect()
}

fn cmd_complexity<W: Write>(args: ComplexityArgs, out: W) -> Result<Status> {
    ensure!(args.n_from >= 1, "--n-from must be at least 1");
    ensure!(args.n_from <= args.n_to, "--n-from exceeds --n-to");
    let spec = load_spec(&args.spec)?;
    let mut em = Emitter::new(out, args.csv);
    em.record(&json!({
        "command": "complexity",
        "spec_sha256": spec_hash(&spec),
        "n_from": args.n_from,
        "n_to": args.n_to,
        "method": args.method,
        "cross_check": args.cross_check,
    }))?;

    let start = Instant::now();
    let rows = table_rows(&spec, args.method, args.n_from, args.n_to)?;
    let compute = start.elapsed();
    em.rows(&rows)?;

    let mut status = Status::Ok;
    let mut check_time = Duration::ZERO;
    if args.cross_check {
        let start = Instant::now();
        let oracle = oracle_table(&spec, args.n_to, CountingBackend::Automaton)?;
        check_time = start.elapsed();
        let mut mismatches = 0;
        for row in &rows {
            let c = &oracle[row.n as usize - 1];
            if (c.distinct_count, c.special_count) != (row.f, row.s) {
                mismatches += 1;
                eprintln!(
                    "mismatch at n = {}: {} gives f = {}, s = {}; enumeration gives f = {}, s = {}",
                    row.n,
                    args.method.as_str(),
                    row.f,
                    row.s,
                    c.distinct_count,
                    c.special_count
                );
            }
        }
        em.record(
            &json!({ "cross_check": if mismatches == 0 { "ok" } else { "mismatch" }, "mismatches": mismatches }),
        )?;
        if mismatches > 0 {
            status = Status::Mismatch;
        }
    }
    if args.timing {
        em.record(&json!({
            "timing_ms": { "compute": ms(compute), "cross_check": ms(check_time) }
        }))?;
    }
    Ok(status)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn cmd_realizable<W: Write>(args: RealizableArgs, out: W) -> Result<Status> {
    let (profile, source) = match (&args.profile, args.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let profile =
                ComplexityProfile::parse_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            let n = profile.len();
            (profile, json!({ "profile": "file", "N": n }))
        }
        (None, Some(family)) => {
            let q = args.q.context("--family needs --q")?;
            let fam = match family {
                FamilyArg::Ex42 => Family::Ex42,
                FamilyArg::Ex43 => Family::Ex43,
            };
            let profile = ComplexityProfile::family(fam, q, args.horizon + 2)?;
            (profile, json!({ "family": fam, "q": q, "N": args.horizon + 2 }))
        }
        (None, None) => bail!("give --profile or --family"),
    };
    let report = realizable(&profile, args.horizon)?;
    let mut em = Emitter::new(out, false);
    em.record(&json!({ "command": "realizable", "horizon": args.horizon, "source": source }))?;
    em.record(&json!({ "necessary": report.necessary }))?;
    for c in &report.candidates {
        em.record(c)?;
    }
    let witnesses: Vec<u64> = report.witnesses().map(|w| w.p).collect();
    em.record(&json!({ "overall": report.overall, "witnesses": witnesses }))?;

    let mut status = Status::Ok;
    if let Some(n_max) = args.verify {
        for w in report.witnesses() {
            let ok = verify_witness(w, &profile, n_max)?;
            em.record(&json!({ "verify": { "p": w.p, "n_max": n_max, "ok": ok } }))?;
            if !ok {
                status = Status::Mismatch;
            }
        }
    }
    Ok(status)
}

fn cmd_construct<W: Write>(args: ConstructArgs, out: W) -> Result<Status> {
    let (a, b) = (args.a, args.b);
    // the affine construction also pins s(K-1); periodic words only settle at K
    let (spec, threshold, details, s_from) = if args.blockwise {
        let word = build_blockwise_affine(a, b)?;
        let k = word.threshold;
        let s_from = if a == 0 { k } else { k - 1 };
        (word.spec, k, serde_json::Value::Null, s_from)
    } else {
        let word = build_affine_word(a, b)?;
        let details = serde_json::to_value(&word)?;
        let k = word.k;
        (word.spec, k, details, k - 1)
    };
    let mut em = Emitter::new(out, false);
    em.record(&json!({ "command": "construct", "a": a, "b": b, "blockwise": args.blockwise }))?;
    em.record(&json!({
        "spec": spec.to_json_value(),
        "spec_sha256": spec_hash(&spec),
        "K": threshold,
        "construction": details,
    }))?;

    let last = threshold + 30;
    let table = oracle_table(&spec, last.max(2), CountingBackend::Automaton)?;
    let mut failures = Vec::new();
    for c in &table {
        if c.n >= threshold && c.n <= last && c.distinct_count as i64 != a * c.n as i64 + b {
            failures.push(format!("f({}) = {}", c.n, c.distinct_count));
        }
        if c.n >= s_from && c.n < last && c.special_count as i64 != a {
            failures.push(format!("s({}) = {}", c.n, c.special_count));
        }
    }
    if !failures.is_empty() {
        em.record(&json!({ "verified": false, "failures": failures }))?;
        eprintln!("verification failed: {}", failures.join(", "));
        return Ok(Status::Mismatch);
    }
    em.record(&json!({ "verified": true, "from": threshold, "to": last }))?;
    eprintln!("verified on [{threshold}, {last}]");
    if let Some(path) = args.out {
        let text = serde_json::to_string_pretty(&spec.to_json_value())?;
        fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Status::Ok)
}

fn cmd_diagram<W: Write>(args: DiagramArgs, out: W) -> Result<Status> {
    let spec = load_spec(&args.spec)?;
    let diagram = build_diagram(&spec, args.n)?;
    let format = match args.format {
        FormatArg::Ascii => DiagramFormat::Ascii,
        FormatArg::Svg => DiagramFormat::Svg,
    };
    let text = render_diagram(&diagram, format);
    match args.out {
        Some(path) => fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => Emitter::new(out, false).raw(&text)?,
    }
    Ok(Status::Ok)
}

fn cmd_bench<W: Write>(args: BenchArgs, out: W) -> Result<Status> {
    ensure!(args.repeat >= 1, "--repeat must be at least 1");
    let spec = load_spec(&args.spec)?;
    let mut em = Emitter::new(out, false);
    em.record(&json!({ "command": "bench", "spec_sha256": spec_hash(&spec), "repeat": args.repeat }))?;
    for &n in &args.n_list {
        let mut best = Duration::MAX;
        let mut f = 0;
        for _ in 0..args.repeat {
            let start = Instant::now();
            f = complexity_closed(&spec, n)?;
            best = best.min(start.elapsed());
        }
        let start = Instant::now();
        let oracle = match oracle_table(&spec, n, CountingBackend::Automaton) {
            Ok(table) => {
                let c = table.last().context("empty oracle table")?;
                json!({
                    "status": "ok",
                    "f": c.distinct_count,
                    "prefix_bits": c.prefix_length_used,
                    "ms": ms(start.elapsed()),
                })
            }
            Err(Error::ResourceGuard { requested, cap }) => json!({
                "status": "refused",
                "requested_bits": requested.to_string(),
                "cap_bits": cap,
            }),
            Err(err) => return Err(err.into()),
        };
        em.record(&json!({ "n": n, "f": f, "closed_us": best.as_secs_f64() * 1e6, "oracle": oracle }))?;
    }
    Ok(Status::Ok)
}

fn cmd_classify<W: Write>(args: ClassifyArgs, out: W) -> Result<Status> {
    let spec = load_spec(&args.spec)?;
    let report = classify(&spec, args.horizon)?;
    let mut em = Emitter::new(out, false);
    em.record(&json!({ "command": "classify", "spec_sha256": spec_hash(&spec) }))?;
    em.record(&report)?;
    Ok(Status::Ok)
}

fn random_increasing(rng: &mut ChaCha8Rng) -> Result<(Vec<u64>, GapSpec)> {
    let len = rng.gen_range(2..8);
    let mut g = rng.gen_range(1..5u64);
    let mut gaps = vec![g];
    for _ in 1..len {
        g += rng.gen_range(1..5);
        gaps.push(g);
    }
    let spec = GapSpec::table(gaps.clone(), TailRule::SumPrevTwo)?.with_class(GapClass::StrictlyIncreasing);
    Ok((gaps, spec))
}

fn cmd_experiment<W: Write>(args: ExperimentArgs, out: W) -> Result<Status> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut em = Emitter::new(out, false);
    em.record(&json!({
        "command": "experiment",
        "seed": args.seed,
        "count": args.count,
        "horizon": args.horizon,
    }))?;
    let (mut negative, mut counterexamples) = (0, 0);
    for _ in 0..args.count {
        let (gaps, spec) = random_increasing(&mut rng)?;
        let probe = conjecture_probe(&spec, args.horizon)?;
        negative += u32::from(probe.has_negative_step);
        counterexamples += u32::from(probe.counterexample);
        em.record(&json!({ "gaps": gaps, "tail": "sum_prev_two", "probe": probe }))?;
    }
    em.record(&json!({
        "specs": args.count,
        "with_negative_step": negative,
        "counterexamples": counterexamples,
    }))?;
    Ok(Status::Ok)
}
