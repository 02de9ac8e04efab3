mod config;

use clap::{Args, Parser, Subcommand};
use config::SpecArgs;
use ringcodes::construct::{EnumLimits, GroupSpec, RingCode};
use ringcodes::gray::{gray_code, GrayCtx};
use ringcodes::report::{construct_report, SCHEMA};
use ringcodes::verify::{sweep, verify_suite, SweepEntry, SweepLimits, SweepResult, TheoremId};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_NO_INSTANCE: u8 = 4;

#[derive(Parser)]
#[command(name = "ringcodes", version, about = "Trace codes over F_q[x]/(x^2) and GR(p^2, m)")]
struct Cli {
    /// TOML file with the same keys as the flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate one code and write its report
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        /// Enumerate even when condition (*) fails
        #[arg(long)]
        force_enumerate: bool,
    },
    /// Run a theorem suite on one spec, or on every admissible spec for p, m, s
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// A theorem id, a comma-separated list, or "all"
        #[arg(long)]
        suite: Option<String>,
    },
    /// Verify every admissible instance within the limits
    Sweep {
        #[command(flatten)]
        limits: SweepArgs,
        /// Include every verdict in the report, not only mismatches and skips
        #[arg(long)]
        verdicts: bool,
    },
    /// Write the generator matrix and/or the Gray-image word list
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        gen_matrix: Option<PathBuf>,
        #[arg(long)]
        gray_words: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    max_p: Option<u32>,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_s: Option<u32>,
    #[arg(long)]
    max_e: Option<u64>,
    #[arg(long)]
    max_l: Option<u32>,
    /// Comma-separated theorem ids (default: all except cor33_2)
    #[arg(long)]
    suite: Option<String>,
    /// Profile every codeword instead of one per orbit
    #[arg(long)]
    full_enumeration: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, msg: msg.into() }
    }
}

impl From<ringcodes::Error> for Failure {
    fn from(e: ringcodes::Error) -> Self {
        use ringcodes::Error as E;
        let code = match e {
            E::EnumerationCapExceeded(_) | E::SizeCapExceeded { .. } => EXIT_CAP,
            E::PreconditionNotMet(_) => EXIT_NO_INSTANCE,
            _ => EXIT_INVALID,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let file = config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Construct { spec, force_enumerate } => {
            construct(&spec.merged(&file.spec), force_enumerate || file.force_enumerate.unwrap_or(false))
        }
        Command::Verify { spec, suite } => {
            let suite = suite.or(file.suite.clone()).unwrap_or_else(|| "all".into());
            verify(&spec.merged(&file.spec), &suite)
        }
        Command::Sweep { limits, verdicts } => {
            let lim = SweepArgs {
                max_p: limits.max_p.or(file.max_p),
                max_m: limits.max_m.or(file.max_m),
                max_s: limits.max_s.or(file.max_s),
                max_e: limits.max_e.or(file.max_e),
                max_l: limits.max_l.or(file.max_l),
                suite: limits.suite.or(file.suite.clone()),
                workers: limits.workers.or(file.spec.workers),
                out: limits.out.or(file.spec.out.clone()),
                ..limits
            };
            run_sweep(&lim, verdicts)
        }
        Command::Export { spec, gen_matrix, gray_words } => export(
            &spec.merged(&file.spec),
            gen_matrix.or(file.gen_matrix.clone()).as_deref(),
            gray_words.or(file.gray_words.clone()).as_deref(),
        ),
    }
}

fn enum_limits(workers: Option<usize>) -> EnumLimits {
    EnumLimits::with_workers(workers)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::invalid(e.to_string()))?;
    text.push('\n');
    write_output(out, &text)
}

fn construct(args: &SpecArgs, force: bool) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let code = RingCode::new(spec)?;
    if !code.check().star && !force {
        return Err(Failure::invalid(format!(
            "e = {} does not satisfy condition (*) gcd(e, (Q-1)/(q-1)) = 1; use --force-enumerate to enumerate anyway",
            code.spec().e
        )));
    }
    let report = construct_report(&code, &enum_limits(args.workers))?;
    write_json(args.out.as_deref(), &report)?;
    Ok(0)
}

fn parse_suite(suite: &str) -> Result<Vec<TheoremId>, Failure> {
    if suite == "all" {
        return Ok(TheoremId::SWEEP_DEFAULT.to_vec());
    }
    suite.split(',').map(|s| s.trim().parse().map_err(Failure::from)).collect()
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    schema: &'static str,
    command: &'static str,
    suite: Vec<TheoremId>,
    all_match: bool,
    instances: u64,
    counts: &'a std::collections::BTreeMap<TheoremId, ringcodes::verify::TheoremCounts>,
    weight_classes: &'a std::collections::BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    limits: Option<LimitsEcho>,
    entries: Vec<&'a SweepEntry>,
}

#[derive(Serialize)]
struct LimitsEcho {
    max_p: u32,
    max_m: u32,
    max_s: u32,
    max_e: Option<u64>,
    max_l: Option<u32>,
    orbit_reduction: bool,
}

fn suite_report<'a>(
    command: &'static str,
    suite: Vec<TheoremId>,
    r: &'a SweepResult,
    limits: Option<LimitsEcho>,
    all_entries: bool,
) -> SuiteReport<'a> {
    SuiteReport {
        schema: SCHEMA,
        command,
        suite,
        all_match: r.all_match(),
        instances: r.instances,
        counts: &r.counts,
        weight_classes: &r.weight_classes,
        limits,
        entries: r
            .entries
            .iter()
            .filter(|e| all_entries || !matches!(e, SweepEntry::Verdict(v) if v.matched))
            .collect(),
    }
}

fn finish(r: &SweepResult) -> u8 {
    if let Some(v) = r.mismatches().next() {
        eprintln!(
            "mismatch: {} on {}: {}",
            v.theorem,
            serde_json::to_string(&v.spec).unwrap_or_default(),
            v.diff.first().map(String::as_str).unwrap_or("")
        );
        return EXIT_MISMATCH;
    }
    0
}

fn verify(args: &SpecArgs, suite: &str) -> Result<u8, Failure> {
    let ids = parse_suite(suite)?;
    let limits = enum_limits(args.workers);
    let specified = args.ring.is_some() && args.e.is_some() && args.v.is_some();
    let result = if specified {
        verify_suite(&args.spec()?, &ids, &limits)?
    } else {
        let (p, m, s) = args.pms()?;
        if !ringcodes::gf::poly::is_prime(p as u64) {
            return Err(ringcodes::Error::NonPrime(p as u64).into());
        }
        let mut lim = SweepLimits::new(p, m, s);
        lim.theorems = ids.clone();
        lim.enum_limits.workers = args.workers;
        if let Some(kind) = args.kind()? {
            lim.kinds = vec![kind];
        }
        lim.max_e = args.e;
        let mut r = sweep(&lim);
        // only the requested (p, m, s); the sweep also covers smaller ones
        r.entries.retain(|entry| {
            let echo = match entry {
                SweepEntry::Verdict(v) => &v.spec,
                SweepEntry::Skipped { spec, .. } => spec,
            };
            echo.p == p && echo.m == m && echo.s == s && args.e.is_none_or(|e| echo.e == e)
        });
        recount(&mut r);
        r
    };
    let report = suite_report("verify", ids, &result, None, true);
    write_json(args.out.as_deref(), &report)?;
    if result.verdicts().next().is_none() {
        return Err(Failure { code: EXIT_NO_INSTANCE, msg: "no instance satisfies hypotheses".into() });
    }
    Ok(finish(&result))
}

/// Rebuilds match counts from the retained entries.
fn recount(r: &mut SweepResult) {
    r.counts.clear();
    r.instances = 0;
    r.weight_classes.clear();
    let mut seen = std::collections::BTreeSet::new();
    for e in &r.entries {
        if let SweepEntry::Verdict(v) = e {
            let c = r.counts.entry(v.theorem).or_default();
            if v.matched {
                c.matched += 1;
            } else {
                c.mismatched += 1;
            }
            if !v.theorem.ring_level() {
                seen.insert(serde_json::to_string(&v.spec).unwrap_or_default());
            }
        }
    }
    r.instances = seen.len() as u64;
}

fn run_sweep(args: &SweepArgs, all_entries: bool) -> Result<u8, Failure> {
    let mut lim = SweepLimits::new(args.max_p.unwrap_or(0), args.max_m.unwrap_or(0), args.max_s.unwrap_or(0));
    lim.max_e = args.max_e;
    lim.max_l = args.max_l;
    lim.enum_limits.workers = args.workers;
    lim.enum_limits.orbit_reduction = !args.full_enumeration;
    if let Some(suite) = &args.suite {
        lim.theorems = parse_suite(suite)?;
    }
    let r = sweep(&lim);
    let echo = LimitsEcho {
        max_p: lim.max_p,
        max_m: lim.max_m,
        max_s: lim.max_s,
        max_e: lim.max_e,
        max_l: lim.max_l,
        orbit_reduction: lim.enum_limits.orbit_reduction,
    };
    let report = suite_report("sweep", lim.theorems.clone(), &r, Some(echo), all_entries);
    write_json(args.out.as_deref(), &report)?;
    Ok(finish(&r))
}

fn export(args: &SpecArgs, gen_matrix: Option<&Path>, gray_words: Option<&Path>) -> Result<u8, Failure> {
    if gen_matrix.is_none() && gray_words.is_none() {
        return Err(Failure::invalid("nothing to export: pass --gen-matrix and/or --gray-words"));
    }
    let spec: GroupSpec = args.spec()?;
    let code = RingCode::new(spec)?;
    if let Some(path) = gen_matrix {
        write_output(Some(path), &code.export_generator_matrix()?)?;
    }
    if let Some(path) = gray_words {
        let ctx = GrayCtx::for_code(&code);
        let fc = gray_code(&code, &ctx, &enum_limits(args.workers))?;
        write_output(Some(path), &fc.export(&ctx))?;
    }
    Ok(0)
}
