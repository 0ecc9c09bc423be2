use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wildprim_cli::cache::ClassCache;
use wildprim_cli::catalog::{self, CatalogFile, Metadata, SCHEMA_VERSION};
use wildprim::enumerator::{self, RepresentationInfo};
use wildprim::verify::{self, Suite};
use wildprim::{BaseFieldSpec, Characteristic, EnumerateOptions, Exec, PrecisionPolicy, TameTower};

/// Enumerate primitive p-power degree extensions of local fields.
#[derive(Parser, Debug)]
#[command(name = "wildprim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the catalog of primitive extensions of degree p^n.
    Enumerate(EnumerateArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// List the simple n-dimensional representations of the tame Galois group.
    Reps(RepsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CharArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "p")]
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Args, Debug)]
struct BaseArgs {
    /// Residue characteristic.
    #[arg(long)]
    p: u32,
    /// Residue degree of the base field.
    #[arg(long, default_value_t = 1)]
    f: usize,
    /// Characteristic of the base field: 0 (unramified over Q_p) or p (F_q((t))).
    #[arg(long = "char", value_enum, default_value = "0")]
    characteristic: CharArg,
    /// Degree exponent: extensions of degree p^n.
    #[arg(long)]
    n: u32,
    /// MeatAxe sampling seed (the output does not depend on it).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BaseArgs {
    fn base(&self) -> Result<BaseFieldSpec> {
        let c = match self.characteristic {
            CharArg::Zero => Characteristic::Zero,
            CharArg::P => Characteristic::P,
        };
        Ok(BaseFieldSpec::new(self.p, self.f, c)?)
    }
}

#[derive(Args, Debug)]
struct CacheArgs {
    /// Cache directory (default: $WILDPRIM_CACHE_DIR, else .wildprim-cache).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// Pole-order bound (required in characteristic p).
    #[arg(long)]
    level_bound: Option<usize>,
    /// Working precision in powers of the tower uniformizer (characteristic 0).
    #[arg(long)]
    precision: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Serial reference execution.
    #[arg(long)]
    single_thread: bool,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    single_thread: bool,
}

#[derive(Args, Debug)]
struct RepsArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Serialize)]
struct RepsFile {
    schema_version: u32,
    tool_version: String,
    base: String,
    n: u32,
    seed: u64,
    group_order: u64,
    representations: Vec<RepresentationInfo>,
}

fn exec(single_thread: bool) -> Exec {
    if single_thread {
        Exec::Serial
    } else {
        Exec::Parallel
    }
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<bool> {
    let base = args.base.base()?;
    let n = args.base.n;
    let seed = args.base.seed;
    let opts = EnumerateOptions {
        level_bound: args.level_bound,
        precision: PrecisionPolicy { digits: args.precision, ..PrecisionPolicy::default() },
        seed,
        exec: exec(args.single_thread),
    };
    let cache = ClassCache::resolve(args.cache.cache_dir, args.cache.no_cache);
    let tower = TameTower::build(base, n, opts.precision)?;
    let cached = cache.load(base, n, seed).filter(|c| enumerator::classes_consistent(&tower, c));
    let hit = cached.is_some();
    let en = enumerator::enumerate_full(base, n, opts, cached)?;
    if !hit {
        cache.store(base, n, seed, &en.classes);
    }
    let metadata = Metadata::new(en.module.tower(), args.level_bound, seed, en.module.dim(), en.records.len());
    let bytes = match args.format {
        Format::Json => {
            CatalogFile { schema_version: SCHEMA_VERSION, metadata, records: en.records.clone() }.to_json()?.into_bytes()
        }
        Format::Csv => {
            let mut buf = Vec::new();
            catalog::write_csv(&en.records, &mut buf)?;
            buf
        }
    };
    emit(args.out.as_ref(), &bytes)?;
    if let Some(path) = &args.out {
        eprintln!("wrote {} records to {}", en.records.len(), path.display());
    }
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let suite = match args.suite {
        SuiteArg::Quick => Suite::Quick,
        SuiteArg::Full => Suite::Full,
    };
    let report = verify::run_suite(suite, args.seed, exec(args.single_thread));
    let bytes = match args.format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} {}: measured {} expected {}\n", c.name, c.measured, c.expected));
            }
            let failed = report.failures().count();
            s.push_str(&format!("{} checks, {} passed, {failed} failed\n", report.checks.len(), report.checks.len() - failed));
            s
        }
    };
    emit(args.out.as_ref(), bytes.as_bytes())?;
    Ok(report.all_passed())
}

fn cmd_reps(args: RepsArgs) -> Result<bool> {
    let base = args.base.base()?;
    let (n, seed) = (args.base.n, args.base.seed);
    let tower = TameTower::build(base, n, PrecisionPolicy::default())?;
    let cache = ClassCache::resolve(args.cache.cache_dir, args.cache.no_cache);
    let classes = match cache.load(base, n, seed).filter(|c| enumerator::classes_consistent(&tower, c)) {
        Some(c) => c,
        None => {
            let c = enumerator::group_classes(&tower, seed)?;
            cache.store(base, n, seed, &c);
            c
        }
    };
    let reps = enumerator::describe_classes(&tower, &classes, n);
    let bytes = match args.format {
        Format::Json => {
            let file = RepsFile {
                schema_version: SCHEMA_VERSION,
                tool_version: env!("CARGO_PKG_VERSION").into(),
                base: base.name(),
                n,
                seed,
                group_order: tower.group().order(),
                representations: reps,
            };
            let mut s = serde_json::to_string_pretty(&file)?;
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "dim", "end_degree", "regular_multiplicity", "fingerprint", "inertia_exponent"])?;
            for r in &reps {
                w.write_record([
                    r.label.clone(),
                    r.dim.to_string(),
                    r.end_degree.to_string(),
                    r.regular_multiplicity.to_string(),
                    r.fingerprint.clone(),
                    r.inertia_exponent.map(|x| x.to_string()).unwrap_or_default(),
                ])?;
            }
            w.into_inner()?
        }
    };
    emit(args.out.as_ref(), &bytes)?;
    Ok(true)
}

/// 2 for invariant violations and failed checks, 3 for exhausted precision, 1 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<wildprim::Error>() {
        Some(wildprim::Error::InvariantViolation(_) | wildprim::Error::Inconsistent) => 2,
        Some(wildprim::Error::PrecisionExhausted(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Reps(a) => cmd_reps(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
