mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gorlab_core::classify::ClassifyOptions;
use gorlab_core::families::{FamilyKind, FamilySpec};
use gorlab_core::field::FieldSpec;
use gorlab_core::numsgp::{artinian_reduction, NumericalSemigroup};
use gorlab_core::spec::{AlgebraSpec, Instance};
use gorlab_core::verifier::{replay, run_suite, CheckId, CheckLimits, Outcome, SuiteConfig};
use gorlab_core::{with_algebra, with_field, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "gorenstein-lab", version, about = "Exact Gorenstein-type invariants of artinian algebras and numerical semigroup rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the algebra or semigroup described by a spec file.
    Analyze(AnalyzeArgs),
    /// Write the structure-constant spec of k[[S]]/(t^c).
    Reduce(ReduceArgs),
    /// Emit spec files for a family of instances.
    Generate(GenerateArgs),
    /// Run the property-check catalog.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Spec file (`-` for standard input).
    path: PathBuf,
    /// Include the weakly almost Gorenstein witness.
    #[arg(long)]
    certificates: bool,
    #[arg(long, env = "GORLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Extension degrees for repeating the WAG search, e.g. `1,2,3`.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    extensions: Vec<u32>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ReduceArgs {
    /// Semigroup generators, e.g. `3,7,8`.
    semigroup: String,
    /// The element `c` of the semigroup to divide by.
    #[arg(short = 'c', long = "element")]
    c: i64,
    #[arg(long, default_value = "2")]
    field: FieldSpec,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ci,
    C5,
    E51a,
    E51b,
    E51c,
    L57,
    RandomMonomial,
    RandomSemigroup,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Variable names for `ci` and `c5`.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Complete-intersection exponents for `ci` and `c5`.
    #[arg(long, value_delimiter = ',')]
    ci: Option<Vec<i64>>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    c: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    nvars: Option<i64>,
    #[arg(long)]
    maxdeg: Option<i64>,
    #[arg(long)]
    max_dim: Option<i64>,
    #[arg(long)]
    max_embdim: Option<i64>,
    #[arg(long)]
    max_gen: Option<i64>,
    #[arg(long)]
    count: Option<i64>,
    #[arg(long, env = "GORLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "2")]
    field: FieldSpec,
    /// Write one file per instance into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all`, or a comma-separated list of check ids.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, env = "GORLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Fields for the artinian corpus; the first one is also used for semigroup reductions.
    #[arg(long, value_delimiter = ',')]
    field: Option<Vec<FieldSpec>>,
    /// Dimension cap for algebras and semigroup reductions.
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long)]
    random_algebras: Option<usize>,
    #[arg(long)]
    semigroups: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Rerun the single check recorded in a failure payload.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Record wall times per check.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    out: Output,
}

/// Errors carried to the exit code.
enum Failure {
    Usage(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn header() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    format!("# generated by gorenstein-lab {} at unix time {secs}\n", env!("CARGO_PKG_VERSION"))
}

fn emit(out: &Output, body: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Usage(e.to_string()))
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn to_toml<T: Serialize>(value: &T) -> CliResult<String> {
    toml::to_string(value).map_err(|e| Failure::Usage(format!("cannot format report: {e}")))
}

fn analyze(args: &AnalyzeArgs) -> CliResult<u8> {
    let text = read_input(&args.path)?;
    let spec = AlgebraSpec::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", args.path.display())))?;
    let opts = ClassifyOptions { seed: args.seed, extension_degrees: args.extensions.clone(), ..ClassifyOptions::default() };
    let label = spec.label().map(str::to_string);
    let body = match spec.build()? {
        Instance::Algebra(any) => {
            with_algebra!(&any, alg => to_toml(&report::analyze_algebra(alg, label, &opts, args.certificates)?)?)
        }
        Instance::Semigroup { semigroup, field } => {
            with_field!(field, f => to_toml(&report::analyze_semigroup(f, &semigroup, label, &opts)?)?)
        }
    };
    emit(&args.out, &format!("{}{body}", header()))?;
    Ok(0)
}

fn reduce(args: &ReduceArgs) -> CliResult<u8> {
    let s = NumericalSemigroup::parse(&args.semigroup)?;
    let spec = with_field!(args.field, f => {
        let alg = artinian_reduction(f, &s, args.c)?;
        AlgebraSpec::from_algebra(&alg)?
    });
    let spec = spec.with_label(format!("{s} mod t^{}", args.c));
    emit(&args.out, &spec.to_text())?;
    Ok(0)
}

fn family_spec(args: &GenerateArgs) -> FamilySpec {
    let kind = match args.family {
        FamilyArg::Ci => FamilyKind::Ci,
        FamilyArg::C5 => FamilyKind::C5,
        FamilyArg::E51a => FamilyKind::E51a,
        FamilyArg::E51b => FamilyKind::E51b,
        FamilyArg::E51c => FamilyKind::E51c,
        FamilyArg::L57 => FamilyKind::L57,
        FamilyArg::RandomMonomial => FamilyKind::RandomMonomial,
        FamilyArg::RandomSemigroup => FamilyKind::RandomSemigroup,
    };
    let mut parameters = std::collections::BTreeMap::new();
    for (i, &e) in args.ci.iter().flatten().enumerate() {
        parameters.insert(format!("a{}", i + 1), e);
    }
    let named = [
        ("a", args.a),
        ("b", args.b),
        ("c", args.c),
        ("n", args.n),
        ("p", args.p),
        ("nvars", args.nvars),
        ("maxdeg", args.maxdeg),
        ("max_dim", args.max_dim),
        ("max_embdim", args.max_embdim),
        ("max_gen", args.max_gen),
        ("count", args.count),
    ];
    for (k, v) in named {
        if let Some(v) = v {
            parameters.insert(k.to_string(), v);
        }
    }
    FamilySpec { kind, parameters, seed: args.seed, field: args.field, vars: args.vars.clone() }
}

fn generate(args: &GenerateArgs) -> CliResult<u8> {
    let specs = family_spec(args).generate()?;
    match &args.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            for (i, spec) in specs.iter().enumerate() {
                let path = dir.join(format!("{i:04}.toml"));
                fs::write(&path, spec.to_text()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
        }
        None => {
            let docs: Vec<String> = specs.iter().map(AlgebraSpec::to_text).collect();
            emit(&Output { output: None }, &docs.join("\n# ---\n\n"))?;
        }
    }
    Ok(0)
}

fn verify(args: &VerifyArgs) -> CliResult<u8> {
    if let Some(path) = &args.replay {
        let result = replay(&read_input(path)?)?;
        let code = if result.verdict == Outcome::Fail { EXIT_FAIL } else { 0 };
        emit(&args.out, &format!("{}{}", header(), to_toml(&result)?))?;
        return Ok(code);
    }
    let mut config = SuiteConfig { seed: args.seed, ..SuiteConfig::default() };
    if args.suite != "all" {
        config.checks = args
            .suite
            .split(',')
            .map(|s| s.parse::<CheckId>())
            .collect::<gorlab_core::Result<_>>()?;
    }
    if let Some(fields) = &args.field {
        config.fields = fields.clone();
    }
    if let Some(d) = args.max_dim {
        config.limits = CheckLimits { max_dim: d, max_reduction_dim: d, ..config.limits };
    }
    if let Some(n) = args.random_algebras {
        config.random_algebras = n;
    }
    if let Some(n) = args.semigroups {
        config.semigroups = n;
    }
    let report = run_suite(&config, args.jobs, args.timings)?;
    emit(&args.out, &format!("{}{}", header(), report.to_text()))?;
    let s = &report.summary;
    eprintln!(
        "{} checks on {} instances: {} pass, {} fail, {} skipped, {} hypothesis not met",
        s.total, report.instances, s.pass, s.fail, s.skipped, s.hypothesis_not_met
    );
    Ok(if s.fail > 0 { EXIT_FAIL } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Reduce(a) => reduce(a),
        Command::Generate(a) => generate(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAPACITY)
        }
    }
}
