use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use jackbessel::bessel::{bessel_a, bessel_b, MultiplicityB, SeriesConfig, SeriesValue};
use jackbessel::exec::Execution;
use jackbessel::experiment::{
    parse_grid, run_convergence, write_rows, write_summary, write_table, ExperimentSpec, Format, KPrimeSchedule,
    CONVERGE_SERIES,
};
use jackbessel::limits::{lim_bessel_a, lim_bessel_b};
use jackbessel::numeric::parse_rational;
use jackbessel::vk::{
    estimate_params, generate_vk, generate_vk_plus, geometric_preset, PRule, Preset, TriangularArray, VKParams,
};
use jackbessel::{Error, JackParam, Partition};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_SELFTEST: u8 = 3;

#[derive(Parser)]
#[command(name = "jackbessel", version, about = "Bessel functions of root systems A and B, their infinite-rank limits, and convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate J_A(λ, z) by its Jack series.
    BesselA(BesselArgs),
    /// Evaluate J_B(λ, z) by its Jack series.
    BesselB(BesselArgs),
    /// Evaluate the infinite-rank type A limit at real points.
    LimitA(LimitArgs),
    /// Evaluate the infinite-rank type B limit at real points.
    LimitB(LimitArgs),
    /// Write rows of a VK sequence with the given parameters.
    VkGenerate(GenerateArgs),
    /// Estimate VK parameters of the rows of a triangular array.
    VkAnalyze(AnalyzeArgs),
    /// Compare type A Bessel functions along a VK sequence with their limit.
    ConvergeA(ConvergeArgs),
    /// Compare type B Bessel functions along a VK sequence with their limit.
    ConvergeB(ConvergeArgs),
    /// Run every property suite and print a JSON summary.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SeriesArgs {
    /// Largest total degree summed.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Relative size below which a degree layer counts as negligible.
    #[arg(long)]
    tol: Option<f64>,
}

impl SeriesArgs {
    fn config(&self, base: SeriesConfig) -> SeriesConfig {
        SeriesConfig {
            max_degree: self.max_degree.unwrap_or(base.max_degree),
            rel_tol: self.tol.unwrap_or(base.rel_tol),
            ..base
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the main output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

impl OutputArgs {
    fn format(&self) -> Format {
        self.format.parse().expect("restricted by clap")
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => Ok(fs::write(path, text)?),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Args)]
struct BesselArgs {
    /// Multiplicity k as an exact rational, e.g. 1/2.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    k: String,
    /// Multiplicity k′ of the short roots (type B only).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    kprime: String,
    /// Spectral parameter λ ∈ C^n, comma separated; complex entries as 1+2i.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Evaluation point z ∈ C^r with r ≤ n.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    k: String,
    /// JSON file {"alpha": [...], "beta": b, "gamma": g}.
    #[arg(long)]
    omega: PathBuf,
    /// A single point, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x_grid")]
    x: Option<String>,
    /// Points as a file or grid:a:b:NxR / random:a:b:NxR, optionally with :chamber.
    #[arg(long, allow_hyphen_values = true)]
    x_grid: Option<String>,
    /// Seed for random grids.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    omega: PathBuf,
    /// Row lengths to write, e.g. 8,16,32,64.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    /// Use the nonnegative generator; needs gamma = 0 and alpha ≥ 0.
    #[arg(long)]
    positive: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Triangular array file: row n holds n whitespace separated values.
    array: PathBuf,
    /// Number of leading entries reported as α̂.
    #[arg(long, default_value_t = 2)]
    i_max: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long)]
    k: Option<String>,
    /// Constant k′ (type B without a preset).
    #[arg(long)]
    kprime: Option<String>,
    #[arg(long)]
    omega: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    n_list: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x_grid: String,
    /// Geometric preset R, C or H (type B).
    #[arg(long)]
    preset: Option<String>,
    /// p_n as n, 2n or n+c (with --preset).
    #[arg(long, default_value = "n")]
    p_rule: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the per-n summary here instead of standard output.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Evaluate on one thread.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Corrupt one cached Jack expansion before running.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::Io(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            })
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::BesselA(args) => bessel(args, false),
        Command::BesselB(args) => bessel(args, true),
        Command::LimitA(args) => limit(args, false),
        Command::LimitB(args) => limit(args, true),
        Command::VkGenerate(args) => vk_generate(args),
        Command::VkAnalyze(args) => vk_analyze(args),
        Command::ConvergeA(args) => converge(args, false),
        Command::ConvergeB(args) => converge(args, true),
        Command::Selftest(args) => Ok(selftest(args)),
    }
}

fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Complex64>().map_err(|_| Error::Parse(format!("not a complex number: {t:?}")))
        })
        .collect()
}

fn parse_real_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect()
}

#[derive(serde::Deserialize)]
struct OmegaFile {
    #[serde(default)]
    alpha: Vec<f64>,
    #[serde(default)]
    beta: f64,
    #[serde(default)]
    gamma: f64,
}

fn read_omega(path: &Path) -> Result<VKParams, Error> {
    let text = fs::read_to_string(path)?;
    let raw: OmegaFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    VKParams::new(raw.alpha, raw.beta, raw.gamma)
}

fn excluded_json(excluded: &[Partition]) -> serde_json::Value {
    excluded.iter().map(|p| serde_json::Value::from(p.to_string())).collect()
}

fn series_output(v: &SeriesValue, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "re": v.value.re,
                "im": v.value.im,
                "degree": v.degree,
                "truncated": v.truncated,
                "tail_estimate": v.tail_estimate,
                "excluded": excluded_json(&v.excluded),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("plain values")))
        }
        Format::Csv => {
            let header: Vec<String> =
                ["re", "im", "degree", "truncation_flag", "tail_estimate"].iter().map(|s| s.to_string()).collect();
            let record = vec![
                v.value.re.to_string(),
                v.value.im.to_string(),
                v.degree.to_string(),
                u8::from(v.truncated).to_string(),
                v.tail_estimate.to_string(),
            ];
            write_table(&header, &[record], Format::Csv)
        }
    }
}

fn bessel(args: BesselArgs, type_b: bool) -> Result<ExitCode, Error> {
    let k: JackParam = args.k.parse()?;
    let lambda = parse_complex_list(&args.lambda)?;
    let z = parse_complex_list(&args.z)?;
    let cfg = args.series.config(SeriesConfig::default());
    let value = if type_b {
        let mult = MultiplicityB::new(parse_rational(&args.kprime)?, k)?;
        bessel_b(&mult, &lambda, &z, &cfg)?
    } else {
        bessel_a(&k, &lambda, &z, &cfg)?
    };
    if !value.excluded.is_empty() {
        eprintln!("warning: {} partitions dropped by the Pochhammer guard", value.excluded.len());
    }
    args.output.emit(&series_output(&value, args.output.format())?)?;
    Ok(ExitCode::SUCCESS)
}

fn limit(args: LimitArgs, type_b: bool) -> Result<ExitCode, Error> {
    let k: JackParam = args.k.parse()?;
    let omega = read_omega(&args.omega)?;
    let points = match (&args.x, &args.x_grid) {
        (Some(x), _) => vec![parse_real_list(x)?],
        (None, Some(spec)) => parse_grid(spec, args.seed)?,
        (None, None) => return Err(Error::Parse("give --x or --x-grid".into())),
    };
    let r = points.first().map_or(0, Vec::len);
    let mut header: Vec<String> = (1..=r).map(|i| format!("x_{i}")).collect();
    header.extend(["re", "im"].iter().map(|s| s.to_string()));
    let mut records = Vec::with_capacity(points.len());
    for x in &points {
        if x.len() != r {
            return Err(Error::Precondition("grid points must share one dimension".into()));
        }
        let v = if type_b { Complex64::new(lim_bessel_b(&omega, &k, x)?, 0.0) } else { lim_bessel_a(&omega, &k, x) };
        let mut rec: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        rec.push(v.re.to_string());
        rec.push(v.im.to_string());
        records.push(rec);
    }
    args.output.emit(&write_table(&header, &records, args.output.format())?)?;
    Ok(ExitCode::SUCCESS)
}

fn vk_generate(args: GenerateArgs) -> Result<ExitCode, Error> {
    let omega = read_omega(&args.omega)?;
    let plus = if args.positive { Some(omega.to_plus()?) } else { None };
    let mut arr = TriangularArray::new();
    for &n in &args.n_list {
        let row = match &plus {
            Some(p) => generate_vk_plus(p, n)?,
            None => generate_vk(&omega, n)?,
        };
        arr.insert(n, row)?;
    }
    let text = arr.to_text();
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn vk_analyze(args: AnalyzeArgs) -> Result<ExitCode, Error> {
    let arr = TriangularArray::parse(&fs::read_to_string(&args.array)?)?;
    let mut header = vec!["n".to_string()];
    header.extend((1..=args.i_max).map(|i| format!("alpha_hat_{i}")));
    header.extend(["beta_hat", "delta_hat", "gamma_hat"].iter().map(|s| s.to_string()));
    let mut records = Vec::new();
    for (n, _) in arr.rows() {
        let est = estimate_params(&arr, n, args.i_max.min(n))?;
        let mut rec = vec![n.to_string()];
        rec.extend((0..args.i_max).map(|i| est.alpha_hat.get(i).copied().unwrap_or(0.0).to_string()));
        rec.extend([est.beta_hat, est.delta_hat, est.gamma_hat].iter().map(|v| v.to_string()));
        records.push(rec);
    }
    args.output.emit(&write_table(&header, &records, args.output.format())?)?;
    Ok(ExitCode::SUCCESS)
}

fn converge(args: ConvergeArgs, type_b: bool) -> Result<ExitCode, Error> {
    let omega = read_omega(&args.omega)?;
    let grid = parse_grid(&args.x_grid, args.seed)?;
    let mut spec = if type_b {
        match (&args.preset, &args.kprime) {
            (Some(name), None) => {
                let preset = geometric_preset(name.parse::<Preset>()?.dim(), args.p_rule.parse::<PRule>()?)?;
                if let Some(k) = &args.k {
                    if k.parse::<JackParam>()? != preset.k() {
                        return Err(Error::Precondition(format!("preset {name} fixes k = {}", preset.k())));
                    }
                }
                ExperimentSpec::converge_b(preset, omega.to_plus()?, args.n_list.clone(), grid)
            }
            (None, Some(kp)) => {
                let k: JackParam = args.k.as_deref().unwrap_or("1").parse()?;
                let plus = omega.to_plus()?;
                let base = geometric_preset(1, PRule::identity())?;
                let mut spec = ExperimentSpec::converge_b(base, plus, args.n_list.clone(), grid);
                spec.k = k;
                spec.preset = None;
                spec.k_prime = Some(KPrimeSchedule::Constant(parse_rational(kp)?));
                spec
            }
            (Some(_), Some(_)) => return Err(Error::Parse("give either --preset or --kprime, not both".into())),
            (None, None) => return Err(Error::Parse("type B runs need --preset or --kprime".into())),
        }
    } else {
        let k: JackParam = args.k.as_deref().unwrap_or("1").parse()?;
        ExperimentSpec::converge_a(k, omega, args.n_list.clone(), grid)
    };
    spec.series = args.series.config(CONVERGE_SERIES);
    if args.sequential {
        spec.exec = Execution::Sequential;
    }
    let report = run_convergence(&spec)?;
    let format = args.output.format();
    let summary = write_summary(&report.summary, format)?;
    match &args.summary {
        Some(path) => fs::write(path, &summary)?,
        None => print!("{summary}"),
    }
    if let Some(path) = &args.output.out {
        fs::write(path, write_rows(&report.rows, format)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(args: SelftestArgs) -> ExitCode {
    if args.inject_fault {
        let k = JackParam::from_ratio(1, 1).expect("positive");
        jackbessel::symfun::inject_fault(&Partition::from_unsorted(vec![2, 1]), &k);
    }
    let summary = jackbessel::selftest::run(args.seed);
    println!("{}", serde_json::to_string_pretty(&summary).expect("plain values"));
    match &summary.first_failure {
        None => ExitCode::SUCCESS,
        Some(name) => {
            eprintln!("selftest failed: {name}");
            ExitCode::from(EXIT_SELFTEST)
        }
    }
}
