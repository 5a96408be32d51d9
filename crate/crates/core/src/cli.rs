//! The `qneg` command line.
//!
//! Exit status: 0 on success, 1 when a computation or contract check fails,
//! 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::builtin::{builtin_qrep_labels, resolve_qrep};
use crate::error::{Error, Result};
use crate::io::{self, MatrixLiteral, QRepFile, VectorLiteral};
use crate::negativity::{
    ceiling_negativity, np_negativity, np_negativity_ascent, sum_negativity_exhaustive,
    sum_negativity_stochastic_with, AscentOptions, NegativityReport, NormOrder, StochasticOptions,
    DEFAULT_TOL,
};
use crate::operators::{random_pure_state, DensityMatrix};
use crate::qrep::{represent, validate_qrep};
use crate::repro::{cmd_reproduce, render_table, Scope, D8_DEFAULT_SEEDS};
use crate::sic::{ceiling_bounds, load_sic, sic_qreps};
use crate::stationary::{local_max_certificate, max_stationary_sum_negativity, stationary_table, stationary_values, CLUSTER_TOL};
use crate::sweep::{conjecture_sweep, SweepOptions};
use crate::wh::{check_wh_fiducial_d3, WhSampleParams};

#[derive(Parser, Debug)]
#[command(name = "qneg", version, about = "Negativity of quasiprobability representations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Q-rep conditions for a list of operators.
    Validate(ValidateArgs),
    /// Quasiprobability vector of a state.
    Represent(RepresentArgs),
    /// N^p negativity of a Q-rep.
    Negativity(NegativityArgs),
    /// Shipped SICs: Gram matrix, fiducial, Q-reps, ceiling bounds.
    Sic(SicArgs),
    /// Weyl-Heisenberg fiducials in dimension 3.
    Wh(WhArgs),
    /// Stationary two- and three-valued vectors.
    Stationary(StationaryArgs),
    /// Local-maximum certificate for a negativity report.
    Certify(CertifyArgs),
    /// Recompute every headline number.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
struct QRepSource {
    /// Builtin label or path to a Q-rep JSON file.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    qrep: Option<String>,
    /// Builtin label (see `--list`).
    #[arg(long)]
    builtin: Option<String>,
}

impl QRepSource {
    fn spec(&self) -> &str {
        self.qrep.as_deref().or(self.builtin.as_deref()).expect("clap enforces one source")
    }
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long, conflicts_with = "builtin", required_unless_present_any = ["builtin", "list"])]
    qrep: Option<String>,
    #[arg(long)]
    builtin: Option<String>,
    /// Print every builtin label.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct RepresentArgs {
    #[command(flatten)]
    source: QRepSource,
    /// Pure state as a vector literal.
    #[arg(long, group = "state")]
    vector: Option<PathBuf>,
    /// Density matrix as a matrix literal.
    #[arg(long, group = "state")]
    density: Option<PathBuf>,
    /// Haar-random pure state from this seed.
    #[arg(long, group = "state")]
    random_seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NegativityArgs {
    #[command(flatten)]
    source: QRepSource,
    /// 1, 2, inf, or any real p >= 1.
    #[arg(long, default_value = "1")]
    p: String,
    /// Scan every partial sum (p = 1, d <= 5).
    #[arg(long, conflicts_with = "seeds")]
    exhaustive: bool,
    /// Random starts for the stochastic or gradient search.
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, env = "QNEG_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SicEmit {
    Gram,
    Fiducial,
    Qplus,
    Qminus,
    Bounds,
}

#[derive(Args, Debug)]
struct SicArgs {
    #[arg(long)]
    label: String,
    #[arg(long, value_enum, default_value = "gram")]
    emit: SicEmit,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WhArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Check the fiducial conditions for a matrix literal.
    #[arg(long, group = "mode")]
    check: Option<PathBuf>,
    /// `angle,polar,azimuth,twist[,branch]`
    #[arg(long, group = "mode", allow_hyphen_values = true)]
    sample: Option<String>,
    /// Random valid fiducial from this seed.
    #[arg(long, group = "mode")]
    random_seed: Option<u64>,
    /// Sweep this many random fiducials for the smallest sum negativity.
    #[arg(long, group = "mode")]
    sweep: Option<usize>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long, env = "QNEG_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct StationaryArgs {
    #[arg(long)]
    dim: usize,
    /// Every feasible (n, m).
    #[arg(long, conflicts_with_all = ["n", "m"])]
    table: bool,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormat,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long)]
    report: PathBuf,
    #[command(flatten)]
    source: QRepSource,
    #[arg(long, default_value_t = CLUSTER_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(long, default_value = "all")]
    scope: String,
    #[arg(long, env = "QNEG_THREADS", default_value_t = 1)]
    threads: usize,
    /// Seeds for the d = 8 search; 0 skips it.
    #[arg(long, default_value_t = D8_DEFAULT_SEEDS)]
    seeds: u64,
    /// Also write the table as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            // --help and --version exit 0; everything else is a usage error
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Error::Parse(msg)) | Err(Error::InvalidArgument(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit<T: Serialize>(value: &T, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => io::write_json(p, value),
        None => {
            writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
            Ok(())
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Validate(a) => validate(a, out),
        Command::Represent(a) => represent_cmd(a, out),
        Command::Negativity(a) => negativity(a, out),
        Command::Sic(a) => sic(a, out),
        Command::Wh(a) => wh(a, out),
        Command::Stationary(a) => stationary(a, out),
        Command::Certify(a) => certify(a, out),
        Command::Reproduce(a) => reproduce(a, out, err),
    }
}

#[derive(Serialize)]
struct ValidationOutput {
    label: String,
    passed: bool,
    #[serde(flatten)]
    report: crate::qrep::ValidationReport,
}

fn validate(a: ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    if a.list {
        for l in builtin_qrep_labels() {
            writeln!(out, "{l}")?;
        }
        return Ok(0);
    }
    let spec = a.qrep.or(a.builtin).expect("clap enforces one source");
    // Files are checked without the loader's own validation so that a
    // failing candidate still gets a report.
    let (label, elements) = match resolve_qrep(&spec) {
        Ok(q) => (q.label().to_string(), q.elements().to_vec()),
        Err(Error::InvalidQRep(_)) => {
            let file: QRepFile = io::read_json(&spec)?;
            let ops = file
                .elements
                .iter()
                .map(MatrixLiteral::to_operator)
                .collect::<Result<Vec<_>>>()?;
            (file.label, ops)
        }
        Err(e) => return Err(e),
    };
    let report = validate_qrep(&elements)?;
    let passed = report.passed();
    emit(&ValidationOutput { label, passed, report }, None, out)?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct RepresentOutput {
    label: String,
    entries: Vec<f64>,
    sum: f64,
    sum_negativity: f64,
    ceiling_negativity: f64,
}

fn represent_cmd(a: RepresentArgs, out: &mut dyn Write) -> Result<i32> {
    let q = resolve_qrep(a.source.spec())?;
    let rho = if let Some(p) = &a.vector {
        let lit: VectorLiteral = io::read_json(p)?;
        DensityMatrix::from_pure(&lit.to_state()?)
    } else if let Some(p) = &a.density {
        DensityMatrix::new(io::load_matrix_file(p)?)?
    } else if let Some(seed) = a.random_seed {
        DensityMatrix::from_pure(&random_pure_state(q.dim(), seed)?)
    } else {
        return Err(Error::InvalidArgument("one of --vector, --density, --random-seed is required".into()));
    };
    let v = represent(&rho, &q)?;
    let o = RepresentOutput {
        label: q.label().to_string(),
        sum: v.entries().iter().sum(),
        sum_negativity: np_negativity(&v, NormOrder::ONE),
        ceiling_negativity: np_negativity(&v, NormOrder::INFINITY),
        entries: v.entries().to_vec(),
    };
    emit(&o, a.out.as_ref(), out)?;
    Ok(0)
}

fn negativity(a: NegativityArgs, out: &mut dyn Write) -> Result<i32> {
    let q = resolve_qrep(a.source.spec())?;
    let p: NormOrder = a.p.parse()?;
    let start = Instant::now();
    let threads = a.threads.max(1);
    let stochastic = |seeds| {
        sum_negativity_stochastic_with(
            &q,
            &StochasticOptions {
                seeds,
                rng_seed: a.rng_seed,
                tol: a.tol,
                threads,
                ..Default::default()
            },
        )
    };
    let mut report: NegativityReport = if p.is_infinite() {
        ceiling_negativity(&q)
    } else if p == NormOrder::ONE {
        match (a.exhaustive, a.seeds) {
            (true, _) => sum_negativity_exhaustive(&q, threads)?,
            (false, Some(s)) => stochastic(s)?,
            (false, None) if q.dim() <= crate::negativity::MAX_EXHAUSTIVE_DIM => sum_negativity_exhaustive(&q, threads)?,
            (false, None) => stochastic(D8_DEFAULT_SEEDS)?,
        }
    } else {
        if a.exhaustive {
            return Err(Error::InvalidArgument("--exhaustive needs p = 1 or inf".into()));
        }
        let opts = AscentOptions {
            seeds: a.seeds.unwrap_or(AscentOptions::default().seeds),
            rng_seed: a.rng_seed,
            ..AscentOptions::default()
        };
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| np_negativity_ascent(&q, p, &opts))?
    };
    report.wall_time_s = Some(start.elapsed().as_secs_f64());
    emit(&report, a.out.as_ref(), out)?;
    if a.out.is_some() {
        writeln!(out, "{} N^{} = {:.15}", report.label, report.measure, report.value)?;
    }
    Ok(0)
}

fn sic(a: SicArgs, out: &mut dyn Write) -> Result<i32> {
    let s = load_sic(&a.label)?;
    match a.emit {
        SicEmit::Gram => emit(&s.gram(), a.out.as_ref(), out)?,
        SicEmit::Fiducial => {
            let mut lit = VectorLiteral::from_state(s.fiducial());
            lit.label = Some(a.label.clone());
            emit(&lit, a.out.as_ref(), out)?
        }
        SicEmit::Qplus | SicEmit::Qminus => {
            let (qp, qm) = sic_qreps(&s)?;
            let q = if matches!(a.emit, SicEmit::Qplus) { qp } else { qm };
            emit(&QRepFile::from_qrep(&q), a.out.as_ref(), out)?
        }
        SicEmit::Bounds => emit(&ceiling_bounds(s.dim())?, a.out.as_ref(), out)?,
    }
    Ok(0)
}

fn parse_sample(s: &str) -> Result<WhSampleParams> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if !(4..=5).contains(&parts.len()) {
        return Err(Error::Parse(format!("--sample wants 4 or 5 comma-separated values, got {s:?}")));
    }
    let num = |t: &str| t.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {t:?}")));
    Ok(WhSampleParams {
        diag_angle: num(parts[0])?,
        polar: num(parts[1])?,
        azimuth: num(parts[2])?,
        twist: num(parts[3])?,
        branch: match parts.get(4) {
            Some(b) => b.parse().map_err(|_| Error::Parse(format!("bad branch {b:?}")))?,
            None => 0,
        },
    })
}

#[derive(Serialize)]
struct WhCheckOutput {
    passed: bool,
    #[serde(flatten)]
    report: crate::wh::WhConditionReport,
    qrep_validation_passed: bool,
}

fn wh(a: WhArgs, out: &mut dyn Write) -> Result<i32> {
    if a.dim != 3 {
        return Err(Error::InvalidArgument(format!("only d = 3 WH fiducials are supported, got {}", a.dim)));
    }
    if let Some(p) = &a.check {
        let m = io::load_matrix_file(p)?;
        let report = check_wh_fiducial_d3(&m)?;
        let orbit = crate::wh::wh_orbit(&m, 3)?;
        let o = WhCheckOutput {
            passed: report.passed(),
            report,
            qrep_validation_passed: validate_qrep(&orbit)?.passed(),
        };
        emit(&o, a.out.as_ref(), out)?;
        return Ok(if o.passed { 0 } else { 1 });
    }
    if let Some(n) = a.sweep {
        let r = conjecture_sweep(&SweepOptions {
            samples: n,
            rng_seed: a.rng_seed,
            threads: a.threads.max(1),
            ..Default::default()
        })?;
        emit(&r, a.out.as_ref(), out)?;
        return Ok(0);
    }
    let fid = if let Some(s) = &a.sample {
        parse_sample(s)?.sample()?
    } else if let Some(seed) = a.random_seed {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        WhSampleParams::sample_random(&mut rng).1
    } else {
        return Err(Error::InvalidArgument("one of --check, --sample, --random-seed, --sweep is required".into()));
    };
    let mut lit = MatrixLiteral::from_operator(&fid.to_operator());
    lit.label = Some("wh-d3-fiducial".into());
    emit(&lit, a.out.as_ref(), out)?;
    Ok(0)
}

fn stationary(a: StationaryArgs, out: &mut dyn Write) -> Result<i32> {
    let rows = if let (Some(n), Some(m)) = (a.n, a.m) {
        vec![stationary_values(a.dim, n, m)?]
    } else if a.table {
        stationary_table(a.dim)?
    } else {
        vec![max_stationary_sum_negativity(a.dim)?]
    };
    match a.format {
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                #[serde(flatten)]
                s: crate::stationary::StationaryVector,
                k: usize,
                value: f64,
            }
            let rows: Vec<Row> = rows.into_iter().map(|s| Row { k: s.k(), value: s.value(), s }).collect();
            emit(&rows, None, out)?;
        }
        TableFormat::Csv => {
            writeln!(out, "d,n,m,k,a,b,value")?;
            for s in rows {
                writeln!(out, "{},{},{},{},{:e},{:e},{:e}", s.dim, s.n, s.m, s.k(), s.a, s.b, s.value())?;
            }
        }
        TableFormat::Text => {
            use crate::repro::sig12;
            writeln!(out, "{:>3} {:>3} {:>3} {:>18} {:>18} {:>18}", "n", "m", "k", "a", "b", "n|a|")?;
            for s in rows {
                writeln!(
                    out,
                    "{:>3} {:>3} {:>3} {:>18} {:>18} {:>18}",
                    s.n,
                    s.m,
                    s.k(),
                    sig12(s.a),
                    sig12(s.b),
                    sig12(s.value())
                )?;
            }
        }
    }
    Ok(0)
}

fn certify(a: CertifyArgs, out: &mut dyn Write) -> Result<i32> {
    let report: NegativityReport = io::read_json(&a.report)?;
    let q = resolve_qrep(a.source.spec())?;
    let c = local_max_certificate(&report, &q, a.tol)?;
    emit(&c, None, out)?;
    writeln!(out, "{}: {}", c.label, c.verdict())?;
    Ok(0)
}

fn reproduce(a: ReproduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let scope: Scope = a.scope.parse()?;
    let rows = cmd_reproduce(scope, a.threads.max(1), a.seeds)?;
    write!(out, "{}", render_table(&rows))?;
    if let Some(p) = &a.json {
        io::write_json(p, &rows)?;
    }
    for r in rows.iter().filter(|r| r.skipped) {
        writeln!(err, "warning: {} skipped (no seeds)", r.label)?;
    }
    Ok(if rows.iter().any(|r| r.failed()) { 1 } else { 0 })
}
