//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 domain error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::kernels::{
    classical_kernel, first_order_coefficient, k_deformed_kernel, quadratic_kernel, singular_kernel_h1, KernelArgs,
    KernelId,
};
use crate::phase_space::{Deformation, FockWigner, GaussianSymbol, PhasePoint, PhaseSymbol, PlaneWaveSymbol};
use crate::specfun::QuadratureSpec;
use crate::tomo_transform::{quadratic_forward, MeasureConvention, TomoPoint};
use crate::verify::{fmt_r, run_suites, SuiteName, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Largest grid accepted by the grid commands.
pub const MAX_GRID: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "tomostar",
    version,
    about = "Star-product kernels and transforms of quadratic tomography"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Deformation parameter h.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    #[arg(long, global = true, default_value = "standard")]
    pub convention: MeasureConvention,
    #[arg(long, global = true, env = "TOMOSTAR_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[arg(long, global = true)]
    pub damping: Option<f64>,
    #[arg(long, global = true)]
    pub cutoff: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Output file; standard output if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Defaults to csv for grid commands and json otherwise.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Include the Monte Carlo kernel-route check in `verify`.
    #[arg(long, global = true)]
    pub experimental: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quadratic tomogram of a phase-space state on an X grid.
    Tomogram {
        /// fock:N, gaussian:SIGMA,Q0,P0 or planewave:A,B
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        nu: f64,
        #[command(flatten)]
        grid: XGrid,
    },
    /// Evaluate a kernel on a JSON array of 9-tuples.
    Kernel {
        /// JSON file of [X1, mu1, nu1, X2, mu2, nu2, X3, mu3, nu3] tuples.
        points: PathBuf,
        #[arg(long, default_value = "quantum")]
        kernel: KernelId,
    },
    /// K(x1, x2, x3; h) and K(x2, x1, x3; h) across an h grid.
    SweepHbar {
        /// Nine comma-separated numbers X1,mu1,nu1,X2,mu2,nu2,X3,mu3,nu3.
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        #[arg(long, default_value_t = -0.9, allow_negative_numbers = true)]
        h_min: f64,
        #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
        h_max: f64,
        #[arg(long, default_value_t = 37)]
        count: usize,
    },
    /// Classical (h = 0) product of two states as a tomogram on an X grid.
    StarClassical {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        nu: f64,
        #[command(flatten)]
        grid: XGrid,
    },
    /// Run verification suites and write a JSON report.
    Verify {
        /// Comma-separated subset of tomogram, kernels, classical, h1.
        #[arg(long, default_value = "tomogram,kernels,classical,h1")]
        suites: String,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct XGrid {
    #[arg(long, default_value_t = 0.0)]
    pub x_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 101)]
    pub count: usize,
}

/// Settings shared by every command after flag resolution.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub convention: MeasureConvention,
    pub hbar: f64,
    pub seed: u64,
    pub spec: QuadratureSpec,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub experimental: bool,
}

impl RunConfig {
    pub fn from_args(c: &CommonArgs) -> CliResult<Self> {
        let mut spec = QuadratureSpec::default();
        if let Some(n) = c.nodes {
            spec.node_count = n;
        }
        if let Some(d) = c.damping {
            spec.damping = d;
        }
        if let Some(l) = c.cutoff {
            spec.upper_cutoff = l;
        }
        if let Some(s) = c.samples {
            spec.sample_count = s;
        }
        if let Some(s) = c.seed {
            spec.seed = s;
        }
        spec.validate()
            .map_err(|e| CliError::Usage(format!("invalid quadrature settings: {e}")))?;
        if !c.hbar.is_finite() {
            return Err(CliError::Usage(format!("--hbar must be finite, got {}", c.hbar)));
        }
        Ok(RunConfig {
            convention: c.convention,
            hbar: c.hbar,
            seed: spec.seed,
            spec,
            output_path: c.out.clone(),
            format: c.format,
            experimental: c.experimental,
        })
    }

    fn deformation(&self) -> CliResult<Deformation> {
        Ok(Deformation::new(self.hbar)?)
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn header(&self, command: &str) -> String {
        format!(
            "# tomostar {} {command} convention={} hbar={} seed={}\n",
            env!("CARGO_PKG_VERSION"),
            self.convention,
            self.hbar,
            self.seed
        )
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tomostar: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<i32> {
    let cfg = RunConfig::from_args(&cli.common)?;
    match &cli.command {
        Command::Tomogram { state, mu, nu, grid } => {
            let out = cmd_tomogram(state, (*mu, *nu), *grid, &cfg)?;
            emit(&cfg, &out)?;
            Ok(EXIT_OK)
        }
        Command::Kernel { points, kernel } => {
            let text = fs::read_to_string(points)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", points.display())))?;
            let out = cmd_kernel(&text, *kernel, &cfg)?;
            emit(&cfg, &out)?;
            Ok(EXIT_OK)
        }
        Command::SweepHbar {
            triple,
            h_min,
            h_max,
            count,
        } => {
            let out = cmd_sweep_hbar(triple, (*h_min, *h_max, *count), &cfg)?;
            emit(&cfg, &out)?;
            Ok(EXIT_OK)
        }
        Command::StarClassical {
            left,
            right,
            mu,
            nu,
            grid,
        } => {
            let out = cmd_star_classical(left, right, (*mu, *nu), *grid, &cfg)?;
            emit(&cfg, &out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suites } => {
            let (out, passed) = cmd_verify(suites, &cfg)?;
            emit(&cfg, &out)?;
            Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn emit(cfg: &RunConfig, text: &str) -> CliResult<()> {
    match &cfg.output_path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

/// A phase-space state given on the command line.
pub enum StateSpec {
    Fock(FockWigner),
    Gaussian(GaussianSymbol),
    PlaneWave(PlaneWaveSymbol),
}

impl StateSpec {
    pub fn symbol(&self) -> &dyn PhaseSymbol {
        match self {
            StateSpec::Fock(f) => f,
            StateSpec::Gaussian(g) => g,
            StateSpec::PlaneWave(p) => p,
        }
    }
}

fn parse_numbers(s: &str, what: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{what}: '{t}' is not a number")))
        })
        .collect()
}

/// Parses `fock:N`, `gaussian:SIGMA,Q0,P0` or `planewave:A,B`.
pub fn parse_state(s: &str, h: f64) -> CliResult<StateSpec> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| {
        CliError::Usage(format!(
            "state '{s}': expected fock:N, gaussian:SIGMA,Q0,P0 or planewave:A,B"
        ))
    })?;
    match kind {
        "fock" => {
            let n: u32 = rest
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("state '{s}': level must be a non-negative integer")))?;
            let h = Deformation::new(h)?;
            Ok(StateSpec::Fock(FockWigner::new(n, h)?))
        }
        "gaussian" => match parse_numbers(rest, "gaussian state")?.as_slice() {
            &[sigma, q0, p0] => GaussianSymbol::unit(PhasePoint::new(q0, p0), sigma)
                .map(StateSpec::Gaussian)
                .map_err(|e| CliError::Usage(format!("state '{s}': {e}"))),
            _ => Err(CliError::Usage(format!("state '{s}': gaussian needs SIGMA,Q0,P0"))),
        },
        "planewave" => match parse_numbers(rest, "plane-wave state")?.as_slice() {
            &[a, b] if a.is_finite() && b.is_finite() => Ok(StateSpec::PlaneWave(PlaneWaveSymbol::new(a, b))),
            _ => Err(CliError::Usage(format!(
                "state '{s}': planewave needs two finite numbers A,B"
            ))),
        },
        other => Err(CliError::Usage(format!("unknown state kind '{other}'"))),
    }
}

fn grid_points(min: f64, max: f64, count: usize, what: &str) -> CliResult<Vec<f64>> {
    if count == 0 || count > MAX_GRID {
        return Err(CliError::Usage(format!(
            "{what} count must be in 1..={MAX_GRID}, got {count}"
        )));
    }
    if !(min.is_finite() && max.is_finite() && max >= min) {
        return Err(CliError::Usage(format!(
            "{what} needs finite min <= max, got [{min}, {max}]"
        )));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    let step = (max - min) / (count - 1) as f64;
    Ok((0..count)
        .map(|k| if k + 1 == count { max } else { min + step * k as f64 })
        .collect())
}

#[derive(Serialize)]
struct GridJson<'a> {
    command: &'a str,
    convention: MeasureConvention,
    hbar: f64,
    columns: &'a [&'a str],
    rows: Vec<Vec<f64>>,
}

fn render_grid(cfg: &RunConfig, command: &str, columns: &[&str], rows: Vec<Vec<f64>>) -> CliResult<String> {
    match cfg.format_or(Format::Csv) {
        Format::Csv => {
            let mut out = cfg.header(command);
            out.push_str(&columns.join(","));
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|&v| fmt_r(v)).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
            Ok(out)
        }
        Format::Json => {
            let doc = GridJson {
                command,
                convention: cfg.convention,
                hbar: cfg.hbar,
                columns,
                rows,
            };
            Ok(to_json(&doc))
        }
    }
}

/// A JSON array with one compact element per line.
fn to_json_rows<T: Serialize>(rows: &[T]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable output"))
        .collect();
    if body.is_empty() {
        return "[]\n".into();
    }
    format!("[\n  {}\n]\n", body.join(",\n  "))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

/// Tomogram of `state` at `(X, mu, nu)` for each `X` of the grid.
pub fn cmd_tomogram(state: &str, center: (f64, f64), grid: XGrid, cfg: &RunConfig) -> CliResult<String> {
    let state = parse_state(state, cfg.hbar)?;
    let xs = grid_points(grid.x_min, grid.x_max, grid.count, "X grid")?;
    let f = state.symbol();
    let rows = xs
        .iter()
        .map(|&x| {
            let w = quadratic_forward(f, TomoPoint::new(x, center.0, center.1)?, cfg.convention, &cfg.spec)?;
            Ok(vec![x, w.re, w.im])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    render_grid(cfg, "tomogram", &["X", "w_re", "w_im"], rows)
}

/// Classical product `A1 * A2 |_{h=0}`, i.e. the tomogram of `f1 f2`.
pub fn cmd_star_classical(
    left: &str,
    right: &str,
    center: (f64, f64),
    grid: XGrid,
    cfg: &RunConfig,
) -> CliResult<String> {
    let a = parse_state(left, cfg.hbar)?;
    let b = parse_state(right, cfg.hbar)?;
    let xs = grid_points(grid.x_min, grid.x_max, grid.count, "X grid")?;
    let (fa, fb) = (a.symbol(), b.symbol());
    let product = |pt: PhasePoint| fa.eval(pt) * fb.eval(pt);
    let rows = xs
        .iter()
        .map(|&x| {
            let w = quadratic_forward(
                &product,
                TomoPoint::new(x, center.0, center.1)?,
                cfg.convention,
                &cfg.spec,
            )?;
            Ok(vec![x, w.re, w.im])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    render_grid(cfg, "star-classical", &["X", "p_re", "p_im"], rows)
}

#[derive(Serialize)]
struct RegularRow {
    point: [f64; 9],
    re: f64,
    im: f64,
    convention: MeasureConvention,
}

#[derive(Serialize)]
struct SingularRow {
    point: [f64; 9],
    amp_re: f64,
    amp_im: f64,
    delta_arg: f64,
    convention: MeasureConvention,
}

/// Parses a JSON array of 9-tuples. Errors carry the line and column.
pub fn parse_points(text: &str) -> CliResult<Vec<[f64; 9]>> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Usage(format!(
            "malformed points file at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

/// Kernel `id` at every tuple of `points_json`.
pub fn cmd_kernel(points_json: &str, id: KernelId, cfg: &RunConfig) -> CliResult<String> {
    if cfg.format_or(Format::Json) != Format::Json {
        return Err(CliError::Usage("kernel output is JSON only".into()));
    }
    let points = parse_points(points_json)?;
    let at = |i: usize, e: Error| CliError::Domain(format!("point {i}: {e}"));
    match id {
        KernelId::H1Singular => {
            let rows = points
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let a = KernelArgs::from_tuple(p, Deformation::UNIT).map_err(|e| at(i, e))?;
                    let k = singular_kernel_h1(a.x1, a.x2, a.x3).map_err(|e| at(i, e))?;
                    Ok(SingularRow {
                        point: p,
                        amp_re: k.amplitude.re,
                        amp_im: k.amplitude.im,
                        delta_arg: k.delta_argument,
                        convention: cfg.convention,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(to_json_rows(&rows))
        }
        _ => {
            let rows = points
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let v = regular_kernel_value(id, p, cfg.hbar).map_err(|e| at(i, e))?;
                    Ok(RegularRow {
                        point: p,
                        re: v.re,
                        im: v.im,
                        convention: cfg.convention,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(to_json_rows(&rows))
        }
    }
}

fn regular_kernel_value(id: KernelId, p: [f64; 9], hbar: f64) -> crate::Result<Complex64> {
    let a = KernelArgs::from_tuple(p, Deformation::CLASSICAL)?;
    match id {
        KernelId::Quantum => quadratic_kernel(&a.with_h(Deformation::new(hbar)?)),
        KernelId::Classical => classical_kernel(a.x1, a.x2, a.x3),
        KernelId::FirstOrder => first_order_coefficient(a.x1, a.x2, a.x3),
        KernelId::KDeformed => k_deformed_kernel(a.x1, a.x2, a.x3),
        KernelId::H1Singular => Err(Error::SingularLimit("the h = 1 kernel has no pointwise value".into())),
    }
}

/// `K(x1, x2, x3; h)` and `K(x2, x1, x3; h)` for `h` on the grid.
pub fn cmd_sweep_hbar(triple: &str, grid: (f64, f64, usize), cfg: &RunConfig) -> CliResult<String> {
    let t: [f64; 9] = parse_numbers(triple, "triple")?
        .try_into()
        .map_err(|v: Vec<f64>| CliError::Usage(format!("triple needs 9 numbers, got {}", v.len())))?;
    let (lo, hi, count) = grid;
    if !(lo > -1.0 && hi < 1.0) {
        return Err(CliError::Domain(format!("h grid [{lo}, {hi}] must lie inside (-1, 1)")));
    }
    let hs = grid_points(lo, hi, count, "h grid")?;
    let args = KernelArgs::from_tuple(t, Deformation::CLASSICAL)?;
    let rows = hs
        .iter()
        .map(|&hv| {
            let a = args.with_h(Deformation::new(hv)?);
            let k = quadratic_kernel(&a)?;
            let ks = quadratic_kernel(&a.swapped())?;
            Ok(vec![hv, k.re, k.im, ks.re, ks.im])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    render_grid(
        cfg,
        "sweep-hbar",
        &["hbar", "K_re", "K_im", "Kswap_re", "Kswap_im"],
        rows,
    )
}

#[derive(Serialize)]
pub struct VerifyReport<'a> {
    pub version: &'a str,
    pub convention: MeasureConvention,
    pub hbar: f64,
    pub seed: u64,
    pub experimental: bool,
    pub all_passed: bool,
    pub suites: &'a [SuiteReport],
}

pub fn parse_suites(s: &str) -> CliResult<Vec<SuiteName>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<SuiteName>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

/// Runs the named suites; returns the JSON report and whether every gate
/// case passed.
pub fn cmd_verify(suites: &str, cfg: &RunConfig) -> CliResult<(String, bool)> {
    if cfg.format_or(Format::Json) != Format::Json {
        return Err(CliError::Usage("verify reports are JSON only".into()));
    }
    let names = parse_suites(suites)?;
    let h = cfg.deformation()?;
    if names.contains(&SuiteName::Tomogram) && h.value() <= 0.0 {
        return Err(CliError::Domain(format!(
            "the tomogram suite needs h > 0, got {}",
            h.value()
        )));
    }
    let reports = run_suites(&names, h, cfg.convention, &cfg.spec, cfg.experimental);
    let all_passed = reports.iter().all(SuiteReport::passed);
    for r in &reports {
        let failed = r.failures().count();
        eprintln!(
            "{:<10} {:>4} cases  {:>3} failed  {:>8.2?}  {}",
            r.suite_name,
            r.cases.len(),
            failed,
            r.elapsed,
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }
    let doc = VerifyReport {
        version: env!("CARGO_PKG_VERSION"),
        convention: cfg.convention,
        hbar: cfg.hbar,
        seed: cfg.seed,
        experimental: cfg.experimental,
        all_passed,
        suites: &reports,
    };
    Ok((to_json(&doc), all_passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> RunConfig {
        RunConfig::from_args(&Cli::try_parse_from(["tomostar", "verify"]).unwrap().common).unwrap()
    }

    #[test]
    fn grid_endpoints() {
        let g = grid_points(0.0, 1.0, 5, "g").unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(grid_points(2.0, 3.0, 1, "g").unwrap(), vec![2.0]);
        assert!(grid_points(0.0, 1.0, 0, "g").is_err());
        assert!(grid_points(0.0, 1.0, MAX_GRID + 1, "g").is_err());
    }

    #[test]
    fn states_parse() {
        assert!(matches!(parse_state("fock:2", 1.0), Ok(StateSpec::Fock(_))));
        assert!(matches!(
            parse_state("gaussian:0.5,1,-1", 1.0),
            Ok(StateSpec::Gaussian(_))
        ));
        assert!(matches!(parse_state("planewave:1,0", 1.0), Ok(StateSpec::PlaneWave(_))));
        for bad in [
            "fock",
            "fock:x",
            "gaussian:1,2",
            "gaussian:-1,0,0",
            "squeezed:1",
            "planewave:1",
        ] {
            assert!(matches!(parse_state(bad, 1.0), Err(CliError::Usage(_))), "{bad}");
        }
        assert!(matches!(parse_state("fock:1", 0.0), Err(CliError::Domain(_))));
    }

    #[test]
    fn planewave_tomogram_row() {
        let out = cmd_tomogram(
            "planewave:1,0",
            (2.0, 0.0),
            XGrid {
                x_min: 0.0,
                x_max: 0.0,
                count: 1,
            },
            &cfg(),
        )
        .unwrap();
        let row = out.lines().nth(2).unwrap();
        let re: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((re - PI * 2f64.cos()).abs() < 1e-14);
        assert!(out.starts_with("# tomostar") && out.contains("convention=standard"));
    }

    #[test]
    fn points_errors_carry_position() {
        match parse_points("[[0,0,0,0,0,0,0,0,0],\n [1, 2,]]") {
            Err(CliError::Usage(m)) => assert!(m.contains("line 2"), "{m}"),
            other => panic!("{other:?}"),
        }
        let e = cmd_kernel(
            "[[0,0,0,0,0,0,0,0,0],[-1,0,0,0,0,0,0,0,0]]",
            KernelId::Classical,
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(&e, CliError::Domain(m) if m.starts_with("point 1")), "{e}");
    }

    #[test]
    fn kernel_rows_at_origin() {
        let zero = "[[0,0,0,0,0,0,0,0,0]]";
        let v: serde_json::Value =
            serde_json::from_str(&cmd_kernel(zero, KernelId::Classical, &cfg()).unwrap()).unwrap();
        let re = v[0]["re"].as_f64().unwrap();
        assert!((re - PI.powi(-4)).abs() < 1e-15 * PI.powi(-4), "{re}");
        let v: serde_json::Value =
            serde_json::from_str(&cmd_kernel(zero, KernelId::KDeformed, &cfg()).unwrap()).unwrap();
        assert!((v[0]["re"].as_f64().unwrap() + 0.5 * PI.powi(-5)).abs() < 1e-15 * PI.powi(-5));
        let v: serde_json::Value =
            serde_json::from_str(&cmd_kernel(zero, KernelId::H1Singular, &cfg()).unwrap()).unwrap();
        assert!((v[0]["amp_im"].as_f64().unwrap() + 2.0 / PI.powi(3)).abs() < 1e-16);
        assert_eq!(v[0]["delta_arg"].as_f64().unwrap(), 0.0);
        assert_eq!(v[0]["convention"], "standard");
        // default h = 1 is outside the quantum kernel's domain
        assert!(matches!(
            cmd_kernel(zero, KernelId::Quantum, &cfg()),
            Err(CliError::Domain(_))
        ));
    }

    #[test]
    fn sweep_rows() {
        let out = cmd_sweep_hbar("0.3,1,0,0.5,0,1,1.2,0.2,-0.1", (-0.5, 0.5, 3), &cfg()).unwrap();
        let rows: Vec<Vec<f64>> = out
            .lines()
            .skip(2)
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1][1], rows[1][3]);
        assert_eq!(rows[1][2], rows[1][4]);
        assert!(matches!(
            cmd_sweep_hbar("0,0,0,0,0,0,0,0,0", (-1.0, 0.5, 3), &cfg()),
            Err(CliError::Domain(_))
        ));
        assert!(matches!(
            cmd_sweep_hbar("0,0,0", (-0.5, 0.5, 3), &cfg()),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn bad_config_is_usage_error() {
        let cli = Cli::try_parse_from(["tomostar", "verify", "--nodes", "1"]).unwrap();
        assert!(matches!(RunConfig::from_args(&cli.common), Err(CliError::Usage(_))));
        assert!(matches!(parse_suites("tomogram,bogus"), Err(CliError::Usage(_))));
    }
}
