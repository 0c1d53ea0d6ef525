//! `gtm`: certified Gelfond exponents, Sturmian cycle tables, β curves and
//! verification suites from the command line.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod svg;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gelfond::circle::{e_lambda_profile, VcConfig, DEFAULT_WINDOW_GUARD};
use gelfond::export::{self, to_json};
use gelfond::gelfond::{
    beta_closed_form_q2, beta_curve_with, gelfond_exponent_with, parameter_list, parse_parameter,
    tables_with, validity_interval_with, GelfondOutcome, PipelineConfig, RowStatus, Table1Row,
    TABLE2_PARAMETERS,
};
use gelfond::polyseries::{sigma_profile, sup_exponent_fit};
use gelfond::potential::PotentialParams;
use gelfond::rational::ExactRational;
use gelfond::sturmian::{enumerate_cycles, enumerate_cycles_between, rotation_staircase};
use gelfond::{checks, Error};

use config::{Format, RunConfig};

const EXIT_FAILURE: u8 = 1;
const EXIT_NONPERIODIC: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gtm",
    version,
    about = "Gelfond exponents of generalized Thue-Morse sequences"
)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON instead of CSV or text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    max_period: Option<u32>,
    /// Target error bound for v_c.
    #[arg(long)]
    v_target_err: Option<f64>,
    /// Bisection tolerance for lambda*.
    #[arg(long)]
    bisect_tol: Option<f64>,
    /// Bisection tolerance for validity endpoints in c.
    #[arg(long)]
    validity_tol: Option<f64>,
    #[arg(long)]
    depth_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified beta and gamma at one parameter c.
    Gelfond {
        #[command(flatten)]
        common: Common,
        /// Parameter c as a decimal or num/den.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Sturmian cycles as CSV.
    Cycles {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        min_period: u32,
    },
    /// Validity intervals [c_lo, c_hi] of cycles as CSV.
    Validity {
        #[command(flatten)]
        common: Common,
        /// Only cycles of this period (default: all periods from 2 to max-period).
        #[arg(long)]
        period: Option<u32>,
        /// Only cycles with this rotation number p/m.
        #[arg(long)]
        rotation: Option<String>,
    },
    /// Beta and gamma at a list of parameters, SKIPPED outside all validity intervals.
    Table2 {
        #[command(flatten)]
        common: Common,
        /// Comma-separated parameters (default: the standard 62-entry list).
        #[arg(long, value_delimiter = ',')]
        c_list: Option<Vec<String>>,
    },
    /// Beta and gamma on the grid c = i / resolution.
    BetaCurve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        resolution: Option<usize>,
        /// Also write an SVG plot of gamma(c).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Rotation number of the truncated map across lambda.
    Staircase {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// First-exit function e_lambda sampled on a grid.
    Profile {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 60)]
        depth: usize,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// |sigma_{q^n}(x)| on a grid via the product formula.
    Sigma {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 10)]
        levels: u32,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Grid estimates of the growth exponent of sup |sigma_{q^n}|.
    Fit {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 18)]
        n_max: u32,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Quick self-verification suite; exits 1 on any failure.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Inequality grids and the Sturmian condition probe as JSON.
    Checks {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Config(config::ConfigError),
    Io(io::Error),
    NonPeriodic,
    Partial(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<config::ConfigError> for Failure {
    fn from(e: config::ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::NonPeriodic => EXIT_NONPERIODIC,
            Failure::Core(Error::Guard { .. }) => EXIT_GUARD,
            _ => EXIT_FAILURE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Core(Error::Guard { .. }) => "guard",
            Failure::Core(Error::MultipleSignChange { .. }) => "multiple_sign_change",
            Failure::Core(Error::InvalidParams(_)) => "invalid_params",
            Failure::Core(_) => "numerical",
            Failure::Config(_) => "config",
            Failure::Io(_) => "io",
            Failure::NonPeriodic => "nonperiodic",
            Failure::Partial(_) => "partial",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Config(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
            Failure::NonPeriodic => "no cycle of the allowed periods certifies".into(),
            Failure::Partial(m) => m.clone(),
        }
    }
}

type Out = Box<dyn Write>;

fn resolve(common: &Common, base: &RunConfig) -> Result<RunConfig, Failure> {
    let mut c = base.clone();
    if let Some(v) = common.q {
        c.q = v;
    }
    if let Some(v) = common.max_period {
        c.max_period = v;
    }
    if let Some(v) = common.v_target_err {
        c.v_target_err = v;
    }
    if let Some(v) = common.bisect_tol {
        c.bisect_tol = v;
    }
    if let Some(v) = common.validity_tol {
        c.validity_tol = v;
    }
    if let Some(v) = common.depth_cap {
        c.depth_cap = v;
    }
    c.validate()?;
    Ok(c)
}

fn pipeline(cfg: &RunConfig) -> PipelineConfig {
    PipelineConfig {
        vc: VcConfig {
            target_err: cfg.v_target_err,
            depth_cap: cfg.depth_cap,
            window_guard: DEFAULT_WINDOW_GUARD,
        },
        lambda_tol: cfg.bisect_tol,
        validity_tol: cfg.validity_tol,
    }
}

fn sig(x: f64) -> String {
    gelfond::numeric::fmt_sig15(x)
}

fn cmd_gelfond(cfg: &RunConfig, c: &str, json: bool, out: &mut Out) -> Result<(), Failure> {
    let c = parse_parameter(c)?;
    let params = PotentialParams::reduced(cfg.q, c)?;
    let cycles = enumerate_cycles(cfg.q, cfg.max_period)?;
    let outcome = gelfond_exponent_with(&params, &cycles, &pipeline(cfg))?;
    if json {
        let kind = match outcome {
            GelfondOutcome::Certified(_) => "gelfond_certificate",
            GelfondOutcome::NonPeriodic(_) => "nonperiodic_report",
        };
        writeln!(out, "{}", to_json(kind, &outcome)?)?;
    } else {
        match &outcome {
            GelfondOutcome::Certified(cert) => {
                let pts: Vec<String> = cert.cycle.points.iter().map(|p| p.to_string()).collect();
                writeln!(out, "status = certified")?;
                writeln!(out, "q = {}", params.q)?;
                writeln!(out, "c = {}", sig(params.c))?;
                writeln!(out, "period = {}", cert.cycle.period)?;
                writeln!(out, "rotation = {}", cert.cycle.rotation)?;
                writeln!(out, "cycle = {}", pts.join(" "))?;
                writeln!(out, "lambda_star = {}", sig(cert.lambda_star))?;
                writeln!(out, "lambda1 = {}", sig(cert.lambda1))?;
                writeln!(out, "lambda2 = {}", sig(cert.lambda2))?;
                writeln!(
                    out,
                    "v1 = {} +- {}",
                    sig(cert.v1.value),
                    sig(cert.v1.err_bound)
                )?;
                writeln!(
                    out,
                    "v2 = {} +- {}",
                    sig(cert.v2.value),
                    sig(cert.v2.err_bound)
                )?;
                writeln!(out, "beta = {}", sig(cert.beta))?;
                writeln!(out, "gamma = {}", sig(cert.gamma))?;
            }
            GelfondOutcome::NonPeriodic(r) => {
                writeln!(out, "status = nonperiodic")?;
                writeln!(out, "q = {}", params.q)?;
                writeln!(out, "c = {}", sig(params.c))?;
                writeln!(out, "lambda_star = {}", sig(r.lambda_star))?;
                writeln!(out, "rho = {}", sig(r.rotation.value()))?;
                writeln!(out, "reason = {}", r.reason)?;
            }
        }
    }
    out.flush()?;
    match outcome {
        GelfondOutcome::Certified(_) => Ok(()),
        GelfondOutcome::NonPeriodic(_) => Err(Failure::NonPeriodic),
    }
}

fn cmd_cycles(cfg: &RunConfig, min_period: u32, json: bool, out: &mut Out) -> Result<(), Failure> {
    let cycles = enumerate_cycles_between(cfg.q, min_period, cfg.max_period)?;
    if json {
        writeln!(out, "{}", to_json("cycles", &cycles)?)?;
    } else {
        export::write_cycles(out, &cycles)?;
    }
    Ok(())
}

fn cmd_validity(
    cfg: &RunConfig,
    period: Option<u32>,
    rotation: Option<&str>,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let (lo, hi) = match period {
        Some(p) => (p, p),
        None => (2, cfg.max_period),
    };
    let rotation: Option<ExactRational> = rotation.map(str::parse).transpose()?;
    let cycles: Vec<_> = enumerate_cycles_between(cfg.q, lo, hi)?
        .into_iter()
        .filter(|c| rotation.is_none_or(|r| c.rotation == r))
        .collect();
    if cycles.is_empty() {
        return Err(Failure::Core(Error::InvalidParams(
            "no cycle matches the selection".into(),
        )));
    }
    let vc = pipeline(cfg).vc;
    let results: Vec<_> = {
        use rayon::prelude::*;
        cycles
            .par_iter()
            .map(|cy| validity_interval_with(cfg.q, cy, cfg.validity_tol, &vc))
            .collect()
    };
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (cy, r) in cycles.iter().zip(results) {
        match r {
            Ok(iv) => rows.push(Table1Row { interval: iv }),
            Err(e) => errors.push(format!(
                "period {} rotation {}: {e}",
                cy.period, cy.rotation
            )),
        }
    }
    if json {
        writeln!(out, "{}", to_json("validity_intervals", &rows)?)?;
    } else {
        export::write_table1(&mut *out, &rows)?;
    }
    finish_rows(errors)
}

fn finish_rows(errors: Vec<String>) -> Result<(), Failure> {
    if errors.is_empty() {
        return Ok(());
    }
    for e in &errors {
        eprintln!("row error: {e}");
    }
    Err(Failure::Partial(format!("{} row(s) failed", errors.len())))
}

fn cmd_table2(
    cfg: &RunConfig,
    c_list: Option<&[String]>,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let list = match c_list {
        Some(l) => parameter_list(l)?,
        None => parameter_list(&TABLE2_PARAMETERS)?,
    };
    let t = tables_with(cfg.q, cfg.max_period, &list, &pipeline(cfg))?;
    if json {
        writeln!(out, "{}", to_json("table2", &t.table2)?)?;
    } else {
        export::write_table2(&mut *out, &t.table2)?;
    }
    let mut errors = t.table1_errors;
    errors.extend(
        t.table2
            .iter()
            .filter(|r| r.status == RowStatus::Error)
            .map(|r| format!("c = {}: {}", r.label, r.message.clone().unwrap_or_default())),
    );
    finish_rows(errors)
}

fn cmd_beta_curve(
    cfg: &RunConfig,
    resolution: usize,
    svg_path: Option<&PathBuf>,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let pts = beta_curve_with(cfg.q, cfg.max_period, resolution, &pipeline(cfg))?;
    if json {
        writeln!(out, "{}", to_json("beta_curve", &pts)?)?;
    } else {
        export::write_beta_curve(&mut *out, &pts)?;
    }
    if let Some(p) = svg_path {
        let data: Vec<(f64, Option<f64>)> = pts.iter().map(|p| (p.c, p.gamma)).collect();
        std::fs::write(p, svg::line_plot(&data, "c", "gamma(c)"))?;
    }
    Ok(())
}

fn cmd_staircase(
    cfg: &RunConfig,
    points: usize,
    iterations: usize,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let rows = rotation_staircase(cfg.q, points, iterations, cfg.max_period)?;
    if json {
        writeln!(out, "{}", to_json("staircase", &rows)?)?;
    } else {
        export::write_staircase(&mut *out, &rows)?;
    }
    Ok(())
}

fn cmd_profile(
    cfg: &RunConfig,
    lambda: &str,
    depth: usize,
    grid: usize,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let lambda = parse_parameter(lambda)?;
    let rows = e_lambda_profile(cfg.q, lambda, depth, grid)?;
    if json {
        writeln!(out, "{}", to_json("e_lambda_profile", &rows)?)?;
    } else {
        export::write_profile(&mut *out, &rows)?;
    }
    Ok(())
}

fn cmd_sigma(
    cfg: &RunConfig,
    c: &str,
    levels: u32,
    grid: usize,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let params = PotentialParams::reduced(cfg.q, parse_parameter(c)?)?;
    let rows = sigma_profile(&params, levels, grid)?;
    if json {
        writeln!(out, "{}", to_json("sigma_profile", &rows)?)?;
    } else {
        export::write_sigma_profile(&mut *out, &rows)?;
    }
    Ok(())
}

fn cmd_fit(
    cfg: &RunConfig,
    c: &str,
    n_max: u32,
    grid: usize,
    json: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    let params = PotentialParams::reduced(cfg.q, parse_parameter(c)?)?;
    let cycles = enumerate_cycles(cfg.q, cfg.max_period)?;
    let beta = match gelfond_exponent_with(&params, &cycles, &pipeline(cfg))? {
        GelfondOutcome::Certified(cert) => cert.beta,
        GelfondOutcome::NonPeriodic(_) => return Err(Failure::NonPeriodic),
    };
    let rows = sup_exponent_fit(&params, n_max, grid, beta)?;
    if json {
        writeln!(out, "{}", to_json("exponent_fit", &rows)?)?;
    } else {
        export::write_exponent_fit(&mut *out, &rows)?;
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, json: bool, out: &mut Out) -> Result<(), Failure> {
    let pc = pipeline(cfg);
    let cycles = enumerate_cycles(2, cfg.max_period)?;
    let run = |c: f64| -> Result<Option<(f64, f64, u32)>, Error> {
        let p = PotentialParams::new(2, c)?;
        Ok(gelfond_exponent_with(&p, &cycles, &pc)?
            .certificate()
            .map(|c| (c.beta, c.gamma, c.cycle.period)))
    };
    let mut results: Vec<(String, bool, String)> = Vec::new();
    let mut check = |name: &str, ok: bool, detail: String| results.push((name.into(), ok, detail));

    let half = run(0.5)?;
    let want = 3f64.sqrt().ln();
    check(
        "beta(1/2) = log sqrt 3",
        half.is_some_and(|(b, _, p)| (b - want).abs() <= 1e-12 && p == 2),
        format!("{half:?}"),
    );
    let quarter = run(0.25)?;
    check(
        "beta(1/4)",
        quarter.is_some_and(|(b, g, p)| {
            (b - 0.51585926722389).abs() <= 1e-11 && (g - 0.74422760662052).abs() <= 1e-11 && p == 4
        }),
        format!("{quarter:?}"),
    );
    let mirror = run(0.75)?;
    check(
        "beta(3/4) = beta(1/4)",
        matches!((quarter, mirror), (Some(a), Some(b)) if (a.0 - b.0).abs() <= 1e-12),
        format!("{mirror:?}"),
    );
    let closed = run(0.45)?;
    let cf = beta_closed_form_q2(0.45)?;
    check(
        "closed form at c = 0.45",
        closed.is_some_and(|(b, _, _)| (b - cf).abs() <= 1e-12),
        format!("pipeline {closed:?}, closed form {cf}"),
    );
    let p = PotentialParams::new(2, 0.3)?;
    let masses = gelfond::circle::exit_set_masses(2, 0.3, 60)?;
    let total: f64 = masses.iter().sum();
    check(
        "exit-set mass",
        (total - (1.0 - 2f64.powi(-60))).abs() <= 1e-12,
        format!("sum = {total}"),
    );
    let gap = gelfond::polyseries::product_symmetry_gap(&p, 8, 0.123)?;
    check("product symmetry", gap <= 1e-12, format!("gap = {gap:e}"));

    if json {
        let v: Vec<_> = results
            .iter()
            .map(|(n, ok, d)| serde_json::json!({"check": n, "pass": ok, "detail": d}))
            .collect();
        writeln!(out, "{}", to_json("verify", &v)?)?;
    } else {
        for (n, ok, d) in &results {
            writeln!(out, "{} {n}: {d}", if *ok { "PASS" } else { "FAIL" })?;
        }
    }
    let failed = results.iter().filter(|r| !r.1).count();
    if failed > 0 {
        return Err(Failure::Partial(format!(
            "{failed} verification check(s) failed"
        )));
    }
    Ok(())
}

fn cmd_checks(cfg: &RunConfig, grid: usize, json: bool, out: &mut Out) -> Result<(), Failure> {
    let mut reports = Vec::new();
    let c_grid: Vec<f64> = (1..=20).map(|i| i as f64 / 21.0).collect();
    for q in 3..=6 {
        reports.push(checks::theta_bound_check(q, &c_grid)?);
        reports.push(checks::h_negativity_grid(q, grid, grid)?);
    }
    for q in 4..=6 {
        reports.push(checks::g_negativity_grid(q, grid, grid)?);
    }
    let params = PotentialParams::new(2, 0.5)?;
    let cycles = enumerate_cycles(2, cfg.max_period)?;
    if let GelfondOutcome::Certified(cert) =
        gelfond_exponent_with(&params, &cycles, &pipeline(cfg))?
    {
        let probe = checks::sturmian_condition_probe(&cert, 50, 1e-4)?;
        reports.push(probe.inside);
        reports.push(probe.outside);
    }
    if json {
        writeln!(out, "{}", to_json("grid_reports", &reports)?)?;
    } else {
        for r in &reports {
            writeln!(
                out,
                "{} {} [{}]: worst = {} at {:?}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.grid_spec,
                sig(r.worst_value),
                r.worst_point
            )?;
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::Partial(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let base = RunConfig::load()?;
    let threads = cli.threads.or(base.threads);
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Partial(e.to_string()))?;
    }
    let json = cli.json || base.format == Format::Json;
    let mut out: Out = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let res = match &cli.cmd {
        Command::Gelfond { common, c } => cmd_gelfond(&resolve(common, &base)?, c, json, &mut out),
        Command::Cycles { common, min_period } => {
            cmd_cycles(&resolve(common, &base)?, *min_period, json, &mut out)
        }
        Command::Validity {
            common,
            period,
            rotation,
        } => cmd_validity(
            &resolve(common, &base)?,
            *period,
            rotation.as_deref(),
            json,
            &mut out,
        ),
        Command::Table2 { common, c_list } => {
            cmd_table2(&resolve(common, &base)?, c_list.as_deref(), json, &mut out)
        }
        Command::BetaCurve {
            common,
            resolution,
            svg,
        } => {
            let cfg = resolve(common, &base)?;
            cmd_beta_curve(
                &cfg,
                resolution.unwrap_or(cfg.resolution),
                svg.as_ref(),
                json,
                &mut out,
            )
        }
        Command::Staircase {
            common,
            points,
            iterations,
        } => {
            let cfg = resolve(common, &base)?;
            cmd_staircase(
                &cfg,
                points.unwrap_or(cfg.points),
                iterations.unwrap_or(cfg.iterations),
                json,
                &mut out,
            )
        }
        Command::Profile {
            common,
            lambda,
            depth,
            grid,
        } => {
            let cfg = resolve(common, &base)?;
            cmd_profile(
                &cfg,
                lambda,
                *depth,
                grid.unwrap_or(cfg.grid),
                json,
                &mut out,
            )
        }
        Command::Sigma {
            common,
            c,
            levels,
            grid,
        } => {
            let cfg = resolve(common, &base)?;
            cmd_sigma(&cfg, c, *levels, grid.unwrap_or(cfg.grid), json, &mut out)
        }
        Command::Fit {
            common,
            c,
            n_max,
            grid,
        } => {
            let cfg = resolve(common, &base)?;
            cmd_fit(&cfg, c, *n_max, grid.unwrap_or(1 << 14), json, &mut out)
        }
        Command::Verify { common } => cmd_verify(&resolve(common, &base)?, json, &mut out),
        Command::Checks { common, grid } => {
            let cfg = resolve(common, &base)?;
            cmd_checks(&cfg, grid.unwrap_or(cfg.grid), json, &mut out)
        }
    };
    out.flush()?;
    res
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if cli.json && !matches!(f, Failure::NonPeriodic) {
                let doc = serde_json::json!({
                    "schema_version": export::SCHEMA_VERSION,
                    "kind": "error",
                    "data": {"error": f.kind(), "message": f.message()},
                });
                println!("{doc}");
            }
            eprintln!("error ({}): {}", f.kind(), f.message());
            ExitCode::from(f.code())
        }
    }
}
