//! Command line front end: experiment orchestration, validation, and
//! plot-ready data emission for the fractional block-operator library.

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{build_quadrature, parse_eigenvalue_list, FileConfig, OperatorSource};
use fracop::block::{
    assemble_lambda, balakrishnan_block, fractional_power_closed_form,
    fractional_power_eig_oracle,
};
use fracop::evolution::{evolve, PhaseState};
use fracop::laplacian::{eigenpairs, solve_pde, DirichletModel, InitialData};
use fracop::reduction::char_coeffs;
use fracop::spectrum::{eigenvalues_formula, OperatorTag};
use fracop::validate::{run_all, ValidationConfig};
use fracop::{Error as FracError, ModeBlock, QuadratureSpec, SpectralOperator};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_VALIDATION_FAILURE: u8 = 1;
const EXIT_CONFIG_ERROR: u8 = 2;
const EXIT_NUMERICAL_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fracop",
    version,
    about = "Fractional powers of the n-th order in time evolution block operator"
)]
struct Cli {
    /// JSON configuration file; explicit flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: fracop-out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized component.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; 0 selects automatically.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct OperatorArgs {
    /// Comma-separated explicit eigenvalue list, ascending.
    #[arg(long)]
    eigenvalues: Option<String>,
    /// Load the operator from a JSON file.
    #[arg(long)]
    operator_file: Option<PathBuf>,
    /// Dirichlet interval length.
    #[arg(long)]
    length: Option<f64>,
    /// Polyharmonic order m.
    #[arg(long, value_name = "M")]
    polyharmonic_order: Option<u32>,
    /// Number of retained modes.
    #[arg(long)]
    modes: Option<usize>,
    /// Simpson points for Dirichlet projections.
    #[arg(long)]
    quadrature_points: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct QuadArgs {
    /// Gauss-Legendre nodes per panel.
    #[arg(long)]
    quad_nodes: Option<usize>,
    /// Quadrature scheme: gauss-legendre-split | tanh-sinh.
    #[arg(long)]
    quad_scheme: Option<String>,
    /// Successive-refinement tolerance.
    #[arg(long)]
    quad_tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full validation suite and write a machine-readable report.
    Validate {
        /// Multiplies every criterion tolerance (0 forces failure).
        #[arg(long)]
        tolerance_scale: Option<f64>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Compute one fractional power block by all three routes.
    Power {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Eigenvalue locations of the (fractional) block operator.
    Spectrum {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        /// lambda | minus_lambda | lambda_alpha | minus_lambda_alpha.
        #[arg(long)]
        tag: Option<String>,
        #[command(flatten)]
        operator: OperatorArgs,
    },
    /// Evolve the fractional first-order system and record norm traces.
    Evolve {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        /// Number of time steps (samples = steps + 1).
        #[arg(long)]
        time_steps: Option<usize>,
        /// Initial data: "random" or "mode:K".
        #[arg(long)]
        initial: Option<String>,
        /// Include full coefficient dumps in the JSON output.
        #[arg(long)]
        dump_coeffs: bool,
        #[command(flatten)]
        operator: OperatorArgs,
    },
    /// Solve the n-th order in time problem on a Dirichlet interval.
    Pde {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        time_steps: Option<usize>,
        /// Spatial output points.
        #[arg(long)]
        x_points: Option<usize>,
        /// Initial data: "mode:K" or "poly" (x (L - x)).
        #[arg(long)]
        initial: Option<String>,
        #[command(flatten)]
        operator: OperatorArgs,
    },
    /// Reduce the per-mode system to its scalar n-th order equation.
    Reduce {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Single mode; omit to reduce every mode of the operator.
        #[arg(long)]
        mu: Option<f64>,
        #[command(flatten)]
        operator: OperatorArgs,
    },
}

/// Failures carrying their process exit code.
enum CliError {
    Config(String),
    Numerical(FracError),
    ValidationFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG_ERROR,
            CliError::Numerical(_) => EXIT_NUMERICAL_FAILURE,
            CliError::ValidationFailed(_) => EXIT_VALIDATION_FAILURE,
        }
    }
}

impl From<FracError> for CliError {
    fn from(e: FracError) -> Self {
        match e {
            FracError::Domain(msg) => CliError::Config(msg),
            other => CliError::Numerical(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Config(msg) => eprintln!("config error: {msg}"),
                CliError::Numerical(e) => {
                    let payload = serde_json::json!({ "error": e.to_string() });
                    eprintln!("numerical failure: {payload}");
                }
                CliError::ValidationFailed(count) => {
                    eprintln!("validation failed: {count} check(s) exceeded tolerance");
                }
            }
            ExitCode::from(err.exit_code())
        }
    }
}

/// Globals resolved from flags and the optional config file.
struct Globals {
    file: FileConfig,
    out: PathBuf,
    seed: u64,
    threads: usize,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(CliError::Config)?,
        None => FileConfig::default(),
    };
    let globals = Globals {
        out: cli
            .out
            .or_else(|| file.out.clone())
            .unwrap_or_else(|| PathBuf::from("fracop-out")),
        seed: cli.seed.or(file.seed).unwrap_or(0),
        threads: cli.threads.or(file.threads).unwrap_or(0),
        file,
    };
    if globals.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(globals.threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Validate {
            tolerance_scale,
            quad,
        } => cmd_validate(&globals, tolerance_scale, &quad),
        Command::Power { n, alpha, mu, quad } => cmd_power(&globals, n, alpha, mu, &quad),
        Command::Spectrum {
            n,
            alpha,
            tag,
            operator,
        } => cmd_spectrum(&globals, n, alpha, tag, &operator),
        Command::Evolve {
            n,
            alpha,
            horizon,
            time_steps,
            initial,
            dump_coeffs,
            operator,
        } => cmd_evolve(
            &globals, n, alpha, horizon, time_steps, initial, dump_coeffs, &operator,
        ),
        Command::Pde {
            n,
            alpha,
            horizon,
            time_steps,
            x_points,
            initial,
            operator,
        } => cmd_pde(
            &globals, n, alpha, horizon, time_steps, x_points, initial, &operator,
        ),
        Command::Reduce {
            n,
            alpha,
            mu,
            operator,
        } => cmd_reduce(&globals, n, alpha, mu, &operator),
    }
}

fn resolve_n(globals: &Globals, n: Option<usize>) -> Result<usize, CliError> {
    let n = n.or(globals.file.n).unwrap_or(3);
    if n < 2 {
        return Err(CliError::Config(format!("n must be at least 2, got {n}")));
    }
    Ok(n)
}

fn resolve_alpha(globals: &Globals, alpha: Option<f64>) -> Result<f64, CliError> {
    let alpha = alpha.or(globals.file.alpha).unwrap_or(0.5);
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CliError::Config(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(alpha)
}

fn resolve_operator_source(
    globals: &Globals,
    args: &OperatorArgs,
) -> Result<OperatorSource, CliError> {
    if let Some(list) = &args.eigenvalues {
        return Ok(OperatorSource::Eigenvalues(
            parse_eigenvalue_list(list).map_err(CliError::Config)?,
        ));
    }
    if let Some(path) = &args.operator_file {
        return Ok(OperatorSource::File(path.clone()));
    }
    let (default_length, default_order, default_modes, default_qp) =
        match OperatorSource::default() {
            OperatorSource::Dirichlet {
                length,
                order,
                modes,
                quadrature_points,
            } => (length, order, modes, quadrature_points),
            _ => unreachable!(),
        };
    let file_dirichlet = match &globals.file.operator {
        Some(OperatorSource::Dirichlet {
            length,
            order,
            modes,
            quadrature_points,
        }) => Some((*length, *order, *modes, *quadrature_points)),
        Some(other) => {
            if args.length.is_none()
                && args.polyharmonic_order.is_none()
                && args.modes.is_none()
                && args.quadrature_points.is_none()
            {
                return Ok(other.clone());
            }
            None
        }
        None => None,
    };
    let (fl, fo, fm, fq) =
        file_dirichlet.unwrap_or((default_length, default_order, default_modes, default_qp));
    Ok(OperatorSource::Dirichlet {
        length: args.length.unwrap_or(fl),
        order: args.polyharmonic_order.unwrap_or(fo),
        modes: args.modes.unwrap_or(fm),
        quadrature_points: args.quadrature_points.unwrap_or(fq),
    })
}

fn cmd_validate(
    globals: &Globals,
    tolerance_scale: Option<f64>,
    quad: &QuadArgs,
) -> Result<(), CliError> {
    let quadrature = build_quadrature(
        &globals.file,
        quad.quad_nodes,
        quad.quad_scheme.as_deref(),
        quad.quad_tolerance,
    )
    .map_err(CliError::Config)?;
    let scale = tolerance_scale
        .or(globals.file.tolerance_scale)
        .unwrap_or(1.0);
    if scale < 0.0 {
        return Err(CliError::Config(format!(
            "tolerance scale must be nonnegative, got {scale}"
        )));
    }
    let cfg = ValidationConfig {
        seed: globals.seed,
        tolerance_scale: scale,
        quadrature,
    };
    let results = run_all(&cfg)?;
    for r in &results {
        println!(
            "{} {:34} max residual {:10.3e}  tolerance {:8.1e}  [{}]",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.max_residual,
            r.tolerance,
            r.detail
        );
    }
    let path = output::write_json(&globals.out, "validate.json", &cfg, &results)
        .map_err(CliError::Config)?;
    println!("report: {}", path.display());
    let failures = results.iter().filter(|r| !r.pass).count();
    if failures > 0 {
        return Err(CliError::ValidationFailed(failures));
    }
    Ok(())
}

/// Block pretty-printer; entries below 1e-13 of the block scale display as
/// zero (stored data is never snapped).
fn format_block(block: &ModeBlock) -> String {
    let entries = block.entries();
    let scale = entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let snap = 1e-13 * scale;
    let mut out = String::new();
    for i in 0..block.order() {
        out.push_str("  [");
        for j in 0..block.order() {
            let z = entries[[i, j]];
            let (re, im) = if z.norm() < snap {
                (0.0, 0.0)
            } else {
                (z.re, z.im)
            };
            if im.abs() > 0.0 {
                out.push_str(&format!(" {re:>13.6e}{im:+.3e}i"));
            } else {
                out.push_str(&format!(" {re:>13.6e}"));
            }
        }
        out.push_str(" ]\n");
    }
    out
}

#[derive(Serialize)]
struct PowerConfig {
    n: usize,
    alpha: f64,
    mu: f64,
    quadrature: QuadratureSpec,
    seed: u64,
}

fn cmd_power(
    globals: &Globals,
    n: Option<usize>,
    alpha: Option<f64>,
    mu: Option<f64>,
    quad: &QuadArgs,
) -> Result<(), CliError> {
    let n = resolve_n(globals, n)?;
    let alpha = resolve_alpha(globals, alpha)?;
    let mu = mu.or(globals.file.mu).unwrap_or(1.0);
    let quadrature = build_quadrature(
        &globals.file,
        quad.quad_nodes,
        quad.quad_scheme.as_deref(),
        quad.quad_tolerance,
    )
    .map_err(CliError::Config)?;
    let config = PowerConfig {
        n,
        alpha,
        mu,
        quadrature: quadrature.clone(),
        seed: globals.seed,
    };

    let closed = fractional_power_closed_form(n, mu, alpha)?;
    let lambda = assemble_lambda(n, mu)?;
    let via_eig = fractional_power_eig_oracle(&lambda, alpha)?;
    let balakrishnan = if alpha > 0.0 && alpha < 1.0 {
        Some(balakrishnan_block(n, mu, alpha, &quadrature)?)
    } else {
        None
    };

    let eig_diff = closed.max_abs_diff(&via_eig);
    let bala_diff = balakrishnan.as_ref().map(|b| closed.max_abs_diff(b));

    #[derive(Serialize)]
    struct PowerData {
        closed_form: ModeBlock,
        eigendecomposition: ModeBlock,
        #[serde(skip_serializing_if = "Option::is_none")]
        balakrishnan: Option<ModeBlock>,
        max_abs_diff_eig: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        max_abs_diff_balakrishnan: Option<f64>,
    }
    let data = PowerData {
        closed_form: closed.clone(),
        eigendecomposition: via_eig,
        balakrishnan,
        max_abs_diff_eig: eig_diff,
        max_abs_diff_balakrishnan: bala_diff,
    };
    let path = output::write_json(&globals.out, "power.json", &config, &data)
        .map_err(CliError::Config)?;

    println!("fractional power block, n = {n}, alpha = {alpha}, mu = {mu}:");
    print!("{}", format_block(&closed));
    println!("eigendecomposition route max |diff|: {eig_diff:.3e}");
    if let Some(d) = data.max_abs_diff_balakrishnan {
        println!("Balakrishnan route max |diff|:       {d:.3e}");
    }
    println!("output: {}", path.display());
    Ok(())
}

fn parse_tag(name: &str) -> Result<OperatorTag, String> {
    match name {
        "lambda" => Ok(OperatorTag::Lambda),
        "minus_lambda" => Ok(OperatorTag::MinusLambda),
        "lambda_alpha" => Ok(OperatorTag::LambdaAlpha),
        "minus_lambda_alpha" => Ok(OperatorTag::MinusLambdaAlpha),
        other => Err(format!(
            "unknown tag '{other}' (expected lambda | minus_lambda | lambda_alpha | minus_lambda_alpha)"
        )),
    }
}

#[derive(Serialize)]
struct SpectrumConfig {
    n: usize,
    alpha: f64,
    tag: OperatorTag,
    operator: OperatorSource,
    seed: u64,
}

fn cmd_spectrum(
    globals: &Globals,
    n: Option<usize>,
    alpha: Option<f64>,
    tag: Option<String>,
    operator: &OperatorArgs,
) -> Result<(), CliError> {
    let n = resolve_n(globals, n)?;
    let alpha_value = alpha.or(globals.file.alpha).unwrap_or(1.0);
    if !(alpha_value > 0.0 && alpha_value <= 1.0) {
        return Err(CliError::Config(format!(
            "alpha must lie in (0, 1], got {alpha_value}"
        )));
    }
    let tag = match tag.or_else(|| globals.file.spectrum_tag.clone()) {
        Some(name) => parse_tag(&name).map_err(CliError::Config)?,
        None => OperatorTag::MinusLambdaAlpha,
    };
    let source = resolve_operator_source(globals, operator)?;
    let op = source.realize().map_err(CliError::Config)?;
    let config = SpectrumConfig {
        n,
        alpha: alpha_value,
        tag,
        operator: source,
        seed: globals.seed,
    };

    let report = eigenvalues_formula(n, alpha_value, &op, tag)?;

    // Semiline endpoints: per distinct angle, the modulus range over modes.
    #[derive(Serialize)]
    struct Semiline {
        angle: f64,
        angle_over_pi: f64,
        modulus_min: f64,
        modulus_max: f64,
        points: usize,
    }
    let mut semilines: Vec<Semiline> = Vec::new();
    for angle in report.semiline_angles() {
        let moduli: Vec<f64> = report
            .entries
            .iter()
            .filter(|e| {
                let mut a = e.value.arg();
                if a < 0.0 {
                    a += 2.0 * std::f64::consts::PI;
                }
                (a - angle).abs() < 1e-12
            })
            .map(|e| e.value.norm())
            .collect();
        semilines.push(Semiline {
            angle,
            angle_over_pi: angle / std::f64::consts::PI,
            modulus_min: moduli.iter().copied().fold(f64::INFINITY, f64::min),
            modulus_max: moduli.iter().copied().fold(0.0, f64::max),
            points: moduli.len(),
        });
    }

    #[derive(Serialize)]
    struct SpectrumData {
        semilines: Vec<Semiline>,
        entries: usize,
        report: fracop::SpectrumReport,
    }
    let csv_path = output::write_csv(&globals.out, "spectrum.csv", &config, &report.to_csv())
        .map_err(CliError::Config)?;
    let data = SpectrumData {
        semilines,
        entries: report.entries.len(),
        report,
    };
    let json_path = output::write_json(&globals.out, "spectrum.json", &config, &data)
        .map_err(CliError::Config)?;

    println!("spectrum of {:?}, n = {n}, alpha = {alpha_value}:", tag);
    for s in &data.semilines {
        println!(
            "  semiline angle {:.6} rad ({:.4} pi): modulus {:.6e} .. {:.6e} ({} points)",
            s.angle, s.angle_over_pi, s.modulus_min, s.modulus_max, s.points
        );
    }
    println!("outputs: {} {}", csv_path.display(), json_path.display());
    Ok(())
}

fn parse_initial_state(
    spec: &str,
    op: &Arc<SpectralOperator>,
    n: usize,
    seed: u64,
) -> Result<PhaseState, CliError> {
    if spec == "random" {
        return Ok(PhaseState::random_unit(op.clone(), n, seed)?);
    }
    if let Some(mode_text) = spec.strip_prefix("mode:") {
        let mode: usize = mode_text
            .parse()
            .map_err(|e| CliError::Config(format!("invalid mode index '{mode_text}': {e}")))?;
        if mode == 0 || mode > op.count() {
            return Err(CliError::Config(format!(
                "mode index must lie in 1..={}, got {mode}",
                op.count()
            )));
        }
        let mut state = PhaseState::zero(op.clone(), n)?;
        state.set_coeff(mode - 1, 0, num_complex::Complex64::new(1.0, 0.0));
        return Ok(state);
    }
    Err(CliError::Config(format!(
        "unknown initial data '{spec}' (expected random or mode:K)"
    )))
}

#[derive(Serialize)]
struct EvolveConfig {
    n: usize,
    alpha: f64,
    horizon: f64,
    time_steps: usize,
    initial: String,
    operator: OperatorSource,
    seed: u64,
    dump_coeffs: bool,
}

#[allow(clippy::too_many_arguments)]
fn cmd_evolve(
    globals: &Globals,
    n: Option<usize>,
    alpha: Option<f64>,
    horizon: Option<f64>,
    time_steps: Option<usize>,
    initial: Option<String>,
    dump_coeffs: bool,
    operator: &OperatorArgs,
) -> Result<(), CliError> {
    let n = resolve_n(globals, n)?;
    let alpha = resolve_alpha(globals, alpha)?;
    if alpha == 0.0 {
        return Err(CliError::Config("evolve requires alpha in (0, 1]".into()));
    }
    let horizon = horizon.or(globals.file.horizon).unwrap_or(10.0);
    if horizon <= 0.0 || horizon.is_nan() {
        return Err(CliError::Config(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let time_steps = time_steps.or(globals.file.time_steps).unwrap_or(128).max(1);
    let initial_spec = initial
        .or_else(|| globals.file.initial.clone())
        .unwrap_or_else(|| "random".to_string());
    let dump_coeffs = dump_coeffs || globals.file.dump_coeffs.unwrap_or(false);
    let source = resolve_operator_source(globals, operator)?;
    let op = source.realize().map_err(CliError::Config)?;
    let config = EvolveConfig {
        n,
        alpha,
        horizon,
        time_steps,
        initial: initial_spec.clone(),
        operator: source,
        seed: globals.seed,
        dump_coeffs,
    };

    let state = parse_initial_state(&initial_spec, &op, n, globals.seed)?;
    let times: Vec<f64> = (0..=time_steps)
        .map(|i| horizon * i as f64 / time_steps as f64)
        .collect();
    let trajectory = evolve(&state, alpha, &times)?;

    let csv_path = output::write_csv(&globals.out, "evolve.csv", &config, &trajectory.to_csv())
        .map_err(CliError::Config)?;
    let data: serde_json::Value = serde_json::from_str(&trajectory.to_json(dump_coeffs))
        .map_err(|e| CliError::Config(format!("trajectory serialization: {e}")))?;
    let json_path = output::write_json(&globals.out, "evolve.json", &config, &data)
        .map_err(CliError::Config)?;

    let first = trajectory.norms.first().expect("nonempty");
    let last = trajectory.norms.last().expect("nonempty");
    println!(
        "evolved n = {n}, alpha = {alpha} over [0, {horizon}]: Y-norm {:.6e} -> {:.6e}",
        first.y_norm, last.y_norm
    );
    println!("outputs: {} {}", csv_path.display(), json_path.display());
    Ok(())
}

#[derive(Serialize)]
struct PdeConfig {
    n: usize,
    alpha: f64,
    model: DirichletModel,
    horizon: f64,
    time_steps: usize,
    x_points: usize,
    initial: String,
    seed: u64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_pde(
    globals: &Globals,
    n: Option<usize>,
    alpha: Option<f64>,
    horizon: Option<f64>,
    time_steps: Option<usize>,
    x_points: Option<usize>,
    initial: Option<String>,
    operator: &OperatorArgs,
) -> Result<(), CliError> {
    let n = resolve_n(globals, n)?;
    let alpha = resolve_alpha(globals, alpha)?;
    if alpha == 0.0 {
        return Err(CliError::Config("pde requires alpha in (0, 1]".into()));
    }
    let source = resolve_operator_source(globals, operator)?;
    let model = match &source {
        OperatorSource::Dirichlet {
            length,
            order,
            modes,
            quadrature_points,
        } => DirichletModel::new(*length, *order, *modes, *quadrature_points)?,
        _ => {
            return Err(CliError::Config(
                "pde requires a Dirichlet operator source".into(),
            ))
        }
    };
    let horizon = horizon.or(globals.file.horizon).unwrap_or(5.0);
    if horizon <= 0.0 || horizon.is_nan() {
        return Err(CliError::Config(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let time_steps = time_steps.or(globals.file.time_steps).unwrap_or(64).max(1);
    let x_points = x_points.or(globals.file.x_points).unwrap_or(129).max(2);
    let initial_spec = initial
        .or_else(|| globals.file.initial.clone())
        .unwrap_or_else(|| "mode:1".to_string());
    let config = PdeConfig {
        n,
        alpha,
        model: model.clone(),
        horizon,
        time_steps,
        x_points,
        initial: initial_spec.clone(),
        seed: globals.seed,
    };

    let basis = eigenpairs(&model)?;
    let length = model.length;
    let poly = move |x: f64| x * (length - x);
    let zero = |_: f64| 0.0;
    let mode_fn: Box<dyn Fn(f64) -> f64>;
    let primary: &dyn Fn(f64) -> f64 = if initial_spec == "poly" {
        &poly
    } else if let Some(mode_text) = initial_spec.strip_prefix("mode:") {
        let mode: usize = mode_text
            .parse()
            .map_err(|e| CliError::Config(format!("invalid mode index '{mode_text}': {e}")))?;
        if mode == 0 || mode > model.modes {
            return Err(CliError::Config(format!(
                "mode index must lie in 1..={}, got {mode}",
                model.modes
            )));
        }
        let basis_clone = basis.clone();
        mode_fn = Box::new(move |x: f64| basis_clone.eigenfunction(mode, x));
        &*mode_fn
    } else {
        return Err(CliError::Config(format!(
            "unknown initial data '{initial_spec}' (expected mode:K or poly)"
        )));
    };

    let mut data_fns: Vec<InitialData<'_>> = vec![InitialData::Function(primary)];
    for _ in 1..n {
        data_fns.push(InitialData::Function(&zero));
    }
    let t_grid: Vec<f64> = (0..=time_steps)
        .map(|i| horizon * i as f64 / time_steps as f64)
        .collect();
    let x_grid: Vec<f64> = (0..x_points)
        .map(|i| model.length * i as f64 / (x_points - 1) as f64)
        .collect();
    let solution = solve_pde(&basis, n, alpha, &data_fns, &t_grid, &x_grid)?;

    let csv_path = output::write_csv(&globals.out, "pde.csv", &config, &solution.to_csv_long())
        .map_err(CliError::Config)?;
    #[derive(Serialize)]
    struct PdeData {
        l2_norms: Vec<f64>,
        times: Vec<f64>,
        projection: fracop::laplacian::ProjectionReport,
        y_norms: Vec<f64>,
    }
    let data = PdeData {
        l2_norms: solution.l2_norms(),
        times: solution.times.clone(),
        projection: solution.projection.clone(),
        y_norms: solution.trajectory.norms.iter().map(|t| t.y_norm).collect(),
    };
    let json_path = output::write_json(&globals.out, "pde.json", &config, &data)
        .map_err(CliError::Config)?;

    if data.projection.resolution_warning {
        eprintln!(
            "warning: projection error estimate {:.3e} exceeds tolerance; increase quadrature_points",
            data.projection.estimated_error
        );
    }
    println!(
        "solved pde: n = {n}, alpha = {alpha}, field L2 norm {:.6e} -> {:.6e}",
        data.l2_norms.first().expect("nonempty"),
        data.l2_norms.last().expect("nonempty")
    );
    println!("outputs: {} {}", csv_path.display(), json_path.display());
    Ok(())
}

#[derive(Serialize)]
struct ReduceConfig {
    n: usize,
    alpha: f64,
    operator: OperatorSource,
    seed: u64,
}

fn cmd_reduce(
    globals: &Globals,
    n: Option<usize>,
    alpha: Option<f64>,
    mu: Option<f64>,
    operator: &OperatorArgs,
) -> Result<(), CliError> {
    let n = resolve_n(globals, n)?;
    let alpha = resolve_alpha(globals, alpha)?;
    let source = match mu.or(globals.file.mu) {
        Some(mu) => OperatorSource::Eigenvalues(vec![mu]),
        None => resolve_operator_source(globals, operator)?,
    };
    let op = source.realize().map_err(CliError::Config)?;
    let config = ReduceConfig {
        n,
        alpha,
        operator: source,
        seed: globals.seed,
    };

    let mut reductions = Vec::with_capacity(op.count());
    let mut text = String::new();
    for (j, &mu) in op.eigenvalues().iter().enumerate() {
        let cc = char_coeffs(n, alpha, mu)?;
        text.push_str(&format!("mode {} (mu = {mu}):\n  ", j + 1));
        let mut terms = Vec::with_capacity(n + 1);
        for (k, c) in cc.coefficients.iter().enumerate() {
            let degree = n - k;
            let coefficient = if k == 0 {
                String::new()
            } else {
                format!("({:+.6e}) ", c.re)
            };
            let term = match degree {
                0 => format!("{coefficient}u"),
                1 => format!("{coefficient}du/dt"),
                d => format!("{coefficient}d^{d}u/dt^{d}"),
            };
            terms.push(term);
        }
        text.push_str(&terms.join(" + "));
        text.push_str(" = 0\n");
        reductions.push(cc);
    }

    let json_path = output::write_json(&globals.out, "reduce.json", &config, &reductions)
        .map_err(CliError::Config)?;
    let txt_path = output::write_csv(&globals.out, "reduce.txt", &config, &text)
        .map_err(CliError::Config)?;

    print!("{text}");
    println!("outputs: {} {}", json_path.display(), txt_path.display());
    Ok(())
}
