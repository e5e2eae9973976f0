//! Command-line frontend: scenario runs, the N-sweep summary table,
//! geometric coupling calculation, and entropy traces.
//!
//! Standard output is key=value lines (plus the table for `table1`) so CI
//! can parse it. Exit codes: 0 on success, 1 on configuration errors, 2 on
//! numerical or i/o failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinsqueeze::report::{self, format_sig6};
use spinsqueeze::scenario::{ObservableModeConfig, ScenarioConfig, ScenarioKind};
use spinsqueeze::squeeze::ENTROPY_PLATEAU_THRESHOLD;
use spinsqueeze::{
    coupling_matrix, entropy_trace, sql_reference, Error, GeometrySpec, SqueezingAnalyzer,
    SweepGrid,
};

#[derive(Parser)]
#[command(name = "spinsqueeze", version, about = "Spin squeezing in dipole-coupled spin systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario sweep and write timeseries, summary, and ellipse files.
    Run(ScenarioArgs),
    /// Reproduce the uniform-coupling summary table for N = 2..n_max.
    Table1(Table1Args),
    /// Print the dipolar coupling matrix for a spin geometry.
    Couple(CoupleArgs),
    /// Write the per-site entropy trace for a scenario.
    Entropy(ScenarioArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scenario kind: uniform | triangle | chain | custom.
    #[arg(long)]
    kind: Option<String>,
    /// Number of spins (uniform scenarios).
    #[arg(long)]
    n: Option<usize>,
    /// Uniform coupling d/(2 pi) in MHz.
    #[arg(long)]
    d_mhz: Option<f64>,
    /// End of the evolution-time grid, ns.
    #[arg(long)]
    tau_max_ns: Option<f64>,
    /// Evolution-time step, ns.
    #[arg(long)]
    tau_step_ns: Option<f64>,
    /// Rotation-angle step, degrees.
    #[arg(long)]
    theta_step_deg: Option<f64>,
    /// Observable mode: collective | single_site:<1-based index>.
    #[arg(long)]
    mode: Option<String>,
    /// Output directory (default "out").
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Uniform coupling d/(2 pi) in MHz.
    #[arg(long, default_value_t = 1.0)]
    d_mhz: f64,
    /// Largest spin count to sweep (2..=12).
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// End of the evolution-time grid, ns.
    #[arg(long)]
    tau_max_ns: Option<f64>,
    /// Evolution-time step, ns.
    #[arg(long)]
    tau_step_ns: Option<f64>,
    /// Rotation-angle step, degrees.
    #[arg(long)]
    theta_step_deg: Option<f64>,
}

#[derive(Args)]
struct CoupleArgs {
    /// Spin position as "x,y,z" in nm; repeat once per spin.
    #[arg(long = "pos", value_name = "X,Y,Z", required = true)]
    positions: Vec<String>,
    /// Gyromagnetic ratio in GHz/T; one value for all spins or one per spin
    /// (default 28, a free electron).
    #[arg(long = "gamma-ghz-t")]
    gammas: Vec<f64>,
    /// Spin magnitude S.
    #[arg(long, default_value_t = 0.5)]
    spin: f64,
    /// Magnetic-field axis as "x,y,z".
    #[arg(long, default_value = "0,0,1")]
    field_axis: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Couple(args) => cmd_couple(args),
        Command::Entropy(args) => cmd_entropy(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}

/// 1 for configuration problems, 2 for numerical or i/o failures.
fn exit_class(err: &Error) -> u8 {
    match err {
        Error::SchemaError { .. }
        | Error::ValidationError { .. }
        | Error::InvalidGrid { .. }
        | Error::InvalidN { .. }
        | Error::AsymmetricCouplings { .. }
        | Error::CoincidentPositions { .. }
        | Error::InvalidFieldAxis
        | Error::SiteOutOfRange { .. }
        | Error::DimensionMismatch { .. } => 1,
        _ => 2,
    }
}

fn config_io(err: std::io::Error, path: &Path) -> Error {
    Error::SchemaError { message: format!("cannot read config {}: {err}", path.display()) }
}

/// Loads the config file if given, then applies flag overrides.
fn merge_scenario(args: &ScenarioArgs) -> Result<ScenarioConfig, Error> {
    let mut config = match (&args.config, &args.kind) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| config_io(e, path))?;
            spinsqueeze::parse_config(&text)?
        }
        (None, Some(kind)) => ScenarioConfig::for_kind(ScenarioKind::parse(kind)?),
        (None, None) => {
            return Err(Error::ValidationError {
                field: "kind".into(),
                message: "pass --config or --kind".into(),
            })
        }
    };
    if let Some(kind) = &args.kind {
        config.kind = ScenarioKind::parse(kind)?;
    }
    if args.n.is_some() {
        config.n = args.n;
    }
    if args.d_mhz.is_some() {
        config.d_mhz = args.d_mhz;
    }
    if args.tau_max_ns.is_some() {
        config.tau_end_ns = args.tau_max_ns;
    }
    if args.tau_step_ns.is_some() {
        config.tau_step_ns = args.tau_step_ns;
    }
    if args.theta_step_deg.is_some() {
        config.theta_step_deg = args.theta_step_deg;
    }
    if let Some(mode) = &args.mode {
        config.observable_mode = Some(parse_mode(mode)?);
    }
    if args.out.is_some() {
        config.out_dir = args.out.clone();
    }
    Ok(config)
}

fn parse_mode(text: &str) -> Result<ObservableModeConfig, Error> {
    if text == "collective" {
        return Ok(ObservableModeConfig::Collective);
    }
    if let Some(site) = text.strip_prefix("single_site:") {
        let site: usize = site.parse().map_err(|_| Error::ValidationError {
            field: "mode".into(),
            message: format!("bad site index in `{text}`"),
        })?;
        return Ok(ObservableModeConfig::SingleSite(site));
    }
    Err(Error::ValidationError {
        field: "mode".into(),
        message: format!("unknown mode `{text}` (expected collective or single_site:<i>)"),
    })
}

fn parse_vec3(text: &str, field: &str) -> Result<[f64; 3], Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::ValidationError {
            field: field.into(),
            message: format!("`{text}` is not of the form x,y,z"),
        });
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts.iter()) {
        *slot = part.trim().parse().map_err(|_| Error::ValidationError {
            field: field.into(),
            message: format!("`{part}` is not a number"),
        })?;
    }
    Ok(out)
}

fn cmd_run(args: ScenarioArgs) -> Result<(), Error> {
    let config = merge_scenario(&args)?;
    let resolved = config.resolve()?;
    let out_dir = resolved.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));

    let analyzer = SqueezingAnalyzer::new(resolved.spec, resolved.grid)?;
    let (points, summary) = analyzer.tau_sweep()?;

    report::write_timeseries(&points, &out_dir.join("timeseries.csv"))?;
    report::write_summary(&summary, &out_dir.join("summary.json"))?;

    let optimum = points
        .iter()
        .find(|p| p.tau_ns == summary.tau_min_ns)
        .expect("summary points at a grid entry");
    let state = analyzer.state_at(summary.tau_min_ns)?;
    let sweep = analyzer.theta_sweep(&state)?;
    let ellipse_name = format!("ellipse_tau{}.csv", format_sig6(summary.tau_min_ns));
    report::write_ellipse(&sweep.samples, optimum.j_mag, &out_dir.join(ellipse_name))?;

    println!("sigma_min={}", format_sig6(summary.sigma_min));
    println!("tau_min_ns={}", format_sig6(summary.tau_min_ns));
    println!("theta_min_deg={}", format_sig6(summary.theta_min_deg));
    println!("sigma_a_min={}", format_sig6(summary.sigma_a_min));
    println!("sigma_0={}", format_sig6(summary.sigma_0));
    if summary.sigma_min >= summary.sigma_0 - 1e-9 {
        println!("note=no_squeezing");
    }
    Ok(())
}

fn cmd_table1(args: Table1Args) -> Result<(), Error> {
    if !(2..=12).contains(&args.n_max) {
        return Err(Error::InvalidN {
            reason: format!("n_max must lie in 2..=12, got {}", args.n_max),
        });
    }
    println!(
        "{:>2}  {:>5}  {:>8}  {:>9}  {:>10}  {:>13}  {:>8}",
        "N", "J", "sigma_0", "sigma_min", "tau_min_ns", "theta_min_deg", "ratio"
    );
    for n in 2..=args.n_max {
        let spec = spinsqueeze::scenario_uniform(n, args.d_mhz)?;
        let theta_step = args.theta_step_deg.unwrap_or(1.0);
        let grid = SweepGrid {
            tau_end_ns: args.tau_max_ns.unwrap_or(650.0),
            tau_step_ns: args.tau_step_ns.unwrap_or(1.0),
            theta_step_deg: theta_step,
            theta_end_deg: 180.0 - theta_step,
            ..SweepGrid::default()
        };
        let analyzer = SqueezingAnalyzer::new(spec, grid)?;
        let (_, summary) = analyzer.tau_sweep()?;
        println!(
            "{:>2}  {:>5}  {:>8}  {:>9}  {:>10}  {:>13}  {:>8}",
            n,
            format_sig6(n as f64 / 2.0),
            format_sig6(sql_reference(n)),
            format_sig6(summary.sigma_min),
            format_sig6(summary.tau_min_ns),
            format_sig6(summary.theta_min_deg),
            format_sig6(summary.sigma_min / summary.sigma_0),
        );
    }
    Ok(())
}

fn cmd_couple(args: CoupleArgs) -> Result<(), Error> {
    let mut positions = Vec::with_capacity(args.positions.len());
    for text in &args.positions {
        positions.push(parse_vec3(text, "pos")?);
    }
    let n = positions.len();
    if n < 2 {
        return Err(Error::InvalidN { reason: "couple needs at least two --pos".into() });
    }
    let gammas = match args.gammas.len() {
        0 => vec![spinsqueeze::spin::FREE_ELECTRON_GAMMA_GHZ_PER_T; n],
        1 => vec![args.gammas[0]; n],
        len if len == n => args.gammas.clone(),
        len => {
            return Err(Error::ValidationError {
                field: "gamma-ghz-t".into(),
                message: format!("got {len} gammas for {n} spins"),
            })
        }
    };
    let field_axis = parse_vec3(&args.field_axis, "field-axis")?;
    let geometry = GeometrySpec::new(positions, gammas, args.spin, field_axis)?;
    let matrix = coupling_matrix(&geometry)?;
    println!("d_mhz_matrix:");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_sig6(matrix[(i, j)])).collect();
        println!("{}", row.join(" "));
    }
    Ok(())
}

fn cmd_entropy(args: ScenarioArgs) -> Result<(), Error> {
    let config = merge_scenario(&args)?;
    let resolved = config.resolve()?;
    let out_dir = resolved.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));

    let trace = entropy_trace(&resolved.spec, &resolved.grid)?;
    report::write_entropy_trace(&trace, &out_dir.join("entropy.csv"))?;

    let (peak_tau, peak_value) = trace.peak();
    match trace.first_reaching(ENTROPY_PLATEAU_THRESHOLD) {
        Some(tau) => println!("first_plateau_tau_ns={}", format_sig6(tau)),
        None => println!("first_plateau_tau_ns=nan"),
    }
    println!("entropy_peak={}", format_sig6(peak_value));
    println!("entropy_peak_tau_ns={}", format_sig6(peak_tau));
    Ok(())
}
