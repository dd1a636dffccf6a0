//! Command-line front end.
//!
//! Exit codes: 0 success, 1 cross-check or claim failure, 2 invalid input,
//! 3 I/O error.

pub mod config;
pub mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analytic::{self, ResponseProfile};
use crate::error::Error;
use crate::model::{Component, LoadCase, TipCondition, ValidCase};
use crate::oracle;
use crate::study::{self, SweepParameter, SweepSpec};
use config::RunConfig;

/// Engineering-unit factors. The only place conversions happen.
pub mod units {
    pub const GPA_TO_PA: f64 = 1e9;
    pub const GPA_PER_M_TO_PA_PER_M: f64 = 1e9;
    pub const KN_TO_N: f64 = 1e3;
}

/// Cross-check gate: largest max-norm relative error allowed.
pub const VALIDATE_MAX_ERROR: f64 = 1e-5;
/// Cross-check gate: admissible observed order of convergence.
pub const VALIDATE_ORDER: (f64, f64) = (1.8, 2.2);

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Gate(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                Error::Validation(_) | Error::InvalidRequest(_) | Error::UnknownFigure(_) => 2,
                Error::CaseMismatch(_) | Error::MultipleZones { .. } | Error::SingularSystem { .. } => 1,
            },
            CliError::Gate(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "energy-pile", version, about = "Thermo-mechanical response of single energy piles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SweepArg {
    /// k_h, values in GPa/m
    HeadStiffness,
    /// ΔT, values in °C
    Temperature,
    /// F, values in kN
    Force,
}

impl From<SweepArg> for SweepParameter {
    fn from(a: SweepArg) -> Self {
        match a {
            SweepArg::HeadStiffness => SweepParameter::HeadStiffness,
            SweepArg::Temperature => SweepParameter::Temperature,
            SweepArg::Force => SweepParameter::Force,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one configured case; write the profile CSV and a JSON summary.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Profile CSV (defaults to output.profile_csv in the config).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Summary JSON (defaults to output.summary_json, then <output>.summary.json).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Write the datasets behind one of figures 2-7 for the reference pile.
    Figure {
        id: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Vary one parameter of a configured case and tabulate the summaries.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        parameter: SweepArg,
        /// Comma-separated values in engineering units (GPa/m, °C or kN).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<f64>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Cross-check closed forms against the finite-difference solver.
    Validate {
        /// Case to check; without it all twelve reference combinations are checked.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Node counts of the convergence study (at least three, each roughly doubling).
        #[arg(long, value_delimiter = ',', default_values_t = [251usize, 501, 1001])]
        nodes: Vec<usize>,
        /// Node count of the accuracy comparison.
        #[arg(long, default_value_t = 20001)]
        compare_nodes: usize,
        /// Scale the closed-form displacement by (1 + value) before comparing.
        #[arg(long, hide = true)]
        corrupt_analytic: Option<f64>,
    },
    /// Grade the built-in statements about the reference pile.
    Claims {
        #[arg(long)]
        output: PathBuf,
    },
}

pub fn run(cli: Cli) -> ExitCode {
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve {
            config,
            output,
            summary,
        } => cmd_solve(&config, output.as_deref(), summary.as_deref()),
        Command::Figure { id, out_dir } => cmd_figure(id, &out_dir),
        Command::Sweep {
            config,
            parameter,
            values,
            output,
        } => cmd_sweep(&config, parameter.into(), &values, &output),
        Command::Validate {
            config,
            nodes,
            compare_nodes,
            corrupt_analytic,
        } => cmd_validate(config.as_deref(), &nodes, compare_nodes, corrupt_analytic),
        Command::Claims { output } => cmd_claims(&output),
    }
}

pub fn cmd_solve(config: &Path, output: Option<&Path>, summary: Option<&Path>) -> Result<(), CliError> {
    let cfg = RunConfig::load(config)?;
    let case = cfg.to_case()?;
    let csv_path = output
        .map(Path::to_path_buf)
        .or_else(|| cfg.output.profile_csv.clone())
        .ok_or_else(|| CliError::Input("no output path: pass --output or set output.profile_csv".into()))?;
    let summary_path = summary
        .map(Path::to_path_buf)
        .or_else(|| cfg.output.summary_json.clone())
        .unwrap_or_else(|| {
            let mut p = csv_path.clone().into_os_string();
            p.push(".summary.json");
            PathBuf::from(p)
        });

    let solution = analytic::solve(&case)?;
    output::write_atomic(&csv_path, output::profile_csv(&solution).as_bytes())?;
    output::write_json(&summary_path, &output::SummaryFile::new(&case, &solution.summary))?;

    let s = &solution.summary;
    println!("psi = {} 1/m, psi*L = {}", s.psi, s.psi_l);
    println!("null point x0 = {} m", s.null_point);
    println!("|dT_eq| = {} °C", s.equivalent_dt.magnitude);
    println!("head: u = {} m, sigma = {} Pa", s.head_displacement, s.head_stress);
    println!("tip:  u = {} m, sigma = {} Pa", s.tip_displacement, s.tip_stress);
    match s.tension_zone {
        Some(z) => println!("tension zone: {} m .. {} m (max {} Pa)", z.lower, z.upper, s.max_tensile_stress),
        None => println!("tension zone: none"),
    }
    println!("wrote {} and {}", csv_path.display(), summary_path.display());
    Ok(())
}

pub fn cmd_figure(id: u32, out_dir: &Path) -> Result<(), CliError> {
    let dataset = study::figure_dataset(id)?;
    std::fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    for s in &dataset.series {
        let path = out_dir.join(output::series_file_name(id, &s.label));
        output::write_atomic(&path, output::series_csv(s, study::LENGTH).as_bytes())?;
    }
    let manifest_path = out_dir.join(format!("fig{id}_manifest.json"));
    output::write_json(&manifest_path, &output::manifest(&dataset))?;
    println!(
        "figure {id}: {} series written to {}",
        dataset.series.len(),
        out_dir.display()
    );
    Ok(())
}

pub fn cmd_sweep(
    config: &Path,
    parameter: SweepParameter,
    values: &[f64],
    out: &Path,
) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(CliError::Input("sweep needs at least one value".into()));
    }
    let base = RunConfig::load(config)?.to_case()?;
    let factor = match parameter {
        SweepParameter::HeadStiffness => units::GPA_PER_M_TO_PA_PER_M,
        SweepParameter::Temperature => 1.0,
        SweepParameter::Force => units::KN_TO_N,
    };
    let spec = SweepSpec {
        base,
        parameter,
        values: values.iter().map(|v| v * factor).collect(),
    };
    let summaries = study::sweep(&spec)?;
    output::write_atomic(out, output::sweep_csv(parameter, values, &summaries).as_bytes())?;
    println!("{} rows written to {}", summaries.len(), out.display());
    Ok(())
}

/// Reference loads used when the configured load of a component is zero.
const REFERENCE_LOAD: LoadCase = LoadCase {
    head_force: study::SCENARIO_FORCE,
    temperature_change: -study::SCENARIO_DT,
};

fn validation_case(case: &ValidCase, component: Component) -> Result<ValidCase, CliError> {
    let mut load = case.load;
    match component {
        Component::Thermal if load.temperature_change == 0.0 => {
            load.temperature_change = REFERENCE_LOAD.temperature_change
        }
        Component::Mechanical if load.head_force == 0.0 => load.head_force = REFERENCE_LOAD.head_force,
        _ => {}
    }
    Ok(case.with_load(load).map_err(Error::from)?)
}

pub fn cmd_validate(
    config: Option<&Path>,
    nodes: &[usize],
    compare_nodes: usize,
    corrupt: Option<f64>,
) -> Result<(), CliError> {
    if nodes.len() < 3 {
        return Err(CliError::Input(format!(
            "--nodes needs at least three node counts, got {}",
            nodes.len()
        )));
    }
    let cases: Vec<ValidCase> = match config {
        Some(path) => vec![RunConfig::load(path)?.to_case()?],
        None => {
            let mut v = Vec::new();
            for tip in [TipCondition::EndBearing, TipCondition::FullyFloating] {
                for kh in [0.0, study::HEAD_STIFFNESS_LOW, study::HEAD_STIFFNESS_HIGH] {
                    v.push(study::canonical_case(tip, kh)?.with_load(REFERENCE_LOAD).map_err(Error::from)?);
                }
            }
            v
        }
    };

    let (lo, hi) = VALIDATE_ORDER;
    let mut failures = Vec::new();
    println!(
        "{:<4} {:>10} {:<10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>6}  verdict",
        "tip", "kh_GPa/m", "component", "max_u", "max_eps", "max_sigma", "max_tau", "rms_u", "order"
    );
    for case in &cases {
        for component in [Component::Thermal, Component::Mechanical] {
            let case = validation_case(case, component)?;
            let fd = oracle::solve_fd(&case, component, compare_nodes)?;
            let mut reference = closed_form(&fd.case, component);
            if let Some(f) = corrupt {
                for v in reference.displacement.iter_mut().chain(reference.interface_shear.iter_mut()) {
                    *v *= 1.0 + f;
                }
            }
            let norms = oracle::compare(&reference, &fd)?;
            let conv = oracle::convergence_study(&case, component, nodes)?;
            let ok = norms.worst() < VALIDATE_MAX_ERROR && (lo..=hi).contains(&conv.observed_order);
            let tag = format!(
                "{} kh={} GPa/m {}",
                case.restraints.tip.short_name(),
                case.restraints.head_stiffness / units::GPA_PER_M_TO_PA_PER_M,
                component.as_str()
            );
            println!(
                "{:<4} {:>10} {:<10} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e} {:>6.3}  {}",
                case.restraints.tip.short_name(),
                case.restraints.head_stiffness / units::GPA_PER_M_TO_PA_PER_M,
                component.as_str(),
                norms.displacement.max,
                norms.strain.max,
                norms.stress.max,
                norms.interface_shear.max,
                norms.displacement.rms,
                conv.observed_order,
                if ok { "PASS" } else { "FAIL" }
            );
            if !ok {
                let (field, worst) = norms
                    .fields()
                    .into_iter()
                    .max_by(|a, b| a.1.max.total_cmp(&b.1.max))
                    .map(|(n, e)| (n, e.max))
                    .unwrap();
                failures.push(format!(
                    "{tag}: worst field {field} error {worst:e} (limit {VALIDATE_MAX_ERROR:e}), order {:.3} (allowed {lo}..{hi})",
                    conv.observed_order
                ));
            }
        }
    }
    if failures.is_empty() {
        println!("all cross-checks passed ({compare_nodes} nodes, convergence on {nodes:?})");
        Ok(())
    } else {
        Err(CliError::Gate(format!("cross-check failed:\n  {}", failures.join("\n  "))))
    }
}

fn closed_form(case: &ValidCase, component: Component) -> ResponseProfile {
    match component {
        Component::Thermal => analytic::thermal_profile(case),
        _ => analytic::mechanical_profile(case),
    }
}

pub fn cmd_claims(out: &Path) -> Result<(), CliError> {
    let report = study::claims_report()?;
    output::write_json(out, &report)?;
    for c in &report.claims {
        println!(
            "{} [{}] {:<12} {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.topic,
            c.statement
        );
    }
    let failed: Vec<&str> = report.failed().map(|c| c.id.as_str()).collect();
    println!(
        "{} of {} claims passed; report written to {}",
        report.claims.len() - failed.len(),
        report.claims.len(),
        out.display()
    );
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Gate(format!("claims failed: {}", failed.join(", "))))
    }
}
