//! Config-driven batch front end.
//!
//! Jobs are described by a versioned JSON document (unknown keys rejected)
//! and produce machine-readable artifacts:
//!
//! * `solve` / `spectrum` — CSV rows `case,n,ell,energy,residual`
//! * `wavefunction`      — CSV rows `r,R`
//! * `verify`            — JSON comparison report against the shooting
//!   oracle (plus golden CSVs under `goldens/` when seeding)
//! * `list-potentials`   — the catalog with parameter documentation
//!
//! Floats are printed with 17 significant digits and files are written via
//! a temporary name plus rename, so identical configs produce byte-identical
//! artifacts and failures never leave partial files behind.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::eigensolver::{
    self, solve_energy_detailed, thread_cap, EnergyWindow, StateSign, DEFAULT_SCAN_POINTS,
    DEFAULT_TOLERANCE,
};
use crate::normal_form::{
    quantization_residual_jacobi, quantization_residual_laguerre, solve_exponents_jacobi_signed,
    solve_exponents_laguerre,
};
use crate::oracle::{
    clamped_shoot_window, compare, format_f64, golden_csv, shoot, CentrifugalMode,
    ComparisonRecord, EffectiveProblem,
};
use crate::potentials::{map_potential, PotentialSpec};
use crate::wavefunctions::{evaluate, normalize, RadialGrid, Spacing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    Spectrum,
    Wavefunction,
    Verify,
    ListPotentials,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub sign: Option<String>,
    #[serde(default)]
    pub scan_points: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Bisection tolerance of the shooting search (absolute in energy).
    #[serde(default)]
    pub tolerance: Option<f64>,
    /// Per-case energy tolerance the comparison must meet.
    #[serde(default)]
    pub energy_tolerance: Option<f64>,
    /// Minimum wavefunction overlap (omitted = not enforced).
    #[serde(default)]
    pub overlap_min: Option<f64>,
    /// Half-width of the shooting window around each algebraic level.
    #[serde(default)]
    pub window_radius: Option<f64>,
    /// Use the exact centrifugal term instead of the case's approximation.
    #[serde(default)]
    pub exact_centrifugal: Option<bool>,
}

/// A fully validated job description.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub version: u32,
    pub command: Command,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub mass: Option<f64>,
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub ell: Option<u32>,
    #[serde(default)]
    pub n_max: Option<u32>,
    #[serde(default)]
    pub ell_max: Option<u32>,
    #[serde(default)]
    pub window: Option<WindowConfig>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub oracle: Option<OracleConfig>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("compute error: {0}")]
    Compute(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Flags {
    pub seed_goldens: bool,
    pub strict: bool,
}

pub fn parse_config(text: &str) -> Result<JobConfig, CliError> {
    let config: JobConfig =
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    if config.version != 1 {
        return Err(CliError::Config(format!(
            "unsupported config version {} (expected 1)",
            config.version
        )));
    }
    if config.command != Command::ListPotentials {
        let mass = config
            .mass
            .ok_or_else(|| CliError::Config("mass is required".into()))?;
        if !(mass.is_finite() && mass > 0.0) {
            return Err(CliError::Config(format!("mass {mass} must be positive")));
        }
        let spec = config
            .potential
            .as_ref()
            .ok_or_else(|| CliError::Config("potential is required".into()))?;
        spec.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    match config.command {
        Command::Solve | Command::Wavefunction => {
            if config.n.is_none() || config.ell.is_none() {
                return Err(CliError::Config(
                    "solve/wavefunction require explicit n and ell".into(),
                ));
            }
        }
        Command::Spectrum | Command::Verify => {
            if config.n_max.is_none() || config.ell_max.is_none() {
                return Err(CliError::Config(
                    "spectrum/verify require n_max and ell_max".into(),
                ));
            }
        }
        Command::ListPotentials => {}
    }
    if let Some(w) = &config.window {
        if !(w.lo.is_finite() && w.hi.is_finite() && w.lo < w.hi) {
            return Err(CliError::Config("window must satisfy lo < hi".into()));
        }
        if let Some(sp) = w.scan_points {
            if sp < 64 {
                return Err(CliError::Config("window.scan_points must be >= 64".into()));
            }
        }
        if let Some(sign) = &w.sign {
            if sign != "particle" && sign != "antiparticle" {
                return Err(CliError::Config(format!(
                    "window.sign must be \"particle\" or \"antiparticle\", got {sign:?}"
                )));
            }
        }
    }
    if let Some(g) = &config.grid {
        if !(g.r_min > 0.0 && g.r_min < g.r_max) || g.count < 128 {
            return Err(CliError::Config(
                "grid requires 0 < r_min < r_max and count >= 128".into(),
            ));
        }
        if let Some(sp) = &g.spacing {
            if sp != "uniform" && sp != "log" {
                return Err(CliError::Config(format!(
                    "grid.spacing must be \"uniform\" or \"log\", got {sp:?}"
                )));
            }
        }
    }
    // KGBOUND_THREADS is part of the config surface; reject garbage early
    if let Ok(v) = std::env::var("KGBOUND_THREADS") {
        if v.trim().parse::<usize>().map(|n| n >= 1) != Ok(true) {
            return Err(CliError::Config(format!(
                "KGBOUND_THREADS must be a positive integer, got {v:?}"
            )));
        }
    }
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<JobConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn window_of(config: &JobConfig, spec: &PotentialSpec, mass: f64) -> Result<EnergyWindow, CliError> {
    match &config.window {
        None => Ok(EnergyWindow::default_for(spec, mass)),
        Some(w) => {
            let sign = match w.sign.as_deref() {
                Some("antiparticle") => StateSign::Antiparticle,
                _ => StateSign::Particle,
            };
            EnergyWindow::new(w.lo, w.hi, sign, w.scan_points.unwrap_or(DEFAULT_SCAN_POINTS))
                .map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

fn quantization_residual_of(state: &crate::eigensolver::BoundState) -> Result<f64, CliError> {
    let (params, _) = map_potential(&state.spec, state.mass, state.energy, state.ell)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let value = if params.c3 == 0.0 {
        let exp = solve_exponents_laguerre(&params).map_err(|e| CliError::Compute(e.to_string()))?;
        quantization_residual_laguerre(&params, &exp, state.n)
            .map_err(|e| CliError::Compute(e.to_string()))?
            .value
    } else {
        let exp = solve_exponents_jacobi_signed(&params, state.spec.physical_sign_pair())
            .map_err(|e| CliError::Compute(e.to_string()))?;
        quantization_residual_jacobi(&params, &exp, state.n)
            .map_err(|e| CliError::Compute(e.to_string()))?
            .value
    };
    Ok(value)
}

/// Atomically write `content` at `path` (write to a sibling temp file, then
/// rename over the destination).
fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Outcome summary the binary prints and tests inspect.
#[derive(Debug, Default)]
pub struct RunSummary {
    pub lines: Vec<String>,
    pub artifacts: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

pub fn run(config: &JobConfig, out_dir: &Path, flags: Flags) -> Result<RunSummary, CliError> {
    let mut summary = RunSummary::default();
    match config.command {
        Command::ListPotentials => {
            summary.lines.push(potential_catalog());
            Ok(summary)
        }
        Command::Solve => run_solve(config, out_dir, &mut summary).map(|()| summary),
        Command::Spectrum => run_spectrum(config, out_dir, flags, &mut summary).map(|()| summary),
        Command::Wavefunction => run_wavefunction(config, out_dir, &mut summary).map(|()| summary),
        Command::Verify => run_verify(config, out_dir, flags, &mut summary).map(|()| summary),
    }
}

fn spec_mass(config: &JobConfig) -> (PotentialSpec, f64) {
    (
        config.potential.clone().expect("validated"),
        config.mass.expect("validated"),
    )
}

fn case_label(config: &JobConfig, spec: &PotentialSpec) -> String {
    config
        .label
        .clone()
        .unwrap_or_else(|| spec.label().to_string())
}

fn run_solve(config: &JobConfig, out_dir: &Path, summary: &mut RunSummary) -> Result<(), CliError> {
    let (spec, mass) = spec_mass(config);
    let window = window_of(config, &spec, mass)?;
    let tol = config.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let (n, ell) = (config.n.unwrap(), config.ell.unwrap());
    let outcome = solve_energy_detailed(&spec, mass, n, ell, &window, tol)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    for (lo, hi) in &outcome.excised {
        summary
            .warnings
            .push(format!("excised [{}, {}] from the energy scan", lo, hi));
    }
    let label = case_label(config, &spec);
    let residual = quantization_residual_of(&outcome.state)?;
    let mut csv = String::from("case,n,ell,energy,residual\n");
    let _ = writeln!(
        csv,
        "{},{},{},{},{}",
        label,
        n,
        ell,
        format_f64(outcome.state.energy),
        format_f64(residual)
    );
    let path = out_dir.join("solve.csv");
    write_atomic(&path, &csv)?;
    summary.artifacts.push(path);
    summary.lines.push(format!(
        "{label} n={n} ell={ell}: E = {}",
        format_f64(outcome.state.energy)
    ));
    Ok(())
}

fn run_spectrum(
    config: &JobConfig,
    out_dir: &Path,
    flags: Flags,
    summary: &mut RunSummary,
) -> Result<(), CliError> {
    let (spec, mass) = spec_mass(config);
    let window = window_of(config, &spec, mass)?;
    let tol = config.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let result = eigensolver::spectrum(
        &spec,
        mass,
        config.n_max.unwrap(),
        config.ell_max.unwrap(),
        &window,
        tol,
    );
    let label = case_label(config, &spec);
    let mut csv = String::from("case,n,ell,energy,residual\n");
    for state in &result.states {
        let residual = quantization_residual_of(state)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            label,
            state.n,
            state.ell,
            format_f64(state.energy),
            format_f64(residual)
        );
        summary.lines.push(format!(
            "{label} n={} ell={}: E = {}",
            state.n,
            state.ell,
            format_f64(state.energy)
        ));
    }
    for miss in &result.missing {
        summary.warnings.push(format!(
            "missing state n={} ell={}: {}",
            miss.n, miss.ell, miss.error
        ));
    }
    if flags.strict && !result.missing.is_empty() {
        return Err(CliError::Compute(format!(
            "{} requested states not found (strict mode)",
            result.missing.len()
        )));
    }
    let path = out_dir.join("spectrum.csv");
    write_atomic(&path, &csv)?;
    summary.artifacts.push(path);
    Ok(())
}

fn run_wavefunction(
    config: &JobConfig,
    out_dir: &Path,
    summary: &mut RunSummary,
) -> Result<(), CliError> {
    let (spec, mass) = spec_mass(config);
    if spec.r_space_is_experimental() {
        summary.warnings.push(
            "r-space evaluation for Hulthen q != 1 is experimental (certified in s-space only)"
                .into(),
        );
    }
    let window = window_of(config, &spec, mass)?;
    let tol = config.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let (n, ell) = (config.n.unwrap(), config.ell.unwrap());
    let state = eigensolver::solve_energy(&spec, mass, n, ell, &window, tol)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let grid = match &config.grid {
        Some(g) => {
            let spacing = match g.spacing.as_deref() {
                Some("log") => Spacing::Log,
                _ => Spacing::Uniform,
            };
            RadialGrid::new(g.r_min, g.r_max, g.count, spacing)
                .map_err(|e| CliError::Config(e.to_string()))?
        }
        None => RadialGrid::for_state(&state, 2048).map_err(|e| CliError::Compute(e.to_string()))?,
    };
    let wf = evaluate(&state, &grid).map_err(|e| CliError::Compute(e.to_string()))?;
    let wf = normalize(&wf).map_err(|e| CliError::Compute(e.to_string()))?;
    let mut csv = String::from("r,R\n");
    for (r, v) in wf.r.iter().zip(&wf.values) {
        let _ = writeln!(csv, "{},{}", format_f64(*r), format_f64(*v));
    }
    let path = out_dir.join("wavefunction.csv");
    write_atomic(&path, &csv)?;
    summary.artifacts.push(path);
    summary.lines.push(format!(
        "{} n={n} ell={ell}: E = {}, nodes = {}, norm = {}",
        case_label(config, &spec),
        format_f64(state.energy),
        wf.node_count,
        format_f64(wf.norm)
    ));
    Ok(())
}

#[derive(Debug, serde::Serialize)]
struct VerifyReport {
    label: String,
    mass: f64,
    centrifugal: CentrifugalMode,
    energy_tolerance: f64,
    overlap_min: Option<f64>,
    cases: Vec<ComparisonRecord>,
    notes: Vec<String>,
    all_pass: bool,
}

fn run_verify(
    config: &JobConfig,
    out_dir: &Path,
    flags: Flags,
    summary: &mut RunSummary,
) -> Result<(), CliError> {
    let (spec, mass) = spec_mass(config);
    let window = window_of(config, &spec, mass)?;
    let tol = config.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let oracle_cfg = config.oracle.clone().unwrap_or(OracleConfig {
        tolerance: None,
        energy_tolerance: None,
        overlap_min: None,
        window_radius: None,
        exact_centrifugal: None,
    });
    let shoot_tol = oracle_cfg.tolerance.unwrap_or(1e-13 * mass);
    let energy_tol = oracle_cfg.energy_tolerance.unwrap_or(1e-6 * mass);
    let radius = oracle_cfg.window_radius.unwrap_or(0.02 * mass);
    let centrifugal = if oracle_cfg.exact_centrifugal.unwrap_or(false) {
        CentrifugalMode::Exact
    } else {
        CentrifugalMode::SameAsAlgebraic
    };
    let label = case_label(config, &spec);

    let algebraic = eigensolver::spectrum(
        &spec,
        mass,
        config.n_max.unwrap(),
        config.ell_max.unwrap(),
        &window,
        tol,
    );
    let mut notes: Vec<String> = algebraic
        .missing
        .iter()
        .map(|m| format!("no algebraic state n={} ell={}: {}", m.n, m.ell, m.error))
        .collect();

    let mut cases = Vec::new();
    for state in &algebraic.states {
        let problem = EffectiveProblem::new(spec.clone(), mass, state.ell, centrifugal)
            .map_err(|e| CliError::Compute(e.to_string()))?;
        let sw = clamped_shoot_window(&spec, mass, state.energy, radius, 96);
        match shoot(&problem, state.n, &sw, shoot_tol) {
            Ok(e_num) => {
                let mut record = compare(state, &problem, e_num, energy_tol)
                    .map_err(|e| CliError::Compute(e.to_string()))?;
                record.case = label.clone();
                if let (Some(min), Some(ov)) = (oracle_cfg.overlap_min, record.overlap) {
                    if ov < min {
                        record.pass = false;
                    }
                }
                summary.lines.push(format!(
                    "{} n={} ell={}: alg {} vs oracle {} -> {}",
                    label,
                    state.n,
                    state.ell,
                    format_f64(state.energy),
                    format_f64(e_num),
                    if record.pass { "pass" } else { "FAIL" }
                ));
                cases.push(record);
            }
            Err(err) => {
                notes.push(format!(
                    "oracle found no match for n={} ell={}: {err}",
                    state.n, state.ell
                ));
                summary.lines.push(format!(
                    "{} n={} ell={}: alg {} vs oracle -> FAIL ({err})",
                    label,
                    state.n,
                    state.ell,
                    format_f64(state.energy)
                ));
                cases.push(ComparisonRecord {
                    case: label.clone(),
                    n: state.n,
                    ell: state.ell,
                    e_algebraic: state.energy,
                    e_numeric: f64::NAN,
                    abs_diff: f64::NAN,
                    rel_diff: f64::NAN,
                    overlap: None,
                    tolerance: energy_tol,
                    pass: false,
                });
            }
        }
    }
    let all_pass = cases.iter().all(|c| c.pass) && (!flags.strict || notes.is_empty());
    let report = VerifyReport {
        label: label.clone(),
        mass,
        centrifugal,
        energy_tolerance: energy_tol,
        overlap_min: oracle_cfg.overlap_min,
        cases,
        notes,
        all_pass,
    };
    // serde_json renders non-finite floats as null, which is what the
    // report wants for a failed comparison
    let text =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Compute(e.to_string()))?;
    let path = out_dir.join("verify_report.json");
    write_atomic(&path, &text)?;
    summary.artifacts.push(path);

    if flags.seed_goldens {
        let golden = golden_csv(&report.cases);
        let path = out_dir.join("goldens").join(format!("{label}.csv"));
        write_atomic(&path, &golden)?;
        summary.artifacts.push(path);
    }
    if !report.all_pass {
        return Err(CliError::Verification(format!(
            "{} of {} comparisons failed tolerance",
            report.cases.iter().filter(|c| !c.pass).count(),
            report.cases.len()
        )));
    }
    Ok(())
}

pub fn potential_catalog() -> String {
    let mut out = String::new();
    out.push_str("available potentials (JSON \"potential\" object, by \"type\"):\n\n");
    out.push_str("coulomb          vector V = -z_alpha / r, no scalar part\n");
    out.push_str("                 params: z_alpha\n");
    out.push_str("mie              V = S = v0 [ (a/r)^2 / 2 - a/r ]\n");
    out.push_str("                 params: v0 (depth scale), a (length)\n");
    out.push_str("kratzer_fues     V = S = ve (r - re)^2 / r^2  (threshold shifts to m + 2 ve)\n");
    out.push_str("                 params: ve (energy), re (length)\n");
    out.push_str("non_central      radial part V = S = alpha_c / r with angular separation\n");
    out.push_str("                 constant lambda_sep supplied directly; params: alpha_c, lambda_sep\n");
    out.push_str("hulthen          V = -v0 e^(-delta r)/(1 - q_def e^(-delta r)), scalar S with s0;\n");
    out.push_str("                 params: v0, s0, delta, q_def (nonzero; ell > 0 requires q_def = 1)\n");
    out.push_str("woods_saxon      V = -v0 / (1 + q_def e^((r - r_big)/a)), scalar S with s0;\n");
    out.push_str("                 params: v0, s0, a, r_big, q_def, optional pekeris = [D0, D1, D2]\n");
    out.push_str("poschl_teller    V = S = -v1/cosh^2(alpha_pt r) + v2/sinh^2(alpha_pt r)\n");
    out.push_str("                 params: v1, v2 (v2 >= 0), alpha_pt\n");
    out.push('\n');
    out.push_str(&format!(
        "threads: internal parallelism capped by KGBOUND_THREADS (currently {})\n",
        thread_cap()
    ));
    out
}
