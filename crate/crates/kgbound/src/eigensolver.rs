//! Bound-state energy search.
//!
//! The quantization residual of a mapped potential is a transcendental
//! function of the trial energy E, with square-root branch points where an
//! exponent discriminant changes sign. The solver therefore never uses
//! derivatives: it scans the window on a uniform grid, excises sub-intervals
//! where the mapping leaves the real domain, brackets sign changes, and
//! bisects each bracket down to tolerance. Coulomb additionally has the
//! closed-form spectrum, kept as an independent cross-check of the rooted
//! condition.

use std::sync::mpsc;

use thiserror::Error;

use crate::normal_form::{
    quantization_residual_jacobi, quantization_residual_laguerre, quantization_x_roots,
    solve_exponents_jacobi_signed, solve_exponents_laguerre, ExponentSolution, FrameworkError,
};
use crate::potentials::{map_potential, PotentialError, PotentialSpec, RootFamily, VariableTransform};

/// Which of the two spectral families a search should prefer when a window
/// contains one root of each for the same polynomial degree (the scalar
/// coupling binds particles and antiparticles alike).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateSign {
    #[default]
    Particle,
    Antiparticle,
}

/// Energy search window. The standard bound-state window is (-m, m); the
/// Kratzer-Fues potential keeps a constant tail that shifts its upper
/// threshold to m + 2 Ve, which `default_window` accounts for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWindow {
    pub lo: f64,
    pub hi: f64,
    pub sign: StateSign,
    pub scan_points: usize,
}

pub const DEFAULT_SCAN_POINTS: usize = 2048;
/// Default bisection tolerance, as a fraction of the mass.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

impl EnergyWindow {
    /// The standard |E| < m window.
    pub fn standard(mass: f64) -> Self {
        EnergyWindow {
            lo: -mass,
            hi: mass,
            sign: StateSign::Particle,
            scan_points: DEFAULT_SCAN_POINTS,
        }
    }

    pub fn new(lo: f64, hi: f64, sign: StateSign, scan_points: usize) -> Result<Self, SolveError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(SolveError::InvalidWindow {
                message: format!("window [{lo}, {hi}] is not a finite ordered interval"),
            });
        }
        if scan_points < 64 {
            return Err(SolveError::InvalidWindow {
                message: format!("scan_points = {scan_points} < 64"),
            });
        }
        Ok(EnergyWindow {
            lo,
            hi,
            sign,
            scan_points,
        })
    }

    /// The search window appropriate to a potential's continuum thresholds.
    pub fn default_for(spec: &PotentialSpec, mass: f64) -> Self {
        let mut w = EnergyWindow::standard(mass);
        if let PotentialSpec::KratzerFues { ve, .. } = spec {
            // the tail value Ve shifts both thresholds of (E-V)^2 = (m+S)^2
            if *ve > 0.0 {
                w.hi = mass + 2.0 * ve;
            } else {
                w.lo = -mass + 2.0 * ve;
            }
        }
        w
    }
}

/// A verified bound state: quantum numbers, energy, and everything needed to
/// evaluate its radial wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub n: u32,
    pub ell: u32,
    pub energy: f64,
    pub mass: f64,
    pub spec: PotentialSpec,
    pub exponents: ExponentSolution,
    pub transform: VariableTransform,
    /// Multiplicative normalization constant; 1 until `wavefunctions::normalize`.
    pub norm_constant: f64,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolveError {
    #[error("no sign change of the quantization residual for n = {n}, ell = {ell} at scan resolution")]
    NoRootInWindow { n: u32, ell: u32 },
    #[error("exponent preconditions failed inside the bracket [{lo}, {hi}]")]
    DiscriminantLostMidBracket { lo: f64, hi: f64 },
    #[error("supercritical coupling: (ell + 1/2)^2 <= (z_alpha)^2 for ell = {ell}, z_alpha = {z_alpha}")]
    SupercriticalCoupling { z_alpha: f64, ell: u32 },
    #[error("invalid window: {message}")]
    InvalidWindow { message: String },
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// Closed-form Coulomb levels
/// E = m [ 1 + (Za)^2 / (n + 1/2 + sqrt((l + 1/2)^2 - (Za)^2))^2 ]^(-1/2),
/// positive branch.
pub fn coulomb_energy(z_alpha: f64, mass: f64, n: u32, ell: u32) -> Result<f64, SolveError> {
    let lph = f64::from(ell) + 0.5;
    let disc = lph * lph - z_alpha * z_alpha;
    if disc < 0.0 {
        return Err(SolveError::SupercriticalCoupling { z_alpha, ell });
    }
    let big_n = f64::from(n) + 0.5 + disc.sqrt();
    let ratio = z_alpha / big_n;
    Ok(mass / (1.0 + ratio * ratio).sqrt())
}

/// Quantization residual at a trial energy, with the potential's physical
/// exponent branch. `Ok(None)` marks energies where the mapping leaves the
/// real domain (excised from scans).
fn residual_at(
    spec: &PotentialSpec,
    mass: f64,
    e: f64,
    n: u32,
    ell: u32,
) -> Result<Option<f64>, SolveError> {
    let (params, _) = map_potential(spec, mass, e, ell)?;
    if params.c3 == 0.0 {
        match solve_exponents_laguerre(&params) {
            Ok(exp) => Ok(Some(
                quantization_residual_laguerre(&params, &exp, n)?.value,
            )),
            Err(
                FrameworkError::NegativeDiscriminant { .. } | FrameworkError::NonpositiveScale { .. },
            ) => Ok(None),
            Err(e) => Err(e.into()),
        }
    } else {
        match solve_exponents_jacobi_signed(&params, spec.physical_sign_pair()) {
            Ok(exp) => Ok(Some(quantization_residual_jacobi(&params, &exp, n)?.value)),
            Err(FrameworkError::NegativeDiscriminant { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

/// Build the state record at a given energy without any quantization check
/// (used by tests and by residual studies at deliberately detuned energies).
pub fn assemble_state(
    spec: &PotentialSpec,
    mass: f64,
    e: f64,
    n: u32,
    ell: u32,
) -> Result<BoundState, SolveError> {
    let (params, transform) = map_potential(spec, mass, e, ell)?;
    let exponents = if params.c3 == 0.0 {
        solve_exponents_laguerre(&params)?
    } else {
        solve_exponents_jacobi_signed(&params, spec.physical_sign_pair())?
    };
    Ok(BoundState {
        n,
        ell,
        energy: e,
        mass,
        spec: spec.clone(),
        exponents,
        transform,
        norm_constant: 1.0,
    })
}

/// Root solve outcome with scan diagnostics.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub state: BoundState,
    /// Final bisection bracket.
    pub bracket: (f64, f64),
    /// Sub-intervals of the window excised because an exponent discriminant
    /// went negative there.
    pub excised: Vec<(f64, f64)>,
}

/// Find the bound-state energy with polynomial degree `n` at angular
/// momentum `ell`, by uniform scan plus bisection of the quantization
/// residual. Roots are validated against the physical root family of the
/// quantization quadratic; when several candidates survive, `window.sign`
/// picks the particle-like (largest E) or antiparticle-like (smallest E)
/// one.
pub fn solve_energy_detailed(
    spec: &PotentialSpec,
    mass: f64,
    n: u32,
    ell: u32,
    window: &EnergyWindow,
    tol: f64,
) -> Result<SolveOutcome, SolveError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SolveError::InvalidWindow {
            message: format!("tolerance {tol} must be positive"),
        });
    }
    if window.scan_points < 64 || window.lo >= window.hi {
        return Err(SolveError::InvalidWindow {
            message: "window must satisfy lo < hi with scan_points >= 64".into(),
        });
    }
    let pts = window.scan_points;
    let step = (window.hi - window.lo) / pts as f64;
    let mut values: Vec<Option<f64>> = Vec::with_capacity(pts + 1);
    for i in 0..=pts {
        let e = window.lo + step * i as f64;
        values.push(residual_at(spec, mass, e, n, ell)?);
    }

    let mut excised: Vec<(f64, f64)> = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, value) in values.iter().enumerate() {
        match (value.is_none(), run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                excised.push((window.lo + step * s as f64, window.lo + step * i as f64));
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = run_start {
        excised.push((window.lo + step * s as f64, window.hi));
    }

    // Maximal runs of valid scan points. Each run is extended toward any
    // adjacent invalid cell by bisecting the validity boundary, so that
    // roots hiding between the last valid scan point and a domain edge
    // (e.g. the z_scale -> 0 degeneracy at E = m) still get bracketed.
    let mut samples: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut i = 0;
    while i <= pts {
        if values[i].is_none() {
            i += 1;
            continue;
        }
        let start = i;
        while i < pts && values[i + 1].is_some() {
            i += 1;
        }
        let end = i;
        let mut run: Vec<(f64, f64)> = Vec::with_capacity(end - start + 3);
        let e_of = |j: usize| window.lo + step * j as f64;
        if start > 0 {
            if let Some(pt) =
                refine_validity_edge(spec, mass, n, ell, e_of(start), e_of(start - 1))?
            {
                run.push(pt);
            }
        }
        for (j, value) in values.iter().enumerate().take(end + 1).skip(start) {
            run.push((e_of(j), value.expect("valid in run")));
        }
        if end < pts {
            if let Some(pt) = refine_validity_edge(spec, mass, n, ell, e_of(end), e_of(end + 1))?
            {
                run.push(pt);
            }
        }
        samples.push(run);
        i += 1;
    }

    let mut brackets: Vec<(f64, f64)> = Vec::new();
    for run in &samples {
        for w in run.windows(2) {
            let (ea, fa) = w[0];
            let (eb, fb) = w[1];
            if fa == 0.0 || fa * fb < 0.0 {
                brackets.push((ea, eb));
            }
        }
        if let Some(&(e_last, f_last)) = run.last() {
            if f_last == 0.0 && run.len() >= 2 {
                brackets.push((run[run.len() - 2].0, e_last));
            }
        }
    }
    if let StateSign::Particle = window.sign {
        brackets.reverse(); // largest-E candidates first
    }

    let target_width = tol * mass;
    let mut mid_bracket_failure: Option<SolveError> = None;
    for (mut lo, mut hi) in brackets {
        let mut flo = match residual_at(spec, mass, lo, n, ell)? {
            Some(v) => v,
            None => continue,
        };
        let mut ok = true;
        for _ in 0..200 {
            if hi - lo <= target_width {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match residual_at(spec, mass, mid, n, ell)? {
                Some(fm) => {
                    if flo == 0.0 || flo * fm <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                None => {
                    mid_bracket_failure =
                        Some(SolveError::DiscriminantLostMidBracket { lo, hi });
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let e_root = 0.5 * (lo + hi);
        if !root_on_physical_family(spec, mass, e_root, n, ell)? {
            continue;
        }
        let state = assemble_state(spec, mass, e_root, n, ell)?;
        return Ok(SolveOutcome {
            state,
            bracket: (lo, hi),
            excised,
        });
    }

    Err(mid_bracket_failure.unwrap_or(SolveError::NoRootInWindow { n, ell }))
}

/// Walk from a valid energy toward an invalid one, bisecting the validity
/// boundary, and return the residual at the innermost valid point found.
fn refine_validity_edge(
    spec: &PotentialSpec,
    mass: f64,
    n: u32,
    ell: u32,
    valid: f64,
    invalid: f64,
) -> Result<Option<(f64, f64)>, SolveError> {
    let mut good = valid;
    let mut bad = invalid;
    let mut best: Option<(f64, f64)> = None;
    for _ in 0..60 {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        match residual_at(spec, mass, mid, n, ell)? {
            Some(v) => {
                good = mid;
                best = Some((mid, v));
            }
            None => bad = mid,
        }
    }
    Ok(best)
}

/// A Jacobi-branch quantization residual vanishes on either root of its
/// n-independent quadratic; only one of them corresponds to the boundary
/// behavior the potential's exponent branch encodes. Reject roots on the
/// wrong family.
fn root_on_physical_family(
    spec: &PotentialSpec,
    mass: f64,
    e: f64,
    n: u32,
    ell: u32,
) -> Result<bool, SolveError> {
    let Some(family) = spec.root_family() else {
        return Ok(true);
    };
    let (params, _) = map_potential(spec, mass, e, ell)?;
    let exp = solve_exponents_jacobi_signed(&params, spec.physical_sign_pair())?;
    let Some((lower, upper)) = quantization_x_roots(&params) else {
        return Ok(false);
    };
    let x = exp.q() - exp.p() + f64::from(n);
    let target = match family {
        RootFamily::Lower => lower,
        RootFamily::Upper => upper,
    };
    Ok((x - target).abs() <= 1e-6 * (1.0 + target.abs()))
}

pub fn solve_energy(
    spec: &PotentialSpec,
    mass: f64,
    n: u32,
    ell: u32,
    window: &EnergyWindow,
    tol: f64,
) -> Result<BoundState, SolveError> {
    solve_energy_detailed(spec, mass, n, ell, window, tol).map(|o| o.state)
}

#[derive(Debug, Clone)]
pub struct SpectrumEntryError {
    pub n: u32,
    pub ell: u32,
    pub error: SolveError,
}

/// Batch result: found states in (ell, n) order, plus every requested
/// combination that produced no state and why.
#[derive(Debug, Clone, Default)]
pub struct Spectrum {
    pub states: Vec<BoundState>,
    pub missing: Vec<SpectrumEntryError>,
}

/// Thread cap for spectrum evaluation: the KGBOUND_THREADS environment
/// variable when parseable, otherwise the machine parallelism.
pub fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("KGBOUND_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Solve every (n <= n_max, ell <= ell_max) combination. Entries are
/// independent and evaluated concurrently; results are merged in (ell, n)
/// order regardless of completion order.
pub fn spectrum(
    spec: &PotentialSpec,
    mass: f64,
    n_max: u32,
    ell_max: u32,
    window: &EnergyWindow,
    tol: f64,
) -> Spectrum {
    let entries: Vec<(u32, u32)> = (0..=ell_max)
        .flat_map(|ell| (0..=n_max).map(move |n| (ell, n)))
        .collect();
    let workers = thread_cap().min(entries.len()).max(1);

    let mut results: Vec<Option<Result<BoundState, SolveError>>> = std::iter::repeat_with(|| None).take(entries.len()).collect();
    if workers <= 1 {
        for (idx, (ell, n)) in entries.iter().enumerate() {
            results[idx] = Some(solve_energy(spec, mass, *n, *ell, window, tol));
        }
    } else {
        let (tx, rx) = mpsc::channel();
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                let entries = &entries;
                scope.spawn(move || loop {
                    let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if idx >= entries.len() {
                        break;
                    }
                    let (ell, n) = entries[idx];
                    let r = solve_energy(spec, mass, n, ell, window, tol);
                    if tx.send((idx, r)).is_err() {
                        break;
                    }
                });
            }
            drop(tx);
            for (idx, r) in rx {
                results[idx] = Some(r);
            }
        });
    }

    let mut out = Spectrum::default();
    for (idx, (ell, n)) in entries.iter().enumerate() {
        match results[idx].take().expect("every entry evaluated") {
            Ok(state) => out.states.push(state),
            Err(error) => out.missing.push(SpectrumEntryError {
                n: *n,
                ell: *ell,
                error,
            }),
        }
    }
    out
}
