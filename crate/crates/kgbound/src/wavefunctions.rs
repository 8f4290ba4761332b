//! Radial wavefunction assembly, normalization, node counting, and the
//! ODE-residual certificate.
//!
//! A bound state's radial function is assembled from its factorized form:
//! on the Jacobi branch
//!
//! ```text
//! psi(s) = |1 + c3 s|^(-p) s^q P_n^(alpha,beta)(1 + 2 c3 s)
//! ```
//!
//! and on the Laguerre branch
//!
//! ```text
//! psi(s) = exp(-p s) s^q L_n^k(z_scale s)
//! ```
//!
//! with R(r) = psi(s(r)) / r whenever the mapped unknown was u = r R. The
//! absolute value in the Jacobi prefactor fixes a real single-signed
//! convention on domains where 1 + c3 s < 0 (the transform images never
//! cross the singular point, and the two conventions differ by a constant
//! factor, which normalization absorbs).
//!
//! `ode_residual` substitutes the assembled function back into the
//! normal-form ODE with five-point finite differences on a uniform s-grid.
//! It vanishes (to truncation error) exactly when the quantization condition
//! holds, which certifies the whole potential -> parameters -> exponents
//! chain without reference to any displayed spectrum formula.

use thiserror::Error;

use crate::eigensolver::BoundState;
use crate::normal_form::ExponentSolution;
use crate::potentials::map_potential;
use crate::special::{jacobi_p, laguerre_l, SpecialError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Log,
}

/// Sampled r-axis. `count >= 128` and 0 < r_min < r_max are enforced at
/// construction; `for_state` additionally extends r_max until the sampled
/// envelope has decayed to 1e-10 of its peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Error, PartialEq)]
pub enum WavefunctionError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("r = {r} maps to s = {s}, outside the transform domain")]
    TransformDomainViolation { r: f64, s: f64 },
    #[error("wavefunction tail has not decayed at r_max (|R r| ratio {ratio})")]
    NonDecayingTail { ratio: f64 },
    #[error("assembled wavefunction is not finite at r = {r}")]
    NonFiniteValue { r: f64 },
    #[error("wavefunction has zero norm on this grid")]
    ZeroNorm,
    #[error(transparent)]
    Special(#[from] SpecialError),
}

impl RadialGrid {
    pub fn new(
        r_min: f64,
        r_max: f64,
        count: usize,
        spacing: Spacing,
    ) -> Result<Self, WavefunctionError> {
        if !(r_min.is_finite() && r_max.is_finite() && 0.0 < r_min && r_min < r_max) {
            return Err(WavefunctionError::InvalidGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if count < 128 {
            return Err(WavefunctionError::InvalidGrid(format!(
                "count = {count} < 128"
            )));
        }
        Ok(RadialGrid {
            r_min,
            r_max,
            count,
            spacing,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let mut pts = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Uniform => {
                let h = (self.r_max - self.r_min) / (n - 1) as f64;
                for i in 0..n {
                    pts.push(self.r_min + h * i as f64);
                }
            }
            Spacing::Log => {
                let l0 = self.r_min.ln();
                let h = (self.r_max.ln() - l0) / (n - 1) as f64;
                for i in 0..n {
                    pts.push((l0 + h * i as f64).exp());
                }
            }
        }
        pts
    }

    /// Grid sized for a particular state: starts from the potential's
    /// characteristic length and grows r_max geometrically until
    /// |R(r_max) r_max| <= 1e-10 of the sampled peak.
    pub fn for_state(state: &BoundState, count: usize) -> Result<Self, WavefunctionError> {
        let r_char = state.spec.characteristic_length(state.mass);
        let r_min = 1e-4 * r_char;
        let mut r_max = 8.0 * r_char;
        for _ in 0..80 {
            let grid = RadialGrid::new(r_min, r_max, 512.min(count).max(128), Spacing::Uniform)?;
            let mut peak: f64 = 0.0;
            let mut tail = 0.0;
            let mut all_finite = true;
            for r in grid.points() {
                let v = match evaluate_r(state, r) {
                    Ok(v) => v,
                    Err(_) => {
                        all_finite = false;
                        break;
                    }
                };
                let env = (v * r).abs();
                peak = peak.max(env);
                tail = env;
            }
            if all_finite && peak > 0.0 && tail <= 1e-10 * peak {
                return RadialGrid::new(r_min, r_max, count, Spacing::Uniform);
            }
            r_max *= 1.6;
        }
        Err(WavefunctionError::NonDecayingTail { ratio: f64::NAN })
    }
}

/// R(r) samples on a grid with node count and the accumulated normalization
/// constant.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavefunction {
    pub grid: RadialGrid,
    pub r: Vec<f64>,
    pub values: Vec<f64>,
    pub node_count: usize,
    pub norm: f64,
}

/// The factorized psi written in the s variable.
pub fn evaluate_s(state: &BoundState, s: f64) -> Result<f64, WavefunctionError> {
    match state.exponents {
        ExponentSolution::Jacobi { q, p, alpha, beta } => {
            let c3 = mapped_c3(state);
            let base = (1.0 + c3 * s).abs();
            let poly = jacobi_p(state.n, alpha, beta, 1.0 + 2.0 * c3 * s)?;
            Ok(base.powf(-p) * s.powf(q) * poly)
        }
        ExponentSolution::Laguerre { q, p, k, z_scale } => {
            let poly = laguerre_l(state.n, k, z_scale * s)?;
            Ok((-p * s).exp() * s.powf(q) * poly)
        }
    }
}

fn mapped_c3(state: &BoundState) -> f64 {
    match state.exponents {
        ExponentSolution::Jacobi { .. } => -1.0, // every Jacobi-branch case here has c3 = -1
        ExponentSolution::Laguerre { .. } => 0.0,
    }
}

/// R at a single radius.
pub fn evaluate_r(state: &BoundState, r: f64) -> Result<f64, WavefunctionError> {
    let s = state.transform.s_of_r(r);
    if !state.transform.contains(s) {
        // far enough out, the transform saturates in floating point at its
        // r -> infinity endpoint (e.g. 1 - e^(-dr) rounds to 1); the radial
        // function there is an underflowed tail, not a domain error
        if s == state.transform.s_domain.1 {
            return Ok(0.0);
        }
        return Err(WavefunctionError::TransformDomainViolation { r, s });
    }
    let psi = evaluate_s(state, s)?;
    let v = if state.transform.uses_u_substitution {
        psi / r
    } else {
        psi
    };
    if !v.is_finite() {
        return Err(WavefunctionError::NonFiniteValue { r });
    }
    Ok(v * state.norm_constant)
}

/// Sample R on the grid (unnormalized: norm = 1 unless the state already
/// carries a normalization constant).
pub fn evaluate(state: &BoundState, grid: &RadialGrid) -> Result<SampledWavefunction, WavefunctionError> {
    let r: Vec<f64> = grid.points();
    let mut values = Vec::with_capacity(r.len());
    for &ri in &r {
        values.push(evaluate_r(state, ri)?);
    }
    let node_count = count_nodes(&values);
    Ok(SampledWavefunction {
        grid: *grid,
        r,
        values,
        node_count,
        norm: state.norm_constant,
    })
}

/// Strict sign changes with a dead band of 1e-12 * max|R| to ignore
/// round-off zeros.
pub fn count_nodes(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return 0;
    }
    let band = 1e-12 * peak;
    let mut nodes = 0;
    let mut last_sign = 0i8;
    for &v in values {
        if v.abs() <= band {
            continue;
        }
        let sign = if v > 0.0 { 1 } else { -1 };
        if last_sign != 0 && sign != last_sign {
            nodes += 1;
        }
        last_sign = sign;
    }
    nodes
}

/// Composite Simpson integral of samples on a uniform grid (3/8 rule closes
/// an even panel count).
pub fn simpson_uniform(h: f64, f: &[f64]) -> f64 {
    let n = f.len();
    assert!(n >= 4, "need at least 4 samples");
    let panels = n - 1;
    let (simpson_end, mut total) = if panels.is_multiple_of(2) {
        (n - 1, 0.0)
    } else {
        // close the last three panels with the 3/8 rule
        let k = n - 4;
        let tail = 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
        (k, tail)
    };
    if simpson_end >= 2 {
        let mut acc = f[0] + f[simpson_end];
        let mut i = 1;
        while i < simpson_end {
            acc += 4.0 * f[i];
            i += 2;
        }
        i = 2;
        while i < simpson_end {
            acc += 2.0 * f[i];
            i += 2;
        }
        total += acc * h / 3.0;
    }
    total
}

/// Normalize to `int |R|^2 r^2 dr = 1` by composite Simpson quadrature on
/// the grid. The tail must have decayed (|R r| at r_max below 1e-5 of the
/// peak) or the quadrature would silently truncate a fat tail.
pub fn normalize(wf: &SampledWavefunction) -> Result<SampledWavefunction, WavefunctionError> {
    let peak = wf
        .r
        .iter()
        .zip(&wf.values)
        .fold(0.0_f64, |m, (r, v)| m.max((v * r).abs()));
    if peak == 0.0 {
        return Err(WavefunctionError::ZeroNorm);
    }
    let tail = (wf.values[wf.values.len() - 1] * wf.r[wf.r.len() - 1]).abs();
    let ratio = tail / peak;
    if ratio > 1e-5 {
        return Err(WavefunctionError::NonDecayingTail { ratio });
    }
    let integrand: Vec<f64> = wf
        .r
        .iter()
        .zip(&wf.values)
        .map(|(r, v)| v * v * r * r)
        .collect();
    let h = match wf.grid.spacing {
        Spacing::Uniform => (wf.grid.r_max - wf.grid.r_min) / (wf.r.len() - 1) as f64,
        Spacing::Log => {
            // integrate in t = ln r with Jacobian r
            let integrand_log: Vec<f64> = integrand
                .iter()
                .zip(&wf.r)
                .map(|(f, r)| f * r)
                .collect();
            let ht = (wf.grid.r_max.ln() - wf.grid.r_min.ln()) / (wf.r.len() - 1) as f64;
            let integral = simpson_uniform(ht, &integrand_log);
            return scaled(wf, integral);
        }
    };
    let integral = simpson_uniform(h, &integrand);
    scaled(wf, integral)
}

fn scaled(wf: &SampledWavefunction, integral: f64) -> Result<SampledWavefunction, WavefunctionError> {
    if !(integral.is_finite() && integral > 0.0) {
        return Err(WavefunctionError::ZeroNorm);
    }
    let factor = 1.0 / integral.sqrt();
    let mut out = wf.clone();
    for v in &mut out.values {
        *v *= factor;
    }
    out.norm = wf.norm * factor;
    Ok(out)
}

/// Maximum relative residual of the normal-form ODE over interior points of
/// a uniform s-grid spanning the central part of the state's s-image of the
/// radial grid, with five-point finite differences for psi' and psi''.
///
/// At the quantized energy the assembled psi satisfies the equation to
/// truncation error; detuning E re-derives parameters and exponents whose
/// psi no longer solves it, and the residual grows in proportion to the
/// quantization defect.
pub fn ode_residual(state: &BoundState, grid: &RadialGrid) -> Result<f64, WavefunctionError> {
    let (params, transform) = map_potential(&state.spec, state.mass, state.energy, state.ell)
        .map_err(|e| WavefunctionError::InvalidGrid(e.to_string()))?;
    // Anchor the evaluation window at the peak of |u| = |psi (r)^k| in
    // s-space, keeping a proportional margin from the equation's singular
    // endpoints. A fraction of the solution's support is enough: a
    // quantization defect shows up everywhere in s, while finite-difference
    // conditioning degrades rapidly against the singular points.
    let mut s_peak = f64::NAN;
    let mut best = -1.0;
    for r in grid.points() {
        let s = transform.s_of_r(r);
        if !transform.contains(s) {
            continue;
        }
        let u = evaluate_s(state, s)?.abs()
            * if transform.uses_u_substitution {
                1.0
            } else {
                r
            };
        if u.is_finite() && u > best {
            best = u;
            s_peak = s;
        }
    }
    if !s_peak.is_finite() {
        return Err(WavefunctionError::InvalidGrid(
            "no interior s sample for the residual check".into(),
        ));
    }
    let (d0, d1) = transform.s_domain;
    let (edge_lo, edge_hi) = if d0 <= d1 { (d0, d1) } else { (d1, d0) };
    let s_lo = edge_lo + 0.15 * (s_peak - edge_lo);
    let s_hi = if edge_hi.is_finite() {
        edge_hi - 0.15 * (edge_hi - s_peak)
    } else {
        s_peak + 8.0 * (s_peak - s_lo)
    };
    let count = grid.count.max(512);
    let h = (s_hi - s_lo) / (count - 1) as f64;
    if !(h.is_finite() && h > 0.0) {
        return Err(WavefunctionError::InvalidGrid(
            "degenerate s-window for the residual check".into(),
        ));
    }
    let psi: Vec<f64> = (0..count)
        .map(|i| evaluate_s(state, s_lo + h * i as f64))
        .collect::<Result<_, _>>()?;

    let mut worst = 0.0_f64;
    for i in 2..count - 2 {
        let s = s_lo + h * i as f64;
        let d1 = (psi[i - 2] - 8.0 * psi[i - 1] + 8.0 * psi[i + 1] - psi[i + 2]) / (12.0 * h);
        let d2 = (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1]
            - psi[i + 2])
            / (12.0 * h * h);
        let gse = 1.0 + params.c3 * s;
        let coeff1 = (params.c1 + params.c2 * s) / (s * gse);
        let coeff0 = (-params.lambda1 * s * s + params.lambda2 * s - params.lambda3)
            / (s * s * gse * gse);
        let lhs = d2 + coeff1 * d1 + coeff0 * psi[i];
        let scale = d2.abs() + (coeff1 * d1).abs() + (coeff0 * psi[i]).abs();
        if scale > 1e-280 {
            worst = worst.max(lhs.abs() / scale);
        }
    }
    Ok(worst)
}
