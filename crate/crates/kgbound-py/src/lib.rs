//! Python bindings for the kgbound solver.
//!
//! Exposes the potential catalog, the algebraic eigensolver, radial
//! wavefunction sampling, and the shooting-method verifier. Build as a
//! cdylib and import as `kgbound_py` (see python/smoke_test.py for a
//! loader that works straight out of a cargo build).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kgbound::eigensolver::{self, EnergyWindow, StateSign};
use kgbound::oracle::{self, CentrifugalMode, EffectiveProblem, ShootWindow};
use kgbound::potentials::PotentialSpec;
use kgbound::special;
use kgbound::wavefunctions::{self, RadialGrid, Spacing};

/// One of the supported potential shapes.
#[pyclass(name = "Potential", module = "kgbound_py", from_py_object)]
#[derive(Clone)]
struct Potential {
    spec: PotentialSpec,
}

#[pymethods]
impl Potential {
    #[staticmethod]
    fn coulomb(z_alpha: f64) -> PyResult<Self> {
        Self::wrap(PotentialSpec::Coulomb { z_alpha })
    }

    #[staticmethod]
    fn mie(v0: f64, a: f64) -> PyResult<Self> {
        Self::wrap(PotentialSpec::Mie { v0, a })
    }

    #[staticmethod]
    fn kratzer_fues(ve: f64, re: f64) -> PyResult<Self> {
        Self::wrap(PotentialSpec::KratzerFues { ve, re })
    }

    #[staticmethod]
    fn non_central(alpha_c: f64, lambda_sep: f64) -> PyResult<Self> {
        Self::wrap(PotentialSpec::NonCentralRadial {
            alpha_c,
            lambda_sep,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (v0, s0, delta, q_def = 1.0))]
    fn hulthen(v0: f64, s0: f64, delta: f64, q_def: f64) -> PyResult<Self> {
        Self::wrap(PotentialSpec::Hulthen {
            v0,
            s0,
            delta,
            q_def,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (v0, s0, a, r_big, q_def = 1.0, pekeris = None))]
    fn woods_saxon(
        v0: f64,
        s0: f64,
        a: f64,
        r_big: f64,
        q_def: f64,
        pekeris: Option<[f64; 3]>,
    ) -> PyResult<Self> {
        Self::wrap(PotentialSpec::WoodsSaxon {
            v0,
            s0,
            a,
            r_big,
            q_def,
            pekeris,
        })
    }

    #[staticmethod]
    fn poschl_teller(v1: f64, v2: f64, alpha_pt: f64) -> PyResult<Self> {
        Self::wrap(PotentialSpec::PoschlTeller { v1, v2, alpha_pt })
    }

    fn label(&self) -> String {
        self.spec.label().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Potential({:?})", self.spec)
    }
}

impl Potential {
    fn wrap(spec: PotentialSpec) -> PyResult<Self> {
        spec.validate()
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Potential { spec })
    }
}

/// A solved bound state.
#[pyclass(name = "BoundState", module = "kgbound_py", skip_from_py_object)]
#[derive(Clone)]
struct PyBoundState {
    inner: eigensolver::BoundState,
}

#[pymethods]
impl PyBoundState {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn ell(&self) -> u32 {
        self.inner.ell
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass
    }

    #[getter]
    fn branch(&self) -> &'static str {
        match self.inner.exponents {
            kgbound::ExponentSolution::Jacobi { .. } => "jacobi",
            kgbound::ExponentSolution::Laguerre { .. } => "laguerre",
        }
    }

    /// Sample the radial wavefunction R(r) at the given radii
    /// (normalized so that the integral of |R|^2 r^2 dr over an
    /// automatically sized grid is one).
    fn wavefunction(&self, radii: Vec<f64>) -> PyResult<Vec<f64>> {
        let grid = RadialGrid::for_state(&self.inner, 4096)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let wf = wavefunctions::evaluate(&self.inner, &grid)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let wf = wavefunctions::normalize(&wf)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let mut normalized = self.inner.clone();
        normalized.norm_constant = wf.norm;
        radii
            .iter()
            .map(|&r| {
                wavefunctions::evaluate_r(&normalized, r)
                    .map_err(|e| PyRuntimeError::new_err(e.to_string()))
            })
            .collect()
    }

    /// Node count on an automatically sized grid.
    fn node_count(&self) -> PyResult<usize> {
        let grid = RadialGrid::for_state(&self.inner, 4096)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let wf = wavefunctions::evaluate(&self.inner, &grid)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(wf.node_count)
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundState(n={}, ell={}, energy={:.12})",
            self.inner.n, self.inner.ell, self.inner.energy
        )
    }
}

fn window_from(
    spec: &PotentialSpec,
    mass: f64,
    window: Option<(f64, f64)>,
) -> PyResult<EnergyWindow> {
    match window {
        None => Ok(EnergyWindow::default_for(spec, mass)),
        Some((lo, hi)) => EnergyWindow::new(lo, hi, StateSign::Particle, 2048)
            .map_err(|e| PyValueError::new_err(e.to_string())),
    }
}

/// Closed-form Coulomb level E(n, l) for coupling z_alpha (positive branch).
#[pyfunction]
fn coulomb_energy(z_alpha: f64, mass: f64, n: u32, ell: u32) -> PyResult<f64> {
    eigensolver::coulomb_energy(z_alpha, mass, n, ell)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Root-find the bound state (n, ell) of a potential.
#[pyfunction]
#[pyo3(signature = (potential, mass, n, ell, window = None, tol = 1e-12))]
fn solve_energy(
    potential: &Potential,
    mass: f64,
    n: u32,
    ell: u32,
    window: Option<(f64, f64)>,
    tol: f64,
) -> PyResult<PyBoundState> {
    let w = window_from(&potential.spec, mass, window)?;
    eigensolver::solve_energy(&potential.spec, mass, n, ell, &w, tol)
        .map(|inner| PyBoundState { inner })
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// All bound states with n <= n_max, ell <= ell_max. Returns
/// (states, missing) where missing is a list of (n, ell, reason).
#[pyfunction]
#[allow(clippy::type_complexity)]
#[pyo3(signature = (potential, mass, n_max, ell_max, window = None, tol = 1e-12))]
fn spectrum(
    potential: &Potential,
    mass: f64,
    n_max: u32,
    ell_max: u32,
    window: Option<(f64, f64)>,
    tol: f64,
) -> PyResult<(Vec<PyBoundState>, Vec<(u32, u32, String)>)> {
    let w = window_from(&potential.spec, mass, window)?;
    let result = eigensolver::spectrum(&potential.spec, mass, n_max, ell_max, &w, tol);
    Ok((
        result
            .states
            .into_iter()
            .map(|inner| PyBoundState { inner })
            .collect(),
        result
            .missing
            .into_iter()
            .map(|m| (m.n, m.ell, m.error.to_string()))
            .collect(),
    ))
}

/// Verify one algebraic level against the shooting oracle. Returns a dict
/// with both energies, their difference, and the wavefunction overlap.
#[pyfunction]
#[pyo3(signature = (potential, mass, n, ell, exact_centrifugal = false, window_radius = 0.02))]
fn verify_state<'py>(
    py: Python<'py>,
    potential: &Potential,
    mass: f64,
    n: u32,
    ell: u32,
    exact_centrifugal: bool,
    window_radius: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let w = EnergyWindow::default_for(&potential.spec, mass);
    let state = eigensolver::solve_energy(&potential.spec, mass, n, ell, &w, 1e-13)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let mode = if exact_centrifugal {
        CentrifugalMode::Exact
    } else {
        CentrifugalMode::SameAsAlgebraic
    };
    let problem = EffectiveProblem::new(potential.spec.clone(), mass, ell, mode)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let sw = ShootWindow {
        lo: state.energy - window_radius,
        hi: state.energy + window_radius,
        scan_points: 96,
    };
    let e_num = oracle::shoot(&problem, n, &sw, 1e-13 * mass)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let record = oracle::compare(&state, &problem, e_num, 1e-6 * mass)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item("e_algebraic", record.e_algebraic)?;
    out.set_item("e_numeric", record.e_numeric)?;
    out.set_item("abs_diff", record.abs_diff)?;
    out.set_item("overlap", record.overlap)?;
    out.set_item("pass", record.pass)?;
    Ok(out)
}

/// Jacobi polynomial P_n^(alpha,beta)(z).
#[pyfunction]
fn jacobi_p(n: u32, alpha: f64, beta: f64, z: f64) -> PyResult<f64> {
    special::jacobi_p(n, alpha, beta, z).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Associated Laguerre polynomial L_n^k(z).
#[pyfunction]
fn laguerre_l(n: u32, k: f64, z: f64) -> PyResult<f64> {
    special::laguerre_l(n, k, z).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Natural log of the gamma function (x > 0).
#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    special::log_gamma(x).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Sample a normalized radial wavefunction on a uniform grid; returns
/// (r, R) lists.
#[pyfunction]
#[pyo3(signature = (potential, mass, n, ell, r_min, r_max, count = 1024))]
#[allow(clippy::too_many_arguments)]
fn wavefunction_csv_arrays(
    potential: &Potential,
    mass: f64,
    n: u32,
    ell: u32,
    r_min: f64,
    r_max: f64,
    count: usize,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let w = EnergyWindow::default_for(&potential.spec, mass);
    let state = eigensolver::solve_energy(&potential.spec, mass, n, ell, &w, 1e-12)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let grid = RadialGrid::new(r_min, r_max, count, Spacing::Uniform)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let wf = wavefunctions::evaluate(&state, &grid)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let wf = wavefunctions::normalize(&wf).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((wf.r, wf.values))
}

#[pymodule]
fn kgbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Potential>()?;
    m.add_class::<PyBoundState>()?;
    m.add_function(wrap_pyfunction!(coulomb_energy, m)?)?;
    m.add_function(wrap_pyfunction!(solve_energy, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_state, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_p, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre_l, m)?)?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(wavefunction_csv_arrays, m)?)?;
    Ok(())
}
