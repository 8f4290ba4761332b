//! kgbound: bound states of the radial Klein-Gordon equation with mixed
//! vector/scalar diatomic potentials.
//!
//! The crate reduces each supported potential, via a case-specific change of
//! variable, to one parametric second-order ODE whose bound solutions are
//! Jacobi or Laguerre polynomials times boundary factors. Energies come from
//! rooting the resulting quantization condition (closed form for Coulomb),
//! and every level is independently verifiable against a shooting-method
//! integration of the raw radial equation.
//!
//! Module map:
//! * [`normal_form`] — the parametric ODE, exponent formulas, quantization
//!   residuals
//! * [`special`] — Jacobi / associated Laguerre polynomials, log-gamma
//! * [`potentials`] — the seven potential shapes and their mappings onto the
//!   normal form, centrifugal approximations included
//! * [`eigensolver`] — bracketed root finding on the quantization residual,
//!   closed-form Coulomb levels, batch spectra
//! * [`wavefunctions`] — radial sampling, Simpson normalization, node
//!   counting, the ODE-residual certificate
//! * [`oracle`] — shooting-method verification of energies and overlaps
//! * [`cli`] — config-driven batch front end (CSV/JSON artifacts)

pub mod cli;
pub mod eigensolver;
pub mod normal_form;
pub mod oracle;
pub mod potentials;
pub mod special;
pub mod wavefunctions;

pub use eigensolver::{coulomb_energy, solve_energy, spectrum, BoundState, EnergyWindow};
pub use normal_form::{ExponentSolution, OdeParameters, SignPair};
pub use potentials::{map_potential, PotentialSpec, VariableTransform};
