//! Mapping of physical potentials onto the normal-form ODE.
//!
//! Each potential, together with a coupling mode, a trial energy E, the mass
//! m, and the angular quantum number l, determines (i) a change of variable
//! s(r), (ii) the fixed coefficients (c1, c2, c3) of the normal form, and
//! (iii) energy-dependent bracket constants (L1, L2, L3). The L_i here are
//! re-derived from the radial Klein-Gordon equation
//!
//! ```text
//! u'' + [ (E - V)^2 - (m + S)^2 - l(l+1)/r^2 ] u = 0,    u = r R
//! ```
//!
//! (or the R-form with the 2/r first-derivative term for the identity
//! transform) through the stated substitution, so that the normal-form
//! formulas apply verbatim in the fixed bracket convention
//! `-L1 s^2 + L2 s - L3`. The round-trip ODE-residual check in
//! `wavefunctions` certifies every mapping numerically.
//!
//! For l > 0 the three short-range families stay exactly solvable only
//! after replacing the centrifugal term by the approximation natural to
//! their variable:
//!
//! * Hulthen (q = 1):   1/r^2 ~ d^2 e^(-dr) / (1 - e^(-dr))^2
//! * Woods-Saxon:       1/r^2 ~ (D0 + D1 s + D2 s^2) / R^2
//! * Pöschl-Teller:     1/r^2 ~ a^2 / sinh^2(a r)
//!
//! Those replacements only shift the L_i, which is what
//! [`modified_parameters`] implements.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal_form::{OdeParameters, SignPair};

/// One of the supported potential shapes with its physical parameters.
/// Energies and masses share units (natural units); the range parameters
/// `delta`, `alpha_pt` are inverse lengths and `a`, `re`, `r_big` lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    /// Vector Coulomb potential V = -Za/r with no scalar part (pionic atom).
    Coulomb { z_alpha: f64 },
    /// Mie potential V = V0 [ (a/r)^2 / 2 - a/r ], equal scalar and vector.
    Mie { v0: f64, a: f64 },
    /// Kratzer-Fues potential V = Ve (r - re)^2 / r^2, equal scalar and
    /// vector. Note the constant term Ve survives at r -> infinity and
    /// shifts the continuum threshold to m + 2 Ve.
    KratzerFues { ve: f64, re: f64 },
    /// Radial part of the non-central potential V = alpha_c/r + angular
    /// term; the angular separation constant is supplied as `lambda_sep`.
    /// Equal scalar and vector coupling.
    #[serde(rename = "non_central")]
    NonCentralRadial { alpha_c: f64, lambda_sep: f64 },
    /// Generalized Hulthen potential V = -V0 e^(-dr) / (1 - q e^(-dr)) with
    /// a scalar partner of the same shape and depth S0.
    Hulthen {
        v0: f64,
        s0: f64,
        delta: f64,
        q_def: f64,
    },
    /// Deformed Woods-Saxon potential V = -V0 / (1 + q e^((r - R)/a)) with a
    /// scalar partner of depth S0. `pekeris` optionally overrides the
    /// derived centrifugal expansion coefficients (D0, D1, D2).
    WoodsSaxon {
        v0: f64,
        s0: f64,
        a: f64,
        r_big: f64,
        q_def: f64,
        #[serde(default)]
        pekeris: Option<[f64; 3]>,
    },
    /// Generalized Pöschl-Teller potential
    /// V = -V1/cosh^2(ar) + V2/sinh^2(ar), equal scalar and vector.
    PoschlTeller { v1: f64, v2: f64, alpha_pt: f64 },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PotentialError {
    #[error("invalid potential parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported coupling: {0}")]
    UnsupportedCoupling(String),
    #[error("the Hulthen centrifugal approximation requires deformation q = 1, got q = {q_def}")]
    HulthenDeformationUnsupported { q_def: f64 },
}

/// The change of variable carried by a mapped problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformKind {
    /// s = r (Coulomb, Mie, Kratzer-Fues, non-central radial part).
    IdentityR,
    /// s = 1 / (1 - q e^(-delta r)).
    HulthenS { delta: f64, q: f64 },
    /// s = 1 / (1 + q e^((r - r_big)/a)).
    WoodsSaxonS { a: f64, q: f64, r_big: f64 },
    /// s = cosh^2(alpha r).
    CoshSquared { alpha: f64 },
}

/// s(r) together with the image of (0, infinity) and whether the mapped
/// unknown is u = r R (so wavefunction assembly must divide by r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariableTransform {
    pub kind: TransformKind,
    /// (s at r -> 0+, s at r -> infinity); the physical s-domain is the open
    /// interval between them. Either endpoint may be infinite.
    pub s_domain: (f64, f64),
    pub uses_u_substitution: bool,
}

impl VariableTransform {
    pub fn s_of_r(&self, r: f64) -> f64 {
        match self.kind {
            TransformKind::IdentityR => r,
            TransformKind::HulthenS { delta, q } => 1.0 / (1.0 - q * (-delta * r).exp()),
            TransformKind::WoodsSaxonS { a, q, r_big } => {
                1.0 / (1.0 + q * ((r - r_big) / a).exp())
            }
            TransformKind::CoshSquared { alpha } => {
                let c = (alpha * r).cosh();
                c * c
            }
        }
    }

    /// Whether `s` lies strictly inside the physical image of (0, infinity).
    pub fn contains(&self, s: f64) -> bool {
        let (a, b) = self.s_domain;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        s > lo && s < hi
    }
}

/// Which root of the n-independent quantization quadratic a potential's
/// bound states live on (see `normal_form::quantization_x_roots`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootFamily {
    Lower,
    Upper,
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<(), PotentialError> {
        let finite = |vals: &[f64]| vals.iter().all(|v| v.is_finite());
        match self {
            PotentialSpec::Coulomb { z_alpha } => {
                if !z_alpha.is_finite() {
                    return Err(PotentialError::InvalidParameters(
                        "z_alpha must be finite".into(),
                    ));
                }
            }
            PotentialSpec::Mie { v0, a } => {
                if !finite(&[*v0, *a]) || *a <= 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "Mie requires finite v0 and a > 0".into(),
                    ));
                }
            }
            PotentialSpec::KratzerFues { ve, re } => {
                if !finite(&[*ve, *re]) || *re <= 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "Kratzer-Fues requires finite ve and re > 0".into(),
                    ));
                }
            }
            PotentialSpec::NonCentralRadial {
                alpha_c,
                lambda_sep,
            } => {
                if !finite(&[*alpha_c, *lambda_sep]) {
                    return Err(PotentialError::InvalidParameters(
                        "non-central parameters must be finite".into(),
                    ));
                }
            }
            PotentialSpec::Hulthen {
                v0,
                s0,
                delta,
                q_def,
            } => {
                if !finite(&[*v0, *s0, *delta, *q_def]) || *delta <= 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "Hulthen requires finite parameters and delta > 0".into(),
                    ));
                }
                if *q_def == 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "the deformation parameter q must be nonzero".into(),
                    ));
                }
            }
            PotentialSpec::WoodsSaxon {
                v0,
                s0,
                a,
                r_big,
                q_def,
                pekeris,
            } => {
                if !finite(&[*v0, *s0, *a, *r_big, *q_def]) || *a <= 0.0 || *r_big <= 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "Woods-Saxon requires finite parameters, a > 0 and R > 0".into(),
                    ));
                }
                if *q_def == 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "the deformation parameter q must be nonzero".into(),
                    ));
                }
                if let Some(d) = pekeris {
                    if !finite(d) {
                        return Err(PotentialError::InvalidParameters(
                            "Pekeris coefficients must be finite".into(),
                        ));
                    }
                }
            }
            PotentialSpec::PoschlTeller { v1, v2, alpha_pt } => {
                if !finite(&[*v1, *v2, *alpha_pt]) || *alpha_pt <= 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "Pöschl-Teller requires finite parameters and alpha > 0".into(),
                    ));
                }
                if *v2 < 0.0 {
                    return Err(PotentialError::InvalidParameters(
                        "Pöschl-Teller requires v2 >= 0 for regularity at the origin".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Short machine-friendly name, used in CSV output and golden files.
    pub fn label(&self) -> &'static str {
        match self {
            PotentialSpec::Coulomb { .. } => "coulomb",
            PotentialSpec::Mie { .. } => "mie",
            PotentialSpec::KratzerFues { .. } => "kratzer_fues",
            PotentialSpec::NonCentralRadial { .. } => "non_central",
            PotentialSpec::Hulthen { .. } => "hulthen",
            PotentialSpec::WoodsSaxon { .. } => "woods_saxon",
            PotentialSpec::PoschlTeller { .. } => "poschl_teller",
        }
    }

    /// True for the identity-transform cases whose mapping involves no
    /// centrifugal approximation at any l.
    pub fn mapping_is_exact(&self) -> bool {
        matches!(
            self,
            PotentialSpec::Coulomb { .. }
                | PotentialSpec::Mie { .. }
                | PotentialSpec::KratzerFues { .. }
                | PotentialSpec::NonCentralRadial { .. }
        )
    }

    /// The sign choice for the factorization exponents that produces the
    /// normalizable radial solution. The identity-transform (Laguerre)
    /// cases have no choice to make; for the three short-range families the
    /// transform geometry dictates it:
    ///
    /// * Hulthen maps the origin to s = infinity and r = infinity to s = 1,
    ///   so both exponents take the - root;
    /// * Woods-Saxon maps r = infinity to s = 0 (q takes +) and its inner
    ///   boundary condition selects the decaying (1-s) power (p takes -);
    /// * Pöschl-Teller maps the origin to s = 1 (p takes - for the regular
    ///   power of s - 1) and decay at s -> infinity forces the - root of q.
    pub fn physical_sign_pair(&self) -> SignPair {
        match self {
            PotentialSpec::Hulthen { .. } | PotentialSpec::PoschlTeller { .. } => {
                SignPair::MINUS_MINUS
            }
            PotentialSpec::WoodsSaxon { .. } => SignPair::PLUS_MINUS,
            _ => SignPair::PLUS_PLUS,
        }
    }

    /// Which root of the n-independent quantization quadratic carries the
    /// physical spectrum (Jacobi-branch potentials only).
    pub fn root_family(&self) -> Option<RootFamily> {
        match self {
            PotentialSpec::Hulthen { .. } | PotentialSpec::PoschlTeller { .. } => {
                Some(RootFamily::Lower)
            }
            PotentialSpec::WoodsSaxon { .. } => Some(RootFamily::Upper),
            _ => None,
        }
    }

    /// A length scale for grid construction and oracle integration.
    pub fn characteristic_length(&self, mass: f64) -> f64 {
        match self {
            PotentialSpec::Coulomb { z_alpha } => 1.0 / (mass * z_alpha.abs().max(1e-3)),
            PotentialSpec::Mie { a, .. } => *a,
            PotentialSpec::KratzerFues { re, .. } => *re,
            PotentialSpec::NonCentralRadial { alpha_c, .. } => {
                1.0 / (mass * alpha_c.abs().max(1e-3))
            }
            PotentialSpec::Hulthen { delta, .. } => 1.0 / delta,
            PotentialSpec::WoodsSaxon { a, r_big, .. } => r_big + 5.0 * a,
            PotentialSpec::PoschlTeller { alpha_pt, .. } => 1.0 / alpha_pt,
        }
    }

    /// r-space evaluation of Hulthen wavefunctions with q != 1 relies on a
    /// variable whose image does not touch the equation's s = 0 singular
    /// point, so only the s-space residual certifies it. Flagged so the CLI
    /// can warn (or refuse under --strict).
    pub fn r_space_is_experimental(&self) -> bool {
        matches!(self, PotentialSpec::Hulthen { q_def, .. } if *q_def != 1.0)
    }
}

/// Centrifugal approximation for the Hulthen variable:
/// 1/r^2 ~ delta^2 e^(-delta r) / (1 - e^(-delta r))^2.
pub fn centrifugal_hulthen(delta: f64, r: f64) -> f64 {
    let x = (-delta * r).exp();
    delta * delta * x / ((1.0 - x) * (1.0 - x))
}

/// Centrifugal approximation in the Woods-Saxon variable:
/// 1/r^2 ~ (D0 + D1 s + D2 s^2) / R^2 with s = 1/(1 + q e^((r-R)/a)).
pub fn centrifugal_pekeris(a: f64, r_big: f64, q: f64, d: [f64; 3], r: f64) -> f64 {
    let s = 1.0 / (1.0 + q * ((r - r_big) / a).exp());
    (d[0] + d[1] * s + d[2] * s * s) / (r_big * r_big)
}

/// Centrifugal approximation for the Pöschl-Teller variable:
/// 1/r^2 ~ alpha^2 / sinh^2(alpha r).
pub fn centrifugal_sinh(alpha_pt: f64, r: f64) -> f64 {
    let s = (alpha_pt * r).sinh();
    alpha_pt * alpha_pt / (s * s)
}

/// Default Pekeris coefficients, constructed by Taylor-matching
/// (D0 + D1 s + D2 s^2)/R^2 to 1/r^2 at r = R through second order.
///
/// With sigma = s(R) = 1/(1+q) and eps = a/R:
///   D2 = eps (3 eps - 1 + 2 sigma) / (sigma^2 (1 - sigma)^2)
///   D1 = 2 eps (2 - 3 sigma - 3 eps) / (sigma (1 - sigma)^2)
///   D0 = 1 - D1 sigma - D2 sigma^2
pub fn pekeris_coefficients(a: f64, r_big: f64, q: f64) -> Result<[f64; 3], PotentialError> {
    if q <= 0.0 {
        return Err(PotentialError::InvalidParameters(
            "derived Pekeris coefficients require q > 0; supply explicit ones otherwise".into(),
        ));
    }
    let sigma = 1.0 / (1.0 + q);
    let eps = a / r_big;
    let om = 1.0 - sigma;
    let d2 = eps * (3.0 * eps - 1.0 + 2.0 * sigma) / (sigma * sigma * om * om);
    let d1 = 2.0 * eps * (2.0 - 3.0 * sigma - 3.0 * eps) / (sigma * om * om);
    let d0 = 1.0 - d1 * sigma - d2 * sigma * sigma;
    Ok([d0, d1, d2])
}

/// Map a potential at trial energy `e` into normal-form constants and the
/// variable transform. For l > 0 the short-range families fold in their
/// centrifugal approximation (via [`modified_parameters`]); the
/// identity-transform cases absorb l(l+1) into L3 exactly.
pub fn map_potential(
    spec: &PotentialSpec,
    mass: f64,
    e: f64,
    ell: u32,
) -> Result<(OdeParameters, VariableTransform), PotentialError> {
    spec.validate()?;
    if !(mass.is_finite() && mass > 0.0) {
        return Err(PotentialError::InvalidParameters(
            "mass must be positive and finite".into(),
        ));
    }
    if !e.is_finite() {
        return Err(PotentialError::InvalidParameters(
            "trial energy must be finite".into(),
        ));
    }
    let base = map_at_zero_ell(spec, mass, e)?;
    let params = modified_parameters(&base.0, spec, mass, e, ell)?;
    Ok((params, base.1))
}

fn ode(c: (f64, f64, f64), l: (f64, f64, f64)) -> Result<OdeParameters, PotentialError> {
    OdeParameters::new(c.0, c.1, c.2, l.0, l.1, l.2)
        .map_err(|_| PotentialError::InvalidParameters("mapped constants are not finite".into()))
}

fn map_at_zero_ell(
    spec: &PotentialSpec,
    m: f64,
    e: f64,
) -> Result<(OdeParameters, VariableTransform), PotentialError> {
    let identity = VariableTransform {
        kind: TransformKind::IdentityR,
        s_domain: (0.0, f64::INFINITY),
        uses_u_substitution: false,
    };
    match *spec {
        PotentialSpec::Coulomb { z_alpha } => {
            let l1 = m * m - e * e;
            let l2 = 2.0 * e * z_alpha;
            let l3 = -z_alpha * z_alpha;
            Ok((ode((2.0, 0.0, 0.0), (l1, l2, l3))?, identity))
        }
        PotentialSpec::Mie { v0, a } => {
            let l1 = m * m - e * e;
            let l2 = 2.0 * (e + m) * a * v0;
            let l3 = (e + m) * a * a * v0;
            Ok((ode((2.0, 0.0, 0.0), (l1, l2, l3))?, identity))
        }
        PotentialSpec::KratzerFues { ve, re } => {
            let l1 = 2.0 * (e + m) * ve + (m * m - e * e);
            let l2 = 4.0 * (e + m) * ve * re;
            let l3 = 2.0 * (e + m) * ve * re * re;
            Ok((ode((2.0, 0.0, 0.0), (l1, l2, l3))?, identity))
        }
        PotentialSpec::NonCentralRadial {
            alpha_c,
            lambda_sep,
        } => {
            let l1 = m * m - e * e;
            let l2 = -2.0 * (e + m) * alpha_c;
            let l3 = lambda_sep;
            Ok((ode((2.0, 0.0, 0.0), (l1, l2, l3))?, identity))
        }
        PotentialSpec::Hulthen {
            v0,
            s0,
            delta,
            q_def,
        } => {
            let d2q2 = delta * delta * q_def * q_def;
            let d2q = delta * delta * q_def;
            let d2 = delta * delta;
            let l1 = (s0 * s0 - v0 * v0) / d2q2;
            let l2 = 2.0 * (s0 * s0 - v0 * v0) / d2q2 + 2.0 * (m * s0 + e * v0) / d2q;
            let l3 = (s0 * s0 - v0 * v0) / d2q2 + 2.0 * (m * s0 + e * v0) / d2q
                - (e * e - m * m) / d2;
            let s_origin = if q_def < 1.0 {
                1.0 / (1.0 - q_def)
            } else if q_def == 1.0 {
                f64::INFINITY
            } else {
                // q > 1 puts a pole of s(r) at finite radius; the map is not
                // single-signed on (0, inf).
                return Err(PotentialError::UnsupportedCoupling(
                    "Hulthen deformation q > 1 makes s(r) singular at finite r".into(),
                ));
            };
            let transform = VariableTransform {
                kind: TransformKind::HulthenS { delta, q: q_def },
                s_domain: (s_origin, 1.0),
                uses_u_substitution: true,
            };
            Ok((ode((1.0, -2.0, -1.0), (l1, l2, l3))?, transform))
        }
        PotentialSpec::WoodsSaxon {
            v0,
            s0,
            a,
            r_big,
            q_def,
            ..
        } => {
            if q_def < 0.0 {
                return Err(PotentialError::UnsupportedCoupling(
                    "Woods-Saxon deformation q < 0 makes s(r) singular at finite r".into(),
                ));
            }
            let a2 = a * a;
            let l1 = (s0 * s0 - v0 * v0) * a2;
            let l2 = 2.0 * a2 * (e * v0 + m * s0);
            let l3 = a2 * (m * m - e * e);
            let s_origin = 1.0 / (1.0 + q_def * (-r_big / a).exp());
            let transform = VariableTransform {
                kind: TransformKind::WoodsSaxonS {
                    a,
                    q: q_def,
                    r_big,
                },
                s_domain: (s_origin, 0.0),
                uses_u_substitution: true,
            };
            Ok((ode((1.0, -2.0, -1.0), (l1, l2, l3))?, transform))
        }
        PotentialSpec::PoschlTeller { v1, v2, alpha_pt } => {
            let a2 = alpha_pt * alpha_pt;
            let l1 = (m * m - e * e) / (4.0 * a2);
            let l2 = (m * m - e * e) / (4.0 * a2) - (e + m) * (v2 - v1) / (2.0 * a2);
            let l3 = (e + m) * v1 / (2.0 * a2);
            let transform = VariableTransform {
                kind: TransformKind::CoshSquared { alpha: alpha_pt },
                s_domain: (1.0, f64::INFINITY),
                uses_u_substitution: true,
            };
            Ok((ode((0.5, -1.0, -1.0), (l1, l2, l3))?, transform))
        }
    }
}

/// Replace the l = 0 bracket constants by their l > 0 counterparts.
///
/// Identity-transform cases absorb l(l+1) into L3 exactly. The short-range
/// families shift to the constants induced by their centrifugal
/// approximation:
///
/// * Hulthen (q = 1): G1 = L1 + l(l+1), G2 = L2 + l(l+1), G3 = L3
/// * Woods-Saxon: G1 = L1 + l(l+1) a^2 D2 / R^2,
///   G2 = L2 - l(l+1) a^2 D1 / R^2, G3 = L3 + l(l+1) a^2 D0 / R^2
/// * Pöschl-Teller: G2 = L2 - l(l+1)/4
pub fn modified_parameters(
    base: &OdeParameters,
    spec: &PotentialSpec,
    _mass: f64,
    _e: f64,
    ell: u32,
) -> Result<OdeParameters, PotentialError> {
    if ell == 0 {
        return Ok(*base);
    }
    let ll = f64::from(ell) * f64::from(ell + 1);
    let mut out = *base;
    match *spec {
        PotentialSpec::Coulomb { .. }
        | PotentialSpec::Mie { .. }
        | PotentialSpec::KratzerFues { .. } => {
            out.lambda3 += ll;
        }
        PotentialSpec::NonCentralRadial { .. } => {
            return Err(PotentialError::UnsupportedCoupling(
                "the non-central case takes its angular dependence through lambda_sep; call with ell = 0"
                    .into(),
            ));
        }
        PotentialSpec::Hulthen { q_def, .. } => {
            if q_def != 1.0 {
                return Err(PotentialError::HulthenDeformationUnsupported { q_def });
            }
            out.lambda1 += ll;
            out.lambda2 += ll;
        }
        PotentialSpec::WoodsSaxon {
            a, r_big, q_def, ..
        } => {
            let d = match spec {
                PotentialSpec::WoodsSaxon {
                    pekeris: Some(d), ..
                } => *d,
                _ => pekeris_coefficients(a, r_big, q_def)?,
            };
            let scale = ll * a * a / (r_big * r_big);
            out.lambda1 += scale * d[2];
            out.lambda2 -= scale * d[1];
            out.lambda3 += scale * d[0];
        }
        PotentialSpec::PoschlTeller { .. } => {
            out.lambda2 -= ll / 4.0;
        }
    }
    Ok(out)
}

/// The Pekeris coefficients actually in effect for a Woods-Saxon spec
/// (user-supplied, or derived by Taylor matching).
pub fn effective_pekeris(spec: &PotentialSpec) -> Result<[f64; 3], PotentialError> {
    match spec {
        PotentialSpec::WoodsSaxon {
            pekeris: Some(d), ..
        } => Ok(*d),
        PotentialSpec::WoodsSaxon {
            a, r_big, q_def, ..
        } => pekeris_coefficients(*a, *r_big, *q_def),
        _ => Err(PotentialError::InvalidParameters(
            "Pekeris coefficients only apply to the Woods-Saxon potential".into(),
        )),
    }
}
