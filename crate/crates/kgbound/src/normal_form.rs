//! The parametric normal-form ODE and its algebraic consequences.
//!
//! Every potential handled by this crate reduces, after a change of variable
//! s(r), to
//!
//! ```text
//! psi'' + (c1 + c2 s) / (s (1 + c3 s)) psi'
//!       + [ -L1 s^2 + L2 s - L3 ] / (s^2 (1 + c3 s)^2) psi = 0
//! ```
//!
//! with six real constants (c1, c2, c3, L1, L2, L3). For c3 != 0 the ansatz
//! psi = (1 + c3 s)^(-p) s^q y(s) turns the equation into Jacobi's
//! differential equation; for c3 = 0 the ansatz psi = exp(-p s) s^q y(s)
//! yields Laguerre's associated equation. In both cases y is a polynomial of
//! degree n exactly when a quantization condition on the constants holds,
//! and that condition — evaluated with the energy-dependent L_i of a
//! concrete potential — is the bound-state energy equation.
//!
//! The exponent equations are quadratic, so each of q and p carries a sign
//! choice. Which root is physical depends on the geometry of the variable
//! transform (which endpoint of the s-domain is the radial origin, which is
//! infinity); the solvers below default to the + roots and accept an
//! explicit [`SignPair`] override so each potential can select its
//! normalizable branch.

use thiserror::Error;

/// The six constants of the normal-form ODE. The bracket sign convention is
/// fixed as `-lambda1 s^2 + lambda2 s - lambda3`; potential mappers are
/// responsible for converting into this convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeParameters {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl OdeParameters {
    pub fn new(
        c1: f64,
        c2: f64,
        c3: f64,
        lambda1: f64,
        lambda2: f64,
        lambda3: f64,
    ) -> Result<Self, FrameworkError> {
        let all = [c1, c2, c3, lambda1, lambda2, lambda3];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(FrameworkError::NonFiniteParameters);
        }
        Ok(Self {
            c1,
            c2,
            c3,
            lambda1,
            lambda2,
            lambda3,
        })
    }

    /// H = L1/c3^2 + L2/c3 + L3, the combination controlling the decay
    /// exponent p on the Jacobi branch.
    pub fn h_combination(&self) -> f64 {
        self.lambda1 / (self.c3 * self.c3) + self.lambda2 / self.c3 + self.lambda3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Jacobi,
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootSign {
    #[default]
    Plus,
    Minus,
}

impl RootSign {
    fn apply(self, sqrt: f64) -> f64 {
        match self {
            RootSign::Plus => sqrt,
            RootSign::Minus => -sqrt,
        }
    }
}

/// Sign selection for the two quadratic exponent equations of the Jacobi
/// branch. `Default` is (+, +), the convention all of the displayed
/// application formulas use; the physically normalizable branch can differ
/// per potential and is chosen by the potential mapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignPair {
    pub q: RootSign,
    pub p: RootSign,
}

impl SignPair {
    pub const PLUS_PLUS: SignPair = SignPair {
        q: RootSign::Plus,
        p: RootSign::Plus,
    };
    pub const PLUS_MINUS: SignPair = SignPair {
        q: RootSign::Plus,
        p: RootSign::Minus,
    };
    pub const MINUS_MINUS: SignPair = SignPair {
        q: RootSign::Minus,
        p: RootSign::Minus,
    };
}

/// Exponents of the factorized ansatz, plus the induced polynomial
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentSolution {
    /// psi = (1 + c3 s)^(-p) s^q P_n^(alpha,beta)(1 + 2 c3 s), with
    /// alpha = 2q + c1 - 1 and beta = -2p - c1 + c2/c3 - 1.
    Jacobi { q: f64, p: f64, alpha: f64, beta: f64 },
    /// psi = exp(-p s) s^q L_n^k(z_scale * s), with k = c1 + 2q - 1 and
    /// z_scale = 2p - c2.
    Laguerre {
        q: f64,
        p: f64,
        k: f64,
        z_scale: f64,
    },
}

impl ExponentSolution {
    pub fn branch(&self) -> Branch {
        match self {
            ExponentSolution::Jacobi { .. } => Branch::Jacobi,
            ExponentSolution::Laguerre { .. } => Branch::Laguerre,
        }
    }

    pub fn q(&self) -> f64 {
        match *self {
            ExponentSolution::Jacobi { q, .. } | ExponentSolution::Laguerre { q, .. } => q,
        }
    }

    pub fn p(&self) -> f64 {
        match *self {
            ExponentSolution::Jacobi { p, .. } | ExponentSolution::Laguerre { p, .. } => p,
        }
    }
}

/// Raw (signed) value of a quantization condition, left side minus right
/// side. Zero exactly at an admissible eigenvalue; the sign is preserved so
/// root finders can bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationResidual {
    pub value: f64,
    pub n: u32,
    pub branch: Branch,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FrameworkError {
    #[error("all six normal-form constants must be finite")]
    NonFiniteParameters,
    #[error("negative discriminant for the {exponent} exponent: no real bound-state factorization")]
    NegativeDiscriminant { exponent: &'static str },
    #[error("c3 = 0: the Jacobi-branch exponents are undefined, use the Laguerre branch")]
    ZeroC3,
    #[error("c3 = {c3} is nonzero: the Laguerre branch requires c3 = 0")]
    NonzeroC3 { c3: f64 },
    #[error("z_scale = {z_scale} is not positive: no decaying Laguerre factorization")]
    NonpositiveScale { z_scale: f64 },
    #[error("exponent solution branch does not match the requested quantization condition")]
    BranchMismatch,
}

/// Jacobi-branch exponents with the default (+, +) roots.
pub fn solve_exponents_jacobi(params: &OdeParameters) -> Result<ExponentSolution, FrameworkError> {
    solve_exponents_jacobi_signed(params, SignPair::default())
}

/// Jacobi-branch exponents with an explicit sign choice:
///   q = (1 - c1)/2 ± sqrt(((1 - c1)/2)^2 + L3)
///   p = D/2 ± sqrt((D/2)^2 + H),  D = c2/c3 - c1 - 1.
pub fn solve_exponents_jacobi_signed(
    params: &OdeParameters,
    signs: SignPair,
) -> Result<ExponentSolution, FrameworkError> {
    if params.c3 == 0.0 {
        return Err(FrameworkError::ZeroC3);
    }
    let half = (1.0 - params.c1) / 2.0;
    let disc_q = half * half + params.lambda3;
    if disc_q < 0.0 {
        return Err(FrameworkError::NegativeDiscriminant { exponent: "q" });
    }
    let d_half = (params.c2 / params.c3 - params.c1 - 1.0) / 2.0;
    let disc_p = d_half * d_half + params.h_combination();
    if disc_p < 0.0 {
        return Err(FrameworkError::NegativeDiscriminant { exponent: "p" });
    }
    let q = half + signs.q.apply(disc_q.sqrt());
    let p = d_half + signs.p.apply(disc_p.sqrt());
    let alpha = 2.0 * q + params.c1 - 1.0;
    let beta = -2.0 * p - params.c1 + params.c2 / params.c3 - 1.0;
    Ok(ExponentSolution::Jacobi { q, p, alpha, beta })
}

/// Laguerre-branch exponents (both + roots, as the bound-state conditions
/// fix them):
///   q = (1 - c1)/2 + sqrt(((1 - c1)/2)^2 + L3)
///   p = c2/2 + sqrt((c2/2)^2 + L1)
pub fn solve_exponents_laguerre(
    params: &OdeParameters,
) -> Result<ExponentSolution, FrameworkError> {
    if params.c3 != 0.0 {
        return Err(FrameworkError::NonzeroC3 { c3: params.c3 });
    }
    let half = (1.0 - params.c1) / 2.0;
    let disc_q = half * half + params.lambda3;
    if disc_q < 0.0 {
        return Err(FrameworkError::NegativeDiscriminant { exponent: "q" });
    }
    let c2_half = params.c2 / 2.0;
    let disc_p = c2_half * c2_half + params.lambda1;
    if disc_p < 0.0 {
        return Err(FrameworkError::NegativeDiscriminant { exponent: "p" });
    }
    let q = half + disc_q.sqrt();
    let p = c2_half + disc_p.sqrt();
    let z_scale = 2.0 * p - params.c2;
    if z_scale <= 0.0 {
        return Err(FrameworkError::NonpositiveScale { z_scale });
    }
    let k = params.c1 + 2.0 * q - 1.0;
    Ok(ExponentSolution::Laguerre { q, p, k, z_scale })
}

/// Jacobi-branch quantization residual for polynomial degree n:
///   (q-p)^2 + (c2/c3 + 2n - 1)(q-p) + n(n + c2/c3 - 1) - L1/c3^2
pub fn quantization_residual_jacobi(
    params: &OdeParameters,
    exponents: &ExponentSolution,
    n: u32,
) -> Result<QuantizationResidual, FrameworkError> {
    let ExponentSolution::Jacobi { q, p, .. } = *exponents else {
        return Err(FrameworkError::BranchMismatch);
    };
    if params.c3 == 0.0 {
        return Err(FrameworkError::ZeroC3);
    }
    let ratio = params.c2 / params.c3;
    let x = q - p;
    let nf = f64::from(n);
    let value = x * x + (ratio + 2.0 * nf - 1.0) * x + nf * (nf + ratio - 1.0)
        - params.lambda1 / (params.c3 * params.c3);
    Ok(QuantizationResidual {
        value,
        n,
        branch: Branch::Jacobi,
    })
}

/// Laguerre-branch quantization residual for polynomial degree n:
///   c1 p - q (c2 - 2p) - L2 - n (c2 - 2p)
pub fn quantization_residual_laguerre(
    params: &OdeParameters,
    exponents: &ExponentSolution,
    n: u32,
) -> Result<QuantizationResidual, FrameworkError> {
    let ExponentSolution::Laguerre { q, p, .. } = *exponents else {
        return Err(FrameworkError::BranchMismatch);
    };
    let gap = params.c2 - 2.0 * p;
    let value = params.c1 * p - q * gap - params.lambda2 - f64::from(n) * gap;
    Ok(QuantizationResidual {
        value,
        n,
        branch: Branch::Laguerre,
    })
}

/// Roots of the n-independent form of the Jacobi quantization condition.
///
/// Writing x = (q - p) + n, the condition reads
/// x^2 + (c2/c3 - 1) x = L1/c3^2, whose two roots label the two solution
/// families a fixed exponent branch can quantize onto. Returns
/// (lower, upper), or None when the discriminant is negative.
pub(crate) fn quantization_x_roots(params: &OdeParameters) -> Option<(f64, f64)> {
    if params.c3 == 0.0 {
        return None;
    }
    let ratio = params.c2 / params.c3;
    let half = (ratio - 1.0) / 2.0;
    let disc = half * half + params.lambda1 / (params.c3 * params.c3);
    if disc < 0.0 {
        return None;
    }
    let root = disc.sqrt();
    Some((-half - root, -half + root))
}
