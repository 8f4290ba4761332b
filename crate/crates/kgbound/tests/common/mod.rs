//! Shared fixtures for the integration suites: reference potential sets and
//! an independent high-precision (double-double) series oracle for the
//! polynomial families.
//!
//! The oracle evaluates the explicit finite sums
//!   P_n^(a,b)(z) = sum_j C(n+a, n-j) C(n+b, j) ((z-1)/2)^j ((z+1)/2)^(n-j)
//!   L_n^k(z)     = sum_j (-1)^j C(n+k, n-j) z^j / j!
//! in ~31-digit double-double arithmetic, entirely separate from the
//! recurrence implementations under test. Mid-range arguments cancel the
//! sums by many orders of magnitude, which plain f64 summation cannot
//! survive at the 1e-12 comparison level.

#![allow(dead_code)]

use kgbound::potentials::PotentialSpec;

/// Double-double value: hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(Dd {
            hi: -o.hi,
            lo: -o.lo,
        })
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from(x))
    }

    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let (p, pe) = two_prod(q1, d);
        let (dh, de) = two_sum(self.hi, -p);
        let r = dh + (de + self.lo - pe);
        let q2 = r / d;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn powi(self, mut n: usize) -> Dd {
        let mut base = self;
        let mut acc = Dd::from(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64) // exact in f64 for k <= 18
}

/// C(x, k) = x (x-1) ... (x-k+1) / k! in double-double.
fn falling_binomial_dd(x: f64, k: usize) -> Dd {
    let mut num = Dd::from(1.0);
    for i in 0..k {
        num = num.mul(Dd::from(x).sub(Dd::from(i as f64)));
    }
    num.div_f64(factorial(k))
}

/// Finite-sum Jacobi oracle in double-double arithmetic.
pub fn jacobi_sum_oracle(n: u32, alpha: f64, beta: f64, z: f64) -> f64 {
    let nf = n as usize;
    let hp = Dd::from(z).sub(Dd::from(1.0)).div_f64(2.0);
    let hm = Dd::from(z).add(Dd::from(1.0)).div_f64(2.0);
    let mut total = Dd::from(0.0);
    for j in 0..=nf {
        let term = falling_binomial_dd(f64::from(n) + alpha, nf - j)
            .mul(falling_binomial_dd(f64::from(n) + beta, j))
            .mul(hp.powi(j))
            .mul(hm.powi(nf - j));
        total = total.add(term);
    }
    total.to_f64()
}

/// Finite-sum associated Laguerre oracle in double-double arithmetic.
pub fn laguerre_sum_oracle(n: u32, k: f64, z: f64) -> f64 {
    let nf = n as usize;
    let mut total = Dd::from(0.0);
    for j in 0..=nf {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = falling_binomial_dd(f64::from(n) + k, nf - j)
            .mul(Dd::from(z).powi(j))
            .div_f64(factorial(j))
            .mul_f64(sign);
        total = total.add(term);
    }
    total.to_f64()
}

/// ln Gamma(j/2) for j = 1, 2, ..., built from exact factorial identities:
/// ln G(1/2) = ln sqrt(pi), ln G(1) = 0, ln G(x+1) = ln x + ln G(x),
/// with the log-sum accumulated in double-double.
pub fn log_gamma_half_integer_refs(max_half_steps: usize) -> Vec<(f64, f64)> {
    let mut refs = Vec::new();
    let mut acc_half = Dd::from(0.5 * std::f64::consts::PI.ln()); // ln G(1/2)
    let mut acc_int = Dd::from(0.0); // ln G(1)
    for j in 1..=max_half_steps {
        let x = j as f64 / 2.0;
        if j % 2 == 1 {
            refs.push((x, acc_half.to_f64()));
            acc_half = acc_half.add(Dd::from(x.ln()));
        } else {
            refs.push((x, acc_int.to_f64()));
            acc_int = acc_int.add(Dd::from(x.ln()));
        }
    }
    refs
}

// ---------------------------------------------------------------------
// Reference parameter sets shared by the acceptance criteria.
// ---------------------------------------------------------------------

pub const MASS: f64 = 1.0;

pub fn coulomb_ref() -> PotentialSpec {
    PotentialSpec::Coulomb { z_alpha: 0.2 }
}

pub fn mie_ref() -> PotentialSpec {
    PotentialSpec::Mie { v0: 0.5, a: 2.0 }
}

pub fn kratzer_ref() -> PotentialSpec {
    PotentialSpec::KratzerFues { ve: 0.25, re: 1.0 }
}

pub fn non_central_ref(lambda_sep: f64) -> PotentialSpec {
    PotentialSpec::NonCentralRadial {
        alpha_c: -0.3,
        lambda_sep,
    }
}

pub const NON_CENTRAL_LAMBDAS: [f64; 3] = [0.3, 2.3, 6.3];

pub fn hulthen_ref() -> PotentialSpec {
    PotentialSpec::Hulthen {
        v0: 0.12,
        s0: 0.05,
        delta: 0.25,
        q_def: 1.0,
    }
}

pub const HULTHEN_STATES: [(u32, u32); 3] = [(0, 0), (1, 0), (0, 1)];

/// Hulthen family for the centrifugal-approximation sweep: couplings scale
/// with the screening parameter so the origin exponent stays fixed.
pub fn hulthen_sweep(delta: f64) -> PotentialSpec {
    PotentialSpec::Hulthen {
        v0: 0.6 * delta,
        s0: 0.35 * delta,
        delta,
        q_def: 1.0,
    }
}

pub const HULTHEN_SWEEP_DELTAS: [f64; 4] = [0.3, 0.25, 0.2, 0.15];

pub fn woods_saxon_ref() -> PotentialSpec {
    woods_saxon_with_radius(28.0)
}

/// Scalar-dominated well: the interior decay exponent stays large enough
/// that the inner boundary condition leaks below 1e-6 for n <= 2.
pub fn woods_saxon_with_radius(r_big: f64) -> PotentialSpec {
    PotentialSpec::WoodsSaxon {
        v0: 0.05,
        s0: 2.0,
        a: 2.0,
        r_big,
        q_def: 1.0,
        pekeris: None,
    }
}

pub const WOODS_SAXON_STATES: [(u32, u32); 6] = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)];
pub const WOODS_SAXON_SWEEP_RADII: [f64; 4] = [28.0, 40.0, 56.0, 80.0];

pub fn poschl_teller_ref() -> PotentialSpec {
    poschl_teller_with_alpha(0.8)
}

pub fn poschl_teller_with_alpha(alpha_pt: f64) -> PotentialSpec {
    PotentialSpec::PoschlTeller {
        v1: 10.0,
        v2: 0.5,
        alpha_pt,
    }
}

pub const POSCHL_TELLER_STATES: [(u32, u32); 5] = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)];
pub const POSCHL_TELLER_SWEEP_ALPHAS: [f64; 4] = [0.8, 0.6, 0.4, 0.3];
