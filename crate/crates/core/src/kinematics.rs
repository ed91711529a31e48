//! Energy bookkeeping, the free wave number and the kinematical coefficients
//! sₙ, cₙ, Rₙ±, Tₙ of the J-matrix method.
//!
//! sₙ and cₙ are the expansion coefficients of the regular (sine-like) and
//! irregular (cosine-like) free solutions. They obey the three-term recursion
//! 𝔍ₙ,ₙ₋₁ hₙ₋₁ + 𝔍ₙₙ hₙ + 𝔍ₙ,ₙ₊₁ hₙ₊₁ = 0 for n ≥ 1.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::basis::{BasisKind, RelativisticParams, TridiagonalOperator};
use crate::specfun::kummer_1f1;
use crate::{Error, Result};

/// Fine structure constant used to emulate the nonrelativistic limit.
pub const NONREL_ALPHA: f64 = 1e-4;

/// One energy point expressed three ways. `excess` = ε − 1 = α²E is carried
/// separately so it never has to be recovered from ε by subtraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMapping {
    /// Nonrelativistic energy E in hartree.
    pub nr_energy: f64,
    /// Relativistic energy in units of mc².
    pub epsilon: f64,
    pub excess: f64,
}

impl EnergyMapping {
    /// ε = 1 + α²E.
    pub fn from_nr_energy(nr_energy: f64, alpha: f64) -> Self {
        let excess = alpha * alpha * nr_energy;
        Self {
            nr_energy,
            epsilon: 1.0 + excess,
            excess,
        }
    }

    pub fn from_epsilon(epsilon: f64, alpha: f64) -> Self {
        let excess = epsilon - 1.0;
        Self {
            nr_energy: excess / (alpha * alpha),
            epsilon,
            excess,
        }
    }
}

/// Parameters that reproduce nonrelativistic kinematics with the
/// relativistic machinery: α = 10⁻⁴ and C = α/2, keeping λ and κ.
pub fn nonrel_mode(params: &RelativisticParams) -> RelativisticParams {
    nonrel_mode_with_alpha(params, NONREL_ALPHA)
}

pub fn nonrel_mode_with_alpha(params: &RelativisticParams, alpha: f64) -> RelativisticParams {
    RelativisticParams {
        alpha,
        cc: alpha / 2.0,
        ..*params
    }
}

/// k(ε) on the scattering branch 1 < ε < 2α/C − 1.
pub fn wave_number(epsilon: f64, params: &RelativisticParams) -> Result<f64> {
    wave_number_from_excess(epsilon - 1.0, params)
        .map_err(|_| Error::KinematicDomain { epsilon })
}

pub fn wave_number_from_excess(excess: f64, params: &RelativisticParams) -> Result<f64> {
    let c = params.cc;
    let denom = excess + 2.0 * (1.0 - params.alpha / c);
    let k2 = -excess / (c * c * denom);
    if !(excess > 0.0) || !(denom < 0.0) || !k2.is_finite() {
        return Err(Error::KinematicDomain {
            epsilon: 1.0 + excess,
        });
    }
    Ok(libm::sqrt(k2))
}

/// Laguerre-basis seed: returns (T₀, R₁⁺, ω) with
/// cos ω = [(k/λ)² − 1/4]/[(k/λ)² + 1/4], ω ∈ (0, π).
pub fn laguerre_seed(k: f64, lambda: f64) -> Result<(Complex64, Complex64, f64)> {
    if !(k > 0.0) {
        return Err(Error::Domain("laguerre_seed needs k > 0"));
    }
    let y = k / lambda;
    let omega = libm::atan2(y, y * y - 0.25);
    let t0 = Complex64::from_polar(1.0, 2.0 * omega);
    let r1 = Complex64::from_polar(core::f64::consts::FRAC_1_SQRT_2, -omega);
    Ok((t0, r1, omega))
}

/// s₀, s₁, c₀, c₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedCoefficients {
    pub s0: f64,
    pub s1: f64,
    pub c0: f64,
    pub c1: f64,
}

/// Real seed coefficients reconstructed from the Laguerre-basis angle ω.
pub fn laguerre_seed_coefficients(omega: f64) -> SeedCoefficients {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    SeedCoefficients {
        s0: -libm::sin(omega),
        s1: -r * libm::sin(2.0 * omega),
        c0: libm::cos(omega),
        c1: r * libm::cos(2.0 * omega),
    }
}

/// Oscillator-basis seed, z = (k/λ)².
pub fn oscillator_seed(k: f64, lambda: f64) -> Result<SeedCoefficients> {
    if !(k >= 0.0) {
        return Err(Error::Domain("oscillator_seed needs k >= 0"));
    }
    let y = k / lambda;
    let z = y * y;
    let pref = libm::sqrt(2.0 / lambda) * libm::exp(-z / 2.0);
    let q = libm::pow(PI, 0.25);
    let r = libm::sqrt(1.5);
    let s0 = q * pref * y;
    let c = pref / q;
    let seed = SeedCoefficients {
        s0,
        s1: s0 * (z - 1.5) / r,
        c0: c * kummer_1f1(-0.5, 0.5, z)?,
        c1: -c * kummer_1f1(-1.5, 0.5, z)? / r,
    };
    if [seed.s0, seed.s1, seed.c0, seed.c1].iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericalBreakdown { n: 0 });
    }
    Ok(seed)
}

/// Even solution of w'' = (y² − e)w with w(0) = 1, w'(0) = 0, evaluated at
/// `y` by Taylor-series stepping. Returns (w, w').
fn even_weber(e: f64, y: f64) -> Result<(f64, f64)> {
    let (mut w, mut dw) = (1.0, 0.0);
    let mut y0 = 0.0;
    let mut coef = [0.0f64; 256];
    while y0 < y {
        let h = (y - y0).min(0.5 / (1.0 + y0 + libm::sqrt(e)));
        let q0 = y0 * y0 - e;
        coef[0] = w;
        coef[1] = dw;
        let (mut sum, mut dsum) = (w + dw * h, dw);
        let mut hp = h;
        let mut quiet = 0;
        for j in 0..coef.len() - 2 {
            let mut rhs = q0 * coef[j];
            if j >= 1 {
                rhs += 2.0 * y0 * coef[j - 1];
            }
            if j >= 2 {
                rhs += coef[j - 2];
            }
            coef[j + 2] = rhs / ((j + 1) as f64 * (j + 2) as f64);
            let dterm = (j + 2) as f64 * coef[j + 2] * hp;
            hp *= h;
            let term = coef[j + 2] * hp;
            sum += term;
            dsum += dterm;
            let small = term.abs() <= 1e-18 * sum.abs() && dterm.abs() <= 1e-18 * dsum.abs();
            quiet = if small { quiet + 1 } else { 0 };
            if quiet == 3 {
                break;
            }
        }
        w = sum;
        dw = dsum;
        y0 += h;
        if !(w.is_finite() && dw.is_finite()) {
            return Err(Error::NumericalBreakdown { n: 0 });
        }
    }
    Ok((w, dw))
}

/// Cosine-like coefficients c₀..c_{n_max−1} of the oscillator basis.
///
/// cₙ ∝ (−1)ⁿ √(n! Γ(3/2)/Γ(n+3/2)) e^(−z/2) ₁F₁(−n−1/2; 1/2; z) with
/// z = (k/λ)². Forward recursion loses about e^(3z/4) in relative accuracy
/// because cₙ decays while sₙ grows for n < z/4, so each cₙ is instead
/// obtained from the even solution of w'' = (y² − 4n − 3)w at y = k/λ, which
/// equals e^(−y²/2) ₁F₁(−n−1/2; 1/2; y²) and is the growing solution there.
pub fn oscillator_cosine_like(n_max: usize, k: f64, lambda: f64) -> Result<Vec<f64>> {
    let y = k / lambda;
    let pref = libm::sqrt(2.0 / lambda) / libm::pow(PI, 0.25);
    let mut norm = 1.0;
    let mut out = Vec::with_capacity(n_max);
    for n in 0..n_max {
        if n > 0 {
            // √(n!Γ(3/2)/Γ(n+3/2)) with alternating sign
            norm *= -libm::sqrt(n as f64 / (n as f64 + 0.5));
        }
        let (w, _) = even_weber(4.0 * n as f64 + 3.0, y).map_err(|_| Error::NumericalBreakdown { n })?;
        out.push(pref * norm * w);
    }
    Ok(out)
}

/// Extend a two-term seed through the free recursion so that the result has
/// one entry per row of `op`.
pub fn extend_recursion(h0: f64, h1: f64, op: &TridiagonalOperator) -> Result<Vec<f64>> {
    let (d, o) = (op.diag(), op.off());
    let mut h = Vec::with_capacity(op.dim());
    h.push(h0);
    h.push(h1);
    for n in 1..op.dim() - 1 {
        if o[n] == 0.0 {
            return Err(Error::NumericalBreakdown { n });
        }
        let next = -(o[n - 1] * h[n - 1] + d[n] * h[n]) / o[n];
        if !next.is_finite() {
            return Err(Error::NumericalBreakdown { n: n + 1 });
        }
        h.push(next);
    }
    Ok(h)
}

/// All kinematical quantities at one energy, indexed 0..dim of the operator
/// they were built from.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicSet {
    pub epsilon: f64,
    pub k: f64,
    pub s: Vec<f64>,
    pub c: Vec<f64>,
    pub t0: Complex64,
    /// Rₙ⁺ for n = 1..dim−1, stored at index n−1.
    pub r_plus: Vec<Complex64>,
    /// Tₙ for n = 0..dim−1.
    pub t: Vec<Complex64>,
    /// ω of the Laguerre basis; `None` for the oscillator basis.
    pub omega: Option<f64>,
}

impl KinematicSet {
    /// Build sₙ, cₙ, Rₙ⁺ and Tₙ from the free wave operator `op` at `excess`.
    pub fn build(
        kind: BasisKind,
        params: &RelativisticParams,
        excess: f64,
        op: &TridiagonalOperator,
    ) -> Result<Self> {
        let k = wave_number_from_excess(excess, params)?;
        let (seed, t0, r1, omega) = match kind {
            BasisKind::Laguerre => {
                let (t0, r1, omega) = laguerre_seed(k, params.lambda)?;
                (laguerre_seed_coefficients(omega), t0, r1, Some(omega))
            }
            BasisKind::Oscillator => {
                let seed = oscillator_seed(k, params.lambda)?;
                let g0 = Complex64::new(seed.c0, seed.s0);
                let t0 = g0.conj() / g0;
                let r1 = Complex64::new(seed.c1, seed.s1) / g0;
                (seed, t0, r1, None)
            }
        };
        let s = extend_recursion(seed.s0, seed.s1, op)?;
        let (c, r_plus) = match kind {
            BasisKind::Laguerre => {
                let c = extend_recursion(seed.c0, seed.c1, op)?;
                // Rₙ⁺ from its own ratio recursion rather than from s and c.
                let (d, o) = (op.diag(), op.off());
                let mut r_plus = Vec::with_capacity(op.dim() - 1);
                r_plus.push(r1);
                for n in 1..op.dim() - 1 {
                    let next = -(d[n] + o[n - 1] / r_plus[n - 1]) / o[n];
                    if !(next.re.is_finite() && next.im.is_finite()) {
                        return Err(Error::NumericalBreakdown { n: n + 1 });
                    }
                    r_plus.push(next);
                }
                (c, r_plus)
            }
            BasisKind::Oscillator => {
                // The ratio recursion inherits the instability of forward cₙ,
                // so the ratios come from the directly evaluated coefficients.
                let mut c = oscillator_cosine_like(op.dim(), k, params.lambda)?;
                c[0] = seed.c0;
                c[1] = seed.c1;
                let mut r_plus = Vec::with_capacity(op.dim() - 1);
                r_plus.push(r1);
                for n in 2..op.dim() {
                    let prev = Complex64::new(c[n - 1], s[n - 1]);
                    if prev.norm() == 0.0 {
                        return Err(Error::NumericalBreakdown { n });
                    }
                    r_plus.push(Complex64::new(c[n], s[n]) / prev);
                }
                (c, r_plus)
            }
        };
        let mut t = Vec::with_capacity(op.dim());
        t.push(t0);
        for (n, r) in r_plus.iter().enumerate() {
            let next = t[n] * r.conj() / r;
            t.push(next);
        }
        Ok(Self {
            epsilon: 1.0 + excess,
            k,
            s,
            c,
            t0,
            r_plus,
            t,
            omega,
        })
    }

    /// Rₙ⁺, n ≥ 1.
    pub fn r_plus(&self, n: usize) -> Complex64 {
        self.r_plus[n - 1]
    }

    /// Rₙ⁻ = conj(Rₙ⁺), n ≥ 1.
    pub fn r_minus(&self, n: usize) -> Complex64 {
        self.r_plus[n - 1].conj()
    }
}
