//! Separable potentials of rank ν+1 and their matrix in the spinor basis.
//!
//! The kernel is built from two radial functions U (upper component) and W
//! (lower component) with coupling constants V₊, V₋, V₀. Its matrix is
//! Vₙₘ = 4πα²[V₊IₙIₘ + V₋JₙJₘ + V₀(IₙJₘ + IₘJₙ)] where
//! Iₙ = ∫ rU φₙ dr and Jₙ = ∫ rW θₙ dr.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::{radial_components, BasisKind, RelativisticParams};
use crate::linalg::SymMatrix;
use crate::quadrature::{integrate_adaptive, QuadResult};
use crate::{Error, Integral, Result};

/// Relative tolerance between tabulated coefficients and quadrature.
pub const TABLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialClass {
    /// U = W = r^(ν−1) e^(−λr/2).
    Laguerre,
    /// U = r^(2ν) e^(−λ²r²/2), W = U/(λr).
    Gaussian,
}

impl PotentialClass {
    /// The basis in which this class gives finite, closed-form matrices.
    pub fn natural_basis(self) -> BasisKind {
        match self {
            PotentialClass::Laguerre => BasisKind::Laguerre,
            PotentialClass::Gaussian => BasisKind::Oscillator,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PotentialSpec {
    pub class: PotentialClass,
    pub nu: usize,
}

impl PotentialSpec {
    pub fn new(class: PotentialClass, nu: usize) -> Self {
        Self { class, nu }
    }

    pub fn rank(&self) -> usize {
        self.nu + 1
    }

    /// (rU(r), rW(r)).
    pub fn weighted_form_factors(&self, lambda: f64, r: f64) -> (f64, f64) {
        let nu = self.nu as i32;
        match self.class {
            PotentialClass::Laguerre => {
                let v = libm::pow(r, nu as f64) * libm::exp(-lambda * r / 2.0);
                (v, v)
            }
            PotentialClass::Gaussian => {
                let g = libm::pow(r, 2.0 * nu as f64) * libm::exp(-lambda * lambda * r * r / 2.0);
                (r * g, g / lambda)
            }
        }
    }

    // Integration cutoff: beyond it the integrands are below ~1e−17 of peak.
    fn cutoff(&self, lambda: f64) -> f64 {
        let nu = self.nu as f64;
        match self.class {
            PotentialClass::Laguerre => (80.0 + 12.0 * nu) / lambda,
            PotentialClass::Gaussian => (12.0 + 1.5 * nu) / lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConstants {
    pub v_plus: f64,
    pub v_minus: f64,
    pub v_zero: f64,
}

impl CouplingConstants {
    pub fn new(v_plus: f64, v_minus: f64, v_zero: f64) -> Result<Self> {
        if !(v_plus.is_finite() && v_minus.is_finite() && v_zero.is_finite()) {
            return Err(Error::Config("coupling constants must be finite"));
        }
        Ok(Self {
            v_plus,
            v_minus,
            v_zero,
        })
    }
}

/// Iₙ and Jₙ for n = 0..=ν; all higher ones vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableCoefficients {
    pub i_vec: Vec<f64>,
    pub j_vec: Vec<f64>,
}

impl SeparableCoefficients {
    pub fn rank(&self) -> usize {
        self.i_vec.len()
    }
}

const S2: f64 = core::f64::consts::SQRT_2;
const S3: f64 = 1.732_050_807_568_877_2;
const S6: f64 = 2.449_489_742_783_178;
const S30: f64 = 5.477_225_575_051_661;
const S35: f64 = 5.916_079_783_099_616;

// Dimensionless tables aₙ, bₙ. Laguerre class: Iₙ = λ^(−ν−1/2) aₙ,
// Jₙ = λC λ^(−ν−1/2) bₙ. Gaussian class: Iₙ = π^(1/4) λ^(−2ν−3/2) aₙ,
// Jₙ = λC π^(1/4) λ^(−2ν−3/2) bₙ.
fn table(class: PotentialClass, nu: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    let (a, b): (&[f64], &[f64]) = match (class, nu) {
        (PotentialClass::Laguerre, 0) => (&[1.0], &[0.5]),
        (PotentialClass::Laguerre, 1) => (&[2.0, -S2], &[0.0, -S2 / 2.0]),
        (PotentialClass::Laguerre, 2) => (&[6.0, -6.0 * S2, 2.0 * S3], &[-1.0, -S2, S3]),
        (PotentialClass::Laguerre, 3) => (
            &[24.0, -36.0 * S2, 24.0 * S3, -12.0],
            &[-6.0, 0.0, 6.0 * S3, -6.0],
        ),
        (PotentialClass::Gaussian, 0) => (&[0.5], &[0.5]),
        (PotentialClass::Gaussian, 1) => (&[0.75, -S6 / 4.0], &[-0.25, -S6 / 4.0]),
        (PotentialClass::Gaussian, 2) => (
            &[15.0 / 8.0, -5.0 * S6 / 4.0, S30 / 4.0],
            &[-9.0 / 8.0, -S6 / 4.0, S30 / 4.0],
        ),
        (PotentialClass::Gaussian, 3) => (
            &[105.0 / 16.0, -105.0 * S6 / 16.0, 21.0 * S30 / 8.0, -3.0 * S35 / 4.0],
            &[-75.0 / 16.0, 15.0 * S6 / 16.0, 9.0 * S30 / 8.0, -3.0 * S35 / 4.0],
        ),
        _ => return None,
    };
    Some((a.to_vec(), b.to_vec()))
}

/// Closed-form Iₙ, Jₙ for ν ≤ 3 (κ = 0), without validation.
pub fn closed_form_coefficients(
    spec: &PotentialSpec,
    params: &RelativisticParams,
) -> Option<SeparableCoefficients> {
    let (a, b) = table(spec.class, spec.nu)?;
    let (lam, nu) = (params.lambda, spec.nu as f64);
    let scale = match spec.class {
        PotentialClass::Laguerre => libm::pow(lam, -(nu + 0.5)),
        PotentialClass::Gaussian => libm::pow(PI, 0.25) * libm::pow(lam, -(2.0 * nu + 1.5)),
    };
    let jscale = lam * params.cc * scale;
    Some(SeparableCoefficients {
        i_vec: a.iter().map(|v| v * scale).collect(),
        j_vec: b.iter().map(|v| v * jscale).collect(),
    })
}

/// Iₙ, Jₙ by adaptive Gauss–Kronrod quadrature on [0, R].
pub fn quadrature_coefficients(
    spec: &PotentialSpec,
    params: &RelativisticParams,
) -> Result<SeparableCoefficients> {
    params.require_s_wave()?;
    let kind = spec.class.natural_basis();
    let lam = params.lambda;
    let r_max = spec.cutoff(lam);
    let mut i_vec = Vec::with_capacity(spec.rank());
    let mut j_vec = Vec::with_capacity(spec.rank());
    for n in 0..spec.rank() {
        // Surface parameter errors once; inside the integrand they cannot recur.
        radial_components(kind, params, n, 1.0)?;
        let upper = |r: f64| {
            let (phi, _) = radial_components(kind, params, n, r).unwrap_or((0.0, 0.0));
            spec.weighted_form_factors(lam, r).0 * phi
        };
        let lower = |r: f64| {
            let (_, theta) = radial_components(kind, params, n, r).unwrap_or((0.0, 0.0));
            spec.weighted_form_factors(lam, r).1 * theta
        };
        let pieces = 16 + 4 * spec.nu;
        let iv = integrate_scaled(upper, r_max, pieces);
        let jv = integrate_scaled(lower, r_max, pieces);
        i_vec.push(iv.value);
        j_vec.push(jv.value);
    }
    Ok(SeparableCoefficients { i_vec, j_vec })
}

// Some coefficients vanish identically, so the absolute tolerance is tied to
// ∫|f| rather than to the (possibly zero) result.
fn integrate_scaled(f: impl Fn(f64) -> f64, r_max: f64, pieces: usize) -> QuadResult {
    let mass = integrate_adaptive(|r| f(r).abs(), 0.0, r_max, 0.0, 1e-6, pieces, 400);
    integrate_adaptive(f, 0.0, r_max, 1e-16 * mass.value, 1e-14, pieces, 4000)
}

fn compare(integral: Integral, closed: &[f64], quad: &[f64]) -> Result<()> {
    let scale = closed.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (index, (&c, &q)) in closed.iter().zip(quad).enumerate() {
        if (c - q).abs() > TABLE_TOLERANCE * c.abs().max(scale * 1e-3).max(f64::MIN_POSITIVE) {
            return Err(Error::TableMismatch {
                integral,
                index,
                closed_form: c,
                quadrature: q,
            });
        }
    }
    Ok(())
}

/// Iₙ, Jₙ for the given potential. For ν ≤ 3 the closed form is returned
/// after checking it against quadrature; beyond that quadrature is used.
pub fn separable_coefficients(
    spec: &PotentialSpec,
    params: &RelativisticParams,
) -> Result<SeparableCoefficients> {
    params.require_s_wave()?;
    let quad = quadrature_coefficients(spec, params)?;
    match closed_form_coefficients(spec, params) {
        Some(closed) => {
            compare(Integral::I, &closed.i_vec, &quad.i_vec)?;
            compare(Integral::J, &closed.j_vec, &quad.j_vec)?;
            Ok(closed)
        }
        None => Ok(quad),
    }
}

/// The (ν+1)×(ν+1) potential matrix.
pub fn potential_matrix(
    coeffs: &SeparableCoefficients,
    couplings: &CouplingConstants,
    alpha: f64,
) -> SymMatrix {
    let (i, j) = (&coeffs.i_vec, &coeffs.j_vec);
    let g = 4.0 * PI * alpha * alpha;
    let CouplingConstants {
        v_plus,
        v_minus,
        v_zero,
    } = *couplings;
    SymMatrix::from_upper(coeffs.rank(), |n, m| {
        g * (v_plus * i[n] * i[m] + v_minus * j[n] * j[m] + v_zero * (i[n] * j[m] + i[m] * j[n]))
    })
}

/// 4πV₊IₙIₘ, the nonrelativistic potential matrix in hartree.
pub fn nonrel_potential_matrix(coeffs: &SeparableCoefficients, v_plus: f64) -> SymMatrix {
    let i = &coeffs.i_vec;
    SymMatrix::from_upper(coeffs.rank(), |n, m| 4.0 * PI * v_plus * i[n] * i[m])
}

/// The nonrelativistic matrix in the units of the wave operator, i.e.
/// multiplied by α² of the nonrelativistic-limit parameters.
pub fn nonrel_potential_matrix_scaled(coeffs: &SeparableCoefficients, v_plus: f64, alpha: f64) -> SymMatrix {
    let i = &coeffs.i_vec;
    let g = 4.0 * PI * v_plus * alpha * alpha;
    SymMatrix::from_upper(coeffs.rank(), |n, m| g * i[n] * i[m])
}
