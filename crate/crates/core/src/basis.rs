//! Relativistic two-component spinor bases and the tridiagonal matrices of
//! the free Dirac Hamiltonian H₀, the overlap Ω and the wave operator
//! 𝔍 = H₀ − εΩ in each of them.
//!
//! Both bases are non-orthogonal, so Ω is the Gram matrix of the basis. All
//! matrices are stored as a diagonal plus a single off-diagonal, which makes
//! them symmetric by construction.

use alloc::vec::Vec;

use crate::specfun::{gamma_ratio, laguerre};
use crate::{Error, Result};

/// Physical constants and basis parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticParams {
    /// Fine structure constant α (c = 1/α in atomic units).
    pub alpha: f64,
    /// Small-component strength C.
    pub cc: f64,
    /// Basis scale λ, also the range parameter of the potentials.
    pub lambda: f64,
    /// Spin-orbit quantum number κ.
    pub kappa: i32,
}

impl RelativisticParams {
    pub fn new(alpha: f64, cc: f64, lambda: f64, kappa: i32) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Config("alpha must be positive"));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Config("lambda must be positive"));
        }
        if cc == 0.0 || !cc.is_finite() {
            return Err(Error::Config("cc must be finite and nonzero"));
        }
        Ok(Self {
            alpha,
            cc,
            lambda,
            kappa,
        })
    }

    /// S-wave parameters with C = α / `ratio`.
    pub fn s_wave(alpha: f64, cc_ratio: f64, lambda: f64) -> Result<Self> {
        Self::new(alpha, alpha / cc_ratio, lambda, 0)
    }

    pub(crate) fn require_s_wave(&self) -> Result<()> {
        if self.kappa != 0 {
            return Err(Error::UnsupportedKappa { kappa: self.kappa });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// (λr)^(κ+1) e^(−λr/2) Lₙ^(2κ+1)(λr), natural for r^(ν−1) e^(−λr/2).
    Laguerre,
    /// (λr)^(κ+1) e^(−λ²r²/2) Lₙ^(κ+1/2)(λ²r²), natural for r^(2ν) e^(−λ²r²/2).
    Oscillator,
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.len() < 2 {
            return Err(Error::Config("tridiagonal operator needs at least 2 rows"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::Config("off-diagonal must have one entry fewer than the diagonal"));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Entries (n, n+1) = (n+1, n).
    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Element (i, j); zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i + 1 == j {
            self.off[i]
        } else if j + 1 == i {
            self.off[j]
        } else {
            0.0
        }
    }

    /// Elementwise `self − scale·other`.
    pub fn sub_scaled(&self, scale: f64, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Config("operator dimensions differ"));
        }
        let diag = self.diag.iter().zip(&other.diag).map(|(a, b)| a - scale * b).collect();
        let off = self.off.iter().zip(&other.off).map(|(a, b)| a - scale * b).collect();
        Self::new(diag, off)
    }
}

fn check_dim(n_max: usize) -> Result<()> {
    if n_max < 2 {
        return Err(Error::Config("n_max must be at least 2"));
    }
    Ok(())
}

// Radicand of the (n, n+1) element; its sign decides whether κ is admissible.
fn off_radicand(kind: BasisKind, kappa: i32, n: usize) -> f64 {
    let (n, k) = (n as f64, kappa as f64);
    match kind {
        BasisKind::Laguerre => (n + 1.0) * (2.0 * k + n + 2.0),
        BasisKind::Oscillator => (n + 1.0) * (n + k + 1.5),
    }
}

fn off_roots(kind: BasisKind, kappa: i32, n_max: usize) -> Result<Vec<f64>> {
    (0..n_max - 1)
        .map(|n| {
            let r = off_radicand(kind, kappa, n);
            if r < 0.0 {
                Err(Error::Config("kappa makes an off-diagonal radicand negative"))
            } else {
                Ok(libm::sqrt(r))
            }
        })
        .collect()
}

// Diagonal "index weight": 2(κ+n+1) for Laguerre, (2n+κ+3/2) for oscillator.
fn diag_weight(kind: BasisKind, kappa: i32, n: usize) -> f64 {
    let (n, k) = (n as f64, kappa as f64);
    match kind {
        BasisKind::Laguerre => 2.0 * (k + n + 1.0),
        BasisKind::Oscillator => 2.0 * n + k + 1.5,
    }
}

/// Matrix of the free Dirac Hamiltonian H₀ in the first `n_max` basis states.
pub fn h0_matrix(kind: BasisKind, params: &RelativisticParams, n_max: usize) -> Result<TridiagonalOperator> {
    check_dim(n_max)?;
    let roots = off_roots(kind, params.kappa, n_max)?;
    let RelativisticParams { alpha, cc, lambda, kappa } = *params;
    let (diag, off) = match kind {
        BasisKind::Laguerre => {
            let t = (lambda * cc / 2.0) * (lambda * cc / 2.0) * (1.0 - 2.0 * alpha / cc);
            (
                (0..n_max).map(|n| diag_weight(kind, kappa, n) * (1.0 - t)).collect(),
                roots.iter().map(|r| -r * (1.0 + t)).collect(),
            )
        }
        BasisKind::Oscillator => {
            let t = lambda * lambda * cc * cc * (-1.0 + 2.0 * alpha / cc);
            (
                (0..n_max).map(|n| 1.0 + t * diag_weight(kind, kappa, n)).collect(),
                roots.iter().map(|r| t * r).collect(),
            )
        }
    };
    TridiagonalOperator::new(diag, off)
}

/// Overlap (Gram) matrix Ω of the basis.
pub fn overlap_matrix(
    kind: BasisKind,
    params: &RelativisticParams,
    n_max: usize,
) -> Result<TridiagonalOperator> {
    check_dim(n_max)?;
    let roots = off_roots(kind, params.kappa, n_max)?;
    let RelativisticParams { cc, lambda, kappa, .. } = *params;
    let (diag, off) = match kind {
        BasisKind::Laguerre => {
            let q = (lambda * cc / 2.0) * (lambda * cc / 2.0);
            (
                (0..n_max).map(|n| diag_weight(kind, kappa, n) * (1.0 + q)).collect(),
                roots.iter().map(|r| -r * (1.0 - q)).collect(),
            )
        }
        BasisKind::Oscillator => {
            let f = lambda * lambda * cc * cc;
            (
                (0..n_max).map(|n| 1.0 + f * diag_weight(kind, kappa, n)).collect(),
                roots.iter().map(|r| f * r).collect(),
            )
        }
    };
    TridiagonalOperator::new(diag, off)
}

/// 𝔍 = H₀ − εΩ.
pub fn wave_operator(
    kind: BasisKind,
    params: &RelativisticParams,
    epsilon: f64,
    n_max: usize,
) -> Result<TridiagonalOperator> {
    wave_operator_from_excess(kind, params, epsilon - 1.0, n_max)
}

/// 𝔍 = H₀ − εΩ written in terms of the excess ε − 1.
///
/// The entries are arranged so that no term of order one cancels, which keeps
/// full relative precision when ε − 1 is tiny (the nonrelativistic limit).
pub fn wave_operator_from_excess(
    kind: BasisKind,
    params: &RelativisticParams,
    excess: f64,
    n_max: usize,
) -> Result<TridiagonalOperator> {
    check_dim(n_max)?;
    let roots = off_roots(kind, params.kappa, n_max)?;
    let RelativisticParams { alpha, cc, lambda, kappa } = *params;
    let (diag, off) = match kind {
        BasisKind::Laguerre => {
            // b + ε with b = 1 − 2α/C
            let q = (lambda * cc / 2.0) * (lambda * cc / 2.0);
            let shifted = 2.0 * (1.0 - alpha / cc) + excess;
            (
                (0..n_max)
                    .map(|n| diag_weight(kind, kappa, n) * (-excess - q * shifted))
                    .collect(),
                roots.iter().map(|r| -r * (-excess + q * shifted)).collect(),
            )
        }
        BasisKind::Oscillator => {
            let f = lambda * lambda * cc * cc;
            let shifted = 2.0 * alpha / cc - 2.0 - excess;
            (
                (0..n_max)
                    .map(|n| -excess + f * diag_weight(kind, kappa, n) * shifted)
                    .collect(),
                roots.iter().map(|r| f * r * shifted).collect(),
            )
        }
    };
    TridiagonalOperator::new(diag, off)
}

/// Upper and lower radial components (φₙ(r), θₙ(r)) of the n-th basis spinor.
pub fn radial_components(
    kind: BasisKind,
    params: &RelativisticParams,
    n: usize,
    r: f64,
) -> Result<(f64, f64)> {
    let RelativisticParams { cc, lambda, kappa, .. } = *params;
    let k = kappa as f64;
    let nf = n as f64;
    let lr = lambda * r;
    match kind {
        BasisKind::Laguerre => {
            let norm = libm::sqrt(lambda * gamma_ratio(nf + 1.0, 2.0 * k + nf + 2.0)?);
            let damp = libm::exp(-lr / 2.0);
            let phi = norm * libm::pow(lr, k + 1.0) * damp * laguerre(n, 2.0 * k + 1.0, lr);
            let theta = lambda * cc / 2.0
                * norm
                * libm::pow(lr, k)
                * damp
                * ((2.0 * k + nf + 1.0) * laguerre(n, 2.0 * k, lr)
                    + (nf + 1.0) * laguerre(n + 1, 2.0 * k, lr));
            Ok((phi, theta))
        }
        BasisKind::Oscillator => {
            let norm = libm::sqrt(2.0 * lambda * gamma_ratio(nf + 1.0, nf + k + 1.5)?);
            let x = lr * lr;
            let damp = libm::exp(-x / 2.0);
            let phi = norm * libm::pow(lr, k + 1.0) * damp * laguerre(n, k + 0.5, x);
            let theta = lambda
                * cc
                * norm
                * libm::pow(lr, k)
                * damp
                * ((nf + k + 0.5) * laguerre(n, k - 0.5, x) + (nf + 1.0) * laguerre(n + 1, k - 0.5, x));
            Ok((phi, theta))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_laguerre;
    use crate::specfun::laguerre;

    fn params(alpha: f64, ratio: f64, lambda: f64) -> RelativisticParams {
        RelativisticParams::s_wave(alpha, ratio, lambda).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(RelativisticParams::new(0.0, 0.1, 1.0, 0).is_err());
        assert!(RelativisticParams::new(0.1, 0.0, 1.0, 0).is_err());
        assert!(RelativisticParams::new(0.1, 0.1, -1.0, 0).is_err());
        let p = params(0.4, 3.0, 1.0);
        assert!(h0_matrix(BasisKind::Laguerre, &p, 1).is_err());
    }

    #[test]
    fn negative_kappa_radicand_is_a_config_error() {
        let p = RelativisticParams::new(0.4, 0.1, 1.0, -2).unwrap();
        assert!(matches!(h0_matrix(BasisKind::Laguerre, &p, 4), Err(Error::Config(_))));
        assert!(matches!(overlap_matrix(BasisKind::Oscillator, &p, 4), Err(Error::Config(_))));
        let p = RelativisticParams::new(0.4, 0.1, 1.0, 2).unwrap();
        assert!(h0_matrix(BasisKind::Laguerre, &p, 4).is_ok());
    }

    #[test]
    fn laguerre_h0_leading_entries() {
        let p = params(0.4, 3.0, 1.0);
        let h = h0_matrix(BasisKind::Laguerre, &p, 4).unwrap();
        let c = p.cc;
        let t = (c / 2.0) * (c / 2.0) * (1.0 - 2.0 * p.alpha / c);
        assert_eq!(h.get(0, 0), 2.0 * (1.0 - t));
        assert_eq!(h.get(0, 1), -libm::sqrt(2.0) * (1.0 + t));
        assert_eq!(h.get(0, 1), h.get(1, 0));
        assert_eq!(h.get(0, 3), 0.0);
    }

    #[test]
    fn oscillator_structural_entries() {
        let p = params(0.3, 4.0, 1.4);
        let h = h0_matrix(BasisKind::Oscillator, &p, 6).unwrap();
        let t = p.lambda * p.lambda * p.cc * p.cc * (-1.0 + 2.0 * p.alpha / p.cc);
        for n in 0..5 {
            let expect = t * libm::sqrt((n as f64 + 1.0) * (n as f64 + 1.5));
            assert!((h.off()[n] - expect).abs() < 1e-15);
        }
        let o = overlap_matrix(BasisKind::Oscillator, &p, 6).unwrap();
        assert!((o.get(0, 0) - (1.0 + p.lambda * p.lambda * p.cc * p.cc * 1.5)).abs() < 1e-15);
        let o = overlap_matrix(BasisKind::Laguerre, &p, 6).unwrap();
        let q = (p.lambda * p.cc / 2.0) * (p.lambda * p.cc / 2.0);
        assert!((o.get(0, 0) - 2.0 * (1.0 + q)).abs() < 1e-15);
        for n in 0..5 {
            assert_eq!(o.get(n, n + 1), o.get(n + 1, n));
        }
    }

    #[test]
    fn wave_operator_matches_direct_substitution() {
        // Fig. 1-a geometry at E = 1
        let p = params(0.4, 3.0, 1.0);
        let eps = 1.0 + p.alpha * p.alpha;
        for kind in [BasisKind::Laguerre, BasisKind::Oscillator] {
            let w = wave_operator(kind, &p, eps, 3).unwrap();
            let h = h0_matrix(kind, &p, 3).unwrap();
            let o = overlap_matrix(kind, &p, 3).unwrap();
            for (i, j) in [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)] {
                let direct = h.get(i, j) - eps * o.get(i, j);
                assert!((w.get(i, j) - direct).abs() < 1e-14 * direct.abs().max(1.0), "{kind:?} ({i},{j})");
            }
            let w0 = wave_operator(kind, &p, 1.0, 3).unwrap();
            let d = h.sub_scaled(1.0, &o).unwrap();
            for i in 0..3 {
                assert!((w0.diag()[i] - d.diag()[i]).abs() < 1e-14);
            }
        }
        let w = wave_operator(BasisKind::Oscillator, &p, 0.0, 3).unwrap();
        let h = h0_matrix(BasisKind::Oscillator, &p, 3).unwrap();
        for i in 0..3 {
            assert!((w.diag()[i] - h.diag()[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn wave_operator_is_affine_in_energy() {
        let p = params(0.5, 3.0, 1.5);
        let w = |e: f64| wave_operator(BasisKind::Laguerre, &p, e, 5).unwrap();
        let (a, b, c) = (w(1.1), w(1.3), w(1.5));
        for i in 0..5 {
            assert!((a.diag()[i] - 2.0 * b.diag()[i] + c.diag()[i]).abs() < 1e-13);
        }
        for i in 0..4 {
            assert!((a.off()[i] - 2.0 * b.off()[i] + c.off()[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn radial_component_values() {
        let p = params(0.4, 3.0, 1.7);
        let (phi0, _) = radial_components(BasisKind::Laguerre, &p, 0, 0.0).unwrap();
        assert_eq!(phi0, 0.0);
        // Laguerre n=0: a₀ = √λ, φ₀ = √λ (λr) e^(−λr/2)
        let r = 0.8;
        let (phi, _) = radial_components(BasisKind::Laguerre, &p, 0, r).unwrap();
        let lr = p.lambda * r;
        assert!((phi - libm::sqrt(p.lambda) * lr * libm::exp(-lr / 2.0)).abs() < 1e-15);
        // oscillator n=0 at r = 1/λ: φ₀ = a₀ e^(−1/2), a₀ = √(2λ/Γ(3/2))
        let a0 = libm::sqrt(2.0 * p.lambda / (0.5 * libm::sqrt(core::f64::consts::PI)));
        let (phi, _) = radial_components(BasisKind::Oscillator, &p, 0, 1.0 / p.lambda).unwrap();
        assert!((phi - a0 * libm::exp(-0.5)).abs() < 1e-14);
    }

    // Components and r-derivatives for κ = 0, written out independently of
    // `radial_components` (d/dx Lₙᵃ = −Lₙ₋₁ᵃ⁺¹).
    struct Spinor {
        phi: f64,
        theta: f64,
        dphi: f64,
        dtheta: f64,
    }

    fn dlag(n: usize, a: f64, x: f64) -> f64 {
        if n == 0 {
            0.0
        } else {
            -laguerre(n - 1, a + 1.0, x)
        }
    }

    fn spinor(kind: BasisKind, p: &RelativisticParams, n: usize, r: f64) -> Spinor {
        let (lam, c) = (p.lambda, p.cc);
        let nf = n as f64;
        match kind {
            BasisKind::Laguerre => {
                let a = libm::sqrt(lam / (nf + 1.0));
                let x = lam * r;
                let e = libm::exp(-x / 2.0);
                let l = laguerre(n, 1.0, x);
                let pp = (nf + 1.0) * (laguerre(n, 0.0, x) + laguerre(n + 1, 0.0, x));
                let dp = (nf + 1.0) * (dlag(n, 0.0, x) + dlag(n + 1, 0.0, x));
                Spinor {
                    phi: a * x * e * l,
                    theta: lam * c / 2.0 * a * e * pp,
                    dphi: lam * a * e * (l - 0.5 * x * l + x * dlag(n, 1.0, x)),
                    dtheta: lam * lam * c / 2.0 * a * e * (dp - 0.5 * pp),
                }
            }
            BasisKind::Oscillator => {
                let a = libm::sqrt(2.0 * lam * libm::exp(crate::specfun::ln_gamma(nf + 1.0) - crate::specfun::ln_gamma(nf + 1.5)));
                let x = lam * lam * r * r;
                let e = libm::exp(-x / 2.0);
                let l = laguerre(n, 0.5, x);
                let pp = (nf + 0.5) * laguerre(n, -0.5, x) + (nf + 1.0) * laguerre(n + 1, -0.5, x);
                let dp = (nf + 0.5) * dlag(n, -0.5, x) + (nf + 1.0) * dlag(n + 1, -0.5, x);
                let dx = 2.0 * lam * lam * r;
                Spinor {
                    phi: a * lam * r * e * l,
                    theta: lam * c * a * e * pp,
                    dphi: a * lam * e * (l + r * (-0.5 * dx * l + dx * dlag(n, 0.5, x))),
                    dtheta: lam * c * a * e * dx * (dp - 0.5 * pp),
                }
            }
        }
    }

    // ∫₀^∞ F(r) dr by a 96-point generalized Gauss–Laguerre rule in the
    // natural variable of each basis.
    fn integrate(kind: BasisKind, lam: f64, f: impl Fn(f64) -> f64) -> f64 {
        match kind {
            BasisKind::Laguerre => {
                let (x, w) = gauss_laguerre(96, 0.0).unwrap();
                x.iter().zip(&w).map(|(&xi, &wi)| wi * f(xi / lam) * libm::exp(xi) / lam).sum()
            }
            BasisKind::Oscillator => {
                let (x, w) = gauss_laguerre(96, -0.5).unwrap();
                x.iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * f(libm::sqrt(xi) / lam) * libm::exp(xi) / (2.0 * lam))
                    .sum()
            }
        }
    }

    #[test]
    fn matrix_elements_match_quadrature_oracle() {
        for (kind, p) in [
            (BasisKind::Laguerre, params(0.4, 3.0, 1.0)),
            (BasisKind::Laguerre, params(0.5, 3.0, 1.5)),
            (BasisKind::Oscillator, params(0.3, 4.0, 1.4)),
            (BasisKind::Oscillator, params(0.5, 3.0, 1.0)),
        ] {
            let h = h0_matrix(kind, &p, 5).unwrap();
            let o = overlap_matrix(kind, &p, 5).unwrap();
            for n in 0..=3 {
                for m in 0..=3 {
                    let ov = integrate(kind, p.lambda, |r| {
                        let (a, b) = (spinor(kind, &p, n, r), spinor(kind, &p, m, r));
                        a.phi * b.phi + a.theta * b.theta
                    });
                    let hv = integrate(kind, p.lambda, |r| {
                        let (a, b) = (spinor(kind, &p, n, r), spinor(kind, &p, m, r));
                        a.phi * b.phi - a.theta * b.theta + p.alpha * (a.theta * b.dphi - a.phi * b.dtheta)
                    });
                    assert!((ov - o.get(n, m)).abs() < 1e-8, "{kind:?} Ω({n},{m}) {ov} vs {}", o.get(n, m));
                    assert!((hv - h.get(n, m)).abs() < 1e-8, "{kind:?} H0({n},{m}) {hv} vs {}", h.get(n, m));
                }
            }
        }
    }

    #[test]
    fn components_agree_with_test_spinors() {
        let p = params(0.3, 4.0, 1.4);
        for kind in [BasisKind::Laguerre, BasisKind::Oscillator] {
            for n in 0..4 {
                for &r in &[0.1, 0.7, 2.3] {
                    let (phi, theta) = radial_components(kind, &p, n, r).unwrap();
                    let s = spinor(kind, &p, n, r);
                    assert!((phi - s.phi).abs() < 1e-13 && (theta - s.theta).abs() < 1e-13);
                }
            }
        }
    }
}
