//! Closed-form S-matrices e^(2iτ) for potentials of rank one, two and three,
//! the nonrelativistic Yukawa result, and phase unwrapping along a grid.
//!
//! The formulas need only T₀, R₁⁺ (and R₂⁺ for rank three) together with the
//! leading entries of 𝔍 and V, and hold unchanged in both bases.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::basis::TridiagonalOperator;
use crate::kinematics::KinematicSet;
use crate::linalg::SymMatrix;
use crate::{Error, Result};

/// Relative size below which a denominator is treated as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-13;

/// Intermediate quantities of the rank-two and rank-three formulas.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AuxiliaryAngles {
    /// ζ (rank two).
    pub zeta: Option<f64>,
    /// η > 0 (rank two).
    pub eta: Option<f64>,
    /// ξ (rank three).
    pub xi: Option<f64>,
    /// Λ(ε, V) (rank three).
    pub lambda_factor: Option<Complex64>,
}

/// One point of a phase-shift curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftPoint {
    pub nr_energy: f64,
    pub epsilon: f64,
    /// τ in radians; principal value until passed through [`unwrap_phase`].
    pub tau: f64,
    /// e^(2iτ).
    pub s_matrix: Complex64,
}

impl PhaseShiftPoint {
    pub fn new(nr_energy: f64, epsilon: f64, s_matrix: Complex64) -> Self {
        Self {
            nr_energy,
            epsilon,
            tau: principal_tau(s_matrix),
            s_matrix,
        }
    }
}

/// arg(S)/2 in (−π/2, π/2].
pub fn principal_tau(s_matrix: Complex64) -> f64 {
    s_matrix.arg() / 2.0
}

fn checked(value: Complex64, scale: f64, factor: &'static str, epsilon: f64) -> Result<Complex64> {
    if !(value.norm() > SINGULAR_THRESHOLD * scale) {
        return Err(Error::SingularDenominator { factor, epsilon });
    }
    Ok(value)
}

fn require_rank(v: &SymMatrix, rank: usize, op: &TridiagonalOperator) -> Result<()> {
    if v.dim() != rank {
        return Err(Error::Config("potential matrix has the wrong rank for this formula"));
    }
    if op.dim() < rank.max(2) {
        return Err(Error::Config("wave operator too small for this formula"));
    }
    Ok(())
}

/// Rank one: e^(2iτ) = T₀ + (1−T₀)[1 + V₀₀/(𝔍₀₀ + 𝔍₀₁R₁⁺)]⁻¹.
pub fn s_matrix_nu0(kin: &KinematicSet, op: &TridiagonalOperator, v: &SymMatrix) -> Result<Complex64> {
    require_rank(v, 1, op)?;
    let eps = kin.epsilon;
    let (t0, r1) = (kin.t0, kin.r_plus(1));
    let (j00, j01) = (op.get(0, 0), op.get(0, 1));
    let base = checked(j00 + j01 * r1, j00.abs() + (j01 * r1).norm(), "J00 + J01 R1", eps)?;
    let bracket = 1.0 + v.get(0, 0) / base;
    let bracket = checked(bracket, 1.0 + (v.get(0, 0) / base).norm(), "1 + V00/(J00 + J01 R1)", eps)?;
    Ok(t0 + (1.0 - t0) / bracket)
}

/// Rank two, with ζ and η of the split transformation.
pub fn s_matrix_nu1(
    kin: &KinematicSet,
    op: &TridiagonalOperator,
    v: &SymMatrix,
) -> Result<(Complex64, AuxiliaryAngles)> {
    require_rank(v, 2, op)?;
    let eps = kin.epsilon;
    let (t0, r1) = (kin.t0, kin.r_plus(1));
    let (j00, j01) = (op.get(0, 0), op.get(0, 1));
    let (v00, v01, v11) = (v.get(0, 0), v.get(0, 1), v.get(1, 1));

    let jv01 = checked(Complex64::from(j01 + v01), j01.abs() + v01.abs(), "J01 + V01", eps)?;
    let upper = checked(j01 - v11 * r1, j01.abs() + (v11 * r1).norm(), "J01 - V11 R1", eps)?;
    let ratio = upper / jv01;
    let (eta, zeta) = ratio.to_polar();

    let head = j00 + j01 * r1;
    let bracket = upper * (j00 + v00) / jv01 + r1 * jv01;
    let scale = (upper * (j00 + v00) / jv01).norm() + (r1 * jv01).norm();
    let bracket = checked(bracket, scale, "rank-two bracket", eps)?;

    let s = t0 * Complex64::from_polar(1.0, -2.0 * zeta) + (1.0 - t0) * jv01 * (head / upper) / bracket;
    let aux = AuxiliaryAngles {
        zeta: Some(zeta),
        eta: Some(eta),
        ..Default::default()
    };
    Ok((s, aux))
}

/// Rank three, with R₂⁺ from the free recursion, Λ(ε, V) and ξ = arg(R₁⁺Λ).
pub fn s_matrix_nu2(
    kin: &KinematicSet,
    op: &TridiagonalOperator,
    v: &SymMatrix,
) -> Result<(Complex64, AuxiliaryAngles)> {
    require_rank(v, 3, op)?;
    let eps = kin.epsilon;
    let (t0, r1) = (kin.t0, kin.r_plus(1));
    let (j00, j01, j11, j12) = (op.get(0, 0), op.get(0, 1), op.get(1, 1), op.get(1, 2));
    let (v00, v01, v02) = (v.get(0, 0), v.get(0, 1), v.get(0, 2));
    let (v11, v12, v22) = (v.get(1, 1), v.get(1, 2), v.get(2, 2));

    if j12 == 0.0 {
        return Err(Error::SingularDenominator { factor: "J12", epsilon: eps });
    }
    let r2 = -(j11 + j01 / r1) / j12;

    let jv12 = checked(Complex64::from(j12 + v12), j12.abs() + v12.abs(), "J12 + V12", eps)?;
    let rr = (j11 + v11) / jv12;
    let num = j01 / r1 + j11 - r2 * v12 + rr * (-j12 + r2 * v22);
    let den = j01 + v01 - v02 * rr;
    let den = checked(den, j01.abs() + v01.abs() + (v02 * rr).norm(), "Lambda denominator", eps)?;
    let lambda = num / den;
    let r1l = checked(r1 * lambda, r1.norm() * num.norm() / den.norm(), "R1 Lambda", eps)?;
    let xi = r1l.arg();

    let inner = (j01 + v01) / jv12 * (j12 - r2 * v22 - v02 * lambda) + r2 * v02;
    let bracket = r1l * (j00 + v00) + r1 * inner;
    let scale = (r1l * (j00 + v00)).norm() + (r1 * inner).norm();
    let bracket = checked(bracket, scale, "rank-three bracket", eps)?;

    let s = t0 * Complex64::from_polar(1.0, -2.0 * xi) + (1.0 - t0) / r1l * (j00 + r1 * j01) / bracket;
    let aux = AuxiliaryAngles {
        xi: Some(xi),
        lambda_factor: Some(lambda),
        ..Default::default()
    };
    Ok((s, aux))
}

/// Dispatches on the rank of `v` (1, 2 or 3).
pub fn analytic_s_matrix(
    kin: &KinematicSet,
    op: &TridiagonalOperator,
    v: &SymMatrix,
) -> Result<(Complex64, AuxiliaryAngles)> {
    match v.dim() {
        1 => s_matrix_nu0(kin, op, v).map(|s| (s, AuxiliaryAngles::default())),
        2 => s_matrix_nu1(kin, op, v),
        3 => s_matrix_nu2(kin, op, v),
        _ => Err(Error::Config("closed forms exist only for nu <= 2")),
    }
}

/// Nonrelativistic tan τ for the rank-one Yukawa-type potential:
/// −(k/λ){[1/4 − (k/λ)²] + λ³/(8πV₊)[1/4 + (k/λ)²]²}⁻¹.
///
/// A vanishing brace is reported with ε = 1, the nonrelativistic limit.
pub fn nonrel_yukawa_tan(k: f64, lambda: f64, v_plus: f64) -> Result<f64> {
    if !(k >= 0.0) || !(lambda > 0.0) {
        return Err(Error::Domain("nonrel_yukawa_tan needs k >= 0 and lambda > 0"));
    }
    if v_plus == 0.0 || k == 0.0 {
        return Ok(0.0);
    }
    let y = k / lambda;
    let a = 0.25 - y * y;
    let b = lambda * lambda * lambda / (8.0 * PI * v_plus) * (0.25 + y * y) * (0.25 + y * y);
    let brace = a + b;
    if brace.abs() <= SINGULAR_THRESHOLD * (a.abs() + b.abs()) {
        return Err(Error::SingularDenominator {
            factor: "Yukawa brace",
            epsilon: 1.0,
        });
    }
    Ok(-y / brace)
}

/// Unwraps principal phases (`None` marks a gap) so that neighbours differ by
/// less than π/2. The first value is kept in (−π/2, π/2]; gaps are bridged
/// from the last available value.
pub fn unwrap_taus(raw: &[Option<f64>]) -> Result<Vec<Option<f64>>> {
    let (out, ambiguous) = unwrap_taus_reporting(raw);
    match ambiguous.first() {
        Some(&index) => Err(Error::UnwrapAmbiguity { index }),
        None => Ok(out),
    }
}

/// Like [`unwrap_taus`] but never fails: an undecidable jump of ±π/2 is
/// resolved towards the smaller branch and its index reported.
pub fn unwrap_taus_reporting(raw: &[Option<f64>]) -> (Vec<Option<f64>>, Vec<usize>) {
    let mut out = Vec::with_capacity(raw.len());
    let mut ambiguous = Vec::new();
    let mut last: Option<f64> = None;
    for (index, value) in raw.iter().enumerate() {
        let Some(tau) = *value else {
            out.push(None);
            continue;
        };
        let next = match last {
            None => {
                let mut t = tau - PI * libm::round(tau / PI);
                if t <= -FRAC_PI_2 {
                    t += PI;
                }
                t
            }
            Some(prev) => {
                let jump = tau - prev;
                let reduced = jump - PI * libm::round(jump / PI);
                if reduced.abs() > FRAC_PI_2 - 1e-9 {
                    ambiguous.push(index);
                }
                prev + reduced
            }
        };
        out.push(Some(next));
        last = Some(next);
    }
    (out, ambiguous)
}

/// Continuity-unwrapped copy of `points` (ordered by energy).
pub fn unwrap_phase(points: &[PhaseShiftPoint]) -> Result<Vec<PhaseShiftPoint>> {
    let raw: Vec<Option<f64>> = points.iter().map(|p| Some(principal_tau(p.s_matrix))).collect();
    let taus = unwrap_taus(&raw)?;
    Ok(points
        .iter()
        .zip(taus)
        .map(|(p, t)| PhaseShiftPoint {
            tau: t.unwrap_or(p.tau),
            ..*p
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{wave_operator_from_excess, BasisKind, RelativisticParams};
    use crate::kinematics::{nonrel_mode, nonrel_mode_with_alpha, wave_number_from_excess};
    use crate::potential::{
        nonrel_potential_matrix_scaled, potential_matrix, separable_coefficients, CouplingConstants, PotentialClass,
        PotentialSpec,
    };
    use alloc::vec;
    use proptest::prelude::*;

    struct Case {
        class: PotentialClass,
        nu: usize,
        lambda: f64,
        alpha: f64,
        ratio: f64,
    }

    const CASES: [Case; 6] = [
        Case { class: PotentialClass::Laguerre, nu: 0, lambda: 1.0, alpha: 0.4, ratio: 3.0 },
        Case { class: PotentialClass::Laguerre, nu: 1, lambda: 1.5, alpha: 0.5, ratio: 3.0 },
        Case { class: PotentialClass::Laguerre, nu: 2, lambda: 2.0, alpha: 0.5, ratio: 3.0 },
        Case { class: PotentialClass::Gaussian, nu: 0, lambda: 1.0, alpha: 0.5, ratio: 3.0 },
        Case { class: PotentialClass::Gaussian, nu: 1, lambda: 1.1, alpha: 0.4, ratio: 3.0 },
        Case { class: PotentialClass::Gaussian, nu: 2, lambda: 1.4, alpha: 0.3, ratio: 4.0 },
    ];

    fn prepare(c: &Case, e: f64, couplings: CouplingConstants) -> (KinematicSet, TridiagonalOperator, SymMatrix) {
        let p = RelativisticParams::s_wave(c.alpha, c.ratio, c.lambda).unwrap();
        let kind = c.class.natural_basis();
        let x = c.alpha * c.alpha * e;
        let op = wave_operator_from_excess(kind, &p, x, 4).unwrap();
        let kin = KinematicSet::build(kind, &p, x, &op).unwrap();
        let coeffs = separable_coefficients(&PotentialSpec::new(c.class, c.nu), &p).unwrap();
        (kin, op, potential_matrix(&coeffs, &couplings, c.alpha))
    }

    fn figure_couplings() -> CouplingConstants {
        CouplingConstants::new(0.5, 0.3, -0.2).unwrap()
    }

    #[test]
    fn zero_coupling_collapses_to_identity() {
        let zero = CouplingConstants::new(0.0, 0.0, 0.0).unwrap();
        for c in &CASES {
            for e in [0.05, 1.0, 7.5] {
                let (kin, op, v) = prepare(c, e, zero);
                let (s, aux) = analytic_s_matrix(&kin, &op, &v).unwrap();
                assert!((s - 1.0).norm() < 1e-12, "{:?} ν={} E={e}: {s}", c.class, c.nu);
                if c.nu == 1 {
                    assert!(aux.zeta.unwrap().abs() < 1e-15);
                    assert!((aux.eta.unwrap() - 1.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn unitarity_on_figure_grids() {
        for c in &CASES {
            for i in 0..100 {
                let e = 0.01 + (10.0 - 0.01) * i as f64 / 99.0;
                let (kin, op, v) = prepare(c, e, figure_couplings());
                let (s, aux) = analytic_s_matrix(&kin, &op, &v).unwrap();
                assert!((s.norm() - 1.0).abs() < 1e-10, "{:?} ν={} E={e}", c.class, c.nu);
                if let Some(eta) = aux.eta {
                    assert!(eta > 0.0);
                }
            }
        }
    }

    #[test]
    fn rank_two_matches_split_form() {
        // Same S-matrix written through η e^(iζ) directly:
        // (1 − T₀)(𝔍₀₀ + 𝔍₀₁R₁⁺) / (ηe^(iζ)[ηe^(iζ)(𝔍₀₀ + V₀₀) + R₁⁺(𝔍₀₁ + V₀₁)])
        for c in CASES.iter().filter(|c| c.nu == 1) {
            for e in [0.1, 2.0, 6.0] {
                let (kin, op, v) = prepare(c, e, figure_couplings());
                let (s, _) = s_matrix_nu1(&kin, &op, &v).unwrap();
                let (t0, r1) = (kin.t0, kin.r_plus(1));
                let (j00, j01) = (op.get(0, 0), op.get(0, 1));
                let w = (j01 - v.get(1, 1) * r1) / (j01 + v.get(0, 1));
                let zeta = libm::atan2(w.im, w.re);
                let other = t0 * (Complex64::i() * -2.0 * zeta).exp()
                    + (1.0 - t0) * (j00 + j01 * r1) / (w * (w * (j00 + v.get(0, 0)) + r1 * (j01 + v.get(0, 1))));
                assert!((s - other).norm() < 1e-12, "{:?} E={e}", c.class);
            }
        }
    }

    #[test]
    fn singular_denominators_are_reported() {
        let c = &CASES[1];
        let (kin, op, _) = prepare(c, 1.0, figure_couplings());
        // V₀₁ = −𝔍₀₁ kills the rank-two prefactor
        let mut v = SymMatrix::zeros(2);
        v.set(0, 1, -op.get(0, 1));
        match s_matrix_nu1(&kin, &op, &v) {
            Err(Error::SingularDenominator { factor, epsilon }) => {
                assert_eq!(factor, "J01 + V01");
                assert_eq!(epsilon, kin.epsilon);
            }
            other => panic!("{other:?}"),
        }
        let mut v = SymMatrix::zeros(3);
        v.set(1, 2, -op.get(1, 2));
        assert!(matches!(
            s_matrix_nu2(&kin, &op, &v),
            Err(Error::SingularDenominator { factor: "J12 + V12", .. })
        ));
        assert!(s_matrix_nu0(&kin, &op, &SymMatrix::zeros(2)).is_err());
    }

    #[test]
    fn yukawa_closed_form_values() {
        assert_eq!(nonrel_yukawa_tan(0.0, 1.0, 0.5).unwrap(), 0.0);
        for lambda in [0.7, 1.0, 2.0] {
            let t = nonrel_yukawa_tan(lambda / 2.0, lambda, 0.5).unwrap();
            let expect = -16.0 * PI * 0.5 / (lambda * lambda * lambda);
            assert!((t - expect).abs() < 1e-12 * expect.abs());
        }
        assert!(nonrel_yukawa_tan(-1.0, 1.0, 0.5).is_err());
    }

    fn nonrel_yukawa_tau(e: f64, alpha: Option<f64>) -> f64 {
        let base = RelativisticParams::s_wave(0.4, 3.0, 1.0).unwrap();
        let p = match alpha {
            Some(a) => nonrel_mode_with_alpha(&base, a),
            None => nonrel_mode(&base),
        };
        let x = p.alpha * p.alpha * e;
        let op = wave_operator_from_excess(BasisKind::Laguerre, &p, x, 2).unwrap();
        let kin = KinematicSet::build(BasisKind::Laguerre, &p, x, &op).unwrap();
        let coeffs = separable_coefficients(&PotentialSpec::new(PotentialClass::Laguerre, 0), &p).unwrap();
        let v = nonrel_potential_matrix_scaled(&coeffs, 0.5, p.alpha);
        principal_tau(s_matrix_nu0(&kin, &op, &v).unwrap())
    }

    #[test]
    fn relativistic_pipeline_reaches_yukawa_limit() {
        for i in 0..60 {
            let e = 0.05 + (10.0 - 0.05) * i as f64 / 59.0;
            let tau = nonrel_yukawa_tau(e, None);
            let exact = libm::atan(nonrel_yukawa_tan(libm::sqrt(2.0 * e), 1.0, 0.5).unwrap());
            let diff = tau - exact;
            let diff = diff - PI * libm::round(diff / PI);
            assert!(diff.abs() < 1e-6, "E={e}: {tau} vs {exact}");
            assert!((nonrel_yukawa_tau(e, Some(5e-5)) - tau).abs() < 1e-6);
        }
        // k = √2 at λ = 1 (E = 1)
        let p = nonrel_mode(&RelativisticParams::s_wave(0.4, 3.0, 1.0).unwrap());
        let k = wave_number_from_excess(p.alpha * p.alpha, &p).unwrap();
        assert!((k - libm::sqrt(2.0)).abs() < 1e-7);
    }

    #[test]
    fn unwrap_examples() {
        let same = [Some(0.3); 5];
        assert_eq!(unwrap_taus(&same).unwrap(), same.to_vec());
        assert_eq!(unwrap_taus(&[Some(1.4 + PI)]).unwrap(), vec![Some(1.4 + PI - PI)]);
        assert_eq!(unwrap_taus(&[Some(-FRAC_PI_2)]).unwrap(), vec![Some(FRAC_PI_2)]);
        let gapped = unwrap_taus(&[Some(1.5), None, Some(-1.5)]).unwrap();
        assert!(gapped[1].is_none());
        assert!((gapped[2].unwrap() - (PI - 1.5)).abs() < 1e-15);
        assert_eq!(
            unwrap_taus(&[Some(0.0), Some(FRAC_PI_2)]),
            Err(Error::UnwrapAmbiguity { index: 1 })
        );
    }

    #[test]
    fn unwrap_is_stable_under_grid_refinement() {
        // τ(x) = 3x winds through several branches on [0, 2]
        let curve = |n: usize| -> Vec<f64> {
            let raw: Vec<Option<f64>> = (0..n)
                .map(|i| {
                    let t = 3.0 * 2.0 * i as f64 / (n - 1) as f64;
                    Some(principal_tau(Complex64::from_polar(1.0, 2.0 * t)))
                })
                .collect();
            unwrap_taus(&raw).unwrap().into_iter().map(Option::unwrap).collect()
        };
        let coarse = curve(41);
        let fine = curve(81);
        for (i, c) in coarse.iter().enumerate() {
            assert!((c - fine[2 * i]).abs() < 1e-12);
            assert!((c - 3.0 * 2.0 * i as f64 / 40.0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn unwrapped_values_differ_from_principal_by_multiples_of_pi(
            steps in proptest::collection::vec(-1.2f64..1.2, 1..40),
        ) {
            let mut t = 0.0;
            let raw: Vec<Option<f64>> = steps
                .iter()
                .map(|d| {
                    t += d;
                    Some(principal_tau(Complex64::from_polar(1.0, 2.0 * t)))
                })
                .collect();
            let out = unwrap_taus(&raw).unwrap();
            for (r, o) in raw.iter().zip(&out) {
                let k = (o.unwrap() - r.unwrap()) / PI;
                prop_assert!((k - libm::round(k)).abs() < 1e-9);
            }
            for w in out.windows(2) {
                prop_assert!((w[1].unwrap() - w[0].unwrap()).abs() < FRAC_PI_2);
            }
        }
    }
}
