//! Phase shifts for a potential of any finite rank from the finite
//! Green's function of the inner N×N problem.
//!
//! Inside the box the total operator 𝔍 + V is inverted; outside it the
//! solution is a combination of the free sₙ and cₙ, and matching at the
//! boundary row N−1 fixes tan τ.

use alloc::vec;

use num_complex::Complex64;

use crate::basis::TridiagonalOperator;
use crate::kinematics::KinematicSet;
use crate::linalg::{solve, SymMatrix};
use crate::{Error, Result};

/// Pivots smaller than this fraction of the largest entry count as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// Everything the matching step needs.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProblem {
    pub n_basis: usize,
    /// 𝔍 + V on indices 0..N−1.
    pub total_wave_op: SymMatrix,
    /// 𝔍_{N−1,N}; the potential vanishes there by rank.
    pub boundary_coupling: f64,
    /// (s_{N−1}, s_N, c_{N−1}, c_N).
    pub tail: (f64, f64, f64, f64),
    pub epsilon: f64,
}

/// Embeds `v` in the leading block of the N×N free operator.
pub fn assemble_inner(
    wave_op: &TridiagonalOperator,
    v: &SymMatrix,
    n_basis: usize,
    kin: &KinematicSet,
) -> Result<InnerProblem> {
    if n_basis < v.dim() || n_basis == 0 {
        return Err(Error::Rank {
            n_basis,
            rank: v.dim(),
        });
    }
    if wave_op.dim() < n_basis + 1 || kin.s.len() < n_basis + 1 || kin.c.len() < n_basis + 1 {
        return Err(Error::Config("wave operator and kinematics need n_basis + 1 rows"));
    }
    let rank = v.dim();
    let total = SymMatrix::from_upper(n_basis, |i, j| {
        let free = wave_op.get(i, j);
        if i < rank && j < rank {
            free + v.get(i, j)
        } else {
            free
        }
    });
    let n = n_basis;
    Ok(InnerProblem {
        n_basis,
        total_wave_op: total,
        boundary_coupling: wave_op.get(n - 1, n),
        tail: (kin.s[n - 1], kin.s[n], kin.c[n - 1], kin.c[n]),
        epsilon: kin.epsilon,
    })
}

/// Element (N−1, N−1) of the inverse, from a single pivoted solve against
/// the last unit vector.
pub fn inner_green_element(matrix: &SymMatrix, epsilon: f64) -> Result<f64> {
    let n = matrix.dim();
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    let floor = PIVOT_TOLERANCE * matrix.max_abs();
    let x = solve(matrix, &rhs, floor).ok_or(Error::SingularInner { epsilon })?;
    let g = x[n - 1];
    if !g.is_finite() {
        return Err(Error::SingularInner { epsilon });
    }
    Ok(g)
}

/// S-matrix from tan τ = −(s_{N−1} + g𝔍_{N−1,N}s_N)/(c_{N−1} + g𝔍_{N−1,N}c_N).
pub fn phase_shift_numeric(problem: &InnerProblem) -> Result<Complex64> {
    let g = inner_green_element(&problem.total_wave_op, problem.epsilon)?;
    let gb = g * problem.boundary_coupling;
    let (s0, s1, c0, c1) = problem.tail;
    let num = s0 + gb * s1;
    let den = c0 + gb * c1;
    let z = Complex64::new(den, num);
    if z.norm() == 0.0 || !z.norm().is_finite() {
        return Err(Error::SingularInner {
            epsilon: problem.epsilon,
        });
    }
    Ok(z.conj() / z)
}

/// Convenience wrapper: assemble and match in one call.
pub fn numeric_s_matrix(
    wave_op: &TridiagonalOperator,
    v: &SymMatrix,
    n_basis: usize,
    kin: &KinematicSet,
) -> Result<Complex64> {
    phase_shift_numeric(&assemble_inner(wave_op, v, n_basis, kin)?)
}

/// Rescales the tail by a common factor; used to check ratio invariance.
pub fn scaled_tail(problem: &InnerProblem, factor: f64) -> InnerProblem {
    let (a, b, c, d) = problem.tail;
    InnerProblem {
        tail: (a * factor, b * factor, c * factor, d * factor),
        ..problem.clone()
    }
}
