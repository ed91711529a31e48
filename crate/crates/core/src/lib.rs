//! Relativistic and nonrelativistic S-wave phase shifts for exponential-type
//! separable potentials, computed with the J-matrix method.
//!
//! The crate is `no_std` and needs only `alloc`. It is organised bottom-up:
//!
//! * [`specfun`]: Laguerre polynomials, Kummer's ₁F₁ and gamma ratios.
//! * [`quadrature`]: adaptive Gauss–Kronrod and Gauss–Laguerre rules.
//! * [`basis`]: Laguerre- and oscillator-type two-component spinor bases and
//!   their tridiagonal H₀, Ω and 𝔍 = H₀ − εΩ matrices.
//! * [`kinematics`]: wave number, initial sine/cosine-like coefficients and
//!   their extension through the three-term recursion.
//! * [`potential`]: separable-potential coefficients Iₙ, Jₙ and the
//!   finite-rank potential matrix.
//! * [`analytic_phase`]: closed-form S-matrices for ranks 1, 2 and 3.
//! * [`numeric_phase`]: the finite Green's-function route, valid for any rank.
//! * [`solver`]: ties the pieces together for a single energy.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analytic_phase;
pub mod basis;
mod error;
pub mod kinematics;
pub mod linalg;
pub mod numeric_phase;
pub mod potential;
pub mod quadrature;
pub mod solver;
pub mod specfun;

pub use error::{Error, Integral, Result};
pub use num_complex::Complex64;

pub use analytic_phase::{AuxiliaryAngles, PhaseShiftPoint};
pub use basis::{BasisKind, RelativisticParams, TridiagonalOperator};
pub use kinematics::{EnergyMapping, KinematicSet};
pub use linalg::SymMatrix;
pub use potential::{CouplingConstants, PotentialClass, PotentialSpec, SeparableCoefficients};
pub use solver::{Method, Scatterer};
