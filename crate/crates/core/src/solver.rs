//! Single-energy driver tying basis, kinematics, potential and the two
//! phase-shift routes together.

use num_complex::Complex64;

use crate::analytic_phase::{analytic_s_matrix, PhaseShiftPoint};
use crate::basis::{wave_operator_from_excess, BasisKind, RelativisticParams};
use crate::kinematics::{nonrel_mode, EnergyMapping, KinematicSet};
use crate::linalg::SymMatrix;
use crate::numeric_phase::numeric_s_matrix;
use crate::potential::{
    nonrel_potential_matrix_scaled, potential_matrix, separable_coefficients, CouplingConstants,
    PotentialSpec, SeparableCoefficients,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed-form S-matrix; only for ν ≤ 2.
    Analytic,
    /// Finite Green's function in an N×N box.
    Numeric { n_basis: usize },
}

impl Method {
    /// Default box size for the numeric route.
    pub fn default_n_basis(nu: usize) -> usize {
        nu + 10
    }

    /// Analytic when a closed form exists, numeric otherwise.
    pub fn auto(nu: usize) -> Self {
        if nu <= 2 {
            Method::Analytic
        } else {
            Method::Numeric {
                n_basis: Self::default_n_basis(nu),
            }
        }
    }
}

/// A potential in a basis, ready to be evaluated at any energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Scatterer {
    spec: PotentialSpec,
    params: RelativisticParams,
    kind: BasisKind,
    coeffs: SeparableCoefficients,
    v: SymMatrix,
}

impl Scatterer {
    /// Full relativistic problem with all three couplings.
    pub fn relativistic(
        spec: PotentialSpec,
        params: RelativisticParams,
        couplings: &CouplingConstants,
    ) -> Result<Self> {
        let coeffs = separable_coefficients(&spec, &params)?;
        let v = potential_matrix(&coeffs, couplings, params.alpha);
        Ok(Self {
            spec,
            params,
            kind: spec.class.natural_basis(),
            coeffs,
            v,
        })
    }

    /// Nonrelativistic limit (α = 10⁻⁴, C = α/2) with the V₊ coupling only.
    pub fn nonrelativistic(
        spec: PotentialSpec,
        params: &RelativisticParams,
        couplings: &CouplingConstants,
    ) -> Result<Self> {
        Self::nonrelativistic_with(spec, nonrel_mode(params), couplings)
    }

    /// As [`Scatterer::nonrelativistic`] with explicit limit parameters.
    pub fn nonrelativistic_with(
        spec: PotentialSpec,
        limit: RelativisticParams,
        couplings: &CouplingConstants,
    ) -> Result<Self> {
        let coeffs = separable_coefficients(&spec, &limit)?;
        let v = nonrel_potential_matrix_scaled(&coeffs, couplings.v_plus, limit.alpha);
        Ok(Self {
            spec,
            params: limit,
            kind: spec.class.natural_basis(),
            coeffs,
            v,
        })
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn params(&self) -> &RelativisticParams {
        &self.params
    }

    pub fn coefficients(&self) -> &SeparableCoefficients {
        &self.coeffs
    }

    pub fn potential(&self) -> &SymMatrix {
        &self.v
    }

    pub fn energy(&self, nr_energy: f64) -> EnergyMapping {
        EnergyMapping::from_nr_energy(nr_energy, self.params.alpha)
    }

    /// e^(2iτ) at the nonrelativistic energy `nr_energy` (hartree).
    pub fn s_matrix(&self, nr_energy: f64, method: Method) -> Result<Complex64> {
        let excess = self.energy(nr_energy).excess;
        let rank = self.spec.rank();
        let dim = match method {
            Method::Analytic => {
                if rank > 3 {
                    return Err(Error::Config("closed forms exist only for nu <= 2"));
                }
                3
            }
            Method::Numeric { n_basis } => {
                if n_basis < rank {
                    return Err(Error::Rank { n_basis, rank });
                }
                n_basis.max(1) + 1
            }
        };
        let op = wave_operator_from_excess(self.kind, &self.params, excess, dim.max(2))?;
        let kin = KinematicSet::build(self.kind, &self.params, excess, &op)?;
        match method {
            Method::Analytic => analytic_s_matrix(&kin, &op, &self.v).map(|(s, _)| s),
            Method::Numeric { n_basis } => numeric_s_matrix(&op, &self.v, n_basis, &kin),
        }
    }

    /// A single point with its principal phase.
    pub fn point(&self, nr_energy: f64, method: Method) -> Result<PhaseShiftPoint> {
        let map = self.energy(nr_energy);
        let s = self.s_matrix(nr_energy, method)?;
        Ok(PhaseShiftPoint::new(nr_energy, map.epsilon, s))
    }
}
