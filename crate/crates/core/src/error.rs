use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which of the two separable integrals a table entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integral {
    I,
    J,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A special function was called outside its domain.
    Domain(&'static str),
    /// Invalid physical or basis parameters.
    Config(&'static str),
    /// The energy lies outside the scattering branch of k(ε).
    KinematicDomain { epsilon: f64 },
    /// The kinematical recursion blew up at index `n`.
    NumericalBreakdown { n: usize },
    /// A closed-form coefficient disagrees with direct quadrature.
    TableMismatch {
        integral: Integral,
        index: usize,
        closed_form: f64,
        quadrature: f64,
    },
    /// Only κ = 0 is supported for scattering.
    UnsupportedKappa { kappa: i32 },
    /// A denominator of an analytic S-matrix vanished.
    SingularDenominator { factor: &'static str, epsilon: f64 },
    /// The confined (inner) wave operator is singular at this energy.
    SingularInner { epsilon: f64 },
    /// Neighbouring phases differ by an undecidable half-branch.
    UnwrapAmbiguity { index: usize },
    /// The inner basis is smaller than the rank of the potential.
    Rank { n_basis: usize, rank: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::KinematicDomain { epsilon } => {
                write!(f, "energy ε = {epsilon} is outside the scattering branch")
            }
            Error::NumericalBreakdown { n } => {
                write!(f, "kinematical recursion broke down at n = {n}")
            }
            Error::TableMismatch {
                integral,
                index,
                closed_form,
                quadrature,
            } => write!(
                f,
                "closed-form {integral:?}_{index} = {closed_form:e} disagrees with quadrature {quadrature:e}"
            ),
            Error::UnsupportedKappa { kappa } => {
                write!(f, "scattering requires κ = 0, got κ = {kappa}")
            }
            Error::SingularDenominator { factor, epsilon } => {
                write!(f, "singular denominator `{factor}` at ε = {epsilon}")
            }
            Error::SingularInner { epsilon } => {
                write!(f, "inner wave operator is singular at ε = {epsilon}")
            }
            Error::UnwrapAmbiguity { index } => {
                write!(f, "phase jump at point {index} is ambiguous; refine the grid")
            }
            Error::Rank { n_basis, rank } => {
                write!(f, "inner basis of size {n_basis} cannot hold a rank-{rank} potential")
            }
        }
    }
}

impl core::error::Error for Error {}
