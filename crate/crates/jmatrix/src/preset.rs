use std::fmt;
use std::str::FromStr;

use jmatrix_core::{CouplingConstants, PotentialClass, PotentialSpec, RelativisticParams};

use crate::config::SweepConfig;

pub const V_PLUS: f64 = 0.5;
pub const V_MINUS: f64 = 0.3;
pub const V_ZERO: f64 = -0.2;

/// Parameter sets of the eight phase-shift figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig1d,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
}

impl FigurePreset {
    pub fn all() -> [FigurePreset; 8] {
        use FigurePreset::*;
        [Fig1a, Fig1b, Fig1c, Fig1d, Fig2a, Fig2b, Fig2c, Fig2d]
    }

    pub fn id(self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "fig1a",
            FigurePreset::Fig1b => "fig1b",
            FigurePreset::Fig1c => "fig1c",
            FigurePreset::Fig1d => "fig1d",
            FigurePreset::Fig2a => "fig2a",
            FigurePreset::Fig2b => "fig2b",
            FigurePreset::Fig2c => "fig2c",
            FigurePreset::Fig2d => "fig2d",
        }
    }

    /// (class, ν, λ, α, α/C).
    pub fn geometry(self) -> (PotentialClass, usize, f64, f64, f64) {
        use PotentialClass::{Gaussian, Laguerre};
        match self {
            FigurePreset::Fig1a => (Laguerre, 0, 1.0, 0.4, 3.0),
            FigurePreset::Fig1b => (Laguerre, 1, 1.5, 0.5, 3.0),
            FigurePreset::Fig1c => (Laguerre, 2, 2.0, 0.5, 3.0),
            FigurePreset::Fig1d => (Laguerre, 3, 2.5, 0.2, 3.0),
            FigurePreset::Fig2a => (Gaussian, 0, 1.0, 0.5, 3.0),
            FigurePreset::Fig2b => (Gaussian, 1, 1.1, 0.4, 3.0),
            FigurePreset::Fig2c => (Gaussian, 2, 1.4, 0.3, 4.0),
            FigurePreset::Fig2d => (Gaussian, 3, 1.5, 0.3, 4.0),
        }
    }

    pub fn config(self) -> SweepConfig {
        let (class, nu, lambda, alpha, ratio) = self.geometry();
        let params = RelativisticParams::s_wave(alpha, ratio, lambda).expect("preset parameters are valid");
        let couplings = CouplingConstants::new(V_PLUS, V_MINUS, V_ZERO).expect("finite couplings");
        SweepConfig::new(PotentialSpec::new(class, nu), params, couplings)
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FigurePreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigurePreset::all()
            .into_iter()
            .find(|p| p.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown preset `{s}` (expected fig1a..fig2d)"))
    }
}
