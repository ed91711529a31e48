use rayon::prelude::*;

use jmatrix_core::analytic_phase::{principal_tau, unwrap_taus_reporting};
use jmatrix_core::{Complex64, Method, Scatterer};

use crate::config::{ConfigError, SweepConfig, SweepMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFlag {
    Ok,
    /// At least one requested column could not be evaluated.
    Singular,
}

impl RowFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RowFlag::Ok => "ok",
            RowFlag::Singular => "singular",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub energy: f64,
    pub tau_rel: Option<f64>,
    pub tau_rel_unwrapped: Option<f64>,
    pub tau_nonrel: Option<f64>,
    pub tau_nonrel_unwrapped: Option<f64>,
    pub flag: RowFlag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
    pub notices: Vec<String>,
}

impl SweepTable {
    /// True when not a single relativistic value could be computed.
    pub fn all_failed(&self) -> bool {
        self.rows.iter().all(|r| r.tau_rel.is_none())
    }
}

fn scatterers(config: &SweepConfig) -> Result<(Scatterer, Option<Scatterer>), ConfigError> {
    let rel = Scatterer::relativistic(config.spec, config.params, &config.couplings)?;
    let nonrel = if config.emit_nonrel {
        Some(Scatterer::nonrelativistic(config.spec, &config.params, &config.couplings)?)
    } else {
        None
    };
    Ok((rel, nonrel))
}

fn column(
    label: &str,
    scatterer: &Scatterer,
    grid: &[f64],
    method: Method,
    notices: &mut Vec<String>,
) -> (Vec<Option<f64>>, Vec<Option<f64>>) {
    let results: Vec<_> = grid.par_iter().map(|&e| scatterer.s_matrix(e, method)).collect();
    let raw: Vec<Option<f64>> = results
        .iter()
        .zip(grid)
        .map(|(r, e)| match r {
            Ok(s) => Some(principal_tau(*s)),
            Err(err) => {
                notices.push(format!("{label}: E = {e}: {err}"));
                None
            }
        })
        .collect();
    let (unwrapped, ambiguous) = unwrap_taus_reporting(&raw);
    for i in ambiguous {
        notices.push(format!(
            "{label}: phase jump of about pi/2 before E = {}; branch chosen by proximity",
            grid[i]
        ));
    }
    (raw, unwrapped)
}

/// Evaluates the configured grid; failing points become `singular` rows.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable, ConfigError> {
    config.validate()?;
    let mut notices = Vec::new();
    if config.method == SweepMethod::AnalyticAuto && config.spec.nu > 2 {
        notices.push(format!(
            "no closed form for nu = {}; using the numeric route with n-basis {}",
            config.spec.nu,
            config.n_basis()
        ));
    }
    let (rel, nonrel) = scatterers(config)?;
    let grid = config.grid();
    let method = config.resolved_method();
    let (rel_raw, rel_unw) = column("relativistic", &rel, &grid, method, &mut notices);
    let (nr_raw, nr_unw) = match &nonrel {
        Some(s) => column("nonrelativistic", s, &grid, method, &mut notices),
        None => (vec![None; grid.len()], vec![None; grid.len()]),
    };
    let rows = grid
        .iter()
        .enumerate()
        .map(|(i, &energy)| {
            let bad = rel_raw[i].is_none() || (config.emit_nonrel && nr_raw[i].is_none());
            SweepRow {
                energy,
                tau_rel: rel_raw[i],
                tau_rel_unwrapped: rel_unw[i],
                tau_nonrel: nr_raw[i],
                tau_nonrel_unwrapped: nr_unw[i],
                flag: if bad { RowFlag::Singular } else { RowFlag::Ok },
            }
        })
        .collect();
    Ok(SweepTable {
        config: config.clone(),
        rows,
        notices,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// Largest |τ_analytic − τ_numeric| (mod π) over all compared points.
    pub max_deviation: f64,
    pub compared: usize,
    /// Points where either route failed.
    pub skipped: usize,
}

pub const VERIFY_TOLERANCE: f64 = 1e-9;

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.compared > 0 && self.max_deviation <= VERIFY_TOLERANCE
    }
}

fn tau_distance(a: Complex64, b: Complex64) -> f64 {
    (a * b.conj()).arg().abs() / 2.0
}

/// Runs both routes on the grid. `None` when ν > 2 has no closed form.
pub fn verify(config: &SweepConfig) -> Result<Option<VerifyReport>, ConfigError> {
    config.validate()?;
    if config.spec.nu > 2 {
        return Ok(None);
    }
    let (rel, nonrel) = scatterers(config)?;
    let numeric = config.numeric();
    let grid = config.grid();
    let per_point: Vec<Option<f64>> = grid
        .par_iter()
        .flat_map_iter(|&e| {
            std::iter::once(&rel).chain(nonrel.as_ref()).map(move |s| {
                let a = s.s_matrix(e, Method::Analytic).ok()?;
                let n = s.s_matrix(e, numeric).ok()?;
                Some(tau_distance(a, n))
            })
        })
        .collect();
    let compared = per_point.iter().flatten().count();
    Ok(Some(VerifyReport {
        max_deviation: per_point.iter().flatten().fold(0.0, |m: f64, d| m.max(*d)),
        compared,
        skipped: per_point.len() - compared,
    }))
}
