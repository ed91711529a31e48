use std::fmt;

use jmatrix_core::{
    CouplingConstants, Method, PotentialClass, PotentialSpec, RelativisticParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMethod {
    /// Closed forms for ν ≤ 2, the numeric route otherwise.
    AnalyticAuto,
    NumericOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<jmatrix_core::Error> for ConfigError {
    fn from(e: jmatrix_core::Error) -> Self {
        ConfigError(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub spec: PotentialSpec,
    pub params: RelativisticParams,
    pub couplings: CouplingConstants,
    /// Nonrelativistic energy bounds in hartree.
    pub e_min: f64,
    pub e_max: f64,
    pub n_points: usize,
    pub method: SweepMethod,
    /// Box size of the numeric route; `None` picks ν + 10.
    pub n_basis: Option<usize>,
    pub emit_nonrel: bool,
    pub log_grid: bool,
}

pub const DEFAULT_E_MIN: f64 = 0.01;
pub const DEFAULT_E_MAX: f64 = 10.0;
pub const DEFAULT_POINTS: usize = 400;

impl SweepConfig {
    pub fn new(spec: PotentialSpec, params: RelativisticParams, couplings: CouplingConstants) -> Self {
        Self {
            spec,
            params,
            couplings,
            e_min: DEFAULT_E_MIN,
            e_max: DEFAULT_E_MAX,
            n_points: DEFAULT_POINTS,
            method: SweepMethod::AnalyticAuto,
            n_basis: None,
            emit_nonrel: true,
            log_grid: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.e_min > 0.0 && self.e_min < self.e_max && self.e_max.is_finite()) {
            return Err(ConfigError(format!(
                "energy range must satisfy 0 < emin < emax (got {} .. {})",
                self.e_min, self.e_max
            )));
        }
        if self.n_points < 2 {
            return Err(ConfigError("at least two grid points are needed".into()));
        }
        if self.params.kappa != 0 {
            return Err(ConfigError("only kappa = 0 is supported".into()));
        }
        // re-run the core checks on the raw fields
        RelativisticParams::new(self.params.alpha, self.params.cc, self.params.lambda, 0)?;
        CouplingConstants::new(self.couplings.v_plus, self.couplings.v_minus, self.couplings.v_zero)?;
        if let Some(n) = self.n_basis {
            if n < self.spec.rank() {
                return Err(ConfigError(format!(
                    "n-basis {n} is smaller than the potential rank {}",
                    self.spec.rank()
                )));
            }
        }
        Ok(())
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis.unwrap_or_else(|| Method::default_n_basis(self.spec.nu))
    }

    pub fn numeric(&self) -> Method {
        Method::Numeric {
            n_basis: self.n_basis(),
        }
    }

    /// The route actually used for the relativistic and nonrelativistic columns.
    pub fn resolved_method(&self) -> Method {
        match self.method {
            SweepMethod::AnalyticAuto if self.spec.nu <= 2 => Method::Analytic,
            _ => self.numeric(),
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.n_points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.e_max;
                }
                let t = i as f64 / (n - 1) as f64;
                if self.log_grid {
                    self.e_min * (self.e_max / self.e_min).powf(t)
                } else {
                    self.e_min + t * (self.e_max - self.e_min)
                }
            })
            .collect()
    }

    /// `#`-prefixed lines echoing every parameter.
    pub fn echo(&self) -> Vec<String> {
        let class = match self.spec.class {
            PotentialClass::Laguerre => "laguerre",
            PotentialClass::Gaussian => "gaussian",
        };
        let method = match self.method {
            SweepMethod::AnalyticAuto => "auto",
            SweepMethod::NumericOnly => "numeric",
        };
        let p = &self.params;
        let c = &self.couplings;
        vec![
            format!("# class={class} nu={}", self.spec.nu),
            format!(
                "# lambda={} alpha={} cc={} cc_ratio={} kappa={}",
                p.lambda,
                p.alpha,
                p.cc,
                p.alpha / p.cc,
                p.kappa
            ),
            format!("# vplus={} vminus={} vzero={}", c.v_plus, c.v_minus, c.v_zero),
            format!(
                "# emin={} emax={} points={} grid={}",
                self.e_min,
                self.e_max,
                self.n_points,
                if self.log_grid { "log" } else { "linear" }
            ),
            format!(
                "# method={method} n_basis={} nonrel={}",
                self.n_basis(),
                self.emit_nonrel
            ),
        ]
    }
}
