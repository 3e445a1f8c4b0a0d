//! Solver configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flux_correction::SplitWeights;
use crate::limiters::{IndicatorConfig, TvbConfig};
use crate::subcell::LowOrderScheme;

/// Shock-capturing strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimiterKind {
    /// Blending with the first-order subcell scheme.
    BlendFo,
    /// Blending with the MUSCL-Hancock subcell scheme.
    #[default]
    BlendMh,
    /// TVB post-processing of the pure high-order update.
    Tvb,
    /// Pure high-order update.
    None,
}

impl LimiterKind {
    pub fn low_order(&self) -> Option<LowOrderScheme> {
        match self {
            LimiterKind::BlendFo => Some(LowOrderScheme::FirstOrder),
            LimiterKind::BlendMh => Some(LowOrderScheme::MusclHancock),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LimiterKind::BlendFo => "blend-fo",
            LimiterKind::BlendMh => "blend-mh",
            LimiterKind::Tvb => "tvb",
            LimiterKind::None => "none",
        }
    }
}

impl std::str::FromStr for LimiterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blend-fo" => Ok(LimiterKind::BlendFo),
            "blend-mh" => Ok(LimiterKind::BlendMh),
            "tvb" => Ok(LimiterKind::Tvb),
            "none" => Ok(LimiterKind::None),
            _ => Err(Error::Config(format!("unknown limiter {s}; expected blend-fo, blend-mh, tvb or none"))),
        }
    }
}

/// Default `CFL(N)` for degrees 1 to 4.
pub const DEFAULT_CFL: [f64; 4] = [0.259, 0.170, 0.103, 0.069];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TimeConfig {
    pub safety: f64,
    /// `CFL(N)` indexed by `N - 1`.
    pub cfl: [f64; 4],
    pub fixed_dt: Option<f64>,
    /// Include ghost elements in the time-step estimate.
    pub include_ghosts: bool,
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig { safety: 0.98, cfl: DEFAULT_CFL, fixed_dt: None, include_ghosts: false }
    }
}

impl TimeConfig {
    pub fn cfl_for(&self, degree: usize) -> f64 {
        self.cfl[degree.clamp(1, 4) - 1]
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(Error::Config(format!("CFL safety factor must lie in (0, 1], got {}", self.safety)));
        }
        if self.cfl.iter().any(|c| !(*c > 0.0)) {
            return Err(Error::Config("CFL table entries must be positive".into()));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0) {
                return Err(Error::Config(format!("fixed time step must be positive, got {dt}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub limiter: LimiterKind,
    pub indicator: IndicatorConfig,
    pub tvb_m: f64,
    pub tvb_characteristic: bool,
    /// Admissibility-preserving correction of interface fluxes.
    pub flux_correction: bool,
    pub scaling_limiter: bool,
    pub split: SplitWeights,
    pub max_retries: usize,
    /// Compare high- and low-order element means every step.
    pub audit: bool,
    /// Evaluate the MUSCL-Hancock time-step conditions every step (1-D).
    pub cfl_diagnostic: bool,
    /// Overrides the indicator with a constant blending coefficient.
    pub force_alpha: Option<f64>,
    /// Overrides the MUSCL-Hancock minmod parameter `2 - alpha`.
    pub mh_beta: Option<f64>,
    pub time: TimeConfig,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            limiter: LimiterKind::BlendMh,
            indicator: IndicatorConfig::default(),
            tvb_m: 0.0,
            tvb_characteristic: true,
            flux_correction: true,
            scaling_limiter: true,
            split: SplitWeights::Equal,
            max_retries: 3,
            audit: false,
            cfl_diagnostic: false,
            force_alpha: None,
            mh_beta: None,
            time: TimeConfig::default(),
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        self.indicator.validate()?;
        self.time.validate()?;
        if let Some(a) = self.force_alpha {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::Config(format!("forced alpha must lie in [0, 1], got {a}")));
            }
        }
        if let Some(b) = self.mh_beta {
            if !(1.0..=2.0).contains(&b) {
                return Err(Error::Config(format!("MUSCL-Hancock beta must lie in [1, 2], got {b}")));
            }
        }
        if self.tvb_m < 0.0 {
            return Err(Error::Config("TVB parameter must be non-negative".into()));
        }
        Ok(())
    }

    pub fn tvb(&self) -> TvbConfig {
        TvbConfig { m: self.tvb_m, characteristic: self.tvb_characteristic }
    }

    pub fn blending(&self) -> bool {
        self.limiter.low_order().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(SolverOptions::default().validate().is_ok());
        assert_eq!(TimeConfig::default().cfl_for(4), 0.069);
    }

    #[test]
    fn zero_safety_rejected() {
        let mut o = SolverOptions::default();
        o.time.safety = 0.0;
        assert!(o.validate().is_err());
    }

    #[test]
    fn limiter_names_round_trip() {
        for l in [LimiterKind::BlendFo, LimiterKind::BlendMh, LimiterKind::Tvb, LimiterKind::None] {
            assert_eq!(l.name().parse::<LimiterKind>().unwrap(), l);
        }
        assert!("weno".parse::<LimiterKind>().is_err());
    }
}
