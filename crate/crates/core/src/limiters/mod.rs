//! Smoothness indicator, TVB limiter and scaling limiter.

mod indicator;
mod scaling;
mod tvb;

pub use indicator::{
    alpha_raw_1d, alpha_raw_2d, modal_energy_1d, modal_energy_2d, smooth_1d, smooth_2d, IndicatorConfig,
    IndicatorVariable,
};
pub use scaling::{scale_about_mean, scale_to_admissible, SCALING_EPS};
pub use tvb::{minmod, modified_minmod, tvb_limit_1d, TvbConfig};
