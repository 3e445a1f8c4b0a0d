//! Modal-energy smoothness indicator and blending coefficients.

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::state::State;

/// Which scalar drives the indicator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndicatorVariable {
    /// The equation's preferred quantity (`rho * p` for Euler, `u` for scalars).
    #[default]
    Natural,
    /// A single conserved component.
    Conserved(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IndicatorConfig {
    pub a: f64,
    pub c: f64,
    pub s: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub variable: IndicatorVariable,
}

impl Default for IndicatorConfig {
    fn default() -> Self {
        IndicatorConfig {
            a: 0.5,
            c: 1.8,
            s: 9.21024,
            alpha_min: 0.001,
            alpha_max: 1.0,
            variable: IndicatorVariable::Natural,
        }
    }
}

impl IndicatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_min > 0.0 && self.alpha_min < self.alpha_max && self.alpha_max <= 1.0) {
            return Err(Error::Config(format!(
                "need 0 < alpha_min < alpha_max <= 1, got {} and {}",
                self.alpha_min, self.alpha_max
            )));
        }
        if !(self.s > 0.0) || !(self.a > 0.0) {
            return Err(Error::Config("indicator sharpness and amplitude must be positive".into()));
        }
        Ok(())
    }

    /// `T = a 10^(-c (N+1)^(1/4))`
    pub fn threshold(&self, degree: usize) -> f64 {
        self.a * 10f64.powf(-self.c * ((degree + 1) as f64).powf(0.25))
    }

    /// Logistic map from energy to the raw coefficient.
    pub fn logistic(&self, energy: f64, threshold: f64) -> f64 {
        1.0 / (1.0 + (-(self.s / threshold) * (energy - threshold)).exp())
    }

    pub fn clip(&self, raw: f64) -> f64 {
        let a = if raw < self.alpha_min {
            0.0
        } else if raw > 1.0 - self.alpha_min {
            1.0
        } else {
            raw
        };
        a.min(self.alpha_max)
    }

    pub fn quantity<E: Equation<V>, const V: usize>(&self, eq: &E, u: &State<V>) -> f64 {
        match self.variable {
            IndicatorVariable::Natural => eq.indicator_quantity(u),
            IndicatorVariable::Conserved(k) => u[k.min(V - 1)],
        }
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Projection `int q L_k(2 xi - 1)` from an orthonormal coefficient. The
/// energy fractions depend on how modes are weighted against each other, so
/// the indicator works with plain projections rather than orthonormal ones.
fn projection_scale(k: usize) -> f64 {
    1.0 / (2.0 * k as f64 + 1.0).sqrt()
}

/// Highest-mode energy fraction of nodal data in one element.
///
/// For degree 1 only the top-mode fraction is used: the second fraction
/// compares the mean with itself and would always equal one.
pub fn modal_energy_1d(basis: &Basis, q: &[f64]) -> f64 {
    let n = basis.degree;
    let mut m = [0.0; 16];
    for (k, row) in basis.legendre.iter().enumerate() {
        m[k] = projection_scale(k) * row.iter().zip(q).map(|(a, b)| a * b).sum::<f64>();
    }
    let m = &m[..=n];
    let total: f64 = m.iter().map(|c| c * c).sum();
    let lower = total - m[n] * m[n];
    let top = ratio(m[n] * m[n], total);
    if n < 2 {
        return top;
    }
    top.max(ratio(m[n - 1] * m[n - 1], lower))
}

/// Tensor-product version: shells `max(i, j) = N` and `max(i, j) = N - 1`.
/// `q` is node-major with `q[j * n + i]`.
pub fn modal_energy_2d(basis: &Basis, q: &[f64]) -> f64 {
    let n = basis.n_nodes();
    let deg = basis.degree;
    // separable transform: rows then columns
    let mut tmp = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            tmp[j * n + k] = (0..n).map(|i| basis.legendre[k][i] * q[j * n + i]).sum();
        }
    }
    let mut total = 0.0;
    let mut clip1 = 0.0;
    let mut clip2 = 0.0;
    for l in 0..n {
        for k in 0..n {
            let c = projection_scale(k) * projection_scale(l) * (0..n).map(|j| basis.legendre[l][j] * tmp[j * n + k]).sum::<f64>();
            let e = c * c;
            total += e;
            if k < deg && l < deg {
                clip1 += e;
            }
            if deg >= 1 && k + 1 < deg && l + 1 < deg {
                clip2 += e;
            }
        }
    }
    let top = ratio(total - clip1, total);
    if deg < 2 {
        return top;
    }
    top.max(ratio(clip1 - clip2, clip1))
}

/// Raw (unclipped) blending coefficient of a 1-D element.
pub fn alpha_raw_1d<E: Equation<V>, const V: usize>(
    eq: &E,
    basis: &Basis,
    cfg: &IndicatorConfig,
    u: &[State<V>],
) -> f64 {
    let mut q = [0.0; 16];
    for (x, s) in q.iter_mut().zip(u) {
        *x = cfg.quantity(eq, s);
    }
    let e = modal_energy_1d(basis, &q[..u.len()]);
    cfg.logistic(e, cfg.threshold(basis.degree))
}

pub fn alpha_raw_2d<E: Equation<V>, const V: usize>(
    eq: &E,
    basis: &Basis,
    cfg: &IndicatorConfig,
    u: &[State<V>],
) -> f64 {
    let q: Vec<f64> = u.iter().map(|s| cfg.quantity(eq, s)).collect();
    let e = modal_energy_2d(basis, &q);
    cfg.logistic(e, cfg.threshold(basis.degree))
}

/// One two-buffer smoothing pass `alpha_e = max(alpha_e, alpha_nb / 2)` in 1-D.
pub fn smooth_1d(alpha: &[f64], periodic: bool) -> Vec<f64> {
    let n = alpha.len();
    (0..n)
        .map(|e| {
            let mut a = alpha[e];
            let left = if e > 0 { Some(e - 1) } else if periodic { Some(n - 1) } else { None };
            let right = if e + 1 < n { Some(e + 1) } else if periodic { Some(0) } else { None };
            for nb in [left, right].into_iter().flatten() {
                a = a.max(0.5 * alpha[nb]);
            }
            a
        })
        .collect()
}

/// 2-D smoothing over the four face neighbours; `alpha[ey * nx + ex]`.
pub fn smooth_2d(alpha: &[f64], nx: usize, ny: usize, periodic: [bool; 2]) -> Vec<f64> {
    let neighbour = |i: usize, n: usize, d: isize, per: bool| -> Option<usize> {
        let j = i as isize + d;
        if j >= 0 && (j as usize) < n {
            Some(j as usize)
        } else if per {
            Some(j.rem_euclid(n as isize) as usize)
        } else {
            None
        }
    };
    let mut out = alpha.to_vec();
    for ey in 0..ny {
        for ex in 0..nx {
            let mut a = alpha[ey * nx + ex];
            for d in [-1isize, 1] {
                if let Some(x) = neighbour(ex, nx, d, periodic[0]) {
                    a = a.max(0.5 * alpha[ey * nx + x]);
                }
                if let Some(y) = neighbour(ey, ny, d, periodic[1]) {
                    a = a.max(0.5 * alpha[y * nx + ex]);
                }
            }
            out[ey * nx + ex] = a;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{legendre, NodeFamily};
    use crate::equations::{euler_prim_to_cons_1d, Euler1D};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn constant_data_gives_floor_coefficient() {
        let cfg = IndicatorConfig::default();
        let basis = Basis::new(4, NodeFamily::GaussLegendre).unwrap();
        let eq = Euler1D::new(1.4);
        let u = vec![euler_prim_to_cons_1d(&[1.0, 0.3, 2.0], 1.4); 5];
        let a = alpha_raw_1d(&eq, &basis, &cfg, &u);
        assert_abs_diff_eq!(a, 1.0 / (1.0 + cfg.s.exp()), epsilon = 1e-15);
        assert_abs_diff_eq!(a, 1.0e-4, epsilon = 1e-6);
        assert_eq!(cfg.clip(a), 0.0);
    }

    #[test]
    fn threshold_midpoint_and_value() {
        let cfg = IndicatorConfig::default();
        let t = cfg.threshold(4);
        assert_abs_diff_eq!(t, 0.5 * 10f64.powf(-1.8 * 5f64.powf(0.25)), epsilon = 1e-18);
        assert!((t - 1.017e-3).abs() < 1e-6);
        assert_eq!(cfg.logistic(t, t), 0.5);
    }

    #[test]
    fn top_mode_gives_unit_energy() {
        let basis = Basis::new(3, NodeFamily::GaussLegendre).unwrap();
        let q = basis.legendre_to_nodal(&[0.0, 0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(modal_energy_1d(&basis, &q), 1.0, epsilon = 1e-12);
        // 1 + P_2: projections 1 and 1/5, so E = (1/25) / (1 + 1/25)
        let q: Vec<f64> = basis.nodes.iter().map(|&x| 1.0 + legendre(2, 2.0 * x - 1.0).0).collect();
        assert_abs_diff_eq!(modal_energy_1d(&basis, &q), 1.0 / 26.0, epsilon = 1e-12);
    }

    #[test]
    fn tensor_energy_of_product_mode() {
        // P_1(x) P_3(y) + 1: projections 1 and 1/21, in the top shell
        let basis = Basis::new(3, NodeFamily::GaussLegendre).unwrap();
        let n = basis.n_nodes();
        let p = |k: usize, x: f64| legendre(k, 2.0 * x - 1.0).0;
        let q: Vec<f64> = (0..n * n).map(|m| 1.0 + p(1, basis.nodes[m % n]) * p(3, basis.nodes[m / n])).collect();
        let top = 1.0 / 441.0;
        assert_abs_diff_eq!(modal_energy_2d(&basis, &q), top / (1.0 + top), epsilon = 1e-12);
    }

    #[test]
    fn tensor_energy_matches_1d_for_x_only_data() {
        let basis = Basis::new(4, NodeFamily::GaussLegendre).unwrap();
        let q1: Vec<f64> = basis.nodes.iter().map(|x| (3.0 * x).sin() + x * x * x).collect();
        let n = basis.n_nodes();
        let q2: Vec<f64> = (0..n * n).map(|k| q1[k % n]).collect();
        assert_abs_diff_eq!(modal_energy_2d(&basis, &q2), modal_energy_1d(&basis, &q1), epsilon = 1e-12);
    }

    #[test]
    fn clip_and_smooth_examples() {
        let cfg = IndicatorConfig::default();
        assert_eq!(cfg.clip(5e-4), 0.0);
        assert_eq!(cfg.clip(0.9995), 1.0);
        assert_eq!(smooth_1d(&[0.0, 1.0, 0.0], false), vec![0.5, 1.0, 0.5]);
        assert_eq!(smooth_1d(&[0.3; 4], true), vec![0.3; 4]);
        assert_eq!(smooth_1d(&[1.0, 0.0, 0.0, 0.0], true), vec![1.0, 0.5, 0.0, 0.5]);
        let s = smooth_2d(&[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 3, 3, [false; 2]);
        assert_eq!(s, vec![0.0, 0.5, 0.0, 0.5, 1.0, 0.5, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn config_validation() {
        assert!(IndicatorConfig::default().validate().is_ok());
        let bad = IndicatorConfig { alpha_min: 0.5, alpha_max: 0.4, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    proptest! {
        #[test]
        fn energy_is_scale_invariant(vals in proptest::collection::vec(-5.0..5.0f64, 5), scale in 1e-3..1e3f64) {
            let basis = Basis::new(4, NodeFamily::GaussLegendre).unwrap();
            let scaled: Vec<f64> = vals.iter().map(|v| v * scale).collect();
            let a = modal_energy_1d(&basis, &vals);
            let b = modal_energy_1d(&basis, &scaled);
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn smoothing_never_decreases(alpha in proptest::collection::vec(0.0..1.0f64, 2..30)) {
            let s = smooth_1d(&alpha, true);
            for (a, b) in alpha.iter().zip(&s) {
                prop_assert!(b >= a);
                prop_assert!(*b <= 1.0);
            }
        }
    }
}
