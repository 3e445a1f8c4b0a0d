//! Scaling of nodal values towards the element mean.

use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::state::State;

/// Largest target value for the scaled constraints.
pub const SCALING_EPS: f64 = 1e-10;

/// Contract `u` about its weighted mean so that every constraint is at least
/// `min(1e-10, p_k(mean))` at every node. Returns the smallest factor used.
pub fn scale_to_admissible<E: Equation<V>, const V: usize>(
    eq: &E,
    u: &mut [State<V>],
    weights: &[f64],
) -> Result<f64> {
    let mut mean = State::<V>::zero();
    for (w, s) in weights.iter().zip(u.iter()) {
        mean = mean.axpy(*w, s);
    }
    scale_about_mean(eq, u, &mean)
}

/// Same as [`scale_to_admissible`] with an externally supplied mean.
pub fn scale_about_mean<E: Equation<V>, const V: usize>(
    eq: &E,
    u: &mut [State<V>],
    mean: &State<V>,
) -> Result<f64> {
    let mut theta_min = 1.0_f64;
    for k in 0..eq.num_constraints() {
        let pm = eq.constraint(k, mean);
        if !(pm > 0.0) || !mean.is_finite() {
            return Err(Error::Inadmissible { context: "element mean".into(), constraint: k, value: pm });
        }
        let eps = SCALING_EPS.min(pm);
        let mut theta = 1.0_f64;
        for s in u.iter() {
            let p = eq.constraint(k, s);
            if !(p >= eps) {
                let t = if p.is_finite() { ((eps - pm) / (p - pm)).abs() } else { 0.0 };
                theta = theta.min(t);
            }
        }
        if theta >= 1.0 {
            continue;
        }
        // guard against rounding leaving a node just below eps
        let mut t = theta;
        for _ in 0..60 {
            let ok = u.iter().all(|s| eq.constraint(k, &mean.axpy(t, &(*s - *mean))) >= eps);
            if ok {
                break;
            }
            t *= 0.5;
        }
        let ok = u.iter().all(|s| eq.constraint(k, &mean.axpy(t, &(*s - *mean))) >= eps);
        if !ok {
            t = 0.0;
        }
        for s in u.iter_mut() {
            let d = *s - *mean;
            *s = mean.axpy(t, &d);
        }
        theta_min = theta_min.min(t);
    }
    Ok(theta_min)
}
