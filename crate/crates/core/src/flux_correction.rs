//! Interface-flux correction that keeps the low-order updates next to each
//! face admissible, and hence the element means.

use serde::{Deserialize, Serialize};

use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::state::State;

/// One element adjacent to a face, seen from the face.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceSide<const V: usize> {
    /// Solution point touching the face.
    pub u: State<V>,
    /// Subcell flux on the other side of that solution point.
    pub inner: State<V>,
    /// `dt / (k w dx)` of the touching subcell.
    pub coef: f64,
}

/// Inputs for correcting one interface flux. `left` owns the face as its
/// right boundary, `right` as its left boundary. A missing side does not
/// constrain the flux.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceCorrection<const V: usize> {
    pub blended: State<V>,
    pub low: State<V>,
    pub left: Option<FaceSide<V>>,
    pub right: Option<FaceSide<V>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corrected<const V: usize> {
    pub flux: State<V>,
    /// Product of all correction factors: `flux = lambda blended + (1 - lambda) low`.
    pub lambda: f64,
}

/// `u_N - c (F - f_{N-1/2})` for the left element.
#[inline(always)]
pub fn tilde_left<const V: usize>(s: &FaceSide<V>, flux: &State<V>) -> State<V> {
    let mut out = s.u;
    for v in 0..V {
        out[v] -= s.coef * (flux[v] - s.inner[v]);
    }
    out
}

/// `u_0 - c (f_{1/2} - F)` for the right element.
#[inline(always)]
pub fn tilde_right<const V: usize>(s: &FaceSide<V>, flux: &State<V>) -> State<V> {
    let mut out = s.u;
    for v in 0..V {
        out[v] -= s.coef * (s.inner[v] - flux[v]);
    }
    out
}

#[inline]
fn blend<const V: usize>(theta: f64, f: &State<V>, low: &State<V>) -> State<V> {
    let mut out = [0.0; V];
    for v in 0..V {
        out[v] = theta * f[v] + (1.0 - theta) * low[v];
    }
    State(out)
}

/// Runs the constraint loop on one face flux.
pub fn correct_flux<E: Equation<V>, const V: usize>(eq: &E, face: &FaceCorrection<V>) -> Result<Corrected<V>> {
    let mut flux = face.blended;
    let mut lambda = 1.0;
    let sides: [(Option<&FaceSide<V>>, fn(&FaceSide<V>, &State<V>) -> State<V>); 2] =
        [(face.left.as_ref(), tilde_left::<V>), (face.right.as_ref(), tilde_right::<V>)];
    for k in 0..eq.num_constraints() {
        let mut eps = [0.0; 2];
        let mut theta = 1.0_f64;
        for (idx, (side, tilde)) in sides.iter().enumerate() {
            let Some(s) = side else { continue };
            let p_low = eq.constraint(k, &tilde(s, &face.low));
            if !(p_low > 0.0) {
                return Err(Error::Inadmissible { context: "low-order update next to a face".into(), constraint: k, value: p_low });
            }
            eps[idx] = 0.1 * p_low;
            let p = eq.constraint(k, &tilde(s, &flux));
            if !(p >= eps[idx]) {
                let t = if p == p_low {
                    1.0
                } else if p.is_finite() {
                    ((eps[idx] - p_low) / (p - p_low)).abs()
                } else {
                    0.0
                };
                theta = theta.min(t);
            }
        }
        if theta >= 1.0 {
            continue;
        }
        let feasible = |f: &State<V>| {
            sides.iter().enumerate().all(|(idx, (side, tilde))| match side {
                Some(s) => eq.constraint(k, &tilde(s, f)) >= eps[idx],
                None => true,
            })
        };
        let mut t = theta.min(1.0);
        let mut candidate = blend(t, &flux, &face.low);
        let mut tries = 0;
        while !feasible(&candidate) && tries < 60 {
            t *= 0.5;
            candidate = blend(t, &flux, &face.low);
            tries += 1;
        }
        if !feasible(&candidate) {
            t = 0.0;
            candidate = face.low;
        }
        flux = candidate;
        lambda *= t;
    }
    Ok(Corrected { flux, lambda })
}

/// Directional weights of the 2-D convex split.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitWeights {
    #[default]
    Equal,
    /// `k_x` proportional to `a_x / dx` with directional wave speeds `a_x`, `a_y`.
    WaveSpeed,
}

impl SplitWeights {
    pub fn kx(&self, ax: f64, ay: f64, dx: f64, dy: f64) -> f64 {
        match self {
            SplitWeights::Equal => 0.5,
            SplitWeights::WaveSpeed => {
                let sx = ax / dx;
                let sy = ay / dy;
                let k = sx / (sx + sy);
                if k.is_finite() {
                    k.clamp(0.05, 0.95)
                } else {
                    0.5
                }
            }
        }
    }
}

/// Largest difference of the element means after subtracting the high- and
/// low-order increments from `base`. Each variable is scaled by
/// `1 + |mean of base| + sum w |increment|`, the size of the terms whose
/// rounding errors end up in the mean, so rough fields with large cancelling
/// nodal increments are not reported as breaches.
pub fn mean_mismatch<const V: usize>(weights: &[f64], base: &[State<V>], high: &[State<V>], low: &[State<V>]) -> f64 {
    let mut mb = State::<V>::zero();
    let mut mh = State::<V>::zero();
    let mut ml = State::<V>::zero();
    let mut mag = [0.0; V];
    for (((w, b), h), l) in weights.iter().zip(base).zip(high).zip(low) {
        mb = mb.axpy(*w, b);
        mh = mh.axpy(*w, h);
        ml = ml.axpy(*w, l);
        for v in 0..V {
            mag[v] += w * h[v].abs().max(l[v].abs());
        }
    }
    (0..V).map(|v| (mh[v] - ml[v]).abs() / (1.0 + mb[v].abs() + mag[v])).fold(0.0, f64::max)
}

/// Fails when the high- and low-order increments of an element have
/// different means.
pub fn mean_audit<const V: usize>(
    element: usize,
    weights: &[f64],
    base: &[State<V>],
    high: &[State<V>],
    low: &[State<V>],
    tol: f64,
) -> Result<f64> {
    let m = mean_mismatch(weights, base, high, low);
    if m > tol || !m.is_finite() {
        return Err(Error::InvariantBreach(format!("element {element}: high and low order means differ by {m:e}")));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{euler_prim_to_cons_1d, Euler1D};
    use approx::assert_abs_diff_eq;

    fn sides(eq: &Euler1D) -> (FaceSide<3>, FaceSide<3>) {
        let l = euler_prim_to_cons_1d(&[1.0, 0.0, 1.0], eq.gamma);
        let r = euler_prim_to_cons_1d(&[0.125, 0.0, 0.1], eq.gamma);
        let fl = eq.flux(&l, [0.0; 2], crate::Dir::X);
        let fr = eq.flux(&r, [0.0; 2], crate::Dir::X);
        (FaceSide { u: l, inner: fl, coef: 0.5 }, FaceSide { u: r, inner: fr, coef: 0.5 })
    }

    #[test]
    fn pure_low_flux_is_fixed_point() {
        let eq = Euler1D::new(1.4);
        let (l, r) = sides(&eq);
        let low = crate::equations::rusanov_flux(&eq, &l.u, &r.u, [0.0; 2], crate::Dir::X);
        let c = correct_flux(&eq, &FaceCorrection { blended: low, low, left: Some(l), right: Some(r) }).unwrap();
        assert_eq!(c.flux, low);
        assert_eq!(c.lambda, 1.0);
    }

    #[test]
    fn safe_blend_is_unchanged() {
        let eq = Euler1D::new(1.4);
        let (l, r) = sides(&eq);
        let low = crate::equations::rusanov_flux(&eq, &l.u, &r.u, [0.0; 2], crate::Dir::X);
        let blended = low.axpy(1e-3, &State([1.0, 0.0, 0.0]));
        let c = correct_flux(&eq, &FaceCorrection { blended, low, left: Some(l), right: Some(r) }).unwrap();
        assert_eq!(c.flux, blended);
    }

    #[test]
    fn aggressive_flux_is_pulled_back() {
        let eq = Euler1D::new(1.4);
        let (l, r) = sides(&eq);
        let low = crate::equations::rusanov_flux(&eq, &l.u, &r.u, [0.0; 2], crate::Dir::X);
        // drains the right element
        let blended = State([-2.0, 0.3, -3.0]);
        let c = correct_flux(&eq, &FaceCorrection { blended, low, left: Some(l), right: Some(r) }).unwrap();
        assert!(c.lambda < 1.0 && c.lambda >= 0.0);
        let ur = tilde_right(&r, &c.flux);
        let ul = tilde_left(&l, &c.flux);
        for k in 0..2 {
            assert!(eq.constraint(k, &ur) >= 0.1 * eq.constraint(k, &tilde_right(&r, &low)));
            assert!(eq.constraint(k, &ul) >= 0.1 * eq.constraint(k, &tilde_left(&l, &low)));
        }
        let recon = blend(c.lambda, &blended, &low);
        for v in 0..3 {
            assert_abs_diff_eq!(recon[v], c.flux[v], epsilon = 1e-12);
        }
    }

    #[test]
    fn inadmissible_low_update_is_reported() {
        let eq = Euler1D::new(1.4);
        let (mut l, r) = sides(&eq);
        l.coef = 100.0;
        let low = crate::equations::rusanov_flux(&eq, &l.u, &r.u, [0.0; 2], crate::Dir::X);
        let res = correct_flux(&eq, &FaceCorrection { blended: low, low, left: Some(l), right: Some(r) });
        assert!(matches!(res, Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn audit_detects_mismatch() {
        let w = [0.5, 0.5];
        let a = [State([1.0]), State([2.0])];
        let b = [State([2.0]), State([1.0])];
        assert!(mean_audit(0, &w, &a, &a, &b, 1e-13).is_ok());
        let c = [State([2.0]), State([1.1])];
        assert!(matches!(mean_audit(3, &w, &a, &a, &c, 1e-13), Err(Error::InvariantBreach(_))));
    }

    #[test]
    fn split_weights() {
        assert_eq!(SplitWeights::Equal.kx(1.0, 5.0, 1.0, 1.0), 0.5);
        assert_abs_diff_eq!(SplitWeights::WaveSpeed.kx(1.0, 1.0, 1.0, 1.0), 0.5);
        assert_abs_diff_eq!(SplitWeights::WaveSpeed.kx(3.0, 1.0, 1.0, 1.0), 0.75);
    }
}
