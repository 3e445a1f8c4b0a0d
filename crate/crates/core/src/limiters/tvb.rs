//! TVB minmod limiter for 1-D nodal solutions.

use crate::basis::Basis;
use crate::equations::Equation;
use crate::state::State;

pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Returns `a` unchanged when `|a| <= m_dx2`, plain minmod otherwise.
pub fn modified_minmod(a: f64, b: f64, c: f64, m_dx2: f64) -> f64 {
    if a.abs() <= m_dx2 {
        a
    } else {
        minmod(a, b, c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TvbConfig {
    pub m: f64,
    pub characteristic: bool,
}

impl Default for TvbConfig {
    fn default() -> Self {
        TvbConfig { m: 0.0, characteristic: true }
    }
}

fn mat_vec<const V: usize>(m: &[[f64; V]; V], x: &State<V>) -> State<V> {
    let mut out = [0.0; V];
    for i in 0..V {
        out[i] = (0..V).map(|j| m[i][j] * x[j]).sum();
    }
    State(out)
}

/// Limits every interior element in place. `u` holds `ne + 2` elements of
/// `N + 1` nodes each, with one read-only ghost element on each side;
/// `dx` holds the interior widths. Returns the number of limited elements.
pub fn tvb_limit_1d<E: Equation<V>, const V: usize>(
    eq: &E,
    basis: &Basis,
    cfg: &TvbConfig,
    u: &mut [State<V>],
    dx: &[f64],
) -> usize {
    let n = basis.n_nodes();
    let ne = u.len() / n - 2;
    let means: Vec<State<V>> = u
        .chunks(n)
        .map(|el| {
            let mut m = State::zero();
            for j in 0..n {
                m = m.axpy(basis.weights[j], &el[j]);
            }
            m
        })
        .collect();
    let mut count = 0;
    for e in 1..=ne {
        let mean = means[e];
        let mut left = State::<V>::zero();
        let mut right = State::<V>::zero();
        for j in 0..n {
            left = left.axpy(basis.interp_left[j], &u[e * n + j]);
            right = right.axpy(basis.interp_right[j], &u[e * n + j]);
        }
        let mats = if cfg.characteristic {
            eq.characteristic_matrices(&mean)
                .filter(|(r, l)| eq.is_admissible(&mean) && r.iter().chain(l.iter()).flatten().all(|x| x.is_finite()))
        } else {
            None
        };
        let to_char = |x: State<V>| match &mats {
            Some((_, l)) => mat_vec(l, &x),
            None => x,
        };
        let dm = to_char(mean - left);
        let dp = to_char(right - mean);
        let db = to_char(mean - means[e - 1]);
        let df = to_char(means[e + 1] - mean);
        let m_dx2 = cfg.m * dx[e - 1] * dx[e - 1];
        let mut changed = false;
        let mut lm = State::<V>::zero();
        let mut lp = State::<V>::zero();
        for v in 0..V {
            lm[v] = modified_minmod(dm[v], db[v], df[v], m_dx2);
            lp[v] = modified_minmod(dp[v], db[v], df[v], m_dx2);
            changed |= lm[v] != dm[v] || lp[v] != dp[v];
        }
        if !changed {
            continue;
        }
        count += 1;
        let mut slope = (lm + lp) * 0.5;
        if let Some((r, _)) = &mats {
            slope = mat_vec(r, &slope);
        }
        for j in 0..n {
            u[e * n + j] = mean.axpy(2.0 * basis.nodes[j] - 1.0, &slope);
        }
    }
    count
}
