//! Solution points, quadrature, Lagrange operators and Radau correction
//! functions on the reference element `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Solution point family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum NodeFamily {
    #[default]
    GaussLegendre,
    GaussLobatto,
}

/// Legendre polynomial `P_n(x)` and its derivative on `[-1, 1]`.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    let (mut dp_prev, mut dp) = (0.0, 1.0);
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        // P'_{k+1} = P'_{k-1} + (2k+1) P_k
        let dp_next = dp_prev + (2.0 * kf + 1.0) * p;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp)
}

/// Legendre polynomial normalised to be orthonormal on `[0, 1]`, evaluated at `xi`.
pub fn orthonormal_legendre(j: usize, xi: f64) -> f64 {
    (2.0 * j as f64 + 1.0).sqrt() * legendre(j, 2.0 * xi - 1.0).0
}

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Gauss-Legendre nodes and weights with `n` points on `[0, 1]`.
pub fn gauss_legendre_01(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n {
        // Chebyshev-like initial guess, descending in k.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < NEWTON_TOL {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map to [0,1] in ascending order
        nodes[n - 1 - k] = 0.5 * (1.0 + x);
        weights[n - 1 - k] = 0.5 * w;
    }
    symmetrize(&mut nodes, &mut weights);
    Ok((nodes, weights))
}

/// Gauss-Lobatto-Legendre nodes and weights with `n >= 2` points on `[0, 1]`.
pub fn gauss_lobatto_01(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 {
        return Err(Error::InvalidDegree(n.saturating_sub(1)));
    }
    let deg = n - 1;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n {
        let mut x = (std::f64::consts::PI * k as f64 / deg as f64).cos();
        if k != 0 && k != deg {
            for _ in 0..NEWTON_MAX_ITER {
                let (p, _) = legendre(deg, x);
                let (p_prev, _) = legendre(deg - 1, x);
                let dx = (x * p - p_prev) / (n as f64 * p);
                x -= dx;
                if dx.abs() < NEWTON_TOL {
                    break;
                }
            }
        }
        let (p, _) = legendre(deg, x);
        let w = 2.0 / ((deg * n) as f64 * p * p);
        nodes[deg - k] = 0.5 * (1.0 + x);
        weights[deg - k] = 0.5 * w;
    }
    nodes[0] = 0.0;
    nodes[deg] = 1.0;
    symmetrize(&mut nodes, &mut weights);
    Ok((nodes, weights))
}

/// Enforce exact mirror symmetry `xi_j + xi_{N-j} = 1`, `w_j = w_{N-j}`.
fn symmetrize(nodes: &mut [f64], weights: &mut [f64]) {
    let n = nodes.len();
    for j in 0..n / 2 {
        let a = 0.5 * (nodes[j] + 1.0 - nodes[n - 1 - j]);
        nodes[j] = a;
        nodes[n - 1 - j] = 1.0 - a;
        let w = 0.5 * (weights[j] + weights[n - 1 - j]);
        weights[j] = w;
        weights[n - 1 - j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.5;
    }
}

/// Barycentric weights of the node set.
fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod: f64 = nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &xi)| xj - xi)
                .product();
            1.0 / prod
        })
        .collect()
}

/// Values of all Lagrange polynomials `l_j(x)` for the given nodes.
pub fn lagrange_values(nodes: &[f64], x: f64) -> Vec<f64> {
    (0..nodes.len())
        .map(|j| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &xi)| (x - xi) / (nodes[j] - xi))
                .product()
        })
        .collect()
}

/// Nodal basis of degree `N` with all operators used by the FR and subcell schemes.
#[derive(Clone, Debug)]
pub struct Basis {
    pub degree: usize,
    pub family: NodeFamily,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Row-major `(N+1) x (N+1)`, `diff[i][j] = l_j'(xi_i)`.
    pub diff: Vec<Vec<f64>>,
    /// `l_j(0)`
    pub interp_left: Vec<f64>,
    /// `l_j(1)`
    pub interp_right: Vec<f64>,
    /// `g_L'(xi_j)`
    pub correction_grad_left: Vec<f64>,
    /// `g_R'(xi_j)`
    pub correction_grad_right: Vec<f64>,
    /// `legendre[k][q] = L_k(xi_q) * w_q` with `L_k` orthonormal on `[0,1]`.
    pub legendre: Vec<Vec<f64>>,
}

impl Basis {
    pub fn new(degree: usize, family: NodeFamily) -> Result<Self> {
        if degree == 0 || degree > 10 {
            return Err(Error::InvalidDegree(degree));
        }
        let n = degree + 1;
        let (nodes, weights) = match family {
            NodeFamily::GaussLegendre => gauss_legendre_01(n)?,
            NodeFamily::GaussLobatto => gauss_lobatto_01(n)?,
        };
        let bary = barycentric_weights(&nodes);
        let mut diff = vec![vec![0.0; n]; n];
        for i in 0..n {
            let mut row_sum = 0.0;
            for j in 0..n {
                if i != j {
                    let d = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
                    diff[i][j] = d;
                    row_sum += d;
                }
            }
            diff[i][i] = -row_sum;
        }
        let interp_left = lagrange_values(&nodes, 0.0);
        let interp_right = lagrange_values(&nodes, 1.0);

        // Left Radau correction: g_L = right Radau polynomial of degree N+1,
        // g_L(xi) = (-1)^{N+1}/2 (P_{N+1} - P_N)(2 xi - 1).
        let sign = if (degree + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let g_left_grad = |xi: f64| {
            let x = 2.0 * xi - 1.0;
            sign * (legendre(degree + 1, x).1 - legendre(degree, x).1)
        };
        let correction_grad_left: Vec<f64> = nodes.iter().map(|&xi| g_left_grad(xi)).collect();
        let correction_grad_right: Vec<f64> =
            nodes.iter().map(|&xi| -g_left_grad(1.0 - xi)).collect();

        let legendre_matrix = (0..n)
            .map(|k| {
                (0..n)
                    .map(|q| orthonormal_legendre(k, nodes[q]) * weights[q])
                    .collect()
            })
            .collect();

        Ok(Basis {
            degree,
            family,
            nodes,
            weights,
            diff,
            interp_left,
            interp_right,
            correction_grad_left,
            correction_grad_right,
            legendre: legendre_matrix,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.degree + 1
    }

    /// Interpolation weights `l_j(xi)`.
    pub fn lagrange_at(&self, xi: f64) -> Vec<f64> {
        lagrange_values(&self.nodes, xi)
    }

    /// Legendre (orthonormal on `[0,1]`) coefficients of nodal data via the node quadrature.
    pub fn nodal_to_legendre(&self, values: &[f64]) -> Vec<f64> {
        self.legendre
            .iter()
            .map(|row| row.iter().zip(values).map(|(m, v)| m * v).sum())
            .collect()
    }

    /// Inverse synthesis: nodal values of `sum_k c_k L_k`.
    pub fn legendre_to_nodal(&self, coeffs: &[f64]) -> Vec<f64> {
        self.nodes
            .iter()
            .map(|&xi| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * orthonormal_legendre(k, xi))
                    .sum()
            })
            .collect()
    }

    /// Apply the differentiation matrix to nodal scalars.
    pub fn differentiate(&self, values: &[f64]) -> Vec<f64> {
        self.diff
            .iter()
            .map(|row| row.iter().zip(values).map(|(d, v)| d * v).sum())
            .collect()
    }

    /// Element mean `sum_j w_j v_j`.
    pub fn mean(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_legendre_closed_forms() {
        let (x, w) = gauss_legendre_01(1).unwrap();
        assert_abs_diff_eq!(x[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-15);

        let (x, w) = gauss_legendre_01(2).unwrap();
        let s3 = 3f64.sqrt();
        assert_abs_diff_eq!(x[0], (3.0 - s3) / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], (3.0 + s3) / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 0.5, epsilon = 1e-15);

        let (x, w) = gauss_legendre_01(3).unwrap();
        let r = (0.6f64).sqrt();
        assert_abs_diff_eq!(x[0], 0.5 * (1.0 - r), epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(x[2], 0.5 * (1.0 + r), epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 5.0 / 18.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 4.0 / 9.0, epsilon = 1e-15);

        // 4 points: nodes sqrt(3/7 -+ 2/7 sqrt(6/5)), weights (18 +- sqrt 30)/36 on [-1,1]
        let (x, w) = gauss_legendre_01(4).unwrap();
        let a = (3.0 / 7.0 - 2.0 / 7.0 * (1.2f64).sqrt()).sqrt();
        let b = (3.0 / 7.0 + 2.0 / 7.0 * (1.2f64).sqrt()).sqrt();
        assert_abs_diff_eq!(x[0], 0.5 * (1.0 - b), epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], 0.5 * (1.0 - a), epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 0.5 * (18.0 - 30f64.sqrt()) / 36.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 0.5 * (18.0 + 30f64.sqrt()) / 36.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_points_is_an_error() {
        assert_eq!(gauss_legendre_01(0), Err(Error::InvalidDegree(0)));
        assert!(Basis::new(0, NodeFamily::GaussLegendre).is_err());
    }

    #[test]
    fn lobatto_closed_form() {
        let (x, w) = gauss_lobatto_01(3).unwrap();
        assert_eq!(x, vec![0.0, 0.5, 1.0]);
        assert_abs_diff_eq!(w[0], 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn quadrature_exactness() {
        for n in 1..=8 {
            let (x, w) = gauss_legendre_01(n).unwrap();
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
            for p in 0..=(2 * n - 1) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
                assert_abs_diff_eq!(q, 1.0 / (p as f64 + 1.0), epsilon = 1e-12);
            }
            if n >= 2 {
                let (x, w) = gauss_lobatto_01(n).unwrap();
                for p in 0..=(2 * n - 3) {
                    let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
                    assert_abs_diff_eq!(q, 1.0 / (p as f64 + 1.0), epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn symmetry_and_positivity() {
        for family in [NodeFamily::GaussLegendre, NodeFamily::GaussLobatto] {
            for degree in 1..=6 {
                let b = Basis::new(degree, family).unwrap();
                for j in 0..=degree {
                    assert!(b.weights[j] > 0.0);
                    assert_abs_diff_eq!(b.nodes[j] + b.nodes[degree - j], 1.0, epsilon = 1e-15);
                    assert_eq!(b.weights[j], b.weights[degree - j]);
                    if j > 0 {
                        assert!(b.nodes[j] > b.nodes[j - 1]);
                    }
                }
            }
        }
    }

    #[test]
    fn differentiation_is_exact_for_degree_n() {
        for degree in 1..=6 {
            let b = Basis::new(degree, NodeFamily::GaussLegendre).unwrap();
            for p in 0..=degree {
                let v: Vec<f64> = b.nodes.iter().map(|x| x.powi(p as i32)).collect();
                let d = b.differentiate(&v);
                for (xi, di) in b.nodes.iter().zip(d) {
                    let exact = if p == 0 { 0.0 } else { p as f64 * xi.powi(p as i32 - 1) };
                    assert_abs_diff_eq!(di, exact, epsilon = 1e-11);
                }
            }
            if degree > 4 {
                continue;
            }
            // D^{N+1} annihilates degree-N data
            let mut v: Vec<f64> = b.nodes.iter().map(|x| 1.0 + x + x.powi(degree as i32)).collect();
            for _ in 0..=degree {
                v = b.differentiate(&v);
            }
            assert!(v.iter().all(|x| x.abs() < 1e-10), "{v:?}");
        }
    }

    #[test]
    fn basis_examples() {
        let b = Basis::new(1, NodeFamily::GaussLegendre).unwrap();
        let d = b.differentiate(&b.nodes);
        assert_abs_diff_eq!(d[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d[1], 1.0, epsilon = 1e-14);

        let b = Basis::new(2, NodeFamily::GaussLegendre).unwrap();
        let left: f64 = b.interp_left.iter().zip(&b.nodes).map(|(l, x)| l * x * x).sum();
        assert_abs_diff_eq!(left, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn radau_correction_properties() {
        for degree in 1..=6 {
            let b = Basis::new(degree, NodeFamily::GaussLegendre).unwrap();
            // integral of g_L' over [0,1] is g_L(1) - g_L(0) = -1
            let sl: f64 = b.correction_grad_left.iter().zip(&b.weights).map(|(g, w)| g * w).sum();
            let sr: f64 = b.correction_grad_right.iter().zip(&b.weights).map(|(g, w)| g * w).sum();
            assert_abs_diff_eq!(sl, -1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(sr, 1.0, epsilon = 1e-12);
            for j in 0..=degree {
                assert_abs_diff_eq!(
                    b.correction_grad_right[j],
                    -b.correction_grad_left[degree - j],
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn legendre_transform() {
        let b = Basis::new(4, NodeFamily::GaussLegendre).unwrap();
        let c = b.nodal_to_legendre(&[3.0; 5]);
        assert_abs_diff_eq!(c[0], 3.0, epsilon = 1e-14);
        for ck in &c[1..] {
            assert_abs_diff_eq!(*ck, 0.0, epsilon = 1e-14);
        }
        let top: Vec<f64> = b.nodes.iter().map(|&x| orthonormal_legendre(4, x)).collect();
        let c = b.nodal_to_legendre(&top);
        for (k, ck) in c.iter().enumerate() {
            assert_abs_diff_eq!(*ck, if k == 4 { 1.0 } else { 0.0 }, epsilon = 1e-12);
        }
    }
}
