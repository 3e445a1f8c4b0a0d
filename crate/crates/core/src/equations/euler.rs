//! Compressible Euler equations for a polytropic gas.

use serde::{Deserialize, Serialize};

use super::{Dir, Equation, Point};
use crate::error::{Error, Result};
use crate::state::State;

/// Gas parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerParams {
    pub gamma: f64,
}

impl EulerParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::Config(format!("gamma must exceed 1, got {gamma}")));
        }
        Ok(EulerParams { gamma })
    }
}

impl Default for EulerParams {
    fn default() -> Self {
        EulerParams { gamma: 1.4 }
    }
}

/// `(rho, rho v, E) -> (rho, v, p)`
pub fn euler_cons_to_prim_1d(u: &State<3>, gamma: f64) -> Result<[f64; 3]> {
    if u[0] == 0.0 || !u.is_finite() {
        return Err(Error::NonFinite(format!("cannot convert {:?} to primitives", u.0)));
    }
    let v = u[1] / u[0];
    Ok([u[0], v, (gamma - 1.0) * (u[2] - 0.5 * u[0] * v * v)])
}

pub fn euler_prim_to_cons_1d(prim: &[f64; 3], gamma: f64) -> State<3> {
    let [rho, v, p] = *prim;
    State([rho, rho * v, p / (gamma - 1.0) + 0.5 * rho * v * v])
}

/// `(rho, rho u, rho v, E) -> (rho, u, v, p)`
pub fn euler_cons_to_prim_2d(u: &State<4>, gamma: f64) -> Result<[f64; 4]> {
    if u[0] == 0.0 || !u.is_finite() {
        return Err(Error::NonFinite(format!("cannot convert {:?} to primitives", u.0)));
    }
    let vx = u[1] / u[0];
    let vy = u[2] / u[0];
    Ok([u[0], vx, vy, (gamma - 1.0) * (u[3] - 0.5 * u[0] * (vx * vx + vy * vy))])
}

pub fn euler_prim_to_cons_2d(prim: &[f64; 4], gamma: f64) -> State<4> {
    let [rho, vx, vy, p] = *prim;
    State([rho, rho * vx, rho * vy, p / (gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy)])
}

/// Checked 1-D Euler flux `(rho v, p + rho v^2, (E + p) v)`.
pub fn euler_flux_1d(u: &State<3>, gamma: f64) -> Result<State<3>> {
    if !u.is_finite() || !(u[0] > 0.0) {
        return Err(Error::NonFinite(format!("euler flux of {:?}", u.0)));
    }
    Ok(Euler1D { gamma }.flux(u, [0.0; 2], Dir::X))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler1D {
    pub gamma: f64,
}

impl Euler1D {
    pub fn new(gamma: f64) -> Self {
        Euler1D { gamma }
    }

    #[inline(always)]
    pub fn pressure(&self, u: &State<3>) -> f64 {
        (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
    }

    pub fn sound_speed(&self, u: &State<3>) -> f64 {
        (self.gamma * self.pressure(u) / u[0]).sqrt()
    }

    /// Right and left eigenvector matrices of the flux Jacobian at `u`,
    /// rows of `left` are the left eigenvectors; `left * right = I`.
    pub fn eigenvectors(&self, u: &State<3>) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
        let g = self.gamma;
        let rho = u[0];
        let v = u[1] / rho;
        let p = self.pressure(u);
        let c = (g * p / rho).sqrt();
        let h = (u[2] + p) / rho;
        let right = [[1.0, 1.0, 1.0], [v - c, v, v + c], [h - v * c, 0.5 * v * v, h + v * c]];
        let b1 = (g - 1.0) / (c * c);
        let b2 = 0.5 * b1 * v * v;
        let left = [
            [0.5 * (b2 + v / c), -0.5 * (b1 * v + 1.0 / c), 0.5 * b1],
            [1.0 - b2, b1 * v, -b1],
            [0.5 * (b2 - v / c), -0.5 * (b1 * v - 1.0 / c), 0.5 * b1],
        ];
        (right, left)
    }
}

impl Equation<3> for Euler1D {
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "euler1d"
    }

    #[inline(always)]
    fn flux(&self, u: &State<3>, _pos: Point, _dir: Dir) -> State<3> {
        let v = u[1] / u[0];
        let p = (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * v);
        State([u[1], p + u[1] * v, (u[2] + p) * v])
    }

    #[inline(always)]
    fn max_speed(&self, u: &State<3>, _pos: Point, _dir: Dir) -> f64 {
        let v = u[1] / u[0];
        let p = (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * v);
        v.abs() + (self.gamma * p / u[0]).sqrt()
    }

    fn num_constraints(&self) -> usize {
        2
    }

    #[inline(always)]
    fn constraint(&self, k: usize, u: &State<3>) -> f64 {
        match k {
            0 => u[0],
            _ => self.pressure(u),
        }
    }

    fn indicator_quantity(&self, u: &State<3>) -> f64 {
        u[0] * self.pressure(u)
    }

    fn reflect(&self, u: &State<3>, _dir: Dir) -> State<3> {
        State([u[0], -u[1], u[2]])
    }

    fn characteristic_matrices(&self, u: &State<3>) -> Option<([[f64; 3]; 3], [[f64; 3]; 3])> {
        Some(self.eigenvectors(u))
    }

    fn conserved_names(&self) -> Vec<&'static str> {
        vec!["rho", "rho_v", "E"]
    }

    fn primitive_names(&self) -> Vec<&'static str> {
        vec!["density", "velocity", "pressure"]
    }

    fn to_primitive(&self, u: &State<3>) -> Vec<f64> {
        let v = u[1] / u[0];
        vec![u[0], v, self.pressure(u)]
    }

    fn from_primitive(&self, prim: &[f64]) -> State<3> {
        euler_prim_to_cons_1d(&[prim[0], prim[1], prim[2]], self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler2D {
    pub gamma: f64,
}

impl Euler2D {
    pub fn new(gamma: f64) -> Self {
        Euler2D { gamma }
    }

    #[inline(always)]
    pub fn pressure(&self, u: &State<4>) -> f64 {
        (self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
    }

    pub fn sound_speed(&self, u: &State<4>) -> f64 {
        (self.gamma * self.pressure(u) / u[0]).sqrt()
    }
}

impl Equation<4> for Euler2D {
    const DIM: usize = 2;

    fn name(&self) -> &'static str {
        "euler2d"
    }

    #[inline(always)]
    fn flux(&self, u: &State<4>, _pos: Point, dir: Dir) -> State<4> {
        let p = self.pressure(u);
        match dir {
            Dir::X => {
                let vx = u[1] / u[0];
                State([u[1], u[1] * vx + p, u[2] * vx, (u[3] + p) * vx])
            }
            Dir::Y => {
                let vy = u[2] / u[0];
                State([u[2], u[1] * vy, u[2] * vy + p, (u[3] + p) * vy])
            }
        }
    }

    #[inline(always)]
    fn fluxes(&self, u: &State<4>, _pos: Point) -> (State<4>, State<4>) {
        let inv_rho = 1.0 / u[0];
        let vx = u[1] * inv_rho;
        let vy = u[2] * inv_rho;
        let p = (self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * vx + u[2] * vy));
        let ep = u[3] + p;
        (
            State([u[1], u[1] * vx + p, u[2] * vx, ep * vx]),
            State([u[2], u[1] * vy, u[2] * vy + p, ep * vy]),
        )
    }

    #[inline(always)]
    fn max_speed(&self, u: &State<4>, _pos: Point, dir: Dir) -> f64 {
        let vn = match dir {
            Dir::X => u[1] / u[0],
            Dir::Y => u[2] / u[0],
        };
        vn.abs() + (self.gamma * self.pressure(u) / u[0]).sqrt()
    }

    fn num_constraints(&self) -> usize {
        2
    }

    #[inline(always)]
    fn constraint(&self, k: usize, u: &State<4>) -> f64 {
        match k {
            0 => u[0],
            _ => self.pressure(u),
        }
    }

    fn indicator_quantity(&self, u: &State<4>) -> f64 {
        u[0] * self.pressure(u)
    }

    fn reflect(&self, u: &State<4>, dir: Dir) -> State<4> {
        match dir {
            Dir::X => State([u[0], -u[1], u[2], u[3]]),
            Dir::Y => State([u[0], u[1], -u[2], u[3]]),
        }
    }

    fn conserved_names(&self) -> Vec<&'static str> {
        vec!["rho", "rho_u", "rho_v", "E"]
    }

    fn primitive_names(&self) -> Vec<&'static str> {
        vec!["density", "velocity_x", "velocity_y", "pressure"]
    }

    fn to_primitive(&self, u: &State<4>) -> Vec<f64> {
        vec![u[0], u[1] / u[0], u[2] / u[0], self.pressure(u)]
    }

    fn from_primitive(&self, prim: &[f64]) -> State<4> {
        euler_prim_to_cons_2d(&[prim[0], prim[1], prim[2], prim[3]], self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn primitive_examples() {
        let p = euler_cons_to_prim_1d(&State([1.0, 0.0, 2.5]), 1.4).unwrap();
        assert_abs_diff_eq!(p[2], 1.0, epsilon = 1e-15);
        let p = euler_cons_to_prim_1d(&State([1.0, 1.0, 3.0]), 1.4).unwrap();
        assert_abs_diff_eq!(p[1], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[2], 1.0, epsilon = 1e-14);
        assert!(matches!(
            euler_cons_to_prim_1d(&State([0.0, 1.0, 3.0]), 1.4),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn flux_examples() {
        let f = euler_flux_1d(&euler_prim_to_cons_1d(&[1.0, 0.0, 1.0], 1.4), 1.4).unwrap();
        assert_abs_diff_eq!(f[0], 0.0);
        assert_abs_diff_eq!(f[1], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f[2], 0.0);
        let f = euler_flux_1d(&euler_prim_to_cons_1d(&[1.0, 1.0, 1.0], 1.4), 1.4).unwrap();
        assert_abs_diff_eq!(f[0], 1.0);
        assert_abs_diff_eq!(f[1], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f[2], 4.0, epsilon = 1e-14);
        assert!(euler_flux_1d(&State([f64::NAN, 0.0, 1.0]), 1.4).is_err());
    }

    #[test]
    fn flux_2d_matches_direct_substitution() {
        let eq = Euler2D::new(1.4);
        let u = euler_prim_to_cons_2d(&[1.0, 0.0, 1.0, 1.0], 1.4);
        // E = 1/0.4 + 0.5 = 3
        let g = eq.flux(&u, [0.0; 2], Dir::Y);
        assert_abs_diff_eq!(g[0], 1.0);
        assert_abs_diff_eq!(g[1], 0.0);
        assert_abs_diff_eq!(g[2], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g[3], 4.0, epsilon = 1e-14);
        let (f2, g2) = eq.fluxes(&u, [0.0; 2]);
        assert_eq!(g, g2);
        assert_eq!(f2, eq.flux(&u, [0.0; 2], Dir::X));
    }

    #[test]
    fn constraints_evaluate_on_bad_states() {
        let eq = Euler1D::new(1.4);
        let c = eq.constraints(&State([1.0, 0.0, 2.5]));
        assert_abs_diff_eq!(c[0], 1.0);
        assert_abs_diff_eq!(c[1], 1.0, epsilon = 1e-15);
        let c = eq.constraints(&State([-1.0, 0.0, 2.5]));
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], -1.0);
        assert!(!eq.is_admissible(&State([-1.0, 0.0, 2.5])));
    }

    #[test]
    fn eigenvectors_are_inverse() {
        let eq = Euler1D::new(1.4);
        let u = euler_prim_to_cons_1d(&[0.7, -0.4, 2.0], 1.4);
        let (r, l) = eq.eigenvectors(&u);
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| l[i][k] * r[k][j]).sum();
                assert_abs_diff_eq!(s, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-13);
            }
        }
    }

    proptest! {
        #[test]
        fn prim_cons_round_trip(rho in 1e-3..1e3f64, v in -50.0..50.0f64, p in 1e-3..1e4f64) {
            let u = euler_prim_to_cons_1d(&[rho, v, p], 1.4);
            let back = euler_cons_to_prim_1d(&u, 1.4).unwrap();
            prop_assert!((back[0] - rho).abs() <= 1e-13 * rho);
            prop_assert!((back[1] - v).abs() <= 1e-13 * (1.0 + v.abs()));
            let scale = p + 0.5 * rho * v * v;
            prop_assert!((back[2] - p).abs() <= 1e-13 * scale);
        }

        #[test]
        fn pressure_is_concave_for_positive_density(
            r1 in 0.1..10.0f64, m1 in -5.0..5.0f64, e1 in 0.0..50.0f64,
            r2 in 0.1..10.0f64, m2 in -5.0..5.0f64, e2 in 0.0..50.0f64,
            t in 0.0..1.0f64,
        ) {
            let eq = Euler1D::new(1.4);
            let a = State([r1, m1, e1]);
            let b = State([r2, m2, e2]);
            let mix = a * t + b * (1.0 - t);
            let lhs = eq.pressure(&mix);
            let rhs = t * eq.pressure(&a) + (1.0 - t) * eq.pressure(&b);
            prop_assert!(lhs >= rhs - 1e-12 * (1.0 + rhs.abs()));
        }
    }
}
