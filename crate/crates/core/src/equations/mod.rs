//! Conservation laws, their admissibility constraints and interface fluxes.

mod euler;
mod riemann;
mod scalar;

pub use euler::{
    euler_cons_to_prim_1d, euler_cons_to_prim_2d, euler_flux_1d, euler_prim_to_cons_1d,
    euler_prim_to_cons_2d, Euler1D, Euler2D, EulerParams,
};
pub use riemann::{hllc_flux_1d, hllc_flux_2d, rusanov_flux, try_rusanov_flux, try_wave_speed};
pub use scalar::{Advection1D, Advection2D, Burgers1D, VelocityField};

use crate::state::State;

/// Coordinate direction of a flux.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    X,
    Y,
}

/// Physical position; the second entry is ignored in 1-D.
pub type Point = [f64; 2];

/// A hyperbolic conservation law `u_t + f(u)_x (+ g(u)_y) = 0` with `V` variables.
///
/// Constraints `p_k`, `k = 0..K`, are ordered so that `p_k` is concave whenever
/// all earlier constraints are positive. Evaluation never fails: inadmissible
/// states give non-positive (or non-finite) values.
pub trait Equation<const V: usize>: Send + Sync {
    /// Spatial dimension (1 or 2).
    const DIM: usize;

    fn name(&self) -> &'static str;

    fn flux(&self, u: &State<V>, pos: Point, dir: Dir) -> State<V>;

    /// Both directional fluxes; 1-D equations return a zero `g`.
    #[inline]
    fn fluxes(&self, u: &State<V>, pos: Point) -> (State<V>, State<V>) {
        if Self::DIM == 1 {
            (self.flux(u, pos, Dir::X), State::zero())
        } else {
            (self.flux(u, pos, Dir::X), self.flux(u, pos, Dir::Y))
        }
    }

    /// Spectral radius of the flux Jacobian in `dir`.
    fn max_speed(&self, u: &State<V>, pos: Point, dir: Dir) -> f64;

    /// Local wave-speed bound `sigma(uL, uR)`, endpoint estimate.
    #[inline]
    fn wave_speed(&self, ul: &State<V>, ur: &State<V>, pos: Point, dir: Dir) -> f64 {
        self.max_speed(ul, pos, dir).max(self.max_speed(ur, pos, dir))
    }

    fn num_constraints(&self) -> usize {
        0
    }

    fn constraint(&self, _k: usize, _u: &State<V>) -> f64 {
        f64::INFINITY
    }

    fn constraints(&self, u: &State<V>) -> Vec<f64> {
        (0..self.num_constraints()).map(|k| self.constraint(k, u)).collect()
    }

    fn is_admissible(&self, u: &State<V>) -> bool {
        u.is_finite() && (0..self.num_constraints()).all(|k| self.constraint(k, u) > 0.0)
    }

    /// Scalar quantity whose modal decay drives the smoothness indicator.
    fn indicator_quantity(&self, u: &State<V>) -> f64;

    /// `(R, L)` with eigenvectors of the x-flux Jacobian as the columns of `R`
    /// and `L = R^-1`; `None` when no characteristic decomposition is provided.
    fn characteristic_matrices(&self, _u: &State<V>) -> Option<([[f64; V]; V], [[f64; V]; V])> {
        None
    }

    /// Mirror state across a wall with normal `dir`.
    fn reflect(&self, u: &State<V>, _dir: Dir) -> State<V> {
        *u
    }

    fn conserved_names(&self) -> Vec<&'static str>;

    fn primitive_names(&self) -> Vec<&'static str>;

    fn to_primitive(&self, u: &State<V>) -> Vec<f64>;

    fn from_primitive(&self, prim: &[f64]) -> State<V>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_advection_is_unconstrained() {
        let eq = Advection1D::new(1.0);
        assert!(eq.constraints(&State([3.0])).is_empty());
        assert!(eq.is_admissible(&State([-3.0])));
    }
}
