//! Scalar model equations.

use serde::{Deserialize, Serialize};

use super::{Dir, Equation, Point};
use crate::state::State;

/// `u_t + a u_x = 0`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Advection1D {
    pub a: f64,
}

impl Advection1D {
    pub fn new(a: f64) -> Self {
        Advection1D { a }
    }
}

impl Equation<1> for Advection1D {
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "advection1d"
    }

    #[inline(always)]
    fn flux(&self, u: &State<1>, _pos: Point, _dir: Dir) -> State<1> {
        State([self.a * u[0]])
    }

    #[inline(always)]
    fn max_speed(&self, _u: &State<1>, _pos: Point, _dir: Dir) -> f64 {
        self.a.abs()
    }

    fn indicator_quantity(&self, u: &State<1>) -> f64 {
        u[0]
    }

    fn conserved_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn primitive_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn to_primitive(&self, u: &State<1>) -> Vec<f64> {
        vec![u[0]]
    }

    fn from_primitive(&self, prim: &[f64]) -> State<1> {
        State([prim[0]])
    }
}

/// Inviscid Burgers `u_t + (u^2/2)_x = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Burgers1D;

impl Equation<1> for Burgers1D {
    const DIM: usize = 1;

    fn name(&self) -> &'static str {
        "burgers1d"
    }

    #[inline(always)]
    fn flux(&self, u: &State<1>, _pos: Point, _dir: Dir) -> State<1> {
        State([0.5 * u[0] * u[0]])
    }

    #[inline(always)]
    fn max_speed(&self, u: &State<1>, _pos: Point, _dir: Dir) -> f64 {
        u[0].abs()
    }

    fn indicator_quantity(&self, u: &State<1>) -> f64 {
        u[0]
    }

    fn conserved_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn primitive_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn to_primitive(&self, u: &State<1>) -> Vec<f64> {
        vec![u[0]]
    }

    fn from_primitive(&self, prim: &[f64]) -> State<1> {
        State([prim[0]])
    }
}

/// Advection velocity for [`Advection2D`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VelocityField {
    Constant([f64; 2]),
    /// Solid-body rotation about `(1/2, 1/2)`: `a = (1/2 - y, x - 1/2)`.
    Rotation,
}

impl VelocityField {
    #[inline(always)]
    pub fn at(&self, pos: Point) -> [f64; 2] {
        match *self {
            VelocityField::Constant(a) => a,
            VelocityField::Rotation => [0.5 - pos[1], pos[0] - 0.5],
        }
    }
}

/// `u_t + (a_x u)_x + (a_y u)_y = 0` with a possibly position-dependent velocity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Advection2D {
    pub field: VelocityField,
}

impl Advection2D {
    pub fn new(field: VelocityField) -> Self {
        Advection2D { field }
    }
}

impl Equation<1> for Advection2D {
    const DIM: usize = 2;

    fn name(&self) -> &'static str {
        "advection2d"
    }

    #[inline(always)]
    fn flux(&self, u: &State<1>, pos: Point, dir: Dir) -> State<1> {
        let a = self.field.at(pos);
        match dir {
            Dir::X => State([a[0] * u[0]]),
            Dir::Y => State([a[1] * u[0]]),
        }
    }

    #[inline(always)]
    fn max_speed(&self, _u: &State<1>, pos: Point, dir: Dir) -> f64 {
        let a = self.field.at(pos);
        match dir {
            Dir::X => a[0].abs(),
            Dir::Y => a[1].abs(),
        }
    }

    fn indicator_quantity(&self, u: &State<1>) -> f64 {
        u[0]
    }

    fn conserved_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn primitive_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }

    fn to_primitive(&self, u: &State<1>) -> Vec<f64> {
        vec![u[0]]
    }

    fn from_primitive(&self, prim: &[f64]) -> State<1> {
        State([prim[0]])
    }
}
