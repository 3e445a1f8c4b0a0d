//! Inputs shared by the benchmarks in `benches/`.

use lwfr_core::equations::{euler_prim_to_cons_1d, euler_prim_to_cons_2d};
use lwfr_core::{Basis, NodeFamily, State};

pub const GAMMA: f64 = 1.4;

/// Gauss-Legendre basis of the given degree.
pub fn basis(degree: usize) -> Basis {
    Basis::new(degree, NodeFamily::GaussLegendre).expect("degree in range")
}

/// A smooth Euler state on the unit element, sampled at the basis nodes.
pub fn wave_1d(basis: &Basis) -> Vec<State<3>> {
    basis
        .nodes
        .iter()
        .map(|&x| euler_prim_to_cons_1d(&[1.0 + 0.2 * (6.0 * x).sin(), 0.5, 1.0 + 0.1 * x], GAMMA))
        .collect()
}

/// Tensor-product counterpart of [`wave_1d`], x fastest.
pub fn wave_2d(basis: &Basis) -> Vec<State<4>> {
    let mut out = Vec::with_capacity(basis.nodes.len().pow(2));
    for &y in &basis.nodes {
        for &x in &basis.nodes {
            out.push(euler_prim_to_cons_2d(&[1.0 + 0.2 * (6.0 * x).sin() * (4.0 * y).cos(), 0.5, -0.3, 1.0 + 0.1 * y], GAMMA));
        }
    }
    out
}
