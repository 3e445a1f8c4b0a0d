//! Fixed-size conserved-variable vectors.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};

/// A vector of `V` conserved quantities at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State<const V: usize>(pub [f64; V]);

impl<const V: usize> State<V> {
    pub const fn zero() -> Self {
        State([0.0; V])
    }

    pub const fn splat(value: f64) -> Self {
        State([value; V])
    }

    pub fn from_slice(values: &[f64]) -> Self {
        let mut out = [0.0; V];
        out.copy_from_slice(values);
        State(out)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `self + scale * other`
    #[inline(always)]
    pub fn axpy(&self, scale: f64, other: &Self) -> Self {
        let mut out = self.0;
        for (o, x) in out.iter_mut().zip(other.0.iter()) {
            *o += scale * x;
        }
        State(out)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        State(self.0.map(f))
    }
}

impl<const V: usize> Default for State<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const V: usize> Index<usize> for State<V> {
    type Output = f64;
    #[inline(always)]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const V: usize> IndexMut<usize> for State<V> {
    #[inline(always)]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl<const V: usize> Add for State<V> {
    type Output = Self;
    #[inline(always)]
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const V: usize> AddAssign for State<V> {
    #[inline(always)]
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl<const V: usize> Sub for State<V> {
    type Output = Self;
    #[inline(always)]
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<const V: usize> SubAssign for State<V> {
    #[inline(always)]
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl<const V: usize> Mul<f64> for State<V> {
    type Output = Self;
    #[inline(always)]
    fn mul(mut self, rhs: f64) -> Self {
        self *= rhs;
        self
    }
}

impl<const V: usize> Mul<State<V>> for f64 {
    type Output = State<V>;
    #[inline(always)]
    fn mul(self, rhs: State<V>) -> State<V> {
        rhs * self
    }
}

impl<const V: usize> MulAssign<f64> for State<V> {
    #[inline(always)]
    fn mul_assign(&mut self, rhs: f64) {
        for a in self.0.iter_mut() {
            *a *= rhs;
        }
    }
}

impl<const V: usize> Neg for State<V> {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl<const V: usize> From<[f64; V]> for State<V> {
    fn from(values: [f64; V]) -> Self {
        State(values)
    }
}
