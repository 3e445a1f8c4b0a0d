//! Boundary conditions imposed through ghost elements.

use std::fmt;
use std::sync::Arc;

use crate::equations::Point;
use crate::error::{Error, Result};
use crate::state::State;

pub type StateFn<const V: usize> = Arc<dyn Fn(Point, f64) -> State<V> + Send + Sync>;
pub type PointPredicate = Arc<dyn Fn(Point, f64) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Boundary<const V: usize> {
    Periodic,
    /// Zero-gradient copy of the adjacent element, mirrored.
    Transmissive,
    /// Mirrored copy with the normal momentum negated.
    Reflecting,
    /// Prescribed state evaluated at the ghost solution points.
    Dirichlet(StateFn<V>),
    /// Chooses between two conditions from the centre of the adjacent
    /// boundary element and the time.
    Switch { predicate: PointPredicate, inside: Box<Boundary<V>>, outside: Box<Boundary<V>> },
}

impl<const V: usize> fmt::Debug for Boundary<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => write!(f, "periodic"),
            Boundary::Transmissive => write!(f, "transmissive"),
            Boundary::Reflecting => write!(f, "reflecting"),
            Boundary::Dirichlet(_) => write!(f, "dirichlet"),
            Boundary::Switch { inside, outside, .. } => write!(f, "switch({inside:?} | {outside:?})"),
        }
    }
}

impl<const V: usize> Boundary<V> {
    pub fn dirichlet(f: impl Fn(Point, f64) -> State<V> + Send + Sync + 'static) -> Self {
        Boundary::Dirichlet(Arc::new(f))
    }

    pub fn constant(u: State<V>) -> Self {
        Boundary::Dirichlet(Arc::new(move |_, _| u))
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic)
    }

    /// The non-switching condition that applies at `centre` and time `t`.
    pub fn resolve(&self, centre: Point, t: f64) -> &Boundary<V> {
        match self {
            Boundary::Switch { predicate, inside, outside } => {
                if predicate(centre, t) {
                    inside.resolve(centre, t)
                } else {
                    outside.resolve(centre, t)
                }
            }
            b => b,
        }
    }

    pub fn short_name(&self) -> String {
        format!("{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct Boundaries1D<const V: usize> {
    pub left: Boundary<V>,
    pub right: Boundary<V>,
}

impl<const V: usize> Boundaries1D<V> {
    pub fn periodic() -> Self {
        Boundaries1D { left: Boundary::Periodic, right: Boundary::Periodic }
    }

    pub fn same(b: Boundary<V>) -> Self {
        Boundaries1D { left: b.clone(), right: b }
    }

    pub fn validate(&self) -> Result<()> {
        if self.left.is_periodic() != self.right.is_periodic() {
            return Err(Error::Config("periodic boundaries must be paired".into()));
        }
        Ok(())
    }

    pub fn periodic_flag(&self) -> bool {
        self.left.is_periodic()
    }
}

#[derive(Clone, Debug)]
pub struct Boundaries2D<const V: usize> {
    pub left: Boundary<V>,
    pub right: Boundary<V>,
    pub bottom: Boundary<V>,
    pub top: Boundary<V>,
}

impl<const V: usize> Boundaries2D<V> {
    pub fn periodic() -> Self {
        Boundaries2D { left: Boundary::Periodic, right: Boundary::Periodic, bottom: Boundary::Periodic, top: Boundary::Periodic }
    }

    pub fn same(b: Boundary<V>) -> Self {
        Boundaries2D { left: b.clone(), right: b.clone(), bottom: b.clone(), top: b }
    }

    pub fn validate(&self) -> Result<()> {
        if self.left.is_periodic() != self.right.is_periodic() || self.bottom.is_periodic() != self.top.is_periodic() {
            return Err(Error::Config("periodic boundaries must be paired".into()));
        }
        Ok(())
    }

    pub fn periodic_flags(&self) -> [bool; 2] {
        [self.left.is_periodic(), self.bottom.is_periodic()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unpaired_periodic_is_rejected() {
        let b = Boundaries1D::<1> { left: Boundary::Periodic, right: Boundary::Transmissive };
        assert!(matches!(b.validate(), Err(Error::Config(_))));
        assert!(Boundaries1D::<1>::periodic().validate().is_ok());
    }

    #[test]
    fn switch_resolves_by_position() {
        let b = Boundary::<1>::Switch {
            predicate: Arc::new(|p, _| p[0] < 0.5),
            inside: Box::new(Boundary::Transmissive),
            outside: Box::new(Boundary::Reflecting),
        };
        assert!(matches!(b.resolve([0.1, 0.0], 0.0), Boundary::Transmissive));
        assert!(matches!(b.resolve([0.9, 0.0], 0.0), Boundary::Reflecting));
    }
}
