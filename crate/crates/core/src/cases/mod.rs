//! Test problems: initial and boundary data, exact solutions where known, a
//! run loop that writes snapshots and a manifest, and a convergence harness.

mod convergence;
mod library;
mod run;

use std::sync::Arc;

use crate::driver::{
    Boundaries1D, Boundaries2D, Boundary, LimiterKind, Mesh1D, Mesh2D, Simulation, Solver1D, Solver2D, SolverOptions,
};
use crate::equations::{Advection1D, Advection2D, Equation, Euler1D, Euler2D, Point, VelocityField};
use crate::error::{Error, Result};

pub use convergence::{convergence, convergence_in, error_norm, l2_error, ConvergenceRow, ConvergenceTable, Norm};
pub use library::{case_names, find_case};
pub use run::{run_case, RunConfig, RunOutput};

/// Mesh-dependent data available to initial conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Context {
    /// Element widths of the mesh being initialised.
    pub dx: [f64; 2],
    pub gamma: f64,
}

/// Primitive state at a point.
pub type InitialFn = Arc<dyn Fn(Point, &Context) -> Vec<f64> + Send + Sync>;
/// Primitive state at a point and time.
pub type ExactFn = Arc<dyn Fn(Point, f64, &Context) -> Vec<f64> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Physics {
    Euler { gamma: f64 },
    Advection { velocity: VelocityField },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    Transmissive,
    Reflecting,
    /// Inflow on the left and top, outflow on the right and on the bottom
    /// ahead of the wedge, reflecting wall behind it.
    DoubleMach,
    /// Inflow on the left, outflow elsewhere.
    Inflow,
}

#[derive(Clone)]
pub struct CaseSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub dim: usize,
    pub physics: Physics,
    /// `[[x0, x1], [y0, y1]]`; the y extent is `[0, 1]` in 1-D.
    pub domain: [[f64; 2]; 2],
    pub cells: [usize; 2],
    pub degree: usize,
    pub t_end: f64,
    pub safety: f64,
    pub include_ghosts: bool,
    pub tvb_m: f64,
    /// Region used for the blending statistics; the whole domain if `None`.
    pub window: Option<[[f64; 2]; 2]>,
    pub boundaries: BoundaryKind,
    pub initial: InitialFn,
    /// Boundary data for inflow conditions.
    pub inflow: Option<ExactFn>,
    pub exact: Option<ExactFn>,
}

impl std::fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CaseSpec")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("physics", &self.physics)
            .field("domain", &self.domain)
            .field("cells", &self.cells)
            .field("t_end", &self.t_end)
            .finish_non_exhaustive()
    }
}

impl CaseSpec {
    pub fn gamma(&self) -> Option<f64> {
        match self.physics {
            Physics::Euler { gamma } => Some(gamma),
            Physics::Advection { .. } => None,
        }
    }

    /// Replaces the ratio of specific heats of an Euler case.
    pub fn with_gamma(mut self, g: f64) -> Result<Self> {
        match self.physics {
            Physics::Euler { .. } if g > 1.0 => {
                self.physics = Physics::Euler { gamma: g };
                Ok(self)
            }
            Physics::Euler { .. } => Err(Error::Config(format!("gamma must exceed 1, got {g}"))),
            Physics::Advection { .. } => Err(Error::Config(format!("{} has no gamma", self.name))),
        }
    }

    pub fn context(&self, cells: [usize; 2]) -> Context {
        let d = self.domain;
        Context {
            dx: [(d[0][1] - d[0][0]) / cells[0] as f64, (d[1][1] - d[1][0]) / cells[1].max(1) as f64],
            gamma: self.gamma().unwrap_or(0.0),
        }
    }

    /// Options with the case's time-step settings and TVB parameter.
    pub fn default_options(&self) -> SolverOptions {
        let mut o = SolverOptions { limiter: LimiterKind::BlendMh, tvb_m: self.tvb_m, ..SolverOptions::default() };
        o.time.safety = self.safety;
        o.time.include_ghosts = self.include_ghosts;
        o
    }

    pub fn in_window(&self, p: Point) -> bool {
        match self.window {
            None => true,
            Some(w) => {
                (w[0][0]..=w[0][1]).contains(&p[0]) && (self.dim == 1 || (w[1][0]..=w[1][1]).contains(&p[1]))
            }
        }
    }

    /// Checks that the initial data is admissible at `m` equispaced points per
    /// element direction of a `cells` mesh.
    pub fn check_initial(&self, cells: [usize; 2], m: usize) -> Result<()> {
        let ctx = self.context(cells);
        let d = self.domain;
        let ny = if self.dim == 1 { 1 } else { cells[1] * m };
        let check = |p: Point, prim: Vec<f64>| -> Result<()> {
            if prim.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("initial data of {} at {p:?}", self.name)));
            }
            if let Physics::Euler { .. } = self.physics {
                let (rho, pr) = (prim[0], prim[prim.len() - 1]);
                if !(rho > 0.0 && pr > 0.0) {
                    return Err(Error::Inadmissible {
                        context: format!("initial data of {} at {p:?}", self.name),
                        constraint: if rho > 0.0 { 1 } else { 0 },
                        value: if rho > 0.0 { pr } else { rho },
                    });
                }
            }
            Ok(())
        };
        for j in 0..ny {
            let y = if self.dim == 1 { 0.0 } else { d[1][0] + (j as f64 + 0.5) * (d[1][1] - d[1][0]) / ny as f64 };
            for i in 0..cells[0] * m {
                let x = d[0][0] + (i as f64 + 0.5) * (d[0][1] - d[0][0]) / (cells[0] * m) as f64;
                check([x, y], (self.initial)([x, y], &ctx))?;
            }
        }
        Ok(())
    }

    /// Builds a solver on a `cells` mesh with the initial data interpolated at
    /// the solution points.
    pub fn build(&self, degree: usize, cells: [usize; 2], opts: SolverOptions) -> Result<Box<dyn Simulation>> {
        if cells[0] == 0 || (self.dim == 2 && cells[1] == 0) {
            return Err(Error::Config("cell counts must be positive".into()));
        }
        self.check_initial(cells, 2)?;
        match (self.dim, self.physics) {
            (1, Physics::Euler { gamma }) => self.build_1d(Euler1D::new(gamma), degree, cells, opts),
            (1, Physics::Advection { velocity: VelocityField::Constant(a) }) => {
                self.build_1d(Advection1D::new(a[0]), degree, cells, opts)
            }
            (2, Physics::Euler { gamma }) => self.build_2d(Euler2D::new(gamma), degree, cells, opts),
            (2, Physics::Advection { velocity }) => self.build_2d(Advection2D::new(velocity), degree, cells, opts),
            _ => Err(Error::Unsupported(format!("{} in {} dimensions", self.name, self.dim))),
        }
    }

    fn build_1d<E: Equation<V> + Clone + 'static, const V: usize>(
        &self,
        eq: E,
        degree: usize,
        cells: [usize; 2],
        opts: SolverOptions,
    ) -> Result<Box<dyn Simulation>> {
        let mesh = Mesh1D::uniform(self.domain[0][0], self.domain[0][1], cells[0])?;
        let b = |k: BoundaryKind| match k {
            BoundaryKind::Periodic => Ok(Boundary::Periodic),
            BoundaryKind::Transmissive => Ok(Boundary::Transmissive),
            BoundaryKind::Reflecting => Ok(Boundary::Reflecting),
            _ => Err(Error::Unsupported(format!("{k:?} boundaries in 1-D"))),
        };
        let bcs = if self.boundaries == BoundaryKind::Periodic {
            Boundaries1D::periodic()
        } else {
            Boundaries1D::same(b(self.boundaries)?)
        };
        let ctx = self.context(cells);
        let e2 = eq.clone();
        let s = Solver1D::new(eq, degree, mesh, bcs, opts, |x| e2.from_primitive(&(self.initial)([x, 0.0], &ctx)))?;
        Ok(Box::new(s))
    }

    fn build_2d<E: Equation<V> + Clone + 'static, const V: usize>(
        &self,
        eq: E,
        degree: usize,
        cells: [usize; 2],
        opts: SolverOptions,
    ) -> Result<Box<dyn Simulation>> {
        let d = self.domain;
        let mesh = Mesh2D::uniform((d[0][0], d[0][1]), (d[1][0], d[1][1]), cells[0], cells[1])?;
        let ctx = self.context(cells);
        let inflow = || -> Result<Boundary<V>> {
            let f = self.inflow.clone().ok_or_else(|| Error::Config(format!("{} has no inflow data", self.name)))?;
            let e = eq.clone();
            Ok(Boundary::dirichlet(move |p, t| e.from_primitive(&f(p, t, &ctx))))
        };
        let bcs = match self.boundaries {
            BoundaryKind::Periodic => Boundaries2D::periodic(),
            BoundaryKind::Transmissive => Boundaries2D::same(Boundary::Transmissive),
            BoundaryKind::Reflecting => Boundaries2D::same(Boundary::Reflecting),
            BoundaryKind::DoubleMach => Boundaries2D {
                left: inflow()?,
                right: Boundary::Transmissive,
                bottom: Boundary::Switch {
                    predicate: Arc::new(|p, _| p[0] < 1.0 / 6.0),
                    inside: Box::new(Boundary::Transmissive),
                    outside: Box::new(Boundary::Reflecting),
                },
                top: inflow()?,
            },
            BoundaryKind::Inflow => Boundaries2D {
                left: inflow()?,
                right: Boundary::Transmissive,
                bottom: Boundary::Transmissive,
                top: Boundary::Transmissive,
            },
        };
        let e2 = eq.clone();
        let s = Solver2D::new(eq, degree, mesh, bcs, opts, |p| e2.from_primitive(&(self.initial)(p, &ctx)))?;
        Ok(Box::new(s))
    }
}
