//! Dimension- and equation-erased access to a running solver.

use serde::{Deserialize, Serialize};

use crate::equations::{Equation, Point};
use crate::error::{Error, Result};
use crate::io::Table;
use crate::state::State;

use super::{Solver1D, Solver2D, SolverOptions, StepInfo};

/// Solver state sufficient to resume a run bitwise identically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: f64,
    pub steps: usize,
    pub vars: usize,
    pub data: Vec<f64>,
}

pub trait Simulation {
    fn dim(&self) -> usize;
    fn degree(&self) -> usize;
    fn cells(&self) -> [usize; 2];
    fn time(&self) -> f64;
    fn steps(&self) -> usize;
    fn options(&self) -> &SolverOptions;
    fn options_mut(&mut self) -> &mut SolverOptions;
    /// Advances to `t_end`; the observer sees each step and the blending
    /// coefficients it used.
    fn advance(&mut self, t_end: f64, observer: &mut dyn FnMut(&StepInfo, &[f64])) -> Result<()>;
    fn step_once(&mut self, dt: f64) -> Result<StepInfo>;
    fn compute_dt(&mut self) -> Result<f64>;
    fn conserved_names(&self) -> Vec<String>;
    fn totals(&self) -> Vec<f64>;
    /// Blending coefficients of the last step, element-major.
    fn alpha(&self) -> &[f64];
    fn element_centres(&self) -> Vec<Point>;
    /// Smallest admissibility constraint over all nodes, `+inf` if unconstrained.
    fn min_constraint(&self) -> f64;
    /// Values of primitive variable `var` at `m` equispaced interior points per
    /// element direction, as `(point, weight, value)`.
    fn samples(&self, var: usize, m: usize) -> Vec<(Point, f64, f64)>;
    /// Primitive variable `var` of the polynomial solution at `p`.
    fn value_at(&self, var: usize, p: Point) -> f64;
    fn snapshot(&self) -> Table;
    fn checkpoint(&self) -> Checkpoint;
    fn restore(&mut self, c: &Checkpoint) -> Result<()>;
}

fn flatten<const V: usize>(u: &[State<V>]) -> Vec<f64> {
    u.iter().flat_map(|s| s.0).collect()
}

fn unflatten<const V: usize>(c: &Checkpoint, len: usize) -> Result<Vec<State<V>>> {
    if c.vars != V || c.data.len() != len * V {
        return Err(Error::Config(format!("checkpoint holds {} values of {} variables, expected {} of {V}", c.data.len(), c.vars, len * V)));
    }
    Ok(c.data.chunks(V).map(State::from_slice).collect())
}

fn min_constraint<E: Equation<V>, const V: usize>(eq: &E, u: &[State<V>]) -> f64 {
    let mut m = f64::INFINITY;
    for s in u {
        for k in 0..eq.num_constraints() {
            m = m.min(eq.constraint(k, s));
        }
    }
    m
}

fn value_columns<E: Equation<V>, const V: usize>(eq: &E) -> (Vec<String>, Vec<usize>) {
    let mut cols: Vec<String> = eq.conserved_names().iter().map(|s| s.to_string()).collect();
    let mut keep = Vec::new();
    for (k, p) in eq.primitive_names().iter().enumerate() {
        if !cols.iter().any(|c| c == p) {
            cols.push(p.to_string());
            keep.push(k);
        }
    }
    (cols, keep)
}

impl<E: Equation<V>, const V: usize> Simulation for Solver1D<E, V> {
    fn dim(&self) -> usize {
        1
    }
    fn degree(&self) -> usize {
        self.basis.degree
    }
    fn cells(&self) -> [usize; 2] {
        [self.mesh.cells(), 1]
    }
    fn time(&self) -> f64 {
        self.t
    }
    fn steps(&self) -> usize {
        self.steps
    }
    fn options(&self) -> &SolverOptions {
        &self.opts
    }
    fn options_mut(&mut self) -> &mut SolverOptions {
        &mut self.opts
    }
    fn advance(&mut self, t_end: f64, observer: &mut dyn FnMut(&StepInfo, &[f64])) -> Result<()> {
        self.advance_to(t_end, |s, i| observer(i, &s.alpha))
    }
    fn step_once(&mut self, dt: f64) -> Result<StepInfo> {
        self.step(dt)
    }
    fn compute_dt(&mut self) -> Result<f64> {
        Solver1D::compute_dt(self)
    }
    fn conserved_names(&self) -> Vec<String> {
        self.eq.conserved_names().iter().map(|s| s.to_string()).collect()
    }
    fn totals(&self) -> Vec<f64> {
        Solver1D::totals(self).0.to_vec()
    }
    fn alpha(&self) -> &[f64] {
        &self.alpha
    }
    fn element_centres(&self) -> Vec<Point> {
        (0..self.mesh.cells()).map(|e| [self.mesh.centre(e), 0.0]).collect()
    }
    fn min_constraint(&self) -> f64 {
        min_constraint(&self.eq, &self.u)
    }
    fn samples(&self, var: usize, m: usize) -> Vec<(Point, f64, f64)> {
        let mut out = Vec::with_capacity(self.mesh.cells() * m);
        for e in 0..self.mesh.cells() {
            let h = self.mesh.width(e);
            for k in 0..m {
                let xi = (k as f64 + 0.5) / m as f64;
                let v = self.eq.to_primitive(&self.evaluate(e, xi))[var];
                out.push(([self.mesh.edges[e] + xi * h, 0.0], h / m as f64, v));
            }
        }
        out
    }
    fn value_at(&self, var: usize, p: Point) -> f64 {
        let e = self.mesh.locate(p[0]);
        let xi = ((p[0] - self.mesh.edges[e]) / self.mesh.width(e)).clamp(0.0, 1.0);
        self.eq.to_primitive(&self.evaluate(e, xi))[var]
    }
    fn snapshot(&self) -> Table {
        let (vals, keep) = value_columns(&self.eq);
        let mut cols: Vec<String> = ["x", "element", "node"].iter().map(|s| s.to_string()).collect();
        cols.extend(vals);
        cols.push("alpha".into());
        let mut t = Table::new(self.t, cols);
        let n = self.basis.n_nodes();
        for e in 0..self.mesh.cells() {
            for j in 0..n {
                let u = &self.u[e * n + j];
                let prim = self.eq.to_primitive(u);
                let mut row = vec![self.node_x(e, j), e as f64, j as f64];
                row.extend_from_slice(&u.0);
                row.extend(keep.iter().map(|&k| prim[k]));
                row.push(self.alpha[e]);
                t.rows.push(row);
            }
        }
        t
    }
    fn checkpoint(&self) -> Checkpoint {
        Checkpoint { t: self.t, steps: self.steps, vars: V, data: flatten(&self.u) }
    }
    fn restore(&mut self, c: &Checkpoint) -> Result<()> {
        self.u = unflatten(c, self.u.len())?;
        self.t = c.t;
        self.steps = c.steps;
        Ok(())
    }
}

impl<E: Equation<V>, const V: usize> Simulation for Solver2D<E, V> {
    fn dim(&self) -> usize {
        2
    }
    fn degree(&self) -> usize {
        self.basis.degree
    }
    fn cells(&self) -> [usize; 2] {
        [self.nx(), self.ny()]
    }
    fn time(&self) -> f64 {
        self.t
    }
    fn steps(&self) -> usize {
        self.steps
    }
    fn options(&self) -> &SolverOptions {
        &self.opts
    }
    fn options_mut(&mut self) -> &mut SolverOptions {
        &mut self.opts
    }
    fn advance(&mut self, t_end: f64, observer: &mut dyn FnMut(&StepInfo, &[f64])) -> Result<()> {
        self.advance_to(t_end, |s, i| observer(i, &s.alpha))
    }
    fn step_once(&mut self, dt: f64) -> Result<StepInfo> {
        self.step(dt)
    }
    fn compute_dt(&mut self) -> Result<f64> {
        Solver2D::compute_dt(self)
    }
    fn conserved_names(&self) -> Vec<String> {
        self.eq.conserved_names().iter().map(|s| s.to_string()).collect()
    }
    fn totals(&self) -> Vec<f64> {
        Solver2D::totals(self).0.to_vec()
    }
    fn alpha(&self) -> &[f64] {
        &self.alpha
    }
    fn element_centres(&self) -> Vec<Point> {
        let mut c = Vec::with_capacity(self.nx() * self.ny());
        for ey in 0..self.ny() {
            for ex in 0..self.nx() {
                c.push([self.mesh.x.centre(ex), self.mesh.y.centre(ey)]);
            }
        }
        c
    }
    fn min_constraint(&self) -> f64 {
        min_constraint(&self.eq, &self.u)
    }
    fn samples(&self, var: usize, m: usize) -> Vec<(Point, f64, f64)> {
        let mut out = Vec::with_capacity(self.nx() * self.ny() * m * m);
        for ey in 0..self.ny() {
            for ex in 0..self.nx() {
                let (hx, hy) = (self.mesh.x.width(ex), self.mesh.y.width(ey));
                let w = hx * hy / (m * m) as f64;
                for l in 0..m {
                    let eta = (l as f64 + 0.5) / m as f64;
                    for k in 0..m {
                        let xi = (k as f64 + 0.5) / m as f64;
                        let v = self.eq.to_primitive(&self.evaluate(ex, ey, xi, eta))[var];
                        out.push(([self.mesh.x.edges[ex] + xi * hx, self.mesh.y.edges[ey] + eta * hy], w, v));
                    }
                }
            }
        }
        out
    }
    fn value_at(&self, var: usize, p: Point) -> f64 {
        let (ex, ey) = (self.mesh.x.locate(p[0]), self.mesh.y.locate(p[1]));
        let xi = ((p[0] - self.mesh.x.edges[ex]) / self.mesh.x.width(ex)).clamp(0.0, 1.0);
        let eta = ((p[1] - self.mesh.y.edges[ey]) / self.mesh.y.width(ey)).clamp(0.0, 1.0);
        self.eq.to_primitive(&self.evaluate(ex, ey, xi, eta))[var]
    }
    fn snapshot(&self) -> Table {
        let (vals, keep) = value_columns(&self.eq);
        let mut cols: Vec<String> = ["x", "y", "ex", "ey", "i", "j"].iter().map(|s| s.to_string()).collect();
        cols.extend(vals);
        cols.push("alpha".into());
        let mut t = Table::new(self.t, cols);
        let n = self.basis.n_nodes();
        for ey in 0..self.ny() {
            for ex in 0..self.nx() {
                let el = self.element(ex, ey);
                let a = self.alpha[ey * self.nx() + ex];
                for j in 0..n {
                    for i in 0..n {
                        let u = &el[j * n + i];
                        let p = self.node_point(ex, ey, i, j);
                        let prim = self.eq.to_primitive(u);
                        let mut row = vec![p[0], p[1], ex as f64, ey as f64, i as f64, j as f64];
                        row.extend_from_slice(&u.0);
                        row.extend(keep.iter().map(|&k| prim[k]));
                        row.push(a);
                        t.rows.push(row);
                    }
                }
            }
        }
        t
    }
    fn checkpoint(&self) -> Checkpoint {
        Checkpoint { t: self.t, steps: self.steps, vars: V, data: flatten(&self.u) }
    }
    fn restore(&mut self, c: &Checkpoint) -> Result<()> {
        self.u = unflatten(c, self.u.len())?;
        self.t = c.t;
        self.steps = c.steps;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::{Boundaries1D, Boundary, Mesh1D};
    use crate::equations::{euler_prim_to_cons_1d, Euler1D};

    fn sod() -> Solver1D<Euler1D, 3> {
        let mesh = Mesh1D::uniform(0.0, 1.0, 30).unwrap();
        Solver1D::new(Euler1D::new(1.4), 3, mesh, Boundaries1D::same(Boundary::Transmissive), SolverOptions::default(), |x| {
            if x < 0.5 {
                euler_prim_to_cons_1d(&[1.0, 0.0, 1.0], 1.4)
            } else {
                euler_prim_to_cons_1d(&[0.125, 0.0, 0.1], 1.4)
            }
        })
        .unwrap()
    }

    #[test]
    fn restart_is_bitwise() {
        let mut a = sod();
        a.advance(0.05, &mut |_, _| {}).unwrap();
        let c = a.checkpoint();
        a.advance(0.1, &mut |_, _| {}).unwrap();
        let mut b = sod();
        b.restore(&c).unwrap();
        b.advance(0.1, &mut |_, _| {}).unwrap();
        assert_eq!(a.u, b.u);
        assert_eq!(a.snapshot(), b.snapshot());
    }

    #[test]
    fn snapshot_columns() {
        let s = sod();
        let t = s.snapshot();
        assert_eq!(t.columns, ["x", "element", "node", "rho", "rho_v", "E", "density", "velocity", "pressure", "alpha"]);
        assert_eq!(t.rows.len(), 120);
        assert_eq!(t.column("pressure").unwrap()[119], 0.1);
        assert!((s.value_at(0, [0.2, 0.0]) - 1.0).abs() < 1e-14);
        assert!((s.value_at(2, [0.9, 0.0]) - 0.1).abs() < 1e-14);
    }
}
