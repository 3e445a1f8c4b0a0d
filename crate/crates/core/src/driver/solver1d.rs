//! One-dimensional time loop.

use crate::basis::{Basis, NodeFamily};
use crate::equations::{rusanov_flux, Dir, Equation};
use crate::error::{Error, Result};
use crate::flux_correction::{correct_flux, mean_mismatch, FaceCorrection, FaceSide};
use crate::limiters::{alpha_raw_1d, scale_to_admissible, smooth_1d, tvb_limit_1d};
use crate::lwfr::{add_face_terms_1d, dissipation_speed, element_1d, interface_flux, LwElement1D, LwOperators};
use crate::state::State;
use crate::subcell::{
    low_order_element_1d, low_order_residual_1d, mh_cfl_diagnostic, LowOrder1D, MhCell, Neighbours1D, SubcellGrid,
};

use super::boundary::{Boundaries1D, Boundary};
use super::mesh::Mesh1D;
use super::options::{LimiterKind, SolverOptions, TimeConfig};
use super::{is_retryable, with_context, StepInfo, NG};

/// `dt = C_s CFL(N) min_e dx_e / lambda_e` with `lambda_e` the largest wave
/// speed of the element mean.
pub fn compute_dt_1d<E: Equation<V>, const V: usize>(
    eq: &E,
    means: &[State<V>],
    widths: &[f64],
    centres: &[f64],
    cfg: &TimeConfig,
    degree: usize,
) -> Result<f64> {
    if let Some(dt) = cfg.fixed_dt {
        return Ok(dt);
    }
    let mut inv = 0.0_f64;
    for (e, m) in means.iter().enumerate() {
        if !eq.is_admissible(m) {
            let k = (0..eq.num_constraints()).find(|&k| !(eq.constraint(k, m) > 0.0)).unwrap_or(0);
            return Err(Error::Inadmissible { context: format!("mean of element {e} in time step"), constraint: k, value: eq.constraint(k, m) });
        }
        let h = widths[e];
        let s = [centres[e] - 0.5 * h, centres[e], centres[e] + 0.5 * h]
            .iter()
            .map(|&x| eq.max_speed(m, [x, 0.0], Dir::X))
            .fold(0.0, f64::max);
        inv = inv.max(s / h);
    }
    let dt = cfg.safety * cfg.cfl_for(degree) / inv;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Config(format!("time step {dt} is not positive and finite")));
    }
    Ok(dt)
}

pub struct Solver1D<E: Equation<V>, const V: usize> {
    pub eq: E,
    pub basis: Basis,
    pub mesh: Mesh1D,
    pub bcs: Boundaries1D<V>,
    pub opts: SolverOptions,
    /// Nodal solution, `u[e * (N + 1) + j]`.
    pub u: Vec<State<V>>,
    /// Blending coefficients of the last step.
    pub alpha: Vec<f64>,
    pub t: f64,
    pub steps: usize,
    ops: LwOperators,
    grid: SubcellGrid,
    origin: Vec<f64>,
    width: Vec<f64>,
    pad: Vec<State<V>>,
    alpha_pad: Vec<f64>,
    lw: Vec<LwElement1D<V>>,
    low: Vec<LowOrder1D<V>>,
    faces: Vec<State<V>>,
    next: Vec<State<V>>,
}

impl<E: Equation<V>, const V: usize> Solver1D<E, V> {
    pub fn new(
        eq: E,
        degree: usize,
        mesh: Mesh1D,
        bcs: Boundaries1D<V>,
        opts: SolverOptions,
        ic: impl Fn(f64) -> State<V>,
    ) -> Result<Self> {
        if E::DIM != 1 {
            return Err(Error::Config(format!("{} is not a 1-D equation", eq.name())));
        }
        opts.validate()?;
        bcs.validate()?;
        let basis = Basis::new(degree, NodeFamily::GaussLegendre)?;
        let ops = LwOperators::new(&basis)?;
        let grid = SubcellGrid::new(&basis)?;
        let n = basis.n_nodes();
        let ne = mesh.cells();
        let periodic = bcs.periodic_flag();
        if ne < NG {
            return Err(Error::Config(format!("need at least {NG} elements")));
        }
        let (origin, width) = mesh.padded(NG, periodic);
        let mut u = Vec::with_capacity(ne * n);
        for e in 0..ne {
            for j in 0..n {
                let s = ic(mesh.edges[e] + basis.nodes[j] * mesh.width(e));
                if !s.is_finite() {
                    return Err(Error::NonFinite(format!("initial condition in element {e}")));
                }
                u.push(s);
            }
        }
        let dummy_lw = element_1d(&eq, &ops, &u[..n], 0.0, 1.0, 0.0);
        let dummy_low = LowOrder1D {
            inner: [State::zero(); crate::lwfr::MAX_NODES],
            left: State::zero(),
            right: State::zero(),
            cells: [MhCell::default(); crate::lwfr::MAX_NODES],
        };
        Ok(Solver1D {
            eq,
            basis,
            mesh,
            bcs,
            opts,
            next: u.clone(),
            u,
            alpha: vec![0.0; ne],
            t: 0.0,
            steps: 0,
            ops,
            grid,
            origin,
            width,
            pad: vec![State::zero(); (ne + 2 * NG) * n],
            alpha_pad: vec![0.0; ne + 2 * NG],
            lw: vec![dummy_lw; ne + 2],
            low: vec![dummy_low; ne + 2],
            faces: vec![State::zero(); ne + 1],
        })
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn n_nodes(&self) -> usize {
        self.basis.n_nodes()
    }

    pub fn cells(&self) -> usize {
        self.mesh.cells()
    }

    pub fn node_x(&self, e: usize, j: usize) -> f64 {
        self.mesh.edges[e] + self.basis.nodes[j] * self.mesh.width(e)
    }

    pub fn element(&self, e: usize) -> &[State<V>] {
        let n = self.n_nodes();
        &self.u[e * n..(e + 1) * n]
    }

    pub fn mean(&self, e: usize) -> State<V> {
        let mut m = State::zero();
        for (w, s) in self.basis.weights.iter().zip(self.element(e)) {
            m = m.axpy(*w, s);
        }
        m
    }

    /// Interface fluxes of the last step, left boundary first.
    pub fn face_fluxes(&self) -> &[State<V>] {
        &self.faces
    }

    pub fn means(&self) -> Vec<State<V>> {
        (0..self.cells()).map(|e| self.mean(e)).collect()
    }

    /// `sum_e dx_e mean_e`
    pub fn totals(&self) -> State<V> {
        let mut t = State::zero();
        for e in 0..self.cells() {
            t = t.axpy(self.mesh.width(e), &self.mean(e));
        }
        t
    }

    /// Solution polynomial of element `e` at reference coordinate `xi`.
    pub fn evaluate(&self, e: usize, xi: f64) -> State<V> {
        let l = self.basis.lagrange_at(xi);
        let mut s = State::zero();
        for (c, u) in l.iter().zip(self.element(e)) {
            s = s.axpy(*c, u);
        }
        s
    }

    pub fn compute_dt(&mut self) -> Result<f64> {
        let mut means = self.means();
        let mut widths: Vec<f64> = (0..self.cells()).map(|e| self.mesh.width(e)).collect();
        let mut centres: Vec<f64> = (0..self.cells()).map(|e| self.mesh.centre(e)).collect();
        if self.opts.time.include_ghosts {
            self.fill_ghosts(self.t);
            let n = self.n_nodes();
            for p in (0..NG).chain(NG + self.cells()..self.cells() + 2 * NG) {
                let mut m = State::zero();
                for j in 0..n {
                    m = m.axpy(self.basis.weights[j], &self.pad[p * n + j]);
                }
                means.push(m);
                widths.push(self.width[p]);
                centres.push(self.origin[p] + 0.5 * self.width[p]);
            }
        }
        compute_dt_1d(&self.eq, &means, &widths, &centres, &self.opts.time, self.degree())
    }

    fn ghost_values(
        &self,
        bc: &Boundary<V>,
        src: &[State<V>],
        origin: f64,
        width: f64,
        t: f64,
        out: &mut [State<V>],
    ) {
        let n = self.n_nodes();
        match bc {
            Boundary::Periodic => out.copy_from_slice(src),
            Boundary::Transmissive => {
                for j in 0..n {
                    out[j] = src[n - 1 - j];
                }
            }
            Boundary::Reflecting => {
                for j in 0..n {
                    out[j] = self.eq.reflect(&src[n - 1 - j], Dir::X);
                }
            }
            Boundary::Dirichlet(f) => {
                for j in 0..n {
                    out[j] = f([origin + self.basis.nodes[j] * width, 0.0], t);
                }
            }
            Boundary::Switch { .. } => unreachable!("switch resolved by caller"),
        }
    }

    /// Copies the interior solution into the padded array and fills ghosts.
    fn fill_ghosts(&mut self, t: f64) {
        let n = self.n_nodes();
        let ne = self.cells();
        self.pad[NG * n..(NG + ne) * n].copy_from_slice(&self.u);
        self.fill_ghost_layers(t, NG);
    }

    fn fill_ghost_layers(&mut self, t: f64, layers: usize) {
        let n = self.n_nodes();
        let ne = self.cells();
        let periodic = self.bcs.periodic_flag();
        let mut buf = vec![State::zero(); n];
        for g in 1..=layers {
            for side in 0..2 {
                let (p, src_e, bc) = if side == 0 {
                    (NG - g, if periodic { ne - g } else { g - 1 }, &self.bcs.left)
                } else {
                    (NG + ne - 1 + g, if periodic { g - 1 } else { ne - g }, &self.bcs.right)
                };
                let edge_e = if side == 0 { 0 } else { ne - 1 };
                let bc = bc.resolve([self.mesh.centre(edge_e), 0.0], t);
                let src: Vec<State<V>> = self.pad[(src_e + NG) * n..(src_e + NG + 1) * n].to_vec();
                self.ghost_values(bc, &src, self.origin[p], self.width[p], t, &mut buf);
                self.pad[p * n..(p + 1) * n].copy_from_slice(&buf);
            }
        }
    }

    fn compute_alpha(&mut self) {
        let n = self.n_nodes();
        let ne = self.cells();
        let periodic = self.bcs.periodic_flag();
        if let Some(a) = self.opts.force_alpha {
            self.alpha_pad.iter_mut().for_each(|x| *x = a);
        } else if self.opts.blending() {
            let cfg = &self.opts.indicator;
            let raw: Vec<f64> = (0..ne)
                .map(|e| {
                    let p = e + NG;
                    cfg.clip(alpha_raw_1d(&self.eq, &self.basis, cfg, &self.pad[p * n..(p + 1) * n]))
                })
                .collect();
            let smooth = smooth_1d(&raw, periodic);
            self.alpha_pad[NG..NG + ne].copy_from_slice(&smooth);
            for g in 1..=NG {
                let (l, r) = if periodic { (smooth[ne - g], smooth[g - 1]) } else { (smooth[0], smooth[ne - 1]) };
                self.alpha_pad[NG - g] = l;
                self.alpha_pad[NG + ne - 1 + g] = r;
            }
        } else {
            self.alpha_pad.iter_mut().for_each(|x| *x = 0.0);
        }
        self.alpha.copy_from_slice(&self.alpha_pad[NG..NG + ne]);
    }

    /// Computes the update with step `dt` into `self.next` without touching `self.u`.
    fn try_step(&mut self, dt: f64) -> Result<StepInfo> {
        let n = self.n_nodes();
        let ne = self.cells();
        let nd = n - 1;
        let periodic = self.bcs.periodic_flag();
        let low_scheme = self.opts.limiter.low_order();
        self.fill_ghosts(self.t);
        self.compute_alpha();
        let mut info = StepInfo { t: self.t, dt, ..StepInfo::default() };

        for q in 0..ne + 2 {
            let p = q + NG - 1;
            let el = &self.pad[p * n..(p + 1) * n];
            self.lw[q] = element_1d(&self.eq, &self.ops, el, self.origin[p], self.width[p], dt);
            if let Some(scheme) = low_scheme {
                let nb = Neighbours1D {
                    left: self.pad[(p - 1) * n + nd],
                    right: self.pad[(p + 1) * n],
                    h_left: self.basis.nodes[0] * self.width[p] + (1.0 - self.basis.nodes[nd]) * self.width[p - 1],
                    h_right: (1.0 - self.basis.nodes[nd]) * self.width[p] + self.basis.nodes[0] * self.width[p + 1],
                };
                let beta = self.opts.mh_beta.unwrap_or(2.0 - self.alpha_pad[p]);
                self.low[q] = low_order_element_1d(&self.eq, &self.grid, scheme, el, &nb, self.origin[p], self.width[p], dt, beta)
                    .map_err(|e| with_context(e, &format!("element {}", p as isize - NG as isize)))?;
            }
        }

        let mut min_lambda = 1.0_f64;
        for f in 0..=ne {
            let (ql, qr) = (f, f + 1);
            let (pl, pr) = (f + NG - 1, f + NG);
            let pos = [self.mesh.edges[f], 0.0];
            let (a, b) = (&self.lw[ql], &self.lw[qr]);
            let sigma = dissipation_speed(&self.eq, &a.right.sol, &b.left.sol, &self.pad[pl * n + nd], &self.pad[pr * n], pos, Dir::X);
            let f_lw = interface_flux(&a.right, &b.left, sigma);
            self.faces[f] = if low_scheme.is_some() {
                let f_low = rusanov_flux(&self.eq, &self.low[ql].right, &self.low[qr].left, pos, Dir::X);
                let af = 0.5 * (self.alpha_pad[pl] + self.alpha_pad[pr]);
                let blended = f_lw * (1.0 - af) + f_low * af;
                if self.opts.flux_correction {
                    let left = (periodic || f > 0).then(|| FaceSide {
                        u: self.pad[pl * n + nd],
                        inner: self.low[ql].inner[nd - 1],
                        coef: dt / (self.basis.weights[nd] * self.width[pl]),
                    });
                    let right = (periodic || f < ne).then(|| FaceSide {
                        u: self.pad[pr * n],
                        inner: self.low[qr].inner[0],
                        coef: dt / (self.basis.weights[0] * self.width[pr]),
                    });
                    let c = correct_flux(&self.eq, &FaceCorrection { blended, low: f_low, left, right })
                        .map_err(|e| with_context(e, &format!("face {f}")))?;
                    min_lambda = min_lambda.min(c.lambda);
                    c.flux
                } else {
                    blended
                }
            } else {
                f_lw
            };
        }
        info.min_lambda = min_lambda;

        let mut audit = 0.0_f64;
        for e in 0..ne {
            let p = e + NG;
            let q = e + 1;
            let lambda = dt / self.width[p];
            let mut high = self.lw[q].residual;
            add_face_terms_1d(&self.ops, &mut high, lambda, &self.faces[e], &self.faces[e + 1]);
            let base = &self.pad[p * n..(p + 1) * n];
            if low_scheme.is_some() {
                let mut low = low_order_residual_1d(&self.grid, &self.low[q].inner, dt, self.width[p]);
                low[0] = low[0].axpy(-dt / (self.basis.weights[0] * self.width[p]), &self.faces[e]);
                low[nd] = low[nd].axpy(dt / (self.basis.weights[nd] * self.width[p]), &self.faces[e + 1]);
                if self.opts.audit {
                    audit = audit.max(mean_mismatch(&self.basis.weights, base, &high[..n], &low[..n]));
                }
                let a = self.alpha_pad[p];
                for j in 0..n {
                    self.next[e * n + j] = base[j] - high[j] * (1.0 - a) - low[j] * a;
                }
            } else {
                for j in 0..n {
                    self.next[e * n + j] = base[j] - high[j];
                }
            }
        }
        if self.opts.audit {
            info.audit = Some(audit);
            if audit > 1e-13 {
                return Err(Error::InvariantBreach(format!("high and low order means differ by {audit:e} at t = {}", self.t)));
            }
        }

        if self.opts.cfl_diagnostic && low_scheme.is_some() {
            let mut cells = Vec::with_capacity((ne + 2) * n);
            let mut widths = Vec::with_capacity((ne + 2) * n);
            let mut mm = Vec::new();
            let mut mp = Vec::new();
            for q in 0..ne + 2 {
                let p = q + NG - 1;
                for j in 0..n {
                    cells.push(self.low[q].cells[j]);
                    widths.push(self.basis.weights[j] * self.width[p]);
                    mm.push(self.grid.mu_minus[j]);
                    mp.push(self.grid.mu_plus[j]);
                }
            }
            info.cfl_ratio = Some(mh_cfl_diagnostic(&self.eq, &cells, &widths, &mm, &mp, dt).max_ratio);
        }

        if self.opts.limiter == LimiterKind::Tvb {
            let mut ext = vec![State::zero(); (ne + 2) * n];
            ext[n..(ne + 1) * n].copy_from_slice(&self.next);
            // ghosts of the new solution
            std::mem::swap(&mut self.u, &mut self.next);
            self.fill_ghosts(self.t + dt);
            std::mem::swap(&mut self.u, &mut self.next);
            ext[..n].copy_from_slice(&self.pad[(NG - 1) * n..NG * n]);
            ext[(ne + 1) * n..].copy_from_slice(&self.pad[(NG + ne) * n..(NG + ne + 1) * n]);
            let widths: Vec<f64> = (0..ne).map(|e| self.mesh.width(e)).collect();
            info.tvb_limited = tvb_limit_1d(&self.eq, &self.basis, &self.opts.tvb(), &mut ext, &widths);
            self.next.copy_from_slice(&ext[n..(ne + 1) * n]);
        }

        let constrained = self.eq.num_constraints() > 0;
        for e in 0..ne {
            let el = &mut self.next[e * n..(e + 1) * n];
            if constrained && self.opts.scaling_limiter {
                scale_to_admissible(&self.eq, el, &self.basis.weights).map_err(|err| with_context(err, &format!("element {e}")))?;
            }
            for (j, s) in el.iter().enumerate() {
                if !s.is_finite() {
                    return Err(Error::NonFinite(format!("element {e} node {j} at t = {}", self.t + dt)));
                }
                if constrained {
                    for k in 0..self.eq.num_constraints() {
                        let value = self.eq.constraint(k, s);
                        if !(value > 0.0) {
                            return Err(Error::Inadmissible { context: format!("element {e} node {j} at t = {}", self.t + dt), constraint: k, value });
                        }
                    }
                }
            }
        }
        info.alpha_max = self.alpha.iter().cloned().fold(0.0, f64::max);
        info.alpha_fraction = self.alpha.iter().filter(|a| **a > 0.0).count() as f64 / ne as f64;
        Ok(info)
    }

    /// One step of size at most `dt`, halving on admissibility failures.
    pub fn step(&mut self, dt: f64) -> Result<StepInfo> {
        let mut dt = dt;
        let mut retries = 0;
        loop {
            match self.try_step(dt) {
                Ok(mut info) => {
                    std::mem::swap(&mut self.u, &mut self.next);
                    self.t += dt;
                    self.steps += 1;
                    info.retries = retries;
                    return Ok(info);
                }
                Err(e) if is_retryable(&e) && retries < self.opts.max_retries => {
                    dt *= 0.5;
                    retries += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// Advances to `t_end`, calling `observer` after every step.
    pub fn advance_to(&mut self, t_end: f64, mut observer: impl FnMut(&Self, &StepInfo)) -> Result<()> {
        let tol = 1e-13 * t_end.abs().max(1.0);
        while self.t < t_end - tol {
            let mut dt = self.compute_dt()?;
            if self.t + dt > t_end - tol {
                dt = t_end - self.t;
            }
            let info = self.step(dt)?;
            if self.t > t_end - tol {
                self.t = t_end;
            }
            observer(self, &info);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{euler_prim_to_cons_1d, Advection1D, Euler1D};
    use approx::assert_abs_diff_eq;

    #[test]
    fn time_step_example() {
        let eq = Euler1D::new(1.4);
        let m = euler_prim_to_cons_1d(&[1.0, 0.0, 1.0], 1.4);
        let dt = compute_dt_1d(&eq, &[m], &[1.0], &[0.5], &TimeConfig::default(), 4).unwrap();
        assert_abs_diff_eq!(dt, 0.98 / 1.4f64.sqrt() * 0.069, epsilon = 1e-15);
        assert!((dt - 0.05715).abs() < 1e-5);
        let cfg = TimeConfig { safety: 0.0, ..TimeConfig::default() };
        assert!(compute_dt_1d(&eq, &[m], &[1.0], &[0.5], &cfg, 4).is_err());
        assert!(compute_dt_1d(&eq, &[State([1.0, 0.0, -1.0])], &[1.0], &[0.5], &TimeConfig::default(), 4).is_err());
    }

    fn advection_solver(limiter: LimiterKind, cells: usize, degree: usize) -> Solver1D<Advection1D, 1> {
        let opts = SolverOptions { limiter, ..SolverOptions::default() };
        let mesh = Mesh1D::uniform(0.0, 1.0, cells).unwrap();
        Solver1D::new(Advection1D::new(1.0), degree, mesh, Boundaries1D::periodic(), opts, |x| {
            State([(2.0 * std::f64::consts::PI * x).sin()])
        })
        .unwrap()
    }

    #[test]
    fn smooth_advection_period_is_accurate() {
        let mut s = advection_solver(LimiterKind::BlendMh, 40, 3);
        s.advance_to(1.0, |_, _| {}).unwrap();
        let mut err = 0.0;
        for e in 0..40 {
            for j in 0..4 {
                let x = s.node_x(e, j);
                let d = s.u[e * 4 + j][0] - (2.0 * std::f64::consts::PI * x).sin();
                err += s.basis.weights[j] * s.mesh.width(e) * d * d;
            }
        }
        assert!(err.sqrt() < 1e-5, "L2 error {}", err.sqrt());
    }

    #[test]
    fn zero_final_time_keeps_projection() {
        let mut s = advection_solver(LimiterKind::BlendFo, 8, 2);
        let before = s.u.clone();
        s.advance_to(0.0, |_, _| {}).unwrap();
        assert_eq!(s.u, before);
    }

    #[test]
    fn alpha_zero_blend_matches_pure_high_order() {
        let mut a = advection_solver(LimiterKind::BlendMh, 10, 4);
        a.opts.force_alpha = Some(0.0);
        let mut b = advection_solver(LimiterKind::None, 10, 4);
        a.step(0.005).unwrap();
        b.step(0.005).unwrap();
        for (x, y) in a.u.iter().zip(&b.u) {
            assert_abs_diff_eq!(x[0], y[0], epsilon = 1e-14);
        }
    }

    #[test]
    fn reflecting_wall_ghost() {
        let eq = Euler1D::new(1.4);
        let mesh = Mesh1D::uniform(0.0, 1.0, 4).unwrap();
        let c = euler_prim_to_cons_1d(&[1.0, 2.0, 1.0], 1.4);
        let mut s = Solver1D::new(eq, 2, mesh, Boundaries1D::same(Boundary::Reflecting), SolverOptions::default(), |_| c).unwrap();
        s.fill_ghosts(0.0);
        let g = s.pad[(NG - 1) * 3];
        let p = eq.to_primitive(&g);
        assert_abs_diff_eq!(p[0], 1.0);
        assert_abs_diff_eq!(p[1], -2.0);
        assert_abs_diff_eq!(p[2], 1.0, epsilon = 1e-14);
        let mut t = Solver1D::new(eq, 2, Mesh1D::uniform(0.0, 1.0, 4).unwrap(), Boundaries1D::same(Boundary::Transmissive), SolverOptions::default(), |x| {
            euler_prim_to_cons_1d(&[1.0 + x, 0.0, 1.0], 1.4)
        })
        .unwrap();
        t.fill_ghosts(0.0);
        assert_eq!(t.pad[(NG - 1) * 3 + 2], t.u[0]);
    }

    #[test]
    fn sod_step_means_independent_of_audit() {
        let run = |audit: bool| {
            let eq = Euler1D::new(1.4);
            let opts = SolverOptions { audit, ..SolverOptions::default() };
            let mesh = Mesh1D::uniform(0.0, 1.0, 50).unwrap();
            let mut s = Solver1D::new(eq, 4, mesh, Boundaries1D::same(Boundary::Transmissive), opts, |x| {
                if x < 0.5 {
                    euler_prim_to_cons_1d(&[1.0, 0.0, 1.0], 1.4)
                } else {
                    euler_prim_to_cons_1d(&[0.125, 0.0, 0.1], 1.4)
                }
            })
            .unwrap();
            let dt = s.compute_dt().unwrap();
            let info = s.step(dt).unwrap();
            if audit {
                assert!(info.audit.unwrap() <= 1e-13);
            }
            for x in &s.u {
                assert!(eq.is_admissible(x));
            }
            s.means()
        };
        assert_eq!(run(true), run(false));
    }
}
