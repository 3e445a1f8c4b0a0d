//! Two-dimensional time loop on Cartesian meshes.

use crate::basis::{Basis, NodeFamily};
use crate::equations::{rusanov_flux, Dir, Equation, Point};
use crate::error::{Error, Result};
use crate::flux_correction::{correct_flux, mean_mismatch, FaceCorrection, FaceSide};
use crate::limiters::{alpha_raw_2d, scale_to_admissible, smooth_2d};
use crate::lwfr::{
    add_face_terms_2d, dissipation_speed, element_2d, interface_flux, Cell2D, LwElement2D, LwOperators, MAX_NODES,
    MAX_NODES_2D,
};
use crate::state::State;
use crate::subcell::{low_order_element_2d, low_order_residual_2d, LowOrder2D, Neighbours2D, SubcellGrid};

use super::boundary::{Boundaries2D, Boundary};
use super::mesh::Mesh2D;
use super::options::{LimiterKind, SolverOptions, TimeConfig};
use super::{is_retryable, with_context, StepInfo, NG};

/// Element mean together with the sample points used for its wave speeds.
pub struct SpeedSample<const V: usize> {
    pub mean: State<V>,
    pub points: [Point; 5],
    pub dx: f64,
    pub dy: f64,
}

/// `dt = C_s CFL(N) / max_e (a_x / dx + a_y / dy)`.
pub fn compute_dt_2d<E: Equation<V>, const V: usize>(
    eq: &E,
    samples: &[SpeedSample<V>],
    cfg: &TimeConfig,
    degree: usize,
) -> Result<f64> {
    if let Some(dt) = cfg.fixed_dt {
        return Ok(dt);
    }
    let mut inv = 0.0_f64;
    for (e, s) in samples.iter().enumerate() {
        if !eq.is_admissible(&s.mean) {
            let k = (0..eq.num_constraints()).find(|&k| !(eq.constraint(k, &s.mean) > 0.0)).unwrap_or(0);
            return Err(Error::Inadmissible {
                context: format!("mean of element {e} in time step"),
                constraint: k,
                value: eq.constraint(k, &s.mean),
            });
        }
        let ax = s.points.iter().map(|p| eq.max_speed(&s.mean, *p, Dir::X)).fold(0.0, f64::max);
        let ay = s.points.iter().map(|p| eq.max_speed(&s.mean, *p, Dir::Y)).fold(0.0, f64::max);
        inv = inv.max(ax / s.dx + ay / s.dy);
    }
    let dt = cfg.safety * cfg.cfl_for(degree) / inv;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Config(format!("time step {dt} is not positive and finite")));
    }
    Ok(dt)
}

pub struct Solver2D<E: Equation<V>, const V: usize> {
    pub eq: E,
    pub basis: Basis,
    pub mesh: Mesh2D,
    pub bcs: Boundaries2D<V>,
    pub opts: SolverOptions,
    /// `u[(ey * nx + ex) * n^2 + j * n + i]`.
    pub u: Vec<State<V>>,
    /// Blending coefficients of the last step, `alpha[ey * nx + ex]`.
    pub alpha: Vec<f64>,
    pub t: f64,
    pub steps: usize,
    ops: LwOperators,
    grid: SubcellGrid,
    ox: Vec<f64>,
    wx: Vec<f64>,
    oy: Vec<f64>,
    wy: Vec<f64>,
    pad: Vec<State<V>>,
    alpha_pad: Vec<f64>,
    kx: Vec<f64>,
    lw: Vec<LwElement2D<V>>,
    low: Vec<LowOrder2D<V>>,
    fx: Vec<State<V>>,
    gy: Vec<State<V>>,
    next: Vec<State<V>>,
}

impl<E: Equation<V>, const V: usize> Solver2D<E, V> {
    pub fn new(
        eq: E,
        degree: usize,
        mesh: Mesh2D,
        bcs: Boundaries2D<V>,
        opts: SolverOptions,
        ic: impl Fn(Point) -> State<V>,
    ) -> Result<Self> {
        if E::DIM != 2 {
            return Err(Error::Config(format!("{} is not a 2-D equation", eq.name())));
        }
        opts.validate()?;
        bcs.validate()?;
        if opts.limiter == LimiterKind::Tvb {
            return Err(Error::Unsupported("TVB limiter in two dimensions".into()));
        }
        let basis = Basis::new(degree, NodeFamily::GaussLegendre)?;
        let ops = LwOperators::new(&basis)?;
        let grid = SubcellGrid::new(&basis)?;
        let n = basis.n_nodes();
        let nn = n * n;
        let (nx, ny) = (mesh.nx(), mesh.ny());
        if nx < NG || ny < NG {
            return Err(Error::Config(format!("need at least {NG} elements per direction")));
        }
        let [px, py] = bcs.periodic_flags();
        let (ox, wx) = mesh.x.padded(NG, px);
        let (oy, wy) = mesh.y.padded(NG, py);
        let mut u = Vec::with_capacity(nx * ny * nn);
        for ey in 0..ny {
            for ex in 0..nx {
                for j in 0..n {
                    for i in 0..n {
                        let p = [
                            mesh.x.edges[ex] + basis.nodes[i] * mesh.x.width(ex),
                            mesh.y.edges[ey] + basis.nodes[j] * mesh.y.width(ey),
                        ];
                        let s = ic(p);
                        if !s.is_finite() {
                            return Err(Error::NonFinite(format!("initial condition in element ({ex}, {ey})")));
                        }
                        u.push(s);
                    }
                }
            }
        }
        let cell = Cell2D { origin: [0.0, 0.0], dx: 1.0, dy: 1.0 };
        let dummy_lw = element_2d(&eq, &ops, &u[..nn], cell, 0.0);
        let dummy_low = LowOrder2D {
            fx: [[State::zero(); MAX_NODES]; MAX_NODES],
            gy: [[State::zero(); MAX_NODES]; MAX_NODES],
            left: [State::zero(); MAX_NODES],
            right: [State::zero(); MAX_NODES],
            bottom: [State::zero(); MAX_NODES],
            top: [State::zero(); MAX_NODES],
        };
        let ring = (nx + 2) * (ny + 2);
        let npad = (nx + 2 * NG) * (ny + 2 * NG);
        Ok(Solver2D {
            eq,
            basis,
            mesh,
            bcs,
            opts,
            next: u.clone(),
            u,
            alpha: vec![0.0; nx * ny],
            t: 0.0,
            steps: 0,
            ops,
            grid,
            ox,
            wx,
            oy,
            wy,
            pad: vec![State::zero(); npad * nn],
            alpha_pad: vec![0.0; npad],
            kx: vec![0.5; npad],
            lw: vec![dummy_lw; ring],
            low: vec![dummy_low; ring],
            fx: vec![State::zero(); (nx + 1) * ny * n],
            gy: vec![State::zero(); nx * (ny + 1) * n],
        })
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn n_nodes(&self) -> usize {
        self.basis.n_nodes()
    }

    pub fn nx(&self) -> usize {
        self.mesh.nx()
    }

    pub fn ny(&self) -> usize {
        self.mesh.ny()
    }

    pub fn node_point(&self, ex: usize, ey: usize, i: usize, j: usize) -> Point {
        [
            self.mesh.x.edges[ex] + self.basis.nodes[i] * self.mesh.x.width(ex),
            self.mesh.y.edges[ey] + self.basis.nodes[j] * self.mesh.y.width(ey),
        ]
    }

    pub fn element(&self, ex: usize, ey: usize) -> &[State<V>] {
        let nn = self.n_nodes().pow(2);
        let e = ey * self.nx() + ex;
        &self.u[e * nn..(e + 1) * nn]
    }

    fn weighted_mean(&self, el: &[State<V>]) -> State<V> {
        let n = self.n_nodes();
        let mut m = State::zero();
        for j in 0..n {
            for i in 0..n {
                m = m.axpy(self.basis.weights[i] * self.basis.weights[j], &el[j * n + i]);
            }
        }
        m
    }

    pub fn mean(&self, ex: usize, ey: usize) -> State<V> {
        self.weighted_mean(self.element(ex, ey))
    }

    pub fn totals(&self) -> State<V> {
        let mut t = State::zero();
        for ey in 0..self.ny() {
            for ex in 0..self.nx() {
                t = t.axpy(self.mesh.x.width(ex) * self.mesh.y.width(ey), &self.mean(ex, ey));
            }
        }
        t
    }

    /// Solution polynomial of element `(ex, ey)` at reference coordinates.
    pub fn evaluate(&self, ex: usize, ey: usize, xi: f64, eta: f64) -> State<V> {
        let lx = self.basis.lagrange_at(xi);
        let ly = self.basis.lagrange_at(eta);
        let n = self.n_nodes();
        let el = self.element(ex, ey);
        let mut s = State::zero();
        for j in 0..n {
            for i in 0..n {
                s = s.axpy(lx[i] * ly[j], &el[j * n + i]);
            }
        }
        s
    }

    fn sample(&self, mean: State<V>, origin: Point, dx: f64, dy: f64) -> SpeedSample<V> {
        let (x0, y0) = (origin[0], origin[1]);
        SpeedSample {
            mean,
            points: [[x0 + 0.5 * dx, y0 + 0.5 * dy], [x0, y0], [x0 + dx, y0], [x0, y0 + dy], [x0 + dx, y0 + dy]],
            dx,
            dy,
        }
    }

    pub fn compute_dt(&mut self) -> Result<f64> {
        let (nx, ny) = (self.nx(), self.ny());
        let mut samples = Vec::with_capacity(nx * ny);
        for ey in 0..ny {
            for ex in 0..nx {
                samples.push(self.sample(
                    self.mean(ex, ey),
                    [self.mesh.x.edges[ex], self.mesh.y.edges[ey]],
                    self.mesh.x.width(ex),
                    self.mesh.y.width(ey),
                ));
            }
        }
        if self.opts.time.include_ghosts {
            self.fill_ghosts(self.t);
            let nn = self.n_nodes().pow(2);
            let w = nx + 2 * NG;
            for py in NG - 1..=NG + ny {
                for px in NG - 1..=NG + nx {
                    let interior = (NG..NG + nx).contains(&px) && (NG..NG + ny).contains(&py);
                    let corner = !(NG..NG + nx).contains(&px) && !(NG..NG + ny).contains(&py);
                    if interior || corner {
                        continue;
                    }
                    let p = py * w + px;
                    let m = self.weighted_mean(&self.pad[p * nn..(p + 1) * nn]);
                    samples.push(self.sample(m, [self.ox[px], self.oy[py]], self.wx[px], self.wy[py]));
                }
            }
        }
        compute_dt_2d(&self.eq, &samples, &self.opts.time, self.degree())
    }

    fn pad_index(&self, px: usize, py: usize) -> usize {
        py * (self.nx() + 2 * NG) + px
    }

    #[allow(clippy::too_many_arguments)]
    fn ghost_values(
        &self,
        bc: &Boundary<V>,
        src: &[State<V>],
        dir: Dir,
        origin: Point,
        dx: f64,
        dy: f64,
        t: f64,
        out: &mut [State<V>],
    ) {
        let n = self.n_nodes();
        let mirror = |i: usize, j: usize| match dir {
            Dir::X => j * n + (n - 1 - i),
            Dir::Y => (n - 1 - j) * n + i,
        };
        for j in 0..n {
            for i in 0..n {
                out[j * n + i] = match bc {
                    Boundary::Periodic => src[j * n + i],
                    Boundary::Transmissive => src[mirror(i, j)],
                    Boundary::Reflecting => self.eq.reflect(&src[mirror(i, j)], dir),
                    Boundary::Dirichlet(f) => {
                        f([origin[0] + self.basis.nodes[i] * dx, origin[1] + self.basis.nodes[j] * dy], t)
                    }
                    Boundary::Switch { .. } => unreachable!("switch resolved by caller"),
                };
            }
        }
    }

    fn fill_ghosts(&mut self, t: f64) {
        let n = self.n_nodes();
        let nn = n * n;
        let (nx, ny) = (self.nx(), self.ny());
        let [perx, pery] = self.bcs.periodic_flags();
        for ey in 0..ny {
            for ex in 0..nx {
                let d = self.pad_index(ex + NG, ey + NG);
                let s = (ey * nx + ex) * nn;
                self.pad[d * nn..(d + 1) * nn].copy_from_slice(&self.u[s..s + nn]);
            }
        }
        let mut buf = vec![State::zero(); nn];
        // x ghosts on interior rows
        for py in NG..NG + ny {
            let yc = self.oy[py] + 0.5 * self.wy[py];
            for g in 1..=NG {
                for side in 0..2 {
                    let (px, src, bc, edge) = if side == 0 {
                        (NG - g, if perx { nx - g } else { g - 1 }, &self.bcs.left, 0)
                    } else {
                        (NG + nx - 1 + g, if perx { g - 1 } else { nx - g }, &self.bcs.right, nx - 1)
                    };
                    let bc = bc.resolve([self.mesh.x.centre(edge), yc], t);
                    let s = self.pad_index(src + NG, py);
                    let srcv: Vec<State<V>> = self.pad[s * nn..(s + 1) * nn].to_vec();
                    self.ghost_values(bc, &srcv, Dir::X, [self.ox[px], self.oy[py]], self.wx[px], self.wy[py], t, &mut buf);
                    let d = self.pad_index(px, py);
                    self.pad[d * nn..(d + 1) * nn].copy_from_slice(&buf);
                }
            }
        }
        // y ghosts on all columns, corners included
        for px in 0..nx + 2 * NG {
            let xc = self.ox[px] + 0.5 * self.wx[px];
            for g in 1..=NG {
                for side in 0..2 {
                    let (py, src, bc, edge) = if side == 0 {
                        (NG - g, if pery { ny - g } else { g - 1 }, &self.bcs.bottom, 0)
                    } else {
                        (NG + ny - 1 + g, if pery { g - 1 } else { ny - g }, &self.bcs.top, ny - 1)
                    };
                    let bc = bc.resolve([xc, self.mesh.y.centre(edge)], t);
                    let s = self.pad_index(px, src + NG);
                    let srcv: Vec<State<V>> = self.pad[s * nn..(s + 1) * nn].to_vec();
                    self.ghost_values(bc, &srcv, Dir::Y, [self.ox[px], self.oy[py]], self.wx[px], self.wy[py], t, &mut buf);
                    let d = self.pad_index(px, py);
                    self.pad[d * nn..(d + 1) * nn].copy_from_slice(&buf);
                }
            }
        }
    }

    fn compute_alpha(&mut self) {
        let nn = self.n_nodes().pow(2);
        let (nx, ny) = (self.nx(), self.ny());
        let [perx, pery] = self.bcs.periodic_flags();
        if let Some(a) = self.opts.force_alpha {
            self.alpha_pad.iter_mut().for_each(|x| *x = a);
            self.alpha.iter_mut().for_each(|x| *x = a);
            return;
        }
        if !self.opts.blending() {
            self.alpha_pad.iter_mut().for_each(|x| *x = 0.0);
            self.alpha.iter_mut().for_each(|x| *x = 0.0);
            return;
        }
        let cfg = &self.opts.indicator;
        let mut raw = vec![0.0; nx * ny];
        for ey in 0..ny {
            for ex in 0..nx {
                let p = self.pad_index(ex + NG, ey + NG);
                raw[ey * nx + ex] = cfg.clip(alpha_raw_2d(&self.eq, &self.basis, cfg, &self.pad[p * nn..(p + 1) * nn]));
            }
        }
        self.alpha = smooth_2d(&raw, nx, ny, [perx, pery]);
        let w = nx + 2 * NG;
        for py in 0..ny + 2 * NG {
            for px in 0..w {
                let map = |p: usize, m: usize, per: bool| {
                    let e = p as isize - NG as isize;
                    if per {
                        e.rem_euclid(m as isize) as usize
                    } else {
                        e.clamp(0, m as isize - 1) as usize
                    }
                };
                let (ex, ey) = (map(px, nx, perx), map(py, ny, pery));
                self.alpha_pad[py * w + px] = self.alpha[ey * nx + ex];
            }
        }
    }

    fn ring_index(&self, px: usize, py: usize) -> usize {
        (py + 1 - NG) * (self.nx() + 2) + (px + 1 - NG)
    }

    fn try_step(&mut self, dt: f64) -> Result<StepInfo> {
        let n = self.n_nodes();
        let nn = n * n;
        let nd = n - 1;
        let (nx, ny) = (self.nx(), self.ny());
        let [perx, pery] = self.bcs.periodic_flags();
        let low_scheme = self.opts.limiter.low_order();
        self.fill_ghosts(self.t);
        self.compute_alpha();
        let mut info = StepInfo { t: self.t, dt, ..StepInfo::default() };
        let w = nx + 2 * NG;
        let xi0 = self.basis.nodes[0];
        let xin = self.basis.nodes[nd];

        for py in NG - 1..=NG + ny {
            for px in NG - 1..=NG + nx {
                let inx = (NG..NG + nx).contains(&px);
                let iny = (NG..NG + ny).contains(&py);
                if !inx && !iny {
                    continue;
                }
                let p = py * w + px;
                let q = self.ring_index(px, py);
                let cell = Cell2D { origin: [self.ox[px], self.oy[py]], dx: self.wx[px], dy: self.wy[py] };
                let el = &self.pad[p * nn..(p + 1) * nn];
                self.lw[q] = element_2d(&self.eq, &self.ops, el, cell, dt);
                if let Some(scheme) = low_scheme {
                    let mut nb = Neighbours2D {
                        left: [State::zero(); MAX_NODES],
                        right: [State::zero(); MAX_NODES],
                        bottom: [State::zero(); MAX_NODES],
                        top: [State::zero(); MAX_NODES],
                        h_left: xi0 * self.wx[px] + (1.0 - xin) * self.wx[px - 1],
                        h_right: (1.0 - xin) * self.wx[px] + xi0 * self.wx[px + 1],
                        h_bottom: xi0 * self.wy[py] + (1.0 - xin) * self.wy[py - 1],
                        h_top: (1.0 - xin) * self.wy[py] + xi0 * self.wy[py + 1],
                    };
                    let (l, r, b, t) = (p - 1, p + 1, p - w, p + w);
                    for k in 0..n {
                        nb.left[k] = self.pad[l * nn + k * n + nd];
                        nb.right[k] = self.pad[r * nn + k * n];
                        nb.bottom[k] = self.pad[b * nn + nd * n + k];
                        nb.top[k] = self.pad[t * nn + k];
                    }
                    let beta = self.opts.mh_beta.unwrap_or(2.0 - self.alpha_pad[p]);
                    self.low[q] = low_order_element_2d(&self.eq, &self.grid, scheme, el, &nb, cell, dt, beta).map_err(|e| {
                        with_context(e, &format!("element ({}, {})", px as isize - NG as isize, py as isize - NG as isize))
                    })?;
                    if self.opts.flux_correction {
                        let m = self.weighted_mean(el);
                        let c = [cell.origin[0] + 0.5 * cell.dx, cell.origin[1] + 0.5 * cell.dy];
                        let ax = self.eq.max_speed(&m, c, Dir::X);
                        let ay = self.eq.max_speed(&m, c, Dir::Y);
                        self.kx[p] = self.opts.split.kx(ax, ay, cell.dx, cell.dy);
                    }
                }
            }
        }

        let mut min_lambda = 1.0_f64;
        // x faces
        for ey in 0..ny {
            let py = ey + NG;
            for f in 0..=nx {
                let (pl, pr) = (py * w + f + NG - 1, py * w + f + NG);
                let (ql, qr) = (self.ring_index(f + NG - 1, py), self.ring_index(f + NG, py));
                for j in 0..n {
                    let pos = [self.mesh.x.edges[f], self.oy[py] + self.basis.nodes[j] * self.wy[py]];
                    let (a, b) = (&self.lw[ql].right[j], &self.lw[qr].left[j]);
                    let sigma = dissipation_speed(
                        &self.eq,
                        &a.sol,
                        &b.sol,
                        &self.pad[pl * nn + j * n + nd],
                        &self.pad[pr * nn + j * n],
                        pos,
                        Dir::X,
                    );
                    let f_lw = interface_flux(a, b, sigma);
                    let flux = if low_scheme.is_some() {
                        let f_low = rusanov_flux(&self.eq, &self.low[ql].right[j], &self.low[qr].left[j], pos, Dir::X);
                        let af = 0.5 * (self.alpha_pad[pl] + self.alpha_pad[pr]);
                        let blended = f_lw * (1.0 - af) + f_low * af;
                        if self.opts.flux_correction {
                            let left = (perx || f > 0).then(|| FaceSide {
                                u: self.pad[pl * nn + j * n + nd],
                                inner: self.low[ql].fx[j][nd - 1],
                                coef: dt / (self.kx[pl] * self.basis.weights[nd] * self.wx[f + NG - 1]),
                            });
                            let right = (perx || f < nx).then(|| FaceSide {
                                u: self.pad[pr * nn + j * n],
                                inner: self.low[qr].fx[j][0],
                                coef: dt / (self.kx[pr] * self.basis.weights[0] * self.wx[f + NG]),
                            });
                            let c = correct_flux(&self.eq, &FaceCorrection { blended, low: f_low, left, right })
                                .map_err(|e| with_context(e, &format!("x face {f} row {ey}")))?;
                            min_lambda = min_lambda.min(c.lambda);
                            c.flux
                        } else {
                            blended
                        }
                    } else {
                        f_lw
                    };
                    self.fx[(ey * (nx + 1) + f) * n + j] = flux;
                }
            }
        }
        // y faces
        for f in 0..=ny {
            for ex in 0..nx {
                let px = ex + NG;
                let (pb, pt) = ((f + NG - 1) * w + px, (f + NG) * w + px);
                let (qb, qt) = (self.ring_index(px, f + NG - 1), self.ring_index(px, f + NG));
                for i in 0..n {
                    let pos = [self.ox[px] + self.basis.nodes[i] * self.wx[px], self.mesh.y.edges[f]];
                    let (a, b) = (&self.lw[qb].top[i], &self.lw[qt].bottom[i]);
                    let sigma = dissipation_speed(
                        &self.eq,
                        &a.sol,
                        &b.sol,
                        &self.pad[pb * nn + nd * n + i],
                        &self.pad[pt * nn + i],
                        pos,
                        Dir::Y,
                    );
                    let f_lw = interface_flux(a, b, sigma);
                    let flux = if low_scheme.is_some() {
                        let f_low = rusanov_flux(&self.eq, &self.low[qb].top[i], &self.low[qt].bottom[i], pos, Dir::Y);
                        let af = 0.5 * (self.alpha_pad[pb] + self.alpha_pad[pt]);
                        let blended = f_lw * (1.0 - af) + f_low * af;
                        if self.opts.flux_correction {
                            let left = (pery || f > 0).then(|| FaceSide {
                                u: self.pad[pb * nn + nd * n + i],
                                inner: self.low[qb].gy[i][nd - 1],
                                coef: dt / ((1.0 - self.kx[pb]) * self.basis.weights[nd] * self.wy[f + NG - 1]),
                            });
                            let right = (pery || f < ny).then(|| FaceSide {
                                u: self.pad[pt * nn + i],
                                inner: self.low[qt].gy[i][0],
                                coef: dt / ((1.0 - self.kx[pt]) * self.basis.weights[0] * self.wy[f + NG]),
                            });
                            let c = correct_flux(&self.eq, &FaceCorrection { blended, low: f_low, left, right })
                                .map_err(|e| with_context(e, &format!("y face {f} column {ex}")))?;
                            min_lambda = min_lambda.min(c.lambda);
                            c.flux
                        } else {
                            blended
                        }
                    } else {
                        f_lw
                    };
                    self.gy[(f * nx + ex) * n + i] = flux;
                }
            }
        }
        info.min_lambda = min_lambda;

        let mut w2 = [0.0; MAX_NODES_2D];
        for j in 0..n {
            for i in 0..n {
                w2[j * n + i] = self.basis.weights[i] * self.basis.weights[j];
            }
        }
        let mut audit = 0.0_f64;
        let mut low = [State::<V>::zero(); MAX_NODES_2D];
        for ey in 0..ny {
            for ex in 0..nx {
                let (px, py) = (ex + NG, ey + NG);
                let p = py * w + px;
                let q = self.ring_index(px, py);
                let (dx, dy) = (self.wx[px], self.wy[py]);
                let fl = &self.fx[(ey * (nx + 1) + ex) * n..][..n];
                let fr = &self.fx[(ey * (nx + 1) + ex + 1) * n..][..n];
                let gb = &self.gy[(ey * nx + ex) * n..][..n];
                let gt = &self.gy[((ey + 1) * nx + ex) * n..][..n];
                let mut high = self.lw[q].residual;
                add_face_terms_2d(&self.ops, &mut high, dt / dx, dt / dy, fl, fr, gb, gt);
                let base = &self.pad[p * nn..(p + 1) * nn];
                let e = ey * nx + ex;
                if low_scheme.is_some() {
                    low_order_residual_2d(&self.grid, &self.low[q], dt, dx, dy, &mut low);
                    let (c0x, cnx) = (dt / (self.basis.weights[0] * dx), dt / (self.basis.weights[nd] * dx));
                    let (c0y, cny) = (dt / (self.basis.weights[0] * dy), dt / (self.basis.weights[nd] * dy));
                    for k in 0..n {
                        low[k * n] = low[k * n].axpy(-c0x, &fl[k]);
                        low[k * n + nd] = low[k * n + nd].axpy(cnx, &fr[k]);
                        low[k] = low[k].axpy(-c0y, &gb[k]);
                        low[nd * n + k] = low[nd * n + k].axpy(cny, &gt[k]);
                    }
                    if self.opts.audit {
                        audit = audit.max(mean_mismatch(&w2[..nn], base, &high[..nn], &low[..nn]));
                    }
                    let a = self.alpha_pad[p];
                    for k in 0..nn {
                        self.next[e * nn + k] = base[k] - high[k] * (1.0 - a) - low[k] * a;
                    }
                } else {
                    for k in 0..nn {
                        self.next[e * nn + k] = base[k] - high[k];
                    }
                }
            }
        }
        if self.opts.audit {
            info.audit = Some(audit);
            if audit > 1e-13 {
                return Err(Error::InvariantBreach(format!("high and low order means differ by {audit:e} at t = {}", self.t)));
            }
        }

        let constrained = self.eq.num_constraints() > 0;
        for e in 0..nx * ny {
            let el = &mut self.next[e * nn..(e + 1) * nn];
            if constrained && self.opts.scaling_limiter {
                scale_to_admissible(&self.eq, el, &w2[..nn]).map_err(|err| with_context(err, &format!("element {e}")))?;
            }
            for (k, s) in el.iter().enumerate() {
                if !s.is_finite() {
                    return Err(Error::NonFinite(format!("element {e} node {k} at t = {}", self.t + dt)));
                }
                if constrained {
                    for c in 0..self.eq.num_constraints() {
                        let value = self.eq.constraint(c, s);
                        if !(value > 0.0) {
                            return Err(Error::Inadmissible {
                                context: format!("element {e} node {k} at t = {}", self.t + dt),
                                constraint: c,
                                value,
                            });
                        }
                    }
                }
            }
        }
        info.alpha_max = self.alpha.iter().cloned().fold(0.0, f64::max);
        info.alpha_fraction = self.alpha.iter().filter(|a| **a > 0.0).count() as f64 / (nx * ny) as f64;
        Ok(info)
    }

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
    use crate::equations::{euler_prim_to_cons_2d, Advection2D, Euler2D, VelocityField};
    use approx::assert_abs_diff_eq;

    #[test]
    fn free_stream_preserved_with_blending() {
        let eq = Euler2D::new(1.4);
        let c = euler_prim_to_cons_2d(&[1.0, 0.3, -0.2, 1.0], 1.4);
        let mesh = Mesh2D::uniform((0.0, 1.0), (0.0, 1.0), 4, 3).unwrap();
        let opts = SolverOptions { force_alpha: Some(0.4), audit: true, ..SolverOptions::default() };
        let mut s = Solver2D::new(eq, 3, mesh, Boundaries2D::periodic(), opts, |_| c).unwrap();
        let dt = s.compute_dt().unwrap();
        s.step(dt).unwrap();
        for x in &s.u {
            for v in 0..4 {
                assert_abs_diff_eq!(x[v], c[v], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn time_step_sums_directions() {
        let eq = Advection2D::new(VelocityField::Constant([1.0, 2.0]));
        let s = SpeedSample { mean: State([1.0]), points: [[0.0; 2]; 5], dx: 0.1, dy: 0.2 };
        let dt = compute_dt_2d(&eq, &[s], &TimeConfig::default(), 2).unwrap();
        assert_abs_diff_eq!(dt, 0.98 * 0.170 / 20.0, epsilon = 1e-15);
    }

    #[test]
    fn tvb_rejected_in_2d() {
        let eq = Advection2D::new(VelocityField::Constant([1.0, 0.0]));
        let opts = SolverOptions { limiter: LimiterKind::Tvb, ..SolverOptions::default() };
        let mesh = Mesh2D::uniform((0.0, 1.0), (0.0, 1.0), 4, 4).unwrap();
        let r = Solver2D::new(eq, 2, mesh, Boundaries2D::periodic(), opts, |_| State([1.0]));
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn x_advection_matches_1d_solver() {
        use super::super::{Boundaries1D, Mesh1D, Solver1D};
        use crate::equations::Advection1D;
        let f = |x: f64| (2.0 * std::f64::consts::PI * x).sin() + 2.0;
        let mesh = Mesh2D::uniform((0.0, 1.0), (0.0, 1.0), 6, 3).unwrap();
        let opts = SolverOptions { limiter: LimiterKind::None, ..SolverOptions::default() };
        let mut s2 = Solver2D::new(Advection2D::new(VelocityField::Constant([1.0, 0.0])), 3, mesh, Boundaries2D::periodic(), opts.clone(), |p| {
            State([f(p[0])])
        })
        .unwrap();
        let mut s1 = Solver1D::new(Advection1D::new(1.0), 3, Mesh1D::uniform(0.0, 1.0, 6).unwrap(), Boundaries1D::periodic(), opts, |x| State([f(x)]))
            .unwrap();
        for _ in 0..5 {
            s1.step(0.01).unwrap();
            s2.step(0.01).unwrap();
        }
        for ey in 0..3 {
            for ex in 0..6 {
                for j in 0..4 {
                    for i in 0..4 {
                        assert_abs_diff_eq!(s2.element(ex, ey)[j * 4 + i][0], s1.element(ex)[i][0], epsilon = 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn reflecting_box_conserves_mass() {
        let eq = Euler2D::new(1.4);
        let mesh = Mesh2D::uniform((0.0, 1.0), (0.0, 1.0), 6, 6).unwrap();
        let mut s = Solver2D::new(eq, 2, mesh, Boundaries2D::same(Boundary::Reflecting), SolverOptions::default(), |p| {
            let r2 = (p[0] - 0.5).powi(2) + (p[1] - 0.5).powi(2);
            euler_prim_to_cons_2d(&[1.0, 0.0, 0.0, if r2 < 0.04 { 10.0 } else { 0.1 }], 1.4)
        })
        .unwrap();
        let m0 = s.totals();
        s.advance_to(0.05, |_, _| {}).unwrap();
        let m1 = s.totals();
        assert!((m1[0] - m0[0]).abs() < 1e-13);
        assert!((m1[3] - m0[3]).abs() < 1e-12 * m0[3]);
        assert!(s.alpha.iter().any(|a| *a > 0.0));
    }
}
