//! Low-order schemes on the subcell grid formed by the quadrature weights:
//! first-order finite volume and MUSCL-Hancock, in 1-D and 2-D.

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::equations::{rusanov_flux, Dir, Equation, Point};
use crate::error::{Error, Result};
use crate::lwfr::{Cell2D, MAX_NODES};
use crate::state::State;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowOrderScheme {
    FirstOrder,
    MusclHancock,
}

/// Subcell faces and the offsets of each solution point within its subcell,
/// all in reference coordinates on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubcellGrid {
    pub n: usize,
    pub nodes: [f64; MAX_NODES],
    pub weights: [f64; MAX_NODES],
    /// `faces[j]` is the left face of subcell `j`; `faces[n] = 1`.
    pub faces: [f64; MAX_NODES + 1],
    pub mu_minus: [f64; MAX_NODES],
    pub mu_plus: [f64; MAX_NODES],
}

impl SubcellGrid {
    pub fn new(basis: &Basis) -> Result<Self> {
        let n = basis.n_nodes();
        if n > MAX_NODES {
            return Err(Error::InvalidDegree(basis.degree));
        }
        let mut nodes = [0.0; MAX_NODES];
        let mut weights = [0.0; MAX_NODES];
        let mut faces = [0.0; MAX_NODES + 1];
        let mut mu_minus = [0.0; MAX_NODES];
        let mut mu_plus = [0.0; MAX_NODES];
        for j in 0..n {
            nodes[j] = basis.nodes[j];
            weights[j] = basis.weights[j];
            faces[j + 1] = faces[j] + weights[j];
        }
        faces[n] = 1.0;
        for j in 0..n {
            let w = faces[j + 1] - faces[j];
            mu_minus[j] = (faces[j + 1] - nodes[j]) / w;
            mu_plus[j] = (nodes[j] - faces[j]) / w;
        }
        Ok(SubcellGrid { n, nodes, weights, faces, mu_minus, mu_plus })
    }

    pub fn physical_faces(&self, origin: f64, dx: f64) -> Vec<f64> {
        self.faces[..=self.n].iter().map(|f| origin + f * dx).collect()
    }

    /// `1/2 min_j (xi_j - sum_{k<j} w_k) w_j`
    pub fn admissibility_cfl_coefficient(&self) -> f64 {
        (0..self.n)
            .map(|j| 0.5 * (self.nodes[j] - self.faces[j]) * self.weights[j])
            .fold(f64::INFINITY, f64::min)
    }
}

#[inline(always)]
fn minmod3(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Limited slope on a non-uniform stencil with spacings `h1 = x_j - x_{j-1}`
/// and `h2 = x_{j+1} - x_j`.
#[inline]
pub fn mh_slope<const V: usize>(
    um: &State<V>,
    u: &State<V>,
    up: &State<V>,
    h1: f64,
    h2: f64,
    beta: f64,
) -> State<V> {
    let cm = -h2 / (h1 * (h1 + h2));
    let c0 = (h2 - h1) / (h1 * h2);
    let cp = h1 / (h2 * (h1 + h2));
    let mut out = [0.0; V];
    for v in 0..V {
        let back = (u[v] - um[v]) / h1;
        let fwd = (up[v] - u[v]) / h2;
        let central = cm * um[v] + c0 * u[v] + cp * up[v];
        out[v] = minmod3(beta * fwd, central, beta * back);
    }
    State(out)
}

/// Scales `delta` so that `u + 2 d_minus delta` and `u + 2 d_plus delta` keep
/// every constraint above a tenth of its value at `u`.
///
/// `d_minus = x_{j-1/2} - x_j` and `d_plus = x_{j+1/2} - x_j`.
pub fn limit_slope_admissible<E: Equation<V>, const V: usize>(
    eq: &E,
    u: &State<V>,
    delta: State<V>,
    d_minus: f64,
    d_plus: f64,
) -> State<V> {
    let nc = eq.num_constraints();
    let mut eps = [0.0; 8];
    for k in 0..nc {
        let pu = eq.constraint(k, u);
        if !(pu > 0.0) {
            return State::zero();
        }
        eps[k] = 0.1 * pu;
    }
    // checked on the slope exactly as returned, for every constraint seen so far
    let feasible = |d: &State<V>, upto: usize| {
        (0..=upto).all(|k| [d_minus, d_plus].iter().all(|x| eq.constraint(k, &u.axpy(2.0 * x, d)) >= eps[k]))
    };
    let mut delta = delta;
    for k in 0..nc {
        let pu = eq.constraint(k, u);
        let mut theta = 1.0_f64;
        for d in [d_minus, d_plus] {
            let p = eq.constraint(k, &u.axpy(2.0 * d, &delta));
            if !(p >= eps[k]) {
                let t = if p.is_finite() { ((eps[k] - pu) / (p - pu)).abs() } else { 0.0 };
                theta = theta.min(t);
            }
        }
        if theta < 1.0 {
            let mut t = theta;
            let mut tries = 0;
            while !feasible(&(delta * t), k) && tries < 60 {
                t *= 0.5;
                tries += 1;
            }
            delta = if feasible(&(delta * t), k) { delta * t } else { State::zero() };
        }
    }
    delta
}

/// Reconstruction and half-step data of one subcell.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MhCell<const V: usize> {
    pub u: State<V>,
    pub delta: State<V>,
    /// `u^{n,-}`, `u^{n,+}`
    pub minus: State<V>,
    pub plus: State<V>,
    /// Traces evolved to the half step.
    pub half_minus: State<V>,
    pub half_plus: State<V>,
}

/// Nodal values and spacings of the neighbouring solution points across the
/// element faces.
#[derive(Clone, Copy, Debug)]
pub struct Neighbours1D<const V: usize> {
    pub left: State<V>,
    pub right: State<V>,
    /// Distance from the neighbour point to `x_0`.
    pub h_left: f64,
    /// Distance from `x_N` to the neighbour point.
    pub h_right: f64,
}

#[derive(Clone, Debug)]
pub struct LowOrder1D<const V: usize> {
    /// `f_{j+1/2}` for `j = 0..N-1`.
    pub inner: [State<V>; MAX_NODES],
    /// States entering the element-face fluxes.
    pub left: State<V>,
    pub right: State<V>,
    pub cells: [MhCell<V>; MAX_NODES],
}

fn check_trace<E: Equation<V>, const V: usize>(eq: &E, u: &State<V>, context: &str) -> Result<()> {
    if !u.is_finite() {
        return Err(Error::NonFinite(format!("{context}: {:?}", u.0)));
    }
    for k in 0..eq.num_constraints() {
        let value = eq.constraint(k, u);
        if !(value > 0.0) {
            return Err(Error::Inadmissible { context: context.into(), constraint: k, value });
        }
    }
    Ok(())
}

/// Subcell fluxes of one 1-D element.
///
/// `beta` is the MUSCL-Hancock minmod parameter; it is ignored by the
/// first-order scheme.
#[allow(clippy::too_many_arguments)]
pub fn low_order_element_1d<E: Equation<V>, const V: usize>(
    eq: &E,
    grid: &SubcellGrid,
    scheme: LowOrderScheme,
    u: &[State<V>],
    nb: &Neighbours1D<V>,
    origin: f64,
    dx: f64,
    dt: f64,
    beta: f64,
) -> Result<LowOrder1D<V>> {
    let n = grid.n;
    let face_pos = |j: usize| -> Point { [origin + grid.faces[j] * dx, 0.0] };
    let mut cells = [MhCell::<V>::default(); MAX_NODES];
    match scheme {
        LowOrderScheme::FirstOrder => {
            for j in 0..n {
                cells[j] = MhCell { u: u[j], delta: State::zero(), minus: u[j], plus: u[j], half_minus: u[j], half_plus: u[j] };
            }
        }
        LowOrderScheme::MusclHancock => {
            for j in 0..n {
                let (um, h1) = if j == 0 { (nb.left, nb.h_left) } else { (u[j - 1], (grid.nodes[j] - grid.nodes[j - 1]) * dx) };
                let (up, h2) = if j + 1 == n { (nb.right, nb.h_right) } else { (u[j + 1], (grid.nodes[j + 1] - grid.nodes[j]) * dx) };
                let d_minus = (grid.faces[j] - grid.nodes[j]) * dx;
                let d_plus = (grid.faces[j + 1] - grid.nodes[j]) * dx;
                let delta = mh_slope(&um, &u[j], &up, h1, h2, beta);
                let delta = limit_slope_admissible(eq, &u[j], delta, d_minus, d_plus);
                let minus = u[j].axpy(d_minus, &delta);
                let plus = u[j].axpy(d_plus, &delta);
                let width = grid.weights[j] * dx;
                let fm = eq.flux(&minus, face_pos(j), Dir::X);
                let fp = eq.flux(&plus, face_pos(j + 1), Dir::X);
                let c = -0.5 * dt / width;
                let mut half_minus = minus;
                let mut half_plus = plus;
                for v in 0..V {
                    let dtu = c * (fp[v] - fm[v]);
                    half_minus[v] += dtu;
                    half_plus[v] += dtu;
                }
                check_trace(eq, &half_minus, "evolved subcell trace")?;
                check_trace(eq, &half_plus, "evolved subcell trace")?;
                cells[j] = MhCell { u: u[j], delta, minus, plus, half_minus, half_plus };
            }
        }
    }
    let mut inner = [State::<V>::zero(); MAX_NODES];
    for j in 0..n - 1 {
        inner[j] = rusanov_flux(eq, &cells[j].half_plus, &cells[j + 1].half_minus, face_pos(j + 1), Dir::X);
    }
    Ok(LowOrder1D { inner, left: cells[0].half_minus, right: cells[n - 1].half_plus, cells })
}

/// Subcell update without the element-face contributions:
/// `dt / (w_j dx) (f_{j+1/2} - f_{j-1/2})` with the outer fluxes omitted.
pub fn low_order_residual_1d<const V: usize>(
    grid: &SubcellGrid,
    inner: &[State<V>],
    dt: f64,
    dx: f64,
) -> [State<V>; MAX_NODES] {
    let n = grid.n;
    let mut r = [State::<V>::zero(); MAX_NODES];
    for j in 0..n {
        let c = dt / (grid.weights[j] * dx);
        let mut acc = State::zero();
        if j + 1 < n {
            acc += inner[j];
        }
        if j > 0 {
            acc -= inner[j - 1];
        }
        r[j] = acc * c;
    }
    r
}

/// Result of evaluating the sufficient time-step conditions for admissibility
/// of the MUSCL-Hancock update.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CflReport {
    pub max_ratio: f64,
    pub satisfied: bool,
}

fn sigma<E: Equation<V>, const V: usize>(eq: &E, a: &State<V>, b: &State<V>) -> f64 {
    if eq.is_admissible(a) && eq.is_admissible(b) {
        eq.wave_speed(a, b, [0.0; 2], Dir::X)
    } else {
        f64::INFINITY
    }
}

/// Evaluates all three families of MUSCL-Hancock time-step conditions on a
/// contiguous line of subcells. Subcells at the ends of the line only enter
/// the inequalities that do not need a missing neighbour.
pub fn mh_cfl_diagnostic<E: Equation<V>, const V: usize>(
    eq: &E,
    cells: &[MhCell<V>],
    widths: &[f64],
    mu_minus: &[f64],
    mu_plus: &[f64],
    dt: f64,
) -> CflReport {
    let mut worst = 0.0_f64;
    if dt == 0.0 {
        return CflReport { max_ratio: 0.0, satisfied: true };
    }
    for j in 0..cells.len() {
        let c = &cells[j];
        let (w, mm, mp) = (widths[j], mu_minus[j], mu_plus[j]);
        let r = |s: f64, h: f64| if s.is_finite() { dt * s / h } else { f64::INFINITY };
        for d in [-1.0, 1.0] {
            // u^{*,+-} = u + 2 (x_{j+-1/2} - x_j) delta
            let off = if d < 0.0 { -mp * w } else { mm * w };
            let star = c.u.axpy(2.0 * off, &c.delta);
            worst = worst.max(r(sigma(eq, &c.minus, &star), mm * w));
            worst = worst.max(r(sigma(eq, &star, &c.plus), mp * w));
        }
        let half_star = c.u * 2.0 - c.half_minus * mm - c.half_plus * mp;
        worst = worst.max(r(sigma(eq, &c.half_minus, &half_star), mm * w / 2.0));
        worst = worst.max(r(sigma(eq, &half_star, &c.half_plus), w / 2.0));
        worst = worst.max(r(sigma(eq, &c.half_minus, &half_star), w / 2.0));
        worst = worst.max(r(sigma(eq, &half_star, &c.half_plus), mp * w / 2.0));
        if j > 0 {
            worst = worst.max(r(sigma(eq, &cells[j - 1].half_plus, &c.half_minus), mm * w / 2.0));
        }
        if j + 1 < cells.len() {
            worst = worst.max(r(sigma(eq, &c.half_plus, &cells[j + 1].half_minus), mp * w / 2.0));
        }
        worst = worst.max(r(sigma(eq, &c.u, &c.minus), mm * w));
        worst = worst.max(r(sigma(eq, &c.plus, &c.u), mp * w));
    }
    CflReport { max_ratio: worst, satisfied: worst <= 1.0 }
}

/// Neighbouring solution points of a 2-D element: columns across the x faces
/// (indexed by `j`) and rows across the y faces (indexed by `i`).
#[derive(Clone, Copy, Debug)]
pub struct Neighbours2D<const V: usize> {
    pub left: [State<V>; MAX_NODES],
    pub right: [State<V>; MAX_NODES],
    pub bottom: [State<V>; MAX_NODES],
    pub top: [State<V>; MAX_NODES],
    pub h_left: f64,
    pub h_right: f64,
    pub h_bottom: f64,
    pub h_top: f64,
}

#[derive(Clone, Debug)]
pub struct LowOrder2D<const V: usize> {
    /// `fx[j][i]` is the x flux between subcells `(i, j)` and `(i+1, j)`.
    pub fx: [[State<V>; MAX_NODES]; MAX_NODES],
    /// `gy[i][j]` is the y flux between subcells `(i, j)` and `(i, j+1)`.
    pub gy: [[State<V>; MAX_NODES]; MAX_NODES],
    pub left: [State<V>; MAX_NODES],
    pub right: [State<V>; MAX_NODES],
    pub bottom: [State<V>; MAX_NODES],
    pub top: [State<V>; MAX_NODES],
}

/// Subcell fluxes of one 2-D element; node `(i, j)` is `u[j * n + i]`.
#[allow(clippy::too_many_arguments)]
pub fn low_order_element_2d<E: Equation<V>, const V: usize>(
    eq: &E,
    grid: &SubcellGrid,
    scheme: LowOrderScheme,
    u: &[State<V>],
    nb: &Neighbours2D<V>,
    cell: Cell2D,
    dt: f64,
    beta: f64,
) -> Result<LowOrder2D<V>> {
    let n = grid.n;
    let xf = |i: usize| cell.origin[0] + grid.faces[i] * cell.dx;
    let yf = |j: usize| cell.origin[1] + grid.faces[j] * cell.dy;
    let xn = |i: usize| cell.origin[0] + grid.nodes[i] * cell.dx;
    let yn = |j: usize| cell.origin[1] + grid.nodes[j] * cell.dy;
    // traces [-x, +x, -y, +y] at the half step
    let mut tr = [[State::<V>::zero(); 4]; MAX_NODES * MAX_NODES];
    match scheme {
        LowOrderScheme::FirstOrder => {
            for q in 0..n * n {
                tr[q] = [u[q]; 4];
            }
        }
        LowOrderScheme::MusclHancock => {
            for j in 0..n {
                for i in 0..n {
                    let q = j * n + i;
                    let (uxm, hx1) = if i == 0 { (nb.left[j], nb.h_left) } else { (u[q - 1], (grid.nodes[i] - grid.nodes[i - 1]) * cell.dx) };
                    let (uxp, hx2) = if i + 1 == n { (nb.right[j], nb.h_right) } else { (u[q + 1], (grid.nodes[i + 1] - grid.nodes[i]) * cell.dx) };
                    let (uym, hy1) = if j == 0 { (nb.bottom[i], nb.h_bottom) } else { (u[q - n], (grid.nodes[j] - grid.nodes[j - 1]) * cell.dy) };
                    let (uyp, hy2) = if j + 1 == n { (nb.top[i], nb.h_top) } else { (u[q + n], (grid.nodes[j + 1] - grid.nodes[j]) * cell.dy) };
                    let dxm = (grid.faces[i] - grid.nodes[i]) * cell.dx;
                    let dxp = (grid.faces[i + 1] - grid.nodes[i]) * cell.dx;
                    let dym = (grid.faces[j] - grid.nodes[j]) * cell.dy;
                    let dyp = (grid.faces[j + 1] - grid.nodes[j]) * cell.dy;
                    let sx = limit_slope_admissible(eq, &u[q], mh_slope(&uxm, &u[q], &uxp, hx1, hx2, beta), dxm, dxp);
                    let sy = limit_slope_admissible(eq, &u[q], mh_slope(&uym, &u[q], &uyp, hy1, hy2, beta), dym, dyp);
                    let mx = u[q].axpy(dxm, &sx);
                    let px = u[q].axpy(dxp, &sx);
                    let my = u[q].axpy(dym, &sy);
                    let py = u[q].axpy(dyp, &sy);
                    let fm = eq.flux(&mx, [xf(i), yn(j)], Dir::X);
                    let fp = eq.flux(&px, [xf(i + 1), yn(j)], Dir::X);
                    let gm = eq.flux(&my, [xn(i), yf(j)], Dir::Y);
                    let gp = eq.flux(&py, [xn(i), yf(j + 1)], Dir::Y);
                    let cx = -0.5 * dt / (grid.weights[i] * cell.dx);
                    let cy = -0.5 * dt / (grid.weights[j] * cell.dy);
                    let mut dtu = [0.0; V];
                    for v in 0..V {
                        dtu[v] = cx * (fp[v] - fm[v]) + cy * (gp[v] - gm[v]);
                    }
                    let dtu = State(dtu);
                    tr[q] = [mx + dtu, px + dtu, my + dtu, py + dtu];
                    for t in &tr[q] {
                        check_trace(eq, t, "evolved subcell trace")?;
                    }
                }
            }
        }
    }
    let mut out = LowOrder2D {
        fx: [[State::zero(); MAX_NODES]; MAX_NODES],
        gy: [[State::zero(); MAX_NODES]; MAX_NODES],
        left: [State::zero(); MAX_NODES],
        right: [State::zero(); MAX_NODES],
        bottom: [State::zero(); MAX_NODES],
        top: [State::zero(); MAX_NODES],
    };
    for j in 0..n {
        for i in 0..n - 1 {
            out.fx[j][i] = rusanov_flux(eq, &tr[j * n + i][1], &tr[j * n + i + 1][0], [xf(i + 1), yn(j)], Dir::X);
        }
    }
    for i in 0..n {
        for j in 0..n - 1 {
            out.gy[i][j] = rusanov_flux(eq, &tr[j * n + i][3], &tr[(j + 1) * n + i][2], [xn(i), yf(j + 1)], Dir::Y);
        }
    }
    for t in 0..n {
        out.left[t] = tr[t * n][0];
        out.right[t] = tr[t * n + n - 1][1];
        out.bottom[t] = tr[t][2];
        out.top[t] = tr[(n - 1) * n + t][3];
    }
    Ok(out)
}

/// 2-D subcell update without element-face contributions.
pub fn low_order_residual_2d<const V: usize>(
    grid: &SubcellGrid,
    lo: &LowOrder2D<V>,
    dt: f64,
    dx: f64,
    dy: f64,
    out: &mut [State<V>],
) {
    let n = grid.n;
    for j in 0..n {
        for i in 0..n {
            let cx = dt / (grid.weights[i] * dx);
            let cy = dt / (grid.weights[j] * dy);
            let mut acc = State::<V>::zero();
            if i + 1 < n {
                acc = acc.axpy(cx, &lo.fx[j][i]);
            }
            if i > 0 {
                acc = acc.axpy(-cx, &lo.fx[j][i - 1]);
            }
            if j + 1 < n {
                acc = acc.axpy(cy, &lo.gy[i][j]);
            }
            if j > 0 {
                acc = acc.axpy(-cy, &lo.gy[i][j - 1]);
            }
            out[j * n + i] = acc;
        }
    }
}

/// Splits the evolved `+x` trace of a subcell into two directional updates
/// `theta_x`, `theta_y` with `k_x theta_x + k_y theta_y = u^{n+1/2,+x}`.
#[allow(clippy::too_many_arguments)]
pub fn convex_split_plus_x<E: Equation<V>, const V: usize>(
    eq: &E,
    minus_x: &State<V>,
    plus_x: &State<V>,
    minus_y: &State<V>,
    plus_y: &State<V>,
    dt: f64,
    width_x: f64,
    width_y: f64,
    kx: f64,
    ky: f64,
    pos: Point,
) -> (State<V>, State<V>) {
    let fx = eq.flux(plus_x, pos, Dir::X) - eq.flux(minus_x, pos, Dir::X);
    let gy = eq.flux(plus_y, pos, Dir::Y) - eq.flux(minus_y, pos, Dir::Y);
    let tx = plus_x.axpy(-0.5 * dt / (kx * width_x), &fx);
    let ty = plus_x.axpy(-0.5 * dt / (ky * width_y), &gy);
    (tx, ty)
}
