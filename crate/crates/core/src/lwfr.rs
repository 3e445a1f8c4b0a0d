//! Single-stage Lax-Wendroff flux reconstruction kernels.
//!
//! Temporal derivatives are built in scaled form, `u^(k) = dt^k d^k u / dt^k`,
//! so the finite differences in the pseudo-time parameter always use unit
//! spacing. The time-averaged flux is `F = sum_m f^(m) / (m+1)!`.

use crate::basis::Basis;
use crate::equations::{Dir, Equation, Point};
use crate::error::{Error, Result};
use crate::state::State;

/// Largest supported node count per direction (degree 4).
pub const MAX_NODES: usize = 5;
/// Largest node count of a 2-D element.
pub const MAX_NODES_2D: usize = MAX_NODES * MAX_NODES;

const INV_FACT_SHIFTED: [f64; 6] = [1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0, 1.0 / 720.0];
const INV_FACT: [f64; 6] = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];

/// Central difference weights in the pseudo-time parameter `s` with unit step.
#[derive(Clone, Copy, Debug)]
pub struct Stencil {
    pub center: f64,
    /// `(offset index into [-2, -1, 1, 2], weight)`
    pub taps: &'static [(usize, f64)],
}

const D1_O2: Stencil = Stencil { center: 0.0, taps: &[(1, -0.5), (2, 0.5)] };
const D1_O4: Stencil = Stencil {
    center: 0.0,
    taps: &[(0, 1.0 / 12.0), (1, -2.0 / 3.0), (2, 2.0 / 3.0), (3, -1.0 / 12.0)],
};
const D2_O2: Stencil = Stencil { center: -2.0, taps: &[(1, 1.0), (2, 1.0)] };
const D2_O4: Stencil = Stencil {
    center: -2.5,
    taps: &[(0, -1.0 / 12.0), (1, 4.0 / 3.0), (2, 4.0 / 3.0), (3, -1.0 / 12.0)],
};
const D3_O2: Stencil = Stencil { center: 0.0, taps: &[(0, -0.5), (1, 1.0), (2, -1.0), (3, 0.5)] };
const D4_O2: Stencil = Stencil { center: 6.0, taps: &[(0, 1.0), (1, -4.0), (2, -4.0), (3, 1.0)] };

/// Stencil for the `m`-th pseudo-time derivative in a degree-`degree` scheme.
///
/// The truncation order is chosen so that `f^(m) / (m+1)!` is accurate to
/// `O(dt^(degree+1))`.
#[inline(always)]
pub fn stencil(degree: usize, m: usize) -> Stencil {
    let high = m + 2 <= degree;
    match (m, high) {
        (1, false) => D1_O2,
        (1, true) => D1_O4,
        (2, false) => D2_O2,
        (2, true) => D2_O4,
        (3, _) => D3_O2,
        (4, _) => D4_O2,
        _ => unreachable!("derivative order {m} not used"),
    }
}

/// Pseudo-time offsets used by all stencils.
const OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];

/// `OFFSET_POW[t][m] = OFFSETS[t]^m / m!`
const OFFSET_POW: [[f64; 6]; 4] = offset_powers();

const fn offset_powers() -> [[f64; 6]; 4] {
    let mut out = [[0.0; 6]; 4];
    let mut t = 0;
    while t < 4 {
        let mut m = 0;
        let mut v = 1.0;
        while m < 6 {
            out[t][m] = v * INV_FACT[m];
            v *= OFFSETS[t];
            m += 1;
        }
        t += 1;
    }
    out
}

/// Truncated Taylor states `sum_{k<=m} s^k u^(k) / k!` at the four offsets,
/// extended one order at a time.
#[derive(Clone, Copy)]
struct Taylor<const V: usize>([State<V>; 4]);

impl<const V: usize> Taylor<V> {
    #[inline(always)]
    fn new(u: &State<V>) -> Self {
        Taylor([*u; 4])
    }

    #[inline(always)]
    fn extend(&mut self, m: usize, d: &State<V>) {
        for t in 0..4 {
            self.0[t] = self.0[t].axpy(OFFSET_POW[t][m], d);
        }
    }
}

/// Applies a stencil to `s -> flux(taylor_state(s))`.
#[inline(always)]
fn fd_flux<E: Equation<V>, const V: usize>(
    eq: &E,
    ts: &Taylor<V>,
    st: &Stencil,
    f0: &State<V>,
    pos: Point,
    dir: Dir,
) -> State<V> {
    let mut out = *f0 * st.center;
    for &(t, c) in st.taps {
        let f = eq.flux(&ts.0[t], pos, dir);
        out = out.axpy(c, &f);
    }
    out
}

#[inline(always)]
fn fd_fluxes<E: Equation<V>, const V: usize>(
    eq: &E,
    ts: &Taylor<V>,
    st: &Stencil,
    f0: &(State<V>, State<V>),
    pos: Point,
) -> (State<V>, State<V>) {
    let mut of = f0.0 * st.center;
    let mut og = f0.1 * st.center;
    for &(t, c) in st.taps {
        let (f, g) = eq.fluxes(&ts.0[t], pos);
        of = of.axpy(c, &f);
        og = og.axpy(c, &g);
    }
    (of, og)
}

/// Degree-dependent operators used by the kernels, copied into fixed arrays.
#[derive(Clone, Debug)]
pub struct LwOperators {
    pub degree: usize,
    pub n: usize,
    pub nodes: [f64; MAX_NODES],
    pub weights: [f64; MAX_NODES],
    pub diff: [[f64; MAX_NODES]; MAX_NODES],
    pub interp_left: [f64; MAX_NODES],
    pub interp_right: [f64; MAX_NODES],
    pub grad_left: [f64; MAX_NODES],
    pub grad_right: [f64; MAX_NODES],
}

impl LwOperators {
    pub fn new(basis: &Basis) -> Result<Self> {
        let degree = basis.degree;
        if !(1..MAX_NODES).contains(&degree) {
            return Err(Error::InvalidDegree(degree));
        }
        let n = degree + 1;
        let copy = |src: &[f64]| {
            let mut a = [0.0; MAX_NODES];
            a[..n].copy_from_slice(&src[..n]);
            a
        };
        let mut diff = [[0.0; MAX_NODES]; MAX_NODES];
        for i in 0..n {
            diff[i][..n].copy_from_slice(&basis.diff[i][..n]);
        }
        Ok(LwOperators {
            degree,
            n,
            nodes: copy(&basis.nodes),
            weights: copy(&basis.weights),
            diff,
            interp_left: copy(&basis.interp_left),
            interp_right: copy(&basis.interp_right),
            grad_left: copy(&basis.correction_grad_left),
            grad_right: copy(&basis.correction_grad_right),
        })
    }
}

/// Time-averaged data at one face point: the EA flux, the time-averaged
/// solution and the solution at the old time level.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FaceTrace<const V: usize> {
    pub flux: State<V>,
    pub avg: State<V>,
    pub sol: State<V>,
}

/// Output of the 1-D element kernel.
#[derive(Clone, Debug)]
pub struct LwElement1D<const V: usize> {
    /// Nodal time-averaged flux.
    pub flux: [State<V>; MAX_NODES],
    /// `dt * (D F - F(0) g_L' - F(1) g_R') / dx`, i.e. the update without interface terms.
    pub residual: [State<V>; MAX_NODES],
    pub left: FaceTrace<V>,
    pub right: FaceTrace<V>,
}

/// Extrapolates the scaled derivatives to a face point and performs the
/// approximate Lax-Wendroff procedure there.
#[inline(always)]
fn face_procedure<E: Equation<V>, const V: usize, const N: usize>(
    eq: &E,
    _op: &LwOperators,
    derivs: &[[State<V>; MAX_NODES]; MAX_NODES],
    interp: &[f64; MAX_NODES],
    pos: Point,
    dir: Dir,
) -> FaceTrace<V> {
    let mut face = [State::<V>::zero(); MAX_NODES];
    for k in 0..N {
        let mut acc = State::zero();
        for j in 0..N {
            acc = acc.axpy(interp[j], &derivs[k][j]);
        }
        face[k] = acc;
    }
    ea_procedure_n::<E, V, N>(eq, &face[..N], pos, dir)
}

/// Approximate Lax-Wendroff procedure at a single point given all scaled
/// solution derivatives `u^(0..=N)`.
pub fn ea_procedure<E: Equation<V>, const V: usize>(
    eq: &E,
    op: &LwOperators,
    derivs: &[State<V>],
    pos: Point,
    dir: Dir,
) -> FaceTrace<V> {
    match op.n {
        2 => ea_procedure_n::<E, V, 2>(eq, derivs, pos, dir),
        3 => ea_procedure_n::<E, V, 3>(eq, derivs, pos, dir),
        4 => ea_procedure_n::<E, V, 4>(eq, derivs, pos, dir),
        5 => ea_procedure_n::<E, V, 5>(eq, derivs, pos, dir),
        n => unreachable!("{n} nodes"),
    }
}

#[inline(always)]
fn ea_procedure_n<E: Equation<V>, const V: usize, const N: usize>(
    eq: &E,
    derivs: &[State<V>],
    pos: Point,
    dir: Dir,
) -> FaceTrace<V> {
    let f0 = eq.flux(&derivs[0], pos, dir);
    let mut flux = f0;
    let mut avg = derivs[0];
    let mut ts = Taylor::new(&derivs[0]);
    for m in 1..N {
        ts.extend(m, &derivs[m]);
        let fm = fd_flux(eq, &ts, &stencil(N - 1, m), &f0, pos, dir);
        flux = flux.axpy(INV_FACT_SHIFTED[m], &fm);
        avg = avg.axpy(INV_FACT_SHIFTED[m], &derivs[m]);
    }
    FaceTrace { flux, avg, sol: derivs[0] }
}

/// Time-averaged flux, traces and interior residual of one 1-D element.
///
/// `origin` is the left edge, `dx` the width; `lambda = dt / dx`.
pub fn element_1d<E: Equation<V>, const V: usize>(
    eq: &E,
    op: &LwOperators,
    u: &[State<V>],
    origin: f64,
    dx: f64,
    dt: f64,
) -> LwElement1D<V> {
    match op.n {
        2 => element_1d_n::<E, V, 2>(eq, op, u, origin, dx, dt),
        3 => element_1d_n::<E, V, 3>(eq, op, u, origin, dx, dt),
        4 => element_1d_n::<E, V, 4>(eq, op, u, origin, dx, dt),
        5 => element_1d_n::<E, V, 5>(eq, op, u, origin, dx, dt),
        n => unreachable!("{n} nodes"),
    }
}

fn element_1d_n<E: Equation<V>, const V: usize, const N: usize>(
    eq: &E,
    op: &LwOperators,
    u: &[State<V>],
    origin: f64,
    dx: f64,
    dt: f64,
) -> LwElement1D<V> {
    let n = N;
    let lambda = dt / dx;
    let mut pos = [[0.0; 2]; MAX_NODES];
    for j in 0..n {
        pos[j] = [origin + op.nodes[j] * dx, 0.0];
    }
    // derivs[k][j] = u^(k) at node j
    let mut derivs = [[State::<V>::zero(); MAX_NODES]; MAX_NODES];
    let mut f0 = [State::<V>::zero(); MAX_NODES];
    let mut flux = [State::<V>::zero(); MAX_NODES];
    for j in 0..n {
        derivs[0][j] = u[j];
        f0[j] = eq.flux(&u[j], pos[j], Dir::X);
        flux[j] = f0[j];
    }
    let mut fm = f0;
    let mut ts = [Taylor::new(&State::zero()); MAX_NODES];
    for j in 0..n {
        ts[j] = Taylor::new(&u[j]);
    }
    for m in 1..N {
        // u^(m) = -lambda D f^(m-1)
        for i in 0..n {
            let mut acc = State::zero();
            for j in 0..n {
                acc = acc.axpy(op.diff[i][j], &fm[j]);
            }
            derivs[m][i] = acc * -lambda;
        }
        for j in 0..n {
            ts[j].extend(m, &derivs[m][j]);
            fm[j] = fd_flux(eq, &ts[j], &stencil(N - 1, m), &f0[j], pos[j], Dir::X);
            flux[j] = flux[j].axpy(INV_FACT_SHIFTED[m], &fm[j]);
        }
    }
    let left = face_procedure::<E, V, N>(eq, op, &derivs, &op.interp_left, [origin, 0.0], Dir::X);
    let right = face_procedure::<E, V, N>(eq, op, &derivs, &op.interp_right, [origin + dx, 0.0], Dir::X);

    let mut fl = State::zero();
    let mut fr = State::zero();
    for j in 0..n {
        fl = fl.axpy(op.interp_left[j], &flux[j]);
        fr = fr.axpy(op.interp_right[j], &flux[j]);
    }
    let mut residual = [State::<V>::zero(); MAX_NODES];
    for i in 0..n {
        let mut acc = fl * -op.grad_left[i];
        acc = acc.axpy(-op.grad_right[i], &fr);
        for j in 0..n {
            acc = acc.axpy(op.diff[i][j], &flux[j]);
        }
        residual[i] = acc * lambda;
    }
    LwElement1D { flux, residual, left, right }
}

/// Adds the interface contribution `lambda (F_L g_L' + F_R g_R')` to an
/// interior residual.
#[inline]
pub fn add_face_terms_1d<const V: usize>(
    op: &LwOperators,
    residual: &mut [State<V>],
    lambda: f64,
    f_left: &State<V>,
    f_right: &State<V>,
) {
    for i in 0..op.n {
        residual[i] = residual[i]
            .axpy(lambda * op.grad_left[i], f_left)
            .axpy(lambda * op.grad_right[i], f_right);
    }
}

/// D2-dissipation interface flux `1/2 (F_L + F_R) - 1/2 sigma (U_R - U_L)`.
#[inline(always)]
pub fn interface_flux<const V: usize>(left: &FaceTrace<V>, right: &FaceTrace<V>, sigma: f64) -> State<V> {
    let mut out = [0.0; V];
    for v in 0..V {
        out[v] = 0.5 * (left.flux[v] + right.flux[v]) - 0.5 * sigma * (right.avg[v] - left.avg[v]);
    }
    State(out)
}

/// Dissipation speed from the old-time face traces, falling back to the
/// adjacent solution points when a trace is not admissible.
#[inline]
pub fn dissipation_speed<E: Equation<V>, const V: usize>(
    eq: &E,
    trace_left: &State<V>,
    trace_right: &State<V>,
    node_left: &State<V>,
    node_right: &State<V>,
    pos: Point,
    dir: Dir,
) -> f64 {
    if eq.is_admissible(trace_left) && eq.is_admissible(trace_right) {
        let s = eq.wave_speed(trace_left, trace_right, pos, dir);
        if s.is_finite() {
            return s;
        }
    }
    eq.wave_speed(node_left, node_right, pos, dir)
}

/// Output of the 2-D element kernel. Node `(i, j)` is stored at `j * n + i`.
#[derive(Clone, Debug)]
pub struct LwElement2D<const V: usize> {
    pub residual: [State<V>; MAX_NODES_2D],
    /// Face traces indexed by the transverse node: left/right faces run
    /// along `j`, bottom/top along `i`.
    pub left: [FaceTrace<V>; MAX_NODES],
    pub right: [FaceTrace<V>; MAX_NODES],
    pub bottom: [FaceTrace<V>; MAX_NODES],
    pub top: [FaceTrace<V>; MAX_NODES],
}

/// Geometry of a 2-D element: lower-left corner and widths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell2D {
    pub origin: Point,
    pub dx: f64,
    pub dy: f64,
}

/// Time-averaged fluxes, traces and interior residual of one 2-D element.
pub fn element_2d<E: Equation<V>, const V: usize>(
    eq: &E,
    op: &LwOperators,
    u: &[State<V>],
    cell: Cell2D,
    dt: f64,
) -> LwElement2D<V> {
    match op.n {
        2 => element_2d_n::<E, V, 2>(eq, op, u, cell, dt),
        3 => element_2d_n::<E, V, 3>(eq, op, u, cell, dt),
        4 => element_2d_n::<E, V, 4>(eq, op, u, cell, dt),
        5 => element_2d_n::<E, V, 5>(eq, op, u, cell, dt),
        n => unreachable!("{n} nodes"),
    }
}

fn element_2d_n<E: Equation<V>, const V: usize, const N: usize>(
    eq: &E,
    op: &LwOperators,
    u: &[State<V>],
    cell: Cell2D,
    dt: f64,
) -> LwElement2D<V> {
    let n = N;
    let nn = n * n;
    let lx = dt / cell.dx;
    let ly = dt / cell.dy;
    let mut pos = [[0.0; 2]; MAX_NODES_2D];
    for j in 0..n {
        for i in 0..n {
            pos[j * n + i] = [cell.origin[0] + op.nodes[i] * cell.dx, cell.origin[1] + op.nodes[j] * cell.dy];
        }
    }
    let mut derivs = [[State::<V>::zero(); MAX_NODES_2D]; MAX_NODES];
    let mut f0 = [(State::<V>::zero(), State::<V>::zero()); MAX_NODES_2D];
    let mut fa = [State::<V>::zero(); MAX_NODES_2D];
    let mut ga = [State::<V>::zero(); MAX_NODES_2D];
    for q in 0..nn {
        derivs[0][q] = u[q];
        f0[q] = eq.fluxes(&u[q], pos[q]);
        fa[q] = f0[q].0;
        ga[q] = f0[q].1;
    }
    let mut fm = f0;
    let mut ts = [Taylor::new(&State::zero()); MAX_NODES_2D];
    for q in 0..nn {
        ts[q] = Taylor::new(&u[q]);
    }
    for m in 1..N {
        for j in 0..n {
            for i in 0..n {
                let mut acc = State::zero();
                for k in 0..n {
                    acc = acc.axpy(-lx * op.diff[i][k], &fm[j * n + k].0);
                    acc = acc.axpy(-ly * op.diff[j][k], &fm[k * n + i].1);
                }
                derivs[m][j * n + i] = acc;
            }
        }
        for q in 0..nn {
            ts[q].extend(m, &derivs[m][q]);
            fm[q] = fd_fluxes(eq, &ts[q], &stencil(N - 1, m), &f0[q], pos[q]);
            fa[q] = fa[q].axpy(INV_FACT_SHIFTED[m], &fm[q].0);
            ga[q] = ga[q].axpy(INV_FACT_SHIFTED[m], &fm[q].1);
        }
    }

    let mut left = [FaceTrace::default(); MAX_NODES];
    let mut right = [FaceTrace::default(); MAX_NODES];
    let mut bottom = [FaceTrace::default(); MAX_NODES];
    let mut top = [FaceTrace::default(); MAX_NODES];
    let mut face = [State::<V>::zero(); MAX_NODES];
    let x0 = cell.origin[0];
    let y0 = cell.origin[1];
    for t in 0..n {
        let yt = y0 + op.nodes[t] * cell.dy;
        let xt = x0 + op.nodes[t] * cell.dx;
        // x faces at row j = t
        for (interp, out, x) in [(&op.interp_left, &mut left[t], x0), (&op.interp_right, &mut right[t], x0 + cell.dx)] {
            for k in 0..n {
                let mut acc = State::zero();
                for i in 0..n {
                    acc = acc.axpy(interp[i], &derivs[k][t * n + i]);
                }
                face[k] = acc;
            }
            *out = ea_procedure_n::<E, V, N>(eq, &face[..n], [x, yt], Dir::X);
        }
        // y faces at column i = t
        for (interp, out, y) in [(&op.interp_left, &mut bottom[t], y0), (&op.interp_right, &mut top[t], y0 + cell.dy)] {
            for k in 0..n {
                let mut acc = State::zero();
                for j in 0..n {
                    acc = acc.axpy(interp[j], &derivs[k][j * n + t]);
                }
                face[k] = acc;
            }
            *out = ea_procedure_n::<E, V, N>(eq, &face[..n], [xt, y], Dir::Y);
        }
    }

    let mut residual = [State::<V>::zero(); MAX_NODES_2D];
    for t in 0..n {
        // x direction along row t
        let mut fl = State::zero();
        let mut fr = State::zero();
        let mut gb = State::zero();
        let mut gt = State::zero();
        for k in 0..n {
            fl = fl.axpy(op.interp_left[k], &fa[t * n + k]);
            fr = fr.axpy(op.interp_right[k], &fa[t * n + k]);
            gb = gb.axpy(op.interp_left[k], &ga[k * n + t]);
            gt = gt.axpy(op.interp_right[k], &ga[k * n + t]);
        }
        for s in 0..n {
            // node (s, t) for x; node (t, s) for y
            let mut ax = fl * -op.grad_left[s];
            ax = ax.axpy(-op.grad_right[s], &fr);
            let mut ay = gb * -op.grad_left[s];
            ay = ay.axpy(-op.grad_right[s], &gt);
            for k in 0..n {
                ax = ax.axpy(op.diff[s][k], &fa[t * n + k]);
                ay = ay.axpy(op.diff[s][k], &ga[k * n + t]);
            }
            residual[t * n + s] = residual[t * n + s].axpy(lx, &ax);
            residual[s * n + t] = residual[s * n + t].axpy(ly, &ay);
        }
    }
    LwElement2D { residual, left, right, bottom, top }
}

/// Adds interface contributions of the four faces to a 2-D interior residual.
#[allow(clippy::too_many_arguments)]
pub fn add_face_terms_2d<const V: usize>(
    op: &LwOperators,
    residual: &mut [State<V>],
    lx: f64,
    ly: f64,
    f_left: &[State<V>],
    f_right: &[State<V>],
    g_bottom: &[State<V>],
    g_top: &[State<V>],
) {
    let n = op.n;
    for j in 0..n {
        for i in 0..n {
            let r = &mut residual[j * n + i];
            *r = r
                .axpy(lx * op.grad_left[i], &f_left[j])
                .axpy(lx * op.grad_right[i], &f_right[j])
                .axpy(ly * op.grad_left[j], &g_bottom[i])
                .axpy(ly * op.grad_right[j], &g_top[i]);
        }
    }
}
