//! Interface numerical fluxes.

use super::{Dir, Equation, Point};
use crate::error::{Error, Result};
use crate::state::State;

/// Wave-speed bound after checking both states are admissible.
pub fn try_wave_speed<E: Equation<V>, const V: usize>(
    eq: &E,
    ul: &State<V>,
    ur: &State<V>,
    pos: Point,
    dir: Dir,
) -> Result<f64> {
    for u in [ul, ur] {
        if !u.is_finite() {
            return Err(Error::NonFinite(format!("wave speed of {:?}", u.0)));
        }
        for k in 0..eq.num_constraints() {
            let value = eq.constraint(k, u);
            if !(value > 0.0) {
                return Err(Error::Inadmissible {
                    context: "wave speed".into(),
                    constraint: k,
                    value,
                });
            }
        }
    }
    Ok(eq.wave_speed(ul, ur, pos, dir))
}

/// Local Lax-Friedrichs flux `1/2 (f(uL) + f(uR)) - 1/2 sigma (uR - uL)`.
#[inline(always)]
pub fn rusanov_flux<E: Equation<V>, const V: usize>(
    eq: &E,
    ul: &State<V>,
    ur: &State<V>,
    pos: Point,
    dir: Dir,
) -> State<V> {
    let sigma = eq.wave_speed(ul, ur, pos, dir);
    let fl = eq.flux(ul, pos, dir);
    let fr = eq.flux(ur, pos, dir);
    let mut out = [0.0; V];
    for v in 0..V {
        out[v] = 0.5 * (fl[v] + fr[v]) - 0.5 * sigma * (ur[v] - ul[v]);
    }
    State(out)
}

pub fn try_rusanov_flux<E: Equation<V>, const V: usize>(
    eq: &E,
    ul: &State<V>,
    ur: &State<V>,
    pos: Point,
    dir: Dir,
) -> Result<State<V>> {
    try_wave_speed(eq, ul, ur, pos, dir)?;
    Ok(rusanov_flux(eq, ul, ur, pos, dir))
}

/// HLLC on `(rho, rho vn, rho vt, E)` with the normal momentum in slot 1.
fn hllc_normal(ul: &[f64; 4], ur: &[f64; 4], gamma: f64) -> Result<[f64; 4]> {
    let prim = |u: &[f64; 4], side: &str| -> Result<(f64, f64, f64, f64, f64)> {
        if !u.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite(format!("hllc {side} state {u:?}")));
        }
        let rho = u[0];
        if !(rho > 0.0) {
            return Err(Error::Inadmissible { context: format!("hllc {side}"), constraint: 0, value: rho });
        }
        let vn = u[1] / rho;
        let vt = u[2] / rho;
        let p = (gamma - 1.0) * (u[3] - 0.5 * rho * (vn * vn + vt * vt));
        if !(p > 0.0) {
            return Err(Error::Inadmissible { context: format!("hllc {side}"), constraint: 1, value: p });
        }
        Ok((rho, vn, vt, p, (gamma * p / rho).sqrt()))
    };
    let (rl, vl, tl, pl, cl) = prim(ul, "left")?;
    let (rr, vr, tr, pr, cr) = prim(ur, "right")?;
    let flux = |u: &[f64; 4], vn: f64, p: f64| [u[1], u[1] * vn + p, u[2] * vn, (u[3] + p) * vn];

    // Einfeldt bounds from the Roe average
    let sl_w = rl.sqrt();
    let sr_w = rr.sqrt();
    let inv = 1.0 / (sl_w + sr_w);
    let v_roe = (sl_w * vl + sr_w * vr) * inv;
    let t_roe = (sl_w * tl + sr_w * tr) * inv;
    let h_l = (ul[3] + pl) / rl;
    let h_r = (ur[3] + pr) / rr;
    let h_roe = (sl_w * h_l + sr_w * h_r) * inv;
    let c2_roe = (gamma - 1.0) * (h_roe - 0.5 * (v_roe * v_roe + t_roe * t_roe));
    let c_roe = c2_roe.max(0.0).sqrt();
    let hlle = || -> [f64; 4] {
        let s_l = (vl - cl).min(v_roe - c_roe).min(0.0);
        let s_r = (vr + cr).max(v_roe + c_roe).max(0.0);
        let (fl, fr) = (flux(ul, vl, pl), flux(ur, vr, pr));
        let mut out = [0.0; 4];
        for v in 0..4 {
            out[v] = (s_r * fl[v] - s_l * fr[v] + s_l * s_r * (ur[v] - ul[v])) / (s_r - s_l);
        }
        out
    };
    let s_l = (vl - cl).min(v_roe - c_roe);
    let s_r = (vr + cr).max(v_roe + c_roe);

    if s_l >= 0.0 {
        return Ok(flux(ul, vl, pl));
    }
    if s_r <= 0.0 {
        return Ok(flux(ur, vr, pr));
    }
    let ml = rl * (s_l - vl);
    let mr = rr * (s_r - vr);
    let s_star = (pr - pl + vl * ml - vr * mr) / (ml - mr);
    // star states of strong expansions can lose positivity; HLLE cannot
    let p_star = pl + ml * (s_star - vl);
    if !(p_star > 0.0) {
        return Ok(hlle());
    }
    let star = |u: &[f64; 4], rho: f64, vn: f64, p: f64, s: f64| -> Option<[f64; 4]> {
        let factor = rho * (s - vn) / (s - s_star);
        (factor > 0.0 && factor.is_finite()).then(|| {
            [
                factor,
                factor * s_star,
                factor * u[2] / rho,
                factor * (u[3] / rho + (s_star - vn) * (s_star + p / (rho * (s - vn)))),
            ]
        })
    };
    let (u, f, s) = if s_star >= 0.0 {
        (ul, flux(ul, vl, pl), s_l)
    } else {
        (ur, flux(ur, vr, pr), s_r)
    };
    let (rho, vn, p) = if s_star >= 0.0 { (rl, vl, pl) } else { (rr, vr, pr) };
    let Some(us) = star(u, rho, vn, p, s) else {
        return Ok(hlle());
    };
    let mut out = [0.0; 4];
    for v in 0..4 {
        out[v] = f[v] + s * (us[v] - u[v]);
    }
    Ok(out)
}

/// Three-wave HLLC flux for 1-D Euler with Einfeldt wave-speed bounds. When a
/// star state would be inadmissible the HLLE flux with the same bounds is
/// returned instead.
pub fn hllc_flux_1d(ul: &State<3>, ur: &State<3>, gamma: f64) -> Result<State<3>> {
    let f = hllc_normal(&[ul[0], ul[1], 0.0, ul[2]], &[ur[0], ur[1], 0.0, ur[2]], gamma)?;
    Ok(State([f[0], f[1], f[3]]))
}

/// Three-wave HLLC flux for 2-D Euler in direction `dir`.
pub fn hllc_flux_2d(ul: &State<4>, ur: &State<4>, gamma: f64, dir: Dir) -> Result<State<4>> {
    match dir {
        Dir::X => hllc_normal(&ul.0, &ur.0, gamma).map(State),
        Dir::Y => {
            let rot = |u: &State<4>| [u[0], u[2], u[1], u[3]];
            let f = hllc_normal(&rot(ul), &rot(ur), gamma)?;
            Ok(State([f[0], f[2], f[1], f[3]]))
        }
    }
}
