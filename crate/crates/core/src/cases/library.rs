//! Case registry.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{BoundaryKind, CaseSpec, Context, ExactFn, InitialFn, Physics};
use crate::equations::{Point, VelocityField};
use crate::error::{Error, Result};

const NAMES: [&str; 15] = [
    "advection_sine",
    "smooth_euler",
    "shu_osher",
    "blast",
    "sedov1d",
    "double_rarefaction",
    "leblanc",
    "sod",
    "rotation",
    "isentropic_vortex",
    "riemann2d_12",
    "dmr",
    "kelvin_helmholtz",
    "astro_jet",
    "sedov2d_periodic",
];

pub fn case_names() -> &'static [&'static str] {
    &NAMES
}

pub fn find_case(name: &str) -> Result<CaseSpec> {
    let spec = match name {
        "advection_sine" => advection_sine(),
        "smooth_euler" => smooth_euler(),
        "shu_osher" => shu_osher(),
        "blast" => blast(),
        "sedov1d" => sedov1d(),
        "double_rarefaction" => double_rarefaction(),
        "leblanc" => leblanc(),
        "sod" => sod(),
        "rotation" => rotation(),
        "isentropic_vortex" => isentropic_vortex(),
        "riemann2d_12" => riemann2d_12(),
        "dmr" => dmr(),
        "kelvin_helmholtz" => kelvin_helmholtz(),
        "astro_jet" => astro_jet(),
        "sedov2d_periodic" => sedov2d_periodic(),
        _ => return Err(Error::UnknownCase { name: name.to_string(), available: NAMES.join(", ") }),
    };
    Ok(spec)
}

fn initial(f: impl Fn(Point, &Context) -> Vec<f64> + Send + Sync + 'static) -> InitialFn {
    Arc::new(f)
}

fn exact(f: impl Fn(Point, f64, &Context) -> Vec<f64> + Send + Sync + 'static) -> ExactFn {
    Arc::new(f)
}

fn wrap(x: f64, a: f64, b: f64) -> f64 {
    a + (x - a).rem_euclid(b - a)
}

fn base_1d(name: &'static str, description: &'static str, gamma: f64, x: [f64; 2], cells: usize, t_end: f64) -> CaseSpec {
    CaseSpec {
        name,
        description,
        dim: 1,
        physics: Physics::Euler { gamma },
        domain: [x, [0.0, 1.0]],
        cells: [cells, 1],
        degree: 4,
        t_end,
        safety: 0.98,
        include_ghosts: false,
        tvb_m: 0.0,
        window: None,
        boundaries: BoundaryKind::Transmissive,
        initial: initial(|_, _| vec![1.0, 0.0, 1.0]),
        inflow: None,
        exact: None,
    }
}

fn base_2d(name: &'static str, description: &'static str, domain: [[f64; 2]; 2], cells: usize, t_end: f64) -> CaseSpec {
    CaseSpec {
        dim: 2,
        domain,
        cells: [cells, cells],
        ..base_1d(name, description, 1.4, domain[0], cells, t_end)
    }
}

fn advection_sine() -> CaseSpec {
    let f = |x: f64, t: f64| vec![(2.0 * PI * (x - t)).sin()];
    CaseSpec {
        physics: Physics::Advection { velocity: VelocityField::Constant([1.0, 0.0]) },
        boundaries: BoundaryKind::Periodic,
        initial: initial(move |p, _| f(p[0], 0.0)),
        exact: Some(exact(move |p, t, _| f(p[0], t))),
        ..base_1d("advection_sine", "u = sin(2 pi x) advected once around the periodic unit interval", 1.4, [0.0, 1.0], 40, 1.0)
    }
}

fn smooth_euler() -> CaseSpec {
    let f = |x: f64, t: f64| vec![1.0 + 0.2 * (PI * wrap(x - t, -1.0, 1.0)).sin(), 1.0, 1.0];
    CaseSpec {
        boundaries: BoundaryKind::Periodic,
        initial: initial(move |p, _| f(p[0], 0.0)),
        exact: Some(exact(move |p, t, _| f(p[0], t))),
        ..base_1d("smooth_euler", "density wave carried by a uniform flow on the periodic interval [-1, 1]", 1.4, [-1.0, 1.0], 40, 2.0)
    }
}

fn shu_osher() -> CaseSpec {
    CaseSpec {
        tvb_m: 300.0,
        initial: initial(|p, _| {
            if p[0] < -4.0 {
                vec![3.857143, 2.629369, 10.333333]
            } else {
                vec![1.0 + 0.2 * (5.0 * p[0]).sin(), 0.0, 1.0]
            }
        }),
        ..base_1d("shu_osher", "shock interacting with a sinusoidal density field", 1.4, [-5.0, 5.0], 400, 1.8)
    }
}

fn blast() -> CaseSpec {
    CaseSpec {
        tvb_m: 300.0,
        boundaries: BoundaryKind::Reflecting,
        initial: initial(|p, _| {
            let pr = if p[0] < 0.1 {
                1000.0
            } else if p[0] > 0.9 {
                100.0
            } else {
                0.01
            };
            vec![1.0, 0.0, pr]
        }),
        ..base_1d("blast", "interacting blast waves between reflecting walls", 1.4, [0.0, 1.0], 400, 0.038)
    }
}

fn sedov1d() -> CaseSpec {
    CaseSpec {
        boundaries: BoundaryKind::Reflecting,
        initial: initial(|p, c| {
            let dx = c.dx[0];
            let e = if p[0].abs() <= 0.5 * dx { 3.2e6 / dx } else { 1e-12 };
            vec![1.0, 0.0, (c.gamma - 1.0) * e]
        }),
        ..base_1d("sedov1d", "point energy release between reflecting walls", 1.4, [-1.0, 1.0], 201, 0.001)
    }
}

fn double_rarefaction() -> CaseSpec {
    CaseSpec {
        initial: initial(|p, _| if p[0] <= 0.0 { vec![7.0, -1.0, 0.2] } else { vec![7.0, 1.0, 0.2] }),
        ..base_1d("double_rarefaction", "two rarefactions leaving a near vacuum", 1.4, [-1.0, 1.0], 200, 0.6)
    }
}

fn leblanc() -> CaseSpec {
    CaseSpec {
        initial: initial(|p, _| if p[0] <= 0.0 { vec![2.0, 0.0, 1e9] } else { vec![0.001, 0.0, 1.0] }),
        ..base_1d("leblanc", "shock tube with extreme pressure and density ratios", 1.4, [-10.0, 10.0], 800, 0.001)
    }
}

fn sod() -> CaseSpec {
    CaseSpec {
        initial: initial(|p, _| if p[0] < 0.5 { vec![1.0, 0.0, 1.0] } else { vec![0.125, 0.0, 0.1] }),
        ..base_1d("sod", "Sod shock tube", 1.4, [0.0, 1.0], 100, 0.2)
    }
}

fn composite(p: Point) -> f64 {
    let r = |c: Point| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
    let r0 = 0.15;
    let hump = 0.25 * (1.0 + (PI * r([0.25, 0.5]).min(r0) / r0).cos());
    let rc = r([0.5, 0.25]);
    let cone = if rc <= r0 { 1.0 - rc / r0 } else { 0.0 };
    let in_disc = r([0.5, 0.75]) <= r0 && ((p[0] - 0.5).abs() >= 0.025 || p[1] >= 0.85);
    hump + cone + if in_disc { 1.0 } else { 0.0 }
}

fn rotation() -> CaseSpec {
    CaseSpec {
        physics: Physics::Advection { velocity: VelocityField::Rotation },
        tvb_m: 100.0,
        initial: initial(|p, _| vec![composite(p)]),
        exact: Some(exact(|p, t, _| {
            let (s, c) = t.sin_cos();
            let (x, y) = (p[0] - 0.5, p[1] - 0.5);
            vec![composite([0.5 + c * x + s * y, 0.5 - s * x + c * y])]
        })),
        ..base_2d("rotation", "hump, cone and slotted disc in solid-body rotation", [[0.0, 1.0], [0.0, 1.0]], 100, 2.0 * PI)
    }
}

const VORTEX_BETA: f64 = 5.0;
const VORTEX_MACH: f64 = 0.5;

fn vortex(p: Point, gamma: f64) -> Vec<f64> {
    let r2 = p[0] * p[0] + p[1] * p[1];
    let rho = (1.0 - VORTEX_BETA * VORTEX_BETA * (gamma - 1.0) / (8.0 * gamma * PI * PI) * (1.0 - r2).exp())
        .powf(1.0 / (gamma - 1.0));
    let a = PI / 4.0;
    let g = VORTEX_BETA / (2.0 * PI) * (0.5 * (1.0 - r2)).exp();
    vec![rho, VORTEX_MACH * a.cos() - g * p[1], VORTEX_MACH * a.sin() + g * p[0], rho.powf(gamma)]
}

fn isentropic_vortex() -> CaseSpec {
    let shifted = |p: Point, t: f64, g: f64| {
        let a = PI / 4.0;
        let x = wrap(p[0] - VORTEX_MACH * a.cos() * t, -10.0, 10.0);
        let y = wrap(p[1] - VORTEX_MACH * a.sin() * t, -10.0, 10.0);
        vortex([x, y], g)
    };
    CaseSpec {
        boundaries: BoundaryKind::Periodic,
        initial: initial(|p, c| vortex(p, c.gamma)),
        exact: Some(exact(move |p, t, c| shifted(p, t, c.gamma))),
        ..base_2d(
            "isentropic_vortex",
            "isentropic vortex crossing the periodic square once diagonally",
            [[-10.0, 10.0], [-10.0, 10.0]],
            32,
            20.0 * 2f64.sqrt() / VORTEX_MACH,
        )
    }
}

fn riemann2d_12() -> CaseSpec {
    CaseSpec {
        window: Some([[0.0, 1.0], [0.0, 1.0]]),
        initial: initial(|p, _| match (p[0] >= 0.5, p[1] >= 0.5) {
            (true, true) => vec![0.5313, 0.0, 0.0, 0.4],
            (false, true) => vec![1.0, 0.7276, 0.0, 1.0],
            (false, false) => vec![0.8, 0.0, 0.0, 1.0],
            (true, false) => vec![1.0, 0.0, 0.7276, 1.0],
        }),
        ..base_2d(
            "riemann2d_12",
            "four-state Riemann problem on an enlarged square, statistics over the unit square",
            [[-0.25, 1.25], [-0.25, 1.25]],
            128,
            0.25,
        )
    }
}

fn dmr_state(p: Point, t: f64) -> Vec<f64> {
    let s = PI / 6.0;
    if p[0] < 1.0 / 6.0 + (p[1] + 20.0 * t) / 3f64.sqrt() {
        vec![8.0, 8.25 * s.cos(), -8.25 * s.sin(), 116.5]
    } else {
        vec![1.4, 0.0, 0.0, 1.0]
    }
}

fn dmr() -> CaseSpec {
    CaseSpec {
        boundaries: BoundaryKind::DoubleMach,
        initial: initial(|p, _| dmr_state(p, 0.0)),
        inflow: Some(exact(|p, t, _| dmr_state(p, t))),
        cells: [600, 150],
        ..base_2d("dmr", "Mach 10 shock reflecting off a 30 degree wedge", [[0.0, 4.0], [0.0, 1.0]], 600, 0.2)
    }
}

fn kelvin_helmholtz() -> CaseSpec {
    CaseSpec {
        boundaries: BoundaryKind::Periodic,
        initial: initial(|p, _| {
            let (x, y) = (p[0], p[1]);
            let inner = 0.25 < y && y < 0.75;
            let w0 = 0.1;
            let s2 = 2.0 * (0.05 / 2f64.sqrt()).powi(2);
            let v = w0 * (4.0 * PI * x).sin() * ((-(y - 0.25).powi(2) / s2).exp() + (-(y - 0.75).powi(2) / s2).exp());
            vec![if inner { 2.0 } else { 1.0 }, if inner { 0.5 } else { -0.5 }, v, 2.5]
        }),
        ..base_2d("kelvin_helmholtz", "shear layer instability on the periodic unit square", [[0.0, 1.0], [0.0, 1.0]], 512, 0.4)
    }
}

const JET_AMBIENT: [f64; 4] = [0.5, 0.0, 0.0, 0.4127];
const JET_INFLOW: [f64; 4] = [5.0, 800.0, 0.0, 0.4127];

fn astro_jet() -> CaseSpec {
    CaseSpec {
        physics: Physics::Euler { gamma: 5.0 / 3.0 },
        boundaries: BoundaryKind::Inflow,
        safety: 0.5,
        include_ghosts: true,
        initial: initial(|_, _| JET_AMBIENT.to_vec()),
        inflow: Some(exact(|p, _, _| if p[1].abs() <= 0.05 { JET_INFLOW.to_vec() } else { JET_AMBIENT.to_vec() })),
        ..base_2d("astro_jet", "Mach 2000 jet entering a uniform medium", [[0.0, 1.0], [-0.5, 0.5]], 400, 0.001)
    }
}

fn sedov2d_periodic() -> CaseSpec {
    CaseSpec {
        boundaries: BoundaryKind::Periodic,
        initial: initial(|p, c| {
            let r2 = p[0] * p[0] + p[1] * p[1];
            let (sr, sp) = (0.25_f64, 0.15_f64);
            let rho = 1.0 + (-r2 / (2.0 * sr * sr)).exp() / (4.0 * PI * sr * sr);
            let pr = 1e-5 + (c.gamma - 1.0) * (-r2 / (2.0 * sp * sp)).exp() / (4.0 * PI * sp * sp);
            vec![rho, 0.0, 0.0, pr]
        }),
        ..base_2d("sedov2d_periodic", "Gaussian energy release on a periodic square", [[-1.5, 1.5], [-1.5, 1.5]], 64, 20.0)
    }
}
