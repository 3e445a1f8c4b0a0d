use serde::{Deserialize, Serialize};

use super::CaseSpec;
use crate::driver::{Simulation, SolverOptions};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub cells: usize,
    pub error: f64,
    /// Observed order against the previous row; `None` for the first row and
    /// when the two grids coincide.
    pub rate: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    #[default]
    L2,
}

impl std::str::FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" | "L1" => Ok(Norm::L1),
            "l2" | "L2" => Ok(Norm::L2),
            _ => Err(Error::Config(format!("unknown norm {s}; expected l1 or l2"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub case: String,
    pub degree: usize,
    pub norm: Norm,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn rates(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.rate).collect()
    }
}

/// Domain-averaged error of the first primitive variable against the exact
/// solution, sampled at `m` equispaced points per element direction. The L2
/// value is a root mean square.
pub fn error_norm(sim: &dyn Simulation, spec: &CaseSpec, m: usize, norm: Norm) -> Result<f64> {
    let exact = spec.exact.as_ref().ok_or_else(|| Error::Config(format!("{} has no exact solution", spec.name)))?;
    let cells = sim.cells();
    let ctx = spec.context(cells);
    let t = sim.time();
    let (mut num, mut den) = (0.0, 0.0);
    for (p, w, v) in sim.samples(0, m) {
        let e = (v - exact(p, t, &ctx)[0]).abs();
        num += match norm {
            Norm::L1 => w * e,
            Norm::L2 => w * e * e,
        };
        den += w;
    }
    Ok(match norm {
        Norm::L1 => num / den,
        Norm::L2 => (num / den).sqrt(),
    })
}

pub fn l2_error(sim: &dyn Simulation, spec: &CaseSpec, m: usize) -> Result<f64> {
    error_norm(sim, spec, m, Norm::L2)
}

/// Runs `spec` to its final time on each grid (cells per direction) and
/// reports L2 errors with `N + 3` samples per element direction.
pub fn convergence(spec: &CaseSpec, degree: usize, grids: &[usize], opts: &SolverOptions) -> Result<ConvergenceTable> {
    convergence_in(spec, degree, grids, opts, Norm::L2)
}

pub fn convergence_in(spec: &CaseSpec, degree: usize, grids: &[usize], opts: &SolverOptions, norm: Norm) -> Result<ConvergenceTable> {
    if grids.len() < 2 {
        return Err(Error::Config(format!("a convergence study needs at least two grids, got {}", grids.len())));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(grids.len());
    for &n in grids {
        let cells = if spec.dim == 1 { [n, 1] } else { [n, n] };
        let mut sim = spec.build(degree, cells, opts.clone())?;
        sim.advance(spec.t_end, &mut |_, _| {})?;
        let error = error_norm(sim.as_ref(), spec, degree + 3, norm)?;
        let rate = rows.last().and_then(|prev| {
            if prev.cells == n || error == 0.0 {
                None
            } else {
                Some((prev.error / error).ln() / (n as f64 / prev.cells as f64).ln())
            }
        });
        rows.push(ConvergenceRow { cells: n, error, rate });
    }
    Ok(ConvergenceTable { case: spec.name.to_string(), degree, norm, rows })
}
