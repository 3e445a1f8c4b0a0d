use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use lwfr_core::cases::{case_names, convergence_in, find_case, run_case, Norm, RunConfig};
use lwfr_core::driver::{LimiterKind, SolverOptions};
use lwfr_core::flux_correction::SplitWeights;
use lwfr_core::io::OutputFormat;

#[derive(Parser)]
#[command(name = "lwfr", version, about = "Lax-Wendroff flux reconstruction solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a case and write snapshots plus a JSON manifest.
    Solve {
        /// TOML file with the same keys as the flags; flags take precedence.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Error table and observed orders over a list of grids.
    Convergence {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Cells per direction, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        grids: Vec<usize>,
        #[arg(long, default_value = "none")]
        limiter: String,
        /// Error norm, l1 or l2.
        #[arg(long, default_value = "l2")]
        norm: String,
        /// Print the table as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List the available cases.
    Cases,
}

#[derive(Args, Deserialize, Default, Debug, Clone)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
struct SolveArgs {
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    /// `NX` or `NX,NY`.
    #[arg(long)]
    cells: Option<String>,
    /// blend-fo, blend-mh, tvb or none.
    #[arg(long)]
    limiter: Option<String>,
    #[arg(long)]
    cfl_safety: Option<f64>,
    #[arg(long)]
    fixed_dt: Option<f64>,
    #[arg(long)]
    include_ghosts: Option<bool>,
    #[arg(long)]
    tend: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Equally spaced output times after the initial snapshot.
    #[arg(long)]
    snapshots: Option<usize>,
    /// Snapshot columns to keep, comma separated.
    #[arg(long)]
    columns: Option<String>,
    #[arg(long)]
    indicator_a: Option<f64>,
    #[arg(long)]
    indicator_c: Option<f64>,
    #[arg(long)]
    indicator_s: Option<f64>,
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    force_alpha: Option<f64>,
    #[arg(long)]
    tvb_m: Option<f64>,
    #[arg(long)]
    tvb_characteristic: Option<bool>,
    #[arg(long)]
    flux_correction: Option<bool>,
    #[arg(long)]
    scaling_limiter: Option<bool>,
    /// equal or wave-speed.
    #[arg(long)]
    split: Option<String>,
    #[arg(long)]
    max_retries: Option<usize>,
    #[arg(long)]
    audit: Option<bool>,
}

macro_rules! prefer {
    ($a:ident, $b:ident; $($f:ident),*) => {
        SolveArgs { $($f: $a.$f.or($b.$f)),* }
    };
}

impl SolveArgs {
    /// Fields set on `self` win over those in `base`.
    fn over(self, base: SolveArgs) -> SolveArgs {
        prefer!(self, base; case, degree, cells, limiter, cfl_safety, fixed_dt, include_ghosts, tend, gamma, out,
            format, snapshots, columns, indicator_a, indicator_c, indicator_s, alpha_min, alpha_max, force_alpha,
            tvb_m, tvb_characteristic, flux_correction, scaling_limiter, split, max_retries, audit)
    }

    fn options(&self, mut o: SolverOptions) -> Result<SolverOptions> {
        if let Some(l) = &self.limiter {
            o.limiter = l.parse()?;
        }
        if let Some(v) = self.cfl_safety {
            o.time.safety = v;
        }
        o.time.fixed_dt = self.fixed_dt.or(o.time.fixed_dt);
        o.time.include_ghosts = self.include_ghosts.unwrap_or(o.time.include_ghosts);
        let ind = &mut o.indicator;
        ind.a = self.indicator_a.unwrap_or(ind.a);
        ind.c = self.indicator_c.unwrap_or(ind.c);
        ind.s = self.indicator_s.unwrap_or(ind.s);
        ind.alpha_min = self.alpha_min.unwrap_or(ind.alpha_min);
        ind.alpha_max = self.alpha_max.unwrap_or(ind.alpha_max);
        o.force_alpha = self.force_alpha.or(o.force_alpha);
        o.tvb_m = self.tvb_m.unwrap_or(o.tvb_m);
        o.tvb_characteristic = self.tvb_characteristic.unwrap_or(o.tvb_characteristic);
        o.flux_correction = self.flux_correction.unwrap_or(o.flux_correction);
        o.scaling_limiter = self.scaling_limiter.unwrap_or(o.scaling_limiter);
        o.max_retries = self.max_retries.unwrap_or(o.max_retries);
        o.audit = self.audit.unwrap_or(o.audit);
        if let Some(s) = &self.split {
            o.split = match s.as_str() {
                "equal" => SplitWeights::Equal,
                "wave-speed" => SplitWeights::WaveSpeed,
                _ => bail!("unknown split {s}; expected equal or wave-speed"),
            };
        }
        o.validate()?;
        Ok(o)
    }
}

fn parse_cells(s: &str) -> Result<[usize; 2]> {
    let v: Vec<usize> = s.split(',').map(|p| p.trim().parse()).collect::<std::result::Result<_, _>>().with_context(|| format!("bad --cells {s}"))?;
    match v[..] {
        [n] => Ok([n, n]),
        [nx, ny] => Ok([nx, ny]),
        _ => bail!("--cells takes NX or NX,NY, got {s}"),
    }
}

fn solve(config: Option<PathBuf>, cli: SolveArgs) -> Result<()> {
    let base = match config {
        Some(p) => {
            let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => SolveArgs::default(),
    };
    let a = cli.over(base);
    let name = a.case.clone().context("--case is required")?;
    let spec = find_case(&name)?;
    let mut cfg = RunConfig::for_case(&spec);
    cfg.options = a.options(spec.default_options())?;
    cfg.degree = a.degree;
    cfg.cells = a.cells.as_deref().map(parse_cells).transpose()?;
    cfg.t_end = a.tend;
    cfg.gamma = a.gamma;
    cfg.out_dir = a.out.clone();
    cfg.format = a.format.as_deref().map(str::parse::<OutputFormat>).transpose()?.unwrap_or_default();
    cfg.snapshots = a.snapshots.unwrap_or(1);
    cfg.columns = a.columns.as_ref().map(|c| c.split(',').map(|s| s.trim().to_string()).collect());

    let out = run_case(&spec, &cfg)?;
    let m = &out.manifest;
    println!(
        "{}: t = {} after {} steps ({} retries) in {:.2} s, {:.3e} element updates/s",
        m.case,
        out.sim.time(),
        m.steps,
        m.retries,
        m.timings.wall_seconds,
        m.timings.element_updates_per_second
    );
    if let Some(a) = m.alpha_history.last() {
        println!("alpha > 0 in {:.2}% of elements, max alpha {:.3}", 100.0 * a.fraction, a.max);
    }
    for (n, d) in m.conservation.names.iter().zip(&m.conservation.relative_drift) {
        println!("{n}: relative drift {d:.3e}");
    }
    println!("min constraint {:.6e}", out.sim.min_constraint());
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Solve { config, args } => solve(config, args),
        Command::Convergence { case, degree, grids, limiter, norm, json } => {
            let spec = find_case(&case)?;
            let opts = SolverOptions { limiter: limiter.parse::<LimiterKind>()?, ..spec.default_options() };
            let t = convergence_in(&spec, degree, &grids, &opts, norm.parse::<Norm>()?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&t)?);
            } else {
                println!("{:>8} {:>14} {:>8}", "cells", format!("{:?} error", t.norm), "rate");
                for r in &t.rows {
                    let rate = r.rate.map_or("-".to_string(), |v| format!("{v:.2}"));
                    println!("{:>8} {:>14.6e} {:>8}", r.cells, r.error, rate);
                }
            }
            Ok(())
        }
        Command::Cases => {
            for n in case_names() {
                let s = find_case(n)?;
                println!("{n:<20} {}-D  {}", s.dim, s.description);
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let base: SolveArgs = toml::from_str("case = \"sod\"\ndegree = 3\ncfl-safety = 0.5").unwrap();
        let cli = SolveArgs { degree: Some(2), ..SolveArgs::default() };
        let a = cli.over(base);
        assert_eq!(a.case.as_deref(), Some("sod"));
        assert_eq!(a.degree, Some(2));
        assert_eq!(a.options(SolverOptions::default()).unwrap().time.safety, 0.5);
    }

    #[test]
    fn unknown_config_keys_rejected() {
        assert!(toml::from_str::<SolveArgs>("cfl = 0.5").is_err());
    }

    #[test]
    fn cells_parse() {
        assert_eq!(parse_cells("64").unwrap(), [64, 64]);
        assert_eq!(parse_cells("600,150").unwrap(), [600, 150]);
        assert!(parse_cells("1,2,3").is_err());
    }
}
