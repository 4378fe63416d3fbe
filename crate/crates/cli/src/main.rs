//! `dissoc`: command-line driver for the dissociation-splitting solvers.
//!
//! Subcommands: `analytic`, `scan`, `dissociate`, `threshold`, `twobody`.
//! Exit codes: 0 success, 1 solver failure, 2 input/domain error.

// `!(x > 0.0)` deliberately rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use dissoc_core::analytic1d::{atom_energy_exact, sech_params, splitting_sum_exact};
use dissoc_core::solver1d::{
    default_atom_grid, default_molecule_grid, dissociation_asymptote, minimize_atom_1d,
    minimize_molecule_1d, two_particle_ground,
};
use dissoc_core::solver3d::{
    hls_threshold_bound, splitting_scan_3d, symmetry_threshold, ScanSample,
};
use dissoc_core::{CoreError, LineGrid, RadialGrid, SolverConfig};

#[derive(Parser)]
#[command(
    name = "dissoc",
    version,
    about = "Dissociation scans for single-density DFT models"
)]
struct Cli {
    /// Optional key=value file supplying defaults for any long flag
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for scan points (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form 1D atom: profile parameters, energy, and splitting sum
    Analytic {
        /// Electron mass alpha
        #[arg(long)]
        alpha: Option<f64>,
        /// Exchange strength c_xc
        #[arg(long)]
        cxc: Option<f64>,
    },
    /// Scan the dissociated energy sum I_alpha + I_(2N - alpha) over alpha in [0, N]
    Scan {
        /// Model: "1d" (contact potential) or "3d" (radial TFDW)
        #[arg(long)]
        model: Option<String>,
        /// Electrons per atom N (total mass 2N)
        #[arg(long)]
        n: Option<f64>,
        /// Exchange strength c_xc
        #[arg(long)]
        cxc: Option<f64>,
        /// Alpha step; must divide N evenly
        #[arg(long)]
        step: Option<f64>,
        /// Output CSV path [default: scan.csv]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot next to the CSV
        #[arg(long)]
        plot: bool,
    },
    /// 1D molecule energy versus internuclear distance R
    Dissociate {
        /// Total electron mass lambda
        #[arg(long)]
        lambda: Option<f64>,
        /// Exchange strength c_xc
        #[arg(long)]
        cxc: Option<f64>,
        /// Largest internuclear distance
        #[arg(long)]
        r_max: Option<f64>,
        /// Distance increment [default: 2]
        #[arg(long)]
        r_step: Option<f64>,
        /// Output CSV path [default: dissociate.csv]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot next to the CSV
        #[arg(long)]
        plot: bool,
    },
    /// Bisect the 3D symmetry-breaking threshold in c_xc
    Threshold {
        /// Electrons per atom N
        #[arg(long)]
        n: Option<f64>,
        /// Symmetric endpoint of the bracket
        #[arg(long)]
        c_lo: Option<f64>,
        /// Asymmetric endpoint of the bracket
        #[arg(long)]
        c_hi: Option<f64>,
        /// Final bracket width
        #[arg(long)]
        tol: Option<f64>,
        /// Alpha step used by each probe scan [default: 0.1]
        #[arg(long)]
        step: Option<f64>,
        /// Probe CSV path [default: threshold.csv]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Only print the sufficient upper bound and exit
        #[arg(long)]
        bound_only: bool,
    },
    /// Two-particle Schroedinger ground state of the 1D molecule
    Twobody {
        /// Internuclear distance R
        #[arg(long)]
        r: Option<f64>,
        /// Grid spacing [default: 0.25]
        #[arg(long)]
        spacing: Option<f64>,
        /// Box margin beyond each well [default: 17.5]
        #[arg(long)]
        margin: Option<f64>,
        /// Eigenvalue tolerance [default: 1e-8]
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// key=value defaults loaded from --config; flags always win.
struct Defaults(HashMap<String, String>);

impl Defaults {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    domain(format!(
                        "config line {}: expected key=value, got {line:?}",
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    /// Flag value if given, else the parsed config value, else None.
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| domain(format!("config key {key}: cannot parse {raw:?}"))),
            None => Ok(None),
        }
    }

    fn get_or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T> {
        self.get(flag, key)?
            .ok_or_else(|| domain(format!("missing required parameter --{key}")))
    }

    fn flag(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        Ok(self.get::<bool>(None, key)?.unwrap_or(false))
    }
}

/// An input/domain error originating in the CLI itself (exit code 2).
fn domain(msg: String) -> anyhow::Error {
    anyhow::Error::new(CoreError::Domain(msg))
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<CoreError>() {
        Some(
            CoreError::Domain(_)
            | CoreError::ClosedFormInvalid { .. }
            | CoreError::ClosedFormDegenerate
            | CoreError::InvalidDensity(_)
            | CoreError::OutsideGrid { .. }
            | CoreError::NoBracket(_),
        ) => 2,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}

fn run(cli: Cli) -> Result<()> {
    let defaults = Defaults::load(cli.config.as_deref())?;
    if let Some(jobs) = defaults.get(cli.jobs, "jobs")? {
        if jobs == 0 {
            return Err(domain("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker pool")?;
    }
    match cli.command {
        Command::Analytic { alpha, cxc } => cmd_analytic(
            defaults.require(alpha, "alpha")?,
            defaults.require(cxc, "cxc")?,
        ),
        Command::Scan {
            model,
            n,
            cxc,
            step,
            out,
            plot,
        } => cmd_scan(
            &defaults.require(model, "model")?,
            defaults.require(n, "n")?,
            defaults.require(cxc, "cxc")?,
            defaults.require(step, "step")?,
            &defaults.get_or(out, "out", PathBuf::from("scan.csv"))?,
            defaults.flag(plot, "plot")?,
        ),
        Command::Dissociate {
            lambda,
            cxc,
            r_max,
            r_step,
            out,
            plot,
        } => cmd_dissociate(
            defaults.require(lambda, "lambda")?,
            defaults.require(cxc, "cxc")?,
            defaults.require(r_max, "r-max")?,
            defaults.get_or(r_step, "r-step", 2.0)?,
            &defaults.get_or(out, "out", PathBuf::from("dissociate.csv"))?,
            defaults.flag(plot, "plot")?,
        ),
        Command::Threshold {
            n,
            c_lo,
            c_hi,
            tol,
            step,
            out,
            bound_only,
        } => {
            let n = defaults.require(n, "n")?;
            if defaults.flag(bound_only, "bound-only")? {
                println!("sufficient c_xc bound: {}", hls_threshold_bound(n)?);
                return Ok(());
            }
            cmd_threshold(
                n,
                defaults.require(c_lo, "c-lo")?,
                defaults.require(c_hi, "c-hi")?,
                defaults.require(tol, "tol")?,
                defaults.get_or(step, "step", 0.1)?,
                &defaults.get_or(out, "out", PathBuf::from("threshold.csv"))?,
            )
        }
        Command::Twobody {
            r,
            spacing,
            margin,
            tol,
        } => cmd_twobody(
            defaults.require(r, "r")?,
            defaults.get_or(spacing, "spacing", 0.25)?,
            defaults.get_or(margin, "margin", 17.5)?,
            defaults.get_or(tol, "tol", 1e-8)?,
        ),
    }
}

fn cmd_analytic(alpha: f64, cxc: f64) -> Result<()> {
    println!("alpha = {alpha}, c_xc = {cxc}");
    if alpha > 0.0 {
        match sech_params(alpha, cxc) {
            Ok(s) => println!("profile: a = {}, b = {}, x0 = {}", s.a, s.b, s.x0),
            Err(CoreError::ClosedFormDegenerate) => {
                println!("profile: degenerate (b = 1); energy still defined")
            }
            Err(e) => return Err(e.into()),
        }
    }
    println!("atom energy I_alpha = {}", atom_energy_exact(alpha, cxc)?);
    println!(
        "splitting sum I_alpha + I_(2-alpha) = {}",
        splitting_sum_exact(alpha, cxc)?
    );
    Ok(())
}

/// 1D analogue of the 3D splitting scan: exact energies for c_xc >= 1/2,
/// grid solves below, with sub-solves dispatched to the worker pool.
fn scan_1d(n: f64, cxc: f64, step: f64) -> Result<(Vec<ScanSample>, f64, bool)> {
    if !(n > 0.0) || !(step > 0.0) {
        return Err(domain(format!(
            "need positive electron count and step, got N = {n}, step = {step}"
        )));
    }
    let steps_f = n / step;
    let steps = steps_f.round() as usize;
    if steps == 0 || (steps_f - steps as f64).abs() > 1e-9 {
        return Err(domain(format!(
            "alpha step {step} does not divide N = {n} evenly"
        )));
    }
    let lambda = 2.0 * n;
    let alphas: Vec<f64> = (0..=steps).map(|k| k as f64 * step).collect();
    let mut masses: Vec<f64> = Vec::new();
    for &a in &alphas {
        for m in [a, lambda - a] {
            if m > 0.0 && !masses.iter().any(|x| (x - m).abs() < 1e-12) {
                masses.push(m);
            }
        }
    }
    let grid = default_atom_grid();
    let cfg = SolverConfig::<LineGrid>::default();
    let energies: Vec<(f64, dissoc_core::Result<f64>)> = masses
        .par_iter()
        .map(|&m| {
            let e = if cxc >= 0.5 {
                atom_energy_exact(m, cxc)
            } else {
                minimize_atom_1d(m, cxc, &cfg, &grid).map(|r| r.breakdown.total)
            };
            (m, e)
        })
        .collect();
    let energy_of = |m: f64| -> Result<f64> {
        if m == 0.0 {
            return Ok(0.0);
        }
        match energies.iter().find(|(x, _)| (x - m).abs() < 1e-12) {
            Some((_, Ok(e))) => Ok(*e),
            Some((at, Err(e))) => Err(anyhow!("solver failed at scan point {at}: {e}")),
            None => Err(anyhow!("mass {m} missing from scan")),
        }
    };
    let mut samples = Vec::with_capacity(alphas.len());
    for &a in &alphas {
        let i_alpha = energy_of(a)?;
        let i_complement = energy_of(lambda - a)?;
        samples.push(ScanSample {
            alpha: a,
            i_alpha,
            i_complement,
            sum: i_alpha + i_complement,
        });
    }
    let argmin = samples.iter().fold(
        samples[0],
        |best, s| if s.sum < best.sum { *s } else { best },
    );
    let symmetric = (argmin.alpha - n).abs() <= step + 1e-12;
    Ok((samples, argmin.alpha, symmetric))
}

fn cmd_scan(model: &str, n: f64, cxc: f64, step: f64, out: &Path, plot: bool) -> Result<()> {
    let (samples, argmin, symmetric) = match model {
        "1d" => scan_1d(n, cxc, step)?,
        "3d" => {
            let grid = RadialGrid::for_charge(n)?;
            let scan = splitting_scan_3d(n, cxc, step, &SolverConfig::default(), &grid)?;
            (scan.samples, scan.argmin_alpha, scan.symmetric)
        }
        other => return Err(domain(format!("unknown model {other:?}; use 1d or 3d"))),
    };
    let rows: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| vec![s.alpha, s.i_alpha, s.i_complement, s.sum])
        .collect();
    output::write_csv(out, "alpha,I_alpha,I_complement,sum", &rows)?;
    if plot {
        let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.alpha, s.sum)).collect();
        output::write_svg(&out.with_extension("svg"), &pts, "alpha", "energy sum")?;
    }
    println!("wrote {} ({} rows)", out.display(), rows.len());
    println!("argmin alpha = {argmin}");
    println!("symmetric = {symmetric}");
    Ok(())
}

fn cmd_dissociate(
    lambda: f64,
    cxc: f64,
    r_max: f64,
    r_step: f64,
    out: &Path,
    plot: bool,
) -> Result<()> {
    if !(r_max >= 0.0) {
        return Err(domain(format!("r-max must be nonnegative, got {r_max}")));
    }
    let mut ladder = vec![0.0];
    if r_max > 0.0 {
        if !(r_step > 0.0) {
            return Err(domain(format!("r-step must be positive, got {r_step}")));
        }
        let mut r = r_step;
        while r < r_max - 1e-12 {
            ladder.push(r);
            r += r_step;
        }
        ladder.push(r_max);
    }
    let cfg = SolverConfig::<LineGrid>::default();
    let energies: Vec<dissoc_core::Result<f64>> = ladder
        .par_iter()
        .map(|&r| {
            let grid = default_molecule_grid(r)?;
            minimize_molecule_1d(lambda, r, cxc, &cfg, &grid).map(|m| m.breakdown.total)
        })
        .collect();
    let asymptote = dissociation_asymptote(lambda, cxc, &cfg, &default_atom_grid())?;
    let mut rows = Vec::with_capacity(ladder.len());
    for (&r, e) in ladder.iter().zip(energies) {
        let e = e.map_err(|e| anyhow!("solver failed at R = {r}: {e}"))?;
        rows.push(vec![r, e, e - asymptote]);
    }
    output::write_csv(out, "R,energy,gap_to_asymptote", &rows)?;
    if plot {
        let pts: Vec<(f64, f64)> = rows.iter().map(|row| (row[0], row[1])).collect();
        output::write_svg(&out.with_extension("svg"), &pts, "R", "energy")?;
    }
    let last = rows.last().expect("ladder is nonempty");
    println!("wrote {} ({} rows)", out.display(), rows.len());
    println!("asymptote = {asymptote}");
    println!("final gap = {:e}", last[2].abs());
    Ok(())
}

fn cmd_threshold(n: f64, c_lo: f64, c_hi: f64, tol: f64, step: f64, out: &Path) -> Result<()> {
    let grid = RadialGrid::for_charge(n)?;
    let (bracket, probes) =
        symmetry_threshold(n, c_lo, c_hi, tol, step, &SolverConfig::default(), &grid)?;
    let rows: Vec<Vec<f64>> = probes
        .iter()
        .map(|p| vec![p.c_xc, p.argmin_alpha, if p.symmetric { 1.0 } else { 0.0 }])
        .collect();
    output::write_csv(out, "c_xc,argmin_alpha,symmetric", &rows)?;
    println!("wrote {} ({} probes)", out.display(), rows.len());
    println!("bracket: [{}, {}]", bracket.c_low, bracket.c_high);
    println!("width: {:e}", bracket.c_high - bracket.c_low);
    Ok(())
}

fn cmd_twobody(r: f64, spacing: f64, margin: f64, tol: f64) -> Result<()> {
    let grid = LineGrid::with_spacing(-margin, r + margin, spacing)?;
    let out = two_particle_ground(r, &grid, tol)?;
    println!("R = {r}");
    println!("energy = {}", out.energy);
    println!("error estimate = {:e}", out.error_estimate);
    println!("outer iterations = {}", out.outer_iterations);
    Ok(())
}
