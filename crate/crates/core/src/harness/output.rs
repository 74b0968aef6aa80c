//! CSV and key-value writers for run results.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::State;
use crate::systems::Model;

use super::{ConvergenceRow, Metrics, RunResult};

/// Thirty equally spaced density contour levels for the double-Mach plot.
pub const CONTOUR_LEVELS: (f64, f64, usize) = (1.728, 20.74, 30);

pub fn contour_levels() -> Vec<f64> {
    let (lo, hi, n) = CONTOUR_LEVELS;
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Primitive-variable table of the interior points: `x,q` for scalars,
/// `x,rho,u,p` in 1D Euler, `x,y,rho,u,v,p` in 2D.
pub fn profile_csv(model: &Model, state: &State) -> String {
    let mut s = String::new();
    s.push_str(match model {
        Model::Euler1D(_) => "x,rho,u,p\n",
        Model::Euler2D(_) => "x,y,rho,u,v,p\n",
        _ => "x,q\n",
    });
    for (i, j) in state.field.interior() {
        let (x, y) = state.grid.point(i, j);
        let q = state.field.vector(i, j);
        let _ = match model {
            Model::Euler1D(e) => {
                let [r, u, p] = e.primitive(&q);
                writeln!(s, "{x:e},{r:e},{u:e},{p:e}")
            }
            Model::Euler2D(e) => {
                let [r, u, v, p] = e.primitive(&q);
                writeln!(s, "{x:e},{y:e},{r:e},{u:e},{v:e},{p:e}")
            }
            _ => writeln!(s, "{x:e},{:e}", q[0]),
        };
    }
    s
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",")
}

pub fn metrics_text(result: &RunResult) -> String {
    let m: &Metrics = &result.metrics;
    let c = &result.config;
    let mut s = String::new();
    let _ = writeln!(s, "problem={}", result.problem.id);
    let _ = writeln!(s, "integrator={}", c.integrator);
    let g = &result.state.grid;
    let _ = match g.dims() {
        1 => writeln!(s, "mesh={}", g.mx()),
        _ => writeln!(s, "mesh={}x{}", g.mx(), g.my()),
    };
    let _ = writeln!(s, "cfl={}", c.cfl);
    let _ = writeln!(s, "weno_mode={}", c.weno.mode);
    let _ = writeln!(s, "t_final={:e}", m.t_final);
    let _ = writeln!(s, "steps={}", m.steps);
    let _ = writeln!(s, "dt_min={:e}", m.dt_min);
    let _ = writeln!(s, "dt_max={:e}", m.dt_max);
    let _ = writeln!(s, "mass_initial={}", join(&m.mass_initial));
    let _ = writeln!(s, "mass_final={}", join(&m.mass_final));
    let _ = writeln!(s, "mass_drift_max={:e}", m.mass_drift_max);
    if let (Some(r), Some(p)) = (m.min_rho, m.min_p) {
        let _ = writeln!(s, "min_rho={r:e}");
        let _ = writeln!(s, "min_p={p:e}");
    }
    let _ = writeln!(s, "wall_time_s={:.3}", m.wall_time_s);
    s
}

/// Write `profile.csv`, `metrics.txt` and, for double-mach,
/// `contour_levels.txt` into `dir`. Returns the paths written.
pub fn emit_outputs(result: &RunResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let profile = dir.join("profile.csv");
    write(&profile, &profile_csv(&result.problem.model, &result.state))?;
    written.push(profile);
    let metrics = dir.join("metrics.txt");
    write(&metrics, &metrics_text(result))?;
    written.push(metrics);
    if result.problem.id == "double-mach" {
        let levels = dir.join("contour_levels.txt");
        let text: String = contour_levels().iter().map(|l| format!("{l}\n")).collect();
        write(&levels, &text)?;
        written.push(levels);
    }
    Ok(written)
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("mesh,error,order\n");
    for r in rows {
        let order = r.order.map_or(String::new(), |o| format!("{o:.4}"));
        let _ = writeln!(s, "{},{:e},{order}", r.mesh, r.error);
    }
    s
}

pub fn write_convergence_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    write(path, &convergence_csv(rows))
}
