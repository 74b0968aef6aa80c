//! Experiment driver: problem catalog, time loop, convergence studies and
//! file output.

pub mod catalog;
pub mod config;
pub mod output;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grid::{fill_ghosts, Axis, BoundarySpec, State};
use crate::oracles::{l1_relative_error, ReferenceProfile};
use crate::pif::{conservative_update, max_interface_speed, reconstruct_interface_fluxes, ReconstructOptions};
use crate::rk::{pif_rk4_step, ssp_rk3_step};
use crate::systems::{Model, SystemModel};
use crate::taylor::taylor_flux;
use crate::weno::WenoParams;

pub use catalog::{catalog, lookup, OracleKind, ProblemSpec};
pub use config::{parse_mesh, Integrator, RunConfig};
pub use output::{emit_outputs, write_convergence_csv, CONTOUR_LEVELS};

/// `ν / max(α*_x/dx, α*_y/dy)` over the interfaces of `state`, whose ghosts
/// must be filled.
pub fn compute_dt<M: SystemModel + ?Sized>(model: &M, state: &State, cfl: f64, exec: Execution) -> Result<f64> {
    if !(cfl > 0.0) {
        return Err(Error::Config(format!("cfl must be positive, got {cfl}")));
    }
    let mut rate = 0.0_f64;
    for axis in [Axis::X, Axis::Y] {
        if let Some(g) = state.grid.axis(axis) {
            rate = rate.max(max_interface_speed(model, &state.field, axis, exec)? / g.dx);
        }
    }
    if !(rate > 0.0) {
        return Err(Error::Config("zero wave speed everywhere; time step undefined".into()));
    }
    Ok(cfl / rate)
}

/// Shorten `dt` so that `t + dt` does not pass `t_final`.
pub fn truncate_dt(dt: f64, t: f64, t_final: f64) -> f64 {
    dt.min(t_final - t).max(0.0)
}

/// Advance `q` (ghosts filled) by one step of `integrator`. The result's
/// ghosts are stale.
pub fn step<M: SystemModel + ?Sized>(
    model: &M,
    q: &State,
    dt: f64,
    bc: &BoundarySpec,
    integrator: Integrator,
    weno: WenoParams,
    exec: Execution,
) -> Result<State> {
    let characteristic = ReconstructOptions::characteristic(weno).with_exec(exec);
    match integrator {
        Integrator::PifTaylor => {
            let flux = taylor_flux(model, q, dt, exec)?;
            let fl = reconstruct_interface_fluxes(model, q, &flux, &characteristic)?;
            Ok(conservative_update(q, &fl, dt, exec))
        }
        Integrator::PifRk4 => {
            let stage = ReconstructOptions::componentwise(weno).with_exec(exec);
            pif_rk4_step(model, q, dt, bc, &stage, &characteristic)
        }
        Integrator::SspRk3 => ssp_rk3_step(model, q, dt, bc, &characteristic),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Metrics {
    pub steps: usize,
    pub t_final: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    pub mass_initial: Vec<f64>,
    pub mass_final: Vec<f64>,
    /// Largest `|M_n − M_0| / Σ|q_0|` over steps and components.
    pub mass_drift_max: f64,
    /// Minimum density and pressure over all recorded states (Euler only).
    pub min_rho: Option<f64>,
    pub min_p: Option<f64>,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub problem: ProblemSpec,
    pub config: RunConfig,
    pub state: State,
    pub metrics: Metrics,
}

fn primitive_minima(model: &Model, state: &State) -> Option<(f64, f64)> {
    let (mut rho, mut p) = (f64::INFINITY, f64::INFINITY);
    for (i, j) in state.field.interior() {
        let q = state.field.vector(i, j);
        let pressure = match model {
            Model::Euler1D(e) => e.pressure(&q),
            Model::Euler2D(e) => e.pressure(&q),
            _ => return None,
        };
        rho = rho.min(q[0]);
        p = p.min(pressure);
    }
    Some((rho, p))
}

fn drift(mass: &[f64], m0: &[f64], scale: &[f64]) -> f64 {
    mass.iter()
        .zip(m0)
        .zip(scale)
        .map(|((m, a), s)| if *s > 0.0 { (m - a).abs() / s } else { (m - a).abs() })
        .fold(0.0, f64::max)
}

/// Run one catalog problem to its final time.
pub fn run(config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let problem = lookup(&config.problem)?;
    let grid = problem.grid(&config.mesh)?;
    let bc = config.boundary_for(problem.boundary);
    let t_final = config.t_final.unwrap_or(problem.t_final);
    let model = problem.model;
    let start = Instant::now();

    let mut state = problem.initial_state(grid);
    fill_ghosts(&mut state, &bc, 0.0)?;
    let mass_initial = state.field.interior_sum();
    let scale = state.field.interior_abs_sum();
    let minima = primitive_minima(&model, &state);
    let mut metrics = Metrics {
        steps: 0,
        t_final,
        dt_min: f64::INFINITY,
        dt_max: 0.0,
        mass_final: mass_initial.clone(),
        mass_initial,
        mass_drift_max: 0.0,
        min_rho: minima.map(|m| m.0),
        min_p: minima.map(|m| m.1),
        wall_time_s: 0.0,
    };

    while state.t < t_final {
        let n = metrics.steps;
        let t = state.t;
        let advance = || -> Result<State> {
            let dt = truncate_dt(compute_dt(&model, &state, config.cfl, config.exec)?, t, t_final);
            let mut next = step(&model, &state, dt, &bc, config.integrator, config.weno, config.exec)?;
            if t + dt >= t_final {
                next.t = t_final;
            }
            next.check_finite()?;
            let tn = next.t;
            fill_ghosts(&mut next, &bc, tn)?;
            Ok(next)
        };
        let next = advance().map_err(|e| e.at(|| format!("step {n} at t = {t}")))?;
        let dt = next.t - t;
        metrics.dt_min = metrics.dt_min.min(dt);
        metrics.dt_max = metrics.dt_max.max(dt);
        metrics.steps += 1;
        let mass = next.field.interior_sum();
        metrics.mass_drift_max = metrics.mass_drift_max.max(drift(&mass, &metrics.mass_initial, &scale));
        metrics.mass_final = mass;
        if let Some((r, p)) = primitive_minima(&model, &next) {
            metrics.min_rho = metrics.min_rho.map(|v| v.min(r));
            metrics.min_p = metrics.min_p.map(|v| v.min(p));
        }
        state = next;
    }
    metrics.wall_time_s = start.elapsed().as_secs_f64();
    Ok(RunResult {
        problem,
        config: config.clone(),
        state,
        metrics,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub mesh: usize,
    pub error: f64,
    /// Absent on the first row.
    pub order: Option<f64>,
}

/// Observed orders `ln(e_prev/e) / ln(m/m_prev)` between successive rows.
pub fn with_orders(errors: &[(usize, f64)]) -> Vec<ConvergenceRow> {
    errors
        .iter()
        .enumerate()
        .map(|(k, &(mesh, error))| ConvergenceRow {
            mesh,
            error,
            order: (k > 0).then(|| {
                let (m0, e0) = errors[k - 1];
                (e0 / error).ln() / (mesh as f64 / m0 as f64).ln()
            }),
        })
        .collect()
}

/// L1 relative density error of `result` against its problem's analytic
/// oracle.
pub fn oracle_error(result: &RunResult) -> Result<f64> {
    let p = &result.problem;
    let t = result.state.t;
    l1_relative_error(&result.state, 0, |x, y| p.exact_density(t, x, y))
}

/// Convergence table over `meshes` (each an x-size; 2D problems keep their
/// aspect ratio). Problems without an analytic oracle are scored against the
/// finest run, which is then dropped from the table.
pub fn converge(base: &RunConfig, meshes: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if meshes.is_empty() {
        return Err(Error::Config("converge needs at least one mesh".into()));
    }
    let problem = lookup(&base.problem)?;
    let run_at = |m: usize| {
        let config = RunConfig {
            mesh: vec![m],
            ..base.clone()
        };
        run(&config)
    };
    let errors = match problem.oracle {
        OracleKind::None => {
            return Err(Error::Config(format!("{} has no convergence oracle", problem.id)));
        }
        OracleKind::Reference => {
            if problem.dims != 1 || meshes.len() < 2 {
                return Err(Error::Config("self-convergence needs a 1D problem and two or more meshes".into()));
            }
            let (finest, coarse) = meshes.split_last().expect("nonempty");
            let reference = run_at(*finest)?;
            let profile = ReferenceProfile::from_state(&reference.state, String::new());
            coarse
                .iter()
                .map(|&m| {
                    let r = run_at(m)?;
                    Ok((m, l1_relative_error(&r.state, 0, |x, _| Ok(profile.sample(x, 0)))?))
                })
                .collect::<Result<Vec<_>>>()?
        }
        _ => meshes
            .iter()
            .map(|&m| Ok((m, oracle_error(&run_at(m)?)?)))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(with_orders(&errors))
}
