//! Runge-Kutta paths: the RK4 time-averaged flux and the SSP-RK3
//! method-of-lines baseline.

use crate::error::Result;
use crate::exec::{self, Execution};
use crate::grid::{fill_ghosts, BoundarySpec, Field, State};
use crate::pif::{apply_update, conservative_update, reconstruct_interface_fluxes, ReconstructOptions, TimeAveragedFlux};
use crate::systems::SystemModel;

/// Offsets of the RK4 stage times, in units of `dt`.
pub const STAGE_OFFSETS: [f64; 4] = [0.0, 0.5, 0.5, 1.0];

/// The four RK4 stage states, ghosts filled at their stage times.
#[derive(Clone, Debug, PartialEq)]
pub struct StageSet {
    pub stages: [State; 4],
}

/// `q − dt·D(f(q))`, with `D` the conservative difference of reconstructed
/// interface fluxes of the instantaneous flux of `stage`.
fn stage_update<M: SystemModel + ?Sized>(
    model: &M,
    base: &State,
    stage: &State,
    dt: f64,
    opts: &ReconstructOptions,
) -> Result<State> {
    let flux = TimeAveragedFlux::instantaneous(model, stage, opts.exec)?;
    let fl = reconstruct_interface_fluxes(model, stage, &flux, opts)?;
    let mut next = base.clone();
    apply_update(&base.grid, &base.field, &fl, dt, opts.exec, &mut next.field);
    Ok(next)
}

/// Stages `q^(2..4) = q − c_k dt D(f(q^(k-1)))` with `c = (1/2, 1/2, 1)`.
/// `q` must have its ghosts filled at `q.t`.
pub fn rk4_stages<M: SystemModel + ?Sized>(
    model: &M,
    q: &State,
    dt: f64,
    bc: &BoundarySpec,
    stage_opts: &ReconstructOptions,
) -> Result<StageSet> {
    let mut stages: Vec<State> = Vec::with_capacity(4);
    stages.push(q.clone());
    for k in 1..4 {
        let c = STAGE_OFFSETS[k];
        let run = || -> Result<State> {
            let mut next = stage_update(model, q, &stages[k - 1], c * dt, stage_opts)?;
            next.t = q.t + c * dt;
            next.check_finite()?;
            let t = next.t;
            fill_ghosts(&mut next, bc, t)?;
            Ok(next)
        };
        stages.push(run().map_err(|e| e.at(|| format!("stage {}", k + 1)))?);
    }
    let stages: [State; 4] = stages.try_into().expect("four stages");
    Ok(StageSet { stages })
}

/// `F_RK = (f(q^(1)) + 2 f(q^(2)) + 2 f(q^(3)) + f(q^(4))) / 6` at every
/// stored point.
pub fn rk_time_avg_flux<M: SystemModel + ?Sized>(
    model: &M,
    stages: &StageSet,
    dt: f64,
    exec: Execution,
) -> Result<TimeAveragedFlux> {
    let fluxes = stages
        .stages
        .iter()
        .map(|s| TimeAveragedFlux::instantaneous(model, s, exec))
        .collect::<Result<Vec<_>>>()?;
    let combine = |pick: &dyn Fn(&TimeAveragedFlux) -> &Field| -> Field {
        let mut out = pick(&fluxes[0]).zeros_like();
        let (a, b, c, d) = (
            pick(&fluxes[0]).data(),
            pick(&fluxes[1]).data(),
            pick(&fluxes[2]).data(),
            pick(&fluxes[3]).data(),
        );
        exec::for_each_chunk(exec, out.data_mut(), 4096, |k, chunk| {
            let base = k * 4096;
            for (p, v) in chunk.iter_mut().enumerate() {
                let n = base + p;
                *v = (a[n] + 2.0 * (b[n] + c[n]) + d[n]) / 6.0;
            }
        });
        out
    };
    let f = combine(&|t| &t.f);
    let g = fluxes[0]
        .g
        .as_ref()
        .map(|_| combine(&|t| t.g.as_ref().expect("2D stage flux")));
    Ok(TimeAveragedFlux { f, g, dt })
}

/// One PIF-RK4 step: stage reconstructions with `stage_opts`, then a single
/// reconstruction of `F_RK` against `q^n` with `final_opts`.
pub fn pif_rk4_step<M: SystemModel + ?Sized>(
    model: &M,
    q: &State,
    dt: f64,
    bc: &BoundarySpec,
    stage_opts: &ReconstructOptions,
    final_opts: &ReconstructOptions,
) -> Result<State> {
    let stages = rk4_stages(model, q, dt, bc, stage_opts)?;
    let flux = rk_time_avg_flux(model, &stages, dt, final_opts.exec)?;
    let fl = reconstruct_interface_fluxes(model, q, &flux, final_opts)?;
    Ok(conservative_update(q, &fl, dt, final_opts.exec))
}

fn blend(a: f64, x: &Field, b: f64, y: &Field, exec: Execution) -> Field {
    let mut out = x.zeros_like();
    let (xd, yd) = (x.data(), y.data());
    exec::for_each_chunk(exec, out.data_mut(), 4096, |k, chunk| {
        let base = k * 4096;
        for (p, v) in chunk.iter_mut().enumerate() {
            *v = a * xd[base + p] + b * yd[base + p];
        }
    });
    out
}

/// One SSP-RK3 step of the method of lines with the full characteristic
/// reconstruction in every substep. `q` must have its ghosts filled.
pub fn ssp_rk3_step<M: SystemModel + ?Sized>(
    model: &M,
    q: &State,
    dt: f64,
    bc: &BoundarySpec,
    opts: &ReconstructOptions,
) -> Result<State> {
    let exec = opts.exec;
    let sub = |s: &State| stage_update(model, s, s, dt, opts);

    let mut q1 = sub(q).map_err(|e| e.at(|| "substep 1".into()))?;
    q1.t = q.t + dt;
    q1.check_finite()?;
    fill_ghosts(&mut q1, bc, q.t + dt)?;

    let e1 = sub(&q1).map_err(|e| e.at(|| "substep 2".into()))?;
    let mut q2 = State {
        field: blend(0.75, &q.field, 0.25, &e1.field, exec),
        grid: q.grid,
        t: q.t + 0.5 * dt,
    };
    q2.check_finite()?;
    fill_ghosts(&mut q2, bc, q.t + 0.5 * dt)?;

    let e2 = sub(&q2).map_err(|e| e.at(|| "substep 3".into()))?;
    Ok(State {
        field: blend(1.0 / 3.0, &q.field, 2.0 / 3.0, &e2.field, exec),
        grid: q.grid,
        t: q.t + dt,
    })
}
