//! Third-order Taylor (Lax-Wendroff) time-averaged fluxes.
//!
//! Time derivatives of the flux are traded for spatial ones through the
//! conservation law, with spatial derivatives taken by compact central
//! differences of point values of `q`, `f` and `g`.

use crate::error::Result;
use crate::exec::{self, Execution};
use crate::grid::{load, Axis, Grid, State};
use crate::pif::{point_flux, TimeAveragedFlux};
use crate::systems::{mat_vec, SystemModel, Vector, ZERO};

/// Width of the band outside the interior on which the flux is built; the
/// interface reconstruction reads three points past each boundary.
pub const BAND: isize = 3;

const BLOCK: usize = 64;

/// Fourth-order first derivative at the centre of five equispaced values.
#[inline]
pub fn central_dx(u: &[f64; 5], dx: f64) -> f64 {
    (u[0] - 8.0 * u[1] + 8.0 * u[3] - u[4]) / (12.0 * dx)
}

/// Fourth-order second derivative at the centre of five equispaced values.
#[inline]
pub fn central_dxx(u: &[f64; 5], dx: f64) -> f64 {
    (-u[0] + 16.0 * u[1] - 30.0 * u[2] + 16.0 * u[3] - u[4]) / (12.0 * dx * dx)
}

/// Second-order mixed derivative; `u[a][b]` is the value at `(i+a-1, j+b-1)`.
#[inline]
pub fn central_dxy(u: &[[f64; 3]; 3], dx: f64, dy: f64) -> f64 {
    (u[2][2] - u[0][2] - u[2][0] + u[0][0]) / (4.0 * dx * dy)
}

#[inline]
fn five(data: &[f64], o: usize, stride: usize, k: usize) -> [f64; 5] {
    [
        data[o - 2 * stride + k],
        data[o - stride + k],
        data[o + k],
        data[o + stride + k],
        data[o + 2 * stride + k],
    ]
}

#[inline]
fn d1(data: &[f64], o: usize, stride: usize, m: usize, h: f64) -> Vector {
    let mut out = ZERO;
    for k in 0..m {
        out[k] = central_dx(&five(data, o, stride, k), h);
    }
    out
}

#[inline]
fn d2(data: &[f64], o: usize, stride: usize, m: usize, h: f64) -> Vector {
    let mut out = ZERO;
    for k in 0..m {
        out[k] = central_dxx(&five(data, o, stride, k), h);
    }
    out
}

#[inline]
fn dxy(data: &[f64], o: usize, sx: usize, sy: usize, m: usize, dx: f64, dy: f64) -> Vector {
    let mut out = ZERO;
    for k in 0..m {
        let u = [
            [data[o - sx - sy + k], 0.0, data[o - sx + sy + k]],
            [0.0; 3],
            [data[o + sx - sy + k], 0.0, data[o + sx + sy + k]],
        ];
        out[k] = central_dxy(&u, dx, dy);
    }
    out
}

#[inline]
fn axpy(y: &mut Vector, a: f64, x: &Vector, m: usize) {
    for k in 0..m {
        y[k] += a * x[k];
    }
}

#[inline]
fn add(a: &Vector, b: &Vector, m: usize) -> Vector {
    let mut out = *a;
    axpy(&mut out, 1.0, b, m);
    out
}

fn in_band(i: isize, j: isize, nx: usize, ny: usize, two_d: bool) -> bool {
    let inside = |v: isize, n: usize| v >= -BAND && v < n as isize + BAND;
    inside(i, nx) && (!two_d || inside(j, ny))
}

/// `F = f + dt/2 f_t + dt²/6 f_tt` on the interior and a band of width
/// [`BAND`] along x. Ghosts of `q` must be filled to width 5.
pub fn taylor_flux_1d<M: SystemModel + ?Sized>(model: &M, q: &State, dt: f64, exec: Execution) -> Result<TimeAveragedFlux> {
    let field = &q.field;
    let m = field.components();
    let dx = q.grid.x_axis().dx;
    let f = point_flux(model, field, Axis::X, exec)?;
    let (qd, fd) = (field.data(), f.data());
    let s = field.stride(Axis::X);
    let nx = field.nx();
    let mut out = field.zeros_like();
    exec::try_for_each_chunk(exec, out.data_mut(), BLOCK * m, |b, chunk| {
        for (p, dst) in chunk.chunks_exact_mut(m).enumerate() {
            let pt = b * BLOCK + p;
            let (i, j) = field.point_index(pt);
            if !in_band(i, j, nx, 1, false) {
                continue;
            }
            let o = pt * m;
            let qv = load(qd, o, m);
            let fv = load(fd, o, m);
            let q_x = d1(qd, o, s, m, dx);
            let f_x = d1(fd, o, s, m, dx);
            let f_xx = d2(fd, o, s, m, dx);
            let taylor = || -> Result<Vector> {
                let jac = model.jacobian(Axis::X, &qv)?;
                let ft = mat_vec(&jac, &f_x, m);
                let mut inner = model.hessian_apply(Axis::X, &qv, &q_x, &f_x)?;
                axpy(&mut inner, 1.0, &mat_vec(&jac, &f_xx, m), m);
                let mut ftt = model.hessian_apply(Axis::X, &qv, &f_x, &f_x)?;
                axpy(&mut ftt, 1.0, &mat_vec(&jac, &inner, m), m);
                let mut out = fv;
                axpy(&mut out, -0.5 * dt, &ft, m);
                axpy(&mut out, dt * dt / 6.0, &ftt, m);
                Ok(out)
            };
            let v = taylor().map_err(|e| e.at(|| format!("point ({i}, {j})")))?;
            dst.copy_from_slice(&v[..m]);
        }
        Ok(())
    })?;
    Ok(TimeAveragedFlux {
        f: out,
        g: None,
        dt,
    })
}

/// Two-dimensional analogue: with `S = f_x + g_y` and
/// `E = f''(q_x, S) + f'(f_xx + g_xy) + g''(q_y, S) + g'(f_xy + g_yy)`,
/// `f_t = −f' S`, `f_tt = f''(S, S) + f' E` and likewise for `g`.
pub fn taylor_flux_2d<M: SystemModel + ?Sized>(model: &M, q: &State, dt: f64, exec: Execution) -> Result<TimeAveragedFlux> {
    let Grid::Two(g2) = q.grid else {
        return taylor_flux_1d(model, q, dt, exec);
    };
    let field = &q.field;
    let m = field.components();
    let (dx, dy) = (g2.x.dx, g2.y.dx);
    let f = point_flux(model, field, Axis::X, exec)?;
    let g = point_flux(model, field, Axis::Y, exec)?;
    let (qd, fd, gd) = (field.data(), f.data(), g.data());
    let (sx, sy) = (field.stride(Axis::X), field.stride(Axis::Y));
    let (nx, ny) = (field.nx(), field.ny());

    // F and G interleaved per point, split afterwards
    let mut both = vec![0.0; field.points() * 2 * m];
    exec::try_for_each_chunk(exec, &mut both, BLOCK * 2 * m, |b, chunk| {
        for (p, dst) in chunk.chunks_exact_mut(2 * m).enumerate() {
            let pt = b * BLOCK + p;
            let (i, j) = field.point_index(pt);
            if !in_band(i, j, nx, ny, true) {
                continue;
            }
            let o = pt * m;
            let qv = load(qd, o, m);
            let q_x = d1(qd, o, sx, m, dx);
            let q_y = d1(qd, o, sy, m, dy);
            let f_x = d1(fd, o, sx, m, dx);
            let f_xx = d2(fd, o, sx, m, dx);
            let g_y = d1(gd, o, sy, m, dy);
            let g_yy = d2(gd, o, sy, m, dy);
            let f_xy = dxy(fd, o, sx, sy, m, dx, dy);
            let g_xy = dxy(gd, o, sx, sy, m, dx, dy);
            let s = add(&f_x, &g_y, m);
            let taylor = || -> Result<(Vector, Vector)> {
                let jf = model.jacobian(Axis::X, &qv)?;
                let jg = model.jacobian(Axis::Y, &qv)?;
                let mut e = model.hessian_apply(Axis::X, &qv, &q_x, &s)?;
                axpy(&mut e, 1.0, &mat_vec(&jf, &add(&f_xx, &g_xy, m), m), m);
                axpy(&mut e, 1.0, &model.hessian_apply(Axis::Y, &qv, &q_y, &s)?, m);
                axpy(&mut e, 1.0, &mat_vec(&jg, &add(&f_xy, &g_yy, m), m), m);

                let mut fo = load(fd, o, m);
                axpy(&mut fo, -0.5 * dt, &mat_vec(&jf, &s, m), m);
                let mut ftt = model.hessian_apply(Axis::X, &qv, &s, &s)?;
                axpy(&mut ftt, 1.0, &mat_vec(&jf, &e, m), m);
                axpy(&mut fo, dt * dt / 6.0, &ftt, m);

                let mut go = load(gd, o, m);
                axpy(&mut go, -0.5 * dt, &mat_vec(&jg, &s, m), m);
                let mut gtt = model.hessian_apply(Axis::Y, &qv, &s, &s)?;
                axpy(&mut gtt, 1.0, &mat_vec(&jg, &e, m), m);
                axpy(&mut go, dt * dt / 6.0, &gtt, m);
                Ok((fo, go))
            };
            let (fo, go) = taylor().map_err(|e| e.at(|| format!("point ({i}, {j})")))?;
            dst[..m].copy_from_slice(&fo[..m]);
            dst[m..].copy_from_slice(&go[..m]);
        }
        Ok(())
    })?;

    let mut fout = field.zeros_like();
    let mut gout = field.zeros_like();
    for (pt, src) in both.chunks_exact(2 * m).enumerate() {
        fout.data_mut()[pt * m..(pt + 1) * m].copy_from_slice(&src[..m]);
        gout.data_mut()[pt * m..(pt + 1) * m].copy_from_slice(&src[m..]);
    }
    Ok(TimeAveragedFlux {
        f: fout,
        g: Some(gout),
        dt,
    })
}

/// Dispatch on the grid dimension.
pub fn taylor_flux<M: SystemModel + ?Sized>(model: &M, q: &State, dt: f64, exec: Execution) -> Result<TimeAveragedFlux> {
    match q.grid {
        Grid::One(_) => taylor_flux_1d(model, q, dt, exec),
        Grid::Two(_) => taylor_flux_2d(model, q, dt, exec),
    }
}

/// Largest deviation of `flux` from the point flux over the band.
#[cfg(test)]
fn max_correction<M: SystemModel + ?Sized>(model: &M, q: &State, flux: &crate::grid::Field, axis: Axis) -> Result<f64> {
    let f = point_flux(model, &q.field, axis, Execution::Sequential)?;
    let (nx, ny) = (q.field.nx(), q.field.ny());
    let two_d = matches!(q.grid, Grid::Two(_));
    let mut worst = 0.0_f64;
    for pt in 0..q.field.points() {
        let (i, j) = q.field.point_index(pt);
        if in_band(i, j, nx, ny, two_d) {
            let (a, b) = (flux.at(i, j), f.at(i, j));
            for k in 0..a.len() {
                worst = worst.max((a[k] - b[k]).abs());
            }
        }
    }
    Ok(worst)
}
