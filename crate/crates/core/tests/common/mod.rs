//! Textbook reference implementations used as independent oracles. Nothing
//! here calls into the solver's reconstruction code.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const EPS: f64 = 1e-12;

/// Jiang-Shu WENO5 value at `x_{i+1/2}` from `v = [v_{i-2}, ..., v_{i+2}]`.
pub fn weno_js(v: [f64; 5], linear: bool) -> f64 {
    let [a, b, c, d, e] = v;
    let p0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
    let p1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
    let p2 = (2.0 * c + 5.0 * d - e) / 6.0;
    if linear {
        return 0.1 * p0 + 0.6 * p1 + 0.3 * p2;
    }
    let b0 = 13.0 / 12.0 * (a - 2.0 * b + c).powi(2) + 0.25 * (a - 4.0 * b + 3.0 * c).powi(2);
    let b1 = 13.0 / 12.0 * (b - 2.0 * c + d).powi(2) + 0.25 * (b - d).powi(2);
    let b2 = 13.0 / 12.0 * (c - 2.0 * d + e).powi(2) + 0.25 * (3.0 * c - 4.0 * d + e).powi(2);
    let a0 = 0.1 / (EPS + b0).powi(2);
    let a1 = 0.6 / (EPS + b1).powi(2);
    let a2 = 0.3 / (EPS + b2).powi(2);
    (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2)
}

fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

/// One forward-Euler step of classical finite-difference WENO with local
/// Lax-Friedrichs splitting in characteristic variables, on a periodic grid.
///
/// `flux`, `eig` and `speeds` describe the system: `eig(q*)` returns
/// `(R, L)` as row-major `m×m` matrices and `speeds(q)` the smallest and
/// largest eigenvalue.
pub fn classical_fe_step(
    q: &[Vec<f64>],
    dt: f64,
    dx: f64,
    flux: &dyn Fn(&[f64]) -> Vec<f64>,
    eig: &dyn Fn(&[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>),
    speeds: &dyn Fn(&[f64]) -> (f64, f64),
) -> Vec<Vec<f64>> {
    let n = q.len();
    let m = q[0].len();
    let f: Vec<Vec<f64>> = q.iter().map(|v| flux(v)).collect();
    // fhat[i] is the flux at x_{i-1/2}
    let mut fhat = vec![vec![0.0; m]; n];
    for i in 0..n as isize {
        let ql = &q[wrap(i - 1, n)];
        let qr = &q[wrap(i, n)];
        let qs: Vec<f64> = ql.iter().zip(qr).map(|(a, b)| 0.5 * (a + b)).collect();
        let (lo_l, _) = speeds(ql);
        let (lo_s, hi_s) = speeds(&qs);
        let (_, hi_r) = speeds(qr);
        let alpha = 1.1 * lo_l.min(lo_s).abs().max(hi_s.max(hi_r).abs());
        let (r, l) = eig(&qs);
        let apply = |mat: &Vec<Vec<f64>>, v: &[f64]| -> Vec<f64> {
            (0..m).map(|a| (0..m).map(|b| mat[a][b] * v[b]).sum()).collect()
        };
        let mut w = Vec::new();
        let mut z = Vec::new();
        for s in -3..=2 {
            let k = wrap(i + s, n);
            w.push(apply(&l, &q[k]));
            z.push(apply(&l, &f[k]));
        }
        let mut h = vec![0.0; m];
        for c in 0..m {
            let plus: [f64; 5] = std::array::from_fn(|s| 0.5 * (z[s][c] + alpha * w[s][c]));
            let minus: [f64; 5] = std::array::from_fn(|s| 0.5 * (z[5 - s][c] - alpha * w[5 - s][c]));
            h[c] = weno_js(plus, false) + weno_js(minus, false);
        }
        fhat[i as usize] = apply(&r, &h);
    }
    (0..n)
        .map(|i| (0..m).map(|c| q[i][c] - dt / dx * (fhat[wrap(i as isize + 1, n)][c] - fhat[i][c])).collect())
        .collect()
}

pub fn burgers_flux(q: &[f64]) -> Vec<f64> {
    vec![0.5 * q[0] * q[0]]
}

pub fn burgers_eig(_: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    (vec![vec![1.0]], vec![vec![1.0]])
}

pub fn burgers_speeds(q: &[f64]) -> (f64, f64) {
    (q[0], q[0])
}

pub const GAMMA: f64 = 1.4;

fn euler_prim(q: &[f64]) -> (f64, f64, f64) {
    let rho = q[0];
    let u = q[1] / rho;
    (rho, u, (GAMMA - 1.0) * (q[2] - 0.5 * rho * u * u))
}

pub fn euler_flux(q: &[f64]) -> Vec<f64> {
    let (rho, u, p) = euler_prim(q);
    vec![rho * u, rho * u * u + p, (q[2] + p) * u]
}

pub fn euler_speeds(q: &[f64]) -> (f64, f64) {
    let (rho, u, p) = euler_prim(q);
    let c = (GAMMA * p / rho).sqrt();
    (u - c, u + c)
}

fn inverse3(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    let mut inv = vec![vec![0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
        }
    }
    inv
}

/// Right eigenvectors `(1, u∓c, H∓uc)` and `(1, u, u²/2)` as columns, with
/// the left matrix obtained by direct inversion.
pub fn euler_eig(q: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let (rho, u, p) = euler_prim(q);
    let c = (GAMMA * p / rho).sqrt();
    let h = (q[2] + p) / rho;
    let r = vec![
        vec![1.0, 1.0, 1.0],
        vec![u - c, u, u + c],
        vec![h - u * c, 0.5 * u * u, h + u * c],
    ];
    let l = inverse3(&r);
    (r, l)
}

pub fn euler_conserved(rho: f64, u: f64, p: f64) -> Vec<f64> {
    vec![rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u]
}

/// Random periodic trigonometric profile on `n` points with mean `base`
/// and total amplitude below `amp`.
pub fn smooth_profile(rng: &mut StdRng, n: usize, base: f64, amp: f64) -> Vec<f64> {
    let modes: Vec<(f64, f64, f64)> = (1..=3)
        .map(|k| (k as f64, rng.gen_range(-1.0..1.0) * amp / 3.0, rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    (0..n)
        .map(|i| {
            let x = std::f64::consts::TAU * i as f64 / n as f64;
            base + modes.iter().map(|(k, a, ph)| a * (k * x + ph).sin()).sum::<f64>()
        })
        .collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Linear upwind fifth-order flux at `x_{i-1/2}` for a positive speed.
pub fn upwind5(f: &[f64], i: isize) -> f64 {
    let n = f.len();
    let g = |s: isize| f[wrap(i + s, n)];
    (2.0 * g(-3) - 13.0 * g(-2) + 47.0 * g(-1) + 27.0 * g(0) - 3.0 * g(1)) / 60.0
}

/// One classical RK4 step of `q_t = −u D q` with [`upwind5`] fluxes.
pub fn mol_rk4_advection(q: &[f64], u: f64, dt: f64, dx: f64) -> Vec<f64> {
    let n = q.len();
    let rhs = |v: &[f64]| -> Vec<f64> {
        let f: Vec<f64> = v.iter().map(|x| u * x).collect();
        (0..n as isize).map(|i| -(upwind5(&f, i + 1) - upwind5(&f, i)) / dx).collect()
    };
    let axpy = |a: &[f64], s: f64, b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + s * y).collect() };
    let k1 = rhs(q);
    let k2 = rhs(&axpy(q, 0.5 * dt, &k1));
    let k3 = rhs(&axpy(q, 0.5 * dt, &k2));
    let k4 = rhs(&axpy(q, dt, &k3));
    (0..n)
        .map(|i| q[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}
