//! Von Neumann analysis of the linear schemes on `q_t + u q_x = 0`.
//!
//! With `ρ = e^{Jθ}`, `θ = k·dx`, every amplification factor here is a
//! polynomial in `ν` and `ρ`.

use std::io::Write;
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Taylor amplification factor, entered as fractions per power of `ρ`.
/// Rows are `ν`, `ν²`, `ν³`; each entry is `(power, numerator, denominator)`.
const G_TAYLOR_FRACTIONS: [&[(i32, i64, i64)]; 3] = [
    &[(2, 1, 20), (1, -1, 2), (0, -1, 3), (-1, 1, 1), (-2, -1, 4), (-3, 1, 30)],
    &[
        (4, 1, 480),
        (3, -3, 80),
        (2, 11, 72),
        (1, 61, 360),
        (0, -41, 80),
        (-1, -1, 180),
        (-2, 121, 360),
        (-3, -1, 8),
        (-4, 31, 1440),
        (-5, -1, 720),
    ],
    &[
        (4, -1, 1440),
        (3, 13, 720),
        (2, -55, 432),
        (1, 71, 540),
        (0, 91, 360),
        (-1, -583, 1080),
        (-2, 731, 2160),
        (-3, -1, 12),
        (-4, 47, 4320),
        (-5, -1, 2160),
    ],
];

/// The same polynomial as integer numerators over one denominator per row,
/// listed from the highest power of `ρ` down.
const G_TAYLOR_SCALED: [(i32, i64, &[i64]); 3] = [
    (2, 60, &[3, -30, -20, 60, -15, 2]),
    (4, 1440, &[3, -54, 220, 244, -738, -8, 484, -180, 31, -2]),
    (4, 4320, &[-3, 78, -550, 568, 1092, -2332, 1462, -360, 47, -2]),
];

/// Lowest power of `ρ` that appears.
const MIN_POWER: i32 = -5;
const SPAN: usize = 10;

/// Coefficients `c[row][p - MIN_POWER]` of `ν^{row+1} ρ^p`.
fn taylor_coefficients() -> &'static [[f64; SPAN]; 3] {
    static TABLE: OnceLock<[[f64; SPAN]; 3]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut literal = [[0.0; SPAN]; 3];
        for (row, terms) in G_TAYLOR_FRACTIONS.iter().enumerate() {
            for &(p, num, den) in terms.iter() {
                literal[row][(p - MIN_POWER) as usize] += num as f64 / den as f64;
            }
        }
        for (row, &(top, den, nums)) in G_TAYLOR_SCALED.iter().enumerate() {
            let mut sum = 0;
            for (k, &num) in nums.iter().enumerate() {
                let p = top - k as i32;
                let other = literal[row][(p - MIN_POWER) as usize];
                assert!(
                    (other - num as f64 / den as f64).abs() < 1e-15,
                    "amplification tables disagree at nu^{} rho^{p}",
                    row + 1
                );
                sum += num;
            }
            // constants are preserved: every row vanishes at ρ = 1
            assert_eq!(sum, 0, "nu^{} row does not sum to zero", row + 1);
        }
        literal
    })
}

/// Amplification factor of the third-order Taylor scheme with linear WENO
/// weights and upwind reconstruction.
pub fn g_taylor(nu: f64, theta: f64) -> Complex64 {
    let c = taylor_coefficients();
    let mut rows = [Complex64::new(0.0, 0.0); 3];
    for (row, acc) in rows.iter_mut().enumerate() {
        for (k, &coef) in c[row].iter().enumerate() {
            if coef != 0.0 {
                *acc += coef * Complex64::from_polar(1.0, (k as i32 + MIN_POWER) as f64 * theta);
            }
        }
    }
    1.0 + nu * (rows[0] + nu * (rows[1] + nu * rows[2]))
}

/// Coefficients of `f_{i+r}`, `r = -3..=2`, in the linear-weight upwind WENO5
/// flux difference `F̂_{i+1/2} − F̂_{i−1/2}`.
pub const UPWIND_DIFFERENCE: [f64; 6] = [-1.0 / 30.0, 0.25, -1.0, 1.0 / 3.0, 0.5, -0.05];

/// Fourier symbol of [`UPWIND_DIFFERENCE`].
pub fn upwind_symbol(theta: f64) -> Complex64 {
    UPWIND_DIFFERENCE
        .iter()
        .enumerate()
        .map(|(k, &c)| c * Complex64::from_polar(1.0, (k as f64 - 3.0) * theta))
        .sum()
}

/// RK4 stability polynomial at `z = −ν·symbol(θ)`.
pub fn rk_linear_amplification(nu: f64, theta: f64) -> Complex64 {
    let z = -nu * upwind_symbol(theta);
    1.0 + z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)))
}

/// Sample points `2πk/n`, `k = 0..n`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect()
}

/// `max_θ |g(ν, θ)|` over `theta_samples` uniform samples.
pub fn max_abs_over_theta(g: impl Fn(f64, f64) -> Complex64 + Sync, nu: f64, theta_samples: usize, exec: Execution) -> f64 {
    let thetas = theta_grid(theta_samples);
    exec::try_max(exec, theta_samples, |k| Ok(g(nu, thetas[k]).norm())).expect("infallible")
}

/// Stability predicate with a round-off allowance.
pub fn is_stable(nu: f64, theta_samples: usize) -> bool {
    max_abs_over_theta(g_taylor, nu, theta_samples, Execution::default()) <= 1.0 + 1e-12
}

/// Largest stable CFL number of the Taylor scheme, located by bisection on
/// `ν ∈ [0, 2]` to within `nu_tolerance`.
pub fn max_stable_cfl(theta_samples: usize, nu_tolerance: f64) -> Result<f64> {
    if theta_samples < 1024 {
        return Err(Error::Config(format!("need at least 1024 theta samples, got {theta_samples}")));
    }
    if !(nu_tolerance > 0.0) {
        return Err(Error::Config("nu tolerance must be positive".into()));
    }
    let (mut lo, mut hi) = (0.0, 2.0);
    if is_stable(hi, theta_samples) {
        return Err(Error::Config("no stability boundary below nu = 2".into()));
    }
    while hi - lo > nu_tolerance {
        let mid = 0.5 * (lo + hi);
        if is_stable(mid, theta_samples) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplificationSample {
    pub nu: f64,
    pub theta: f64,
    pub g: Complex64,
}

/// `g_taylor` on the tensor grid of `nus` × `theta_samples` phases.
pub fn sweep(nus: &[f64], theta_samples: usize) -> Vec<AmplificationSample> {
    let thetas = theta_grid(theta_samples);
    nus.iter()
        .flat_map(|&nu| {
            thetas.iter().map(move |&theta| AmplificationSample {
                nu,
                theta,
                g: g_taylor(nu, theta),
            })
        })
        .collect()
}

pub fn write_sweep_csv(path: &Path, samples: &[AmplificationSample]) -> Result<()> {
    let io = |e| Error::io(path, e);
    let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    writeln!(w, "nu,theta,abs_g").map_err(io)?;
    for s in samples {
        writeln!(w, "{},{},{}", s.nu, s.theta, s.g.norm()).map_err(io)?;
    }
    w.flush().map_err(io)
}
