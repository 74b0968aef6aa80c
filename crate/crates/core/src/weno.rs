//! Fifth-order WENO reconstruction of interface values from cell-average
//! data on a five-point stencil.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Five consecutive values `ū_{i-2} .. ū_{i+2}`.
pub type Stencil5 = [f64; 5];

/// Linear (optimal) weights of the three substencils.
pub const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WenoMode {
    #[default]
    Nonlinear,
    /// Fixed optimal weights; the scheme is then linear in the data.
    Linear,
}

impl fmt::Display for WenoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WenoMode::Nonlinear => "nonlinear",
            WenoMode::Linear => "linear",
        })
    }
}

impl FromStr for WenoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonlinear" => Ok(WenoMode::Nonlinear),
            "linear" => Ok(WenoMode::Linear),
            other => Err(Error::Config(format!("unknown weno mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WenoParams {
    pub p: f64,
    pub eps: f64,
    pub mode: WenoMode,
}

impl Default for WenoParams {
    fn default() -> Self {
        Self {
            p: 2.0,
            eps: 1e-12,
            mode: WenoMode::Nonlinear,
        }
    }
}

impl WenoParams {
    pub fn new(p: f64, eps: f64, mode: WenoMode) -> Result<Self> {
        if !(p >= 1.0) || !(eps > 0.0) {
            return Err(Error::Config(format!(
                "weno parameters need p >= 1 and eps > 0 (got p={p}, eps={eps})"
            )));
        }
        Ok(Self { p, eps, mode })
    }

    pub fn linear() -> Self {
        Self {
            mode: WenoMode::Linear,
            ..Self::default()
        }
    }

    /// Normalized weights for the given smoothness indicators.
    #[inline]
    pub fn weights(&self, beta: [f64; 3]) -> [f64; 3] {
        if self.mode == WenoMode::Linear {
            return LINEAR_WEIGHTS;
        }
        let mut w = [0.0; 3];
        for k in 0..3 {
            let d = beta[k] + self.eps;
            let dp = if self.p == 2.0 { d * d } else { d.powf(self.p) };
            w[k] = LINEAR_WEIGHTS[k] / dp;
        }
        let s = w[0] + w[1] + w[2];
        [w[0] / s, w[1] / s, w[2] / s]
    }
}

#[inline]
pub fn smoothness_indicators(s: &Stencil5) -> [f64; 3] {
    let [a, b, c, d, e] = *s;
    const K: f64 = 13.0 / 12.0;
    let t0 = a - 2.0 * b + c;
    let t1 = b - 2.0 * c + d;
    let t2 = c - 2.0 * d + e;
    let s0 = a - 4.0 * b + 3.0 * c;
    let s1 = b - d;
    let s2 = 3.0 * c - 4.0 * d + e;
    [
        K * t0 * t0 + 0.25 * s0 * s0,
        K * t1 * t1 + 0.25 * s1 * s1,
        K * t2 * t2 + 0.25 * s2 * s2,
    ]
}

/// Third-order substencil values at `x_{i+1/2}`.
#[inline]
pub fn substencil_values(s: &Stencil5) -> [f64; 3] {
    let [a, b, c, d, e] = *s;
    [
        a / 3.0 - 7.0 / 6.0 * b + 11.0 / 6.0 * c,
        -b / 6.0 + 5.0 / 6.0 * c + d / 3.0,
        c / 3.0 + 5.0 / 6.0 * d - e / 6.0,
    ]
}

/// Value at `x_{i+1/2}` from `ū_{i-2} .. ū_{i+2}` (left-biased).
#[inline]
pub fn weno5_plus(s: &Stencil5, params: &WenoParams) -> f64 {
    let u = substencil_values(s);
    let w = match params.mode {
        WenoMode::Linear => LINEAR_WEIGHTS,
        WenoMode::Nonlinear => params.weights(smoothness_indicators(s)),
    };
    w[0] * u[0] + w[1] * u[1] + w[2] * u[2]
}

/// Value at `x_{i+1/2}` from `ū_{i-1} .. ū_{i+3}` (right-biased).
#[inline]
pub fn weno5_minus(s: &Stencil5, params: &WenoParams) -> f64 {
    weno5_plus(&[s[4], s[3], s[2], s[1], s[0]], params)
}
