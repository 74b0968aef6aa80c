//! Conservation-law models behind a uniform interface.
//!
//! Every model exposes, per flux direction, the flux, its Jacobian, Hessian
//! products and the eigen-decomposition of the Jacobian. Conserved vectors are
//! stored in fixed-capacity arrays; only the first `components()` entries are
//! meaningful.

mod advection;
mod burgers;
mod euler;

pub use advection::Advection;
pub use burgers::Burgers;
pub use euler::{Euler1D, Euler2D, EulerParams};

use crate::error::Result;
use crate::grid::Axis;

/// Largest component count of any supported system.
pub const MAX_COMPONENTS: usize = 4;

pub type Vector = [f64; MAX_COMPONENTS];
pub type Matrix = [[f64; MAX_COMPONENTS]; MAX_COMPONENTS];

pub const ZERO: Vector = [0.0; MAX_COMPONENTS];

/// Eigen-decomposition `f'(q) = R diag(values) R^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigensystem {
    pub values: Vector,
    /// Right eigenvectors as columns.
    pub right: Matrix,
    /// Inverse of `right`; rows are left eigenvectors.
    pub left: Matrix,
}

pub trait SystemModel: Send + Sync {
    /// Number of conserved components.
    fn components(&self) -> usize;

    /// Spatial dimensions the model defines fluxes for.
    fn dims(&self) -> usize;

    fn flux(&self, axis: Axis, q: &Vector) -> Result<Vector>;

    fn jacobian(&self, axis: Axis, q: &Vector) -> Result<Matrix>;

    /// `[f''(q)·(u, v)]_i = Σ_jk ∂²f_i/∂q_j∂q_k u_j v_k`.
    fn hessian_apply(&self, axis: Axis, q: &Vector, u: &Vector, v: &Vector) -> Result<Vector>;

    fn eigensystem(&self, axis: Axis, q: &Vector) -> Result<Eigensystem>;

    /// Smallest and largest eigenvalue of the Jacobian.
    fn eigen_range(&self, axis: Axis, q: &Vector) -> Result<(f64, f64)> {
        let e = self.eigensystem(axis, q)?;
        let vals = &e.values[..self.components()];
        Ok((
            vals.iter().copied().fold(f64::INFINITY, f64::min),
            vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ))
    }
}

/// `y = A x` on the leading `m × m` block.
#[inline]
pub fn mat_vec(a: &Matrix, x: &Vector, m: usize) -> Vector {
    let mut y = ZERO;
    for r in 0..m {
        let mut s = 0.0;
        for c in 0..m {
            s += a[r][c] * x[c];
        }
        y[r] = s;
    }
    y
}

pub fn mat_mul(a: &Matrix, b: &Matrix, m: usize) -> Matrix {
    let mut out = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
    for r in 0..m {
        for c in 0..m {
            out[r][c] = (0..m).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

pub fn identity(m: usize) -> Matrix {
    let mut id = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
    for (k, row) in id.iter_mut().enumerate().take(m) {
        row[k] = 1.0;
    }
    id
}

/// Closed set of the models the experiment catalog can drive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    Burgers(Burgers),
    Advection(Advection),
    Euler1D(Euler1D),
    Euler2D(Euler2D),
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            Model::Burgers($m) => $e,
            Model::Advection($m) => $e,
            Model::Euler1D($m) => $e,
            Model::Euler2D($m) => $e,
        }
    };
}

impl SystemModel for Model {
    fn components(&self) -> usize {
        dispatch!(self, m => m.components())
    }
    fn dims(&self) -> usize {
        dispatch!(self, m => m.dims())
    }
    fn flux(&self, axis: Axis, q: &Vector) -> Result<Vector> {
        dispatch!(self, m => m.flux(axis, q))
    }
    fn jacobian(&self, axis: Axis, q: &Vector) -> Result<Matrix> {
        dispatch!(self, m => m.jacobian(axis, q))
    }
    fn hessian_apply(&self, axis: Axis, q: &Vector, u: &Vector, v: &Vector) -> Result<Vector> {
        dispatch!(self, m => m.hessian_apply(axis, q, u, v))
    }
    fn eigensystem(&self, axis: Axis, q: &Vector) -> Result<Eigensystem> {
        dispatch!(self, m => m.eigensystem(axis, q))
    }
    fn eigen_range(&self, axis: Axis, q: &Vector) -> Result<(f64, f64)> {
        dispatch!(self, m => m.eigen_range(axis, q))
    }
}

pub fn burgers_model() -> Burgers {
    Burgers
}

pub fn advection_model(speed: f64) -> Advection {
    Advection { speed }
}

pub fn euler1d_model(gamma: f64) -> Result<Euler1D> {
    Euler1D::new(EulerParams::new(gamma)?)
}

pub fn euler2d_model(gamma: f64) -> Result<Euler2D> {
    Euler2D::new(EulerParams::new(gamma)?)
}

/// Scalar models are only defined along x.
pub(crate) fn require_x(axis: Axis, name: &str) -> Result<()> {
    match axis {
        Axis::X => Ok(()),
        Axis::Y => Err(crate::error::Error::Config(format!(
            "{name} is a 1D model without a y-flux"
        ))),
    }
}

#[cfg(test)]
pub(crate) mod testing {
    //! Finite-difference consistency checks shared by the model tests.

    use super::*;

    pub fn fd_jacobian_error(model: &impl SystemModel, axis: Axis, q: &Vector, eps: f64) -> f64 {
        let m = model.components();
        let jac = model.jacobian(axis, q).unwrap();
        let mut worst = 0.0_f64;
        for c in 0..m {
            let (mut qp, mut qm) = (*q, *q);
            qp[c] += eps;
            qm[c] -= eps;
            let fp = model.flux(axis, &qp).unwrap();
            let fm = model.flux(axis, &qm).unwrap();
            for r in 0..m {
                let fd = (fp[r] - fm[r]) / (2.0 * eps);
                worst = worst.max((fd - jac[r][c]).abs());
            }
        }
        worst
    }

    /// Hessian products against central differences of the Jacobian.
    pub fn fd_hessian_error(
        model: &impl SystemModel,
        axis: Axis,
        q: &Vector,
        u: &Vector,
        v: &Vector,
        eps: f64,
    ) -> f64 {
        let m = model.components();
        let mut qp = *q;
        let mut qm = *q;
        for k in 0..m {
            qp[k] += eps * v[k];
            qm[k] -= eps * v[k];
        }
        let jp = model.jacobian(axis, &qp).unwrap();
        let jm = model.jacobian(axis, &qm).unwrap();
        let h = model.hessian_apply(axis, q, u, v).unwrap();
        let mut worst = 0.0_f64;
        for r in 0..m {
            let fd: f64 = (0..m).map(|c| (jp[r][c] - jm[r][c]) * u[c]).sum::<f64>() / (2.0 * eps);
            worst = worst.max((fd - h[r]).abs());
        }
        worst
    }

    pub fn eigen_errors(model: &impl SystemModel, axis: Axis, q: &Vector) -> (f64, f64) {
        let m = model.components();
        let e = model.eigensystem(axis, q).unwrap();
        let prod = mat_mul(&e.right, &e.left, m);
        let id = identity(m);
        let mut inv_err = 0.0_f64;
        for r in 0..m {
            for c in 0..m {
                inv_err = inv_err.max((prod[r][c] - id[r][c]).abs());
            }
        }
        let mut lam = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
        for k in 0..m {
            lam[k][k] = e.values[k];
        }
        let rebuilt = mat_mul(&mat_mul(&e.right, &lam, m), &e.left, m);
        let jac = model.jacobian(axis, q).unwrap();
        let mut jac_err = 0.0_f64;
        for r in 0..m {
            for c in 0..m {
                jac_err = jac_err.max((rebuilt[r][c] - jac[r][c]).abs());
            }
        }
        (inv_err, jac_err)
    }
}
