use super::{require_x, Eigensystem, Matrix, SystemModel, Vector, ZERO};
use crate::error::Result;
use crate::grid::Axis;

/// Inviscid Burgers equation, flux `q²/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Burgers;

impl SystemModel for Burgers {
    fn components(&self) -> usize {
        1
    }

    fn dims(&self) -> usize {
        1
    }

    fn flux(&self, axis: Axis, q: &Vector) -> Result<Vector> {
        require_x(axis, "burgers")?;
        Ok([0.5 * q[0] * q[0], 0.0, 0.0, 0.0])
    }

    fn jacobian(&self, axis: Axis, q: &Vector) -> Result<Matrix> {
        require_x(axis, "burgers")?;
        let mut j = [ZERO; 4];
        j[0][0] = q[0];
        Ok(j)
    }

    fn hessian_apply(&self, axis: Axis, _q: &Vector, u: &Vector, v: &Vector) -> Result<Vector> {
        require_x(axis, "burgers")?;
        Ok([u[0] * v[0], 0.0, 0.0, 0.0])
    }

    fn eigensystem(&self, axis: Axis, q: &Vector) -> Result<Eigensystem> {
        require_x(axis, "burgers")?;
        let mut one = [ZERO; 4];
        one[0][0] = 1.0;
        Ok(Eigensystem {
            values: [q[0], 0.0, 0.0, 0.0],
            right: one,
            left: one,
        })
    }

    fn eigen_range(&self, axis: Axis, q: &Vector) -> Result<(f64, f64)> {
        require_x(axis, "burgers")?;
        Ok((q[0], q[0]))
    }
}
