use super::{require_x, Eigensystem, Matrix, SystemModel, Vector, ZERO};
use crate::error::Result;
use crate::grid::Axis;

/// Linear advection `q_t + (u q)_x = 0` with constant speed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Advection {
    pub speed: f64,
}

impl SystemModel for Advection {
    fn components(&self) -> usize {
        1
    }

    fn dims(&self) -> usize {
        1
    }

    fn flux(&self, axis: Axis, q: &Vector) -> Result<Vector> {
        require_x(axis, "advection")?;
        Ok([self.speed * q[0], 0.0, 0.0, 0.0])
    }

    fn jacobian(&self, axis: Axis, _q: &Vector) -> Result<Matrix> {
        require_x(axis, "advection")?;
        let mut j = [ZERO; 4];
        j[0][0] = self.speed;
        Ok(j)
    }

    fn hessian_apply(&self, axis: Axis, _q: &Vector, _u: &Vector, _v: &Vector) -> Result<Vector> {
        require_x(axis, "advection")?;
        Ok(ZERO)
    }

    fn eigensystem(&self, axis: Axis, _q: &Vector) -> Result<Eigensystem> {
        require_x(axis, "advection")?;
        let mut one = [ZERO; 4];
        one[0][0] = 1.0;
        Ok(Eigensystem {
            values: [self.speed, 0.0, 0.0, 0.0],
            right: one,
            left: one,
        })
    }

    fn eigen_range(&self, axis: Axis, _q: &Vector) -> Result<(f64, f64)> {
        require_x(axis, "advection")?;
        Ok((self.speed, self.speed))
    }
}
