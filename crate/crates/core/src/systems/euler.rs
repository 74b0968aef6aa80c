//! Compressible Euler equations for an ideal gas.
//!
//! Conserved variables are (ρ, ρu, E) in 1D and (ρ, ρu, ρv, E) in 2D. The
//! y-direction quantities of the 2D system are obtained from the x-direction
//! ones by swapping the two momentum components.

use super::{Eigensystem, Matrix, SystemModel, Vector, ZERO};
use crate::error::{Error, Result};
use crate::grid::Axis;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerParams {
    pub gamma: f64,
}

impl EulerParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::Config(format!("ratio of specific heats must exceed 1, got {gamma}")));
        }
        Ok(Self { gamma })
    }
}

impl Default for EulerParams {
    fn default() -> Self {
        Self { gamma: 1.4 }
    }
}

#[inline]
fn admissible(rho: f64, p: f64) -> Result<()> {
    if rho > 0.0 && p > 0.0 {
        Ok(())
    } else {
        Err(Error::Positivity {
            rho,
            pressure: p,
            location: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler1D {
    pub params: EulerParams,
}

impl Euler1D {
    pub fn new(params: EulerParams) -> Result<Self> {
        Ok(Self { params })
    }

    pub fn gamma(&self) -> f64 {
        self.params.gamma
    }

    pub fn pressure(&self, q: &Vector) -> f64 {
        (self.gamma() - 1.0) * (q[2] - 0.5 * q[1] * q[1] / q[0])
    }

    /// (ρ, u, p) → (ρ, ρu, E).
    pub fn conserved(&self, rho: f64, u: f64, p: f64) -> Vector {
        [rho, rho * u, p / (self.gamma() - 1.0) + 0.5 * rho * u * u, 0.0]
    }

    /// (ρ, ρu, E) → (ρ, u, p).
    pub fn primitive(&self, q: &Vector) -> [f64; 3] {
        [q[0], q[1] / q[0], self.pressure(q)]
    }

    fn checked(&self, q: &Vector) -> Result<(f64, f64, f64)> {
        let (rho, p) = (q[0], self.pressure(q));
        admissible(rho, p)?;
        Ok((rho, q[1] / rho, p))
    }
}

impl SystemModel for Euler1D {
    fn components(&self) -> usize {
        3
    }

    fn dims(&self) -> usize {
        1
    }

    fn flux(&self, axis: Axis, q: &Vector) -> Result<Vector> {
        super::require_x(axis, "euler-1d")?;
        let (_, u, p) = self.checked(q)?;
        Ok([q[1], q[1] * u + p, (q[2] + p) * u, 0.0])
    }

    fn jacobian(&self, axis: Axis, q: &Vector) -> Result<Matrix> {
        super::require_x(axis, "euler-1d")?;
        let (rho, u, _) = self.checked(q)?;
        let g = self.gamma();
        let e = q[2];
        let mut j = [ZERO; 4];
        j[0][1] = 1.0;
        j[1][0] = -0.5 * (3.0 - g) * u * u;
        j[1][1] = (3.0 - g) * u;
        j[1][2] = g - 1.0;
        j[2][0] = -g * e * u / rho + (g - 1.0) * u * u * u;
        j[2][1] = g * e / rho - 1.5 * (g - 1.0) * u * u;
        j[2][2] = g * u;
        Ok(j)
    }

    fn hessian_apply(&self, axis: Axis, q: &Vector, a: &Vector, b: &Vector) -> Result<Vector> {
        super::require_x(axis, "euler-1d")?;
        let (rho, u, _) = self.checked(q)?;
        let g = self.gamma();
        let e = q[2];
        let c2 = 0.5 * (3.0 - g);
        let c3 = 0.5 * (g - 1.0);
        let r2 = rho * rho;
        // symmetric pair products
        let rr = a[0] * b[0];
        let rm = a[0] * b[1] + a[1] * b[0];
        let re = a[0] * b[2] + a[2] * b[0];
        let mm = a[1] * b[1];
        let me = a[1] * b[2] + a[2] * b[1];

        let f2 = 2.0 * c2 * u * u / rho * rr - 2.0 * c2 * u / rho * rm + 2.0 * c2 / rho * mm;
        let f3 = (2.0 * g * e * u / r2 - 6.0 * c3 * u * u * u / rho) * rr
            + (-g * e / r2 + 6.0 * c3 * u * u / rho) * rm
            - g * u / rho * re
            - 6.0 * c3 * u / rho * mm
            + g / rho * me;
        Ok([0.0, f2, f3, 0.0])
    }

    fn eigensystem(&self, axis: Axis, q: &Vector) -> Result<Eigensystem> {
        super::require_x(axis, "euler-1d")?;
        let (rho, u, p) = self.checked(q)?;
        let g = self.gamma();
        let c = (g * p / rho).sqrt();
        let h = (q[2] + p) / rho;
        let b1 = (g - 1.0) / (c * c);
        let b2 = 0.5 * b1 * u * u;

        let mut right = [ZERO; 4];
        right[0][..3].copy_from_slice(&[1.0, 1.0, 1.0]);
        right[1][..3].copy_from_slice(&[u - c, u, u + c]);
        right[2][..3].copy_from_slice(&[h - u * c, 0.5 * u * u, h + u * c]);

        let mut left = [ZERO; 4];
        left[0][..3].copy_from_slice(&[
            0.5 * (b2 + u / c),
            -0.5 * (b1 * u + 1.0 / c),
            0.5 * b1,
        ]);
        left[1][..3].copy_from_slice(&[1.0 - b2, b1 * u, -b1]);
        left[2][..3].copy_from_slice(&[
            0.5 * (b2 - u / c),
            -0.5 * (b1 * u - 1.0 / c),
            0.5 * b1,
        ]);
        Ok(Eigensystem {
            values: [u - c, u, u + c, 0.0],
            right,
            left,
        })
    }

    fn eigen_range(&self, axis: Axis, q: &Vector) -> Result<(f64, f64)> {
        super::require_x(axis, "euler-1d")?;
        let (rho, u, p) = self.checked(q)?;
        let c = (self.gamma() * p / rho).sqrt();
        Ok((u - c, u + c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler2D {
    pub params: EulerParams,
}

/// Swap the two momentum components.
#[inline]
fn swap(q: &Vector) -> Vector {
    [q[0], q[2], q[1], q[3]]
}

#[inline]
fn swap_rows_cols(a: &Matrix) -> Matrix {
    const P: [usize; 4] = [0, 2, 1, 3];
    let mut out = [ZERO; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = a[P[r]][P[c]];
        }
    }
    out
}

impl Euler2D {
    pub fn new(params: EulerParams) -> Result<Self> {
        Ok(Self { params })
    }

    pub fn gamma(&self) -> f64 {
        self.params.gamma
    }

    pub fn pressure(&self, q: &Vector) -> f64 {
        (self.gamma() - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0])
    }

    /// (ρ, u, v, p) → (ρ, ρu, ρv, E).
    pub fn conserved(&self, rho: f64, u: f64, v: f64, p: f64) -> Vector {
        [
            rho,
            rho * u,
            rho * v,
            p / (self.gamma() - 1.0) + 0.5 * rho * (u * u + v * v),
        ]
    }

    /// (ρ, ρu, ρv, E) → (ρ, u, v, p).
    pub fn primitive(&self, q: &Vector) -> Vector {
        [q[0], q[1] / q[0], q[2] / q[0], self.pressure(q)]
    }

    fn checked(&self, q: &Vector) -> Result<(f64, f64, f64, f64)> {
        let (rho, p) = (q[0], self.pressure(q));
        admissible(rho, p)?;
        Ok((rho, q[1] / rho, q[2] / rho, p))
    }

    fn jacobian_x(&self, q: &Vector) -> Result<Matrix> {
        let (rho, u, v, _) = self.checked(q)?;
        let g = self.gamma();
        let e = q[3];
        let a = 0.5 * (3.0 - g);
        let b = 0.5 * (g - 1.0);
        let k = u * u + v * v;
        let mut j = [ZERO; 4];
        j[0][1] = 1.0;
        j[1] = [-a * u * u + b * v * v, (3.0 - g) * u, -(g - 1.0) * v, g - 1.0];
        j[2] = [-u * v, v, u, 0.0];
        j[3] = [
            -g * e * u / rho + (g - 1.0) * u * k,
            g * e / rho - b * (3.0 * u * u + v * v),
            -(g - 1.0) * u * v,
            g * u,
        ];
        Ok(j)
    }

    fn hessian_x(&self, q: &Vector, x: &Vector, y: &Vector) -> Result<Vector> {
        let (rho, u, v, _) = self.checked(q)?;
        let g = self.gamma();
        let e = q[3];
        let a = 0.5 * (3.0 - g);
        let b = 0.5 * (g - 1.0);
        let r2 = rho * rho;
        let rr = x[0] * y[0];
        let rm = x[0] * y[1] + x[1] * y[0];
        let rn = x[0] * y[2] + x[2] * y[0];
        let re = x[0] * y[3] + x[3] * y[0];
        let mm = x[1] * y[1];
        let mn = x[1] * y[2] + x[2] * y[1];
        let me = x[1] * y[3] + x[3] * y[1];
        let nn = x[2] * y[2];

        let f2 = (2.0 * a * u * u - 2.0 * b * v * v) / rho * rr - 2.0 * a * u / rho * rm
            + 2.0 * b * v / rho * rn
            + 2.0 * a / rho * mm
            - 2.0 * b / rho * nn;
        let f3 = 2.0 * u * v / rho * rr - v / rho * rm - u / rho * rn + mn / rho;
        let f4 = (2.0 * g * e * u / r2 - 6.0 * b * u * (u * u + v * v) / rho) * rr
            + (-g * e / r2 + 2.0 * b * (3.0 * u * u + v * v) / rho) * rm
            + 4.0 * b * u * v / rho * rn
            - g * u / rho * re
            - 6.0 * b * u / rho * mm
            - 2.0 * b * v / rho * mn
            + g / rho * me
            - 2.0 * b * u / rho * nn;
        Ok([0.0, f2, f3, f4])
    }

    fn eigensystem_x(&self, q: &Vector) -> Result<Eigensystem> {
        let (rho, u, v, p) = self.checked(q)?;
        let g = self.gamma();
        let c = (g * p / rho).sqrt();
        let h = (q[3] + p) / rho;
        let k = 0.5 * (u * u + v * v);
        let b1 = (g - 1.0) / (c * c);
        let b2 = b1 * k;
        let right = [
            [1.0, 1.0, 0.0, 1.0],
            [u - c, u, 0.0, u + c],
            [v, v, 1.0, v],
            [h - u * c, k, v, h + u * c],
        ];
        let left = [
            [
                0.5 * (b2 + u / c),
                -0.5 * (b1 * u + 1.0 / c),
                -0.5 * b1 * v,
                0.5 * b1,
            ],
            [1.0 - b2, b1 * u, b1 * v, -b1],
            [-v, 0.0, 1.0, 0.0],
            [
                0.5 * (b2 - u / c),
                -0.5 * (b1 * u - 1.0 / c),
                -0.5 * b1 * v,
                0.5 * b1,
            ],
        ];
        Ok(Eigensystem {
            values: [u - c, u, u, u + c],
            right,
            left,
        })
    }
}

impl SystemModel for Euler2D {
    fn components(&self) -> usize {
        4
    }

    fn dims(&self) -> usize {
        2
    }

    fn flux(&self, axis: Axis, q: &Vector) -> Result<Vector> {
        let (_, u, v, p) = self.checked(q)?;
        Ok(match axis {
            Axis::X => [q[1], q[1] * u + p, q[1] * v, (q[3] + p) * u],
            Axis::Y => [q[2], q[2] * u, q[2] * v + p, (q[3] + p) * v],
        })
    }

    fn jacobian(&self, axis: Axis, q: &Vector) -> Result<Matrix> {
        match axis {
            Axis::X => self.jacobian_x(q),
            Axis::Y => Ok(swap_rows_cols(&self.jacobian_x(&swap(q))?)),
        }
    }

    fn hessian_apply(&self, axis: Axis, q: &Vector, a: &Vector, b: &Vector) -> Result<Vector> {
        match axis {
            Axis::X => self.hessian_x(q, a, b),
            Axis::Y => Ok(swap(&self.hessian_x(&swap(q), &swap(a), &swap(b))?)),
        }
    }

    fn eigensystem(&self, axis: Axis, q: &Vector) -> Result<Eigensystem> {
        match axis {
            Axis::X => self.eigensystem_x(q),
            Axis::Y => {
                let e = self.eigensystem_x(&swap(q))?;
                // R_y = P R_x(Pq), L_y = L_x(Pq) P
                let right = [e.right[0], e.right[2], e.right[1], e.right[3]];
                let mut left = e.left;
                for row in left.iter_mut() {
                    row.swap(1, 2);
                }
                Ok(Eigensystem {
                    values: e.values,
                    right,
                    left,
                })
            }
        }
    }

    fn eigen_range(&self, axis: Axis, q: &Vector) -> Result<(f64, f64)> {
        let (rho, u, v, p) = self.checked(q)?;
        let c = (self.gamma() * p / rho).sqrt();
        let un = match axis {
            Axis::X => u,
            Axis::Y => v,
        };
        Ok((un - c, un + c))
    }
}
