//! Named benchmark problems.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, BoundarySpec, Grid, Grid1D, Grid2D, ObliqueShock, State};
use crate::oracles::{self, RiemannState};
use crate::systems::{Burgers, Euler1D, Euler2D, EulerParams, Model, SystemModel, Vector};

pub const GAMMA: f64 = 1.4;

/// Time at which the smooth 2D density wave is compared against its exact
/// solution.
pub const EULER2D_SMOOTH_T: f64 = 1.0;

/// How a problem's numerical solution is scored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleKind {
    /// Exact characteristic solution of Burgers' equation before breaking.
    BurgersExact,
    /// Exact Riemann solution with the initial jump at `x0`.
    Riemann { state: RiemannState, x0: f64 },
    /// Exact advected density wave.
    Euler2DSmooth,
    /// Fine-mesh numerical reference.
    Reference,
    /// No quantitative oracle.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemSpec {
    pub id: &'static str,
    pub model: Model,
    pub domain: [(f64, f64); 2],
    pub dims: usize,
    pub boundary: BoundarySpec,
    pub t_final: f64,
    /// Mesh used when the caller supplies none.
    pub desk_mesh: [usize; 2],
    pub oracle: OracleKind,
}

pub const PROBLEM_IDS: [&str; 5] = ["burgers-smooth", "lax-harten", "shock-entropy", "euler2d-smooth", "double-mach"];

pub fn burgers_q0(x: f64) -> f64 {
    0.5 + (PI * x).sin()
}

pub fn burgers_dq0(x: f64) -> f64 {
    PI * (PI * x).cos()
}

fn euler1d() -> Euler1D {
    Euler1D::new(EulerParams::new(GAMMA).expect("valid gamma")).expect("valid model")
}

fn euler2d() -> Euler2D {
    Euler2D::new(EulerParams::new(GAMMA).expect("valid gamma")).expect("valid model")
}

/// Primitive (rho, u, p) of the Lax tube.
pub const LAX_LEFT: [f64; 3] = [0.445, 0.698, 3.528];
pub const LAX_RIGHT: [f64; 3] = [0.5, 0.0, 0.571];

fn lax_conserved(x: f64) -> Vector {
    let s = if x < 0.5 { LAX_LEFT_CONSERVED } else { LAX_RIGHT_CONSERVED };
    [s[0], s[1], s[2], 0.0]
}

/// Conserved (rho, rho u, E) as tabulated for the Lax tube.
pub const LAX_LEFT_CONSERVED: [f64; 3] = [0.445, 0.3111, 8.928];
pub const LAX_RIGHT_CONSERVED: [f64; 3] = [0.5, 0.0, 1.4275];

/// Primitive states recovered from the tabulated conserved data.
pub fn lax_riemann() -> RiemannState {
    let prim = |c: [f64; 3]| {
        let u = c[1] / c[0];
        [c[0], u, (GAMMA - 1.0) * (c[2] - 0.5 * c[0] * u * u)]
    };
    RiemannState::new(prim(LAX_LEFT_CONSERVED), prim(LAX_RIGHT_CONSERVED), GAMMA).expect("admissible Lax data")
}

fn shock_entropy_initial(x: f64) -> Vector {
    let e = euler1d();
    if x < -4.0 {
        e.conserved(3.857143, 2.629369, 10.3333)
    } else {
        e.conserved(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
    }
}

pub fn double_mach_shock() -> ObliqueShock {
    let e = euler2d();
    let s = 8.25;
    ObliqueShock {
        pre: e.conserved(1.4, 0.0, 0.0, 1.0),
        post: e.conserved(8.0, s * 3f64.sqrt() / 2.0, -s / 2.0, 116.5),
        foot: 1.0 / 6.0,
        top: 1.0,
    }
}

pub fn lookup(id: &str) -> Result<ProblemSpec> {
    let periodic = BoundarySpec::periodic();
    let outflow = BoundarySpec::uniform(BoundaryKind::Extrapolate);
    let spec = match id {
        "burgers-smooth" => ProblemSpec {
            id: "burgers-smooth",
            model: Model::Burgers(Burgers),
            domain: [(0.0, 2.0), (0.0, 0.0)],
            dims: 1,
            boundary: periodic,
            t_final: 0.5 / PI,
            desk_mesh: [80, 1],
            oracle: OracleKind::BurgersExact,
        },
        "lax-harten" => ProblemSpec {
            id: "lax-harten",
            model: Model::Euler1D(euler1d()),
            domain: [(0.0, 1.0), (0.0, 0.0)],
            dims: 1,
            boundary: outflow,
            t_final: 0.16,
            desk_mesh: [200, 1],
            oracle: OracleKind::Riemann { state: lax_riemann(), x0: 0.5 },
        },
        "shock-entropy" => ProblemSpec {
            id: "shock-entropy",
            model: Model::Euler1D(euler1d()),
            domain: [(-5.0, 5.0), (0.0, 0.0)],
            dims: 1,
            boundary: outflow,
            t_final: 1.8,
            desk_mesh: [400, 1],
            oracle: OracleKind::Reference,
        },
        "euler2d-smooth" => ProblemSpec {
            id: "euler2d-smooth",
            model: Model::Euler2D(euler2d()),
            domain: [(0.0, 2.0), (0.0, 2.0)],
            dims: 2,
            boundary: periodic,
            t_final: EULER2D_SMOOTH_T,
            desk_mesh: [40, 40],
            oracle: OracleKind::Euler2DSmooth,
        },
        "double-mach" => {
            let dm = BoundaryKind::DoubleMach(double_mach_shock());
            ProblemSpec {
                id: "double-mach",
                model: Model::Euler2D(euler2d()),
                domain: [(0.0, 3.0), (0.0, 1.0)],
                dims: 2,
                boundary: BoundarySpec {
                    x_lo: dm,
                    x_hi: BoundaryKind::Extrapolate,
                    y_lo: dm,
                    y_hi: dm,
                },
                t_final: 0.2,
                desk_mesh: [240, 80],
                oracle: OracleKind::None,
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown problem '{other}' (one of {})",
                PROBLEM_IDS.join(", ")
            )))
        }
    };
    Ok(spec)
}

pub fn catalog() -> Vec<ProblemSpec> {
    PROBLEM_IDS.iter().map(|id| lookup(id).expect("catalog id")).collect()
}

impl ProblemSpec {
    /// Resolve `[mx]` or `[mx, my]` against this problem. A single size on a
    /// 2D problem keeps the domain's aspect ratio.
    pub fn grid(&self, mesh: &[usize]) -> Result<Grid> {
        let [(ax, bx), (ay, by)] = self.domain;
        let mx = mesh.first().copied().unwrap_or(self.desk_mesh[0]);
        match self.dims {
            1 => {
                if mesh.len() > 1 {
                    return Err(Error::Config(format!("{} is 1D; got mesh {mesh:?}", self.id)));
                }
                Ok(Grid::One(Grid1D::new(ax, bx, mx)?))
            }
            _ => {
                let my = match mesh {
                    [] => self.desk_mesh[1],
                    [mx] => ((*mx as f64) * (by - ay) / (bx - ax)).round() as usize,
                    [_, my, ..] => *my,
                };
                Ok(Grid::Two(Grid2D::new(ax, bx, mx, ay, by, my)?))
            }
        }
    }

    /// Initial conserved state on `grid`, ghosts not yet filled.
    pub fn initial_state(&self, grid: Grid) -> State {
        let m = self.model.components();
        match self.id {
            "burgers-smooth" => State::from_fn(grid, m, |x, _| [burgers_q0(x), 0.0, 0.0, 0.0]),
            "lax-harten" => State::from_fn(grid, m, |x, _| lax_conserved(x)),
            "shock-entropy" => State::from_fn(grid, m, |x, _| shock_entropy_initial(x)),
            "euler2d-smooth" => State::from_fn(grid, m, |x, y| oracles::euler2d_smooth_exact(0.0, x, y, GAMMA)),
            "double-mach" => {
                let shock = double_mach_shock();
                State::from_fn(grid, m, |x, y| shock.exact(0.0, x, y))
            }
            _ => unreachable!("catalog ids are closed"),
        }
    }

    /// Exact density at `(x, y, t)` where an analytic oracle exists.
    pub fn exact_density(&self, t: f64, x: f64, y: f64) -> Result<f64> {
        match self.oracle {
            OracleKind::BurgersExact => oracles::burgers_exact(burgers_q0, burgers_dq0, t, x, 1e-14),
            OracleKind::Riemann { state, x0 } => {
                if t <= 0.0 {
                    return Err(Error::Oracle("Riemann oracle needs t > 0".into()));
                }
                Ok(oracles::euler_exact_riemann(&state, (x - x0) / t)?[0])
            }
            OracleKind::Euler2DSmooth => Ok(oracles::euler2d_smooth_exact(t, x, y, GAMMA)[0]),
            OracleKind::Reference | OracleKind::None => {
                Err(Error::Oracle(format!("{} has no analytic solution", self.id)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_resolves() {
        let all = catalog();
        assert_eq!(all.len(), 5);
        for p in &all {
            assert_eq!(p.model.dims(), p.dims);
            p.boundary.validate(p.dims, p.model.components()).unwrap();
            let g = p.grid(&[]).unwrap();
            let s = p.initial_state(g);
            s.check_finite().unwrap();
        }
        assert!(lookup("sod").is_err());
    }

    #[test]
    fn lax_primitive_states() {
        let rs = lax_riemann();
        for k in 0..3 {
            assert!((rs.left[k] - LAX_LEFT[k]).abs() < 2e-3, "{:?}", rs.left);
            assert!((rs.right[k] - LAX_RIGHT[k]).abs() < 2e-3, "{:?}", rs.right);
        }
    }

    #[test]
    fn double_mach_post_state() {
        let s = double_mach_shock();
        assert!((s.post[1] / s.post[0] - 8.25 * 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((s.post[3] - 563.5).abs() < 1e-9);
        assert!((s.pre[3] - 2.5).abs() < 1e-12);
    }

    #[test]
    fn mesh_resolution() {
        let dm = lookup("double-mach").unwrap();
        assert_eq!(dm.grid(&[120]).unwrap().my(), 40);
        assert_eq!(dm.grid(&[120, 30]).unwrap().my(), 30);
        let b = lookup("burgers-smooth").unwrap();
        assert!(b.grid(&[40, 40]).is_err());
        assert_eq!(b.grid(&[]).unwrap().mx(), 80);
    }

    #[test]
    fn double_mach_initial_split() {
        let dm = lookup("double-mach").unwrap();
        let s = dm.initial_state(dm.grid(&[60]).unwrap());
        let shock = double_mach_shock();
        for (i, j) in s.field.interior() {
            let (x, y) = s.grid.point(i, j);
            let want = if x < 1.0 / 6.0 + y / 3f64.sqrt() { shock.post } else { shock.pre };
            assert_eq!(s.field.vector(i, j), want);
        }
    }
}
