//! Exact and reference solutions, and the error norm used by the
//! convergence studies.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grid::{Grid, State};
use crate::harness::{self, Integrator, RunConfig};
use crate::systems::Vector;

/// Smooth Burgers solution by characteristics: solve `ξ + t q0(ξ) = x` with
/// Newton's method and return `q0(ξ)`. Fails once characteristics cross.
pub fn burgers_exact(q0: impl Fn(f64) -> f64, dq0: impl Fn(f64) -> f64, t: f64, x: f64, tol: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(q0(x));
    }
    let mut xi = x - t * q0(x);
    for _ in 0..100 {
        let res = xi + t * q0(xi) - x;
        let slope = 1.0 + t * dq0(xi);
        if res.abs() <= tol {
            return Ok(q0(xi));
        }
        if slope <= 0.0 {
            break;
        }
        let step = res / slope;
        xi -= step;
        if step.abs() <= tol * (1.0 + xi.abs()) {
            return Ok(q0(xi));
        }
    }
    Err(Error::Oracle(format!(
        "characteristic root did not converge at x={x}, t={t} (shock formed?)"
    )))
}

/// Left and right primitive states `(ρ, u, p)` of a Riemann problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannState {
    pub left: [f64; 3],
    pub right: [f64; 3],
    pub gamma: f64,
}

/// Pressure and velocity between the two nonlinear waves.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarRegion {
    pub p: f64,
    pub u: f64,
}

impl RiemannState {
    pub fn new(left: [f64; 3], right: [f64; 3], gamma: f64) -> Result<Self> {
        for s in [left, right] {
            if !(s[0] > 0.0 && s[2] > 0.0) {
                return Err(Error::Oracle(format!("Riemann state {s:?} is not admissible")));
            }
        }
        Ok(Self { left, right, gamma })
    }

    fn sound(&self, s: &[f64; 3]) -> f64 {
        (self.gamma * s[2] / s[0]).sqrt()
    }

    /// Pressure function of one side and its derivative.
    fn side(&self, p: f64, s: &[f64; 3]) -> (f64, f64) {
        let g = self.gamma;
        let (rho, pk) = (s[0], s[2]);
        if p > pk {
            let a = 2.0 / ((g + 1.0) * rho);
            let b = (g - 1.0) / (g + 1.0) * pk;
            let root = (a / (p + b)).sqrt();
            ((p - pk) * root, root * (1.0 - 0.5 * (p - pk) / (p + b)))
        } else {
            let c = self.sound(s);
            let ratio = p / pk;
            (
                2.0 * c / (g - 1.0) * (ratio.powf((g - 1.0) / (2.0 * g)) - 1.0),
                ratio.powf(-(g + 1.0) / (2.0 * g)) / (rho * c),
            )
        }
    }

    fn pressure_function(&self, p: f64) -> (f64, f64) {
        let (fl, dl) = self.side(p, &self.left);
        let (fr, dr) = self.side(p, &self.right);
        (fl + fr + self.right[1] - self.left[1], dl + dr)
    }

    /// Star pressure by Newton iteration to a relative change of 1e-12, with
    /// bisection as a fallback.
    pub fn star(&self) -> Result<StarRegion> {
        let (cl, cr) = (self.sound(&self.left), self.sound(&self.right));
        let du = self.right[1] - self.left[1];
        if 2.0 / (self.gamma - 1.0) * (cl + cr) <= du {
            return Err(Error::Oracle("initial data generate vacuum".into()));
        }
        // primitive-variable guess
        let pv = 0.5 * (self.left[2] + self.right[2])
            - 0.125 * du * (self.left[0] + self.right[0]) * (cl + cr);
        let mut p = pv.max(1e-8);
        let mut converged = false;
        for _ in 0..100 {
            let (f, df) = self.pressure_function(p);
            let next = (p - f / df).max(1e-14);
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change <= 1e-12 {
                converged = true;
                break;
            }
        }
        if !converged || !p.is_finite() {
            let (mut lo, mut hi) = (1e-14, self.left[2].max(self.right[2]));
            while self.pressure_function(hi).0 < 0.0 {
                hi *= 2.0;
            }
            while hi - lo > 1e-13 * hi {
                let mid = 0.5 * (lo + hi);
                if self.pressure_function(mid).0 < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            p = 0.5 * (lo + hi);
        }
        let (fl, _) = self.side(p, &self.left);
        let (fr, _) = self.side(p, &self.right);
        let u = 0.5 * (self.left[1] + self.right[1]) + 0.5 * (fr - fl);
        Ok(StarRegion { p, u })
    }
}

/// Self-similar solution `(ρ, u, p)` at `ξ = x/t`.
pub fn euler_exact_riemann(rs: &RiemannState, xi: f64) -> Result<[f64; 3]> {
    let star = rs.star()?;
    Ok(sample(rs, &star, xi))
}

/// Sample a solved Riemann problem at `ξ`.
pub fn sample(rs: &RiemannState, star: &StarRegion, xi: f64) -> [f64; 3] {
    let g = rs.gamma;
    let gm = (g - 1.0) / (g + 1.0);
    if xi <= star.u {
        side_sample(g, gm, &rs.left, star, xi)
    } else {
        // mirror the right side onto a left problem
        let r = [rs.right[0], -rs.right[1], rs.right[2]];
        let s = StarRegion { p: star.p, u: -star.u };
        let [rho, u, p] = side_sample(g, gm, &r, &s, -xi);
        [rho, -u, p]
    }
}

fn side_sample(g: f64, gm: f64, w: &[f64; 3], star: &StarRegion, xi: f64) -> [f64; 3] {
    let (rho, u, p) = (w[0], w[1], w[2]);
    let c = (g * p / rho).sqrt();
    let ratio = star.p / p;
    if star.p > p {
        let speed = u - c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
        if xi <= speed {
            *w
        } else {
            [rho * (ratio + gm) / (gm * ratio + 1.0), star.u, star.p]
        }
    } else {
        let head = u - c;
        let c_star = c * ratio.powf((g - 1.0) / (2.0 * g));
        let tail = star.u - c_star;
        if xi <= head {
            *w
        } else if xi > tail {
            [rho * ratio.powf(1.0 / g), star.u, star.p]
        } else {
            let base = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (u - xi);
            [
                rho * base.powf(2.0 / (g - 1.0)),
                2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * u + xi),
                p * base.powf(2.0 * g / (g - 1.0)),
            ]
        }
    }
}

/// Density wave `ρ = 1 + 0.2 sin(π(x + y − (u+v)t))` advected at
/// `(u, v) = (0.7, 0.3)` with `p = 1`.
pub fn euler2d_smooth_exact(t: f64, x: f64, y: f64, gamma: f64) -> Vector {
    let (u, v, p) = (0.7, 0.3, 1.0);
    let rho = 1.0 + 0.2 * (std::f64::consts::PI * (x + y - (u + v) * t)).sin();
    [rho, rho * u, rho * v, p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)]
}

/// `Σ|q_num − q_exact| dV / Σ|q_exact| dV` over interior points for one
/// component; `exact(x, y)` samples the reference value.
pub fn l1_relative_error(numeric: &State, component: usize, exact: impl Fn(f64, f64) -> Result<f64>) -> Result<f64> {
    let dv = match numeric.grid {
        Grid::One(g) => g.dx,
        Grid::Two(g) => g.x.dx * g.y.dx,
    };
    let (mut num, mut den) = (0.0, 0.0);
    for (i, j) in numeric.field.interior() {
        let (x, y) = numeric.grid.point(i, j);
        let e = exact(x, y)?;
        num += (numeric.field.at(i, j)[component] - e).abs() * dv;
        den += e.abs() * dv;
    }
    if den == 0.0 {
        return Err(Error::Oracle("exact solution has zero L1 norm".into()));
    }
    Ok(num / den)
}

/// A stored 1D profile of conserved variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceProfile {
    pub header: String,
    pub x: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl ReferenceProfile {
    pub fn from_state(state: &State, header: String) -> Self {
        let mut x = Vec::new();
        let mut values = Vec::new();
        for (i, j) in state.field.interior() {
            x.push(state.grid.point(i, j).0);
            values.push(state.field.at(i, j).to_vec());
        }
        Self { header, x, values }
    }

    /// Piecewise-linear interpolation of `component`, constant past the ends.
    pub fn sample(&self, x: f64, component: usize) -> f64 {
        let n = self.x.len();
        if x <= self.x[0] {
            return self.values[0][component];
        }
        if x >= self.x[n - 1] {
            return self.values[n - 1][component];
        }
        let k = self.x.partition_point(|&v| v <= x) - 1;
        let w = (x - self.x[k]) / (self.x[k + 1] - self.x[k]);
        (1.0 - w) * self.values[k][component] + w * self.values[k + 1][component]
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |e| Error::io(path, e);
        let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
        writeln!(w, "# {}", self.header).map_err(io)?;
        let m = self.values.first().map_or(0, Vec::len);
        let cols: Vec<String> = (0..m).map(|k| format!("q{k}")).collect();
        writeln!(w, "x,{}", cols.join(",")).map_err(io)?;
        for (x, v) in self.x.iter().zip(&self.values) {
            let vals: Vec<String> = v.iter().map(|c| format!("{c:e}")).collect();
            writeln!(w, "{x:e},{}", vals.join(",")).map_err(io)?;
        }
        w.flush().map_err(io)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let io = |e| Error::io(path, e);
        let file = std::fs::File::open(path).map_err(io)?;
        let mut lines = std::io::BufReader::new(file).lines();
        let bad = |what: &str| Error::Oracle(format!("{}: {what}", path.display()));
        let header = lines
            .next()
            .ok_or_else(|| bad("empty file"))?
            .map_err(io)?
            .trim_start_matches('#')
            .trim()
            .to_string();
        lines.next().ok_or_else(|| bad("missing column line"))?.map_err(io)?;
        let (mut x, mut values) = (Vec::new(), Vec::new());
        for line in lines {
            let line = line.map_err(io)?;
            let nums = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| bad(&e.to_string()))?;
            if nums.len() < 2 {
                return Err(bad("short row"));
            }
            x.push(nums[0]);
            values.push(nums[1..].to_vec());
        }
        if x.is_empty() {
            return Err(bad("no samples"));
        }
        Ok(Self { header, x, values })
    }
}

/// Fine-mesh SSP-RK3 solution of a 1D catalog problem at its final time.
pub fn reference_run(problem: &str, mesh: usize, cfl: f64, exec: Execution) -> Result<ReferenceProfile> {
    let config = RunConfig {
        problem: problem.to_string(),
        integrator: Integrator::SspRk3,
        mesh: vec![mesh],
        cfl,
        exec,
        ..RunConfig::default()
    };
    let result = harness::run(&config)?;
    if result.state.grid.dims() != 1 {
        return Err(Error::Config(format!("reference profiles are 1D; {problem} is not")));
    }
    let header = format!(
        "problem={problem} mesh={mesh} cfl={cfl} integrator=ssp-rk3 t={}",
        result.state.t
    );
    Ok(ReferenceProfile::from_state(&result.state, header))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use std::f64::consts::PI;

    fn q0(x: f64) -> f64 {
        0.5 + (PI * x).sin()
    }

    fn dq0(x: f64) -> f64 {
        PI * (PI * x).cos()
    }

    #[test]
    fn burgers_trivial_cases() {
        assert_eq!(burgers_exact(q0, dq0, 0.0, 0.3, 1e-15).unwrap(), q0(0.3));
        assert_eq!(burgers_exact(|_| 0.5, |_| 0.0, 0.7, 0.3, 1e-15).unwrap(), 0.5);
    }

    #[test]
    fn burgers_matches_bisection() {
        let t = 0.5 / PI;
        let x = 1.0;
        let (mut lo, mut hi) = (x - 2.0 * t, x + 2.0 * t);
        let r = |xi: f64| xi + t * q0(xi) - x;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if r(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let want = q0(0.5 * (lo + hi));
        let got = burgers_exact(q0, dq0, t, x, 1e-15).unwrap();
        assert!((got - want).abs() < 1e-12, "{got} {want}");
    }

    #[test]
    fn burgers_characteristics_identity() {
        let t = 0.5 / PI;
        for k in 0..50 {
            let xi = -1.0 + 0.04 * k as f64;
            let x = xi + t * q0(xi);
            let v = burgers_exact(q0, dq0, t, x, 1e-15).unwrap();
            assert!((v - q0(xi)).abs() < 1e-12);
        }
    }

    #[test]
    fn burgers_after_breaking_fails() {
        // characteristics have crossed well before t = 2
        let bad = (0..200).any(|k| burgers_exact(q0, dq0, 2.0, 0.01 * k as f64, 1e-15).is_err());
        assert!(bad);
    }

    fn sod() -> RiemannState {
        RiemannState::new([1.0, 0.0, 1.0], [0.125, 0.0, 0.1], 1.4).unwrap()
    }

    /// Star pressure by plain bisection on the textbook pressure function.
    fn bisection_star(rs: &RiemannState) -> f64 {
        let g = rs.gamma;
        let f = |p: f64, s: &[f64; 3]| -> f64 {
            let c = (g * s[2] / s[0]).sqrt();
            if p > s[2] {
                let a = 2.0 / ((g + 1.0) * s[0]);
                let b = (g - 1.0) / (g + 1.0) * s[2];
                (p - s[2]) * (a / (p + b)).sqrt()
            } else {
                2.0 * c / (g - 1.0) * ((p / s[2]).powf((g - 1.0) / (2.0 * g)) - 1.0)
            }
        };
        let total = |p: f64| f(p, &rs.left) + f(p, &rs.right) + rs.right[1] - rs.left[1];
        let (mut lo, mut hi) = (1e-10, 100.0);
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if total(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn sod_star_pressure() {
        let oracle = bisection_star(&sod());
        assert!((oracle - 0.30313).abs() < 1e-5, "{oracle}");
        let star = sod().star().unwrap();
        assert!((star.p - oracle).abs() < 1e-12 * oracle);
        assert!((star.u - 0.92745).abs() < 1e-5);
    }

    #[test]
    fn uniform_data_is_preserved() {
        let rs = RiemannState::new([0.7, 0.2, 1.3], [0.7, 0.2, 1.3], 1.4).unwrap();
        for xi in [-3.0, -0.1, 0.2, 5.0] {
            let w = euler_exact_riemann(&rs, xi).unwrap();
            for k in 0..3 {
                assert!((w[k] - rs.left[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vacuum_is_rejected() {
        let rs = RiemannState::new([1.0, -10.0, 0.4], [1.0, 10.0, 0.4], 1.4).unwrap();
        assert!(matches!(rs.star(), Err(Error::Oracle(_))));
    }

    fn harten() -> RiemannState {
        let g: f64 = 1.4;
        let prim = |q: [f64; 3]| [q[0], q[1] / q[0], (g - 1.0) * (q[2] - 0.5 * q[1] * q[1] / q[0])];
        RiemannState::new(prim([0.445, 0.3111, 8.928]), prim([0.5, 0.0, 1.4275]), g).unwrap()
    }

    #[test]
    fn harten_fans_are_monotone() {
        let rs = harten();
        let star = rs.star().unwrap();
        // Harten data: left rarefaction, contact, right shock
        let c = (1.4 * rs.left[2] / rs.left[0]).sqrt();
        let head = rs.left[1] - c;
        let c_star = c * (star.p / rs.left[2]).powf(0.4 / 2.8);
        let tail = star.u - c_star;
        let mut prev = sample(&rs, &star, head);
        for k in 1..=200 {
            let xi = head + (tail - head) * k as f64 / 200.0;
            let w = sample(&rs, &star, xi);
            assert!(w[0] <= prev[0] + 1e-14 && w[2] <= prev[2] + 1e-14 && w[1] >= prev[1] - 1e-14);
            prev = w;
        }
    }

    fn euler_flux(w: &[f64; 3], g: f64) -> [f64; 3] {
        let e = w[2] / (g - 1.0) + 0.5 * w[0] * w[1] * w[1];
        [w[0] * w[1], w[0] * w[1] * w[1] + w[2], (e + w[2]) * w[1]]
    }

    fn conserved(w: &[f64; 3], g: f64) -> [f64; 3] {
        [w[0], w[0] * w[1], w[2] / (g - 1.0) + 0.5 * w[0] * w[1] * w[1]]
    }

    #[test]
    fn shocks_satisfy_rankine_hugoniot() {
        for rs in [sod(), harten()] {
            let star = rs.star().unwrap();
            let g = rs.gamma;
            // right-moving shock in both problems
            let pre = rs.right;
            let ratio = star.p / pre[2];
            let c = (g * pre[2] / pre[0]).sqrt();
            let s = pre[1] + c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
            let post = sample(&rs, &star, s - 1e-9);
            let ahead = sample(&rs, &star, s + 1e-9);
            let (fl, fr) = (euler_flux(&post, g), euler_flux(&ahead, g));
            let (ql, qr) = (conserved(&post, g), conserved(&ahead, g));
            for k in 0..3 {
                let residual = (fl[k] - fr[k]) - s * (ql[k] - qr[k]);
                assert!(residual.abs() < 1e-8, "{k}: {residual}");
            }
        }
    }

    #[test]
    fn smooth_2d_values() {
        assert_eq!(euler2d_smooth_exact(0.0, 0.3, -0.3, 1.4)[0], 1.0);
        assert!((euler2d_smooth_exact(1.0, 0.4, 0.6, 1.4)[0] - 1.0).abs() < 1e-15);
        let q = euler2d_smooth_exact(0.0, 0.25, 0.25, 1.4);
        assert!((q[0] - 1.2).abs() < 1e-15);
        assert!((q[1] - 0.84).abs() < 1e-15);
    }

    fn state_from(values: &[f64]) -> State {
        let grid = Grid::One(Grid1D::new(0.0, 1.0, values.len()).unwrap());
        let mut s = State::new(grid, 1, 0.0);
        for (i, v) in values.iter().enumerate() {
            s.field.set(i as isize, 0, &[*v]);
        }
        s
    }

    #[test]
    fn l1_error_basics() {
        let exact = |x: f64| 1.0 + x;
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let vals: Vec<f64> = (0..10).map(|i| exact(grid.x(i))).collect();
        let s = state_from(&vals);
        assert_eq!(l1_relative_error(&s, 0, |x, _| Ok(exact(x))).unwrap(), 0.0);
        let doubled: Vec<f64> = vals.iter().map(|v| 2.0 * v).collect();
        let e = l1_relative_error(&state_from(&doubled), 0, |x, _| Ok(exact(x))).unwrap();
        assert!((e - 1.0).abs() < 1e-15);
        // degree-0 homogeneity
        let scaled: Vec<f64> = vals.iter().map(|v| 3.0 * (v + 0.01)).collect();
        let a = l1_relative_error(&state_from(&scaled), 0, |x, _| Ok(3.0 * exact(x))).unwrap();
        let shifted: Vec<f64> = vals.iter().map(|v| v + 0.01).collect();
        let b = l1_relative_error(&state_from(&shifted), 0, |x, _| Ok(exact(x))).unwrap();
        assert!((a - b).abs() < 1e-14);
        assert!(l1_relative_error(&s, 0, |_, _| Ok(0.0)).is_err());
    }

    #[test]
    fn profile_round_trip_and_interpolation() {
        let s = state_from(&[1.0, 3.0, 2.0, 5.0]);
        let p = ReferenceProfile::from_state(&s, "problem=test mesh=4 cfl=0.1".into());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ref.csv");
        p.save(&path).unwrap();
        let back = ReferenceProfile::load(&path).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.sample(0.125, 0), 1.0);
        assert_eq!(back.sample(0.25, 0), 2.0);
        assert_eq!(back.sample(-1.0, 0), 1.0);
        assert_eq!(back.sample(9.0, 0), 5.0);
    }
}
