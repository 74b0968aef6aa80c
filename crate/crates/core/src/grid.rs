//! Uniform structured grids, ghost-padded point storage and boundary filling.
//!
//! Interior points use zero-based indices `0..mx` (and `0..my`), with the
//! point at index `i` located at `a + (i + 1/2) dx`. Ghost points carry
//! negative indices or indices `>= mx`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::systems::Vector;

/// Ghost layer width on every side.
///
/// The Taylor flux builder reads two points either side of a grid point and
/// the WENO interface stencil reaches three more, so six covers the composed
/// footprint with a single fill per step.
pub const GHOST: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub a: f64,
    pub b: f64,
    pub mx: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, mx: usize) -> Result<Self> {
        if mx == 0 || !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Config(format!(
                "invalid 1D grid [{a}, {b}] with {mx} points"
            )));
        }
        Ok(Self {
            a,
            b,
            mx,
            dx: (b - a) / mx as f64,
        })
    }

    /// Point location; valid for ghost indices too.
    #[inline]
    pub fn x(&self, i: isize) -> f64 {
        self.a + (i as f64 + 0.5) * self.dx
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(ax: f64, bx: f64, mx: usize, ay: f64, by: f64, my: usize) -> Result<Self> {
        Ok(Self {
            x: Grid1D::new(ax, bx, mx)?,
            y: Grid1D::new(ay, by, my)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Grid {
    One(Grid1D),
    Two(Grid2D),
}

impl Grid {
    pub fn dims(&self) -> usize {
        match self {
            Grid::One(_) => 1,
            Grid::Two(_) => 2,
        }
    }

    pub fn axis(&self, axis: Axis) -> Option<&Grid1D> {
        match (self, axis) {
            (Grid::One(g), Axis::X) => Some(g),
            (Grid::One(_), Axis::Y) => None,
            (Grid::Two(g), Axis::X) => Some(&g.x),
            (Grid::Two(g), Axis::Y) => Some(&g.y),
        }
    }

    pub fn x_axis(&self) -> &Grid1D {
        match self {
            Grid::One(g) => g,
            Grid::Two(g) => &g.x,
        }
    }

    pub fn mx(&self) -> usize {
        self.x_axis().mx
    }

    pub fn my(&self) -> usize {
        match self {
            Grid::One(_) => 1,
            Grid::Two(g) => g.y.mx,
        }
    }

    /// Coordinates of point `(i, j)`; `y` is 0 in 1D.
    #[inline]
    pub fn point(&self, i: isize, j: isize) -> (f64, f64) {
        match self {
            Grid::One(g) => (g.x(i), 0.0),
            Grid::Two(g) => (g.x.x(i), g.y.x(j)),
        }
    }
}

/// Ghost-padded storage of `m` values per grid point, point-major.
///
/// One-dimensional fields have a single row and no ghost rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    nx: usize,
    ny: usize,
    gx: usize,
    gy: usize,
    m: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: &Grid, m: usize) -> Self {
        let (ny, gy) = match grid {
            Grid::One(_) => (1, 0),
            Grid::Two(g) => (g.y.mx, GHOST),
        };
        let nx = grid.mx();
        let len = (nx + 2 * GHOST) * (ny + 2 * gy) * m;
        Self {
            nx,
            ny,
            gx: GHOST,
            gy,
            m,
            data: vec![0.0; len],
        }
    }

    /// Same shape as `self`, zero filled.
    pub fn zeros_like(&self) -> Self {
        Self {
            data: vec![0.0; self.data.len()],
            ..*self
        }
    }

    #[inline]
    pub fn components(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn ghost_y(&self) -> usize {
        self.gy
    }

    /// Points per padded row.
    #[inline]
    pub fn row_len(&self) -> usize {
        self.nx + 2 * self.gx
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.ny + 2 * self.gy
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.row_len() * self.rows()
    }

    #[inline]
    pub fn offset(&self, i: isize, j: isize) -> usize {
        debug_assert!(i >= -(self.gx as isize) && i < (self.nx + self.gx) as isize);
        debug_assert!(j >= -(self.gy as isize) && j < (self.ny + self.gy) as isize);
        (((j + self.gy as isize) as usize) * self.row_len() + (i + self.gx as isize) as usize)
            * self.m
    }

    /// Distance in `f64` slots between neighbours along `axis`.
    #[inline]
    pub fn stride(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.m,
            Axis::Y => self.row_len() * self.m,
        }
    }

    /// Interior-relative `(i, j)` of the padded point with linear index `p`.
    #[inline]
    pub fn point_index(&self, p: usize) -> (isize, isize) {
        let rl = self.row_len();
        (
            (p % rl) as isize - self.gx as isize,
            (p / rl) as isize - self.gy as isize,
        )
    }

    #[inline]
    pub fn at(&self, i: isize, j: isize) -> &[f64] {
        let o = self.offset(i, j);
        &self.data[o..o + self.m]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize, j: isize) -> &mut [f64] {
        let o = self.offset(i, j);
        let m = self.m;
        &mut self.data[o..o + m]
    }

    #[inline]
    pub fn vector(&self, i: isize, j: isize) -> Vector {
        load(&self.data, self.offset(i, j), self.m)
    }

    pub fn set(&mut self, i: isize, j: isize, v: &[f64]) {
        let m = self.m;
        self.at_mut(i, j).copy_from_slice(&v[..m]);
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Interior points, row by row.
    pub fn interior(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        (0..self.ny as isize).flat_map(move |j| (0..self.nx as isize).map(move |i| (i, j)))
    }

    /// Per-component sums over interior points.
    pub fn interior_sum(&self) -> Vec<f64> {
        let mut sum = vec![0.0; self.m];
        for (i, j) in self.interior() {
            for (s, v) in sum.iter_mut().zip(self.at(i, j)) {
                *s += v;
            }
        }
        sum
    }

    /// Per-component sums of absolute values over interior points.
    pub fn interior_abs_sum(&self) -> Vec<f64> {
        let mut sum = vec![0.0; self.m];
        for (i, j) in self.interior() {
            for (s, v) in sum.iter_mut().zip(self.at(i, j)) {
                *s += v.abs();
            }
        }
        sum
    }

    /// First interior point holding a non-finite value.
    pub fn first_non_finite(&self) -> Option<(isize, isize)> {
        self.interior()
            .find(|&(i, j)| self.at(i, j).iter().any(|v| !v.is_finite()))
    }

    /// Copy wrapped interior values into the ghost layers along `axis`.
    pub fn wrap_periodic(&mut self, axis: Axis) {
        match axis {
            Axis::X => {
                let (n, g) = (self.nx as isize, self.gx as isize);
                for j in self.row_range() {
                    for k in 1..=g {
                        self.copy_point((n - k, j), (-k, j));
                        self.copy_point((k - 1, j), (n - 1 + k, j));
                    }
                }
            }
            Axis::Y => {
                let (n, g) = (self.ny as isize, self.gy as isize);
                for i in self.col_range() {
                    for k in 1..=g {
                        self.copy_point((i, n - k), (i, -k));
                        self.copy_point((i, k - 1), (i, n - 1 + k));
                    }
                }
            }
        }
    }

    fn row_range(&self) -> std::ops::Range<isize> {
        0..self.ny as isize
    }

    fn col_range(&self) -> std::ops::Range<isize> {
        -(self.gx as isize)..(self.nx + self.gx) as isize
    }

    fn copy_point(&mut self, from: (isize, isize), to: (isize, isize)) {
        let src = self.offset(from.0, from.1);
        let dst = self.offset(to.0, to.1);
        self.data.copy_within(src..src + self.m, dst);
    }
}

#[inline]
pub(crate) fn load(data: &[f64], offset: usize, m: usize) -> Vector {
    let mut v = [0.0; crate::systems::MAX_COMPONENTS];
    v[..m].copy_from_slice(&data[offset..offset + m]);
    v
}

/// Solution at one time level.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub grid: Grid,
    pub field: Field,
    pub t: f64,
}

impl State {
    pub fn new(grid: Grid, m: usize, t: f64) -> Self {
        Self {
            field: Field::zeros(&grid, m),
            grid,
            t,
        }
    }

    /// Initialise interior points from `init(x, y)`; ghosts are left zero.
    pub fn from_fn(grid: Grid, m: usize, init: impl Fn(f64, f64) -> Vector) -> Self {
        let mut state = Self::new(grid, m, 0.0);
        for j in 0..grid.my() as isize {
            for i in 0..grid.mx() as isize {
                let (x, y) = grid.point(i, j);
                state.field.set(i, j, &init(x, y));
            }
        }
        state
    }

    #[inline]
    pub fn components(&self) -> usize {
        self.field.components()
    }

    /// Fails if any interior value is NaN or infinite.
    pub fn check_finite(&self) -> Result<()> {
        match self.field.first_non_finite() {
            Some((i, j)) => Err(Error::Blowup {
                location: format!("point ({i}, {j}), t={}", self.t),
            }),
            None => Ok(()),
        }
    }
}

/// Pre/post-shock conserved states for the oblique Mach-10 shock problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObliqueShock {
    pub pre: Vector,
    pub post: Vector,
    /// x-coordinate where the shock meets the bottom wall at t = 0.
    pub foot: f64,
    /// Top edge of the domain, where the shock locus is evaluated.
    pub top: f64,
}

impl ObliqueShock {
    /// Shock position along the line `y` at time `t`.
    pub fn shock_x(&self, t: f64, y: f64) -> f64 {
        self.foot + (20.0 * t + y) / 3f64.sqrt()
    }

    /// Exact state at `(x, y, t)` away from the reflection region.
    pub fn exact(&self, t: f64, x: f64, y: f64) -> Vector {
        if x < self.shock_x(t, y) {
            self.post
        } else {
            self.pre
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryKind {
    Periodic,
    /// Zeroth-order outflow: copy the nearest interior point.
    Extrapolate,
    /// Mirror the interior and flip the sign of the wall-normal momentum.
    ReflectWall,
    /// Analytic pre/post-shock padding; on the bottom edge, reflection
    /// behind the wedge foot and post-shock padding ahead of it.
    DoubleMach(ObliqueShock),
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryKind::Periodic => "periodic",
            BoundaryKind::Extrapolate => "extrapolate",
            BoundaryKind::ReflectWall => "reflect",
            BoundaryKind::DoubleMach(_) => "double-mach",
        })
    }
}

impl FromStr for BoundaryKind {
    type Err = Error;

    /// Parses the data-free kinds; `double-mach` needs shock data and is only
    /// available through the problem catalog.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "periodic" => Ok(BoundaryKind::Periodic),
            "extrapolate" | "outflow" => Ok(BoundaryKind::Extrapolate),
            "reflect" | "wall" => Ok(BoundaryKind::ReflectWall),
            other => Err(Error::Config(format!("unknown boundary kind '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Low,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySpec {
    pub x_lo: BoundaryKind,
    pub x_hi: BoundaryKind,
    pub y_lo: BoundaryKind,
    pub y_hi: BoundaryKind,
}

impl BoundarySpec {
    pub fn uniform(kind: BoundaryKind) -> Self {
        Self {
            x_lo: kind,
            x_hi: kind,
            y_lo: kind,
            y_hi: kind,
        }
    }

    pub fn periodic() -> Self {
        Self::uniform(BoundaryKind::Periodic)
    }

    pub fn side(&self, axis: Axis, side: Side) -> BoundaryKind {
        match (axis, side) {
            (Axis::X, Side::Low) => self.x_lo,
            (Axis::X, Side::High) => self.x_hi,
            (Axis::Y, Side::Low) => self.y_lo,
            (Axis::Y, Side::High) => self.y_hi,
        }
    }

    pub fn is_periodic(&self, axis: Axis) -> bool {
        self.side(axis, Side::Low) == BoundaryKind::Periodic
    }

    pub fn validate(&self, dims: usize, m: usize) -> Result<()> {
        let axes: &[Axis] = if dims == 1 { &[Axis::X] } else { &[Axis::X, Axis::Y] };
        for &axis in axes {
            let lo = self.side(axis, Side::Low);
            let hi = self.side(axis, Side::High);
            if (lo == BoundaryKind::Periodic) != (hi == BoundaryKind::Periodic) {
                return Err(Error::Config(format!(
                    "periodic boundary on {axis:?} must be paired: got {lo} / {hi}"
                )));
            }
            for kind in [lo, hi] {
                if matches!(kind, BoundaryKind::DoubleMach(_)) && (dims != 2 || m != 4) {
                    return Err(Error::Config(
                        "double-mach boundary requires the 2D Euler system".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Index of the wall-normal momentum for reflective walls.
///
/// Conserved vectors are laid out as (density, momentum..., energy), so the
/// normal momentum along `axis` sits at `1 + axis` whenever the system has
/// room for it; scalar fields are mirrored unchanged.
fn normal_momentum(m: usize, axis: Axis) -> Option<usize> {
    let k = match axis {
        Axis::X => 1,
        Axis::Y => 2,
    };
    (m > k + 1).then_some(k)
}

/// Populate every ghost point of `state` for boundary data at time `t`.
///
/// Interior values are never modified. In 2D the x-ghosts of interior rows
/// are filled first, then the y-ghosts over the full padded width so corner
/// blocks are populated as well.
pub fn fill_ghosts(state: &mut State, bc: &BoundarySpec, t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::Config(format!("ghost fill at invalid time {t}")));
    }
    let dims = state.grid.dims();
    bc.validate(dims, state.components())?;
    fill_axis(state, bc, Axis::X, t);
    if dims == 2 {
        fill_axis(state, bc, Axis::Y, t);
    }
    Ok(())
}

fn fill_axis(state: &mut State, bc: &BoundarySpec, axis: Axis, t: f64) {
    if bc.is_periodic(axis) {
        state.field.wrap_periodic(axis);
        return;
    }
    for side in [Side::Low, Side::High] {
        fill_side(state, bc.side(axis, side), axis, side, t);
    }
}

fn fill_side(state: &mut State, kind: BoundaryKind, axis: Axis, side: Side, t: f64) {
    let grid = state.grid;
    let field = &mut state.field;
    let m = field.components();
    let g = GHOST as isize;
    let (n, lines) = match axis {
        Axis::X => (field.nx() as isize, field.row_range()),
        Axis::Y => (field.ny() as isize, field.col_range()),
    };
    // (ghost index, mirror interior index, nearest interior index) along axis.
    let ghost_of = |k: isize| match side {
        Side::Low => (-1 - k, k, 0),
        Side::High => (n + k, n - 1 - k, n - 1),
    };
    let pt = |along: isize, line: isize| match axis {
        Axis::X => (along, line),
        Axis::Y => (line, along),
    };
    for line in lines {
        for k in 0..g {
            let (ghost, mirror, nearest) = ghost_of(k);
            let (gi, gj) = pt(ghost, line);
            let value = match kind {
                BoundaryKind::Periodic => unreachable!("periodic handled per axis"),
                BoundaryKind::Extrapolate => {
                    let (i, j) = pt(nearest, line);
                    field.vector(i, j)
                }
                BoundaryKind::ReflectWall => reflected(field, pt(mirror, line), axis),
                BoundaryKind::DoubleMach(shock) => {
                    let (x, y) = grid.point(gi, gj);
                    match (axis, side) {
                        (Axis::Y, Side::Low) if x >= shock.foot => {
                            reflected(field, pt(mirror, line), axis)
                        }
                        (Axis::Y, Side::Low) => shock.post,
                        (Axis::Y, Side::High) => {
                            if x < shock.shock_x(t, shock.top) {
                                shock.post
                            } else {
                                shock.pre
                            }
                        }
                        (Axis::X, _) => shock.exact(t, x, y),
                    }
                }
            };
            field.set(gi, gj, &value[..m]);
        }
    }
}

fn reflected(field: &Field, (i, j): (isize, isize), axis: Axis) -> Vector {
    let mut v = field.vector(i, j);
    if let Some(k) = normal_momentum(field.components(), axis) {
        v[k] = -v[k];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(values: &[f64]) -> State {
        let grid = Grid::One(Grid1D::new(0.0, 1.0, values.len()).unwrap());
        let mut s = State::new(grid, 1, 0.0);
        for (i, v) in values.iter().enumerate() {
            s.field.set(i as isize, 0, &[*v]);
        }
        s
    }

    #[test]
    fn grid_centres() {
        let g = Grid1D::new(-1.0, 3.0, 8).unwrap();
        assert_eq!(g.dx, 0.5);
        assert_eq!(g.x(0) - g.a, g.dx / 2.0);
        assert_eq!(g.x(7), g.b - g.dx / 2.0);
        assert!(Grid1D::new(1.0, 1.0, 4).is_err());
        assert!(Grid1D::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn periodic_wraps_interior() {
        let mut s = line(&[1.0, 2.0, 3.0, 4.0]);
        fill_ghosts(&mut s, &BoundarySpec::periodic(), 0.0).unwrap();
        assert_eq!(s.field.at(-2, 0), &[3.0]);
        assert_eq!(s.field.at(-1, 0), &[4.0]);
        assert_eq!(s.field.at(4, 0), &[1.0]);
        assert_eq!(s.field.at(5, 0), &[2.0]);
        // ghost width exceeds mx: wrap continues cyclically
        assert_eq!(s.field.at(-6, 0), &[3.0]);
        assert_eq!(s.field.at(9, 0), &[2.0]);
    }

    #[test]
    fn extrapolate_copies_edge() {
        let mut s = line(&[7.25, 1.0, 2.0, -3.5]);
        fill_ghosts(&mut s, &BoundarySpec::uniform(BoundaryKind::Extrapolate), 0.0).unwrap();
        for k in 1..=GHOST as isize {
            assert_eq!(s.field.at(-k, 0), &[7.25]);
            assert_eq!(s.field.at(3 + k, 0), &[-3.5]);
        }
    }

    #[test]
    fn reflect_flips_normal_momentum() {
        let grid = Grid::One(Grid1D::new(0.0, 1.0, 8).unwrap());
        let mut s = State::from_fn(grid, 3, |x, _| [1.0 + x, 2.0 * x, 3.0, 0.0]);
        fill_ghosts(&mut s, &BoundarySpec::uniform(BoundaryKind::ReflectWall), 0.0).unwrap();
        let inner = s.field.vector(1, 0);
        let ghost = s.field.vector(-2, 0);
        assert_eq!(ghost[0], inner[0]);
        assert_eq!(ghost[1], -inner[1]);
        assert_eq!(ghost[2], inner[2]);
    }

    #[test]
    fn mismatched_periodic_pair_is_rejected() {
        let mut s = line(&[1.0; 8]);
        let bc = BoundarySpec {
            x_hi: BoundaryKind::Extrapolate,
            ..BoundarySpec::periodic()
        };
        assert!(matches!(fill_ghosts(&mut s, &bc, 0.0), Err(Error::Config(_))));
        assert!(matches!("nope".parse::<BoundaryKind>(), Err(Error::Config(_))));
    }

    #[test]
    fn fill_leaves_interior_untouched() {
        let values: Vec<f64> = (0..10).map(|k| (k as f64).sin()).collect();
        let mut s = line(&values);
        let before: Vec<f64> = (0..10).map(|i| s.field.at(i, 0)[0]).collect();
        for kind in [BoundaryKind::Periodic, BoundaryKind::Extrapolate, BoundaryKind::ReflectWall] {
            fill_ghosts(&mut s, &BoundarySpec::uniform(kind), 0.0).unwrap();
            let after: Vec<f64> = (0..10).map(|i| s.field.at(i, 0)[0]).collect();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn periodic_2d_fills_corners() {
        let grid = Grid::Two(Grid2D::new(0.0, 1.0, 7, 0.0, 1.0, 8).unwrap());
        let mut s = State::from_fn(grid, 1, |x, y| [x + 10.0 * y, 0.0, 0.0, 0.0]);
        fill_ghosts(&mut s, &BoundarySpec::periodic(), 0.0).unwrap();
        assert_eq!(s.field.at(-1, -1), s.field.at(6, 7));
        assert_eq!(s.field.at(7, 8), s.field.at(0, 0));
        assert_eq!(s.field.at(-6, 13), s.field.at(1, 5));
    }

    #[test]
    fn double_mach_top_uses_shock_locus() {
        let grid = Grid::Two(Grid2D::new(0.0, 3.0, 60, 0.0, 1.0, 20).unwrap());
        let pre = [1.4, 0.0, 0.0, 2.5];
        let post = [8.0, 57.0, -33.0, 563.0];
        let shock = ObliqueShock {
            pre,
            post,
            foot: 1.0 / 6.0,
            top: 1.0,
        };
        let t = 0.2;
        let xs = shock.shock_x(t, 1.0);
        assert!((xs - (1.0 / 6.0 + 5.0 / 3f64.sqrt())).abs() < 1e-15);
        assert!((xs - 3.0534).abs() < 1e-4);

        let mut s = State::from_fn(grid, 4, |_, _| pre);
        let bc = BoundarySpec {
            x_lo: BoundaryKind::DoubleMach(shock),
            x_hi: BoundaryKind::Extrapolate,
            y_lo: BoundaryKind::DoubleMach(shock),
            y_hi: BoundaryKind::DoubleMach(shock),
        };
        fill_ghosts(&mut s, &bc, t).unwrap();
        for i in -6..66 {
            let (x, _) = grid.point(i, 20);
            let want = if x < xs { post } else { pre };
            assert_eq!(s.field.vector(i, 20), want);
        }
        let t0 = 0.0;
        fill_ghosts(&mut s, &bc, t0).unwrap();
        let xs0 = shock.shock_x(t0, 1.0);
        for i in 0..60 {
            let (x, _) = grid.point(i, 20);
            let want = if x < xs0 { post } else { pre };
            assert_eq!(s.field.vector(i, 20), want);
        }
        // bottom: padded ahead of the wedge, reflected behind it
        assert_eq!(s.field.vector(0, -1), post);
        let mirrored = s.field.vector(30, 0);
        let ghost = s.field.vector(30, -1);
        assert_eq!(ghost[2], -mirrored[2]);
        assert_eq!(ghost[1], mirrored[1]);
    }
}
