//! Run configuration: flat `key = value` files plus programmatic overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grid::{BoundaryKind, BoundarySpec};
use crate::weno::{WenoMode, WenoParams};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Integrator {
    #[default]
    PifTaylor,
    PifRk4,
    SspRk3,
}

impl Integrator {
    pub const ALL: [Integrator; 3] = [Integrator::PifTaylor, Integrator::PifRk4, Integrator::SspRk3];

    pub fn name(self) -> &'static str {
        match self {
            Integrator::PifTaylor => "pif-taylor",
            Integrator::PifRk4 => "pif-rk4",
            Integrator::SspRk3 => "ssp-rk3",
        }
    }
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Integrator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Integrator::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown integrator '{s}' (pif-taylor | pif-rk4 | ssp-rk3)")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub problem: String,
    pub integrator: Integrator,
    /// `[mx]` or `[mx, my]`; empty selects the problem's desk mesh.
    pub mesh: Vec<usize>,
    pub cfl: f64,
    /// `None` uses the problem's final time.
    pub t_final: Option<f64>,
    pub weno: WenoParams,
    /// Replaces the problem's boundary conditions on every side.
    pub boundary: Option<BoundaryKind>,
    pub out: Option<PathBuf>,
    pub exec: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: "burgers-smooth".into(),
            integrator: Integrator::default(),
            mesh: Vec::new(),
            cfl: 0.4,
            t_final: None,
            weno: WenoParams::default(),
            boundary: None,
            out: None,
            exec: Execution::default(),
        }
    }
}

/// `"200"`, `"240x80"` or `"240,80"`.
pub fn parse_mesh(s: &str) -> Result<Vec<usize>> {
    s.split(['x', ','])
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad mesh '{s}'")))
        })
        .collect()
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: '{value}' is not a number")))
}

impl RunConfig {
    /// Documented keys: `problem`, `integrator`, `mesh`, `cfl`, `t_final`,
    /// `weno_mode`, `weno_p`, `weno_eps`, `boundary`, `out`, `execution`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "problem" => self.problem = value.to_string(),
            "integrator" => self.integrator = value.parse()?,
            "mesh" => self.mesh = parse_mesh(value)?,
            "cfl" => self.cfl = parse_f64(key, value)?,
            "t_final" => self.t_final = Some(parse_f64(key, value)?),
            "weno_mode" => self.weno.mode = value.parse::<WenoMode>()?,
            "weno_p" => self.weno.p = parse_f64(key, value)?,
            "weno_eps" => self.weno.eps = parse_f64(key, value)?,
            "boundary" => self.boundary = Some(value.parse()?),
            "out" => self.out = Some(PathBuf::from(value)),
            "execution" => {
                self.exec = match value {
                    "parallel" => Execution::Parallel,
                    "sequential" => Execution::Sequential,
                    other => return Err(Error::Config(format!("unknown execution '{other}'"))),
                }
            }
            other => return Err(Error::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Apply every `key = value` line of `text`; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0) || !self.cfl.is_finite() {
            return Err(Error::Config(format!("cfl must be positive, got {}", self.cfl)));
        }
        if let Some(m) = self.mesh.iter().find(|&&m| m < 10) {
            return Err(Error::Config(format!("mesh must have at least 10 points per axis, got {m}")));
        }
        if self.mesh.len() > 2 {
            return Err(Error::Config("mesh takes at most two sizes".into()));
        }
        if let Some(t) = self.t_final {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("t_final must be positive, got {t}")));
            }
        }
        WenoParams::new(self.weno.p, self.weno.eps, self.weno.mode)?;
        Ok(())
    }

    pub fn boundary_for(&self, default: BoundarySpec) -> BoundarySpec {
        self.boundary.map_or(default, BoundarySpec::uniform)
    }
}
