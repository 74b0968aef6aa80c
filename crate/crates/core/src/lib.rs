//! Conservative finite-difference WENO solvers advanced with time-averaged
//! fluxes.

pub mod error;
pub mod exec;
pub mod grid;
pub mod harness;
pub mod oracles;
pub mod pif;
pub mod rk;
pub mod stability;
pub mod systems;
pub mod taylor;
pub mod weno;

pub use error::{Error, Result};
pub use exec::Execution;
