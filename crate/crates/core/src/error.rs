use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    /// Non-physical state (density or pressure not positive).
    #[error("positivity violation{}: rho={rho:e}, p={pressure:e}", fmt_location(.location))]
    Positivity {
        rho: f64,
        pressure: f64,
        location: Option<String>,
    },

    /// A non-finite value appeared in the solution or an interface flux.
    #[error("numerical blowup at {location}")]
    Blowup { location: String },

    #[error("oracle error: {0}")]
    Oracle(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn fmt_location(location: &Option<String>) -> String {
    match location {
        Some(l) => format!(" at {l}"),
        None => String::new(),
    }
}

impl Error {
    /// Short machine-readable category, used by the CLI exit line.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Positivity { .. } => "positivity",
            Error::Blowup { .. } => "blowup",
            Error::Oracle(_) => "oracle",
            Error::Io { .. } => "io",
        }
    }

    /// Attach (or prefix) a location to positivity and blowup errors.
    pub fn at(self, location: impl FnOnce() -> String) -> Self {
        match self {
            Error::Positivity {
                rho,
                pressure,
                location: loc,
            } => Error::Positivity {
                rho,
                pressure,
                location: Some(match loc {
                    Some(inner) => format!("{}, {inner}", location()),
                    None => location(),
                }),
            },
            Error::Blowup { location: loc } => Error::Blowup {
                location: format!("{}, {loc}", location()),
            },
            other => other,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
