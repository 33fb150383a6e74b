use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("semigroup entry ({row}, {col}) = {value} is outside 0..{size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error("{context} failed validation\n{report}")]
    Invalid { context: String, report: Report },

    #[error("size guard: {what} needs {needed} coordinates, cap is {cap}")]
    SizeGuard {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(context: impl Into<String>, report: Report) -> Self {
        Error::Invalid {
            context: context.into(),
            report,
        }
    }
}

/// Turns a failing report into an [`Error::Invalid`].
pub(crate) fn require(report: Report, context: &str) -> Result<()> {
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::invalid(context, report))
    }
}

/// Caps on the number of coordinates a single cochain space may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_coordinates: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_coordinates: 1 << 15,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_coordinates: usize::MAX,
        }
    }

    pub fn guard(&self, what: impl FnOnce() -> String, needed: usize) -> Result<()> {
        if needed > self.max_coordinates {
            Err(Error::SizeGuard {
                what: what(),
                needed,
                cap: self.max_coordinates,
            })
        } else {
            Ok(())
        }
    }
}
