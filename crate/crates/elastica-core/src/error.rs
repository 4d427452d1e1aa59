use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point with y2 <= 0 (or non-finite coordinates).
    OffHalfPlane { y1: f64, y2: f64 },
    /// Tangent vectors based at different points were combined.
    BaseMismatch,
    /// Discrete line element collapsed at `index`.
    NotImmersed { index: usize, ds: f64, mean_ds: f64 },
    /// Sample count must be even and at least 16.
    BadSampleCount(usize),
    /// Two per-sample arrays of different length.
    GridMismatch { expected: usize, got: usize },
    EmptyCurve,
    Domain(&'static str),
    /// A linear solve broke down (zero pivot / not positive definite).
    Singular,
    /// Backtracking drove the time step below the floor.
    Stiffness { dt: f64 },
    /// A check was handed a family that violates its precondition.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OffHalfPlane { y1, y2 } => {
                write!(f, "point ({y1}, {y2}) is not in the upper half-plane")
            }
            Error::BaseMismatch => f.write_str("tangent vectors have different base points"),
            Error::NotImmersed { index, ds, mean_ds } => write!(
                f,
                "curve is not immersed: ds[{index}] = {ds:e} against mean {mean_ds:e}"
            ),
            Error::BadSampleCount(n) => {
                write!(f, "sample count {n} must be even and at least 16")
            }
            Error::GridMismatch { expected, got } => {
                write!(f, "expected {expected} samples, got {got}")
            }
            Error::EmptyCurve => f.write_str("empty curve description"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Singular => f.write_str("linear system is singular"),
            Error::Stiffness { dt } => write!(f, "time step underflow (dt = {dt:e})"),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
