//! Closed curves in the hyperbolic half-plane and the L²-gradient flow of
//! their length-penalized elastic energy.
//!
//! Everything here is `no_std` (with `alloc`). File formats and the command
//! line live in the `elastica` crate.
#![no_std]
// NaN must fail every guard, and index loops read best in the stencils.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

mod error;
mod fd;
mod math;

pub mod banded;
pub mod curve;
pub mod energy;
pub mod gauge;
pub mod hyperbolic;
pub mod shapes;
pub mod spline;
pub mod verify;

#[cfg(feature = "flow")]
pub mod flow;

pub use curve::{CurveGeometry, DiscreteCurve};
pub use energy::{EnergyReport, GradientField};
pub use error::{Error, Result};
pub use hyperbolic::{HPoint, TangentVec};
