//! Exact computational geometry for mutually avoiding point sets, crossing
//! families and their positive-fraction variants.

pub mod avoidance;
pub(crate) mod combin;
pub mod error;
pub mod fractional;
pub mod geometry;
pub mod highdim;
pub mod lp;
pub mod sametype;
pub mod toolkit;

pub use error::{Error, Result};
pub use geometry::{Hyperplane, Orientation, Point, PointSeq, Rational};
