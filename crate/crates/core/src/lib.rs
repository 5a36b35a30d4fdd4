//! Ear areas, inscribed polygons and extremal ratios for convex polygons.
//!
//! The same geometry runs over `f64` or exact rationals through the
//! [`scalar::Scalar`] trait.

pub mod error;
pub mod extremal;
pub mod families;
pub mod geom;
pub mod inscribed;
pub mod scalar;
pub mod symcheck;

pub use error::{Error, Result};
pub use geom::{AffineMap, AnyPolygon, ConvexPolygon, Vec2};
pub use scalar::{Rational, Scalar};
