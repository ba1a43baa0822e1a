//! Exact enumeration of colored dissections of convex polygons.
//!
//! A dissection of a convex polygon by noncrossing diagonals is admissible for
//! a [`ModularShape`] `(a, b)` when every cell has `a*j + b` sides for some
//! `j >= 1`, and each such cell may be painted in `c_j` colors
//! ([`ColorWeights`]). The library counts these objects three ways:
//!
//! * closed forms built on partial Bell polynomials ([`census::phat`]),
//! * a quadratic convolution recurrence ([`census::phat_by_recurrence`]),
//! * exhaustive enumeration of small polygons ([`oracle`]).
//!
//! [`scenarios`] specializes the closed form to a number of classical
//! families (Schröder, Fuss-Catalan, triangle-free, ...), and [`crosscheck`]
//! runs all routes against each other.

pub mod bell;
pub mod census;
pub mod cli;
pub mod crosscheck;
mod error;
pub mod oracle;
pub mod scenarios;

pub use bell::{AffineIndexForm, BellArgs};
pub use census::{ColorWeights, CountTable, ModularShape};
pub use error::{Error, Result};
pub use oracle::{Dissection, FaceProfile};
