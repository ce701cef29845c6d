//! Numerical engine for left-invariant Randers and Matsumoto metrics of
//! Berwald type on 3-dimensional Lie groups.
//!
//! * [`lie`]: brackets, metrics, the Koszul connection, curvature and
//!   parallel fields.
//! * [`finsler`]: the two deformations, admissibility, the Berwald test
//!   and the fundamental tensor.
//! * [`flag`]: flag curvature, both from the definition and from the closed
//!   forms on `G_0`.
//! * [`catalog`]: the fifteen rows of simply connected 3-dimensional groups
//!   with their printed connections, and the classification driver.

// `!(x < tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tensor code reads best in index notation.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod finsler;
pub mod flag;
pub mod io;
pub mod jet;
pub mod lie;
pub mod sampling;

pub use error::{CatalogError, FinslerError, FlagError, GeometryError};
pub use lie::Vec3;
