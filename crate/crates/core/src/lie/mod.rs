//! Lie algebras, left-invariant metrics and their Levi-Civita geometry.
//!
//! Everything here lives on the Lie algebra: left-invariant fields are
//! identified with their coordinates in the fixed frame `(x, y, z)`, so all
//! derivative terms reduce to compositions of connection coefficients.

mod algebra;
mod connection;
mod curvature;
mod inner_product;
mod parallel;
mod plane;

pub use algebra::{JacobiReport, LieAlgebra};
pub use connection::Connection;
pub use curvature::CurvatureTensor;
pub use inner_product::{leading_minors, InnerProduct};
pub use parallel::{parallel_fields, ParallelFields};
pub use plane::{gram_schmidt, sectional_curvature};

/// Coordinates of a Lie algebra element in the frame `(x, y, z)`.
pub type Vec3 = nalgebra::Vector3<f64>;

/// Frame labels in storage order.
pub const FRAME: [&str; 3] = ["x", "y", "z"];

/// The `i`-th frame vector.
pub fn basis(i: usize) -> Vec3 {
    let mut v = Vec3::zeros();
    v[i] = 1.0;
    v
}

pub(crate) fn max_abs(v: &Vec3) -> f64 {
    v.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
}
