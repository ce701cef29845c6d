//! Left-invariant Randers and Matsumoto metrics.

mod metric;
mod minkowski;
mod tensor;

pub use metric::{admissibility_check, berwald_check, Admissibility, BerwaldReport, FinslerMetric, MetricKind};
pub use minkowski::{minkowski_check, MinkowskiReport, HOMOGENEITY_FACTORS};
pub use tensor::{fundamental_tensor, fundamental_tensor_fd, fundamental_tensor_matrix};
