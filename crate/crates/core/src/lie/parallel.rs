use nalgebra::{SMatrix, SVD};
use serde::Serialize;

use super::{max_abs, Connection, Vec3};

/// Basis of the left-invariant fields `X` with `∇_Y X = 0` for every `Y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParallelFields {
    /// Orthonormal in the coordinate dot product; empty when only zero is parallel.
    pub basis: Vec<[f64; 3]>,
    /// Singular values of the stacked 9×3 system, descending.
    pub singular_values: [f64; 3],
    pub tol: f64,
}

impl ParallelFields {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> Vec<Vec3> {
        self.basis.iter().map(|b| Vec3::from(*b)).collect()
    }

    /// Whether `v` lies in the span of the basis, up to `tol` relative to `|v|`.
    pub fn contains(&self, v: &Vec3, tol: f64) -> bool {
        let mut rest = *v;
        for b in self.vectors() {
            rest -= b * b.dot(v);
        }
        rest.norm() <= tol * v.norm().max(f64::MIN_POSITIVE)
    }
}

/// Nullspace of `v ↦ (∇_{e_1} v, ∇_{e_2} v, ∇_{e_3} v)`.
///
/// Rank is decided by singular values: `σ ≤ tol · σ_max` counts as zero.
pub fn parallel_fields(conn: &Connection, tol: f64) -> ParallelFields {
    // column j of block i is ∇_{e_i} e_j
    let system = SMatrix::<f64, 9, 3>::from_fn(|row, col| conn.nabla(row / 3, col)[row % 3]);
    let svd = SVD::new(system, false, true);
    let v_t = svd.v_t.expect("requested V^T");

    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values = order.map(|i| svd.singular_values[i]);
    let threshold = tol * singular_values[0];

    let basis: Vec<Vec3> = if singular_values[0] == 0.0 {
        vec![Vec3::x(), Vec3::y(), Vec3::z()]
    } else {
        order
            .iter()
            .filter(|&&i| svd.singular_values[i] <= threshold)
            .map(|&i| canonical_sign(v_t.row(i).transpose().normalize()))
            .collect()
    };

    ParallelFields {
        basis: basis.iter().map(|v| [v[0], v[1], v[2]]).collect(),
        singular_values,
        tol,
    }
}

/// Flips `v` so that its last significant coordinate is positive.
fn canonical_sign(mut v: Vec3) -> Vec3 {
    let cutoff = 1e-12 * max_abs(&v);
    for c in v.iter_mut() {
        if c.abs() <= cutoff {
            *c = 0.0;
        }
    }
    if let Some(last) = v.iter().rev().find(|c| **c != 0.0) {
        if *last < 0.0 {
            v = -v;
        }
    }
    v.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{InnerProduct, LieAlgebra};

    #[test]
    fn zero_connection_everything_parallel() {
        let p = parallel_fields(&Connection::zero(), 1e-9);
        assert_eq!(p.dimension(), 3);
    }

    #[test]
    fn case_iii_has_one_parallel_direction() {
        let alg = LieAlgebra::new(Vec3::zeros(), -Vec3::y(), Vec3::new(0.0, -2.0, 0.0)).unwrap();
        let g = InnerProduct::from_rows([[1.0, 0.5, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, 3.0]]).unwrap();
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let p = parallel_fields(&conn, 1e-9);
        assert_eq!(p.dimension(), 1);
        let expected = Vec3::new(-2.0, 1.0, 0.0) / 5f64.sqrt();
        assert!((p.vectors()[0] - expected).norm() < 1e-12);
        assert!(p.contains(&Vec3::new(4.0, -2.0, 0.0), 1e-9));
        assert!(!p.contains(&Vec3::z(), 1e-9));
    }

    #[test]
    fn heisenberg_has_none() {
        let alg = LieAlgebra::new(Vec3::z(), Vec3::zeros(), Vec3::zeros()).unwrap();
        let conn = Connection::levi_civita(&alg, &InnerProduct::identity()).unwrap();
        let p = parallel_fields(&conn, 1e-9);
        assert_eq!(p.dimension(), 0);
        assert!(p.singular_values[2] > 0.1);
    }
}
