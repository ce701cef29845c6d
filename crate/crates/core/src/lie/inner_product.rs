use nalgebra::{Cholesky, Matrix3};

use super::Vec3;
use crate::error::GeometryError;

/// A left-invariant Riemannian metric, stored as its Gram matrix on the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProduct {
    matrix: Matrix3<f64>,
}

impl InnerProduct {
    /// Accepts exactly symmetric, positive-definite matrices.
    pub fn new(matrix: Matrix3<f64>) -> Result<Self, GeometryError> {
        if matrix.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite("metric matrix"));
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(GeometryError::NotSymmetric {
                        i,
                        j,
                        gap: (matrix[(i, j)] - matrix[(j, i)]).abs(),
                    });
                }
            }
        }
        let minors = leading_minors(&matrix);
        if let Some((order, &value)) = minors.iter().enumerate().find(|(_, m)| **m <= 0.0) {
            return Err(GeometryError::NotPositiveDefinite {
                order: order + 1,
                value,
            });
        }
        Ok(Self { matrix })
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self, GeometryError> {
        Self::new(Matrix3::from_fn(|i, j| rows[i][j]))
    }

    pub fn identity() -> Self {
        Self {
            matrix: Matrix3::identity(),
        }
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Result<Self, GeometryError> {
        Self::new(Matrix3::from_diagonal(&Vec3::new(a, b, c)))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = &self.matrix;
        [0, 1, 2].map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]])
    }

    pub fn inner(&self, u: &Vec3, v: &Vec3) -> f64 {
        u.dot(&(self.matrix * v))
    }

    pub fn norm(&self, u: &Vec3) -> f64 {
        self.inner(u, u).sqrt()
    }

    /// Lowers an index: the covector `g(v, ·)` in frame components.
    pub fn lower(&self, v: &Vec3) -> Vec3 {
        self.matrix * v
    }

    /// Solves `g(w, ·) = covector` for `w`.
    pub fn raise(&self, covector: &Vec3) -> Vec3 {
        // PD was checked at construction
        Cholesky::new(self.matrix)
            .expect("positive-definite metric")
            .solve(covector)
    }
}

/// Leading principal minors of a 3×3 matrix, orders 1..=3.
pub fn leading_minors(m: &Matrix3<f64>) -> [f64; 3] {
    let d1 = m[(0, 0)];
    let d2 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    [d1, d2, m.determinant()]
}
