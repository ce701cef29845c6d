use super::{basis, max_abs, InnerProduct, LieAlgebra, Vec3};
use crate::error::GeometryError;

/// Jacobi tolerance applied before the Koszul construction.
const JACOBI_TOL: f64 = 1e-12;

/// A left-invariant affine connection: `gamma[i][j] = ∇_{e_i} e_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Connection {
    gamma: [[Vec3; 3]; 3],
}

impl Connection {
    pub fn zero() -> Self {
        Self {
            gamma: [[Vec3::zeros(); 3]; 3],
        }
    }

    pub fn from_table(gamma: [[Vec3; 3]; 3]) -> Self {
        Self { gamma }
    }

    /// The Levi-Civita connection of a left-invariant metric.
    ///
    /// Left-invariant fields have constant inner products, so the Koszul
    /// formula reduces to
    /// `2⟨∇_X Y, Z⟩ = ⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩`.
    pub fn levi_civita(alg: &LieAlgebra, g: &InnerProduct) -> Result<Self, GeometryError> {
        alg.ensure_jacobi(JACOBI_TOL)?;
        let mut gamma = [[Vec3::zeros(); 3]; 3];
        for (i, row) in gamma.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut rhs = Vec3::zeros();
                for k in 0..3 {
                    let (ei, ej, ek) = (basis(i), basis(j), basis(k));
                    rhs[k] = 0.5
                        * (g.inner(&alg.frame_bracket(i, j), &ek) - g.inner(&alg.frame_bracket(j, k), &ei)
                            + g.inner(&alg.frame_bracket(k, i), &ej));
                }
                *entry = g.raise(&rhs);
            }
        }
        Ok(Self { gamma })
    }

    /// `∇_{e_i} e_j`.
    pub fn nabla(&self, i: usize, j: usize) -> Vec3 {
        self.gamma[i][j]
    }

    /// Christoffel symbol `Γ^k_ij`.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[i][j][k]
    }

    pub fn table(&self) -> [[Vec3; 3]; 3] {
        self.gamma
    }

    /// `∇_X Y` for left-invariant `X`, `Y`.
    pub fn covariant_derivative(&self, x: &Vec3, y: &Vec3) -> Vec3 {
        let mut out = Vec3::zeros();
        for i in 0..3 {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..3 {
                out += self.gamma[i][j] * (x[i] * y[j]);
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.gamma.iter().flatten().map(max_abs).fold(0.0, f64::max)
    }

    /// `max |Γ^k_ij − Γ^k_ji − c^k_ij|`.
    pub fn torsion_residual(&self, alg: &LieAlgebra) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let t = self.gamma[i][j] - self.gamma[j][i] - alg.frame_bracket(i, j);
                worst = worst.max(max_abs(&t));
            }
        }
        worst
    }

    /// `max |⟨∇_i e_j, e_k⟩ + ⟨e_j, ∇_i e_k⟩|`.
    pub fn compatibility_residual(&self, g: &InnerProduct) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let r = g.inner(&self.gamma[i][j], &basis(k)) + g.inner(&basis(j), &self.gamma[i][k]);
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}
