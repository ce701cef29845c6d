use super::{basis, max_abs, Connection, InnerProduct, LieAlgebra, Vec3};

/// Riemann tensor on the frame: `r[i][j][k] = R(e_i, e_j) e_k`, with
/// `R(X,Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_[X,Y] Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTensor {
    r: [[[Vec3; 3]; 3]; 3],
}

impl CurvatureTensor {
    pub fn zero() -> Self {
        Self {
            r: [[[Vec3::zeros(); 3]; 3]; 3],
        }
    }

    pub fn from_components(r: [[[Vec3; 3]; 3]; 3]) -> Self {
        Self { r }
    }

    /// Curvature of a left-invariant connection. Frame fields have constant
    /// coefficients, so `∇_X (∇_Y Z)` is just another table lookup.
    pub fn of_connection(alg: &LieAlgebra, conn: &Connection) -> Self {
        let mut r = [[[Vec3::zeros(); 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let ei = basis(i);
                let ej = basis(j);
                let bracket = alg.frame_bracket(i, j);
                for k in 0..3 {
                    r[i][j][k] = conn.covariant_derivative(&ei, &conn.nabla(j, k))
                        - conn.covariant_derivative(&ej, &conn.nabla(i, k))
                        - conn.covariant_derivative(&bracket, &basis(k));
                }
            }
        }
        Self { r }
    }

    /// `R(e_i, e_j) e_k`.
    pub fn component(&self, i: usize, j: usize, k: usize) -> Vec3 {
        self.r[i][j][k]
    }

    /// `R(X, Y) Z`, trilinear extension.
    pub fn apply(&self, x: &Vec3, y: &Vec3, z: &Vec3) -> Vec3 {
        let mut out = Vec3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let xy = x[i] * y[j];
                if xy == 0.0 {
                    continue;
                }
                for k in 0..3 {
                    out += self.r[i][j][k] * (xy * z[k]);
                }
            }
        }
        out
    }

    pub fn max_component(&self) -> f64 {
        self.r.iter().flatten().flatten().map(max_abs).fold(0.0, f64::max)
    }

    /// Largest componentwise difference to another tensor.
    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    worst = worst.max(max_abs(&(self.r[i][j][k] - other.r[i][j][k])));
                }
            }
        }
        worst
    }

    /// `max |R(e_i,e_j)e_k + R(e_j,e_i)e_k|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    worst = worst.max(max_abs(&(self.r[i][j][k] + self.r[j][i][k])));
                }
            }
        }
        worst
    }

    /// First Bianchi identity residual.
    pub fn bianchi_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let s = self.r[i][j][k] + self.r[j][k][i] + self.r[k][i][j];
                    worst = worst.max(max_abs(&s));
                }
            }
        }
        worst
    }

    /// `max |⟨R(e_i,e_j)e_k, e_l⟩ − ⟨R(e_k,e_l)e_i, e_j⟩|`.
    pub fn pair_symmetry_residual(&self, g: &InnerProduct) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let a = g.inner(&self.r[i][j][k], &basis(l));
                        let b = g.inner(&self.r[k][l][i], &basis(j));
                        worst = worst.max((a - b).abs());
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn case_iii(nu: f64) -> (LieAlgebra, InnerProduct) {
        let alg = LieAlgebra::new(Vec3::zeros(), -Vec3::y(), Vec3::new(0.0, -2.0, 0.0)).unwrap();
        let g = InnerProduct::from_rows([[1.0, 0.5, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, nu]]).unwrap();
        (alg, g)
    }

    #[test]
    fn flat_abelian() {
        let alg = LieAlgebra::abelian();
        let conn = Connection::levi_civita(&alg, &InnerProduct::identity()).unwrap();
        assert_eq!(CurvatureTensor::of_connection(&alg, &conn).max_component(), 0.0);
    }

    #[test]
    fn case_iii_unit_nu_block() {
        let (alg, g) = case_iii(1.0);
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let r = CurvatureTensor::of_connection(&alg, &conn);
        assert_abs_diff_eq!(r.component(0, 2, 0), Vec3::z(), epsilon = 1e-14);
        assert_abs_diff_eq!(r.component(0, 2, 2), Vec3::y() * -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.component(1, 2, 1), Vec3::z() * 4.0, epsilon = 1e-14);
        assert!(r.antisymmetry_residual() < 1e-14);
        assert!(r.bianchi_residual() < 1e-14);
        assert!(r.pair_symmetry_residual(&g) < 1e-14);
    }

    #[test]
    fn apply_matches_components() {
        let (alg, g) = case_iii(2.5);
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let r = CurvatureTensor::of_connection(&alg, &conn);
        assert_eq!(r.apply(&Vec3::y(), &Vec3::z(), &Vec3::x()), r.component(1, 2, 0));
    }
}
