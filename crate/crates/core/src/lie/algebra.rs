use serde::Serialize;

use super::{basis, max_abs, Vec3};
use crate::error::GeometryError;

/// A 3-dimensional real Lie algebra given by its frame brackets.
///
/// Only `[x,y]`, `[x,z]` and `[y,z]` are stored; the remaining brackets
/// follow from antisymmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieAlgebra {
    upper: [Vec3; 3],
}

/// Outcome of a Jacobi-identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiReport {
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl LieAlgebra {
    /// Builds an algebra from `[x,y]`, `[x,z]`, `[y,z]`.
    pub fn new(xy: Vec3, xz: Vec3, yz: Vec3) -> Result<Self, GeometryError> {
        if [xy, xz, yz].iter().any(|v| v.iter().any(|c| !c.is_finite())) {
            return Err(GeometryError::NonFinite("bracket table"));
        }
        Ok(Self { upper: [xy, xz, yz] })
    }

    pub fn abelian() -> Self {
        Self {
            upper: [Vec3::zeros(); 3],
        }
    }

    /// `[x,y]`, `[x,z]`, `[y,z]` in that order.
    pub fn brackets(&self) -> [Vec3; 3] {
        self.upper
    }

    /// `[e_i, e_j]`.
    pub fn frame_bracket(&self, i: usize, j: usize) -> Vec3 {
        match (i, j) {
            (0, 1) => self.upper[0],
            (0, 2) => self.upper[1],
            (1, 2) => self.upper[2],
            _ if i == j => Vec3::zeros(),
            _ => -self.frame_bracket(j, i),
        }
    }

    /// Structure constant `c^k_ij`.
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.frame_bracket(i, j)[k]
    }

    pub fn bracket(&self, u: &Vec3, v: &Vec3) -> Vec3 {
        let mut out = Vec3::zeros();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let w = u[i] * v[j] - u[j] * v[i];
                if w != 0.0 {
                    out += self.frame_bracket(i, j) * w;
                }
            }
        }
        out
    }

    /// Largest absolute structure constant.
    pub fn scale(&self) -> f64 {
        self.upper.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// Max over frame triples of `|[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]|`.
    pub fn jacobi_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let (a, b, c) = (basis(i), basis(j), basis(k));
                    let s = self.bracket(&self.bracket(&a, &b), &c)
                        + self.bracket(&self.bracket(&b, &c), &a)
                        + self.bracket(&self.bracket(&c, &a), &b);
                    worst = worst.max(max_abs(&s));
                }
            }
        }
        worst
    }

    pub fn validate(&self, tol: f64) -> JacobiReport {
        let residual = self.jacobi_residual();
        JacobiReport {
            residual,
            tol,
            pass: residual <= tol,
        }
    }

    /// Fails when the Jacobi residual exceeds `tol` relative to the squared
    /// bracket scale.
    pub(crate) fn ensure_jacobi(&self, tol: f64) -> Result<(), GeometryError> {
        let scale = self.scale();
        let residual = self.jacobi_residual();
        if residual > tol * (1.0 + scale * scale) {
            return Err(GeometryError::JacobiViolated { residual });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: f64, b: f64, c: f64) -> Vec3 {
        Vec3::new(a, b, c)
    }

    #[test]
    fn abelian_passes_with_zero_residual() {
        let r = LieAlgebra::abelian().validate(1e-12);
        assert!(r.pass);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn heisenberg_passes() {
        let alg = LieAlgebra::new(v(0., 0., 1.), Vec3::zeros(), Vec3::zeros()).unwrap();
        assert!(alg.validate(1e-12).pass);
    }

    #[test]
    fn tampered_su2_fails() {
        let alg = LieAlgebra::new(v(0., 0., 1.), v(0., -1., 0.), v(1., 0., 0.1)).unwrap();
        let r = alg.validate(1e-9);
        assert!(!r.pass);
        // [[x,y],z] + [[y,z],x] + [[z,x],y] picks up 0.1·[z,x] = 0.1·y, i.e. 0.1 in y
        assert!((r.residual - 0.1).abs() < 1e-12, "residual {}", r.residual);
    }

    #[test]
    fn bracket_is_antisymmetric_by_construction() {
        let alg = LieAlgebra::new(v(0., 0., 2.), v(0., -2., 0.), v(-2., 0., 0.)).unwrap();
        let a = v(0.3, -1.2, 2.0);
        let b = v(1.5, 0.25, -0.7);
        assert_eq!(alg.bracket(&a, &b), -alg.bracket(&b, &a));
        assert_eq!(alg.frame_bracket(2, 0), -alg.frame_bracket(0, 2));
        assert_eq!(alg.structure_constant(1, 2, 0), 2.0);
    }

    #[test]
    fn rejects_nan() {
        assert!(LieAlgebra::new(v(f64::NAN, 0., 0.), Vec3::zeros(), Vec3::zeros()).is_err());
    }
}
