use serde::{Deserialize, Serialize};

use crate::error::FinslerError;
use crate::jet::Real;
use crate::lie::{max_abs, Connection, InnerProduct, LieAlgebra, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Randers,
    Matsumoto,
}

impl MetricKind {
    /// Strict upper bound on `‖X̃‖_α`.
    pub fn bound(self) -> f64 {
        match self {
            MetricKind::Randers => 1.0,
            MetricKind::Matsumoto => 0.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Randers => "randers",
            MetricKind::Matsumoto => "matsumoto",
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "randers" => Ok(MetricKind::Randers),
            "matsumoto" => Ok(MetricKind::Matsumoto),
            other => Err(format!("unknown metric kind `{other}`")),
        }
    }
}

/// Verdict of the strict `‖X̃‖_α < bound` test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub norm: f64,
    pub bound: f64,
}

pub fn admissibility_check(g: &InnerProduct, xt: &Vec3, kind: MetricKind) -> Admissibility {
    let norm = g.norm(xt);
    let bound = kind.bound();
    Admissibility {
        admissible: norm < bound,
        norm,
        bound,
    }
}

/// A left-invariant Randers (`α + β`) or Matsumoto (`α²/(α − β)`) metric,
/// with `β(y) = g(X̃, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinslerMetric {
    kind: MetricKind,
    g: InnerProduct,
    xt: Vec3,
    beta: Vec3,
}

impl FinslerMetric {
    /// Builds an admissible metric; boundary values are rejected.
    pub fn new(kind: MetricKind, g: InnerProduct, xt: Vec3) -> Result<Self, FinslerError> {
        let check = admissibility_check(&g, &xt, kind);
        if !check.admissible {
            return Err(FinslerError::Inadmissible {
                kind: kind.name(),
                norm: check.norm,
                bound: check.bound,
            });
        }
        Ok(Self::new_unchecked(kind, g, xt))
    }

    /// Skips the admissibility test; used to probe inadmissible configurations.
    pub fn new_unchecked(kind: MetricKind, g: InnerProduct, xt: Vec3) -> Self {
        Self {
            kind,
            g,
            xt,
            beta: g.lower(&xt),
        }
    }

    pub fn riemannian(g: InnerProduct) -> Self {
        Self::new_unchecked(MetricKind::Randers, g, Vec3::zeros())
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn metric(&self) -> &InnerProduct {
        &self.g
    }

    pub fn deformation(&self) -> Vec3 {
        self.xt
    }

    pub fn admissibility(&self) -> Admissibility {
        admissibility_check(&self.g, &self.xt, self.kind)
    }

    /// `F(y)` over any [`Real`] scalar.
    pub fn eval<S: Real>(&self, y: [S; 3]) -> Result<S, FinslerError> {
        let m = self.g.matrix();
        let mut quad = S::constant(0.0);
        let mut beta = S::constant(0.0);
        for i in 0..3 {
            beta = beta + y[i].scale(self.beta[i]);
            for j in 0..3 {
                quad = quad + (y[i] * y[j]).scale(m[(i, j)]);
            }
        }
        if quad.value() == 0.0 {
            return Ok(S::constant(0.0));
        }
        let alpha = quad.sqrt();
        match self.kind {
            MetricKind::Randers => Ok(alpha + beta),
            MetricKind::Matsumoto => {
                let denom = alpha - beta;
                if !(denom.value() > 0.0) {
                    return Err(FinslerError::OutsideDomain(denom.value()));
                }
                Ok(quad / denom)
            }
        }
    }

    pub fn norm(&self, y: &Vec3) -> Result<f64, FinslerError> {
        self.eval([y[0], y[1], y[2]])
    }
}

/// Outcome of the Berwald test: `X̃` parallel and admissible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerwaldReport {
    pub is_berwald: bool,
    pub parallel: bool,
    pub admissible: bool,
    /// `max_i |∇_{e_i} X̃|`.
    pub residual: f64,
}

/// `conn` must be the Levi-Civita connection of `(alg, F.metric())`.
pub fn berwald_check(_alg: &LieAlgebra, conn: &Connection, f: &FinslerMetric, tol: f64) -> BerwaldReport {
    let xt = f.deformation();
    let residual = (0..3)
        .map(|i| max_abs(&conn.covariant_derivative(&crate::lie::basis(i), &xt)))
        .fold(0.0, f64::max);
    let parallel = residual < tol;
    let admissible = f.admissibility().admissible;
    BerwaldReport {
        is_berwald: parallel && admissible,
        parallel,
        admissible,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case_iii_metric(nu: f64) -> InnerProduct {
        InnerProduct::from_rows([[1.0, 0.5, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, nu]]).unwrap()
    }

    fn case_iii_algebra() -> LieAlgebra {
        LieAlgebra::new(Vec3::zeros(), -Vec3::y(), Vec3::new(0.0, -2.0, 0.0)).unwrap()
    }

    #[test]
    fn zero_deformation_reduces_to_alpha() {
        let g = case_iii_metric(2.0);
        let y = Vec3::new(0.3, -0.4, 1.2);
        for kind in [MetricKind::Randers, MetricKind::Matsumoto] {
            let f = FinslerMetric::new(kind, g, Vec3::zeros()).unwrap();
            assert!((f.norm(&y).unwrap() - g.norm(&y)).abs() < 1e-15);
        }
    }

    #[test]
    fn case_iii_unit_vector_values() {
        let g = case_iii_metric(1.0);
        let p = 0.2;
        let xt = Vec3::new(-2.0 * p, p, 0.0);
        // g-unit vector with first coordinate a
        let u = Vec3::new(0.6, 0.1, 0.0);
        let u = u / g.norm(&u);
        let a = u[0];
        let r = FinslerMetric::new(MetricKind::Randers, g, xt).unwrap();
        assert!((r.norm(&u).unwrap() - (1.0 - 1.5 * p * a)).abs() < 1e-15);
        let m = FinslerMetric::new(MetricKind::Matsumoto, g, xt).unwrap();
        assert!((m.norm(&u).unwrap() - 1.0 / (1.0 + 1.5 * a * p)).abs() < 1e-15);
    }

    #[test]
    fn admissibility_case_5_and_11() {
        let g5 = InnerProduct::diagonal(1.0, 1.0, 4.0).unwrap();
        assert!(admissibility_check(&g5, &(Vec3::z() * 0.49), MetricKind::Randers).admissible);
        assert!(!admissibility_check(&g5, &(Vec3::z() * 0.5), MetricKind::Randers).admissible);
        let g11 = case_iii_metric(1.0);
        let xt = Vec3::new(-1.0, 0.5, 0.0);
        let r = admissibility_check(&g11, &xt, MetricKind::Randers);
        assert!(r.admissible);
        assert!((r.norm - 3f64.sqrt() * 0.5).abs() < 1e-15);
        assert!(!admissibility_check(&g11, &xt, MetricKind::Matsumoto).admissible);
        assert!(admissibility_check(&g11, &Vec3::zeros(), MetricKind::Matsumoto).admissible);
    }

    #[test]
    fn construction_enforces_admissibility() {
        let err = FinslerMetric::new(MetricKind::Matsumoto, InnerProduct::identity(), Vec3::x() * 0.5);
        assert!(matches!(err, Err(FinslerError::Inadmissible { .. })));
    }

    #[test]
    fn matsumoto_domain_guard() {
        let f = FinslerMetric::new_unchecked(MetricKind::Matsumoto, InnerProduct::identity(), Vec3::x() * 1.5);
        assert!(matches!(f.norm(&Vec3::x()), Err(FinslerError::OutsideDomain(_))));
    }

    #[test]
    fn berwald_cases() {
        let alg = LieAlgebra::abelian();
        let g = InnerProduct::identity();
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let f = FinslerMetric::new(MetricKind::Randers, g, Vec3::new(0.3, 0.2, -0.1)).unwrap();
        assert!(berwald_check(&alg, &conn, &f, 1e-9).is_berwald);

        let alg = case_iii_algebra();
        let g = case_iii_metric(1.3);
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let f = FinslerMetric::new(MetricKind::Randers, g, Vec3::new(-0.6, 0.3, 0.0)).unwrap();
        assert!(berwald_check(&alg, &conn, &f, 1e-9).is_berwald);

        let alg = LieAlgebra::new(Vec3::z(), Vec3::zeros(), Vec3::zeros()).unwrap();
        let g = InnerProduct::identity();
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let f = FinslerMetric::new_unchecked(MetricKind::Randers, g, Vec3::z());
        let report = berwald_check(&alg, &conn, &f, 1e-9);
        assert!(!report.is_berwald);
        assert!((report.residual - 0.5).abs() < 1e-15);
    }
}
