use super::{CurvatureTensor, InnerProduct, Vec3};
use crate::error::GeometryError;

/// Normalized Gram determinants below this count as dependent.
const DEPENDENCE_TOL: f64 = 1e-12;

/// Orthonormalizes `vs` with respect to `g`, preserving the flag of spans.
pub fn gram_schmidt(g: &InnerProduct, vs: &[Vec3]) -> Result<Vec<Vec3>, GeometryError> {
    let n = vs.len();
    let gram = nalgebra::DMatrix::from_fn(n, n, |i, j| g.inner(&vs[i], &vs[j]));
    let scale: f64 = (0..n).map(|i| gram[(i, i)]).product();
    let normalized = if scale > 0.0 { gram.determinant() / scale } else { 0.0 };
    if n > 3 || !(normalized > DEPENDENCE_TOL) {
        return Err(GeometryError::Degenerate { gram: normalized });
    }

    let mut out: Vec<Vec3> = Vec::with_capacity(n);
    for v in vs {
        let mut w = *v;
        for u in &out {
            w -= u * g.inner(u, &w);
        }
        out.push(w / g.norm(&w));
    }
    Ok(out)
}

/// Riemannian sectional curvature of the plane spanned by `u`, `v`:
/// `⟨R(v,u)u, v⟩ / (⟨u,u⟩⟨v,v⟩ − ⟨u,v⟩²)`.
pub fn sectional_curvature(g: &InnerProduct, r: &CurvatureTensor, u: &Vec3, v: &Vec3) -> Result<f64, GeometryError> {
    let uu = g.inner(u, u);
    let vv = g.inner(v, v);
    let uv = g.inner(u, v);
    let denom = uu * vv - uv * uv;
    let normalized = if uu * vv > 0.0 { denom / (uu * vv) } else { 0.0 };
    if !(normalized > DEPENDENCE_TOL) {
        return Err(GeometryError::Degenerate { gram: normalized });
    }
    Ok(g.inner(&r.apply(v, u, u), v) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{Connection, LieAlgebra};

    fn case_iii_unit() -> (LieAlgebra, InnerProduct) {
        let alg = LieAlgebra::new(Vec3::zeros(), -Vec3::y(), Vec3::new(0.0, -2.0, 0.0)).unwrap();
        let g = InnerProduct::from_rows([[1.0, 0.5, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        (alg, g)
    }

    #[test]
    fn identity_metric_keeps_frame() {
        let out = gram_schmidt(&InnerProduct::identity(), &[Vec3::x(), Vec3::y()]).unwrap();
        assert_eq!(out, vec![Vec3::x(), Vec3::y()]);
    }

    #[test]
    fn skewed_metric_hand_computed() {
        let (_, g) = case_iii_unit();
        let out = gram_schmidt(&g, &[Vec3::x(), Vec3::y()]).unwrap();
        let expected = (Vec3::y() - Vec3::x() * 0.5) / 0.75f64.sqrt();
        assert!((out[0] - Vec3::x()).norm() < 1e-15);
        assert!((out[1] - expected).norm() < 1e-15);
        assert!(g.inner(&out[0], &out[1]).abs() < 1e-15);
    }

    #[test]
    fn dependent_input_is_rejected() {
        let err = gram_schmidt(&InnerProduct::identity(), &[Vec3::x(), Vec3::x() * 2.0]);
        assert!(matches!(err, Err(GeometryError::Degenerate { .. })));
    }

    #[test]
    fn sectional_case_iii() {
        let (alg, g) = case_iii_unit();
        let conn = Connection::levi_civita(&alg, &g).unwrap();
        let r = CurvatureTensor::of_connection(&alg, &conn);
        let k = sectional_curvature(&g, &r, &Vec3::z(), &Vec3::x()).unwrap();
        assert!((k + 1.0).abs() < 1e-14);
        let k2 = sectional_curvature(&g, &r, &(Vec3::z() * 2.0), &Vec3::x()).unwrap();
        assert!((k2 - k).abs() < 1e-14);
        assert_eq!(
            sectional_curvature(
                &InnerProduct::identity(),
                &CurvatureTensor::zero(),
                &Vec3::x(),
                &Vec3::y()
            )
            .unwrap(),
            0.0
        );
        assert!(sectional_curvature(&g, &r, &Vec3::x(), &(Vec3::x() * -3.0)).is_err());
    }
}
