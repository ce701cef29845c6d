//! Flag curvature of Berwald-type Randers and Matsumoto metrics.
//!
//! For a Berwald metric the Chern and Levi-Civita connections coincide, so
//! the Riemannian curvature tensor of the underlying metric is fed directly
//! into `K(P,Y) = g_Y(R(U,Y)Y, U) / (g_Y(Y,Y) g_Y(U,U) − g_Y(Y,U)²)`.
//!
//! The second half of the module holds the closed forms for the
//! non-unimodular group `G_0` (catalog row 11), used to cross-check the
//! general pipeline.

use rand::Rng;
use serde::Serialize;

use crate::catalog::{instantiate, params};
use crate::error::{FinslerError, FlagError};
use crate::finsler::{admissibility_check, berwald_check, fundamental_tensor, FinslerMetric, MetricKind};
use crate::lie::{gram_schmidt, Connection, CurvatureTensor, InnerProduct, LieAlgebra, Vec3};
use crate::sampling::{log_uniform, seeded, unit_sphere};

/// Normalized denominators at or below this mark a degenerate flag.
const FLAG_TOL: f64 = 1e-12;

/// Gram-matrix tolerance for the closed-form inputs.
pub const ORTHONORMAL_TOL: f64 = 1e-9;

/// A flag: the plane `span{pole, transverse}` with flagpole `pole`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flag {
    pole: Vec3,
    transverse: Vec3,
}

impl Flag {
    pub fn new(pole: Vec3, transverse: Vec3) -> Result<Self, FlagError> {
        let scale = pole.norm() * transverse.norm();
        let sine = if scale > 0.0 {
            pole.cross(&transverse).norm() / scale
        } else {
            0.0
        };
        if !(sine > FLAG_TOL) {
            return Err(FlagError::DegenerateFlag(sine));
        }
        Ok(Self { pole, transverse })
    }

    pub fn pole(&self) -> Vec3 {
        self.pole
    }

    pub fn transverse(&self) -> Vec3 {
        self.transverse
    }
}

/// Flag curvature from the definition. `r` must be the curvature of the
/// metric's Levi-Civita connection and the metric must be Berwald.
pub fn flag_curvature_general(f: &FinslerMetric, r: &CurvatureTensor, flag: &Flag) -> Result<f64, FlagError> {
    let y = flag.pole;
    let u = flag.transverse;
    let numerator = fundamental_tensor(f, &y, &r.apply(&u, &y, &y), &u)?;
    let gyy = fundamental_tensor(f, &y, &y, &y)?;
    let guu = fundamental_tensor(f, &y, &u, &u)?;
    let gyu = fundamental_tensor(f, &y, &y, &u)?;
    let denominator = gyy * guu - gyu * gyu;
    let normalized = denominator / (gyy * guu);
    if !(normalized > FLAG_TOL) {
        return Err(FlagError::DegenerateFlag(normalized));
    }
    Ok(numerator / denominator)
}

/// A Randers or Matsumoto metric verified to be of Berwald type, together
/// with its (shared) connection and curvature.
#[derive(Debug, Clone)]
pub struct BerwaldSpace {
    algebra: LieAlgebra,
    finsler: FinslerMetric,
    connection: Connection,
    curvature: CurvatureTensor,
}

impl BerwaldSpace {
    pub fn new(algebra: LieAlgebra, finsler: FinslerMetric, tol: f64) -> Result<Self, FlagError> {
        let connection = Connection::levi_civita(&algebra, finsler.metric())?;
        let report = berwald_check(&algebra, &connection, &finsler, tol);
        if !report.admissible {
            let a = finsler.admissibility();
            return Err(FinslerError::Inadmissible {
                kind: finsler.kind().name(),
                norm: a.norm,
                bound: a.bound,
            }
            .into());
        }
        if !report.parallel {
            return Err(FlagError::NotBerwald(report.residual));
        }
        let curvature = CurvatureTensor::of_connection(&algebra, &connection);
        Ok(Self {
            algebra,
            finsler,
            connection,
            curvature,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn finsler(&self) -> &FinslerMetric {
        &self.finsler
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn curvature(&self) -> &CurvatureTensor {
        &self.curvature
    }

    pub fn flag_curvature(&self, flag: &Flag) -> Result<f64, FlagError> {
        flag_curvature_general(&self.finsler, &self.curvature, flag)
    }
}

/// Metric of row 11 (`G_0` with the skew metric).
pub fn case_iii_metric(nu: f64) -> Result<InnerProduct, FlagError> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(FlagError::InvalidNu(nu));
    }
    Ok(instantiate(11, &params(&[("nu", nu)]))
        .expect("nu > 0 is in domain")
        .metric)
}

fn case_iii_algebra() -> LieAlgebra {
    instantiate(11, &params(&[("nu", 1.0)]))
        .expect("row 11 instantiates")
        .algebra
}

/// The parallel deformation `X̃ = −2p x + p y`.
pub fn case_iii_deformation(p: f64) -> Vec3 {
    Vec3::new(-2.0 * p, p, 0.0)
}

/// Input of the closed forms: a `g`-orthonormal pair `U = (a,b,c)`,
/// `V = (ã,b̃,c̃)` with flagpole `U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseIIIFlagInput {
    pub p: f64,
    pub nu: f64,
    pub u: [f64; 3],
    pub v: [f64; 3],
}

impl CaseIIIFlagInput {
    pub fn new(p: f64, nu: f64, u: Vec3, v: Vec3) -> Result<Self, FlagError> {
        let g = case_iii_metric(nu)?;
        let deviation = (g.inner(&u, &u) - 1.0)
            .abs()
            .max((g.inner(&v, &v) - 1.0).abs())
            .max(g.inner(&u, &v).abs());
        if !(deviation <= ORTHONORMAL_TOL) {
            return Err(FlagError::NotOrthonormal(deviation));
        }
        if !p.is_finite() {
            return Err(FlagError::Geometry(crate::error::GeometryError::NonFinite("p")));
        }
        Ok(Self {
            p,
            nu,
            u: [u[0], u[1], u[2]],
            v: [v[0], v[1], v[2]],
        })
    }

    pub fn flag(&self) -> Flag {
        Flag {
            pole: Vec3::from(self.u),
            transverse: Vec3::from(self.v),
        }
    }

    fn require(&self, kind: MetricKind) -> Result<(), FlagError> {
        let g = case_iii_metric(self.nu)?;
        let a = admissibility_check(&g, &case_iii_deformation(self.p), kind);
        if !a.admissible {
            return Err(FinslerError::Inadmissible {
                kind: kind.name(),
                norm: a.norm,
                bound: a.bound,
            }
            .into());
        }
        Ok(())
    }
}

/// `c(ã + 2b̃) − c̃(a + 2b)`; the Matsumoto form uses its negative, which
/// only ever appears squared.
fn plane_factor(input: &CaseIIIFlagInput) -> f64 {
    let [a, b, c] = input.u;
    let [at, bt, ct] = input.v;
    c * (at + 2.0 * bt) - ct * (a + 2.0 * b)
}

/// `K(P,U) = −4 ((c(ã+2b̃) − c̃(a+2b)) / (3pa − 2))²`; never positive.
pub fn randers_case_iii_closed_form(input: &CaseIIIFlagInput) -> Result<f64, FlagError> {
    input.require(MetricKind::Randers)?;
    let a = input.u[0];
    let q = plane_factor(input) / (3.0 * input.p * a - 2.0);
    Ok(-4.0 * q * q)
}

fn matsumoto_numerator(input: &CaseIIIFlagInput) -> f64 {
    let [a, b, c] = input.u;
    let [at, bt, ct] = input.v;
    let ap = a * input.p;
    let s = ct * a - at * c + 2.0 * (ct * b - bt * c);
    -(2.0 + 3.0 * ap).powi(3) * (1.0 + 3.0 * ap) * s * s
}

fn matsumoto_closed(input: &CaseIIIFlagInput, at2_coefficient: f64) -> Result<f64, FlagError> {
    input.require(MetricKind::Matsumoto)?;
    let a = input.u[0];
    let at = input.v[0];
    let p = input.p;
    let denominator = 2.0 * (4.0 + 18.0 * a * a * p * p + 18.0 * a * p + at2_coefficient * at * at * p * p);
    if denominator.abs() < 1e-12 {
        return Err(FlagError::ZeroDenominator(denominator));
    }
    Ok(matsumoto_numerator(input) / denominator)
}

/// The Matsumoto closed form as published:
/// `−(2+3ap)³(1+3ap)(c̃a−ãc+2(c̃b−b̃c))² / (2(4+18a²p²+18ap−27ã²p²))`.
///
/// Disagrees with the definitional pipeline whenever `ã·p ≠ 0`; see
/// [`matsumoto_case_iii_rederived`].
pub fn matsumoto_case_iii_closed_form(input: &CaseIIIFlagInput) -> Result<f64, FlagError> {
    matsumoto_closed(input, -27.0)
}

/// The Matsumoto closed form rederived from the fundamental tensor.
///
/// With `g_U(V,V) = (1 + 9/2 (a²p² + ap) + 27/4 ã²p²) / (1 + 3/2 ap)⁴` the
/// determinant term becomes `4 + 18a²p² + 18ap + 18ã²p²`.
pub fn matsumoto_case_iii_rederived(input: &CaseIIIFlagInput) -> Result<f64, FlagError> {
    matsumoto_closed(input, 18.0)
}

/// Runs the general pipeline on the row-11 Berwald space.
pub fn case_iii_pipeline(kind: MetricKind, input: &CaseIIIFlagInput) -> Result<f64, FlagError> {
    let g = case_iii_metric(input.nu)?;
    let f = FinslerMetric::new(kind, g, case_iii_deformation(input.p))?;
    let space = BerwaldSpace::new(case_iii_algebra(), f, 1e-9)?;
    space.flag_curvature(&input.flag())
}

/// The hand-derived curvature of row 11.
pub fn curvature_case_iii(nu: f64) -> Result<CurvatureTensor, FlagError> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(FlagError::InvalidNu(nu));
    }
    let mut r = [[[Vec3::zeros(); 3]; 3]; 3];
    let (x, y, z) = (0, 1, 2);
    let zn = Vec3::z() / nu;
    let mut set = |i: usize, j: usize, k: usize, value: Vec3| {
        r[i][j][k] = value;
        r[j][i][k] = -value;
    };
    set(x, z, x, zn);
    set(x, z, y, zn * 2.0);
    set(y, z, x, zn * 2.0);
    set(y, z, y, zn * 4.0);
    set(x, z, z, Vec3::y() * -2.0);
    set(y, z, z, Vec3::y() * -4.0);
    Ok(CurvatureTensor::from_components(r))
}

/// `R(V,U)U = δ z + σ y` on row 11, with `T = ãc − c̃a + 2(b̃c − c̃b)`,
/// `δ = (a + 2b) T / ν` and `σ = −2c T`.
pub fn rvuu_case_iii(nu: f64, u: &Vec3, v: &Vec3) -> Vec3 {
    let (a, b, c) = (u[0], u[1], u[2]);
    let (at, bt, ct) = (v[0], v[1], v[2]);
    let t = at * c - ct * a + 2.0 * (bt * c - ct * b);
    let delta = (a + 2.0 * b) * t / nu;
    let sigma = -2.0 * c * t;
    Vec3::z() * delta + Vec3::y() * sigma
}

/// Seeded admissible inputs: `p` uniform inside the open admissible
/// interval (shrunk by 1%), `nu` log-uniform on `[0.1, 10]`, and `(U, V)`
/// orthonormalized from random directions.
pub fn random_case_iii_inputs(kind: MetricKind, count: usize, seed: u64) -> Vec<CaseIIIFlagInput> {
    let mut rng = seeded(seed);
    let limit = kind.bound() / 3f64.sqrt();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = 0.99 * limit * (2.0 * rng.random::<f64>() - 1.0);
        let nu = log_uniform(&mut rng, 0.1, 10.0);
        if let Some(input) = random_pair(&mut rng, p, nu) {
            out.push(input);
        }
    }
    out
}

/// Seeded orthonormal flags at fixed `p` and `nu`.
pub fn random_case_iii_flags(p: f64, nu: f64, count: usize, seed: u64) -> Result<Vec<CaseIIIFlagInput>, FlagError> {
    case_iii_metric(nu)?;
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(input) = random_pair(&mut rng, p, nu) {
            out.push(input);
        }
    }
    Ok(out)
}

fn random_pair(rng: &mut crate::sampling::SeededRng, p: f64, nu: f64) -> Option<CaseIIIFlagInput> {
    let g = case_iii_metric(nu).expect("nu > 0");
    let pair = gram_schmidt(&g, &[unit_sphere(rng), unit_sphere(rng)]).ok()?;
    Some(CaseIIIFlagInput::new(p, nu, pair[0], pair[1]).expect("orthonormal by construction"))
}

/// The four fundamental-tensor values on a case-iii flag with pole `U`:
/// `g_U(R(V,U)U, V)`, `g_U(U,U)`, `g_U(V,V)` and `g_U(U,V)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseIIIGu {
    pub rvuu_v: f64,
    pub uu: f64,
    pub vv: f64,
    pub uv: f64,
}

impl CaseIIIGu {
    pub fn as_array(&self) -> [f64; 4] {
        [self.rvuu_v, self.uu, self.vv, self.uv]
    }

    pub const LABELS: [&'static str; 4] = ["g_U(R(V,U)U,V)", "g_U(U,U)", "g_U(V,V)", "g_U(U,V)"];
}

/// The fundamental-tensor values evaluated with exact derivatives.
pub fn case_iii_gu(kind: MetricKind, input: &CaseIIIFlagInput) -> Result<CaseIIIGu, FlagError> {
    let g = case_iii_metric(input.nu)?;
    let f = FinslerMetric::new(kind, g, case_iii_deformation(input.p))?;
    let (u, v) = (Vec3::from(input.u), Vec3::from(input.v));
    let r = rvuu_case_iii(input.nu, &u, &v);
    Ok(CaseIIIGu {
        rvuu_v: fundamental_tensor(&f, &u, &r, &v)?,
        uu: fundamental_tensor(&f, &u, &u, &u)?,
        vv: fundamental_tensor(&f, &u, &v, &v)?,
        uv: fundamental_tensor(&f, &u, &u, &v)?,
    })
}

/// The same four values from the published expressions, written in terms of
/// `δ` and `σ` from [`rvuu_case_iii`].
pub fn case_iii_gu_printed(kind: MetricKind, input: &CaseIIIFlagInput) -> CaseIIIGu {
    let [a, b, c] = input.u;
    let [at, bt, ct] = input.v;
    let (p, nu) = (input.p, input.nu);
    let t = at * c - ct * a + 2.0 * (bt * c - ct * b);
    let delta = (a + 2.0 * b) * t / nu;
    let sigma = -2.0 * c * t;
    match kind {
        MetricKind::Randers => {
            let w = 1.0 - 1.5 * p * a;
            CaseIIIGu {
                rvuu_v: (delta * ct * nu + sigma * (bt + at / 2.0)) * w
                    - 1.5 * p * at * (delta * c * nu + sigma * (b + a / 2.0)),
                uu: w * w,
                vv: 1.0 - 1.5 * p * a + (1.5 * p * at).powi(2),
                uv: -1.5 * p * at * w,
            }
        }
        MetricKind::Matsumoto => {
            let w = 1.0 + 1.5 * a * p;
            CaseIIIGu {
                rvuu_v: ((sigma * (at / 2.0 + bt) + ct * delta * nu) * (1.0 + 3.0 * a * p) * w
                    - 1.5 * at * p * (sigma * (a / 2.0 + b) + c * delta * nu) * (1.0 + 6.0 * a * p))
                    / w.powi(4),
                uu: 1.0 / (w * w),
                vv: (1.0 + 4.5 * (a * a * p * p - at * at * p * p + a * p)) / w.powi(4),
                uv: -3.0 * at * p / (2.0 * w.powi(3)),
            }
        }
    }
}

/// Pipeline value against a closed form for one input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormCheck {
    pub input: CaseIIIFlagInput,
    pub pipeline: f64,
    pub closed_form: f64,
    /// `|pipeline − closed| / max(1, |closed|)`.
    pub deviation: f64,
}

pub fn compare(pipeline: f64, closed_form: f64, input: CaseIIIFlagInput) -> ClosedFormCheck {
    ClosedFormCheck {
        input,
        pipeline,
        closed_form,
        deviation: (pipeline - closed_form).abs() / closed_form.abs().max(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sectional_curvature;

    fn zx(p: f64) -> CaseIIIFlagInput {
        CaseIIIFlagInput::new(p, 1.0, Vec3::z(), Vec3::x()).unwrap()
    }

    #[test]
    fn riemannian_collapse_at_p_zero() {
        let input = zx(0.0);
        assert!((randers_case_iii_closed_form(&input).unwrap() + 1.0).abs() < 1e-15);
        assert!((matsumoto_case_iii_closed_form(&input).unwrap() + 1.0).abs() < 1e-15);
        assert!((case_iii_pipeline(MetricKind::Randers, &input).unwrap() + 1.0).abs() < 1e-12);
        let g = case_iii_metric(1.0).unwrap();
        let r = curvature_case_iii(1.0).unwrap();
        let k = sectional_curvature(&g, &r, &Vec3::z(), &Vec3::x()).unwrap();
        assert!((k + 1.0).abs() < 1e-15);
    }

    #[test]
    fn vanishing_plane_factor() {
        // U = x, V ⟂ x with c = c̃ = 0 → both factors vanish
        let g = case_iii_metric(2.0).unwrap();
        let pair = gram_schmidt(&g, &[Vec3::x(), Vec3::y()]).unwrap();
        let input = CaseIIIFlagInput::new(0.3, 2.0, pair[0], pair[1]).unwrap();
        assert_eq!(randers_case_iii_closed_form(&input).unwrap(), 0.0);
        let input = CaseIIIFlagInput::new(0.2, 2.0, pair[0], pair[1]).unwrap();
        assert_eq!(matsumoto_case_iii_closed_form(&input).unwrap(), 0.0);
    }

    #[test]
    fn closed_forms_enforce_admissibility_and_orthonormality() {
        assert!(matches!(
            matsumoto_case_iii_closed_form(&zx(0.3)),
            Err(FlagError::Finsler(FinslerError::Inadmissible { .. }))
        ));
        assert!(randers_case_iii_closed_form(&zx(0.3)).is_ok());
        assert!(matches!(
            CaseIIIFlagInput::new(0.1, 1.0, Vec3::x(), Vec3::y()),
            Err(FlagError::NotOrthonormal(_))
        ));
        assert!(matches!(curvature_case_iii(0.0), Err(FlagError::InvalidNu(_))));
    }

    #[test]
    fn case_iii_curvature_block() {
        let r = curvature_case_iii(2.0).unwrap();
        assert_eq!(r.component(0, 2, 0), Vec3::z() * 0.5);
        let r = curvature_case_iii(1.0).unwrap();
        assert_eq!(r.component(1, 2, 1), Vec3::z() * 4.0);
        for k in 0..3 {
            assert_eq!(r.component(0, 1, k), Vec3::zeros());
        }
    }

    #[test]
    fn rvuu_matches_contraction() {
        let r = curvature_case_iii(1.0).unwrap();
        let (u, v) = (Vec3::z(), Vec3::x());
        let closed = rvuu_case_iii(1.0, &u, &v);
        assert!((closed - r.apply(&v, &u, &u)).amax() < 1e-15);
        assert_eq!(closed, Vec3::y() * -2.0);
        assert_eq!(rvuu_case_iii(1.0, &Vec3::x(), &Vec3::y()), Vec3::zeros());
    }

    #[test]
    fn flat_space_has_zero_flag_curvature() {
        let f = FinslerMetric::new(
            MetricKind::Matsumoto,
            InnerProduct::identity(),
            Vec3::new(0.1, 0.2, 0.3),
        )
        .unwrap();
        let space = BerwaldSpace::new(LieAlgebra::abelian(), f, 1e-9).unwrap();
        let flag = Flag::new(Vec3::new(1.0, 2.0, 0.5), Vec3::new(-0.3, 0.1, 1.0)).unwrap();
        assert_eq!(space.flag_curvature(&flag).unwrap(), 0.0);
    }

    #[test]
    fn non_berwald_is_refused() {
        let heis = LieAlgebra::new(Vec3::z(), Vec3::zeros(), Vec3::zeros()).unwrap();
        let f = FinslerMetric::new(MetricKind::Randers, InnerProduct::identity(), Vec3::z() * 0.5).unwrap();
        assert!(matches!(
            BerwaldSpace::new(heis, f, 1e-9),
            Err(FlagError::NotBerwald(_))
        ));
    }

    #[test]
    fn degenerate_flag() {
        assert!(Flag::new(Vec3::x(), Vec3::x() * 2.0).is_err());
        assert!(Flag::new(Vec3::zeros(), Vec3::x()).is_err());
    }
}
