use nalgebra::Matrix3;

use super::FinslerMetric;
use crate::error::FinslerError;
use crate::jet::Jet2;
use crate::lie::{basis, Vec3};

fn arr(v: &Vec3) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

/// `g_Y(U,V) = ½ ∂²/∂s∂t F²(Y + sU + tV)` at `s = t = 0`, computed exactly
/// with two-parameter Taylor arithmetic.
pub fn fundamental_tensor(f: &FinslerMetric, y: &Vec3, u: &Vec3, v: &Vec3) -> Result<f64, FinslerError> {
    if y.iter().all(|c| *c == 0.0) {
        return Err(FinslerError::ZeroBase);
    }
    let norm = f.eval(Jet2::seed(arr(y), arr(u), arr(v)))?;
    Ok(0.5 * (norm * norm).st)
}

/// The fundamental tensor on the frame at `y`.
pub fn fundamental_tensor_matrix(f: &FinslerMetric, y: &Vec3) -> Result<Matrix3<f64>, FinslerError> {
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        for j in i..3 {
            let value = fundamental_tensor(f, y, &basis(i), &basis(j))?;
            m[(i, j)] = value;
            m[(j, i)] = value;
        }
    }
    Ok(m)
}

/// Central-difference estimate of `g_Y(U,V)` with one Richardson step.
///
/// Independent of the jet arithmetic; only plain `F` evaluations are used.
pub fn fundamental_tensor_fd(f: &FinslerMetric, y: &Vec3, u: &Vec3, v: &Vec3, step: f64) -> Result<f64, FinslerError> {
    if y.iter().all(|c| *c == 0.0) {
        return Err(FinslerError::ZeroBase);
    }
    let sq = |s: f64, t: f64| -> Result<f64, FinslerError> {
        let n = f.norm(&(y + u * s + v * t))?;
        Ok(n * n)
    };
    let mixed = |h: f64| -> Result<f64, FinslerError> {
        Ok((sq(h, h)? - sq(h, -h)? - sq(-h, h)? + sq(-h, -h)?) / (4.0 * h * h))
    };
    let coarse = mixed(step)?;
    let fine = mixed(0.5 * step)?;
    Ok(0.5 * (4.0 * fine - coarse) / 3.0)
}
