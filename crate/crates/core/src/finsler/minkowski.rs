use serde::Serialize;

use super::{fundamental_tensor_matrix, FinslerMetric};
use crate::lie::{leading_minors, Vec3};
use crate::sampling::{seeded, unit_sphere};

/// Scale factors used for the homogeneity probe.
pub const HOMOGENEITY_FACTORS: [f64; 3] = [0.5, 2.0, 7.3];

const HOMOGENEITY_TOL: f64 = 1e-12;

/// Worst-case findings of [`minkowski_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinkowskiReport {
    pub samples: usize,
    pub seed: u64,
    /// Smallest `F(y)` over sampled unit directions (directions outside a
    /// Matsumoto domain count as `-inf`).
    pub min_norm: f64,
    /// Direction attaining `min_norm` when it is not positive.
    pub negative_direction: Option<[f64; 3]>,
    /// Largest `|F(λy) − λF(y)| / |F(λy)|`.
    pub worst_homogeneity: f64,
    /// Smallest leading principal minor of the fundamental tensor.
    pub min_minor: f64,
    pub positive: bool,
    pub homogeneous: bool,
    pub definite: bool,
    pub pass: bool,
}

/// Samples the three Minkowski-norm axioms: positivity, positive
/// 1-homogeneity and positive definiteness of the fundamental tensor.
///
/// Besides `samples` seeded directions, the two directions `±X̃` are always
/// probed since they extremize `β/α`.
pub fn minkowski_check(f: &FinslerMetric, samples: usize, seed: u64) -> MinkowskiReport {
    let mut rng = seeded(seed);
    let mut directions: Vec<Vec3> = (0..samples).map(|_| unit_sphere(&mut rng)).collect();
    let xt = f.deformation();
    if xt.norm() > 0.0 {
        let d = xt / f.metric().norm(&xt);
        directions.push(-d);
        directions.push(d);
    }

    let mut min_norm = f64::INFINITY;
    let mut negative_direction = None;
    let mut worst_homogeneity = 0.0_f64;
    let mut min_minor = f64::INFINITY;

    for y in &directions {
        let value = f.norm(y).unwrap_or(f64::NEG_INFINITY);
        if value < min_norm {
            min_norm = value;
            if value <= 0.0 {
                negative_direction = Some([y[0], y[1], y[2]]);
            }
        }
        if !value.is_finite() {
            continue;
        }
        for lambda in HOMOGENEITY_FACTORS {
            let scaled = match f.norm(&(y * lambda)) {
                Ok(v) => v,
                Err(_) => {
                    worst_homogeneity = f64::INFINITY;
                    continue;
                }
            };
            let gap = (scaled - lambda * value).abs();
            let rel = if scaled == 0.0 { gap } else { gap / scaled.abs() };
            worst_homogeneity = worst_homogeneity.max(rel);
        }
        match fundamental_tensor_matrix(f, y) {
            Ok(m) => {
                for minor in leading_minors(&m) {
                    min_minor = min_minor.min(minor);
                }
            }
            Err(_) => min_minor = f64::NEG_INFINITY,
        }
    }

    let positive = min_norm > 0.0;
    let homogeneous = worst_homogeneity < HOMOGENEITY_TOL;
    let definite = min_minor > 0.0;
    MinkowskiReport {
        samples,
        seed,
        min_norm,
        negative_direction,
        worst_homogeneity,
        min_minor,
        positive,
        homogeneous,
        definite,
        pass: positive && homogeneous && definite,
    }
}
