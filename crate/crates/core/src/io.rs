//! JSON input documents describing an algebra, a metric and an optional
//! Randers/Matsumoto deformation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{FinslerError, GeometryError};
use crate::finsler::{FinslerMetric, MetricKind};
use crate::lie::{InnerProduct, LieAlgebra, Vec3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub xy: [f64; 3],
    pub xz: [f64; 3],
    pub yz: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub kind: MetricKind,
    #[serde(rename = "X")]
    pub x: [f64; 3],
}

/// `{"brackets": {"xy": [..], "xz": [..], "yz": [..]}, "metric": [[..],[..],[..]],
/// "deformation": {"kind": "randers", "X": [..]}}`, the last key optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub brackets: BracketSpec,
    pub metric: [[f64; 3]; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationSpec>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid algebra: {0}")]
    Geometry(#[from] GeometryError),
    #[error("invalid Jacobi identity: residual {0:e}")]
    Jacobi(f64),
    #[error("invalid deformation: {0}")]
    Deformation(#[from] FinslerError),
}

/// Validated contents of an [`AlgebraSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSpec {
    pub algebra: LieAlgebra,
    pub metric: InnerProduct,
    pub deformation: Option<FinslerMetric>,
}

impl AlgebraSpec {
    pub fn from_parts(algebra: &LieAlgebra, metric: &InnerProduct) -> Self {
        let [xy, xz, yz] = algebra.brackets().map(|v| [v[0], v[1], v[2]]);
        Self {
            brackets: BracketSpec { xy, xz, yz },
            metric: metric.rows(),
            deformation: None,
        }
    }

    pub fn parse(&self) -> Result<ParsedSpec, SpecError> {
        let b = &self.brackets;
        let algebra = LieAlgebra::new(Vec3::from(b.xy), Vec3::from(b.xz), Vec3::from(b.yz))?;
        let scale = algebra.scale();
        let residual = algebra.jacobi_residual();
        if residual > 1e-12 * (1.0 + scale * scale) {
            return Err(SpecError::Jacobi(residual));
        }
        let metric = InnerProduct::from_rows(self.metric)?;
        let deformation = self
            .deformation
            .as_ref()
            .map(|d| FinslerMetric::new(d.kind, metric, Vec3::from(d.x)))
            .transpose()?;
        Ok(ParsedSpec {
            algebra,
            metric,
            deformation,
        })
    }
}
