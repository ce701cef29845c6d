//! The fifteen simply connected 3-dimensional Lie groups with their
//! left-invariant metrics and printed Levi-Civita connections, plus the
//! Berwald classification built on top of them.

mod cases;
mod classify;
mod export;

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

pub use cases::{CaseInfo, CASES};
pub use classify::{classify, CaseClassification, ClassificationResult, Clause, SampleOutcome};
pub use export::{export_catalog, CatalogExport, CatalogRow};

use crate::error::CatalogError;
use crate::finsler::{admissibility_check, MetricKind};
use crate::lie::{Connection, InnerProduct, LieAlgebra, Vec3, FRAME};
use crate::sampling::{log_uniform, SeededRng};
use cases::Values;

/// Parameter assignment by name (`lambda`, `mu`, `nu`, `c`).
pub type ParamMap = BTreeMap<String, f64>;

/// Identity residuals are compared against `IDENTITY_TOL · (1 + max|Γ|)`.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Builds a [`ParamMap`] from `(name, value)` pairs.
pub fn params(pairs: &[(&str, f64)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn case_info(id: u8) -> Result<&'static CaseInfo, CatalogError> {
    CASES
        .get((id as usize).wrapping_sub(1))
        .ok_or(CatalogError::UnknownCase(id))
}

/// A concrete row: resolved parameters, algebra and metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub case: u8,
    /// Supplied, fixed and derived parameters (case 15 reports its `lambda`).
    pub params: ParamMap,
    pub algebra: LieAlgebra,
    pub metric: InnerProduct,
    values: Values,
}

impl Instance {
    pub fn connection(&self) -> Connection {
        Connection::levi_civita(&self.algebra, &self.metric).expect("catalog rows satisfy the Jacobi identity")
    }

    /// The connection as printed in the table row.
    pub fn printed_connection(&self) -> Connection {
        Connection::from_table(cases::printed_connection(self.case, &self.values))
    }
}

/// Instantiates row `id` at `params`, enforcing the row's conditions.
pub fn instantiate(id: u8, params: &ParamMap) -> Result<Instance, CatalogError> {
    let info = case_info(id)?;
    let mut values = Values {
        lambda: f64::NAN,
        mu: f64::NAN,
        nu: f64::NAN,
        c: f64::NAN,
    };
    let mut resolved = ParamMap::new();

    for (name, &value) in params {
        let name = name.as_str();
        if let Some(&(_, fixed)) = info.fixed.iter().find(|(n, _)| *n == name) {
            if value != fixed {
                return Err(CatalogError::OutOfDomain {
                    case: id,
                    constraint: if fixed == 0.0 { "c = 0" } else { "c = 1" },
                });
            }
            continue;
        }
        if !info.required.contains(&name) && !info.inert.contains(&name) {
            return Err(CatalogError::UnexpectedParameter {
                case: id,
                name: name.to_string(),
            });
        }
        if !value.is_finite() {
            return Err(CatalogError::Geometry(crate::error::GeometryError::NonFinite(
                "parameter",
            )));
        }
        set(&mut values, name, value);
        resolved.insert(name.to_string(), value);
    }
    for name in info.required {
        if !resolved.contains_key(*name) {
            return Err(CatalogError::MissingParameter { case: id, name });
        }
    }
    for &(name, value) in info.fixed {
        set(&mut values, name, value);
        resolved.insert(name.to_string(), value);
    }
    if let Some(constraint) = cases::violated(id, &values) {
        return Err(CatalogError::OutOfDomain { case: id, constraint });
    }
    if id == 15 {
        values.lambda = (1.0 - values.c).sqrt();
        resolved.insert("lambda".into(), values.lambda);
    }

    let [xy, xz, yz] = cases::brackets(id, &values);
    let algebra = LieAlgebra::new(xy, xz, yz)?;
    let metric = InnerProduct::from_rows(cases::metric(id, &values))?;
    Ok(Instance {
        case: id,
        params: resolved,
        algebra,
        metric,
        values,
    })
}

fn set(values: &mut Values, name: &str, value: f64) {
    match name {
        "lambda" => values.lambda = value,
        "mu" => values.mu = value,
        "nu" => values.nu = value,
        "c" => values.c = value,
        _ => {}
    }
}

/// Draws an in-domain parameter tuple: every free parameter log-uniform on
/// `[0.1, 10]`, ordered or sign-flipped where the row needs it, then
/// rejection-filtered against the row's conditions.
pub fn sample_params(id: u8, rng: &mut SeededRng) -> Result<ParamMap, CatalogError> {
    let info = case_info(id)?;
    let names: Vec<&str> = info.required.iter().chain(info.inert).copied().collect();
    loop {
        let mut draw: ParamMap = names
            .iter()
            .map(|n| (n.to_string(), log_uniform(rng, 0.1, 10.0)))
            .collect();
        match id {
            6 => sort_desc(&mut draw, &["mu", "nu"]),
            7 => sort_desc(&mut draw, &["lambda", "mu", "nu"]),
            9 if rng.random::<bool>() => {
                if let Some(c) = draw.get_mut("c") {
                    *c = -*c;
                }
            }
            _ => {}
        }
        if instantiate(id, &draw).is_ok() {
            return Ok(draw);
        }
    }
}

fn sort_desc(draw: &mut ParamMap, names: &[&str]) {
    let mut vals: Vec<f64> = names.iter().map(|n| draw[*n]).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    for (n, v) in names.iter().zip(vals) {
        draw.insert(n.to_string(), v);
    }
}

/// One entry of a table-row comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryDiff {
    pub entry: String,
    pub printed: [f64; 3],
    pub koszul: [f64; 3],
    pub residual: f64,
}

/// A printed table entry that disagrees with the Koszul value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrataRecord {
    pub case: u8,
    pub params: ParamMap,
    pub entry: String,
    pub printed: [f64; 3],
    pub koszul: [f64; 3],
}

/// Comparison of one row instance against the Koszul connection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub case: u8,
    pub params: ParamMap,
    pub tol: f64,
    pub entries: Vec<EntryDiff>,
    pub max_residual: f64,
    pub matches: bool,
    pub torsion_residual: f64,
    pub compatibility_residual: f64,
    /// Torsion-freeness and metric compatibility of the Koszul result.
    pub identities_pass: bool,
    /// Parameters the row lists but never uses.
    pub inert_parameters: Vec<String>,
    pub errata: Vec<ErrataRecord>,
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

/// Diffs the printed connection against the Koszul connection.
///
/// The Koszul result is authoritative; disagreement yields errata records.
pub fn verify_table_row(id: u8, params: &ParamMap, tol: f64) -> Result<RowReport, CatalogError> {
    let inst = instantiate(id, params)?;
    let koszul = inst.connection();
    let printed = inst.printed_connection();

    let mut entries = Vec::with_capacity(9);
    let mut errata = Vec::new();
    let mut max_residual = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            let k = koszul.nabla(i, j);
            let p = printed.nabla(i, j);
            let residual = (k - p).amax();
            max_residual = max_residual.max(residual);
            let entry = format!("nabla_{} {}", FRAME[i], FRAME[j]);
            if !(residual < tol) {
                errata.push(ErrataRecord {
                    case: id,
                    params: inst.params.clone(),
                    entry: entry.clone(),
                    printed: arr(&p),
                    koszul: arr(&k),
                });
            }
            entries.push(EntryDiff {
                entry,
                printed: arr(&p),
                koszul: arr(&k),
                residual,
            });
        }
    }

    let bound = IDENTITY_TOL * (1.0 + koszul.scale());
    let torsion_residual = koszul.torsion_residual(&inst.algebra);
    let compatibility_residual = koszul.compatibility_residual(&inst.metric);
    let info = case_info(id)?;
    Ok(RowReport {
        case: id,
        params: inst.params,
        tol,
        entries,
        max_residual,
        matches: errata.is_empty(),
        torsion_residual,
        compatibility_residual,
        identities_pass: torsion_residual < bound && compatibility_residual < bound,
        inert_parameters: info.inert.iter().map(|s| s.to_string()).collect(),
        errata,
    })
}

/// Admissible range of the deformation parameter `p` for the rows that carry
/// a parallel field, with `X̃ = p · generator`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleBound {
    pub case: u8,
    pub kind: MetricKind,
    pub description: String,
    pub generator: [f64; 3],
    /// Strict bound on `|p|`.
    pub limit: f64,
    #[serde(skip)]
    metric: InnerProduct,
}

impl AdmissibleBound {
    pub fn admits(&self, p: f64) -> bool {
        p.abs() < self.limit
    }

    pub fn deformation(&self, p: f64) -> Vec3 {
        Vec3::from(self.generator) * p
    }

    /// The same verdict computed from the metric norm of the deformation.
    pub fn check_norm(&self, p: f64) -> bool {
        admissibility_check(&self.metric, &self.deformation(p), self.kind).admissible
    }
}

/// Admissibility bounds for rows 1, 5 (`mu = 1`, needs `nu`) and 11 (needs `nu`).
pub fn admissible_bound(id: u8, kind: MetricKind, params: &ParamMap) -> Result<AdmissibleBound, CatalogError> {
    let half = kind == MetricKind::Matsumoto;
    let (generator, limit, description, inst) = match id {
        1 => {
            let inst = instantiate(1, params)?;
            let text = if half {
                "|X| < 1/2, any direction"
            } else {
                "|X| < 1, any direction"
            };
            ([1.0, 0.0, 0.0], kind.bound(), text.to_string(), inst)
        }
        5 => {
            let mut p = params.clone();
            p.insert("mu".into(), 1.0);
            let inst = instantiate(5, &p)?;
            let root = inst.params["nu"].sqrt();
            let (limit, text) = if half {
                (1.0 / (2.0 * root), "X = p z, |p| < 1/(2 sqrt(nu))")
            } else {
                (1.0 / root, "X = p z, |p| < 1/sqrt(nu)")
            };
            ([0.0, 0.0, 1.0], limit, text.to_string(), inst)
        }
        11 => {
            let inst = instantiate(11, params)?;
            let (limit, text) = if half {
                (3f64.sqrt() / 6.0, "X = -2p x + p y, |p| < sqrt(3)/6")
            } else {
                (3f64.sqrt() / 3.0, "X = -2p x + p y, |p| < sqrt(3)/3")
            };
            ([-2.0, 1.0, 0.0], limit, text.to_string(), inst)
        }
        2..=15 => return Err(CatalogError::NoBerwaldDeformation(id)),
        _ => return Err(CatalogError::UnknownCase(id)),
    };
    Ok(AdmissibleBound {
        case: id,
        kind,
        description,
        generator,
        limit,
        metric: inst.metric,
    })
}
