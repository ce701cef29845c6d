use std::collections::BTreeMap;

use serde::Serialize;

use super::{instantiate, params, CASES};
use crate::io::AlgebraSpec;

/// One row of the exported dataset.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRow {
    pub id: u8,
    pub group: &'static str,
    pub parameters: Vec<&'static str>,
    pub inert_parameters: Vec<&'static str>,
    pub fixed: BTreeMap<&'static str, f64>,
    pub conditions: &'static str,
    /// Symbolic `[x,y]`, `[x,z]`, `[y,z]`.
    pub brackets: BTreeMap<&'static str, &'static str>,
    /// Symbolic metric matrix, row-major.
    pub metric: [[&'static str; 3]; 3],
    /// Case 15 only: definitions of `A`, `B`, `D`, `lambda`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub definitions: BTreeMap<&'static str, &'static str>,
    /// The row instantiated at a representative parameter tuple, in the
    /// input-file format.
    pub example: ExampleInstance,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleInstance {
    pub params: BTreeMap<String, f64>,
    pub spec: AlgebraSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogExport {
    pub frame: [&'static str; 3],
    pub rows: Vec<CatalogRow>,
}

pub fn export_catalog() -> CatalogExport {
    let rows = CASES
        .iter()
        .map(|info| {
            let example = params(info.example);
            let inst = instantiate(info.id, &example).expect("example tuples are in domain");
            let definitions = if info.id == 15 {
                BTreeMap::from([
                    ("A", "(lambda^2 (1 + mu) + 1 - mu) / (2 c^2 lambda^2)"),
                    ("B", "(1 - mu) / (2 c lambda^2)"),
                    ("D", "(1 - mu) / (2 lambda^2)"),
                    ("lambda", "sqrt(1 - c)"),
                ])
            } else {
                BTreeMap::new()
            };
            CatalogRow {
                id: info.id,
                group: info.group,
                parameters: info.required.to_vec(),
                inert_parameters: info.inert.to_vec(),
                fixed: info.fixed.iter().copied().collect(),
                conditions: info.conditions,
                brackets: BTreeMap::from([
                    ("xy", info.brackets[0]),
                    ("xz", info.brackets[1]),
                    ("yz", info.brackets[2]),
                ]),
                metric: info.metric,
                definitions,
                example: ExampleInstance {
                    params: example.clone(),
                    spec: AlgebraSpec::from_parts(&inst.algebra, &inst.metric),
                },
            }
        })
        .collect();
    CatalogExport {
        frame: crate::lie::FRAME,
        rows,
    }
}
