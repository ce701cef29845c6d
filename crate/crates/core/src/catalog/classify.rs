use serde::Serialize;

use super::{admissible_bound, case_info, instantiate, params, sample_params, AdmissibleBound, ParamMap, CASES};
use crate::finsler::MetricKind;
use crate::lie::{parallel_fields, Vec3};
use crate::sampling::seeded;

/// Clause of the classification a row falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    I,
    II,
    III,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::I => "i",
            Clause::II => "ii",
            Clause::III => "iii",
        }
    }

    /// The row each clause is attached to.
    pub fn expected_case(self) -> u8 {
        match self {
            Clause::I => 1,
            Clause::II => 5,
            Clause::III => 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleOutcome {
    pub params: ParamMap,
    pub dimension: usize,
    pub basis: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseClassification {
    pub case: u8,
    pub group: &'static str,
    pub samples: Vec<SampleOutcome>,
    /// Row 5 only: the `mu = 1` sweep at the sampled `nu` values.
    pub critical: Vec<SampleOutcome>,
    pub clause: Option<Clause>,
    pub bounds: Vec<AdmissibleBound>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub seed: u64,
    pub samples_per_case: usize,
    pub tol: f64,
    pub cases: Vec<CaseClassification>,
    /// Whether the outcome is exactly clauses i, ii, iii on rows 1, 5, 11.
    pub consistent: bool,
    pub deviations: Vec<String>,
}

impl ClassificationResult {
    pub fn matched(&self) -> Vec<(Clause, u8)> {
        self.cases
            .iter()
            .filter_map(|c| c.clause.map(|cl| (cl, c.case)))
            .collect()
    }

    pub fn case(&self, id: u8) -> Option<&CaseClassification> {
        self.cases.iter().find(|c| c.case == id)
    }
}

fn outcome(id: u8, p: ParamMap, tol: f64) -> SampleOutcome {
    let inst = instantiate(id, &p).expect("sampled parameters are in domain");
    let fields = parallel_fields(&inst.connection(), tol);
    SampleOutcome {
        params: inst.params,
        dimension: fields.dimension(),
        basis: fields.basis,
    }
}

fn spans(o: &SampleOutcome, v: Vec3, tol: f64) -> bool {
    let mut rest = v;
    for b in &o.basis {
        let b = Vec3::from(*b);
        rest -= b * b.dot(&v);
    }
    o.dimension == 1 && rest.norm() <= tol.max(1e-9) * v.norm()
}

/// Searches every row for left-invariant parallel fields over seeded
/// parameter samples and matches the outcome against clauses i-iii.
pub fn classify(samples: usize, seed: u64, tol: f64) -> ClassificationResult {
    let samples = samples.max(1);
    let mut cases = Vec::with_capacity(15);
    let mut deviations = Vec::new();

    for info in CASES.iter() {
        let id = info.id;
        let mut rng = seeded(seed ^ (u64::from(id)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let draws = if info.required.is_empty() { 1 } else { samples };
        let sampled: Vec<SampleOutcome> = (0..draws)
            .map(|_| {
                let p = sample_params(id, &mut rng).expect("valid case id");
                outcome(id, p, tol)
            })
            .collect();

        let critical: Vec<SampleOutcome> = if id == 5 {
            sampled
                .iter()
                .map(|s| outcome(5, params(&[("mu", 1.0), ("nu", s.params["nu"])]), tol))
                .collect()
        } else {
            Vec::new()
        };

        let clause = match id {
            1 if sampled.iter().all(|s| s.dimension == 3) => Some(Clause::I),
            5 if critical.iter().all(|s| spans(s, Vec3::z(), tol))
                && sampled.iter().all(|s| s.dimension == 0 || s.params["mu"] == 1.0) =>
            {
                Some(Clause::II)
            }
            11 if sampled.iter().all(|s| spans(s, Vec3::new(-2.0, 1.0, 0.0), tol)) => Some(Clause::III),
            _ => None,
        };

        let expected = [Clause::I, Clause::II, Clause::III]
            .into_iter()
            .find(|c| c.expected_case() == id);
        if clause != expected {
            deviations.push(format!(
                "case {id}: expected clause {:?}, observed {:?}",
                expected.map(Clause::label),
                clause.map(Clause::label)
            ));
        }
        if expected.is_none() {
            for s in sampled.iter().filter(|s| s.dimension > 0) {
                deviations.push(format!(
                    "case {id}: parallel field space of dimension {} at {:?}",
                    s.dimension, s.params
                ));
            }
        }

        let bounds = match clause {
            Some(_) => {
                let at = match id {
                    5 => params(&[("nu", critical[0].params["nu"])]),
                    11 => params(&[("nu", sampled[0].params["nu"])]),
                    _ => ParamMap::new(),
                };
                [MetricKind::Randers, MetricKind::Matsumoto]
                    .into_iter()
                    .filter_map(|k| admissible_bound(id, k, &at).ok())
                    .collect()
            }
            None => Vec::new(),
        };

        cases.push(CaseClassification {
            case: id,
            group: case_info(id).map(|i| i.group).unwrap_or(""),
            samples: sampled,
            critical,
            clause,
            bounds,
        });
    }

    let matched = cases.iter().filter(|c| c.clause.is_some()).count();
    if matched != 3 {
        deviations.push(format!("{matched} rows matched a clause, expected 3"));
    }
    ClassificationResult {
        seed,
        samples_per_case: samples,
        tol,
        cases,
        consistent: deviations.is_empty(),
        deviations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_matches_three_clauses() {
        let r = classify(20, 42, 1e-9);
        assert!(r.consistent, "{:?}", r.deviations);
        assert_eq!(r.matched(), vec![(Clause::I, 1), (Clause::II, 5), (Clause::III, 11)]);
    }

    #[test]
    fn deterministic_under_seed() {
        assert_eq!(classify(3, 7, 1e-9), classify(3, 7, 1e-9));
    }

    #[test]
    fn case_5_dichotomy_and_case_9_exclusion() {
        let half = outcome(5, params(&[("mu", 0.5), ("nu", 1.0)]), 1e-9);
        assert_eq!(half.dimension, 0);
        let one = outcome(5, params(&[("mu", 1.0), ("nu", 3.0)]), 1e-9);
        assert_eq!(one.basis, vec![[0.0, 0.0, 1.0]]);
        let nine = outcome(9, params(&[("c", 2.0), ("mu", 1.0), ("nu", 1.0)]), 1e-9);
        assert_eq!(nine.dimension, 0);
    }
}
