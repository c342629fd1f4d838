use std::collections::BTreeMap;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use nodal_analyzer::{analyze, build_example_to, AnalysisReport};
use nodal_core::{GradedRing, PrimeField};

pub const SCHEMA: u32 = 1;

/// Fields that name the run rather than describe the surface.
const LABELS: [&str; 2] = ["prime", "seed"];

#[derive(Debug, Clone, Serialize)]
pub struct ConsensusReport {
    pub schema: u32,
    pub d: u32,
    pub a: u32,
    pub seed: u64,
    pub consensus: bool,
    pub divergent_fields: Vec<String>,
    /// The one prime disagreeing with all others, when there is one.
    pub minority_prime: Option<u32>,
    pub reports: Vec<AnalysisReport>,
}

pub fn analyze_over(d: u32, a: u32, prime: u32, seed: u64, kmax: u32) -> Result<AnalysisReport> {
    let ring = GradedRing::new(3, PrimeField::new(prime as u64)?)?;
    let ex = build_example_to(d, a, ring, seed, kmax)
        .with_context(|| format!("building d={d} a={a} p={prime} seed={seed}"))?;
    analyze(&ex).with_context(|| format!("analyzing d={d} a={a} p={prime} seed={seed}"))
}

/// Compares reports field by field, ignoring the labels `prime` and `seed`.
pub fn consensus(d: u32, a: u32, seed: u64, mut reports: Vec<AnalysisReport>) -> ConsensusReport {
    reports.sort_by_key(|r| r.prime);
    let objects: Vec<BTreeMap<String, Value>> = reports
        .iter()
        .map(|r| match serde_json::to_value(r) {
            Ok(Value::Object(m)) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        })
        .collect();
    let mut divergent = Vec::new();
    let mut minority: Option<Option<u32>> = None;
    if let Some(first) = objects.first() {
        for key in first.keys().filter(|k| !LABELS.contains(&k.as_str())) {
            let values: Vec<&Value> = objects.iter().map(|o| &o[key]).collect();
            if values.iter().all(|v| *v == values[0]) {
                continue;
            }
            divergent.push(key.clone());
            let odd = odd_one_out(&values).map(|i| reports[i].prime);
            minority = Some(match minority {
                None => odd,
                Some(prev) if prev == odd => prev,
                Some(_) => None,
            });
        }
    }
    ConsensusReport {
        schema: SCHEMA,
        d,
        a,
        seed,
        consensus: divergent.is_empty(),
        divergent_fields: divergent,
        minority_prime: minority.flatten(),
        reports,
    }
}

fn odd_one_out(values: &[&Value]) -> Option<usize> {
    if values.len() < 3 {
        return None;
    }
    let count = |v: &Value| values.iter().filter(|w| **w == v).count();
    let odd: Vec<usize> = (0..values.len())
        .filter(|&i| count(values[i]) == 1)
        .collect();
    let rest_agree = values
        .iter()
        .enumerate()
        .filter(|(i, _)| !odd.contains(i))
        .all(|(_, v)| count(v) == values.len() - 1);
    (odd.len() == 1 && rest_agree).then(|| odd[0])
}

/// Serializes with keys in sorted order.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
