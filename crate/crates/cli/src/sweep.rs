use std::collections::BTreeMap;

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use nodal_analyzer::AnalysisReport;

use crate::config::RunConfig;
use crate::consensus::{analyze_over, consensus, ConsensusReport};

/// One CSV row: a report over one prime, or the error that stopped it.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub d: u32,
    pub a: u32,
    pub prime: u32,
    pub seed: u64,
    pub status: &'static str,
    pub consensus: bool,
    pub length: Option<usize>,
    pub defect_d: Option<i64>,
    pub tangent_expected_codim: Option<usize>,
    pub tangent_actual_codim: Option<usize>,
    pub tangent_excess: Option<usize>,
    pub jacobian_dim_d: Option<usize>,
    pub alexander_exponent: Option<i64>,
    pub alexander_bound: Option<i64>,
    pub ci_1_4_dm1: Option<bool>,
    #[serde(rename = "dim_L0")]
    pub dim_l0: Option<i64>,
    #[serde(rename = "dim_L")]
    pub dim_l: Option<i64>,
    #[serde(rename = "codim_L")]
    pub codim_l: Option<i64>,
    #[serde(rename = "codim_L_vs_length")]
    pub codim_l_vs_length: Option<String>,
    #[serde(rename = "codim_L_vs_h_d")]
    pub codim_l_vs_h_d: Option<String>,
    /// Space-separated `h(0) .. h(kmax + 3)`.
    pub hilbert: Option<String>,
    pub error: Option<String>,
}

fn comparison(c: impl Serialize) -> Option<String> {
    match serde_json::to_value(c) {
        Ok(serde_json::Value::String(s)) => Some(s),
        _ => None,
    }
}

impl Row {
    fn ok(r: &AnalysisReport, seed: u64, consensus: bool) -> Self {
        let hilbert = r.hilbert.iter().map(|h| h.to_string()).collect::<Vec<_>>();
        Row {
            d: r.d,
            a: r.a,
            prime: r.prime,
            seed,
            status: "ok",
            consensus,
            length: Some(r.length),
            defect_d: Some(r.defect_d),
            tangent_expected_codim: Some(r.tangent_expected_codim),
            tangent_actual_codim: Some(r.tangent_actual_codim),
            tangent_excess: Some(r.tangent_excess),
            jacobian_dim_d: Some(r.jacobian_dim_d),
            alexander_exponent: Some(r.alexander_exponent),
            alexander_bound: Some(r.alexander_bound),
            ci_1_4_dm1: Some(r.ci_1_4_dm1),
            dim_l0: Some(r.dim_l0),
            dim_l: Some(r.dim_l),
            codim_l: Some(r.codim_l),
            codim_l_vs_length: comparison(r.comparisons.codim_l_vs_length),
            codim_l_vs_h_d: comparison(r.comparisons.codim_l_vs_h_d),
            hilbert: Some(hilbert.join(" ")),
            error: None,
        }
    }

    fn failed(d: u32, a: u32, prime: u32, seed: u64, message: String) -> Self {
        Row {
            d,
            a,
            prime,
            seed,
            status: "error",
            consensus: false,
            length: None,
            defect_d: None,
            tangent_expected_codim: None,
            tangent_actual_codim: None,
            tangent_excess: None,
            jacobian_dim_d: None,
            alexander_exponent: None,
            alexander_bound: None,
            ci_1_4_dm1: None,
            dim_l0: None,
            dim_l: None,
            codim_l: None,
            codim_l_vs_length: None,
            codim_l_vs_h_d: None,
            hilbert: None,
            error: Some(message),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    /// Sorted by `(d, a, prime, seed)`.
    pub rows: Vec<Row>,
    /// Sorted by `(d, a, seed)`; only groups where every prime succeeded.
    pub groups: Vec<ConsensusReport>,
}

impl Sweep {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.status != "ok").count()
    }

    pub fn divergent(&self) -> usize {
        self.groups.iter().filter(|g| !g.consensus).count()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// The outcome over one prime.
type Run = (u32, Result<AnalysisReport, String>);

/// Runs every `(d, a, prime, seed)` job on the rayon pool; the result does
/// not depend on scheduling.
pub fn sweep(config: &RunConfig) -> Sweep {
    let mut jobs = Vec::new();
    for (d, a) in config.pairs() {
        for seed in config.seed.lo..=config.seed.hi {
            for &p in &config.primes {
                jobs.push((d, a, seed, p));
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(d, a, seed, p)| {
            let r = analyze_over(d, a, p, seed, config.kmax_for(d)).map_err(|e| format!("{e:#}"));
            ((d, a, seed), p, r)
        })
        .collect();

    let mut by_group: BTreeMap<(u32, u32, u64), Vec<Run>> = BTreeMap::new();
    for (key, p, r) in results {
        by_group.entry(key).or_default().push((p, r));
    }
    let mut rows = Vec::new();
    let mut groups = Vec::new();
    for ((d, a, seed), runs) in by_group {
        let reports: Vec<AnalysisReport> = runs
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok().cloned())
            .collect();
        let complete = reports.len() == runs.len();
        let group = complete.then(|| consensus(d, a, seed, reports));
        let agreed = group.as_ref().is_some_and(|g| g.consensus);
        for (p, r) in runs {
            rows.push(match r {
                Ok(rep) => Row::ok(&rep, seed, agreed),
                Err(msg) => Row::failed(d, a, p, seed, msg),
            });
        }
        groups.extend(group);
    }
    rows.sort_by_key(|r| (r.d, r.a, r.prime, r.seed));
    Sweep { rows, groups }
}
