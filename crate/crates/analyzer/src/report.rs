use std::cmp::Ordering;

use serde::Serialize;

use nodal_core::defect::defect;
use nodal_core::Result;

use crate::ci::detect_ci;
use crate::example::NodalExample;
use crate::invariants::{alexander_exponent, locus_dims, tangent_dims};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comparisons {
    #[serde(rename = "codim_L_vs_length")]
    pub codim_l_vs_length: Comparison,
    #[serde(rename = "codim_L_vs_h_d")]
    pub codim_l_vs_h_d: Comparison,
}

/// Every integer invariant of one example over one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub d: u32,
    pub a: u32,
    pub prime: u32,
    pub seed: u64,
    pub hilbert: Vec<usize>,
    pub length: usize,
    pub defect_d: i64,
    pub tangent_expected_codim: usize,
    pub tangent_actual_codim: usize,
    pub tangent_excess: usize,
    pub jacobian_dim_d: usize,
    pub alexander_exponent: i64,
    pub alexander_bound: i64,
    pub ci_1_4_dm1: bool,
    #[serde(rename = "dim_L0")]
    pub dim_l0: i64,
    #[serde(rename = "dim_L")]
    pub dim_l: i64,
    #[serde(rename = "codim_L")]
    pub codim_l: i64,
    pub comparisons: Comparisons,
}

pub fn analyze(ex: &NodalExample) -> Result<AnalysisReport> {
    let n = ex.ring.n();
    let defect_d = defect(&ex.hilbert, n, ex.length, ex.d)?.delta;
    let tangent = tangent_dims(ex)?;
    let alex = alexander_exponent(&ex.hilbert, ex.length, ex.d)?;
    let ci = detect_ci(&ex.node_ideal, &ex.hilbert, ex.d)?;
    let locus = locus_dims(ex.d, ex.a)?;
    let h_d = ex.h_d() as i64;
    Ok(AnalysisReport {
        d: ex.d,
        a: ex.a,
        prime: ex.ring.field().modulus(),
        seed: ex.seed,
        hilbert: ex.hilbert.values().to_vec(),
        length: ex.length,
        defect_d,
        tangent_expected_codim: tangent.expected_codim,
        tangent_actual_codim: tangent.actual_codim,
        tangent_excess: tangent.excess,
        jacobian_dim_d: tangent.dim_j_d,
        alexander_exponent: alex.exponent,
        alexander_bound: alex.bound,
        ci_1_4_dm1: ci.verdict,
        dim_l0: locus.dim_l0,
        dim_l: locus.dim_l,
        codim_l: locus.codim_l,
        comparisons: Comparisons {
            codim_l_vs_length: locus.codim_l.cmp(&(ex.length as i64)).into(),
            codim_l_vs_h_d: locus.codim_l.cmp(&h_d).into(),
        },
    })
}
