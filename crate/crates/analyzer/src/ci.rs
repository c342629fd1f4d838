use serde::Serialize;

use nodal_core::defect::length_of;
use nodal_core::ideal::{hilbert_fn, HilbertTable, IdealGens};
use nodal_core::poly::parse;
use nodal_core::{Error, Result};

/// One comparison of `h_I` against a reference Hilbert function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    /// Degree at which the first difference appears, if any.
    pub degree: Option<u32>,
    pub h_ideal: Option<usize>,
    pub h_reference: Option<usize>,
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CIDetection {
    pub verdict: bool,
    pub generator_degrees: Vec<u32>,
    pub length: Option<usize>,
    pub evidence: Vec<Step>,
}

fn first_drop(h: &HilbertTable, reference: &HilbertTable, name: &str) -> Step {
    let hit = (0..=h.kmax()).find(|&k| h.values()[k as usize] < reference.values()[k as usize]);
    Step {
        degree: hit,
        h_ideal: hit.map(|k| h.values()[k as usize]),
        h_reference: hit.map(|k| reference.values()[k as usize]),
        reference: name.to_string(),
    }
}

/// Reads generator degrees off the Hilbert function: a linear form if
/// `h(1) = n`, the next generator where `h` first drops below the table of
/// `(x0)`, the third where it first drops below the table of
/// `(x0, x1^a)`. The verdict is true iff the degrees are `(1, 4, d - 1)`
/// and the length is `4 (d - 1)`.
pub fn detect_ci(node_ideal: &IdealGens, h: &HilbertTable, d: u32) -> Result<CIDetection> {
    let ring = *node_ideal.ring();
    if ring.n() < 2 {
        return Err(Error::Precondition("needs at least three variables".into()));
    }
    let kmax = h.kmax();
    let length = length_of(h, ring.n() + 1).ok();
    let mut evidence = Vec::new();
    let mut degrees = Vec::new();
    let done = |degrees: Vec<u32>, evidence: Vec<Step>| CIDetection {
        verdict: false,
        generator_degrees: degrees,
        length,
        evidence,
    };

    let h1 = h.at(1)?;
    let linear = Step {
        degree: Some(1),
        h_ideal: Some(h1),
        h_reference: Some(ring.nvars()),
        reference: "S".into(),
    };
    evidence.push(linear);
    if ring.nvars() - h1 != 1 {
        return Ok(done(degrees, evidence));
    }
    degrees.push(1);

    let plane = IdealGens::new(ring, vec![parse(&ring, "x0")?])?;
    let step = first_drop(h, &hilbert_fn(&plane, kmax)?, "(x0)");
    let Some(a2) = step.degree else {
        evidence.push(step);
        return Ok(done(degrees, evidence));
    };
    evidence.push(step);
    degrees.push(a2);

    let curve = IdealGens::new(
        ring,
        vec![parse(&ring, "x0")?, parse(&ring, &format!("x1^{a2}"))?],
    )?;
    let step = first_drop(h, &hilbert_fn(&curve, kmax)?, &format!("(x0, x1^{a2})"));
    let Some(a3) = step.degree else {
        evidence.push(step);
        return Ok(done(degrees, evidence));
    };
    evidence.push(step);
    degrees.push(a3);

    let verdict = degrees == [1, 4, d - 1] && length == Some(4 * (d as usize - 1));
    Ok(CIDetection {
        verdict,
        generator_degrees: degrees,
        length,
        evidence,
    })
}
