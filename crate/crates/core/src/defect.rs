//! Alternating Betti numbers, lengths and defects of Hilbert functions.
//!
//! For `S = F[x_0..x_n]` and `B_j = sum_i (-1)^i beta_{i,j}` of `S/I`,
//!
//! ```text
//! h_I(k) = sum_{j <= k} B_j C(n + k - j, n)
//! ```
//!
//! equivalently `sum_j B_j z^j = (1 - z)^{n+1} sum_k h_I(k) z^k`. Once `h`
//! is constant on `n + 1` consecutive degrees at the end of a table, every
//! later `B_j` vanishes, and the defect `length - h(k)` equals
//! `(-1)^n sum_{j >= k+n+1} B_j C(j - k - 1, n)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{hilbert_fn, pullback_gens, HilbertTable, IdealGens};
use crate::poly::{binomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiAlt {
    pub n: usize,
    /// `values[j] = B_j` for `0 <= j <= jmax`.
    pub values: Vec<i64>,
}

impl BettiAlt {
    pub fn jmax(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    /// `B_j`; zero past `jmax`.
    pub fn get(&self, j: u32) -> i64 {
        self.values.get(j as usize).copied().unwrap_or(0)
    }

    /// Indices with `B_j != 0`.
    pub fn support(&self) -> Vec<u32> {
        (0..self.values.len() as u32)
            .filter(|&j| self.values[j as usize] != 0)
            .collect()
    }
}

fn c(n: usize, k: usize) -> i64 {
    binomial(n, k) as i64
}

pub fn betti_alternating(h: &HilbertTable, n: usize, jmax: u32) -> Result<BettiAlt> {
    let mut values: Vec<i64> = Vec::with_capacity(jmax as usize + 1);
    for k in 0..=jmax {
        let mut b = h.at(k)? as i64;
        for (j, &bj) in values.iter().enumerate() {
            b -= bj * c(n + k as usize - j, n);
        }
        values.push(b);
    }
    Ok(BettiAlt { n, values })
}

/// Inverse of [`betti_alternating`], treating `B` as zero past `jmax`.
pub fn hilbert_from_betti(b: &BettiAlt, kmax: u32) -> Result<HilbertTable> {
    let values = (0..=kmax)
        .map(|k| {
            let h: i64 = (0..=k.min(b.jmax()))
                .map(|j| b.get(j) * c(b.n + (k - j) as usize, b.n))
                .sum();
            usize::try_from(h)
                .map_err(|_| Error::Precondition(format!("Betti numbers give h({k}) = {h} < 0")))
        })
        .collect::<Result<Vec<_>>>()?;
    HilbertTable::new(values)
}

/// The value on which the table ends after at least `window` equal entries.
pub fn length_of(h: &HilbertTable, window: usize) -> Result<usize> {
    let v = h.values();
    let err = Error::NoPlateau {
        window,
        len: v.len(),
    };
    if window == 0 || v.len() < window {
        return Err(err);
    }
    let last = v[v.len() - 1];
    if v[v.len() - window..].iter().all(|&x| x == last) {
        Ok(last)
    } else {
        Err(err)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub k: u32,
    pub length: usize,
    pub h_k: usize,
    pub delta: i64,
    pub delta_via_betti: i64,
}

/// `length - h(k)`, computed directly and through the Betti sum; the two
/// must agree. The table has to end on a plateau of `n + 1` entries.
pub fn defect(h: &HilbertTable, n: usize, length: usize, k: u32) -> Result<DefectReport> {
    let b = betti_alternating(h, n, h.kmax())?;
    defect_with(&b, h, length, k)
}

/// [`defect`] with precomputed Betti numbers.
pub fn defect_with(b: &BettiAlt, h: &HilbertTable, length: usize, k: u32) -> Result<DefectReport> {
    let n = b.n;
    let h_k = h.at(k)?;
    let delta = length as i64 - h_k as i64;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let tail: i64 = (k + n as u32 + 1..=b.jmax())
        .map(|j| b.get(j) * c((j - k - 1) as usize, n))
        .sum();
    let delta_via_betti = sign * tail;
    if delta != delta_via_betti {
        return Err(Error::DefectMismatch {
            k,
            direct: delta,
            via_betti: delta_via_betti,
        });
    }
    Ok(DefectReport {
        k,
        length,
        h_k,
        delta,
        delta_via_betti,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `h(k) <= k` but `h(k+1) > h(k)`.
    Growth,
    /// `h(k) <= k`, `I_{k+1}` base point free, yet neither
    /// `h(k+1) < h(k)` nor `h(k) = 0`.
    StrictDecrease,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub k: u32,
    pub clause: Clause,
    pub h_k: usize,
    pub h_next: usize,
}

/// Checks both Macaulay-Gotzmann implications along the table. `bpf` maps
/// a degree `k` to whether `I_k` is base point free, where known.
pub fn macaulay_gotzmann_check(h: &HilbertTable, bpf: &BTreeMap<u32, bool>) -> Vec<Violation> {
    let mut out = Vec::new();
    for k in 0..h.kmax() {
        let (hk, next) = (h.values()[k as usize], h.values()[k as usize + 1]);
        if hk > k as usize {
            continue;
        }
        if next > hk {
            out.push(Violation {
                k,
                clause: Clause::Growth,
                h_k: hk,
                h_next: next,
            });
        }
        if bpf.get(&(k + 1)) == Some(&true) && !(next < hk || hk == 0) {
            out.push(Violation {
                k,
                clause: Clause::StrictDecrease,
                h_k: hk,
                h_next: next,
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiMismatch {
    pub j: u32,
    pub expected: i64,
    pub found: i64,
}

/// Compares `B(I_t)` against `B(I)` spread to degrees `t j`: slot `t j`
/// must carry `B_j(I)`, every other slot zero.
pub fn betti_scaling_mismatches(base: &BettiAlt, pulled: &BettiAlt, t: u32) -> Vec<BettiMismatch> {
    (0..=pulled.jmax())
        .filter_map(|j| {
            let expected = if j % t == 0 { base.get(j / t) } else { 0 };
            let found = pulled.get(j);
            (expected != found).then_some(BettiMismatch { j, expected, found })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub k: u32,
    /// `h_I(k - n) != length(I)`.
    pub hypothesis: bool,
    pub degree: u32,
    pub length: usize,
    pub h: usize,
    pub defect: i64,
    /// `C(n + t, n) - n`.
    pub bound: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub t: u32,
    pub base: BettiAlt,
    pub pulled: BettiAlt,
    pub mismatches: Vec<BettiMismatch>,
    pub bound: Option<BoundCheck>,
}

impl PullbackReport {
    pub fn laws_hold(&self) -> bool {
        self.mismatches.is_empty() && self.bound.as_ref().is_none_or(|b| !b.hypothesis || b.holds)
    }
}

/// Computes `B(I)` up to `jmax` and, independently, `B(I_t)` up to `t jmax`
/// from the substituted generators. With `bound_k`, also evaluates
/// `length(I_t) - h_{I_t}(t k - n - 1)` against `C(n + t, n) - n`; that
/// needs both tables to end on a plateau.
pub fn pullback_betti_check(
    ideal: &IdealGens,
    images: &[Polynomial],
    jmax: u32,
    bound_k: Option<u32>,
) -> Result<PullbackReport> {
    let n = ideal.ring().n();
    let pulled_ideal = pullback_gens(ideal, images)?;
    let t = images[0].degree();
    let h = hilbert_fn(ideal, jmax)?;
    let ht = hilbert_fn(&pulled_ideal, t * jmax)?;
    let base = betti_alternating(&h, n, jmax)?;
    let pulled = betti_alternating(&ht, n, t * jmax)?;
    let mismatches = betti_scaling_mismatches(&base, &pulled, t);
    let bound = match bound_k {
        None => None,
        Some(k) => {
            let length = length_of(&h, n + 1)?;
            let length_t = length_of(&ht, n + 1)?;
            let hypothesis = k >= n as u32 && h.at(k - n as u32)? != length;
            let degree = (t * k)
                .checked_sub(n as u32 + 1)
                .ok_or_else(|| Error::Precondition(format!("t k - n - 1 < 0 for k = {k}")))?;
            let report = defect_with(&pulled, &ht, length_t, degree)?;
            let bound = c(n + t as usize, n) - n as i64;
            Some(BoundCheck {
                k,
                hypothesis,
                degree,
                length: length_t,
                h: report.h_k,
                defect: report.delta,
                bound,
                holds: report.delta >= bound,
            })
        }
    };
    Ok(PullbackReport {
        t,
        base,
        pulled,
        mismatches,
        bound,
    })
}
