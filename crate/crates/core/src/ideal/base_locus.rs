//! Base loci of linear systems `|I_k|`, decided from Hilbert functions.
//!
//! Let `K` be the ideal generated by `I_k`. For `j >= k`, `h_K(j+1)` never
//! exceeds the Macaulay bound `h_K(j)^<j>`. Once it reaches that bound,
//! Gotzmann persistence fixes the Hilbert function in every later degree,
//! so the dimension of the base locus can be read off exactly.

use crate::error::{Error, Result};
use crate::poly::{binomial, derive_seed, random_form};

use super::{graded_piece, restrict_to_hyperplane, IdealGens, QuotientTower};

const SECTION_SEED: u64 = 0x6261_7365;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLocus {
    Empty,
    /// Zero-dimensional, of the given length.
    Finite {
        length: usize,
    },
    /// Positive-dimensional.
    Positive,
}

/// `a^<j>`: the largest value `h(j+1)` may take when `h(j) = a`.
pub fn macaulay_bound(a: usize, j: u32) -> usize {
    assert!(j >= 1, "Macaulay representations need j >= 1");
    let mut rest = a;
    let mut bound = 0;
    let mut i = j as usize;
    while rest > 0 && i >= 1 {
        let mut m = i;
        while binomial(m + 1, i) <= rest {
            m += 1;
        }
        rest -= binomial(m, i);
        bound += binomial(m + 1, i + 1);
        i -= 1;
    }
    bound
}

/// Classifies the base locus of `|I_k|` over the algebraic closure.
///
/// Fails with [`Error::Inconclusive`] if the degree or size guard is reached
/// before persistence sets in.
pub fn base_locus(ideal: &IdealGens, k: u32) -> Result<BaseLocus> {
    let piece = graded_piece(ideal, k)?;
    if piece.dim() == 0 {
        return Ok(BaseLocus::Positive);
    }
    if k == 0 {
        return Ok(BaseLocus::Empty);
    }
    let system = IdealGens::new(*ideal.ring(), piece.polynomials())?;
    let mut tower = QuotientTower::new(&system);
    let inconclusive = |e: Error, j: u32| match e {
        Error::DegreeGuard { .. } | Error::MatrixTooLarge { .. } => {
            Error::Inconclusive { reached: j }
        }
        other => other,
    };
    let mut j = k;
    let mut h = tower.dim(j).map_err(|e| inconclusive(e, j))?;
    loop {
        let next = tower.dim(j + 1).map_err(|e| inconclusive(e, j))?;
        if next == macaulay_bound(h, j) {
            return Ok(match next {
                0 => BaseLocus::Empty,
                _ if macaulay_bound(next, j + 1) == next => BaseLocus::Finite { length: next },
                _ => BaseLocus::Positive,
            });
        }
        h = next;
        j += 1;
    }
}

/// True iff the base locus of `|I_k|` is finite (possibly empty).
///
/// A hyperplane missing the base locus certifies finiteness cheaply; only
/// when the seeded hyperplane fails is the full classification run.
pub fn finite_base_locus(ideal: &IdealGens, k: u32) -> Result<bool> {
    let ring = *ideal.ring();
    let piece = graded_piece(ideal, k)?;
    if ring.n() >= 2 && piece.dim() > 0 {
        let system = IdealGens::new(ring, piece.polynomials())?;
        let form = random_form(&ring, 1, derive_seed(SECTION_SEED, k as u64))?;
        if !form.is_zero() {
            let cut = restrict_to_hyperplane(&system, &form)?;
            if matches!(base_point_free(&cut, k), Ok(true)) {
                return Ok(true);
            }
        }
    }
    Ok(base_locus(ideal, k)? != BaseLocus::Positive)
}

/// True iff the forms of `I_k` have no common zero.
pub fn base_point_free(ideal: &IdealGens, k: u32) -> Result<bool> {
    // Fewer than n + 1 forms always share a zero.
    if graded_piece(ideal, k)?.dim() < ideal.ring().nvars() {
        return Ok(false);
    }
    Ok(base_locus(ideal, k)? == BaseLocus::Empty)
}
