//! The Gorenstein ideal `J` spanned by a hyperplane of `S_{d+1}`.
//!
//! `J_{d+1}` is the kernel of a functional `lambda` on `S_{d+1}` vanishing on
//! `(I_H)_{d+1}`, and `J_k = { f : f S_{d+1-k} ⊆ J_{d+1} }` is the kernel of
//! the catalecticant matrix `(lambda(u m))` with `u` running over degree-k
//! and `m` over degree-`(d+1-k)` monomials. `J_k = S_k` for `k > d + 1`.

use crate::error::{Error, Result};
use crate::matrix::{kernel, Matrix};
use crate::poly::monomial_basis;

use super::{graded_piece, GradedPiece, IdealGens};

/// `J_0, ..., J_{d+1}`.
///
/// `lambda` is the functional with kernel
/// `(I_H)_{d+1} + span(standard monomials other than the last one)`, where
/// the standard monomials are those outside the pivot columns of
/// `(I_H)_{d+1}` and "last" refers to the decreasing monomial order.
pub fn gorenstein_closure(ideal: &IdealGens, d: u32) -> Result<Vec<GradedPiece>> {
    let ring = *ideal.ring();
    let field = ring.field();
    let top = d + 1;
    let piece = graded_piece(ideal, top)?;
    let free = piece.subspace().free_columns();
    let &chosen = free
        .last()
        .ok_or_else(|| Error::Precondition(format!("h(I_H) vanishes in degree {top}")))?;

    let lambda: Vec<u32> = (0..ring.dim(top))
        .map(|col| match piece.subspace().row_for_pivot(col) {
            Some(row) => field.neg(row[chosen]),
            None => u32::from(col == chosen),
        })
        .collect();

    let mut pieces = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        let rows = monomial_basis(&ring, top - k)?;
        let cols = monomial_basis(&ring, k)?;
        let mut cat = Matrix::zeros(field, rows.len(), cols.len())?;
        for (i, m) in rows.iter().enumerate() {
            for (j, u) in cols.iter().enumerate() {
                cat.set(i, j, lambda[u.mul(m).index()]);
            }
        }
        pieces.push(GradedPiece::new(ring, k, kernel(&cat))?);
    }
    Ok(pieces)
}
