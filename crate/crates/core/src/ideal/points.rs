//! Ideals of finite sets of reduced rational points.

use crate::error::{Error, Result};
use crate::matrix::{kernel, rank, Matrix};
use crate::poly::{monomial_basis, GradedRing};

use super::{GradedPiece, HilbertTable};

/// Reduces coordinates and scales the first nonzero one to 1.
fn normalize(ring: &GradedRing, points: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let field = ring.field();
    let mut seen: Vec<Vec<u32>> = Vec::with_capacity(points.len());
    for (i, pt) in points.iter().enumerate() {
        if pt.len() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: pt.len(),
            });
        }
        let pt: Vec<u32> = pt.iter().map(|&c| field.reduce_u64(c as u64)).collect();
        let lead = *pt.iter().find(|&&c| c != 0).ok_or(Error::ZeroPoint(i))?;
        let inv = field.inv(lead);
        let pt: Vec<u32> = pt.iter().map(|&c| field.mul(c, inv)).collect();
        if seen.contains(&pt) {
            return Err(Error::RepeatedPoint(i));
        }
        seen.push(pt);
    }
    Ok(seen)
}

fn evaluation_matrix(ring: &GradedRing, points: &[Vec<u32>], k: u32) -> Result<Matrix> {
    let field = ring.field();
    let basis = monomial_basis(ring, k)?;
    let mut m = Matrix::zeros(field, points.len(), basis.len())?;
    for (r, pt) in points.iter().enumerate() {
        let powers: Vec<Vec<u32>> = pt
            .iter()
            .map(|&c| {
                let mut row = vec![1u32; k as usize + 1];
                for e in 1..=k as usize {
                    row[e] = field.mul(row[e - 1], c);
                }
                row
            })
            .collect();
        for (col, mono) in basis.iter().enumerate() {
            let value = mono
                .exponents()
                .iter()
                .zip(&powers)
                .fold(1, |acc, (&e, pw)| field.mul(acc, pw[e as usize]));
            m.set(r, col, value);
        }
    }
    Ok(m)
}

/// Forms of degree `k` vanishing at every point: the kernel of evaluation.
pub fn vanishing_ideal_piece(
    ring: &GradedRing,
    points: &[Vec<u32>],
    k: u32,
) -> Result<GradedPiece> {
    ring.check_degree(k)?;
    let points = normalize(ring, points)?;
    let eval = evaluation_matrix(ring, &points, k)?;
    GradedPiece::new(*ring, k, kernel(&eval))
}

/// Hilbert function of the ideal of the points: the rank of evaluation.
pub fn points_hilbert(ring: &GradedRing, points: &[Vec<u32>], kmax: u32) -> Result<HilbertTable> {
    ring.check_degree(kmax)?;
    let points = normalize(ring, points)?;
    let values = (0..=kmax)
        .map(|k| evaluation_matrix(ring, &points, k).map(|m| rank(&m)))
        .collect::<Result<Vec<_>>>()?;
    HilbertTable::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::intersection_dim;
    use crate::poly::tests::ring;
    use crate::poly::SeedStream;

    #[test]
    fn single_and_double_points() {
        let r = ring(3, 101);
        let one = vec![vec![1, 0, 0, 0]];
        assert!(points_hilbert(&r, &one, 8)
            .unwrap()
            .values()
            .iter()
            .all(|&h| h == 1));
        let two = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
        assert_eq!(vanishing_ideal_piece(&r, &two, 1).unwrap().codim(), 2);
    }

    #[test]
    fn repeated_and_zero_points_are_rejected() {
        let r = ring(3, 101);
        let pts = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8]];
        assert_eq!(
            vanishing_ideal_piece(&r, &pts, 2).unwrap_err(),
            Error::RepeatedPoint(1)
        );
        let pts = vec![vec![0, 0, 0, 0]];
        assert_eq!(
            points_hilbert(&r, &pts, 2).unwrap_err(),
            Error::ZeroPoint(0)
        );
    }

    #[test]
    fn hilbert_function_reaches_the_number_of_points() {
        let r = ring(3, 65521);
        let mut s = SeedStream::new(7);
        for m in 1..=9usize {
            let pts: Vec<Vec<u32>> = (0..m)
                .map(|_| (0..4).map(|_| s.next_below(65521)).collect())
                .collect();
            let h = points_hilbert(&r, &pts, m as u32).unwrap();
            for k in 0..=m as u32 {
                assert!(h.at(k).unwrap() <= m);
            }
            assert_eq!(h.at(m as u32 - 1).unwrap(), m);
        }
    }

    #[test]
    fn agrees_with_intersection_of_single_point_ideals() {
        let r = ring(3, 8191);
        let mut s = SeedStream::new(11);
        for m in 1..=5usize {
            let pts: Vec<Vec<u32>> = (0..m)
                .map(|_| (0..4).map(|_| s.next_below(8191)).collect())
                .collect();
            for k in 0..=4u32 {
                let joint = vanishing_ideal_piece(&r, &pts, k).unwrap();
                let mut acc = vanishing_ideal_piece(&r, &pts[..1], k)
                    .unwrap()
                    .subspace()
                    .clone();
                for p in &pts[1..] {
                    let single = vanishing_ideal_piece(&r, std::slice::from_ref(p), k).unwrap();
                    let both = intersection_dim(&acc, single.subspace()).unwrap();
                    let next = crate::matrix::kernel(&stack_complement(&acc, single.subspace()));
                    assert_eq!(next.dim(), both);
                    acc = next;
                }
                assert_eq!(acc.dim(), joint.dim());
                assert!(acc.contains_space(joint.subspace()).unwrap());
            }
        }
    }

    /// Intersection of two subspaces as the common kernel of their
    /// annihilators.
    fn stack_complement(a: &crate::matrix::RowBasis, b: &crate::matrix::RowBasis) -> Matrix {
        let ann_a = kernel(a.basis());
        let ann_b = kernel(b.basis());
        let cols = a.ambient_dim();
        let rows: Vec<Vec<i64>> = ann_a
            .rows()
            .chain(ann_b.rows())
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        if rows.is_empty() {
            return Matrix::zeros(a.field(), 0, cols).unwrap();
        }
        Matrix::from_rows(a.field(), &rows).unwrap()
    }
}
