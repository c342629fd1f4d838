use serde::Serialize;

use nodal_core::defect::defect;
use nodal_core::ideal::{graded_piece, HilbertTable, IdealGens};
use nodal_core::poly::binomial;
use nodal_core::{Error, Polynomial, Result};

use crate::example::{check_parameters, stable_degree, NodalExample};

/// The ideal of the partial derivatives. `f` lies in it whenever the
/// characteristic does not divide `deg f`.
pub fn jacobian_ideal(f: &Polynomial) -> Result<IdealGens> {
    let ring = *f.ring();
    let p = ring.field().modulus();
    if f.degree().is_multiple_of(p) {
        return Err(Error::CharacteristicDividesDegree {
            p,
            degree: f.degree(),
        });
    }
    let partials = (0..ring.nvars())
        .map(|i| f.partial_derivative(i))
        .collect::<Result<Vec<_>>>()?;
    IdealGens::new(ring, partials)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TangentDims {
    /// Number of nodes `s`.
    pub expected_codim: usize,
    /// `s - delta_d = h_I(d)`.
    pub actual_codim: usize,
    pub excess: usize,
    pub dim_i_d: usize,
    pub dim_j_d: usize,
    /// `dim (I/J)_d - dim (I_d/<f>)`.
    pub gap: i64,
}

pub fn tangent_dims(ex: &NodalExample) -> Result<TangentDims> {
    let n = ex.ring.n();
    let delta = defect(&ex.hilbert, n, ex.length, ex.d)?.delta;
    let jac = jacobian_ideal(&ex.f)?;
    let j_d = graded_piece(&jac, ex.d)?;
    let i_d = graded_piece(&ex.node_ideal, ex.d)?;
    if !i_d.subspace().contains_space(j_d.subspace())? {
        return Err(Error::Precondition("J_d is not contained in I_d".into()));
    }
    let excess = usize::try_from(delta)
        .map_err(|_| Error::Precondition(format!("negative defect {delta}")))?;
    let quotient = i_d.dim() as i64 - j_d.dim() as i64;
    let modulo_f = i_d.dim() as i64 - 1;
    Ok(TangentDims {
        expected_codim: ex.length,
        actual_codim: ex.length - excess,
        excess,
        dim_i_d: i_d.dim(),
        dim_j_d: j_d.dim(),
        gap: quotient - modulo_f,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Alexander {
    /// Exponent of `t + 1`.
    pub exponent: i64,
    /// `d^2 - 3d + 3`.
    pub bound: i64,
}

/// Exponent of `t + 1` for a nodal surface of degree `d`: zero for odd `d`,
/// otherwise the defect of the node ideal in degree `3d/2 - 4`.
pub fn alexander_exponent(h: &HilbertTable, length: usize, d: u32) -> Result<Alexander> {
    let bound = (d * d - 3 * d + 3) as i64;
    let exponent = if d % 2 == 1 {
        0
    } else {
        defect(h, 3, length, 3 * d / 2 - 4)?.delta
    };
    if exponent > bound {
        return Err(Error::Precondition(format!(
            "exponent {exponent} exceeds {bound}"
        )));
    }
    Ok(Alexander { exponent, bound })
}

/// [`alexander_exponent`] from the node ideal itself.
pub fn alexander_exponent_of(node_ideal: &IdealGens, d: u32) -> Result<Alexander> {
    let n = node_ideal.ring().n();
    let h = nodal_core::ideal::hilbert_fn(node_ideal, stable_degree(d) + n as u32)?;
    let length = nodal_core::defect::length_of(&h, n + 1)?;
    alexander_exponent(&h, length, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocusDims {
    #[serde(rename = "dim_L0")]
    pub dim_l0: i64,
    #[serde(rename = "dim_L")]
    pub dim_l: i64,
    #[serde(rename = "codim_L")]
    pub codim_l: i64,
}

/// Dimensions of the loci `L0 ⊂ L ⊂ S_d` of surfaces `x0 f1 + f2^2 f3`
/// (for `L0`) and their images under coordinate changes (for `L`). The
/// codimension formula is checked against `dim S_d - dim L`.
pub fn locus_dims(d: u32, a: u32) -> Result<LocusDims> {
    check_parameters(d, a)?;
    let (d, a) = (d as i64, a as i64);
    let c = |n: i64, k: usize| binomial(n as usize, k) as i64;
    let dim_l0 = c(d + 2, 3) + c(a + 2, 2) + c(d - 2 * a + 2, 2) - 1;
    let dim_l = dim_l0 + 3;
    let twice = -5 * a * a + 3 * a + 4 * d * a - 6;
    let codim_l = twice / 2;
    if twice % 2 != 0 || codim_l != c(d + 3, 3) - dim_l {
        return Err(Error::Precondition(format!(
            "codimension formula gives {twice}/2, dimension count gives {}",
            c(d + 3, 3) - dim_l
        )));
    }
    Ok(LocusDims {
        dim_l0,
        dim_l,
        codim_l,
    })
}
