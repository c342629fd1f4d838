//! Hyperplane sections `I_H = (I, l)` for general linear forms `l`.

use crate::error::{Error, Result};
use crate::matrix::rank;
use crate::poly::{derive_seed, random_form, GradedRing, Polynomial};

use super::{IdealGens, QuotientTower};

const MAX_ATTEMPTS: u32 = 16;

/// `I_H` in the ring of the hyperplane, with the form that cut it.
#[derive(Debug, Clone)]
pub struct Section {
    pub ideal: IdealGens,
    pub form: Polynomial,
    /// Index of the variable solved for on the hyperplane.
    pub eliminated: usize,
}

/// Coordinates `y_0..y_{n-1}` on `V(l)`: `x_v` is solved for, where `v` is
/// the last variable with a nonzero coefficient, and the remaining `x_i`
/// become the `y` in order.
fn hyperplane_images(form: &Polynomial) -> Result<(GradedRing, usize, Vec<Polynomial>)> {
    let ring = *form.ring();
    if form.degree() != 1 || form.is_zero() {
        return Err(Error::Precondition(
            "the section needs a nonzero linear form".into(),
        ));
    }
    if ring.n() < 2 {
        return Err(Error::Precondition(
            "hyperplane sections need at least three variables".into(),
        ));
    }
    let field = ring.field();
    let target = GradedRing::new(ring.n() - 1, field)?.with_degree_guard(ring.degree_guard());
    let coeffs = form.to_dense();
    let v = (0..ring.nvars())
        .rev()
        .find(|&i| coeffs[i] != 0)
        .expect("nonzero form");
    let scale = field.neg(field.inv(coeffs[v]));
    let mut images = Vec::with_capacity(ring.nvars());
    let mut slot = 0;
    let mut solved = Polynomial::zero(target, 1);
    for (i, &c) in coeffs.iter().enumerate() {
        if i == v {
            images.push(Polynomial::zero(target, 1));
            continue;
        }
        let y = Polynomial::var(target, slot)?;
        slot += 1;
        solved = solved.add(&y.scale(field.mul(scale, c)))?;
        images.push(y);
    }
    images[v] = solved;
    Ok((target, v, images))
}

/// Restricts `I` to `V(l)`, after certifying that `l` is a nonzerodivisor
/// on `(S/I)_k` for every `k < kmax`.
pub fn quotient_by_linear(ideal: &IdealGens, form: &Polynomial, kmax: u32) -> Result<Section> {
    if form.ring() != ideal.ring() {
        return Err(Error::RingMismatch);
    }
    let (target, eliminated, images) = hyperplane_images(form)?;
    let mut tower = QuotientTower::new(ideal);
    for k in 0..kmax {
        let map = tower.multiplication(k, form)?;
        if rank(&map) != tower.dim(k)? {
            return Err(Error::GenericityFailure { degree: k });
        }
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    Ok(Section {
        ideal: IdealGens::new(target, gens)?,
        form: form.clone(),
        eliminated,
    })
}

/// The image of `I` on `V(l)`, without any genericity check.
pub fn restrict_to_hyperplane(ideal: &IdealGens, form: &Polynomial) -> Result<IdealGens> {
    if form.ring() != ideal.ring() {
        return Err(Error::RingMismatch);
    }
    let (target, _, images) = hyperplane_images(form)?;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    IdealGens::new(target, gens)
}

/// [`quotient_by_linear`] with seeded random forms, retrying on
/// genericity failures.
pub fn general_section(ideal: &IdealGens, kmax: u32, seed: u64) -> Result<Section> {
    for attempt in 0..MAX_ATTEMPTS {
        let form = random_form(ideal.ring(), 1, derive_seed(seed, attempt as u64))?;
        if form.is_zero() {
            continue;
        }
        match quotient_by_linear(ideal, &form, kmax) {
            Err(Error::GenericityFailure { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::GenericityExhausted {
        attempts: MAX_ATTEMPTS,
        what: "linear form".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::hilbert_fn;
    use crate::poly::{parse, tests::ring};

    #[test]
    fn plane_cut_by_last_variable() {
        let r = ring(3, 7);
        let i = IdealGens::new(r, vec![parse(&r, "x0").unwrap()]).unwrap();
        let s = quotient_by_linear(&i, &parse(&r, "x3").unwrap(), 5).unwrap();
        assert_eq!(s.eliminated, 3);
        assert_eq!(s.ideal.ring().nvars(), 3);
        assert_eq!(s.ideal.gens()[0].to_string(), "x0");
        assert_eq!(s.ideal.degrees(), vec![1]);
    }

    #[test]
    fn elimination_solves_for_the_last_variable() {
        let r = ring(3, 7);
        let i = IdealGens::new(r, vec![parse(&r, "x3^2").unwrap()]).unwrap();
        let s = quotient_by_linear(&i, &parse(&r, "x0 + x1 + 2*x3").unwrap(), 0).unwrap();
        // x3 = -(x0 + x1)/2 = 3*(x0 + x1) over GF(7), squared.
        assert_eq!(s.ideal.gens()[0].to_string(), "2*x0^2 + 4*x0*x1 + 2*x1^2");
    }

    #[test]
    fn zero_divisors_are_refused() {
        let r = ring(3, 7);
        let i = IdealGens::new(r, vec![parse(&r, "x0*x1").unwrap()]).unwrap();
        assert_eq!(
            quotient_by_linear(&i, &parse(&r, "x0").unwrap(), 3).unwrap_err(),
            Error::GenericityFailure { degree: 1 }
        );
    }

    #[test]
    fn summation_identity_for_a_curve() {
        let r = ring(3, 65521);
        let pts = IdealGens::new(
            r,
            ["x1*x3 - x2^2", "x0*x2 - x1^2", "x0*x3 - x1*x2"]
                .iter()
                .map(|g| parse(&r, g).unwrap())
                .collect(),
        )
        .unwrap();
        let s = general_section(&pts, 8, 3).unwrap();
        let h = hilbert_fn(&pts, 8).unwrap();
        let hh = hilbert_fn(&s.ideal, 8).unwrap();
        let mut acc = 0;
        for k in 0..=8 {
            acc += hh.at(k).unwrap();
            assert_eq!(h.at(k).unwrap(), acc);
        }
    }
}
