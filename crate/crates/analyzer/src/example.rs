use nodal_core::defect::length_of;
use nodal_core::ideal::{contains, hilbert_fn, HilbertTable, IdealGens};
use nodal_core::poly::{derive_seed, random_form, SeedStream};
use nodal_core::{Error, GradedRing, Polynomial, Result};

const MAX_ATTEMPTS: u64 = 16;

/// `ceil(3d/2) - 3`: from this degree on, node ideals have reached their
/// length.
pub fn stable_degree(d: u32) -> u32 {
    (3 * d).div_ceil(2) - 3
}

/// A surface `f = x0 f1 + f2^2 f3` whose singular locus contains the
/// complete intersection `V(x0, f2, f1)` of multidegree `(1, a, d - 1)`.
#[derive(Debug, Clone)]
pub struct NodalExample {
    pub d: u32,
    pub a: u32,
    pub ring: GradedRing,
    /// The seed the forms were drawn from (after any retries).
    pub seed: u64,
    pub f1: Polynomial,
    pub f2: Polynomial,
    pub f3: Polynomial,
    pub f: Polynomial,
    pub node_ideal: IdealGens,
    /// `h` of the node ideal, from degree 0 to `kmax + n`.
    pub hilbert: HilbertTable,
    pub kmax: u32,
    pub length: usize,
}

pub fn check_parameters(d: u32, a: u32) -> Result<()> {
    if d < 8 {
        return Err(Error::Precondition(format!("d = {d}, need d >= 8")));
    }
    if a < 4 || 2 * a > d {
        return Err(Error::Precondition(format!(
            "a = {a}, need 4 <= a <= d/2 = {}",
            d / 2
        )));
    }
    Ok(())
}

impl NodalExample {
    /// Assembles `f` from given parts. `f2` and `f3` must not involve `x0`.
    /// Fails with [`Error::GenericityFailure`] if some partial of `f` is not
    /// in the node ideal or the node ideal does not have length `a (d - 1)`.
    pub fn from_parts(
        d: u32,
        a: u32,
        seed: u64,
        kmax: u32,
        f1: Polynomial,
        f2: Polynomial,
        f3: Polynomial,
    ) -> Result<Self> {
        check_parameters(d, a)?;
        let ring = *f1.ring();
        if ring.n() != 3 {
            return Err(Error::Precondition("surfaces live in P^3".into()));
        }
        let p = ring.field().modulus();
        if d.is_multiple_of(p) {
            return Err(Error::CharacteristicDividesDegree { p, degree: d });
        }
        if (f1.degree(), f2.degree(), f3.degree()) != (d - 1, a, d - 2 * a) {
            return Err(Error::Precondition("forms of the wrong degrees".into()));
        }
        let x0 = Polynomial::var(ring, 0)?;
        if [&f2, &f3]
            .iter()
            .any(|g| g.terms().any(|(m, _)| m.exponents()[0] > 0))
        {
            return Err(Error::Precondition("f2 and f3 must not involve x0".into()));
        }
        let f = x0.mul(&f1)?.add(&f2.pow(2)?.mul(&f3)?)?;
        let node_ideal = IdealGens::new(ring, vec![x0, f2.clone(), f1.clone()])?;
        for i in 0..ring.nvars() {
            if !contains(&f.partial_derivative(i)?, &node_ideal)? {
                return Err(Error::GenericityFailure { degree: d - 1 });
            }
        }
        let hilbert = hilbert_fn(&node_ideal, kmax + ring.n() as u32)?;
        let length = match length_of(&hilbert, ring.n() + 1) {
            Ok(len) => len,
            Err(Error::NoPlateau { .. }) => return Err(Error::GenericityFailure { degree: kmax }),
            Err(e) => return Err(e),
        };
        if length != (a * (d - 1)) as usize {
            return Err(Error::GenericityFailure { degree: kmax });
        }
        Ok(Self {
            d,
            a,
            ring,
            seed,
            f1,
            f2,
            f3,
            f,
            node_ideal,
            hilbert,
            kmax,
            length,
        })
    }

    /// `h_I(d)`.
    pub fn h_d(&self) -> usize {
        self.hilbert.values()[self.d as usize]
    }
}

/// Seeded random instance; retries with derived seeds on genericity
/// failures.
pub fn build_example(d: u32, a: u32, ring: GradedRing, seed: u64) -> Result<NodalExample> {
    build_example_to(d, a, ring, seed, stable_degree(d))
}

/// [`build_example`] with the Hilbert table running to `kmax + n`.
pub fn build_example_to(
    d: u32,
    a: u32,
    ring: GradedRing,
    seed: u64,
    kmax: u32,
) -> Result<NodalExample> {
    check_parameters(d, a)?;
    if ring.n() != 3 {
        return Err(Error::Precondition("surfaces live in P^3".into()));
    }
    let plane = GradedRing::new(2, ring.field())?.with_degree_guard(ring.degree_guard());
    let tail = [1, 2, 3];
    for attempt in 0..MAX_ATTEMPTS {
        let s = if attempt == 0 {
            seed
        } else {
            derive_seed(seed, attempt)
        };
        let f1 = random_form(&ring, d - 1, derive_seed(s, 1))?;
        let f2 = random_form(&plane, a, derive_seed(s, 2))?.embed(ring, &tail)?;
        let f3 = if 2 * a == d {
            let c = 1 + SeedStream::new(derive_seed(s, 3)).next_below(ring.field().modulus() - 1);
            Polynomial::constant(ring, c)
        } else {
            random_form(&plane, d - 2 * a, derive_seed(s, 3))?.embed(ring, &tail)?
        };
        match NodalExample::from_parts(d, a, s, kmax, f1, f2, f3) {
            Err(Error::GenericityFailure { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::GenericityExhausted {
        attempts: MAX_ATTEMPTS as u32,
        what: format!("example d={d} a={a}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nodal_core::PrimeField;

    fn ring(p: u64) -> GradedRing {
        GradedRing::new(3, PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn stable_degrees() {
        assert_eq!(stable_degree(8), 9);
        assert_eq!(stable_degree(9), 11);
        assert_eq!(stable_degree(10), 12);
        assert_eq!(stable_degree(12), 15);
    }

    #[test]
    fn lengths_are_products_of_degrees() {
        let r = ring(65521);
        for (d, a) in [(8, 4), (10, 4), (10, 5)] {
            let ex = build_example(d, a, r, 7).unwrap();
            assert_eq!(ex.length, (a * (d - 1)) as usize);
            assert_eq!(ex.node_ideal.degrees(), vec![1, a, d - 1]);
            assert_eq!(ex.f.degree(), d);
        }
        let ex = build_example(10, 5, r, 7).unwrap();
        assert_eq!(ex.f3.degree(), 0);
        assert!(!ex.f3.is_zero());
    }

    #[test]
    fn decomposition_is_exact() {
        let r = ring(32749);
        let ex = build_example(9, 4, r, 3).unwrap();
        let x0 = Polynomial::var(r, 0).unwrap();
        let rebuilt = x0
            .mul(&ex.f1)
            .unwrap()
            .add(&ex.f2.pow(2).unwrap().mul(&ex.f3).unwrap())
            .unwrap();
        assert_eq!(rebuilt, ex.f);
    }

    #[test]
    fn preconditions() {
        let r = ring(65521);
        assert!(matches!(
            build_example(7, 4, r, 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            build_example(8, 3, r, 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            build_example(9, 5, r, 0),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            build_example(10, 4, ring(5), 0).unwrap_err(),
            Error::CharacteristicDividesDegree { p: 5, degree: 10 }
        );
    }
}
