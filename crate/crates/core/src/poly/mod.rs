//! Homogeneous polynomials in `x0, ..., xn` over GF(p).

mod random;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use random::{derive_seed, random_form, SeedStream};
pub use text::parse;

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub const DEFAULT_DEGREE_GUARD: u32 = 40;

/// `C(n, k)` as a `usize`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        num_integer::binomial(n as u64, k as u64) as usize
    }
}

/// Descriptor of `S = F[x0, ..., xn]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradedRing {
    n: usize,
    field: PrimeField,
    degree_guard: u32,
}

impl GradedRing {
    pub fn new(n: usize, field: PrimeField) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition(format!(
                "projective dimension must be at least 1, got {n}"
            )));
        }
        if (field.modulus() as usize) <= n + 1 {
            return Err(Error::Precondition(format!(
                "characteristic {} must exceed the number of variables {}",
                field.modulus(),
                n + 1
            )));
        }
        Ok(Self {
            n,
            field,
            degree_guard: DEFAULT_DEGREE_GUARD,
        })
    }

    pub fn with_degree_guard(mut self, guard: u32) -> Self {
        self.degree_guard = guard;
        self
    }

    /// Projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree_guard(&self) -> u32 {
        self.degree_guard
    }

    pub fn check_degree(&self, k: u32) -> Result<()> {
        if k > self.degree_guard {
            Err(Error::DegreeGuard {
                degree: k,
                guard: self.degree_guard,
            })
        } else {
            Ok(())
        }
    }

    /// `dim S_k = C(n + k, n)`.
    pub fn dim(&self, k: u32) -> usize {
        binomial(self.n + k as usize, self.n)
    }

    /// The same variables over another prime field.
    pub fn over(&self, field: PrimeField) -> Result<Self> {
        Ok(Self::new(self.n, field)?.with_degree_guard(self.degree_guard))
    }
}

/// Exponent vector. Ordered graded-lexicographically with `x0 > x1 > ... > xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self * x_i`.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Smallest variable index dividing the monomial.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Position of this monomial in [`monomial_basis`] of its degree.
    pub fn index(&self) -> usize {
        let q_total = self.0.len();
        let mut rem = self.degree() as usize;
        let mut idx = 0;
        for (i, &e) in self.0[..q_total - 1].iter().enumerate() {
            let e = e as usize;
            // monomials agreeing so far but with a larger exponent at i
            let q = q_total - 1 - i;
            if rem > e {
                idx += binomial(rem - e - 1 + q, q);
            }
            rem -= e;
        }
        idx
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `k`, strictly decreasing in the monomial order.
pub fn monomial_basis(ring: &GradedRing, k: u32) -> Result<Vec<Monomial>> {
    ring.check_degree(k)?;
    let nvars = ring.nvars();
    let mut out = Vec::with_capacity(ring.dim(k));
    let mut current = vec![0u32; nvars];
    fill_basis(&mut current, 0, k, &mut out);
    Ok(out)
}

fn fill_basis(current: &mut Vec<u32>, i: usize, rem: u32, out: &mut Vec<Monomial>) {
    if i + 1 == current.len() {
        current[i] = rem;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=rem).rev() {
        current[i] = e;
        fill_basis(current, i + 1, rem - e, out);
    }
    current[i] = 0;
}

/// Homogeneous form. The zero form still carries a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: GradedRing,
    degree: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(ring: GradedRing, degree: u32) -> Self {
        Self {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: GradedRing, c: u32) -> Self {
        Self::from_monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: GradedRing, i: usize) -> Result<Self> {
        if i >= ring.nvars() {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: ring.nvars(),
            });
        }
        Ok(Self::from_monomial(ring, Monomial::var(ring.nvars(), i), 1))
    }

    pub fn from_monomial(ring: GradedRing, m: Monomial, c: u32) -> Self {
        let degree = m.degree();
        let c = c % ring.field().modulus();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self {
            ring,
            degree,
            terms,
        }
    }

    /// Sums repeated monomials; rejects terms of the wrong degree.
    pub fn from_terms(
        ring: GradedRing,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Result<Self> {
        let field = ring.field();
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: m.0.len(),
                });
            }
            if m.degree() != degree {
                return Err(Error::MixedDegrees(degree, m.degree()));
            }
            let slot = map.entry(m).or_insert(0);
            *slot = field.add(*slot, c % field.modulus());
        }
        map.retain(|_, c| *c != 0);
        Ok(Self {
            ring,
            degree,
            terms: map,
        })
    }

    /// Coefficients over [`monomial_basis`] of the given degree.
    pub fn from_dense(ring: GradedRing, degree: u32, coeffs: &[u32]) -> Result<Self> {
        let basis = monomial_basis(&ring, degree)?;
        if basis.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Self::from_terms(ring, degree, basis.into_iter().zip(coeffs.iter().copied()))
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut v = vec![0; self.ring.dim(self.degree)];
        for (m, &c) in &self.terms {
            v[m.index()] = c;
        }
        v
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }

    fn combine(&self, other: &Polynomial, sign: bool) -> Result<Polynomial> {
        self.same_ring(other)?;
        let degree = match (self.is_zero(), other.is_zero()) {
            (_, true) => self.degree,
            (true, false) => other.degree,
            _ if self.degree == other.degree => self.degree,
            _ => return Err(Error::MixedDegrees(self.degree, other.degree)),
        };
        let f = self.ring.field();
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            let c = if sign { c } else { f.neg(c) };
            let slot = terms.entry(m.clone()).or_insert(0);
            *slot = f.add(*slot, c);
        }
        terms.retain(|_, c| *c != 0);
        Ok(Polynomial {
            ring: self.ring,
            degree,
            terms,
        })
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, false)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.modulus();
        let mut terms = BTreeMap::new();
        if c != 0 {
            for (m, &x) in &self.terms {
                terms.insert(m.clone(), f.mul(x, c));
            }
        }
        Polynomial {
            ring: self.ring,
            degree: self.degree,
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field().modulus() - 1)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let degree = self.degree + other.degree;
        self.ring.check_degree(degree)?;
        let f = self.ring.field();
        let p = f.modulus() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let slot = acc.entry(a.mul(b)).or_insert(0);
                *slot = (*slot + x as u64 * y as u64) % p;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (m, c as u32))
            .collect();
        Ok(Polynomial {
            ring: self.ring,
            degree,
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(self.ring, 1);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let degree = self.degree + m.degree();
        self.ring.check_degree(degree)?;
        Ok(Polynomial {
            ring: self.ring,
            degree,
            terms: self.terms.iter().map(|(a, &c)| (a.mul(m), c)).collect(),
        })
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        let nvars = self.ring.nvars();
        if i >= nvars {
            return Err(Error::VariableOutOfRange { index: i, nvars });
        }
        let f = self.ring.field();
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let c = f.mul(c, f.reduce_u64(e as u64));
            if c != 0 {
                terms.insert(m.div_var(i).expect("exponent is positive"), c);
            }
        }
        Ok(Polynomial {
            ring: self.ring,
            degree: self.degree.saturating_sub(1),
            terms,
        })
    }

    /// Replaces `x_i` by `images[i]`. All images share one degree `t` and
    /// one ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::ImageCount {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = *images[0].ring();
        let t = images[0].degree();
        for g in &images[1..] {
            if g.ring() != &target {
                return Err(Error::RingMismatch);
            }
            if g.degree() != t {
                return Err(Error::UnequalImageDegrees(t, g.degree()));
            }
        }
        if target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let degree = t * self.degree;
        target.check_degree(degree)?;

        // powers[i][e] = images[i]^e, built on demand
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::constant(target, 1), g.clone()])
            .collect();
        let mut out = Polynomial::zero(target, degree);
        for (m, &c) in &self.terms {
            let mut term = Polynomial::constant(target, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        let nvars = self.ring.nvars();
        if point.len() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: point.len(),
            });
        }
        let f = self.ring.field();
        let mut total = 0;
        for (m, &c) in &self.terms {
            let mut v = c;
            for (&x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = f.mul(v, f.pow(x % f.modulus(), e as u64));
                }
            }
            total = f.add(total, v);
        }
        Ok(total)
    }

    /// Same coefficients viewed in a ring with more variables: variable `i`
    /// of `self` becomes variable `targets[i]`.
    pub fn embed(&self, ring: GradedRing, targets: &[usize]) -> Result<Polynomial> {
        let images = targets
            .iter()
            .map(|&j| Polynomial::var(ring, j))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&images)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_canonical(self, f)
    }
}
