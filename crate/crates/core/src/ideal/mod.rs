//! Homogeneous ideals, one graded piece at a time.

mod base_locus;
mod gorenstein;
mod points;
mod section;
mod tower;

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{Echelon, RowBasis, DEFAULT_ENTRY_GUARD};
use crate::poly::{monomial_basis, parse, GradedRing, Polynomial};

pub use base_locus::{base_locus, base_point_free, finite_base_locus, macaulay_bound, BaseLocus};
pub use gorenstein::gorenstein_closure;
pub use points::{points_hilbert, vanishing_ideal_piece};
pub use section::{general_section, quotient_by_linear, restrict_to_hyperplane, Section};
pub use tower::QuotientTower;

/// A finite homogeneous generating set. Zero generators are discarded, so
/// an empty list is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    ring: GradedRing,
    gens: Vec<Polynomial>,
}

impl IdealGens {
    pub fn new(ring: GradedRing, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { ring, gens })
    }

    pub fn zero(ring: GradedRing) -> Self {
        Self {
            ring,
            gens: Vec::new(),
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(Polynomial::degree).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators of `I * J`: all pairwise products.
    pub fn product(&self, other: &IdealGens) -> Result<IdealGens> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g)?);
            }
        }
        IdealGens::new(self.ring, gens)
    }

    /// Pairwise products `g_i g_j` with `i <= j`.
    pub fn square(&self) -> Result<IdealGens> {
        let mut gens = Vec::new();
        for (i, f) in self.gens.iter().enumerate() {
            for g in &self.gens[i..] {
                gens.push(f.mul(g)?);
            }
        }
        IdealGens::new(self.ring, gens)
    }

    /// Reads the ideal file format: a `ring n=<n> p=<p>` header, then one
    /// polynomial per line. Blank lines and lines starting with `#` are
    /// skipped. Errors carry 1-based line numbers.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::IdealFile {
            line: 1,
            message: "missing `ring n=<n> p=<p>` header".into(),
        })?;
        let ring = parse_header(header).map_err(|message| Error::IdealFile {
            line: hline,
            message,
        })?;
        let mut gens = Vec::new();
        for (line, body) in lines {
            let g = parse(&ring, body).map_err(|e| Error::IdealFile {
                line,
                message: e.to_string(),
            })?;
            gens.push(g);
        }
        IdealGens::new(ring, gens)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!(
            "ring n={} p={}\n",
            self.ring.n(),
            self.ring.field().modulus()
        );
        for g in &self.gens {
            let _ = writeln!(out, "{g}");
        }
        out
    }
}

fn parse_header(line: &str) -> std::result::Result<GradedRing, String> {
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err("expected `ring n=<n> p=<p>`".into());
    }
    let mut n = None;
    let mut p = None;
    for word in words {
        let (key, value) = word
            .split_once('=')
            .ok_or_else(|| format!("malformed header field `{word}`"))?;
        let value: u64 = value
            .parse()
            .map_err(|_| format!("`{key}` needs an unsigned integer"))?;
        match key {
            "n" => n = Some(value),
            "p" => p = Some(value),
            _ => return Err(format!("unknown header field `{key}`")),
        }
    }
    let n = n.ok_or("header lacks n=")?;
    let p = p.ok_or("header lacks p=")?;
    let field = PrimeField::new(p).map_err(|e| e.to_string())?;
    GradedRing::new(n as usize, field).map_err(|e| e.to_string())
}

/// The subspace `I_k` of `S_k`, in coordinates of `monomial_basis(ring, k)`.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    ring: GradedRing,
    degree: u32,
    subspace: RowBasis,
}

impl GradedPiece {
    pub fn new(ring: GradedRing, degree: u32, subspace: RowBasis) -> Result<Self> {
        if subspace.ambient_dim() != ring.dim(degree) {
            return Err(Error::DimensionMismatch {
                expected: ring.dim(degree),
                found: subspace.ambient_dim(),
            });
        }
        Ok(Self {
            ring,
            degree,
            subspace,
        })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn subspace(&self) -> &RowBasis {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// `dim S_k - dim I_k`.
    pub fn codim(&self) -> usize {
        self.subspace.codim()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if f.degree() != self.degree {
            return Err(Error::MixedDegrees(self.degree, f.degree()));
        }
        self.subspace.member(&f.to_dense())
    }

    /// Basis of the piece as forms.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.subspace
            .rows()
            .map(|r| Polynomial::from_dense(self.ring, self.degree, r).expect("row length"))
            .collect()
    }
}

/// `k -> h_I(k)` for `0 <= k <= kmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HilbertTable {
    values: Vec<usize>,
}

impl HilbertTable {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TableTooShort {
                needed: 1,
                available: 0,
            });
        }
        Ok(Self { values })
    }

    pub fn kmax(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn get(&self, k: u32) -> Option<usize> {
        self.values.get(k as usize).copied()
    }

    /// `h(k)`, or [`Error::TableTooShort`] past the end.
    pub fn at(&self, k: u32) -> Result<usize> {
        self.get(k).ok_or(Error::TableTooShort {
            needed: k as usize + 1,
            available: self.values.len(),
        })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Row basis of `span{ m g : deg m = k - deg g }`, by a Macaulay matrix.
pub fn graded_piece(ideal: &IdealGens, k: u32) -> Result<GradedPiece> {
    let ring = *ideal.ring();
    ring.check_degree(k)?;
    let cols = ring.dim(k);
    let rows: usize = ideal
        .gens()
        .iter()
        .filter(|g| g.degree() <= k)
        .map(|g| ring.dim(k - g.degree()))
        .sum();
    if rows.saturating_mul(cols) > DEFAULT_ENTRY_GUARD {
        return Err(Error::MatrixTooLarge {
            rows,
            cols,
            guard: DEFAULT_ENTRY_GUARD,
        });
    }
    let mut ech = Echelon::new(ring.field(), cols);
    let mut entries = Vec::new();
    'gens: for g in ideal.gens().iter().filter(|g| g.degree() <= k) {
        for m in monomial_basis(&ring, k - g.degree())? {
            if ech.is_full() {
                break 'gens;
            }
            entries.clear();
            entries.extend(g.terms().map(|(u, c)| (u.mul(&m).index(), c)));
            ech.insert_sparse(&entries);
        }
    }
    GradedPiece::new(ring, k, ech.into_row_basis())
}

/// `h_I(k)` for `0 <= k <= kmax`.
pub fn hilbert_fn(ideal: &IdealGens, kmax: u32) -> Result<HilbertTable> {
    let mut tower = QuotientTower::new(ideal);
    tower.extend_to(kmax)?;
    let values = (0..=kmax)
        .map(|k| tower.dim(k))
        .collect::<Result<Vec<_>>>()?;
    HilbertTable::new(values)
}

/// Exact membership `f ∈ I`.
pub fn contains(f: &Polynomial, ideal: &IdealGens) -> Result<bool> {
    if f.ring() != ideal.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    graded_piece(ideal, f.degree())?.contains(f)
}

/// Generators of `I_t`: every generator composed with the `n + 1` images.
/// The images must share a degree and have no common zero.
pub fn pullback_gens(ideal: &IdealGens, images: &[Polynomial]) -> Result<IdealGens> {
    let ring = *ideal.ring();
    if images.len() != ring.nvars() {
        return Err(Error::ImageCount {
            expected: ring.nvars(),
            found: images.len(),
        });
    }
    let t = images[0].degree();
    if let Some(g) = images.iter().find(|g| g.degree() != t) {
        return Err(Error::UnequalImageDegrees(t, g.degree()));
    }
    if t == 0 {
        return Err(Error::Precondition(
            "images must have positive degree".into(),
        ));
    }
    let target = *images[0].ring();
    let image_ideal = IdealGens::new(target, images.to_vec())?;
    if !base_point_free(&image_ideal, t)? {
        return Err(Error::CommonZero);
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(images))
        .collect::<Result<Vec<_>>>()?;
    IdealGens::new(target, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{random_form, tests::ring};

    fn ideal(r: GradedRing, gens: &[&str]) -> IdealGens {
        IdealGens::new(r, gens.iter().map(|g| parse(&r, g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn principal_and_maximal_pieces() {
        let r = ring(3, 7);
        let i = ideal(r, &["x0"]);
        assert_eq!(graded_piece(&i, 2).unwrap().dim(), 4);
        let m = ideal(r, &["x0", "x1", "x2", "x3"]);
        let piece = graded_piece(&m, 1).unwrap();
        assert_eq!((piece.dim(), piece.codim()), (4, 0));
    }

    #[test]
    fn zero_and_point_ideals() {
        let r = ring(3, 65521);
        let h = hilbert_fn(&IdealGens::zero(r), 10).unwrap();
        for k in 0..=10 {
            assert_eq!(h.at(k).unwrap(), r.dim(k));
        }
        let pt = ideal(r, &["x1", "x2", "x3"]);
        assert!(hilbert_fn(&pt, 15)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 1));
        let unit = ideal(r, &["3"]);
        assert!(hilbert_fn(&unit, 5)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0));
    }

    #[test]
    fn tower_agrees_with_macaulay_matrices() {
        let r = ring(3, 32749);
        for seed in 0..6u64 {
            let degs = [1 + seed as u32 % 2, 2, 3 + seed as u32 % 3];
            let gens = degs
                .iter()
                .enumerate()
                .map(|(i, &d)| random_form(&r, d, seed * 10 + i as u64).unwrap())
                .collect();
            let i = IdealGens::new(r, gens).unwrap();
            let h = hilbert_fn(&i, 9).unwrap();
            let mut koszul = QuotientTower::koszul_only(&i);
            for k in 0..=9 {
                let direct = graded_piece(&i, k).unwrap().codim();
                assert_eq!(h.at(k).unwrap(), direct);
                assert_eq!(koszul.dim(k).unwrap(), direct);
            }
        }
    }

    #[test]
    fn tower_on_non_complete_intersections() {
        // Twisted cubic: h(k) = 3k + 1.
        let r = ring(3, 65521);
        let i = ideal(r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let h = hilbert_fn(&i, 12).unwrap();
        for k in 0..=12u32 {
            assert_eq!(h.at(k).unwrap(), 3 * k as usize + 1);
            assert_eq!(graded_piece(&i, k).unwrap().codim(), 3 * k as usize + 1);
        }
    }

    #[test]
    fn normal_forms_decide_membership() {
        let r = ring(3, 8191);
        let i = ideal(r, &["x0^2 - x1*x2", "x3^3"]);
        let mut tower = QuotientTower::koszul_only(&i);
        for seed in 0..20u64 {
            let a = random_form(&r, 2, seed).unwrap();
            let f = a.mul(&i.gens()[0]).unwrap();
            assert!(tower.normal_form(&f).unwrap().iter().all(|&x| x == 0));
            assert!(contains(&f, &i).unwrap());
        }
        let x1 = parse(&r, "x1^4").unwrap();
        assert!(tower.normal_form(&x1).unwrap().iter().any(|&x| x != 0));
        assert!(!contains(&x1, &i).unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = ring(3, 7);
        let g = parse(&r, "x0*x1 + 3*x2^2").unwrap();
        assert!(contains(&g, &IdealGens::new(r, vec![g.clone()]).unwrap()).unwrap());
        let x0 = parse(&r, "x0").unwrap();
        assert!(!contains(&x0, &ideal(r, &["x1"])).unwrap());
    }

    #[test]
    fn ideal_file_roundtrip_and_errors() {
        let text = "ring n=3 p=65521\n\nx0\n# comment\nx1^4 + 2*x2^4 - x3^4\n";
        let i = IdealGens::parse_file(text).unwrap();
        assert_eq!(i.degrees(), vec![1, 4]);
        assert_eq!(IdealGens::parse_file(&i.to_file_string()).unwrap(), i);
        assert!(matches!(
            IdealGens::parse_file("ring n=3 p=10\nx0"),
            Err(Error::IdealFile { line: 1, .. })
        ));
        assert!(matches!(
            IdealGens::parse_file("ring n=3 p=7\nx0\nx0 + x1^2"),
            Err(Error::IdealFile { line: 3, .. })
        ));
        assert!(matches!(
            IdealGens::parse_file(""),
            Err(Error::IdealFile { line: 1, .. })
        ));
    }

    #[test]
    fn pullback_multiplies_degrees() {
        let r = ring(3, 65521);
        let pt = ideal(r, &["x1", "x2", "x3"]);
        let ids: Vec<_> = (0..4).map(|i| Polynomial::var(r, i).unwrap()).collect();
        assert_eq!(pullback_gens(&pt, &ids).unwrap(), pt);
        let squares: Vec<_> = (0..4u64)
            .map(|s| random_form(&r, 1, s).unwrap().pow(2).unwrap())
            .collect();
        let pulled = pullback_gens(&pt, &squares).unwrap();
        assert_eq!(pulled.degrees(), vec![2, 2, 2]);
        let bad: Vec<_> = ["x0", "x1", "x2", "x0 + x1"]
            .iter()
            .map(|s| parse(&r, s).unwrap())
            .collect();
        assert_eq!(pullback_gens(&pt, &bad).unwrap_err(), Error::CommonZero);
    }
}
