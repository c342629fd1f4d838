//! The quotient `S/I` presented one degree at a time.
//!
//! Degree `k + 1` is built from degree `k` without touching `S_{k+1}` as a
//! whole: every form of degree `k + 1` is `sum_i x_i a_i`, so
//!
//! ```text
//! (S/I)_{k+1} = ( (+)_i (S/I)_k ) / (Koszul relations + generators of degree k+1)
//! ```
//!
//! where the Koszul relations are `x_j b e_i - x_i b e_j` for `b` running
//! over a basis of `(S/I)_{k-1}`. The linear algebra therefore scales with
//! `h_I(k)` rather than with `dim S_k`, which is what makes Hilbert functions
//! of zero-dimensional ideals cheap far beyond the Macaulay-matrix range.
//!
//! While `h_I(k)` is still close to `dim S_k` the Koszul step is the more
//! expensive one, so levels are read off Macaulay matrices instead until
//! the estimated cost crosses over.

use crate::error::{Error, Result};
use crate::matrix::{Echelon, Matrix, DEFAULT_ENTRY_GUARD};
use crate::poly::{monomial_basis, GradedRing, Polynomial};

use super::{graded_piece, GradedPiece, IdealGens};

#[derive(Debug, Clone)]
struct Level {
    dim: usize,
    /// Normal forms of the degree-k monomials, `[monomial][dim]`.
    nf: Vec<u32>,
    /// `mul[i]`: multiplication by `x_i` from the previous degree,
    /// stored as `[previous basis element][dim]`.
    mul: Vec<Vec<u32>>,
    /// Standard monomials (free columns of `I_k`) when the level was read
    /// off a Macaulay matrix; the quotient basis is then these monomials.
    standard: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct QuotientTower {
    ring: GradedRing,
    ideal: IdealGens,
    levels: Vec<Level>,
    koszul_only: bool,
}

impl QuotientTower {
    pub fn new(ideal: &IdealGens) -> Self {
        let ring = *ideal.ring();
        let unit = ideal.gens().iter().any(|g| g.degree() == 0);
        let dim = usize::from(!unit);
        let level = Level {
            dim,
            nf: vec![1; dim],
            mul: Vec::new(),
            standard: Some(vec![0; dim]),
        };
        Self {
            ring,
            ideal: ideal.clone(),
            levels: vec![level],
            koszul_only: false,
        }
    }

    /// A tower that never falls back to Macaulay matrices.
    pub fn koszul_only(ideal: &IdealGens) -> Self {
        Self {
            koszul_only: true,
            ..Self::new(ideal)
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    /// Highest degree computed so far.
    pub fn top(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn extend_to(&mut self, k: u32) -> Result<()> {
        self.ring.check_degree(k)?;
        while self.top() < k {
            self.step()?;
        }
        Ok(())
    }

    /// `h_I(k)`.
    pub fn dim(&mut self, k: u32) -> Result<usize> {
        self.extend_to(k)?;
        Ok(self.levels[k as usize].dim)
    }

    /// Coordinates of `f` in the basis of `(S/I)_{deg f}`; zero iff `f ∈ I`.
    pub fn normal_form(&mut self, f: &Polynomial) -> Result<Vec<u32>> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let k = f.degree();
        self.extend_to(k)?;
        let level = &self.levels[k as usize];
        let field = self.ring.field();
        let p = field.modulus() as u64;
        let mut acc = vec![0u64; level.dim];
        for (m, c) in f.terms() {
            let row = &level.nf[m.index() * level.dim..(m.index() + 1) * level.dim];
            for (a, &x) in acc.iter_mut().zip(row) {
                *a = (*a + c as u64 * x as u64) % p;
            }
        }
        Ok(acc.into_iter().map(|x| x as u32).collect())
    }

    /// Matrix of multiplication by a linear form, `(S/I)_k -> (S/I)_{k+1}`.
    pub fn multiplication(&mut self, k: u32, linear: &Polynomial) -> Result<Matrix> {
        if linear.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if linear.degree() != 1 {
            return Err(Error::Precondition("multiplier must be linear".into()));
        }
        self.extend_to(k + 1)?;
        let field = self.ring.field();
        let src = self.levels[k as usize].dim;
        let next = &self.levels[k as usize + 1];
        let mut m = Matrix::zeros(field, next.dim, src)?;
        for (mono, c) in linear.terms() {
            let i = mono.first_var().expect("linear monomial");
            for b in 0..src {
                for t in 0..next.dim {
                    let x = next.mul[i][b * next.dim + t];
                    if x != 0 {
                        let cur = m.get(t, b);
                        m.set(t, b, field.add(cur, field.mul(c, x)));
                    }
                }
            }
        }
        Ok(m)
    }

    fn step(&mut self) -> Result<()> {
        let k = self.top();
        if !self.koszul_only
            && self.levels[k as usize].standard.is_some()
            && self.prefer_macaulay(k + 1)
        {
            let piece = graded_piece(&self.ideal, k + 1)?;
            let level = self.level_from_piece(&piece)?;
            self.levels.push(level);
            Ok(())
        } else {
            self.koszul_step()
        }
    }

    /// Dense cost estimates (rows x cols x rank) of the two ways to reach
    /// degree `k`.
    fn prefer_macaulay(&self, k: u32) -> bool {
        let nvars = self.ring.nvars() as f64;
        let cols = self.ring.dim(k);
        let rows: usize = self
            .ideal
            .gens()
            .iter()
            .filter(|g| g.degree() <= k)
            .map(|g| self.ring.dim(k - g.degree()))
            .sum();
        if rows.saturating_mul(cols) > DEFAULT_ENTRY_GUARD {
            return false;
        }
        let (rows, cols) = (rows as f64, cols as f64);
        let macaulay = rows * cols * rows.min(cols);
        let h = self.levels[k as usize - 1].dim as f64;
        let h_prev = match k {
            1 => 0.0,
            _ => self.levels[k as usize - 2].dim as f64,
        };
        let relations = nvars * (nvars - 1.0) / 2.0 * h_prev;
        let width = nvars * h;
        let koszul = relations * width * relations.min(width);
        macaulay <= koszul
    }

    /// A level whose quotient basis is the standard monomials of `piece`.
    /// The previous level must be of the same kind.
    fn level_from_piece(&self, piece: &GradedPiece) -> Result<Level> {
        let field = self.ring.field();
        let k = piece.degree();
        let basis = piece.subspace();
        let free = basis.free_columns();
        let dim = free.len();
        let cols = self.ring.dim(k);
        let mut nf = vec![0u32; cols * dim];
        for u in 0..cols {
            let out = &mut nf[u * dim..(u + 1) * dim];
            match basis.row_for_pivot(u) {
                None => out[free.binary_search(&u).expect("free column")] = 1,
                Some(row) => {
                    for (q, &f) in free.iter().enumerate() {
                        out[q] = field.neg(row[f]);
                    }
                }
            }
        }
        let prev = &self.levels[k as usize - 1];
        let prev_standard = prev.standard.as_ref().expect("monomial level");
        let prev_monomials = monomial_basis(&self.ring, k - 1)?;
        let mut mul = vec![vec![0u32; prev.dim * dim]; self.ring.nvars()];
        for (i, block) in mul.iter_mut().enumerate() {
            for (b, &m) in prev_standard.iter().enumerate() {
                let u = prev_monomials[m].mul_var(i).index();
                block[b * dim..(b + 1) * dim].copy_from_slice(&nf[u * dim..(u + 1) * dim]);
            }
        }
        Ok(Level {
            dim,
            nf,
            mul,
            standard: Some(free),
        })
    }

    fn koszul_step(&mut self) -> Result<()> {
        let field = self.ring.field();
        let p = field.modulus() as u64;
        let nvars = self.ring.nvars();
        let k = self.top();
        let next_basis = monomial_basis(&self.ring, k + 1)?;
        let cur = &self.levels[k as usize];
        let h = cur.dim;

        if h == 0 {
            self.levels.push(Level {
                dim: 0,
                nf: Vec::new(),
                mul: vec![Vec::new(); nvars],
                standard: None,
            });
            return Ok(());
        }

        let width = nvars * h;
        if width.saturating_mul(width) > DEFAULT_ENTRY_GUARD
            || next_basis.len().saturating_mul(h) > DEFAULT_ENTRY_GUARD
        {
            return Err(Error::MatrixTooLarge {
                rows: width,
                cols: width,
                guard: DEFAULT_ENTRY_GUARD,
            });
        }

        let mut ech = Echelon::new(field, width);
        for g in self.ideal.gens().iter().filter(|g| g.degree() == k + 1) {
            let mut row = vec![0u64; width];
            for (m, c) in g.terms() {
                let i = m.first_var().expect("positive degree");
                let q = m.div_var(i).expect("x_i divides m").index();
                for (t, &x) in cur.nf[q * h..(q + 1) * h].iter().enumerate() {
                    let slot = &mut row[i * h + t];
                    *slot = (*slot + c as u64 * x as u64) % p;
                }
            }
            let row: Vec<u32> = row.into_iter().map(|x| x as u32).collect();
            ech.insert(&row);
        }
        if k >= 1 {
            let prev = self.levels[k as usize - 1].dim;
            let mut row = vec![0u32; width];
            'koszul: for b in 0..prev {
                for i in 0..nvars {
                    for j in i + 1..nvars {
                        if ech.is_full() {
                            break 'koszul;
                        }
                        row.iter_mut().for_each(|x| *x = 0);
                        let xj_b = &cur.mul[j][b * h..(b + 1) * h];
                        let xi_b = &cur.mul[i][b * h..(b + 1) * h];
                        row[i * h..(i + 1) * h].copy_from_slice(xj_b);
                        for (slot, &x) in row[j * h..(j + 1) * h].iter_mut().zip(xi_b) {
                            *slot = field.neg(x);
                        }
                        ech.insert(&row);
                    }
                }
            }
        }

        let relations = ech.into_row_basis();
        let free = relations.free_columns();
        let dim = free.len();

        // Projection of the unit vector at `col` onto the quotient basis.
        let project = |col: usize, out: &mut [u32]| {
            out.iter_mut().for_each(|x| *x = 0);
            match relations.row_for_pivot(col) {
                None => {
                    let q = free.binary_search(&col).expect("free column");
                    out[q] = 1;
                }
                Some(row) => {
                    for (q, &f) in free.iter().enumerate() {
                        out[q] = field.neg(row[f]);
                    }
                }
            }
        };
        let mut mul = vec![vec![0u32; h * dim]; nvars];
        for (i, block) in mul.iter_mut().enumerate() {
            for b in 0..h {
                project(i * h + b, &mut block[b * dim..(b + 1) * dim]);
            }
        }

        let budget = field.lazy_budget();
        let mut nf = vec![0u32; next_basis.len() * dim];
        let mut acc = vec![0u64; dim];
        for (u, m) in next_basis.iter().enumerate() {
            let i = m.first_var().expect("positive degree");
            let q = m.div_var(i).expect("x_i divides m").index();
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u64;
            for (t, &c) in cur.nf[q * h..(q + 1) * h].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if pending == budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
                for (a, &x) in acc.iter_mut().zip(&mul[i][t * dim..(t + 1) * dim]) {
                    *a += c as u64 * x as u64;
                }
                pending += 1;
            }
            for (slot, &a) in nf[u * dim..(u + 1) * dim].iter_mut().zip(&acc) {
                *slot = (a % p) as u32;
            }
        }

        self.levels.push(Level {
            dim,
            nf,
            mul,
            standard: None,
        });
        Ok(())
    }
}
