use anyhow::{Context, Result};
use serde::Serialize;

use nodal_core::defect::{
    betti_alternating, defect, length_of, pullback_betti_check, PullbackReport,
};
use nodal_core::ideal::{hilbert_fn, IdealGens};
use nodal_core::poly::{derive_seed, random_form};

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub k: u32,
    pub h: usize,
    pub betti: i64,
    /// Present once the table ends on a plateau.
    pub defect: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertReport {
    pub schema: u32,
    pub n: usize,
    pub prime: u32,
    pub kmax: u32,
    pub generator_degrees: Vec<u32>,
    pub length: Option<usize>,
    pub rows: Vec<TableRow>,
}

pub fn load_ideal(path: &std::path::Path) -> Result<IdealGens> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    IdealGens::parse_file(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `h`, `B` and (when a length is visible) defects up to `kmax`.
pub fn hilbert_report(ideal: &IdealGens, kmax: u32) -> Result<HilbertReport> {
    let ring = ideal.ring();
    let n = ring.n();
    let h = hilbert_fn(ideal, kmax)?;
    let b = betti_alternating(&h, n, kmax)?;
    let length = length_of(&h, n + 1).ok();
    let mut rows = Vec::new();
    for k in 0..=kmax {
        let defect = match length {
            Some(len) => Some(defect(&h, n, len, k)?.delta),
            None => None,
        };
        rows.push(TableRow {
            k,
            h: h.at(k)?,
            betti: b.get(k),
            defect,
        });
    }
    Ok(HilbertReport {
        schema: crate::consensus::SCHEMA,
        n,
        prime: ring.field().modulus(),
        kmax,
        generator_degrees: ideal.degrees(),
        length,
        rows,
    })
}

pub fn rows_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct PullbackOutput {
    pub schema: u32,
    pub seed: u64,
    pub laws_hold: bool,
    pub report: PullbackReport,
}

/// Pulls back along `n + 1` seeded random forms of degree `t`.
pub fn pullback(
    ideal: &IdealGens,
    t: u32,
    seed: u64,
    jmax: u32,
    bound_k: Option<u32>,
) -> Result<PullbackOutput> {
    let ring = ideal.ring();
    let images = (0..ring.nvars() as u64)
        .map(|i| random_form(ring, t, derive_seed(seed, i)))
        .collect::<nodal_core::Result<Vec<_>>>()?;
    let report = pullback_betti_check(ideal, &images, jmax, bound_k)?;
    Ok(PullbackOutput {
        schema: crate::consensus::SCHEMA,
        seed,
        laws_hold: report.laws_hold(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_table() {
        let ideal = IdealGens::parse_file("ring n=3 p=32749\nx1\nx2\nx3\n").unwrap();
        let r = hilbert_report(&ideal, 6).unwrap();
        assert_eq!(r.length, Some(1));
        assert!(r.rows.iter().all(|row| row.h == 1 && row.defect == Some(0)));
        let csv = rows_csv(&r.rows).unwrap();
        assert!(csv.starts_with("k,h,betti,defect\n0,1,1,0\n"));
    }

    #[test]
    fn empty_generator_list() {
        let ideal = IdealGens::parse_file("ring n=3 p=32749\n").unwrap();
        let r = hilbert_report(&ideal, 4).unwrap();
        let h: Vec<usize> = r.rows.iter().map(|row| row.h).collect();
        assert_eq!(h, vec![1, 4, 10, 20, 35]);
        assert_eq!(r.length, None);
    }

    #[test]
    fn point_pullback() {
        let ideal = IdealGens::parse_file("ring n=3 p=32749\nx1\nx2\nx3\n").unwrap();
        let out = pullback(&ideal, 2, 3, 5, None).unwrap();
        assert!(out.laws_hold);
    }
}
