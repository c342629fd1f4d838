use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;

use nodal_analyzer::stable_degree;
use nodal_core::{GradedRing, PrimeField, DEFAULT_PRIMES};

/// Degrees accepted by `sweep`.
pub const SWEEP_DEGREES: (u32, u32) = (8, 12);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Inclusive range written `8`, `8..10` or `8..=10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Copy> Span<T> {
    pub fn single(v: T) -> Self {
        Self { lo: v, hi: v }
    }
}

impl<T> FromStr for Span<T>
where
    T: FromStr + PartialOrd + Copy,
    T::Err: fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<T>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            None => (num(s)?, num(s)?),
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { lo, hi })
    }
}

impl<T: fmt::Display + PartialEq> fmt::Display for Span<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Validated settings shared by `analyze` and `sweep`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub d: Span<u32>,
    pub a: Option<Span<u32>>,
    pub primes: Vec<u32>,
    pub seed: Span<u64>,
    pub kmax: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(!self.primes.is_empty(), "at least one prime is required");
        let mut seen = self.primes.clone();
        seen.sort_unstable();
        seen.dedup();
        ensure!(
            seen.len() == self.primes.len(),
            "repeated prime in --primes"
        );
        for &p in &self.primes {
            let field = PrimeField::new(p as u64).with_context(|| format!("--primes {p}"))?;
            GradedRing::new(3, field).with_context(|| format!("--primes {p}"))?;
        }
        ensure!(self.d.lo >= 8, "--d {}: degrees start at 8", self.d);
        if let Some(a) = self.a {
            ensure!(a.lo >= 4, "--a {a}: need a >= 4");
            ensure!(
                2 * a.lo <= self.d.hi,
                "--a {a}: need a <= d/2 for some d in {}",
                self.d
            );
        }
        if let Some(k) = self.kmax {
            let need = stable_degree(self.d.hi);
            ensure!(
                k >= need,
                "--kmax {k}: tables must reach ceil(3d/2) - 3 = {need}"
            );
        }
        Ok(())
    }

    /// Every legal `(d, a)` pair in the configured ranges.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for d in self.d.lo..=self.d.hi {
            let (lo, hi) = match self.a {
                Some(a) => (a.lo.max(4), a.hi.min(d / 2)),
                None => (4, d / 2),
            };
            out.extend((lo..=hi).map(|a| (d, a)));
        }
        out
    }

    pub fn kmax_for(&self, d: u32) -> u32 {
        self.kmax.unwrap_or_else(|| stable_degree(d))
    }
}

pub fn default_primes() -> Vec<u32> {
    DEFAULT_PRIMES.to_vec()
}

pub fn check_single(config: &RunConfig) -> Result<(u32, u32)> {
    let a = config.a.context("--a is required")?;
    if config.d.lo != config.d.hi || a.lo != a.hi {
        bail!("analyze takes a single d and a; use sweep for ranges");
    }
    let (d, a) = (config.d.lo, a.lo);
    ensure!(2 * a <= d, "--a {a}: need a <= d/2 = {}", d / 2);
    Ok((d, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(d: &str, a: Option<&str>) -> RunConfig {
        RunConfig {
            d: d.parse().unwrap(),
            a: a.map(|a| a.parse().unwrap()),
            primes: default_primes(),
            seed: Span::single(1),
            kmax: None,
            out: None,
            format: Format::Json,
        }
    }

    #[test]
    fn spans() {
        assert_eq!("8".parse::<Span<u32>>().unwrap(), Span { lo: 8, hi: 8 });
        assert_eq!(
            "8..10".parse::<Span<u32>>().unwrap(),
            Span { lo: 8, hi: 10 }
        );
        assert_eq!(
            "8..=10".parse::<Span<u32>>().unwrap(),
            Span { lo: 8, hi: 10 }
        );
        assert!("10..8".parse::<Span<u32>>().is_err());
        assert!("x".parse::<Span<u32>>().is_err());
    }

    #[test]
    fn legal_pairs() {
        assert_eq!(
            config("8..10", None).pairs(),
            vec![(8, 4), (9, 4), (10, 4), (10, 5)]
        );
        assert_eq!(
            config("8..12", Some("5")).pairs(),
            vec![(10, 5), (11, 5), (12, 5)]
        );
    }

    #[test]
    fn validation() {
        assert!(config("8", Some("4")).validate().is_ok());
        assert!(config("8", Some("3")).validate().is_err());
        assert!(config("7", Some("4")).validate().is_err());
        let mut c = config("8", Some("4"));
        c.primes = vec![65521, 65521];
        assert!(c.validate().is_err());
        c.primes = vec![65520];
        assert!(c.validate().is_err());
        c.primes = vec![65521];
        c.kmax = Some(5);
        assert!(c.validate().is_err());
        assert!(check_single(&config("9", Some("5"))).is_err());
    }
}
