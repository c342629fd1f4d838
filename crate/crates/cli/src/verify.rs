use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;

use nodal_analyzer::{
    alexander_exponent, analyze, build_example, detect_ci, locus_dims, tangent_dims, NodalExample,
};
use nodal_core::defect::{
    betti_alternating, betti_scaling_mismatches, defect, hilbert_from_betti, length_of,
    macaulay_gotzmann_check, pullback_betti_check,
};
use nodal_core::ideal::{
    base_point_free, general_section, gorenstein_closure, graded_piece, hilbert_fn, HilbertTable,
    IdealGens,
};
use nodal_core::poly::{derive_seed, parse, random_form, SeedStream};
use nodal_core::{GradedRing, PrimeField};

use crate::consensus::{analyze_over, consensus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Flips the sign of one Betti number of the base ideal before the
    /// pullback scaling comparison.
    BettiSign,
}

pub struct Context {
    pub primes: Vec<u32>,
    pub seed: u64,
    pub fault: Option<Fault>,
}

type Check = fn(&Context) -> Result<String, String>;

pub struct Suite {
    pub name: &'static str,
    /// The statement checked, as a formula.
    pub claim: &'static str,
    pub run: Check,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "ci-bound",
        claim: "4(d-1) nodes with delta_d > 0 lie on a CI(1,4,d-1); codim = 4(d-1) - 1",
        run: ci_bound,
    },
    Suite {
        name: "stabilization",
        claim: "h_I(k) = #Sigma for k > 3d/2 - 4",
        run: stabilization,
    },
    Suite {
        name: "section",
        claim: "h_I(k) = sum_{j<=k} h_{I_H}(j); h_{I_H} = (1,2,3,4,...,4,3,2,1,0)",
        run: section,
    },
    Suite {
        name: "gorenstein",
        claim: "h_J(k) = h_J(d+1-k); I_H = J in the extreme case",
        run: gorenstein,
    },
    Suite {
        name: "betti",
        claim: "h_I(k) = sum_j B_j C(n+k-j,n); delta_k = (-1)^n sum_{j>=k+n+1} B_j C(j-k-1,n)",
        run: betti,
    },
    Suite {
        name: "pullback",
        claim: "B_{tj}(I_t)=B_j(I); length - h_{I_t}(tk-n-1) >= C(n+t,n) - n",
        run: pullback,
    },
    Suite {
        name: "alexander",
        claim: "exponent of (t+1) = delta_{3d/2-4}; 0 for odd d; <= d^2 - 3d + 3",
        run: alexander,
    },
    Suite {
        name: "locus",
        claim: "codim L = (-5a^2 + 3a + 4da - 6)/2 against h_I(d)",
        run: locus,
    },
    Suite {
        name: "dictionary",
        claim: "dim J_d = 16; dim (I/J)_d - dim I_d/<F> = -15",
        run: dictionary,
    },
    Suite {
        name: "macaulay-gotzmann",
        claim: "h(k) <= k => h(k+1) <= h(k); strictly if I_{k+1} is base point free",
        run: macaulay_gotzmann,
    },
    Suite {
        name: "consensus",
        claim: "reports agree over every prime",
        run: prime_consensus,
    },
];

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub suite: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn unknown_suites(only: &[String]) -> Vec<String> {
    only.iter()
        .filter(|n| !SUITES.iter().any(|s| s.name == n.as_str()))
        .cloned()
        .collect()
}

pub fn run(ctx: &Context, only: &[String]) -> Vec<Outcome> {
    SUITES
        .iter()
        .filter(|s| only.is_empty() || only.iter().any(|n| n == s.name))
        .map(|s| {
            let (passed, detail) = match (s.run)(ctx) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome {
                suite: s.name,
                claim: s.claim,
                passed,
                detail,
            }
        })
        .collect()
}

fn ring(p: u32) -> Result<GradedRing, String> {
    PrimeField::new(p as u64)
        .and_then(|f| GradedRing::new(3, f))
        .map_err(|e| e.to_string())
}

fn first_prime(ctx: &Context) -> u32 {
    ctx.primes[0]
}

fn example(ctx: &Context, d: u32, a: u32) -> Result<NodalExample, String> {
    build_example(d, a, ring(first_prime(ctx))?, ctx.seed).map_err(|e| format!("d={d} a={a}: {e}"))
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn e(err: nodal_core::Error) -> String {
    err.to_string()
}

/// `prod (1 - z^a)` up to `z^jmax`.
fn koszul_numerator(degrees: &[u32], jmax: u32) -> Vec<i64> {
    let mut num = vec![0i64; jmax as usize + 1];
    num[0] = 1;
    for &a in degrees {
        for k in (a as usize..num.len()).rev() {
            num[k] -= num[k - a as usize];
        }
    }
    num
}

fn generic_ci(r: &GradedRing, degrees: &[u32], seed: u64) -> Result<IdealGens, String> {
    let gens = degrees
        .iter()
        .enumerate()
        .map(|(i, &a)| random_form(r, a, derive_seed(seed, i as u64)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    IdealGens::new(*r, gens).map_err(e)
}

fn ci_bound(ctx: &Context) -> Result<String, String> {
    for d in [8, 10, 12] {
        let ex = example(ctx, d, 4)?;
        let rep = analyze(&ex).map_err(e)?;
        let oracle = koszul_numerator(&[1, 4, d - 1], ex.hilbert.kmax());
        let b = betti_alternating(&ex.hilbert, 3, ex.hilbert.kmax()).map_err(e)?;
        expect(&format!("d={d} B vs Koszul numerator"), &b.values, &oracle)?;
        expect(&format!("d={d} defect_d"), rep.defect_d, 1)?;
        expect(
            &format!("d={d} tangent_actual_codim"),
            rep.tangent_actual_codim,
            4 * (d as usize - 1) - 1,
        )?;
        expect(&format!("d={d} ci_1_4_dm1"), rep.ci_1_4_dm1, true)?;
    }
    Ok("d = 8, 10, 12 with a = 4".into())
}

fn stabilization(ctx: &Context) -> Result<String, String> {
    let mut count = 0;
    for d in 8..=12 {
        for a in 4..=d / 2 {
            let ex = example(ctx, d, a)?;
            let kmax = nodal_analyzer::stable_degree(d);
            for k in kmax..=kmax + 3 {
                expect(
                    &format!("d={d} a={a} h({k})"),
                    ex.hilbert.at(k).map_err(e)?,
                    ex.length,
                )?;
            }
            expect(
                &format!("d={d} a={a} length"),
                ex.length,
                (a * (d - 1)) as usize,
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} examples, d = 8..12"))
}

fn section(ctx: &Context) -> Result<String, String> {
    let ex = example(ctx, 8, 4)?;
    let kmax = 12;
    let sec = general_section(&ex.node_ideal, kmax, ctx.seed).map_err(e)?;
    let hh = hilbert_fn(&sec.ideal, kmax).map_err(e)?;
    expect(
        "h_{I_H}",
        &hh.values()[..11],
        &[1, 2, 3, 4, 4, 4, 4, 3, 2, 1, 0][..],
    )?;
    let h = hilbert_fn(&ex.node_ideal, kmax).map_err(e)?;
    let mut sum = 0;
    for k in 0..=kmax {
        sum += hh.at(k).map_err(e)?;
        expect(&format!("summation at k={k}"), h.at(k).map_err(e)?, sum)?;
    }
    Ok(format!("d = 8, k <= {kmax}"))
}

fn gorenstein(ctx: &Context) -> Result<String, String> {
    let d = 8;
    let ex = example(ctx, d, 4)?;
    let sec = general_section(&ex.node_ideal, d + 2, ctx.seed).map_err(e)?;
    let j = gorenstein_closure(&sec.ideal, d).map_err(e)?;
    expect("h_J(d+1)", j[d as usize + 1].codim(), 1)?;
    for k in 0..=d + 1 {
        let (lo, hi) = (j[k as usize].codim(), j[(d + 1 - k) as usize].codim());
        expect(&format!("h_J({k}) vs h_J({})", d + 1 - k), lo, hi)?;
        let piece = graded_piece(&sec.ideal, k).map_err(e)?;
        let equal = piece
            .subspace()
            .contains_space(j[k as usize].subspace())
            .map_err(e)?
            && j[k as usize]
                .subspace()
                .contains_space(piece.subspace())
                .map_err(e)?;
        expect(&format!("(I_H)_{k} = J_{k}"), equal, true)?;
    }
    Ok("d = 8, k <= 9".into())
}

fn betti(ctx: &Context) -> Result<String, String> {
    let r = ring(first_prime(ctx))?;
    let kmax = 14;
    let mut s = SeedStream::new(ctx.seed);
    for i in 0..100 {
        let count = 1 + s.next_below(4) as usize;
        let gens = (0..count)
            .map(|_| {
                let deg = 1 + s.next_below(3);
                random_form(&r, deg, s.next_seed())
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(e)?;
        let ideal = IdealGens::new(r, gens).map_err(e)?;
        let h = hilbert_fn(&ideal, kmax).map_err(e)?;
        let b = betti_alternating(&h, 3, kmax).map_err(e)?;
        expect(
            &format!("roundtrip {i}"),
            &hilbert_from_betti(&b, kmax).map_err(e)?,
            &h,
        )?;
        if let Ok(length) = length_of(&h, 4) {
            for k in 0..=kmax - 4 {
                // `defect` aborts if the two formulas disagree.
                defect(&h, 3, length, k).map_err(|err| format!("ideal {i}: {err}"))?;
            }
        }
    }
    let ci = generic_ci(&r, &[1, 4, 7], ctx.seed)?;
    let h = hilbert_fn(&ci, 14).map_err(e)?;
    let b = betti_alternating(&h, 3, 14).map_err(e)?;
    expect(
        "CI(1,4,7) support",
        b.support(),
        vec![0, 1, 4, 5, 7, 8, 11, 12],
    )?;
    expect("CI(1,4,7) B", &b.values, &koszul_numerator(&[1, 4, 7], 14))?;
    Ok("100 seeded ideals; CI(1,4,7) support".into())
}

fn pullback(ctx: &Context) -> Result<String, String> {
    let r = ring(first_prime(ctx))?;
    let ci = generic_ci(&r, &[1, 4, 7], ctx.seed)?;
    let images = (0..4)
        .map(|i| random_form(&r, 2, derive_seed(ctx.seed, 100 + i)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    let rep = pullback_betti_check(&ci, &images, 12, Some(11)).map_err(e)?;
    let mut base = rep.base.clone();
    if ctx.fault == Some(Fault::BettiSign) {
        let j = base.support()[1];
        base.values[j as usize] = -base.values[j as usize];
    }
    if let Some(m) = betti_scaling_mismatches(&base, &rep.pulled, rep.t).first() {
        return Err(format!(
            "B_{{tj}}(I_t)=B_j(I) fails for CI(1,4,7), t=2 at j={}: expected {}, found {}",
            m.j, m.expected, m.found
        ));
    }
    let bound = rep.bound.as_ref().ok_or("no bound evaluated")?;
    expect("hypothesis at k=11", bound.hypothesis, true)?;
    expect("length of I_2", bound.length, 224)?;
    expect("delta_18(I_2)", bound.defect, 9)?;
    expect("bound", bound.bound, 7)?;

    let point = IdealGens::new(
        r,
        ["x1", "x2", "x3"]
            .iter()
            .map(|s| parse(&r, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(e)?,
    )
    .map_err(e)?;
    for t in [2, 3] {
        let images = (0..4)
            .map(|i| random_form(&r, t, derive_seed(ctx.seed, 200 + i)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(e)?;
        let rep = pullback_betti_check(&point, &images, 6, None).map_err(e)?;
        if !rep.mismatches.is_empty() {
            return Err(format!(
                "B_{{tj}}(I_t)=B_j(I) fails for a point, t={t}: {:?}",
                rep.mismatches
            ));
        }
    }
    Ok("CI(1,4,7) with t = 2, k = 11: delta_18 = 9 >= 7; point with t = 2, 3".into())
}

fn alexander(ctx: &Context) -> Result<String, String> {
    for (d, a, want) in [(10, 4, 0), (10, 5, 1), (9, 4, 0), (8, 4, 1)] {
        let ex = example(ctx, d, a)?;
        let alex = alexander_exponent(&ex.hilbert, ex.length, d).map_err(e)?;
        expect(&format!("exponent d={d} a={a}"), alex.exponent, want)?;
        if alex.exponent > alex.bound {
            return Err(format!(
                "d={d}: exponent {} above {}",
                alex.exponent, alex.bound
            ));
        }
    }
    Ok("d = 10 (a = 4, 5), d = 9, d = 8".into())
}

fn locus(ctx: &Context) -> Result<String, String> {
    for (d, a, codim) in [(8, 4, 27), (10, 4, 43), (10, 5, 42)] {
        let ex = example(ctx, d, a)?;
        let l = locus_dims(d, a).map_err(e)?;
        expect(&format!("codim_L({d},{a})"), l.codim_l, codim)?;
        let h_d = ex.h_d() as i64;
        let want = if (d, a) == (10, 4) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        };
        expect(
            &format!("codim_L({d},{a}) vs h_I({d}) = {h_d}"),
            l.codim_l.cmp(&h_d),
            want,
        )?;
    }
    Ok("(8,4), (10,4), (10,5)".into())
}

fn dictionary(ctx: &Context) -> Result<String, String> {
    for d in 8..=12 {
        for a in 4..=d / 2 {
            let ex = example(ctx, d, a)?;
            let t = tangent_dims(&ex).map_err(e)?;
            expect(&format!("dim J_{d} (a={a})"), t.dim_j_d, 16)?;
            expect(&format!("gap (d={d} a={a})"), t.gap, -15)?;
        }
    }
    Ok("every example with d = 8..12".into())
}

fn macaulay_gotzmann(ctx: &Context) -> Result<String, String> {
    let mut tables = 0;
    let mut strict = 0;
    for d in 8..=12 {
        for a in 4..=d / 2 {
            let ex = example(ctx, d, a)?;
            let v = macaulay_gotzmann_check(&ex.hilbert, &BTreeMap::new());
            expect(&format!("violations d={d} a={a}"), v.len(), 0)?;
            tables += 1;
            let ci = detect_ci(&ex.node_ideal, &ex.hilbert, d).map_err(e)?;
            expect(
                &format!("generator degrees d={d} a={a}"),
                ci.generator_degrees,
                vec![1, a, d - 1],
            )?;
        }
    }
    let ex = example(ctx, 8, 4)?;
    let sec = general_section(&ex.node_ideal, 12, ctx.seed).map_err(e)?;
    let h = hilbert_fn(&sec.ideal, 12).map_err(e)?;
    let mut bpf = BTreeMap::new();
    for k in 1..=12 {
        bpf.insert(k, base_point_free(&sec.ideal, k).map_err(e)?);
    }
    for k in 0..12u32 {
        let hk = h.at(k).map_err(e)?;
        if hk as u32 <= k && bpf.get(&(k + 1)) == Some(&true) && hk > 0 {
            strict += 1;
        }
    }
    expect(
        "violations on I_H",
        macaulay_gotzmann_check(&h, &bpf).len(),
        0,
    )?;
    tables += 1;
    let synthetic = HilbertTable::new(vec![1, 4, 10, 12, 8, 4, 5, 5]).map_err(e)?;
    let flagged = macaulay_gotzmann_check(&synthetic, &BTreeMap::new());
    if flagged.iter().all(|v| v.k != 5) {
        return Err("synthetic table with h(5)=4, h(6)=5 not flagged".into());
    }
    Ok(format!(
        "{tables} tables clean, strict clause exercised {strict} times, synthetic flagged"
    ))
}

fn prime_consensus(ctx: &Context) -> Result<String, String> {
    for (d, a) in [(8, 4), (10, 5)] {
        let reports = ctx
            .primes
            .iter()
            .map(|&p| analyze_over(d, a, p, ctx.seed, nodal_analyzer::stable_degree(d)))
            .collect::<anyhow::Result<Vec<_>>>()
            .map_err(|err| format!("{err:#}"))?;
        let c = consensus(d, a, ctx.seed, reports);
        if !c.consensus {
            return Err(format!("d={d} a={a}: divergent {:?}", c.divergent_fields));
        }
    }
    Ok(format!("{} primes, (8,4) and (10,5)", ctx.primes.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(fault: Option<Fault>) -> Context {
        Context {
            primes: vec![65521],
            seed: 7,
            fault,
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = SUITES.iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
        assert_eq!(
            unknown_suites(&["gorenstein".into(), "nope".into()]),
            vec!["nope"]
        );
    }

    #[test]
    fn filter_runs_one_suite() {
        let out = run(&ctx(None), &["gorenstein".into()]);
        assert_eq!(out.len(), 1);
        assert!(out[0].passed, "{}", out[0].detail);
    }

    #[test]
    fn betti_sign_fault_is_named() {
        let out = run(&ctx(Some(Fault::BettiSign)), &["pullback".into()]);
        assert!(!out[0].passed);
        assert!(
            out[0].detail.contains("B_{tj}(I_t)=B_j(I)"),
            "{}",
            out[0].detail
        );
        assert!(run(&ctx(None), &["pullback".into()])[0].passed);
    }
}
