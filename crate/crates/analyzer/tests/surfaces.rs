use nodal_analyzer::*;
use nodal_core::ideal::{hilbert_fn, points_hilbert, IdealGens};
use nodal_core::poly::{parse, SeedStream};
use nodal_core::{GradedRing, Polynomial, PrimeField, DEFAULT_PRIMES};

fn ring(p: u32) -> GradedRing {
    GradedRing::new(3, PrimeField::new(p as u64).unwrap()).unwrap()
}

/// `h` of a complete intersection in P^3 from the Koszul numerator
/// `prod (1 - z^a)` over `(1 - z)^4`.
fn koszul_hilbert(degrees: &[u32], kmax: u32) -> Vec<usize> {
    let mut num = vec![0i64; (kmax + 1) as usize];
    num[0] = 1;
    for &a in degrees {
        for k in (a as usize..num.len()).rev() {
            num[k] -= num[k - a as usize];
        }
    }
    let mut h = num;
    for _ in 0..4 {
        for k in 1..h.len() {
            h[k] += h[k - 1];
        }
    }
    h.into_iter().map(|x| x as usize).collect()
}

#[test]
fn node_ideals_match_the_koszul_oracle() {
    for (d, a) in [(8, 4), (9, 4), (10, 4), (10, 5), (11, 5), (12, 4), (12, 6)] {
        let ex = build_example(d, a, ring(65521), 1).unwrap();
        let oracle = koszul_hilbert(&[1, a, d - 1], ex.hilbert.kmax());
        assert_eq!(ex.hilbert.values(), oracle.as_slice(), "d={d} a={a}");
    }
}

#[test]
fn extreme_node_count_instances() {
    for d in [8u32, 10, 12] {
        let ex = build_example(d, 4, ring(65521), 7).unwrap();
        let r = analyze(&ex).unwrap();
        assert_eq!(r.defect_d, 1, "d={d}");
        assert_eq!(r.tangent_actual_codim, 4 * (d as usize - 1) - 1);
        assert!(r.ci_1_4_dm1);
        assert_eq!(r.tangent_excess as i64, r.defect_d);
        assert_eq!(r.jacobian_dim_d, 16);
    }
}

#[test]
fn tangent_dictionary() {
    for (d, a, expected, actual) in [(8, 4, 28, 27), (10, 4, 36, 35), (10, 5, 45, 42)] {
        let ex = build_example(d, a, ring(32749), 3).unwrap();
        let t = tangent_dims(&ex).unwrap();
        assert_eq!((t.expected_codim, t.actual_codim), (expected, actual));
        assert_eq!(t.excess, expected - actual);
        assert_eq!(t.dim_j_d, 16);
        assert_eq!(t.gap, -15);
    }
}

#[test]
fn alexander_dichotomy() {
    let r = ring(65521);
    let four = analyze(&build_example(10, 4, r, 5).unwrap()).unwrap();
    let five = analyze(&build_example(10, 5, r, 5).unwrap()).unwrap();
    let odd = analyze(&build_example(9, 4, r, 5).unwrap()).unwrap();
    assert_eq!(four.alexander_exponent, 0);
    assert_eq!(five.alexander_exponent, 1);
    assert_eq!(odd.alexander_exponent, 0);
    assert_eq!(four.alexander_bound, 73);
    let ex = build_example(8, 4, r, 5).unwrap();
    assert_eq!(
        alexander_exponent_of(&ex.node_ideal, 8).unwrap().exponent,
        1
    );
}

#[test]
fn locus_comparisons() {
    let r = ring(8191);
    let cases = [
        (8, 4, 27, Comparison::Equal),
        (10, 4, 43, Comparison::Greater),
        (10, 5, 42, Comparison::Equal),
    ];
    for (d, a, codim, vs_h) in cases {
        let rep = analyze(&build_example(d, a, r, 11).unwrap()).unwrap();
        assert_eq!(rep.codim_l, codim);
        assert_eq!(rep.comparisons.codim_l_vs_h_d, vs_h, "d={d} a={a}");
    }
}

#[test]
fn ci_detection_reads_generator_degrees() {
    let r = ring(65521);
    let ex = build_example(8, 4, r, 2).unwrap();
    let ci = detect_ci(&ex.node_ideal, &ex.hilbert, 8).unwrap();
    assert!(ci.verdict);
    assert_eq!(ci.generator_degrees, vec![1, 4, 7]);

    let ex = build_example(10, 5, r, 2).unwrap();
    let ci = detect_ci(&ex.node_ideal, &ex.hilbert, 10).unwrap();
    assert!(!ci.verdict);
    assert_eq!(ci.generator_degrees, vec![1, 5, 9]);

    let mut s = SeedStream::new(99);
    let pts: Vec<Vec<u32>> = (0..10)
        .map(|_| (0..4).map(|_| s.next_below(65521)).collect())
        .collect();
    let h = points_hilbert(&r, &pts, 12).unwrap();
    let zero = IdealGens::zero(r);
    let ci = detect_ci(&zero, &h, 8).unwrap();
    assert!(!ci.verdict);
    assert_eq!(h.at(1).unwrap(), 4);
    assert!(ci.generator_degrees.is_empty());
}

#[test]
fn few_general_points_impose_independent_conditions() {
    let r = ring(65521);
    let mut s = SeedStream::new(4);
    for d in [8u32, 9, 10] {
        let m = 4 * d as usize - 5;
        let pts: Vec<Vec<u32>> = (0..m)
            .map(|_| (0..4).map(|_| s.next_below(65521)).collect())
            .collect();
        let h = points_hilbert(&r, &pts, d).unwrap();
        assert_eq!(h.at(d).unwrap(), m, "d={d}");
    }
}

#[test]
fn consensus_over_default_primes() {
    let reports: Vec<_> = DEFAULT_PRIMES
        .iter()
        .map(|&p| analyze(&build_example(8, 4, ring(p), 7).unwrap()).unwrap())
        .collect();
    for r in &reports[1..] {
        assert_eq!(r.hilbert, reports[0].hilbert);
        assert_eq!(r.defect_d, reports[0].defect_d);
        assert_eq!(r.ci_1_4_dm1, reports[0].ci_1_4_dm1);
    }
}

#[test]
fn rescaling_f3_leaves_the_report_unchanged() {
    let r = ring(65521);
    let field = r.field();
    let ex = build_example(10, 5, r, 8).unwrap();
    let base = analyze(&ex).unwrap();
    for c in [2u32, 3, 12345] {
        // f3 -> c^2 f3 and f2 -> f2 / c keep f; f3 -> c f3 alone keeps the nodes.
        let same_f = NodalExample::from_parts(
            10,
            5,
            ex.seed,
            ex.kmax,
            ex.f1.clone(),
            ex.f2.scale(field.inv(c)),
            ex.f3.scale(field.mul(c, c)),
        )
        .unwrap();
        assert_eq!(same_f.f, ex.f);
        assert_eq!(analyze(&same_f).unwrap(), base);
        let scaled = NodalExample::from_parts(
            10,
            5,
            ex.seed,
            ex.kmax,
            ex.f1.clone(),
            ex.f2.clone(),
            ex.f3.scale(c),
        )
        .unwrap();
        assert_eq!(analyze(&scaled).unwrap(), base);
    }
}

#[test]
fn rational_points_of_the_locus_are_nodes() {
    let ex = build_example(8, 4, ring(101), 7).unwrap();
    let check = rational_node_spotcheck(&ex).unwrap();
    assert_eq!(check.points_checked, 101 * 101 + 101 + 1);
    assert!(check.failures.is_empty(), "{:?}", check.failures);
    assert_eq!(check.nodes, check.points_on_locus);
    assert_eq!(hilbert_fn(&ex.node_ideal, 1).unwrap().at(1).unwrap(), 3);
}

#[test]
fn spotcheck_refuses_large_primes() {
    let ex = build_example(8, 4, ring(8191), 7).unwrap();
    assert!(rational_node_spotcheck(&ex).is_err());
}

#[test]
fn point_classes() {
    let r = ring(101);
    let f = parse(&r, "x0^2*x1^6").unwrap();
    let hess = Hessian::new(&f).unwrap();
    assert_eq!(
        classify_point(&f, &hess, &[0, 1, 0, 0]).unwrap(),
        PointClass::Degenerate(1)
    );
    assert_eq!(
        classify_point(&f, &hess, &[1, 1, 1, 1]).unwrap(),
        PointClass::Smooth
    );

    let node: Polynomial = parse(&r, "x0^6*x1*x2 + x0^6*x3^2 + x1^8 + x2^8 + x3^8").unwrap();
    let hess = Hessian::new(&node).unwrap();
    assert_eq!(
        classify_point(&node, &hess, &[1, 0, 0, 0]).unwrap(),
        PointClass::Node
    );
}

#[test]
fn built_examples_stabilize_and_keep_their_invariants() {
    let r = ring(65521);
    for d in 8u32..=12 {
        for a in 4..=d / 2 {
            let ex = build_example(d, a, r, 21).unwrap();
            let kmax = stable_degree(d);
            assert_eq!(ex.hilbert.kmax(), kmax + 3);
            for k in kmax..=kmax + 3 {
                assert_eq!(ex.hilbert.at(k).unwrap(), ex.length, "d={d} a={a} k={k}");
            }
            let rep = analyze(&ex).unwrap();
            assert_eq!(rep.tangent_excess as i64, rep.defect_d);
            assert!(rep.alexander_exponent <= rep.alexander_bound);
            assert_eq!(rep.jacobian_dim_d, 16);
            let t = tangent_dims(&ex).unwrap();
            assert_eq!(t.gap, -15);
            if a == 4 {
                assert!(rep.defect_d >= 1);
                assert!(rep.ci_1_4_dm1);
            }
        }
    }
}

#[test]
fn monomial_jacobian() {
    let r = ring(65521);
    let f = parse(&r, "x0^8").unwrap();
    let jac = jacobian_ideal(&f).unwrap();
    let piece = nodal_core::ideal::graded_piece(&jac, 8).unwrap();
    assert_eq!(piece.dim(), 4);
    assert!(piece.contains(&f).unwrap());
    let bad = GradedRing::new(3, PrimeField::new(7).unwrap()).unwrap();
    assert!(jacobian_ideal(&parse(&bad, "x0^7").unwrap()).is_err());
}

#[test]
fn euler_identity_puts_f_in_its_jacobian_ideal() {
    let ex = build_example(9, 4, ring(8191), 2).unwrap();
    let jac = jacobian_ideal(&ex.f).unwrap();
    assert!(nodal_core::ideal::contains(&ex.f, &jac).unwrap());
}
