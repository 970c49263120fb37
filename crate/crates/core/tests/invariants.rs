use proptest::prelude::*;

use whsl_core::arith::{cf_evaluate, gcd, solve_branch_congruence, HjExpansion, Rational};
use whsl_core::dpd::{
    duality_check, floor_deg, gorenstein_check, h0_bounds, shifted_floor_identities, Branch, FractionalDivisor,
};
use whsl_core::enumerator::{classify, ClassificationEntry, ClassifyOptions, AB_BOUND_FACTOR};
use whsl_core::graded_ring::{genus, geometric_genus};
use whsl_core::paper::paper_cases;
use whsl_core::resolution::{build_graph, intersection_matrix, is_negative_definite};

fn all_entries() -> Vec<ClassificationEntry> {
    (1..=6)
        .flat_map(|a| classify(a, ClassifyOptions::default()).unwrap())
        .collect()
}

#[test]
fn floor_degrees_are_superadditive_on_fixtures() {
    for c in paper_cases().unwrap() {
        let bound = 3 * c.alpha;
        for m in 0..=bound {
            for n in 0..=bound {
                assert!(
                    floor_deg(&c.divisor, m + n) >= floor_deg(&c.divisor, m) + floor_deg(&c.divisor, n),
                    "{} m={m} n={n}",
                    c.case_id
                );
            }
        }
    }
}

#[test]
fn rational_curve_sections_sum_to_pg() {
    for c in paper_cases().unwrap().into_iter().filter(|c| c.divisor.genus() == 0) {
        let sum: u64 = (0..=c.alpha)
            .map(|n| {
                let iv = h0_bounds(&c.divisor, n);
                assert!(iv.is_point());
                iv.lo
            })
            .sum();
        assert_eq!(sum, geometric_genus(&c.wt).unwrap(), "{}", c.case_id);
    }
}

#[test]
fn fixture_genera_match_hilbert_series() {
    for c in paper_cases().unwrap() {
        assert_eq!(genus(&c.wt).unwrap(), c.divisor.genus(), "{}", c.case_id);
    }
}

#[test]
fn search_bound_is_never_tight() {
    for e in all_entries() {
        assert!(e.wt.a() * e.wt.b() < AB_BOUND_FACTOR * e.alpha as u64, "{}", e.wt);
    }
}

#[test]
fn four_branch_rational_entries_with_small_pg_have_small_alpha() {
    for e in all_entries() {
        if e.genus == 0 && e.branch_count == 4 && e.p_g <= 1 {
            assert!(e.alpha <= 2, "{}", e.wt);
        }
    }
}

#[test]
fn entries_satisfy_their_invariants() {
    for e in all_entries() {
        assert_eq!(e.wt.a_invariant(), e.alpha);
        assert_eq!(e.genus, genus(&e.wt).unwrap());
        assert_eq!(e.p_g, geometric_genus(&e.wt).unwrap());
        assert!(!e.divisors.is_empty());
        assert_eq!(e.divisors.len(), e.verdicts.len());
        assert!(e.divisors.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn emitted_graphs_are_consistent() {
    for e in all_entries() {
        for d in &e.divisors {
            let g = build_graph(d).unwrap();
            let m = intersection_matrix(&g);
            assert_eq!(m.size(), g.vertex_count());
            assert!(is_negative_definite(&m));
            let det = m.determinant();
            let positive = det > 0.into();
            assert_eq!(positive, m.size().is_multiple_of(2), "{}", e.wt);
            for (arm, b) in g.arms.iter().zip(d.branches()) {
                let back = cf_evaluate(&HjExpansion::new(arm.iter().map(|w| -w).collect()).unwrap()).unwrap();
                assert_eq!(back, Rational::new(b.q() as i64, (b.q() - b.p()) as i64).unwrap());
            }
            assert!(g.is_minimal_good());
        }
    }
}

#[test]
fn emitted_divisors_roundtrip_through_json() {
    for e in all_entries() {
        for d in &e.divisors {
            let s = serde_json::to_string(d).unwrap();
            let back: FractionalDivisor = serde_json::from_str(&s).unwrap();
            assert_eq!(&back, d);
        }
    }
}

/// Gorenstein divisors built directly from the degree relation.
fn gorenstein_divisor() -> impl Strategy<Value = (FractionalDivisor, u64)> {
    (1u64..=8, prop::collection::vec(2u64..=30, 0..6), -3i64..=12).prop_filter_map(
        "not a Gorenstein divisor",
        |(alpha, qs, deg_e)| {
            let qs: Vec<u64> = qs.into_iter().filter(|&q| gcd(q, alpha) == 1).collect();
            let branches: Vec<Branch> = qs
                .iter()
                .map(|&q| Branch::new(solve_branch_congruence(alpha as i64, q).unwrap().unwrap(), q).unwrap())
                .collect();
            // alpha*p/q - (q-1)/q = (alpha p + 1)/q - 1 is an integer
            let shift: i64 = branches
                .iter()
                .map(|b| ((alpha * b.p() + 1) / b.q()) as i64 - 1)
                .sum();
            let two_g_minus_2 = alpha as i64 * deg_e + shift;
            if two_g_minus_2 < -2 || two_g_minus_2 % 2 != 0 {
                return None;
            }
            let g = ((two_g_minus_2 + 2) / 2) as u64;
            FractionalDivisor::new(g, deg_e, branches).ok().map(|d| (d, alpha))
        },
    )
}

proptest! {
    #[test]
    fn gorenstein_implies_duality_and_shifts((d, alpha) in gorenstein_divisor()) {
        prop_assert_eq!(gorenstein_check(&d, alpha as i64), Ok(()));
        prop_assert!(duality_check(&d, alpha));
        prop_assert!(shifted_floor_identities(&d, alpha));
    }

    #[test]
    fn gorenstein_implies_coprime_denominators(
        alpha in 1i64..=8,
        g in 0u64..4,
        e in -3i64..6,
        raw in prop::collection::vec((1u64..30, 2u64..30), 0..5),
    ) {
        let branches: Vec<Branch> = raw
            .into_iter()
            .filter_map(|(p, q)| Branch::new(p % q, q).ok())
            .collect();
        if let Ok(d) = FractionalDivisor::new(g, e, branches) {
            if gorenstein_check(&d, alpha).is_ok() {
                for b in d.branches() {
                    prop_assert_eq!(gcd(alpha as u64, b.q()), 1);
                }
            }
        }
    }

    #[test]
    fn graphs_of_random_divisors_are_negative_definite((d, _alpha) in gorenstein_divisor()) {
        let g = build_graph(&d).unwrap();
        prop_assert!(is_negative_definite(&intersection_matrix(&g)));
    }
}
