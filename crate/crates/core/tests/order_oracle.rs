//! Triangulation orders: emitted sequences, verification across facets, negative
//! controls, and the cone splitting property of bipartitions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootfacet::crossing::is_saturated;
use rootfacet::geometry::{in_cone, rat, rat_vec, Rational};
use rootfacet::ideals::{facet_ideal, facet_ideals};
use rootfacet::rootsys::RootSystem;
use rootfacet::triangulate::{bipartitions, constructed_order, search_order, triangulation_order, verify_order};

fn seq(rs: &RootSystem, s: &[usize]) -> Vec<Vec<i64>> {
    s.iter().map(|&i| rs.coeffs(i).to_vec()).collect()
}

#[test]
fn emitted_sequences() {
    let c3 = RootSystem::parse("C3").unwrap();
    let cert = triangulation_order(&c3, &facet_ideal(&c3, 2).unwrap()).unwrap();
    assert_eq!(seq(&c3, &cert.sequence), vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);

    for (name, theta) in [("B5", vec![1, 2, 2, 2, 2]), ("D5", vec![1, 2, 2, 1, 1])] {
        let rs = RootSystem::parse(name).unwrap();
        let cert = triangulation_order(&rs, &facet_ideal(&rs, 0).unwrap()).unwrap();
        assert_eq!(seq(&rs, &cert.sequence), vec![vec![1, 0, 0, 0, 0], theta], "{name}");
    }

    let e6 = RootSystem::parse("E6").unwrap();
    let cert = triangulation_order(&e6, &facet_ideal(&e6, 5).unwrap()).unwrap();
    assert_eq!(
        seq(&e6, &cert.sequence[..4]),
        vec![vec![0, 0, 0, 0, 0, 1], vec![1, 2, 2, 3, 2, 1], vec![0, 0, 0, 0, 1, 1], vec![1, 1, 2, 3, 2, 1]]
    );
    assert_eq!(cert.sequence.len(), 8);
}

#[test]
fn orders_verify() {
    for name in ["A5", "B5", "C5", "D6", "E6", "F4", "G2", "E8"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            let cert = triangulation_order(&rs, &f).unwrap();
            let verdict = verify_order(&rs, &f, &cert);
            assert!(verdict.passed(), "{name} α{}: {:?}", f.alpha() + 1, verdict.failures());
        }
    }
}

#[test]
fn more_facets_up_to_rank_six_have_verified_orders() {
    for name in ["A2", "A3", "A4", "A6", "B3", "B4", "B6", "C3", "C4", "C6", "D4", "D5"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            let cert = triangulation_order(&rs, &f).unwrap();
            assert!(verify_order(&rs, &f, &cert).passed(), "{name} α{}", f.alpha() + 1);
        }
    }
}

#[test]
fn replacing_every_normal_fails_a_named_check() {
    let rs = RootSystem::parse("A5").unwrap();
    let f = facet_ideal(&rs, 2).unwrap();
    let cert = triangulation_order(&rs, &f).unwrap();
    let mut e1 = vec![rat(0); 5];
    e1[0] = rat(1);
    let verdict = verify_order(&rs, &f, &cert.with_all_normals(&e1));
    assert!(!verdict.passed());
    assert!(verdict.failures().iter().any(|c| c.contains("contact set is red(β)")), "{:?}", verdict.failures());

    // dropping a step breaks the pairing with S_I
    let mut short = cert.clone();
    short.steps.pop();
    assert!(verify_order(&rs, &f, &short).failures().contains(&"steps match S_I"));
}

#[test]
fn long_root_hyperplanes_can_meet_the_ideal_in_a_set_that_is_not_sim_closed() {
    let rs = RootSystem::parse("D5").unwrap();
    let f = facet_ideal(&rs, 4).unwrap();
    let failures: Vec<String> =
        verify_order(&rs, &f, &constructed_order(&rs, &f).unwrap()).failures().iter().map(|s| s.to_string()).collect();
    assert!(failures.iter().any(|c| c.ends_with("I∩H ∼closed")), "{failures:?}");
    assert!(search_order(&rs, &f).unwrap().is_some());

    // exhaustive search: no order meets every condition
    for (name, a) in [("D7", 6), ("E7", 6)] {
        let rs = RootSystem::parse(name).unwrap();
        assert!(search_order(&rs, &facet_ideal(&rs, a).unwrap()).unwrap().is_none(), "{name}");
    }
}

/// Saturated subsets of `members` with at most `max` elements.
fn saturated_subsets(rs: &RootSystem, members: &[usize], max: usize) -> Vec<Vec<usize>> {
    (1u32..1 << members.len())
        .filter(|m| m.count_ones() as usize <= max && m.count_ones() >= 3)
        .map(|m| (0..members.len()).filter(|i| m & (1 << i) != 0).map(|i| members[i]).collect::<Vec<usize>>())
        .filter(|s| is_saturated(rs, s))
        .collect()
}

#[test]
fn bipartitions_split_the_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for name in ["A3", "A4", "B3", "C3", "C4", "B4", "D4"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            if f.members().len() > 12 {
                continue;
            }
            for set in saturated_subsets(&rs, f.members(), 7) {
                let gens = |s: &[usize]| s.iter().map(|&i| rat_vec(rs.coeffs(i))).collect::<Vec<_>>();
                for b in bipartitions(&rs, &f, &set).unwrap() {
                    for _ in 0..3 {
                        let mut x = vec![Rational::from_integer(0.into()); rs.rank()];
                        for &g in &set {
                            let c: i64 = rng.gen_range(0..5);
                            for (xi, &v) in x.iter_mut().zip(rs.coeffs(g)) {
                                *xi += rat(c * v);
                            }
                        }
                        assert!(
                            in_cone(&x, &gens(&b.initial)) || in_cone(&x, &gens(&b.final_part)),
                            "{name} α{}",
                            f.alpha() + 1
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}
