//! Ideals against brute-force oracles over Φ⁺.

use std::collections::BTreeSet;

use rootfacet::ideals::{
    classify_ideal, enumerate_abelian_ideals, enumerate_abelian_ideals_by_antichains, face_ideal, facet_ideals,
    order_involution, principal_ideal,
};
use rootfacet::rootsys::{std_leq, Family, RootSystem, RootSystemSpec};
use rootfacet::Error;

fn coeff_set(rs: &RootSystem, members: &[usize]) -> BTreeSet<Vec<i64>> {
    members.iter().map(|&i| rs.coeffs(i).to_vec()).collect()
}

fn set(v: &[&[i64]]) -> BTreeSet<Vec<i64>> {
    v.iter().map(|x| x.to_vec()).collect()
}

#[test]
fn principal_ideals_by_brute_force() {
    let a3 = RootSystem::parse("A3").unwrap();
    let i = principal_ideal(&a3, &[0, 1, 0]).unwrap();
    assert_eq!(coeff_set(&a3, i.members()), set(&[&[0, 1, 0], &[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]));

    for spec in RootSystemSpec::all_up_to(6) {
        let rs = RootSystem::new(spec);
        for b in rs.positive_roots() {
            let got = principal_ideal(&rs, b.coeffs()).unwrap();
            let oracle: BTreeSet<Vec<i64>> = rs
                .positive_roots()
                .iter()
                .filter(|g| g.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x - y >= 0))
                .map(|g| g.coeffs().to_vec())
                .collect();
            assert_eq!(coeff_set(&rs, got.members()), oracle);
        }
    }
    assert!(matches!(principal_ideal(&a3, &[0, -1, 0]), Err(Error::NotPositive(_))));
    assert!(matches!(principal_ideal(&a3, &[1, 0, 1]), Err(Error::NotPositive(_))));
}

#[test]
fn abelian_ideal_counts_are_powers_of_two() {
    for spec in RootSystemSpec::all_up_to(6) {
        let rs = RootSystem::new(spec);
        let a = enumerate_abelian_ideals(&rs).unwrap();
        let b = enumerate_abelian_ideals_by_antichains(&rs).unwrap();
        assert_eq!(a, b, "{spec}");
        assert_eq!(a.len(), 1 << spec.rank, "{spec}");
        for i in &a {
            assert!(classify_ideal(&rs, i.members()).abelian);
        }
    }
    let a2 = RootSystem::parse("A2").unwrap();
    assert_eq!(enumerate_abelian_ideals(&a2).unwrap().len(), 4);
    let e8 = RootSystem::parse("E8").unwrap();
    assert!(matches!(enumerate_abelian_ideals(&e8), Err(Error::RankGuardExceeded { .. })));
}

#[test]
fn ideal_flags() {
    let a3 = RootSystem::parse("A3").unwrap();
    let theta = a3.theta_index();
    let a2 = a3.index_of(&[0, 1, 0]).unwrap();
    let f = classify_ideal(&a3, &[theta]);
    assert!(f.ad_nilpotent && f.abelian && !f.nilradical);
    let f = classify_ideal(&a3, &[a2]);
    assert!(!f.ad_nilpotent && !f.abelian);
    let p = principal_ideal(&a3, &[0, 1, 0]).unwrap();
    let f = classify_ideal(&a3, p.members());
    assert!(f.abelian && f.nilradical);
    assert!(classify_ideal(&a3, &[]).nilradical);
}

#[test]
fn facet_ideals_match_the_coefficient_filter() {
    for spec in RootSystemSpec::all_up_to(8) {
        let rs = RootSystem::new(spec);
        for f in facet_ideals(&rs).unwrap() {
            let a = f.alpha();
            let m = rs.marks()[a];
            let oracle: BTreeSet<Vec<i64>> = rs
                .positive_roots()
                .iter()
                .filter(|g| g.coeffs()[a] == m)
                .map(|g| g.coeffs().to_vec())
                .collect();
            assert_eq!(coeff_set(&rs, f.ideal().members()), oracle, "{spec} α{}", a + 1);
            let mu = rs.coeffs(f.mu());
            assert!(oracle.iter().all(|g| std_leq(mu, g)));
            assert!(classify_ideal(&rs, f.ideal().members()).abelian);
        }
    }
}

fn ty(rs: &RootSystem, alpha: usize) -> (Family, usize, usize) {
    let f = facet_ideals(rs).unwrap().into_iter().find(|f| f.alpha() + 1 == alpha).unwrap();
    let t = f.nil_type();
    (t.family, t.rank, t.k)
}

#[test]
fn facet_types() {
    use Family::*;
    let cases: Vec<(&str, usize, (Family, usize, usize))> = vec![
        ("A1", 1, (A, 1, 1)),
        ("A3", 2, (A, 3, 2)),
        ("A5", 5, (A, 5, 1)),
        ("A6", 4, (A, 6, 3)),
        ("B2", 1, (B, 2, 1)),
        ("B3", 1, (B, 3, 1)),
        ("B3", 3, (A, 3, 1)),
        ("B5", 5, (D, 5, 4)),
        ("C4", 4, (C, 4, 4)),
        ("D4", 3, (D, 4, 1)),
        ("D6", 1, (D, 6, 1)),
        ("D6", 6, (D, 6, 5)),
        ("E6", 6, (E, 6, 1)),
        ("E7", 2, (A, 7, 1)),
        ("E7", 7, (E, 7, 7)),
        ("E8", 1, (D, 8, 1)),
        ("E8", 2, (A, 8, 1)),
        ("F4", 4, (B, 4, 1)),
        ("G2", 1, (A, 2, 1)),
    ];
    for (name, alpha, expected) in cases {
        let rs = RootSystem::parse(name).unwrap();
        assert_eq!(ty(&rs, alpha), expected, "{name} α{alpha}");
    }
}

#[test]
fn face_ideal_dimensions() {
    let a3 = RootSystem::parse("A3").unwrap();
    let f = face_ideal(&a3, &[1]).unwrap();
    assert_eq!(f.dim, 2);
    assert_eq!(f.ideal.len(), 4);
    let f = face_ideal(&a3, &[0, 2]).unwrap();
    assert_eq!(f.dim, 0);
    assert_eq!(f.ideal.members(), &[a3.theta_index()]);
    assert!(matches!(face_ideal(&a3, &[]), Err(Error::EmptyS)));
}

#[test]
fn order_involution_swaps_theta_and_mu() {
    for spec in RootSystemSpec::all_up_to(8) {
        let rs = RootSystem::new(spec);
        for f in facet_ideals(&rs).unwrap() {
            let inv = order_involution(&rs, &[f.alpha()]).unwrap();
            assert_eq!(inv.apply(rs.theta_index()), f.mu());
            assert_eq!(inv.apply(f.mu()), rs.theta_index());
            for &b in f.ideal().members() {
                assert_eq!(inv.apply(inv.apply(b)), b);
                for &c in f.ideal().members() {
                    assert_eq!(
                        std_leq(rs.coeffs(b), rs.coeffs(c)),
                        std_leq(rs.coeffs(inv.apply(c)), rs.coeffs(inv.apply(b)))
                    );
                }
            }
        }
    }
}
