//! Maximal reduced subsets and simplex determinants against exhaustive oracles.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootfacet::crossing::sim_graph;
use rootfacet::ideals::{facet_ideal, facet_ideals, order_involution};
use rootfacet::rootsys::{RootSystem, RootSystemSpec};
use rootfacet::triangulate::{maximal_reduced_subsets, simplex_det, verify_triangulation, VerifyOptions};
use rootfacet::{Error, FacetIdeal};

/// All maximal pairwise-unrelated subsets, by scanning every subset.
fn maximal_reduced_oracle(rs: &RootSystem, f: &FacetIdeal) -> BTreeSet<Vec<usize>> {
    let g = sim_graph(rs, f.ideal()).unwrap();
    let m = f.members();
    let reduced = |mask: u32| {
        (0..m.len()).all(|i| mask & (1 << i) == 0 || (i + 1..m.len()).all(|j| mask & (1 << j) == 0 || !g.sim(m[i], m[j])))
    };
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m.len()) {
        if !reduced(mask) {
            continue;
        }
        let maximal = (0..m.len()).all(|i| mask & (1 << i) != 0 || !reduced(mask | (1 << i)));
        if maximal {
            out.insert((0..m.len()).filter(|i| mask & (1 << i) != 0).map(|i| m[i]).collect());
        }
    }
    out
}

/// Laplace expansion along the first row.
fn laplace(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * laplace(&minor)
        })
        .sum()
}

fn coeff_sets(rs: &RootSystem, sets: &[Vec<usize>]) -> BTreeSet<BTreeSet<Vec<i64>>> {
    sets.iter().map(|s| s.iter().map(|&i| rs.coeffs(i).to_vec()).collect()).collect()
}

#[test]
fn small_examples() {
    let a1 = RootSystem::parse("A1").unwrap();
    let f = facet_ideal(&a1, 0).unwrap();
    let sets: Vec<Vec<usize>> = maximal_reduced_subsets(&a1, &f).unwrap().into_iter().map(|r| r.members).collect();
    assert_eq!(sets, vec![vec![0]]);

    let a2 = RootSystem::parse("A2").unwrap();
    let f = facet_ideal(&a2, 0).unwrap();
    let sets: Vec<Vec<usize>> = maximal_reduced_subsets(&a2, &f).unwrap().into_iter().map(|r| r.members).collect();
    assert_eq!(coeff_sets(&a2, &sets), [[vec![1, 0], vec![1, 1]].into_iter().collect()].into_iter().collect());

    let a3 = RootSystem::parse("A3").unwrap();
    let f = facet_ideal(&a3, 1).unwrap();
    let sets: Vec<Vec<usize>> = maximal_reduced_subsets(&a3, &f).unwrap().into_iter().map(|r| r.members).collect();
    let expected: BTreeSet<BTreeSet<Vec<i64>>> = [
        [vec![0, 1, 0], vec![1, 1, 0], vec![0, 1, 1]].into_iter().collect(),
        [vec![1, 1, 1], vec![1, 1, 0], vec![0, 1, 1]].into_iter().collect(),
    ]
    .into_iter()
    .collect();
    assert_eq!(coeff_sets(&a3, &sets), expected);
    assert_eq!(laplace(&[vec![0, 1, 0], vec![1, 1, 0], vec![0, 1, 1]]), -1);
    for r in maximal_reduced_subsets(&a3, &f).unwrap() {
        assert_eq!(simplex_det(&a3, &f, &r.members).unwrap().abs(), 1);
    }
    let r = [a3.index_of(&[0, 1, 0]).unwrap(), a3.index_of(&[1, 1, 0]).unwrap(), a3.index_of(&[0, 1, 1]).unwrap()];
    assert_eq!(simplex_det(&a3, &f, &r).unwrap(), -1);
    let t = a3.theta_index();
    let a2i = a3.index_of(&[0, 1, 0]).unwrap();
    assert!(matches!(simplex_det(&a3, &f, &[a2i, t, t]), Err(Error::SingularSet)));
}

#[test]
fn maximal_reduced_subsets_match_subset_scan() {
    let mut specs = RootSystemSpec::all_up_to(5);
    for name in ["F4", "A6", "D6"] {
        specs.push(name.parse().unwrap());
    }
    for spec in specs {
        let rs = RootSystem::new(spec);
        for f in facet_ideals(&rs).unwrap() {
            if f.members().len() > 20 {
                continue;
            }
            let got: BTreeSet<Vec<usize>> =
                maximal_reduced_subsets(&rs, &f).unwrap().into_iter().map(|r| r.members).collect();
            assert_eq!(got, maximal_reduced_oracle(&rs, &f), "{spec} α{}", f.alpha() + 1);
        }
    }
}

#[test]
fn determinants_match_laplace_expansion() {
    for name in ["A4", "B4", "C4", "D4", "F4", "G2"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            let a = f.alpha();
            for r in maximal_reduced_subsets(&rs, &f).unwrap() {
                // lattice coordinates: the α coordinate of every member equals the mark
                let rows: Vec<Vec<i64>> = r
                    .members
                    .iter()
                    .map(|&i| {
                        let mut c = rs.coeffs(i).to_vec();
                        c[a] /= f.mark();
                        c
                    })
                    .collect();
                assert_eq!(simplex_det(&rs, &f, &r.members).unwrap(), laplace(&rows), "{name}");
            }
        }
    }
}

#[test]
fn reduced_sets_extend_to_enumerated_maximal_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["A5", "B4", "C4", "D5", "E6", "F4"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            let g = sim_graph(&rs, f.ideal()).unwrap();
            let all: BTreeSet<Vec<usize>> =
                maximal_reduced_subsets(&rs, &f).unwrap().into_iter().map(|r| r.members).collect();
            for _ in 0..20 {
                let mut order = f.members().to_vec();
                order.shuffle(&mut rng);
                let mut set: Vec<usize> = Vec::new();
                for x in order {
                    if set.iter().all(|&y| !g.sim(x, y)) {
                        set.push(x);
                    }
                }
                set.sort();
                assert_eq!(set.len(), rs.rank(), "{name}");
                assert!(all.contains(&set), "{name}");
            }
        }
    }
}

#[test]
fn the_involution_permutes_the_simplices() {
    for name in ["A5", "B4", "C4", "D5", "E6", "F4", "G2"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            let inv = order_involution(&rs, &[f.alpha()]).unwrap();
            let all: BTreeSet<Vec<usize>> =
                maximal_reduced_subsets(&rs, &f).unwrap().into_iter().map(|r| r.members).collect();
            for r in &all {
                let mut image: Vec<usize> = r.iter().map(|&i| inv.apply(i)).collect();
                image.sort();
                assert!(all.contains(&image), "{name}");
            }
        }
    }
}

#[test]
fn verification_examples() {
    let opts = VerifyOptions::default();
    let a3 = RootSystem::parse("A3").unwrap();
    let rep = verify_triangulation(&a3, &facet_ideal(&a3, 1).unwrap(), &opts).unwrap();
    assert_eq!((rep.simplex_count, rep.oracle_volume, rep.pairs_checked, rep.pairs_failed), (2, 2, 1, 0));
    assert!(rep.passed());

    let a2 = RootSystem::parse("A2").unwrap();
    let rep = verify_triangulation(&a2, &facet_ideal(&a2, 0).unwrap(), &opts).unwrap();
    assert_eq!((rep.simplex_count, rep.oracle_volume, rep.pairs_checked), (1, 1, 0));
    assert!(rep.passed());

    let c3 = RootSystem::parse("C3").unwrap();
    let rep = verify_triangulation(&c3, &facet_ideal(&c3, 2).unwrap(), &opts).unwrap();
    assert_eq!(rep.simplex_count as u64, rep.oracle_volume);
    assert!(rep.passed());
}
