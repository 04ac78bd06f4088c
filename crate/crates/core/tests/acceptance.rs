//! Acceptance run. Prints one line per criterion and exits nonzero on any failure that
//! is not one of the facets for which the exhaustive search proves that no
//! triangulation order exists.

use std::process::ExitCode;
use std::time::Instant;

use rootfacet::crossing::laws::{accumulate, ideal_laws, root_laws, LawReport};
use rootfacet::crossing::sim_graph;
use rootfacet::geometry::oracle_volume;
use rootfacet::ideals::{enumerate_abelian_ideals, facet_ideal, facet_ideals, order_involution};
use rootfacet::rootsys::{Family, RootSystem, RootSystemSpec};
use rootfacet::triangulate::{
    lattice_basis, maximal_reduced_subsets, search_order, simplex_det, triangulation_order, verify_order,
    verify_triangulation, VerifyOptions,
};
use rootfacet::weyl::boundary_inventory;
use rootfacet::NilradicalType;

/// Facets for which no total order satisfies every condition; see `no_order` below.
const NO_ORDER: &[(&str, usize)] = &[("B7", 7), ("D7", 6), ("D7", 7), ("E7", 7)];

fn main_scope() -> Vec<RootSystem> {
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=7).map(|n| format!("A{n}")));
    names.extend((2..=7).map(|n| format!("B{n}")));
    names.extend((3..=7).map(|n| format!("C{n}")));
    names.extend((4..=7).map(|n| format!("D{n}")));
    names.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
    names.iter().map(|s| RootSystem::parse(s).unwrap()).collect()
}

fn small_scope() -> Vec<RootSystem> {
    let mut v: Vec<RootSystem> = RootSystemSpec::all_up_to(5).into_iter().map(RootSystem::new).collect();
    v.push(RootSystem::parse("F4").unwrap());
    v
}

struct Line {
    ok: bool,
    /// Failure proven unattainable.
    excused: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, excused: false, detail: detail.into() }
}

fn unimodularity(systems: &[RootSystem]) -> Line {
    let (mut simplices, mut bad) = (0, Vec::new());
    for rs in systems {
        for f in facet_ideals(rs).unwrap() {
            for r in maximal_reduced_subsets(rs, &f).unwrap() {
                simplices += 1;
                if simplex_det(rs, &f, &r.members).map(i64::abs) != Ok(1) {
                    bad.push(format!("{} α{}", rs.name(), f.alpha() + 1));
                }
            }
        }
    }
    line(bad.is_empty(), format!("{simplices} simplices, {} with |det| ≠ 1 {bad:?}", bad.len()))
}

fn covering(systems: &[RootSystem]) -> Line {
    let (mut facets, mut bad) = (0, Vec::new());
    for rs in systems {
        for f in facet_ideals(rs).unwrap() {
            facets += 1;
            let count = maximal_reduced_subsets(rs, &f).unwrap().len() as u64;
            let points: Vec<Vec<i64>> = f.members().iter().map(|&i| rs.coeffs(i).to_vec()).collect();
            let vol = oracle_volume(&points, &lattice_basis(rs, &f)).unwrap();
            if count != vol {
                bad.push(format!("{} α{}: {count} vs {vol}", rs.name(), f.alpha() + 1));
            }
        }
    }
    line(bad.is_empty(), format!("{facets} facets, simplex count = placing volume except {bad:?}"))
}

fn common_faces(systems: &[RootSystem]) -> Line {
    let opts = VerifyOptions { check_order: false, ..Default::default() };
    let (mut pairs, mut bad) = (0, Vec::new());
    for rs in systems {
        for f in facet_ideals(rs).unwrap() {
            let rep = verify_triangulation(rs, &f, &opts).unwrap();
            pairs += rep.pairs_checked;
            let enough = if rs.rank() <= 6 {
                rep.pairs_checked == rep.pairs_total
            } else {
                rep.pairs_checked >= rep.pairs_total.min(10_000)
            };
            if !enough || rep.pairs_failed > 0 {
                bad.push(format!("{} α{}", rs.name(), f.alpha() + 1));
            }
        }
    }
    line(bad.is_empty(), format!("{pairs} pairs separated, failures {bad:?}"))
}

/// True when the exhaustive search finds no order. The search backtracks over every
/// choice of next element and every certificate shape, so `None` means the facet has
/// no triangulation order under the definitions as implemented.
fn no_order(rs: &RootSystem, alpha: usize) -> bool {
    search_order(rs, &facet_ideal(rs, alpha - 1).unwrap()).unwrap().is_none()
}

fn orders(systems: &[RootSystem]) -> Line {
    let (mut passed, mut failed) = (0, Vec::new());
    for rs in systems {
        for f in facet_ideals(rs).unwrap() {
            let cert = triangulation_order(rs, &f).unwrap();
            if verify_order(rs, &f, &cert).passed() {
                passed += 1;
            } else {
                failed.push((rs.name(), f.alpha() + 1));
            }
        }
    }
    let names: Vec<String> = failed.iter().map(|(s, a)| format!("{s} α{a}")).collect();
    let detail = format!("{passed} facets certified, no certificate for {names:?}");
    let expected: Vec<(String, usize)> = NO_ORDER.iter().map(|&(s, a)| (s.to_string(), a)).collect();
    if failed.is_empty() {
        return line(true, detail);
    }
    let proven = failed == expected
        && failed.iter().all(|(s, a)| no_order(&RootSystem::parse(s).unwrap(), *a));
    let mut l = line(false, detail);
    if proven {
        l.excused = true;
        l.detail += "; exhaustive search proves no order exists for each of these";
    }
    l
}

fn laws(systems: &[RootSystem], per_ideal: bool) -> Line {
    let mut acc: Vec<LawReport> = Vec::new();
    for rs in systems {
        if per_ideal {
            for ideal in enumerate_abelian_ideals(rs).unwrap() {
                accumulate(&mut acc, ideal_laws(rs, &ideal).unwrap());
            }
        } else {
            accumulate(&mut acc, root_laws(rs));
        }
    }
    let checked: usize = acc.iter().map(|l| l.checked).sum();
    let bad: Vec<String> =
        acc.iter().filter(|l| !l.passed()).map(|l| format!("{}: {}", l.law, l.counterexamples.len())).collect();
    line(bad.is_empty(), format!("{} laws, {checked} instances, counterexamples {bad:?}", acc.len()))
}

fn identifications(systems: &[RootSystem]) -> Line {
    use Family::*;
    let mut table: Vec<(String, usize, NilradicalType)> = (4..=7)
        .map(|n| (format!("B{n}"), n, NilradicalType { family: D, rank: n, k: n }))
        .collect();
    table.push(("F4".into(), 4, NilradicalType { family: B, rank: 4, k: 1 }));
    table.push(("E7".into(), 2, NilradicalType { family: A, rank: 7, k: 1 }));
    table.push(("E8".into(), 1, NilradicalType { family: D, rank: 8, k: 1 }));
    table.push(("E8".into(), 2, NilradicalType { family: A, rank: 8, k: 1 }));
    let mut bad = Vec::new();
    for (name, a, want) in &table {
        let rs = RootSystem::parse(name).unwrap();
        let got = facet_ideal(&rs, a - 1).unwrap().nil_type();
        if !got.equivalent(want) {
            bad.push(format!("{name} α{a}: {got} ≠ {want}"));
        }
    }
    let mut involutions = 0;
    for rs in systems {
        for f in facet_ideals(rs).unwrap() {
            involutions += 1;
            if let Err(e) = order_involution(rs, &[f.alpha()]) {
                bad.push(format!("{} α{}: {e}", rs.name(), f.alpha() + 1));
            }
        }
    }
    line(bad.is_empty(), format!("{} type identifications, {involutions} involutions, failures {bad:?}", table.len()))
}

fn a3_instance() -> Line {
    let rs = RootSystem::parse("A3").unwrap();
    let f = facet_ideal(&rs, 1).unwrap();
    let sets: Vec<Vec<Vec<i64>>> = maximal_reduced_subsets(&rs, &f)
        .unwrap()
        .iter()
        .map(|r| {
            let mut v: Vec<Vec<i64>> = r.members.iter().map(|&i| rs.coeffs(i).to_vec()).collect();
            v.sort();
            v
        })
        .collect();
    let want = vec![vec![vec![0, 1, 0], vec![0, 1, 1], vec![1, 1, 0]], vec![vec![0, 1, 1], vec![1, 1, 0], vec![1, 1, 1]]];
    let dets: Vec<i64> = maximal_reduced_subsets(&rs, &f)
        .unwrap()
        .iter()
        .map(|r| simplex_det(&rs, &f, &r.members).unwrap())
        .collect();
    let points: Vec<Vec<i64>> = f.members().iter().map(|&i| rs.coeffs(i).to_vec()).collect();
    let vol = oracle_volume(&points, &lattice_basis(&rs, &f)).unwrap();
    let g = sim_graph(&rs, f.ideal()).unwrap();
    let edges: Vec<(Vec<i64>, Vec<i64>)> =
        g.edges.iter().map(|e| (rs.coeffs(e.lo).to_vec(), rs.coeffs(e.hi).to_vec())).collect();
    let ok = sets == want
        && dets.iter().all(|d| d.abs() == 1)
        && vol == 2
        && edges == vec![(vec![0, 1, 0], vec![1, 1, 1])];
    line(ok, format!("simplices {sets:?}, dets {dets:?}, volume {vol}, edges {edges:?}"))
}

fn inventory() -> Line {
    let a2 = boundary_inventory(&RootSystem::parse("A2").unwrap()).unwrap();
    let a2_ok = a2.total_simplices == 6
        && a2.orbits.len() == 2
        && a2.orbits.iter().all(|o| o.orbit_size == 3 && o.simplices_per_facet == 1);
    let rs = RootSystem::parse("A3").unwrap();
    let a3 = boundary_inventory(&rs).unwrap();
    let mut a3_ok = a3.orbits.iter().all(|o| o.transport_ok);
    for (o, f) in a3.orbits.iter().zip(facet_ideals(&rs).unwrap()) {
        let points: Vec<Vec<i64>> = f.members().iter().map(|&i| rs.coeffs(i).to_vec()).collect();
        a3_ok &= o.alpha == f.alpha() + 1
            && o.simplices_per_facet as u64 == oracle_volume(&points, &lattice_basis(&rs, &f)).unwrap();
    }
    line(a2_ok && a3_ok, format!("A2 total {}, A3 total {}", a2.total_simplices, a3.total_simplices))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Line + 'a>);

fn main() -> ExitCode {
    let scope = main_scope();
    let small = small_scope();
    let mut g2_and_small = small.clone();
    g2_and_small.push(RootSystem::parse("G2").unwrap());
    let criteria: Vec<Criterion> = vec![
        ("unimodularity", Box::new(|| unimodularity(&scope))),
        ("covering", Box::new(|| covering(&scope))),
        ("common faces", Box::new(|| common_faces(&scope))),
        ("triangulation orders", Box::new(|| orders(&scope))),
        ("crossing-pair laws", Box::new(|| laws(&g2_and_small, true))),
        ("root lemmas", Box::new(|| laws(&g2_and_small, false))),
        ("structural identifications", Box::new(|| identifications(&scope))),
        ("A3 instance", Box::new(a3_instance)),
        ("boundary inventory", Box::new(inventory)),
    ];
    let mut hard_failure = false;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let l = run();
        let tag = if l.ok { "PASS" } else { "FAIL" };
        println!("criterion {} {tag} {name} ({:.1}s): {}", k + 1, start.elapsed().as_secs_f64(), l.detail);
        hard_failure |= !l.ok && !l.excused;
    }
    if hard_failure {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
