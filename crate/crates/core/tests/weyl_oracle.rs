//! Orbit sizes against `|W| / |W_J|`, and the boundary inventory on small systems.

use std::collections::HashSet;

use rootfacet::geometry::{oracle_volume, rat};
use rootfacet::ideals::facet_ideals;
use rootfacet::rootsys::{unit, RootSystem, RootSystemSpec};
use rootfacet::triangulate::lattice_basis;
use rootfacet::weyl::{
    boundary_inventory, coweight_orbit, coweight_orbit_with_guard, fundamental_coweight, orbit_size, reflect_coweight,
    weyl_group_order,
};
use rootfacet::Error;

/// `|W| / |W_J|` where `J` is the set of simple roots orthogonal to `ω̌_α`.
fn stabilizer_quotient(rs: &RootSystem, alpha: usize) -> u128 {
    let n = rs.rank();
    let w = weyl_group_order(rs.spec().family, n);
    let gens: Vec<Vec<i64>> = (0..n).filter(|&i| i != alpha).map(|i| unit(n, i)).collect();
    if gens.is_empty() {
        return w;
    }
    let sub = rs.subsystem_of(&gens).unwrap();
    let stab: u128 = sub.components.iter().map(|c| weyl_group_order(c.family, c.rank)).product();
    w / stab
}

#[test]
fn orbit_sizes_match_the_stabilizer_quotient() {
    for spec in RootSystemSpec::all_up_to(6) {
        let rs = RootSystem::new(spec);
        for a in 0..rs.rank() {
            let size = orbit_size(&rs, &fundamental_coweight(&rs, a)).unwrap() as u128;
            assert_eq!(size, stabilizer_quotient(&rs, a), "{spec} ω̌{}", a + 1);
        }
    }
}

#[test]
fn exceptional_orbit_sizes() {
    let e7 = RootSystem::parse("E7").unwrap();
    assert_eq!(orbit_size(&e7, &fundamental_coweight(&e7, 6)).unwrap(), 56);
    let e8 = RootSystem::parse("E8").unwrap();
    assert_eq!(orbit_size(&e8, &fundamental_coweight(&e8, 0)).unwrap(), 2160);
    assert_eq!(orbit_size(&e8, &fundamental_coweight(&e8, 1)).unwrap(), 17280);
    assert_eq!(stabilizer_quotient(&e8, 1), 17280);
}

#[test]
fn guard_and_preconditions() {
    let rs = RootSystem::parse("A3").unwrap();
    let regular = vec![rat(1), rat(1), rat(1)];
    assert_eq!(orbit_size(&rs, &regular).unwrap(), 24);
    assert!(matches!(coweight_orbit_with_guard(&rs, &regular, 10), Err(Error::OrbitGuardExceeded(10))));
    assert!(matches!(orbit_size(&rs, &[rat(0), rat(0), rat(0)]), Err(Error::DegenerateInput(_))));
    assert!(orbit_size(&rs, &[rat(1)]).is_err());
}

#[test]
fn simple_reflections_permute_each_orbit() {
    for name in ["A3", "B3", "C4", "D4", "G2", "F4"] {
        let rs = RootSystem::parse(name).unwrap();
        for f in facet_ideals(&rs).unwrap() {
            let orbit = coweight_orbit(&rs, &fundamental_coweight(&rs, f.alpha())).unwrap();
            let set: HashSet<_> = orbit.elements.iter().cloned().collect();
            for i in 0..rs.rank() {
                let image: HashSet<_> = orbit.elements.iter().map(|v| reflect_coweight(&rs, i, v)).collect();
                assert_eq!(image, set, "{name}");
            }
        }
    }
}

#[test]
fn a2_boundary_is_a_hexagon() {
    let rs = RootSystem::parse("A2").unwrap();
    let inv = boundary_inventory(&rs).unwrap();
    assert_eq!(inv.orbits.len(), 2);
    for o in &inv.orbits {
        assert_eq!((o.orbit_size, o.simplices_per_facet), (3, 1));
        assert!(o.transport_ok);
    }
    assert_eq!(inv.total_simplices, 6);
    // six unit edges of length √2
    assert!((inv.approximate_volume - 6.0 * 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn a3_inventory_matches_per_facet_volumes() {
    let rs = RootSystem::parse("A3").unwrap();
    let inv = boundary_inventory(&rs).unwrap();
    let sizes: Vec<usize> = inv.orbits.iter().map(|o| o.orbit_size).collect();
    assert_eq!(sizes, vec![4, 6, 4]);
    for (o, f) in inv.orbits.iter().zip(facet_ideals(&rs).unwrap()) {
        let points: Vec<Vec<i64>> = f.members().iter().map(|&i| rs.coeffs(i).to_vec()).collect();
        let vol = oracle_volume(&points, &lattice_basis(&rs, &f)).unwrap();
        assert_eq!(o.simplices_per_facet as u64, vol);
        assert!(o.transport_ok);
    }
    assert_eq!(inv.total_simplices, 4 + 12 + 4);
}

#[test]
fn transported_simplices_stay_unimodular() {
    for name in ["B3", "C3", "D4", "G2", "F4"] {
        let rs = RootSystem::parse(name).unwrap();
        let inv = boundary_inventory(&rs).unwrap();
        assert!(inv.orbits.iter().all(|o| o.transport_ok), "{name}");
    }
}
