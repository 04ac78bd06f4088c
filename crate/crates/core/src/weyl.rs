//! Weyl group orbits of coweights, and the inventory of the boundary triangulation
//! obtained by moving each standard facet around its orbit.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::int_det;
use crate::ideals::facet_ideals;
use crate::rational_string;
use crate::rootsys::{Family, RootSystem};
use crate::triangulate::{lattice_basis, maximal_reduced_subsets};
use crate::Rational;

pub const ORBIT_GUARD: usize = 1_000_000;

/// Degrees of the basic invariants.
fn degrees(family: Family, n: usize) -> Vec<u128> {
    let n128 = n as u128;
    match family {
        Family::A => (2..=n128 + 1).collect(),
        Family::B | Family::C => (1..=n128).map(|i| 2 * i).collect(),
        Family::D => (1..n128).map(|i| 2 * i).chain(std::iter::once(n128)).collect(),
        Family::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        Family::F => vec![2, 6, 8, 12],
        Family::G => vec![2, 6],
    }
}

/// `|W|` as the product of the degrees.
pub fn weyl_group_order(family: Family, rank: usize) -> u128 {
    degrees(family, rank).iter().product()
}

/// `s_i` on a coweight given by its coordinates over the fundamental coweights.
pub fn reflect_coweight(rs: &RootSystem, i: usize, v: &[Rational]) -> Vec<Rational> {
    // α_i∨ = Σ_j ⟨α_j, α_i∨⟩ ω̌_j
    let c = v[i].clone();
    v.iter().zip(&rs.cartan()[i]).map(|(x, &a)| x - &c * Rational::from_integer(a.into())).collect()
}

/// The orbit of `v` under the simple reflections, breadth first. Each element comes with
/// its parent in the search tree and the reflection leading to it.
pub struct CoweightOrbit {
    pub elements: Vec<Vec<Rational>>,
    /// `(parent, i)` with `elements[k] = s_i(elements[parent])`; `None` for the start.
    pub tree: Vec<Option<(usize, usize)>>,
}

impl CoweightOrbit {
    /// The word `s_{i_1} ⋯ s_{i_k}` mapping the start to element `k`, innermost last.
    pub fn word(&self, mut k: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, i)) = self.tree[k] {
            w.push(i);
            k = p;
        }
        w
    }
}

pub fn coweight_orbit(rs: &RootSystem, v: &[Rational]) -> Result<CoweightOrbit> {
    coweight_orbit_with_guard(rs, v, ORBIT_GUARD)
}

/// As [`coweight_orbit`], failing once the orbit would exceed `guard` elements.
pub fn coweight_orbit_with_guard(rs: &RootSystem, v: &[Rational], guard: usize) -> Result<CoweightOrbit> {
    if v.len() != rs.rank() {
        return Err(Error::DegenerateInput(format!("coweight has {} coordinates, rank is {}", v.len(), rs.rank())));
    }
    if v.iter().all(|x| *x == Rational::from_integer(0.into())) {
        return Err(Error::DegenerateInput("zero coweight".into()));
    }
    let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut elements = vec![v.to_vec()];
    let mut tree = vec![None];
    seen.insert(v.to_vec(), 0);
    let mut head = 0;
    while head < elements.len() {
        for i in 0..rs.rank() {
            let w = reflect_coweight(rs, i, &elements[head]);
            if !seen.contains_key(&w) {
                if elements.len() == guard {
                    return Err(Error::OrbitGuardExceeded(guard));
                }
                seen.insert(w.clone(), elements.len());
                elements.push(w);
                tree.push(Some((head, i)));
            }
        }
        head += 1;
    }
    Ok(CoweightOrbit { elements, tree })
}

pub fn orbit_size(rs: &RootSystem, v: &[Rational]) -> Result<usize> {
    Ok(coweight_orbit(rs, v)?.elements.len())
}

/// The fundamental coweight `ω̌_α` in coweight coordinates.
pub fn fundamental_coweight(rs: &RootSystem, alpha: usize) -> Vec<Rational> {
    (0..rs.rank()).map(|j| Rational::from_integer(i64::from(j == alpha).into())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    /// 1-based.
    pub alpha: usize,
    pub nil_type: String,
    pub orbit_size: usize,
    pub simplices_per_facet: usize,
    /// The lattice `(Π∖{α}) ∪ {m_α α}` as coefficient rows.
    pub lattice: Vec<Vec<i64>>,
    /// Gram determinant of `Π∖{α}`, which spans the directions of the facet.
    #[serde(serialize_with = "ser_rational")]
    pub gram_det: Rational,
    /// Every transported simplex still has determinant ±1 in the transported lattice.
    pub transport_ok: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(q))
}

impl OrbitRecord {
    pub fn simplex_count(&self) -> u64 {
        self.orbit_size as u64 * self.simplices_per_facet as u64
    }

    /// Euclidean `(n−1)`-volume of one unimodular simplex of this facet, `√gram/(n−1)!`.
    pub fn approximate_simplex_volume(&self) -> f64 {
        let n = self.lattice.len();
        let fact: f64 = (1..n).map(|k| k as f64).product();
        let g = self.gram_det.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / self.gram_det.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        g.sqrt() / fact
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryInventory {
    pub system: String,
    pub orbits: Vec<OrbitRecord>,
    pub total_simplices: u64,
    /// Sum of Euclidean volumes; not exact.
    pub approximate_volume: f64,
}

/// Applies `word` (innermost last) to a coefficient vector.
fn apply_word(rs: &RootSystem, word: &[usize], x: &[i64]) -> Vec<i64> {
    word.iter().rev().fold(x.to_vec(), |y, &i| rs.simple_reflect(i, &y))
}

/// Moves one simplex and the lattice basis of the facet by every word of the orbit tree
/// and checks that the simplex keeps determinant ±1 relative to the moved basis.
fn transport_check(rs: &RootSystem, orbit: &CoweightOrbit, simplex: &[Vec<i64>], basis: &[Vec<i64>]) -> bool {
    (0..orbit.elements.len()).all(|k| {
        let w = orbit.word(k);
        let s: Vec<Vec<i64>> = simplex.iter().map(|r| apply_word(rs, &w, r)).collect();
        let b: Vec<Vec<i64>> = basis.iter().map(|r| apply_word(rs, &w, r)).collect();
        // both determinants are taken in simple-root coordinates; their ratio is the
        // determinant of the simplex in the moved basis
        let (ds, db) = (int_det(&s), int_det(&b));
        db != 0.into() && (ds.clone() == db.clone() || ds == -db)
    })
}

pub fn boundary_inventory(rs: &RootSystem) -> Result<BoundaryInventory> {
    let mut orbits = Vec::new();
    for f in facet_ideals(rs)? {
        let a = f.alpha();
        let orbit = coweight_orbit(rs, &fundamental_coweight(rs, a))?;
        let simplices = maximal_reduced_subsets(rs, &f)?;
        let basis = lattice_basis(rs, &f);
        let first: Vec<Vec<i64>> = simplices[0].members.iter().map(|&i| rs.coeffs(i).to_vec()).collect();
        let directions: Vec<Vec<i64>> = (0..rs.rank())
            .filter(|&i| i != a)
            .map(|i| (0..rs.rank()).filter(|&j| j != a).map(|j| rs.form()[i][j]).collect())
            .collect();
        let gram_det = if directions.is_empty() {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer(int_det(&directions))
        };
        orbits.push(OrbitRecord {
            alpha: a + 1,
            nil_type: f.nil_type().to_string(),
            orbit_size: orbit.elements.len(),
            simplices_per_facet: simplices.len(),
            transport_ok: transport_check(rs, &orbit, &first, &basis),
            lattice: basis,
            gram_det,
        });
    }
    let total_simplices = orbits.iter().map(OrbitRecord::simplex_count).sum();
    let approximate_volume =
        orbits.iter().map(|o| o.simplex_count() as f64 * o.approximate_simplex_volume()).sum();
    Ok(BoundaryInventory { system: rs.name(), orbits, total_simplices, approximate_volume })
}
