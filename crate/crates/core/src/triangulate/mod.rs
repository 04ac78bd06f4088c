//! The triangulation of a facet by its maximal reduced subsets, and its certification.

use serde::Serialize;

use crate::crossing::sim_graph;
use crate::error::{Error, Result};
use crate::geometry::linalg::int_det;
use crate::geometry::{oracle_volume, rat_vec, separate, Rational, Separation};
use crate::ideals::FacetIdeal;
use crate::rootsys::RootSystem;

pub mod order;

pub use order::{bipartitions, constructed_order, search_order, triangulation_order, Bipartition, Evidence, verify_order, OrderVerdict, TriangulationOrderCert};

/// A pairwise `≁` subset of a facet ideal, as sorted root indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReducedSet {
    pub members: Vec<usize>,
}

fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = bits(p | x).max_by_key(|&u| ((p & adj[u]).count_ones(), std::cmp::Reverse(u))).unwrap();
    for v in bits(p & !adj[pivot]) {
        let b = 1u128 << v;
        bron_kerbosch(adj, r | b, p & adj[v], x & adj[v], out);
        p &= !b;
        x |= b;
    }
}

/// Vertices in degeneracy order (repeatedly remove a vertex of minimum degree, lowest
/// index first).
fn degeneracy_order(adj: &[u128]) -> Vec<usize> {
    let k = adj.len();
    let mut left: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let mut order = Vec::with_capacity(k);
    while left != 0 {
        let v = bits(left).min_by_key(|&v| ((adj[v] & left).count_ones(), v)).unwrap();
        order.push(v);
        left &= !(1u128 << v);
    }
    order
}

/// Maximal independent sets of the `∼` graph, i.e. maximal cliques of its complement.
/// Every one must have exactly `n` members.
pub fn maximal_reduced_subsets(rs: &RootSystem, f: &FacetIdeal) -> Result<Vec<ReducedSet>> {
    let nodes = f.members();
    if nodes.len() > 128 {
        return Err(Error::IdealTooLarge(nodes.len()));
    }
    let g = sim_graph(rs, f.ideal())?;
    let k = nodes.len();
    let adj: Vec<u128> = (0..k)
        .map(|i| {
            (0..k).filter(|&j| j != i && !g.sim(nodes[i], nodes[j])).fold(0u128, |acc, j| acc | (1u128 << j))
        })
        .collect();
    let mut cliques = Vec::new();
    let mut done: u128 = 0;
    for v in degeneracy_order(&adj) {
        let b = 1u128 << v;
        bron_kerbosch(&adj, b, adj[v] & !done, adj[v] & done, &mut cliques);
        done |= b;
    }
    let mut out: Vec<ReducedSet> =
        cliques.into_iter().map(|c| ReducedSet { members: bits(c).map(|i| nodes[i]).collect() }).collect();
    for r in &mut out {
        r.members.sort_unstable();
    }
    out.sort();
    if let Some(bad) = out.iter().find(|r| r.members.len() != rs.rank()) {
        return Err(Error::RankViolation { expected: rs.rank(), found: bad.members.len() });
    }
    Ok(out)
}

/// Coordinates of a facet root in the basis `(Π∖{α}) ∪ {m_α α}`.
pub fn lattice_coords(rs: &RootSystem, f: &FacetIdeal, root: usize) -> Vec<i64> {
    let mut c = rs.coeffs(root).to_vec();
    c[f.alpha()] /= f.mark();
    c
}

/// `(Π∖{α}) ∪ {m_α α}` as coefficient rows.
pub fn lattice_basis(rs: &RootSystem, f: &FacetIdeal) -> Vec<Vec<i64>> {
    (0..rs.rank())
        .map(|i| {
            let mut e = vec![0; rs.rank()];
            e[i] = if i == f.alpha() { f.mark() } else { 1 };
            e
        })
        .collect()
}

/// Determinant of the members in lattice coordinates.
pub fn simplex_det(rs: &RootSystem, f: &FacetIdeal, members: &[usize]) -> Result<i64> {
    if members.len() != rs.rank() {
        return Err(Error::RankViolation { expected: rs.rank(), found: members.len() });
    }
    let rows: Vec<Vec<i64>> = members.iter().map(|&i| lattice_coords(rs, f, i)).collect();
    let d = int_det(&rows);
    if d == 0.into() {
        return Err(Error::SingularSet);
    }
    i64::try_from(d).map_err(|_| Error::CertificationFailure("determinant overflow".into()))
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Pair cap above `all_pairs_up_to_rank`.
    pub max_pairs: usize,
    pub all_pairs_up_to_rank: usize,
    pub check_order: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_pairs: 10_000, all_pairs_up_to_rank: 6, check_order: true }
    }
}

#[derive(Clone, Debug)]
pub struct TriangulationReport {
    pub system: String,
    /// 1-based.
    pub alpha: usize,
    pub nil_type: String,
    pub simplices: Vec<ReducedSet>,
    pub simplex_count: usize,
    pub dets: Vec<i64>,
    pub oracle_volume: u64,
    pub pairs_total: u64,
    pub pairs_checked: u64,
    pub pairs_failed: u64,
    pub failed_pairs: Vec<(usize, usize)>,
    /// `None` when the order was not checked.
    pub order: Option<OrderVerdict>,
}

impl TriangulationReport {
    pub fn unimodular(&self) -> bool {
        self.dets.iter().all(|d| d.abs() == 1)
    }

    pub fn covering(&self) -> bool {
        self.dets.iter().map(|d| d.unsigned_abs()).sum::<u64>() == self.oracle_volume
    }

    pub fn common_faces(&self) -> bool {
        self.pairs_failed == 0
    }

    pub fn order_passed(&self) -> Option<bool> {
        self.order.as_ref().map(OrderVerdict::passed)
    }

    pub fn passed(&self) -> bool {
        self.unimodular() && self.covering() && self.common_faces() && self.order_passed() != Some(false)
    }

    pub fn json(&self) -> serde_json::Value {
        let order = match self.order_passed() {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skipped",
        };
        serde_json::json!({
            "system": self.system,
            "alpha": self.alpha,
            "type": self.nil_type,
            "simplex_count": self.simplex_count,
            "dets": self.dets,
            "oracle_volume": self.oracle_volume,
            "pairs_total": self.pairs_total,
            "pairs_checked": self.pairs_checked,
            "pairs_failed": self.pairs_failed,
            "order_cert": order,
            "verdict": if self.passed() { "pass" } else { "fail" },
        })
    }
}

/// Checks unimodularity, covering against the placing oracle, common faces by exact
/// separating hyperplanes, and (optionally) the triangulation order certificate.
pub fn verify_triangulation(rs: &RootSystem, f: &FacetIdeal, opts: &VerifyOptions) -> Result<TriangulationReport> {
    let simplices = maximal_reduced_subsets(rs, f)?;
    let dets = simplices.iter().map(|r| simplex_det(rs, f, &r.members)).collect::<Result<Vec<i64>>>()?;
    let points: Vec<Vec<i64>> = f.members().iter().map(|&i| rs.coeffs(i).to_vec()).collect();
    let volume = oracle_volume(&points, &lattice_basis(rs, f))?;

    let coords = |r: &ReducedSet| -> Vec<Vec<Rational>> {
        r.members.iter().map(|&i| rat_vec(&lattice_coords(rs, f, i))).collect()
    };
    let k = simplices.len() as u64;
    let pairs_total = k * k.saturating_sub(1) / 2;
    let cap = if rs.rank() <= opts.all_pairs_up_to_rank { u64::MAX } else { opts.max_pairs as u64 };
    let mut pairs_checked = 0;
    let mut failed_pairs = Vec::new();
    'outer: for i in 0..simplices.len() {
        let ci = coords(&simplices[i]);
        for j in i + 1..simplices.len() {
            if pairs_checked == cap {
                break 'outer;
            }
            pairs_checked += 1;
            if !matches!(separate(&ci, &coords(&simplices[j])), Separation::Found(_)) {
                failed_pairs.push((i, j));
            }
        }
    }
    let order = if opts.check_order {
        let cert = triangulation_order(rs, f)?;
        Some(verify_order(rs, f, &cert))
    } else {
        None
    };
    Ok(TriangulationReport {
        system: rs.name(),
        alpha: f.alpha() + 1,
        nil_type: f.nil_type().to_string(),
        simplex_count: simplices.len(),
        simplices,
        dets,
        oracle_volume: volume,
        pairs_total,
        pairs_checked,
        pairs_failed: failed_pairs.len() as u64,
        failed_pairs,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bron_kerbosch_on_a_path() {
        // path 0 - 1 - 2: maximal cliques {0,1}, {1,2}
        let adj = vec![0b010, 0b101, 0b010];
        let mut out = Vec::new();
        let mut done = 0u128;
        for v in degeneracy_order(&adj) {
            bron_kerbosch(&adj, 1 << v, adj[v] & !done, adj[v] & done, &mut out);
            done |= 1 << v;
        }
        out.sort();
        assert_eq!(out, vec![0b011, 0b110]);
    }
}
