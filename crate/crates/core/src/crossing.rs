//! Crossing pairs inside abelian ideals and the relations `≲` and `∼` they define.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideals::{classify_ideal, RootIdeal};
use crate::rootsys::{add, std_leq, std_lt, sub, RootSystem};

pub mod laws;

/// `β1 + β2 = γ1 + γ2` with the two pairs disjoint. Pairs are stored with the smaller
/// index first; one of them may repeat a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CrossingRelation {
    pub pair1: (usize, usize),
    pub pair2: (usize, usize),
}

fn require_abelian(rs: &RootSystem, ideal: &RootIdeal) -> Result<()> {
    if classify_ideal(rs, ideal.members()).abelian {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

/// Every crossing relation among members of `ideal`, each reported once.
pub fn crossing_relations(rs: &RootSystem, ideal: &RootIdeal) -> Result<Vec<CrossingRelation>> {
    require_abelian(rs, ideal)?;
    let m = ideal.members();
    let mut by_sum: std::collections::BTreeMap<Vec<i64>, Vec<(usize, usize)>> = Default::default();
    for (p, &a) in m.iter().enumerate() {
        for &b in &m[p..] {
            by_sum.entry(add(rs.coeffs(a), rs.coeffs(b))).or_default().push((a, b));
        }
    }
    let mut out = Vec::new();
    for pairs in by_sum.values() {
        for (i, &p) in pairs.iter().enumerate() {
            for &q in &pairs[i + 1..] {
                out.push(CrossingRelation { pair1: p, pair2: q });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Unrelated,
    /// `β1 ≲ β2`, with the least middle pair.
    Lesssim((usize, usize)),
    /// `β2 ≲ β1`, with the least middle pair.
    Gtrsim((usize, usize)),
}

/// Classifies `(β1, β2)` under `≲`. The answer is cross-checked against the length
/// criterion for root differences; a disagreement is reported as an error.
pub fn relation(rs: &RootSystem, ideal: &RootIdeal, b1: usize, b2: usize) -> Result<Relation> {
    require_abelian(rs, ideal)?;
    if !ideal.contains(b1) || !ideal.contains(b2) {
        return Err(Error::NotMembers);
    }
    let (lo, hi, up) = if std_lt(rs.coeffs(b1), rs.coeffs(b2)) { (b1, b2, true) } else { (b2, b1, false) };
    let Some(&w) = rs.middle_pairs(lo, hi).first() else {
        if std_lt(rs.coeffs(lo), rs.coeffs(hi)) && !rs.is_root(&sub(rs.coeffs(hi), rs.coeffs(lo))) {
            return Err(Error::CertificationFailure(format!(
                "roots {lo} < {hi} with non-root difference but no middle pair"
            )));
        }
        return Ok(Relation::Unrelated);
    };
    let diff_is_root = rs.is_root(&sub(rs.coeffs(hi), rs.coeffs(lo)));
    if diff_is_root == difference_should_vanish(rs, lo, hi) {
        return Err(Error::CertificationFailure(format!("difference criterion fails for {lo} ≲ {hi}")));
    }
    Ok(if up { Relation::Lesssim(w) } else { Relation::Gtrsim(w) })
}

/// For `β1 ≲ β2`: whether `β2 − β1` should fail to be a root, i.e. one of them is long,
/// or both are short with an all-short middle pair.
pub(crate) fn difference_should_vanish(rs: &RootSystem, lo: usize, hi: usize) -> bool {
    let (a, b) = (rs.coeffs(lo), rs.coeffs(hi));
    if rs.is_long(a) || rs.is_long(b) {
        return true;
    }
    rs.middle_pairs(lo, hi)
        .iter()
        .any(|&(g1, g2)| !rs.is_long(rs.coeffs(g1)) && !rs.is_long(rs.coeffs(g2)))
}

/// `lo ≲ hi` with its least middle pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimEdge {
    pub lo: usize,
    pub hi: usize,
    pub witness: (usize, usize),
}

/// The `≲` relation on an abelian ideal. Reduced sets are its independent sets.
#[derive(Clone, Debug)]
pub struct SimGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<SimEdge>,
    position: Vec<Option<usize>>,
    lesssim: Vec<Vec<bool>>,
}

impl SimGraph {
    fn pos(&self, i: usize) -> Option<usize> {
        self.position.get(i).copied().flatten()
    }

    /// `a ≲ b`; false if either is not a node.
    pub fn lesssim(&self, a: usize, b: usize) -> bool {
        match (self.pos(a), self.pos(b)) {
            (Some(p), Some(q)) => self.lesssim[p][q],
            _ => false,
        }
    }

    pub fn sim(&self, a: usize, b: usize) -> bool {
        self.lesssim(a, b) || self.lesssim(b, a)
    }

    /// `red(β)` inside the ideal.
    pub fn red(&self, beta: usize) -> Vec<usize> {
        self.nodes.iter().copied().filter(|&g| g != beta && !self.sim(beta, g)).collect()
    }

    pub fn is_reduced(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.sim(a, b)))
    }
}

impl Serialize for SimGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Edge {
            pair: [usize; 2],
            witness: [usize; 2],
        }
        let edges: Vec<Edge> =
            self.edges.iter().map(|e| Edge { pair: [e.lo, e.hi], witness: [e.witness.0, e.witness.1] }).collect();
        let mut st = s.serialize_struct("SimGraph", 2)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

pub fn sim_graph(rs: &RootSystem, ideal: &RootIdeal) -> Result<SimGraph> {
    require_abelian(rs, ideal)?;
    let nodes = ideal.members().to_vec();
    let mut position = vec![None; rs.num_positive()];
    for (p, &i) in nodes.iter().enumerate() {
        position[i] = Some(p);
    }
    let k = nodes.len();
    let mut lesssim = vec![vec![false; k]; k];
    let mut edges = Vec::new();
    for p in 0..k {
        for q in 0..k {
            if let Some(&w) = rs.middle_pairs(nodes[p], nodes[q]).first() {
                lesssim[p][q] = true;
                edges.push(SimEdge { lo: nodes[p], hi: nodes[q], witness: w });
            }
        }
    }
    edges.sort_by_key(|e| (e.lo, e.hi));
    Ok(SimGraph { nodes, edges, position, lesssim })
}

/// `red(β)` over all of `Φ⁺`.
pub fn red(rs: &RootSystem, beta: usize) -> Vec<usize> {
    (0..rs.num_positive())
        .filter(|&g| g != beta && rs.middle_pairs(beta, g).is_empty() && rs.middle_pairs(g, beta).is_empty())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimClosure {
    pub closed: bool,
    /// A pair `β1 ≲ β2` in the set none of whose middle pairs lies in the set.
    pub counterexample: Option<(usize, usize)>,
}

impl Serialize for SimClosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SimClosure", 2)?;
        st.serialize_field("closed", &self.closed)?;
        st.serialize_field("counterexample", &self.counterexample)?;
        st.end()
    }
}

/// Whether every `β1 ≲ β2` inside `set` has a middle pair inside `set`.
pub fn is_sim_closed(rs: &RootSystem, set: &[usize]) -> SimClosure {
    let inside = |i: usize| set.contains(&i);
    for &a in set {
        for &b in set {
            let pairs = rs.middle_pairs(a, b);
            if !pairs.is_empty() && !pairs.iter().any(|&(g1, g2)| inside(g1) && inside(g2)) {
                return SimClosure { closed: false, counterexample: Some((a, b)) };
            }
        }
    }
    SimClosure { closed: true, counterexample: None }
}

/// Whether `set` contains every positive root between two of its comparable members.
pub fn is_saturated(rs: &RootSystem, set: &[usize]) -> bool {
    for &a in set {
        for &b in set {
            let (lo, hi) = (rs.coeffs(a), rs.coeffs(b));
            if !std_lt(lo, hi) {
                continue;
            }
            for g in 0..rs.num_positive() {
                let c = rs.coeffs(g);
                if std_leq(lo, c) && std_leq(c, hi) && !set.contains(&g) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::facet_ideals;

    #[test]
    fn a3_interval_without_its_witness_is_not_closed() {
        let rs = RootSystem::parse("A3").unwrap();
        let a2 = rs.index_of(&[0, 1, 0]).unwrap();
        let t = rs.theta_index();
        let c = is_sim_closed(&rs, &[a2, t]);
        assert!(!c.closed);
        assert_eq!(c.counterexample, Some((a2, t)));
        assert!(!is_saturated(&rs, &[a2, t]));
        assert!(is_sim_closed(&rs, &[t]).closed);
    }

    #[test]
    fn small_graphs() {
        let rs = RootSystem::parse("A2").unwrap();
        let f = &facet_ideals(&rs).unwrap()[0];
        assert!(sim_graph(&rs, f.ideal()).unwrap().edges.is_empty());
        assert!(crossing_relations(&rs, f.ideal()).unwrap().is_empty());
        let single = RootIdeal::new(vec![rs.theta_index()]);
        assert!(sim_graph(&rs, &single).unwrap().edges.is_empty());

        let rs = RootSystem::parse("A3").unwrap();
        let f = &facet_ideals(&rs).unwrap()[1];
        let g = sim_graph(&rs, f.ideal()).unwrap();
        let a12 = rs.index_of(&[1, 1, 0]).unwrap();
        let a23 = rs.index_of(&[0, 1, 1]).unwrap();
        assert_eq!(relation(&rs, f.ideal(), a12, a23).unwrap(), Relation::Unrelated);
        assert_eq!(g.red(a12), vec![rs.index_of(&[0, 1, 0]).unwrap(), a23, rs.theta_index()]);
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["edges"][0]["pair"][1], rs.theta_index());
    }
}
