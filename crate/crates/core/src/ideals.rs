//! Ideals of the positive root poset: principal and abelian ideals, facet ideals of the
//! root polytope, their nilradical types and order involutions.

use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dynkin;
use crate::error::{Error, Result};
use crate::geometry::linalg::coords_in_basis;
use crate::geometry::{dot, Rational};
use crate::rootsys::{add, neg, std_leq, unit, Component, Family, RootSystem, Subsystem};

/// A set of positive roots, stored as sorted indices into the ambient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootIdeal {
    members: Vec<usize>,
}

impl RootIdeal {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        RootIdeal { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn coeffs(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.members.iter().map(|&i| rs.coeffs(i).to_vec()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealFlags {
    pub ad_nilpotent: bool,
    pub abelian: bool,
    pub nilradical: bool,
}

/// `(β^≤)`, the positive roots above `β`.
pub fn principal_ideal(rs: &RootSystem, beta: &[i64]) -> Result<RootIdeal> {
    let Some(b) = rs.index_of(beta) else {
        return Err(Error::NotPositive(beta.to_vec()));
    };
    Ok(up_set(rs, b))
}

fn up_set(rs: &RootSystem, b: usize) -> RootIdeal {
    let lo = rs.coeffs(b);
    RootIdeal::new((0..rs.num_positive()).filter(|&g| std_leq(lo, rs.coeffs(g))).collect())
}

fn sum_free(rs: &RootSystem, members: &[usize]) -> bool {
    members.iter().all(|&a| members.iter().all(|&b| !rs.is_root(&add(rs.coeffs(a), rs.coeffs(b)))))
}

pub fn classify_ideal(rs: &RootSystem, members: &[usize]) -> IdealFlags {
    let set = RootIdeal::new(members.to_vec());
    let ad_nilpotent = set
        .members()
        .iter()
        .all(|&b| (0..rs.num_positive()).all(|g| !std_leq(rs.coeffs(b), rs.coeffs(g)) || set.contains(g)));
    let abelian = ad_nilpotent && sum_free(rs, set.members());
    let nilradical = set.is_empty()
        || (0..rs.rank())
            .any(|a| rs.marks()[a] == 1 && up_set(rs, rs.simple_index(a)) == set);
    IdealFlags { ad_nilpotent, abelian, nilradical }
}

const ENUMERATION_RANK_GUARD: usize = 7;

/// Abelian ideals by include/exclude over roots in decreasing height.
pub fn enumerate_abelian_ideals(rs: &RootSystem) -> Result<Vec<RootIdeal>> {
    if rs.rank() > ENUMERATION_RANK_GUARD {
        return Err(Error::RankGuardExceeded { rank: rs.rank(), guard: ENUMERATION_RANK_GUARD });
    }
    let n = rs.num_positive();
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|b| {
            (0..rs.rank())
                .filter_map(|i| rs.index_of(&add(rs.coeffs(b), &unit(rs.rank(), i))))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        rs: &RootSystem,
        pos: usize,
        covers: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        stack: &mut Vec<usize>,
        out: &mut Vec<RootIdeal>,
    ) {
        if pos == 0 {
            out.push(RootIdeal::new(stack.clone()));
            return;
        }
        let b = pos - 1;
        rec(rs, b, covers, chosen, stack, out);
        let closed = covers[b].iter().all(|&c| chosen[c]);
        let free = stack.iter().all(|&g| !rs.is_root(&add(rs.coeffs(b), rs.coeffs(g))));
        if closed && free {
            chosen[b] = true;
            stack.push(b);
            rec(rs, b, covers, chosen, stack, out);
            stack.pop();
            chosen[b] = false;
        }
    }
    rec(rs, n, &covers, &mut chosen, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

/// Abelian ideals through their antichains of minimal elements.
pub fn enumerate_abelian_ideals_by_antichains(rs: &RootSystem) -> Result<Vec<RootIdeal>> {
    if rs.rank() > ENUMERATION_RANK_GUARD {
        return Err(Error::RankGuardExceeded { rank: rs.rank(), guard: ENUMERATION_RANK_GUARD });
    }
    let n = rs.num_positive();
    let mut out = Vec::new();
    let mut antichain: Vec<usize> = Vec::new();
    fn closure(rs: &RootSystem, antichain: &[usize]) -> RootIdeal {
        RootIdeal::new(
            (0..rs.num_positive())
                .filter(|&g| antichain.iter().any(|&a| std_leq(rs.coeffs(a), rs.coeffs(g))))
                .collect(),
        )
    }
    fn rec(rs: &RootSystem, start: usize, n: usize, antichain: &mut Vec<usize>, out: &mut Vec<RootIdeal>) {
        for x in start..n {
            let comparable = antichain
                .iter()
                .any(|&a| std_leq(rs.coeffs(a), rs.coeffs(x)) || std_leq(rs.coeffs(x), rs.coeffs(a)));
            if comparable {
                continue;
            }
            antichain.push(x);
            let ideal = closure(rs, antichain);
            if sum_free(rs, ideal.members()) {
                out.push(ideal);
                rec(rs, x + 1, n, antichain, out);
            }
            antichain.pop();
        }
    }
    out.push(RootIdeal::default());
    rec(rs, 0, n, &mut antichain, &mut out);
    out.sort();
    Ok(out)
}

/// Nilradical type `X_{n,k}`, with `k` 1-based in Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NilradicalType {
    pub family: Family,
    pub rank: usize,
    pub k: usize,
}

impl NilradicalType {
    /// Equal up to diagram automorphisms.
    pub fn equivalent(&self, other: &NilradicalType) -> bool {
        self.family == other.family
            && self.rank == other.rank
            && dynkin::automorphism_orbit(self.family, self.rank, self.k).contains(&other.k)
    }

    /// Representative with the smallest `k`.
    pub fn canonical(&self) -> NilradicalType {
        let k = dynkin::automorphism_orbit(self.family, self.rank, self.k)[0];
        NilradicalType { k, ..*self }
    }
}

impl fmt::Display for NilradicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.family, self.rank, self.k)
    }
}

impl Serialize for NilradicalType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NilradicalType", 3)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

/// The roots on the facet `F_α` of the root polytope.
#[derive(Clone, Debug)]
pub struct FacetIdeal {
    alpha: usize,
    mark: i64,
    ideal: RootIdeal,
    mu: usize,
    equal_rank: Subsystem,
    nil_type: NilradicalType,
    proof_type: NilradicalType,
    local_simple: Vec<Vec<i64>>,
}

impl FacetIdeal {
    /// Simple root index, 0-based.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn mark(&self) -> i64 {
        self.mark
    }

    pub fn ideal(&self) -> &RootIdeal {
        &self.ideal
    }

    pub fn members(&self) -> &[usize] {
        self.ideal.members()
    }

    /// Minimum of the ideal.
    pub fn mu(&self) -> usize {
        self.mu
    }

    /// `Φ((Π∖{α}) ∪ {-θ})`, with simple system `{μ} ∪ Π∖{α}`.
    pub fn equal_rank(&self) -> &Subsystem {
        &self.equal_rank
    }

    /// Type with the smallest `k` among diagram-automorphic labelings.
    pub fn nil_type(&self) -> NilradicalType {
        self.nil_type
    }

    /// Type in the labeling used by `local_simple`: for `A_{n,k}` the larger `k`, for
    /// `D` the labeling with `k = 1` when available and `k = n` otherwise, `E_{6,6}`.
    pub fn proof_type(&self) -> NilradicalType {
        self.proof_type
    }

    /// Simple roots `α'_1 .. α'_n` of the equal-rank subsystem in Bourbaki order for
    /// `proof_type`; `α'_k = μ`.
    pub fn local_simple(&self) -> &[Vec<i64>] {
        &self.local_simple
    }
}

impl Serialize for FacetIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Needs the root system for coefficients; see `facet_json`.
        let mut st = s.serialize_struct("FacetIdeal", 3)?;
        st.serialize_field("alpha", &(self.alpha + 1))?;
        st.serialize_field("members", &self.ideal.members)?;
        st.serialize_field("type", &self.nil_type)?;
        st.end()
    }
}

/// JSON for a facet ideal with coefficient vectors.
pub fn facet_json(rs: &RootSystem, f: &FacetIdeal) -> serde_json::Value {
    serde_json::json!({
        "alpha": f.alpha + 1,
        "mu": rs.coeffs(f.mu),
        "members": f.ideal.coeffs(rs),
        "type": f.nil_type,
    })
}

fn cartan_of(rs: &RootSystem, roots: &[Vec<i64>]) -> Vec<Vec<i64>> {
    roots
        .iter()
        .map(|a| roots.iter().map(|b| 2 * rs.inner(a, b) / rs.len2(a)).collect())
        .collect()
}

fn preferred_k(family: Family, rank: usize, orbit: &[usize]) -> usize {
    match family {
        Family::A => *orbit.iter().max().unwrap(),
        Family::D if orbit.contains(&1) => 1,
        Family::D => rank,
        Family::E if rank == 6 => 6,
        _ => orbit[0],
    }
}

fn unique_min(rs: &RootSystem, members: &[usize]) -> Result<usize> {
    let mins: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&b| !members.iter().any(|&g| g != b && std_leq(rs.coeffs(g), rs.coeffs(b))))
        .collect();
    match mins.as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::CertificationFailure(format!("ideal has {} minimal elements", mins.len()))),
    }
}

fn facet_ideal_at(rs: &RootSystem, a: usize) -> Result<FacetIdeal> {
    let n = rs.rank();
    let mark = rs.marks()[a];
    let members: Vec<usize> = (0..rs.num_positive()).filter(|&b| rs.coeffs(b)[a] == mark).collect();
    let ideal = RootIdeal::new(members);
    let mu = unique_min(rs, ideal.members())?;
    if up_set(rs, mu) != ideal {
        return Err(Error::CertificationFailure("facet ideal is not principal".into()));
    }
    if !classify_ideal(rs, ideal.members()).abelian {
        return Err(Error::CertificationFailure("facet ideal is not abelian".into()));
    }
    let others: Vec<usize> = (0..n).filter(|&j| j != a).collect();
    let mut generators: Vec<Vec<i64>> = others.iter().map(|&j| neg(&unit(n, j))).collect();
    generators.push(rs.theta().coeffs().to_vec());
    let equal_rank = rs.subsystem_of(&generators)?;
    if equal_rank.components.len() != 1 || equal_rank.rank() != n {
        return Err(Error::CertificationFailure("equal-rank subsystem is not irreducible of full rank".into()));
    }
    // Ψ⁺ minus the roots with c_α = 0 must be the ideal.
    let outside: Vec<usize> = equal_rank.positive.iter().copied().filter(|&b| rs.coeffs(b)[a] != 0).collect();
    if outside != ideal.members() {
        return Err(Error::CertificationFailure("Ψ⁺ ∖ Φ(Π∖{α}) differs from the facet ideal".into()));
    }
    let mut simple: Vec<Vec<i64>> = others.iter().map(|&j| unit(n, j)).collect();
    simple.push(rs.coeffs(mu).to_vec());
    let mut expected: Vec<Vec<i64>> = equal_rank.simple.iter().map(|&i| rs.coeffs(i).to_vec()).collect();
    let mut got = simple.clone();
    expected.sort();
    got.sort();
    if expected != got {
        return Err(Error::CertificationFailure("simple system of Ψ⁺ is not {μ} ∪ Π∖{α}".into()));
    }
    let mu_node = n - 1;
    let (family, rank, isos) = dynkin::identify(&cartan_of(rs, &simple))
        .ok_or_else(|| Error::UnknownType("equal-rank subsystem".into()))?;
    let k = isos[0].iter().position(|&p| p == mu_node).unwrap() + 1;
    let orbit = dynkin::automorphism_orbit(family, rank, k);
    let nil_type = NilradicalType { family, rank, k: orbit[0] };

    // The same type read off the extended diagram with α removed, locating -θ.
    let mut ext: Vec<Vec<i64>> = others.iter().map(|&j| unit(n, j)).collect();
    ext.push(neg(rs.theta().coeffs()));
    let (f2, r2, isos2) = dynkin::identify(&cartan_of(rs, &ext))
        .ok_or_else(|| Error::UnknownType("extended diagram minus α".into()))?;
    let k2 = isos2[0].iter().position(|&p| p == mu_node).unwrap() + 1;
    if !nil_type.equivalent(&NilradicalType { family: f2, rank: r2, k: k2 }) {
        return Err(Error::CertificationFailure("-θ position disagrees with μ position".into()));
    }

    let pk = preferred_k(family, rank, &orbit);
    let labeling = isos
        .iter()
        .find(|p| p[pk - 1] == mu_node)
        .expect("preferred k lies in the automorphism orbit");
    let local_simple = labeling.iter().map(|&p| simple[p].clone()).collect();
    Ok(FacetIdeal {
        alpha: a,
        mark,
        ideal,
        mu,
        equal_rank,
        nil_type,
        proof_type: NilradicalType { family, rank, k: pk },
        local_simple,
    })
}

/// Facet ideals, one per facet-defining simple root, in index order.
pub fn facet_ideals(rs: &RootSystem) -> Result<Vec<FacetIdeal>> {
    rs.extended_diagram().facet_roots.iter().map(|&a| facet_ideal_at(rs, a)).collect()
}

/// Facet ideal at simple root `alpha` (0-based).
pub fn facet_ideal(rs: &RootSystem, alpha: usize) -> Result<FacetIdeal> {
    if alpha >= rs.rank() {
        return Err(Error::BadSimpleIndex(alpha));
    }
    if !rs.extended_diagram().facet_roots.contains(&alpha) {
        return Err(Error::UnknownFacet(alpha + 1));
    }
    facet_ideal_at(rs, alpha)
}

/// Roots on the standard parabolic face `F_S`.
#[derive(Clone, Debug)]
pub struct FaceData {
    pub s: Vec<usize>,
    pub ideal: RootIdeal,
    pub mu: usize,
    pub dim: usize,
}

pub fn face_ideal(rs: &RootSystem, s: &[usize]) -> Result<FaceData> {
    if s.is_empty() {
        return Err(Error::EmptyS);
    }
    let n = rs.rank();
    if let Some(&bad) = s.iter().find(|&&a| a >= n) {
        return Err(Error::BadSimpleIndex(bad));
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let m = rs.marks();
    let members: Vec<usize> =
        (0..rs.num_positive()).filter(|&b| s.iter().all(|&a| rs.coeffs(b)[a] == m[a])).collect();
    let ideal = RootIdeal::new(members);
    let mu = unique_min(rs, ideal.members())?;
    if up_set(rs, mu) != ideal {
        return Err(Error::CertificationFailure("face ideal is not principal".into()));
    }
    // Component of θ in the diagram on {θ} ∪ -(Π∖S).
    let mut nodes: Vec<Vec<i64>> = vec![rs.theta().coeffs().to_vec()];
    nodes.extend((0..n).filter(|j| !s.contains(j)).map(|j| neg(&unit(n, j))));
    let mut seen = vec![false; nodes.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for y in 0..nodes.len() {
            if !seen[y] && rs.inner(&nodes[x], &nodes[y]) != 0 {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let dim = seen.iter().filter(|&&v| v).count() - 1;
    Ok(FaceData { s, ideal, mu, dim })
}

/// The longest element `w_{0, Π∖S}` restricted to the face ideal of `S`.
#[derive(Clone, Debug)]
pub struct InvolutionMap {
    pub face: FaceData,
    /// Integer matrix acting on coefficient column vectors.
    pub matrix: Vec<Vec<i64>>,
    map: HashMap<usize, usize>,
}

impl InvolutionMap {
    pub fn apply(&self, i: usize) -> usize {
        self.map[&i]
    }

    pub fn apply_vec(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// Pulls a functional back along the map: `ν ↦ ν ∘ w`.
    pub fn pull_functional(&self, nu: &[Rational]) -> Vec<Rational> {
        let n = self.matrix.len();
        (0..n)
            .map(|j| (0..n).map(|i| &nu[i] * Rational::from_integer(self.matrix[i][j].into())).sum())
            .collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.map.iter().map(|(&a, &b)| (a, b)).collect();
        v.sort_unstable();
        v
    }
}

pub fn order_involution(rs: &RootSystem, s: &[usize]) -> Result<InvolutionMap> {
    let face = face_ideal(rs, s)?;
    let n = rs.rank();
    let j_set: Vec<usize> = (0..n).filter(|j| !face.s.contains(j)).collect();
    let mut w: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let column = |w: &Vec<Vec<i64>>, j: usize| -> Vec<i64> { (0..n).map(|i| w[i][j]).collect() };
    loop {
        let next = j_set.iter().copied().find(|&j| column(&w, j).iter().all(|&c| c >= 0));
        let Some(j) = next else { break };
        // w <- w s_j, where s_j = I - e_j (row j of the Cartan matrix).
        let wj = column(&w, j);
        for i in 0..n {
            for k in 0..n {
                w[i][k] -= wj[i] * rs.cartan()[j][k];
            }
        }
    }
    let mut map = HashMap::new();
    for &b in face.ideal.members() {
        let img: Vec<i64> = w.iter().map(|row| row.iter().zip(rs.coeffs(b)).map(|(a, c)| a * c).sum()).collect();
        let i = rs
            .index_of(&img)
            .filter(|&i| face.ideal.contains(i))
            .ok_or_else(|| Error::CertificationFailure("w maps the face ideal outside itself".into()))?;
        map.insert(b, i);
    }
    let inv = InvolutionMap { face, matrix: w, map };
    let members = inv.face.ideal.members();
    for &b in members {
        if inv.apply(inv.apply(b)) != b {
            return Err(Error::CertificationFailure("order involution is not involutive".into()));
        }
        for &c in members {
            let before = std_leq(rs.coeffs(b), rs.coeffs(c));
            let after = std_leq(rs.coeffs(inv.apply(c)), rs.coeffs(inv.apply(b)));
            if before != after {
                return Err(Error::CertificationFailure("order involution is not order-reversing".into()));
            }
        }
    }
    if inv.apply(rs.theta_index()) != inv.face.mu {
        return Err(Error::CertificationFailure("order involution does not exchange θ and μ".into()));
    }
    Ok(inv)
}

/// `I ∩ Ψ_i` for the irreducible components `Ψ_i` of `Ψ ∩ H`, where `Ψ` is the
/// equal-rank subsystem and `H` the common kernel of `normals` (functionals on
/// coefficient vectors). Each nonempty piece is certified to be an abelian nilradical
/// of its component.
pub fn intersect_with_subspace(
    rs: &RootSystem,
    facet: &FacetIdeal,
    normals: &[Vec<Rational>],
) -> Result<Vec<(Component, RootIdeal)>> {
    let in_h: Vec<Vec<i64>> = facet
        .equal_rank
        .positive
        .iter()
        .copied()
        .filter(|&b| normals.iter().all(|nu| dot(nu, rs.coeffs(b)) == Rational::from_integer(0.into())))
        .map(|b| rs.coeffs(b).to_vec())
        .collect();
    let sub = rs.subsystem_of(&in_h)?;
    let mut out = Vec::new();
    for comp in sub.components {
        let piece: Vec<usize> = comp.positive.iter().copied().filter(|&b| facet.ideal.contains(b)).collect();
        if !piece.is_empty() {
            let coords: Vec<Vec<i64>> = comp
                .positive
                .iter()
                .map(|&b| {
                    coords_in_basis(&comp.simple, rs.coeffs(b))
                        .expect("component root lies in its span")
                        .iter()
                        .map(|q| q.to_integer().try_into().expect("small coefficient"))
                        .collect()
                })
                .collect();
            let theta_pos = (0..comp.positive.len())
                .max_by_key(|&i| rs.root(comp.positive[i]).height())
                .unwrap();
            let local_marks = &coords[theta_pos];
            let ok = (0..comp.rank).any(|s| {
                if local_marks[s] != 1 {
                    return false;
                }
                let gen: Vec<usize> =
                    (0..comp.positive.len()).filter(|&i| coords[i][s] == 1).map(|i| comp.positive[i]).collect();
                let mut gen = gen;
                gen.sort_unstable();
                gen == piece
            });
            if !ok {
                return Err(Error::CertificationFailure(
                    "I ∩ Ψ_i is not an abelian nilradical of its component".into(),
                ));
            }
        }
        out.push((comp, RootIdeal::new(piece)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat_vec;

    #[test]
    fn a3_middle_facet() {
        let rs = RootSystem::parse("A3").unwrap();
        let f = facet_ideal(&rs, 1).unwrap();
        assert_eq!(rs.coeffs(f.mu()), &[0, 1, 0]);
        assert_eq!(f.ideal().len(), 4);
        assert_eq!(f.nil_type().to_string(), "A_{3,2}");
    }

    #[test]
    fn subspace_components_are_nilradicals() {
        let rs = RootSystem::parse("A3").unwrap();
        let f = facet_ideal(&rs, 1).unwrap();
        // ω̌2 - ω̌1 - ω̌3 as a functional on coefficients.
        let parts = intersect_with_subspace(&rs, &f, &[rat_vec(&[-1, 1, -1])]).unwrap();
        assert!(parts.iter().any(|(_, i)| !i.is_empty()));
        let rs = RootSystem::parse("C3").unwrap();
        let f = facet_ideal(&rs, 2).unwrap();
        let parts = intersect_with_subspace(&rs, &f, &[rat_vec(&[0, -1, 2])]).unwrap();
        assert!(parts.iter().any(|(_, i)| !i.is_empty()));
    }
}
