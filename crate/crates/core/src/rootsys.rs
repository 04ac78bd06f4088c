//! Irreducible root systems in Bourbaki numbering.
//!
//! Positive roots are generated by height from root strings and stored sorted by height,
//! then by coefficient vector in decreasing lexicographic order, so that `α_1` comes
//! first among the simple roots.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::dynkin;
use crate::error::{Error, Result};
use crate::geometry::linalg::RationalMatrix;
use crate::geometry::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.letter() == c.to_ascii_uppercase())
    }

    pub fn rank_is_legal(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    pub fn simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.rank_is_legal(rank) {
            return Err(Error::IllegalRank { family: family.letter(), rank });
        }
        Ok(RootSystemSpec { family, rank })
    }

    /// Every legal system up to the given rank, in family order.
    pub fn all_up_to(max_rank: usize) -> Vec<RootSystemSpec> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if family.rank_is_legal(rank) {
                    out.push(RootSystemSpec { family, rank });
                }
            }
        }
        out
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(|| Error::BadSystemName(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadSystemName(s.into()))?;
        RootSystemSpec::new(family, rank)
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root written over the simple roots, with its squared length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    coeffs: Vec<i64>,
    len2: i64,
}

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len2(&self) -> i64 {
        self.len2
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn negated(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect(), len2: self.len2 }
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// `a <= b` coefficientwise.
pub fn std_leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn std_lt(a: &[i64], b: &[i64]) -> bool {
    a != b && std_leq(a, b)
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i64>>,
    form: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    theta: usize,
    marks: Vec<i64>,
    long_len2: i64,
    coweights: Vec<Vec<Rational>>,
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::new(RootSystemSpec::new(family, rank)?))
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }

    pub fn new(spec: RootSystemSpec) -> Self {
        let n = spec.rank;
        let form = dynkin::gram(spec.family, n);
        let cartan = dynkin::cartan_from_gram(&form);
        let mut found: HashSet<Vec<i64>> = HashSet::new();
        let mut all: Vec<Vec<i64>> = Vec::new();
        let mut level: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        while !level.is_empty() {
            for r in &level {
                found.insert(r.clone());
                all.push(r.clone());
            }
            let mut next = BTreeSet::new();
            for beta in &level {
                for i in 0..n {
                    // p = depth of the α_i-string below β
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if found.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            level = next.into_iter().collect();
        }
        all.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive: Vec<Root> = all
            .into_iter()
            .map(|c| {
                let len2 = quad(&form, &c, &c);
                Root { coeffs: c, len2 }
            })
            .collect();
        let index = positive.iter().enumerate().map(|(i, r)| (r.coeffs.clone(), i)).collect();
        let theta = positive.len() - 1;
        let marks = positive[theta].coeffs.clone();
        let long_len2 = (0..n).map(|i| form[i][i]).max().unwrap_or(2);
        let inv = RationalMatrix::from_int_rows(&form).inverse().expect("form is nondegenerate");
        let coweights = (0..n).map(|i| (0..n).map(|k| inv.get(k, i).clone()).collect()).collect();
        RootSystem { spec, cartan, form, positive, index, theta, marks, long_len2, coweights }
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// `cartan[i][j] = 2(α_i, α_j) / (α_i, α_i)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrized form on simple roots, short roots of squared length 2.
    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn coeffs(&self, i: usize) -> &[i64] {
        &self.positive[i].coeffs
    }

    pub fn theta(&self) -> &Root {
        &self.positive[self.theta]
    }

    pub fn theta_index(&self) -> usize {
        self.theta
    }

    /// Coefficients of the highest root.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Fundamental coweights written over the simple roots.
    pub fn coweights(&self) -> &[Vec<Rational>] {
        &self.coweights
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive[self.simple_index(i)]
    }

    /// Index of `α_i` in the positive root list.
    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&unit(self.rank(), i)]
    }

    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.index.contains_key(coeffs) || self.index.contains_key(&neg(coeffs))
    }

    pub fn make_root(&self, coeffs: &[i64]) -> Result<Root> {
        if coeffs.len() != self.rank() || !self.is_root(coeffs) {
            return Err(Error::NotARoot(coeffs.to_vec()));
        }
        Ok(Root { coeffs: coeffs.to_vec(), len2: self.len2(coeffs) })
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        quad(&self.form, a, b)
    }

    pub fn len2(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    pub fn long_len2(&self) -> i64 {
        self.long_len2
    }

    pub fn is_long(&self, a: &[i64]) -> bool {
        self.len2(a) == self.long_len2
    }

    /// `⟨β, γ∨⟩ = 2(β, γ) / (γ, γ)`.
    pub fn pairing(&self, beta: &[i64], gamma: &[i64]) -> Result<i64> {
        for r in [beta, gamma] {
            if !self.is_root(r) {
                return Err(Error::NotARoot(r.to_vec()));
            }
        }
        Ok(self.pairing_raw(beta, gamma))
    }

    fn pairing_raw(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        2 * self.inner(beta, gamma) / self.len2(gamma)
    }

    /// `s_β(x)`.
    pub fn reflect(&self, beta: &[i64], x: &[i64]) -> Result<Root> {
        let p = self.pairing(x, beta)?;
        let coeffs: Vec<i64> = x.iter().zip(beta).map(|(a, b)| a - p * b).collect();
        Ok(Root { len2: self.len2(&coeffs), coeffs })
    }

    /// `s_i(x)` for any vector of simple-root coefficients.
    pub fn simple_reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let p: i64 = (0..self.rank()).map(|j| x[j] * self.cartan[i][j]).sum();
        let mut y = x.to_vec();
        y[i] -= p;
        y
    }

    /// Coroot `β∨` as a functional on coefficient vectors: entry `j` is `⟨α_j, β∨⟩`.
    pub fn coroot_functional(&self, beta: &[i64]) -> Vec<i64> {
        let l = self.len2(beta);
        (0..self.rank()).map(|j| 2 * self.inner(&unit(self.rank(), j), beta) / l).collect()
    }

    /// Positive and negative roots.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.positive.iter().map(|r| r.coeffs.clone()).collect();
        v.extend(self.positive.iter().map(|r| neg(&r.coeffs)));
        v
    }

    /// Middle pairs `{γ1, γ2}` with `β1 < γ_i < β2` and `γ1 + γ2 = β1 + β2`, as sorted
    /// index pairs in increasing order.
    pub fn middle_pairs(&self, b1: usize, b2: usize) -> Vec<(usize, usize)> {
        let lo = self.coeffs(b1);
        let hi = self.coeffs(b2);
        let mut out = Vec::new();
        if !std_lt(lo, hi) {
            return out;
        }
        let sum = add(lo, hi);
        for g1 in 0..self.num_positive() {
            let c = self.coeffs(g1);
            if !(std_lt(lo, c) && std_lt(c, hi)) {
                continue;
            }
            if let Some(g2) = self.index_of(&sub(&sum, c)) {
                if g1 <= g2 && std_lt(lo, self.coeffs(g2)) && std_lt(self.coeffs(g2), hi) {
                    out.push((g1, g2));
                }
            }
        }
        out
    }

    /// `Φ(S)`: the closure of `S` under the reflections it generates.
    pub fn subsystem_of(&self, generators: &[Vec<i64>]) -> Result<Subsystem> {
        for g in generators {
            if g.len() != self.rank() || !self.is_root(g) {
                return Err(Error::NotARoot(g.clone()));
            }
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for g in generators {
            for r in [g.clone(), neg(g)] {
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = self.reflect(g, &x)?.coeffs;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut positive: Vec<usize> = seen.iter().filter_map(|r| self.index_of(r)).collect();
        positive.sort_unstable();
        Ok(Subsystem::from_positive(self, positive))
    }

    /// Extended diagram on `Π ∪ {-θ}`.
    pub fn extended_diagram(&self) -> ExtendedDiagram {
        let n = self.rank();
        let mut nodes: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        nodes.push(neg(self.theta().coeffs()));
        let mut edges = Vec::new();
        for a in 0..=n {
            for b in a + 1..=n {
                let bond = self.pairing_raw(&nodes[a], &nodes[b]) * self.pairing_raw(&nodes[b], &nodes[a]);
                if bond != 0 {
                    edges.push(DiagramEdge { a, b, bond });
                }
            }
        }
        let facet_roots = (0..n)
            .filter(|&removed| {
                let keep: Vec<usize> = (0..=n).filter(|&v| v != removed).collect();
                connected(&keep, |x, y| self.inner(&nodes[x], &nodes[y]) != 0)
            })
            .collect();
        ExtendedDiagram { nodes, edges, facet_roots }
    }
}

fn quad(form: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            s += x * form[i][j] * y;
        }
    }
    s
}

/// Whether the vertices are connected under `adj`. The empty set counts as connected.
pub fn connected(vertices: &[usize], adj: impl Fn(usize, usize) -> bool) -> bool {
    if vertices.is_empty() {
        return true;
    }
    let mut seen = vec![false; vertices.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..vertices.len() {
            if !seen[j] && adj(vertices[i], vertices[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramEdge {
    pub a: usize,
    pub b: usize,
    /// `⟨a, b∨⟩⟨b, a∨⟩`: 1, 2 or 3 for a simple, double or triple bond; 4 in `A_1`.
    pub bond: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedDiagram {
    /// `α_1 .. α_n`, then `-θ`.
    pub nodes: Vec<Vec<i64>>,
    pub edges: Vec<DiagramEdge>,
    /// Simple roots whose removal leaves the diagram connected, 0-based.
    pub facet_roots: Vec<usize>,
}

/// An irreducible piece of a subsystem.
#[derive(Clone, Debug)]
pub struct Component {
    /// Simple roots in Bourbaki order of the identified type.
    pub simple: Vec<Vec<i64>>,
    /// Positive roots, as indices into the ambient list.
    pub positive: Vec<usize>,
    pub family: Family,
    pub rank: usize,
}

/// Root subsystem closed under negation, described by its positive part.
#[derive(Clone, Debug)]
pub struct Subsystem {
    /// `Ψ⁺ = Ψ ∩ Φ⁺` as ambient indices.
    pub positive: Vec<usize>,
    /// Simple roots of `Ψ⁺`, the indecomposable elements.
    pub simple: Vec<usize>,
    pub components: Vec<Component>,
}

impl Subsystem {
    fn from_positive(rs: &RootSystem, positive: Vec<usize>) -> Subsystem {
        let set: HashSet<usize> = positive.iter().copied().collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&b| {
                !positive.iter().any(|&g| {
                    let rest = sub(rs.coeffs(b), rs.coeffs(g));
                    rs.index_of(&rest).is_some_and(|d| set.contains(&d))
                })
            })
            .collect();
        let mut comp_of = vec![usize::MAX; simple.len()];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for s in 0..simple.len() {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut stack = vec![s];
            comp_of[s] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..simple.len() {
                    if comp_of[y] == usize::MAX && rs.inner(rs.coeffs(simple[x]), rs.coeffs(simple[y])) != 0 {
                        comp_of[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }
        let components = groups
            .iter()
            .map(|g| {
                let roots: Vec<Vec<i64>> = g.iter().map(|&s| rs.coeffs(simple[s]).to_vec()).collect();
                let c: Vec<Vec<i64>> = roots
                    .iter()
                    .map(|a| roots.iter().map(|b| 2 * rs.inner(a, b) / rs.len2(a)).collect())
                    .collect();
                let (family, rank, isos) = dynkin::identify(&c).expect("root subsystem has a finite type");
                let ordered: Vec<Vec<i64>> = isos[0].iter().map(|&p| roots[p].clone()).collect();
                let mine: Vec<usize> = positive
                    .iter()
                    .copied()
                    .filter(|&b| roots.iter().any(|s| rs.inner(rs.coeffs(b), s) != 0))
                    .collect();
                Component { simple: ordered, positive: mine, family, rank }
            })
            .collect();
        Subsystem { positive, simple, components }
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positive.binary_search(&i).is_ok()
    }
}

#[derive(Serialize)]
struct RootSystemJson<'a> {
    family: Family,
    rank: usize,
    cartan: &'a [Vec<i64>],
    positive_roots: &'a [Root],
    theta: &'a Root,
    marks: &'a [i64],
}

impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootSystemJson {
            family: self.spec.family,
            rank: self.rank(),
            cartan: &self.cartan,
            positive_roots: &self.positive,
            theta: self.theta(),
            marks: &self.marks,
        }
        .serialize(s)
    }
}
