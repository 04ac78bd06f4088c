//! Triangulation orders: a certificate per facet ideal, and an independent verifier.
//!
//! The certificate is a sequence `S_I` of roots, followed by the rest of the ideal in
//! index order. Every element of `S_I` carries a detaching hyperplane for its upper cone
//! `(β^⪯)`, or a bipartition of that cone with one detaching hyperplane per part.
//! Hyperplanes are linear, given by a normal functional on coefficient vectors.

use serde::Serialize;

use crate::crossing::{is_sim_closed, sim_graph, SimGraph};
use crate::error::{Error, Result};
use crate::geometry::linalg::{int_rank, RationalMatrix};
use crate::geometry::{dot, Rational};
use crate::ideals::{order_involution, FacetIdeal, InvolutionMap, NilradicalType};
use crate::rational_string;
use crate::rootsys::{std_leq, std_lt, Family, RootSystem};

mod search;

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// `β` is detachable in `(β^⪯)` with hyperplane `normal^⊥`.
    Detach { normal: Vec<Rational> },
    /// `(β^⪯) = initial ∪ final`, separated by `separator^⊥`, with `β` detachable in
    /// each part.
    Bipartition {
        initial: Vec<usize>,
        final_part: Vec<usize>,
        separator: Vec<Rational>,
        initial_normal: Vec<Rational>,
        final_normal: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderStep {
    pub beta: usize,
    pub evidence: Evidence,
    /// Where the hyperplane comes from: `"long root"`, `"explicit"` or `"involution"`.
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangulationOrderCert {
    pub alpha: usize,
    pub proof_type: NilradicalType,
    /// `S_I`.
    pub sequence: Vec<usize>,
    /// The full total order: `S_I` followed by the rest of the ideal.
    pub order: Vec<usize>,
    pub steps: Vec<OrderStep>,
}

fn q_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

impl TriangulationOrderCert {
    pub fn json(&self, rs: &RootSystem) -> serde_json::Value {
        let c = |i: usize| rs.coeffs(i).to_vec();
        let cs = |v: &[usize]| v.iter().map(|&i| c(i)).collect::<Vec<_>>();
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|s| match &s.evidence {
                Evidence::Detach { normal } => serde_json::json!({
                    "beta": c(s.beta), "kind": "detach", "source": s.source, "normal": q_strings(normal),
                }),
                Evidence::Bipartition { initial, final_part, separator, initial_normal, final_normal } => {
                    serde_json::json!({
                        "beta": c(s.beta), "kind": "bipartition", "source": s.source,
                        "initial": cs(initial), "final": cs(final_part),
                        "separator": q_strings(separator),
                        "initial_normal": q_strings(initial_normal),
                        "final_normal": q_strings(final_normal),
                    })
                }
            })
            .collect();
        serde_json::json!({
            "system": rs.name(),
            "alpha": self.alpha + 1,
            "type": self.proof_type.to_string(),
            "sequence": cs(&self.sequence),
            "rest": cs(&self.order[self.sequence.len()..]),
            "steps": steps,
        })
    }

    /// The same certificate with every hyperplane normal replaced by `normal`.
    pub fn with_all_normals(&self, normal: &[Rational]) -> Self {
        let mut out = self.clone();
        for s in &mut out.steps {
            match &mut s.evidence {
                Evidence::Detach { normal: n } => *n = normal.to_vec(),
                Evidence::Bipartition { separator, initial_normal, final_normal, .. } => {
                    *separator = normal.to_vec();
                    *initial_normal = normal.to_vec();
                    *final_normal = normal.to_vec();
                }
            }
        }
        out
    }
}

/// Translation between the local labeling of the nilradical and ambient coordinates.
struct Local<'a> {
    rs: &'a RootSystem,
    f: &'a FacetIdeal,
    n: usize,
    k: usize,
    inverse: RationalMatrix,
}

impl<'a> Local<'a> {
    fn new(rs: &'a RootSystem, f: &'a FacetIdeal) -> Result<Self> {
        let inverse = RationalMatrix::from_int_rows(f.local_simple())
            .inverse()
            .ok_or_else(|| Error::CertificationFailure("local simple roots are dependent".into()))?;
        Ok(Local { rs, f, n: rs.rank(), k: f.proof_type().k, inverse })
    }

    /// Ambient index of `Σ c_i α'_i`.
    fn root(&self, c: &[i64]) -> Result<usize> {
        let x: Vec<i64> = (0..self.n)
            .map(|j| (0..self.n).map(|i| c[i] * self.f.local_simple()[i][j]).sum())
            .collect();
        self.rs
            .index_of(&x)
            .filter(|&i| self.f.ideal().contains(i))
            .ok_or_else(|| Error::CertificationFailure(format!("local root {c:?} is not in the ideal")))
    }

    /// `Σ_{i ∈ set} α'_i` with 1-based labels.
    fn sum(&self, set: &[usize]) -> Result<usize> {
        let mut c = vec![0; self.n];
        for &i in set {
            c[i - 1] += 1;
        }
        self.root(&c)
    }

    fn coeff(&self, root: usize, h: usize) -> Rational {
        let x = self.rs.coeffs(root);
        (0..self.n).map(|j| Rational::from_integer(x[j].into()) * self.inverse.get(j, h - 1)).sum()
    }

    /// `ω̌'_h` as a functional on ambient coefficients; zero for `h` outside `1..=n`.
    fn omega(&self, h: usize) -> Vec<Rational> {
        if h == 0 || h > self.n {
            return vec![Rational::from_integer(0.into()); self.n];
        }
        (0..self.n).map(|j| self.inverse.get(j, h - 1).clone()).collect()
    }

    fn combo(&self, terms: &[(i64, usize)]) -> Vec<Rational> {
        let mut v = vec![Rational::from_integer(0.into()); self.n];
        for &(a, h) in terms {
            for (x, w) in v.iter_mut().zip(self.omega(h)) {
                *x += Rational::from_integer(a.into()) * w;
            }
        }
        v
    }

    /// `β∨ − ω̌'_k`: meets the ideal exactly in `red(β)` when `β` is long.
    fn long_root_normal(&self, beta: usize) -> Vec<Rational> {
        let cor = self.rs.coroot_functional(self.rs.coeffs(beta));
        cor.iter().zip(self.omega(self.k)).map(|(&c, w)| Rational::from_integer(c.into()) - w).collect()
    }

    fn highest(&self) -> usize {
        let height = |i: usize| (1..=self.n).map(|h| self.coeff(i, h)).sum::<Rational>();
        *self.f.members().iter().max_by(|&&a, &&b| height(a).cmp(&height(b))).unwrap()
    }

    fn detach_long(&self, beta: usize) -> OrderStep {
        OrderStep { beta, evidence: Evidence::Detach { normal: self.long_root_normal(beta) }, source: "long root" }
    }

    fn detach(&self, beta: usize, terms: &[(i64, usize)]) -> OrderStep {
        OrderStep { beta, evidence: Evidence::Detach { normal: self.combo(terms) }, source: "explicit" }
    }
}

fn transport(inv: &InvolutionMap, step: &OrderStep, cone: &[usize]) -> OrderStep {
    let img = |v: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = v.iter().map(|&i| inv.apply(i)).filter(|i| cone.contains(i)).collect();
        out.sort_unstable();
        out
    };
    let evidence = match &step.evidence {
        Evidence::Detach { normal } => Evidence::Detach { normal: inv.pull_functional(normal) },
        Evidence::Bipartition { initial, final_part, separator, initial_normal, final_normal } => {
            Evidence::Bipartition {
                initial: img(final_part),
                final_part: img(initial),
                separator: inv.pull_functional(separator),
                initial_normal: inv.pull_functional(final_normal),
                final_normal: inv.pull_functional(initial_normal),
            }
        }
    };
    OrderStep { beta: inv.apply(step.beta), evidence, source: "involution" }
}

/// Each root of `base` followed by its image under the order involution, with the
/// image's certificate transported from the root's.
fn symmetric_sequence(
    rs: &RootSystem,
    f: &FacetIdeal,
    base: Vec<OrderStep>,
) -> Result<(Vec<usize>, Vec<OrderStep>)> {
    let inv = order_involution(rs, &[f.alpha()])?;
    let mut seq = Vec::new();
    let mut steps = Vec::new();
    for step in base {
        seq.push(step.beta);
        let cone_after: Vec<usize> = f.members().iter().copied().filter(|i| !seq.contains(i)).collect();
        let image = transport(&inv, &step, &cone_after);
        steps.push(step);
        seq.push(image.beta);
        steps.push(image);
    }
    Ok((seq, steps))
}

fn upper_cone(order: &[usize], pos: usize) -> Vec<usize> {
    let mut v = order[pos..].to_vec();
    v.sort_unstable();
    v
}

/// The triangulation order for the facet ideal's nilradical type. When the construction
/// for that type does not verify, the order comes from [`search_order`] instead.
pub fn triangulation_order(rs: &RootSystem, f: &FacetIdeal) -> Result<TriangulationOrderCert> {
    let cert = constructed_order(rs, f)?;
    if verify_order(rs, f, &cert).passed() {
        return Ok(cert);
    }
    Ok(search_order(rs, f)?.unwrap_or(cert))
}

/// A triangulation order found by depth-first search over detachable elements, each
/// with a hyperplane from an exact LP.
pub fn search_order(rs: &RootSystem, f: &FacetIdeal) -> Result<Option<TriangulationOrderCert>> {
    let graph = sim_graph(rs, f.ideal())?;
    Ok(search::search_steps(rs, f, &graph).map(|steps| {
        let sequence: Vec<usize> = steps.iter().map(|s| s.beta).collect();
        let mut order = sequence.clone();
        order.extend(f.members().iter().copied().filter(|i| !sequence.contains(i)));
        TriangulationOrderCert { alpha: f.alpha(), proof_type: f.proof_type(), sequence, order, steps }
    }))
}

/// A proper bipartition `{J_i, J_f}` of a subset of the ideal with its separating normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Bipartition {
    pub initial: Vec<usize>,
    pub final_part: Vec<usize>,
    pub separator: Vec<Rational>,
}

/// Every proper bipartition of `set`, a subset of the facet ideal.
pub fn bipartitions(rs: &RootSystem, f: &FacetIdeal, set: &[usize]) -> Result<Vec<Bipartition>> {
    let graph = sim_graph(rs, f.ideal())?;
    let mut set = set.to_vec();
    set.sort_unstable();
    Ok(search::splits(rs, &graph, &set)
        .into_iter()
        .filter_map(|(below, above)| search::bipartition_of(rs, &set, &below, &above))
        .map(|(initial, final_part, separator)| Bipartition { initial, final_part, separator })
        .collect())
}

/// The order built case by case from the nilradical type.
pub fn constructed_order(rs: &RootSystem, f: &FacetIdeal) -> Result<TriangulationOrderCert> {
    let t = f.proof_type();
    let l = Local::new(rs, f)?;
    let n = t.rank;
    let range = |a: usize, b: usize| (a..=b).collect::<Vec<usize>>();
    let (sequence, steps) = match (t.family, t.k) {
        (Family::A, k) if 2 * k > n => {
            let mut seq = Vec::new();
            let mut steps = Vec::new();
            for j in k..=n {
                let beta = l.sum(&range(k, j))?;
                seq.push(beta);
                steps.push(l.detach(beta, &[(1, k), (-1, k - 1), (-1, j + 1)]));
            }
            (seq, steps)
        }
        (Family::C, k) if k == n => {
            let mut seq = Vec::new();
            let mut steps = Vec::new();
            for j in (1..=n).rev() {
                let beta = l.sum(&range(j, n))?;
                seq.push(beta);
                steps.push(l.detach(beta, &[(2, n), (-1, n - 1), (-1, j - 1)]));
            }
            (seq, steps)
        }
        (Family::B, 1) | (Family::D, 1) => {
            let a1 = l.sum(&[1])?;
            let theta = l.highest();
            (vec![a1, theta], vec![l.detach_long(a1), l.detach_long(theta)])
        }
        (Family::D, k) if k == n => d_sequence(rs, f, &l)?,
        (Family::E, 6) if n == 6 => {
            let mut base: Vec<OrderStep> =
                [&[6][..], &[5, 6], &[4, 5, 6]].iter().map(|s| l.sum(s).map(|b| l.detach_long(b))).collect::<Result<_>>()?;
            base.push(l.detach(l.sum(&[2, 4, 5, 6])?, &[(1, 6), (-1, 3)]));
            symmetric_sequence(rs, f, base)?
        }
        (Family::E, 7) if n == 7 => e7_sequence(rs, f, &l)?,
        _ => return Err(Error::UnknownType(t.to_string())),
    };
    let mut order = sequence.clone();
    order.extend(f.members().iter().copied().filter(|i| !sequence.contains(i)));
    let mut steps = steps;
    for (pos, step) in steps.iter_mut().enumerate() {
        let cone = upper_cone(&order, pos);
        let mut tilted = false;
        match &mut step.evidence {
            Evidence::Detach { normal } => tilted |= tilt(rs, f, &cone, normal),
            Evidence::Bipartition { initial, final_part, initial_normal, final_normal, .. } => {
                tilted |= tilt(rs, f, initial, initial_normal);
                tilted |= tilt(rs, f, final_part, final_normal);
            }
        }
        if tilted {
            step.source = match step.source {
                "long root" => "long root, tilted",
                "involution" => "involution, tilted",
                _ => "explicit, tilted",
            };
        }
    }
    Ok(TriangulationOrderCert { alpha: f.alpha(), proof_type: t, sequence, order, steps })
}

/// When `I ∩ normal^⊥` is not `∼closed`, rotates the hyperplane about `J ∩ normal^⊥` by
/// a small amount so that it leaves every root of `I ∖ J` it can. The sign of the
/// functional on `J` is unchanged. Returns whether the normal changed.
fn tilt(rs: &RootSystem, f: &FacetIdeal, part: &[usize], normal: &mut Vec<Rational>) -> bool {
    use num_traits::Zero;
    let on: Vec<usize> = f.members().iter().copied().filter(|&g| dot(normal, rs.coeffs(g)).is_zero()).collect();
    if is_sim_closed(rs, &on).closed {
        return false;
    }
    let fixed: Vec<usize> = on.iter().copied().filter(|g| part.contains(g)).collect();
    perturb(rs, f, &fixed, normal)
}

/// Moves `normal` by a small multiple of a functional vanishing on `fixed`, so that the
/// hyperplane leaves every root of the ideal outside the span of `fixed`. Signs of the
/// nonzero values on the ideal are unchanged. Returns whether the normal changed.
fn perturb(rs: &RootSystem, f: &FacetIdeal, fixed: &[usize], normal: &mut [Rational]) -> bool {
    use num_traits::{Signed, Zero};
    let value = |nu: &[Rational], g: usize| dot(nu, rs.coeffs(g));
    let rows: Vec<Vec<i64>> = fixed.iter().map(|&g| rs.coeffs(g).to_vec()).collect();
    let basis = if rows.is_empty() {
        RationalMatrix::identity(rs.rank()).to_rows()
    } else {
        RationalMatrix::from_int_rows(&rows).nullspace()
    };
    let leave: Vec<usize> = f
        .members()
        .iter()
        .copied()
        .filter(|&g| value(normal, g).is_zero())
        .filter(|&g| basis.iter().any(|b| !value(b, g).is_zero()))
        .collect();
    if leave.is_empty() {
        return false;
    }
    // rho = Σ s^i b_i is nonzero on every root to leave for all but finitely many s
    let rho = (1i64..)
        .map(|s| {
            let mut rho = vec![Rational::zero(); rs.rank()];
            let mut w = Rational::from_integer(1.into());
            for b in &basis {
                for (r, x) in rho.iter_mut().zip(b) {
                    *r += &w * x;
                }
                w *= Rational::from_integer(s.into());
            }
            rho
        })
        .find(|rho| leave.iter().all(|&g| !value(rho, g).is_zero()))
        .unwrap();
    let eps = f
        .members()
        .iter()
        .filter(|&&g| !value(normal, g).is_zero() && !value(&rho, g).is_zero())
        .map(|&g| (value(normal, g) / value(&rho, g)).abs())
        .min()
        .map_or(Rational::from_integer(1.into()), |m| m / Rational::from_integer(2.into()));
    for (x, r) in normal.iter_mut().zip(&rho) {
        *x += &eps * r;
    }
    true
}

/// `D_{n,n}`: `α'_n + α'_{[j, n−2]}` for `j = n, n−2, …, 1`.
fn d_sequence(rs: &RootSystem, f: &FacetIdeal, l: &Local) -> Result<(Vec<usize>, Vec<OrderStep>)> {
    let n = l.n;
    let mut js = vec![n];
    js.extend((1..=n - 2).rev());
    let mut seq = Vec::new();
    let mut steps = Vec::new();
    for j in js {
        let mut set: Vec<usize> = if j == n { vec![] } else { (j..=n - 2).collect() };
        set.push(n);
        let beta = l.sum(&set)?;
        seq.push(beta);
        if j + 2 >= n {
            steps.push(l.detach_long(beta));
            continue;
        }
        let cone: Vec<usize> = f.members().iter().copied().filter(|i| *i == beta || !seq.contains(i)).collect();
        let final_part: Vec<usize> =
            cone.iter().copied().filter(|&g| std_leq(rs.coeffs(beta), rs.coeffs(g))).collect();
        let two = Rational::from_integer(2.into());
        let initial: Vec<usize> = cone.iter().copied().filter(|&g| l.coeff(g, j) != two).collect();
        steps.push(OrderStep {
            beta,
            evidence: Evidence::Bipartition {
                initial,
                final_part,
                separator: l.combo(&[(1, n), (-1, j)]),
                initial_normal: l.combo(&[(1, n), (-1, n - 1), (-1, j - 1)]),
                final_normal: l.long_root_normal(beta),
            },
            source: "explicit",
        });
    }
    Ok((seq, steps))
}

/// `E_{7,7}`: seven roots with all local coefficients at most 1, each followed by its
/// involution image.
fn e7_sequence(rs: &RootSystem, f: &FacetIdeal, l: &Local) -> Result<(Vec<usize>, Vec<OrderStep>)> {
    let mut base = Vec::new();
    for s in [&[7][..], &[6, 7], &[5, 6, 7], &[4, 5, 6, 7]] {
        base.push(l.detach_long(l.sum(s)?));
    }
    let beta = l.sum(&[2, 4, 5, 6, 7])?;
    // cone of β: everything except the eight roots placed before it
    let inv = order_involution(rs, &[f.alpha()])?;
    let before: Vec<usize> = base.iter().flat_map(|s| [s.beta, inv.apply(s.beta)]).collect();
    let cone: Vec<usize> = f.members().iter().copied().filter(|i| !before.contains(i)).collect();
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    base.push(OrderStep {
        beta,
        evidence: Evidence::Bipartition {
            initial: cone.iter().copied().filter(|&g| l.coeff(g, 2) <= one).collect(),
            final_part: cone.iter().copied().filter(|&g| l.coeff(g, 2) > zero).collect(),
            separator: l.combo(&[(1, 7), (-1, 2)]),
            initial_normal: l.combo(&[(1, 7), (-1, 3)]),
            final_normal: l.long_root_normal(beta),
        },
        source: "explicit",
    });
    base.push(l.detach_long(l.sum(&[3, 4, 5, 6, 7])?));
    base.push(l.detach(l.sum(&[1, 3, 4, 5, 6, 7])?, &[(1, 7), (-1, 2)]));
    symmetric_sequence(rs, f, base)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderVerdict {
    pub checks: Vec<Check>,
}

impl OrderVerdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

struct Verifier<'a> {
    rs: &'a RootSystem,
    ideal: Vec<usize>,
    graph: SimGraph,
    checks: Vec<Check>,
}

fn sign(q: &Rational) -> i32 {
    use num_traits::Signed;
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl Verifier<'_> {
    fn record(&mut self, name: String, passed: bool) -> bool {
        self.checks.push(Check { name, passed });
        passed
    }

    fn c(&self, i: usize) -> &[i64] {
        self.rs.coeffs(i)
    }

    fn rank(&self, set: &[usize]) -> usize {
        let rows: Vec<Vec<i64>> = set.iter().map(|&i| self.c(i).to_vec()).collect();
        if rows.is_empty() {
            0
        } else {
            int_rank(&rows)
        }
    }

    fn saturated(&self, set: &[usize]) -> bool {
        crate::crossing::is_saturated(self.rs, set)
    }

    fn extremal(&self, beta: usize, set: &[usize]) -> bool {
        let minimal = set.iter().all(|&g| !std_lt(self.c(g), self.c(beta)));
        let maximal = set.iter().all(|&g| !std_lt(self.c(beta), self.c(g)));
        minimal || maximal
    }

    /// Conditions for `normal^⊥` to detach `β` in `set`.
    fn detachable(&mut self, label: &str, beta: usize, set: &[usize], normal: &[Rational]) -> bool {
        let rs = self.rs;
        let red: Vec<usize> = set.iter().copied().filter(|&g| g != beta && !self.graph.sim(beta, g)).collect();
        let on_h: Vec<usize> = set.iter().copied().filter(|&g| dot(normal, self.c(g)) == Rational::from_integer(0.into())).collect();
        let s = sign(&dot(normal, self.c(beta)));
        let strict = s != 0
            && set
                .iter()
                .filter(|&&g| g != beta && !red.contains(&g))
                .all(|&g| sign(&dot(normal, self.c(g))) == -s);
        let ideal_on_h: Vec<usize> =
            self.ideal.iter().copied().filter(|&g| dot(normal, self.c(g)) == Rational::from_integer(0.into())).collect();
        let ok = [
            self.record(format!("{label}: extremal"), set.contains(&beta) && self.extremal(beta, set)),
            self.record(format!("{label}: contact set is red(β)"), on_h == red),
            self.record(format!("{label}: strict separation"), strict),
            self.record(format!("{label}: I∩H ∼closed"), is_sim_closed(rs, &ideal_on_h).closed),
        ];
        ok.iter().all(|&b| b)
    }
}

/// Checks a certificate against the definitions, condition by condition.
pub fn verify_order(rs: &RootSystem, f: &FacetIdeal, cert: &TriangulationOrderCert) -> OrderVerdict {
    let graph = match sim_graph(rs, f.ideal()) {
        Ok(g) => g,
        Err(_) => return OrderVerdict { checks: vec![Check { name: "ideal is abelian".into(), passed: false }] },
    };
    let mut v = Verifier { rs, ideal: f.members().to_vec(), graph, checks: Vec::new() };
    let n = rs.rank();
    let mut sorted = cert.order.clone();
    sorted.sort_unstable();
    let total = sorted == v.ideal && cert.order.starts_with(&cert.sequence);
    v.record("order is a total order on I with S_I initial".into(), total);
    v.record(
        "steps match S_I".into(),
        cert.steps.len() == cert.sequence.len() && cert.steps.iter().zip(&cert.sequence).all(|(s, &b)| s.beta == b),
    );
    if !total {
        return OrderVerdict { checks: v.checks };
    }
    let rest = cert.order[cert.sequence.len()..].to_vec();
    let r = v.rank(&rest);
    v.record(format!("rank(I∖S_I) = n−1 (found {r})"), r + 1 == n);
    let span: Vec<usize> = v.ideal.iter().copied().filter(|&g| v.rank(&[rest.clone(), vec![g]].concat()) == r).collect();
    let sat = v.saturated(&span);
    v.record("I∩span(I∖S_I) saturated".into(), sat);

    for (pos, step) in cert.steps.iter().enumerate() {
        let beta = step.beta;
        let label = format!("β={:?}", rs.coeffs(beta));
        let cone = upper_cone(&cert.order, pos);
        let rk = v.rank(&cone);
        v.record(format!("{label}: rank(β^⪯) = n"), rk == n);
        let sat = v.saturated(&cone);
        v.record(format!("{label}: (β^⪯) saturated"), sat);
        match &step.evidence {
            Evidence::Detach { normal } => {
                v.detachable(&format!("{label} detach"), beta, &cone, normal);
            }
            Evidence::Bipartition { initial, final_part, separator, initial_normal, final_normal } => {
                let mut union: Vec<usize> = initial.iter().chain(final_part).copied().collect();
                union.sort_unstable();
                union.dedup();
                v.record(format!("{label} bipartition: J_i ∪ J_f = (β^⪯)"), union == cone);
                let closed_down = |part: &[usize], up: bool| {
                    part.iter().all(|&g| {
                        cone.iter().all(|&d| {
                            let related = if up { std_leq(rs.coeffs(g), rs.coeffs(d)) } else { std_leq(rs.coeffs(d), rs.coeffs(g)) };
                            !related || part.contains(&d)
                        })
                    })
                };
                v.record(format!("{label} bipartition: J_i initial section"), closed_down(initial, false));
                v.record(format!("{label} bipartition: J_f final section"), closed_down(final_part, true));
                let only_i: Vec<usize> = initial.iter().copied().filter(|g| !final_part.contains(g)).collect();
                let only_f: Vec<usize> = final_part.iter().copied().filter(|g| !initial.contains(g)).collect();
                let both: Vec<usize> = initial.iter().copied().filter(|g| final_part.contains(g)).collect();
                let across = only_i.iter().all(|&a| only_f.iter().all(|&b| v.graph.lesssim(a, b)));
                v.record(format!("{label} bipartition: J_i∖J_f ≲ J_f∖J_i"), across);
                let zero = Rational::from_integer(0.into());
                let on = both.iter().all(|&g| dot(separator, rs.coeffs(g)) == zero);
                let si: Vec<i32> = only_i.iter().map(|&g| sign(&dot(separator, rs.coeffs(g)))).collect();
                let sf: Vec<i32> = only_f.iter().map(|&g| sign(&dot(separator, rs.coeffs(g)))).collect();
                let strict = match (si.first(), sf.first()) {
                    (Some(&a), _) if a != 0 => si.iter().all(|&x| x == a) && sf.iter().all(|&x| x == -a),
                    (None, Some(&b)) if b != 0 => sf.iter().all(|&x| x == b),
                    (None, None) => true,
                    _ => false,
                };
                v.record(format!("{label} bipartition: separating hyperplane"), on && strict && separator.iter().any(|x| *x != zero));
                for (part, normal, name) in [(initial, initial_normal, "J_i"), (final_part, final_normal, "J_f")] {
                    v.detachable(&format!("{label} {name}"), beta, part, normal);
                    let red_ok = cone
                        .iter()
                        .filter(|&&g| dot(normal, rs.coeffs(g)) == zero)
                        .all(|&g| g != beta && !v.graph.sim(beta, g));
                    v.record(format!("{label} {name}: (β^⪯)∩H ⊆ red(β)"), red_ok);
                }
            }
        }
    }
    OrderVerdict { checks: v.checks }
}
