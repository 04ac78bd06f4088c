//! Depth-first search for a triangulation order whose every step is a detaching
//! hyperplane, found by an exact LP.

use std::collections::HashSet;

use num_traits::{One, Zero};

use super::{perturb, Evidence, OrderStep};
use crate::crossing::{is_saturated, is_sim_closed, SimGraph};
use crate::geometry::linalg::int_rank;
use crate::geometry::lp::{Feasibility, LinearProgram, Relation};
use crate::geometry::{dot, rat_vec, Rational};
use crate::ideals::FacetIdeal;
use crate::rootsys::{std_lt, RootSystem};

fn rank(rs: &RootSystem, set: &[usize]) -> usize {
    let rows: Vec<Vec<i64>> = set.iter().map(|&i| rs.coeffs(i).to_vec()).collect();
    if rows.is_empty() {
        0
    } else {
        int_rank(&rows)
    }
}

/// Members of the ideal in the linear span of `set`.
pub(super) fn span_in_ideal(rs: &RootSystem, f: &FacetIdeal, set: &[usize]) -> Vec<usize> {
    let r = rank(rs, set);
    f.members().iter().copied().filter(|&g| set.contains(&g) || rank(rs, &[set, &[g]].concat()) == r).collect()
}

fn extremal(rs: &RootSystem, beta: usize, set: &[usize]) -> bool {
    let c = |i: usize| rs.coeffs(i);
    set.iter().all(|&g| !std_lt(c(g), c(beta))) || set.iter().all(|&g| !std_lt(c(beta), c(g)))
}

/// A normal whose hyperplane detaches `β` in `set`, if there is one.
///
/// The hyperplane meets the ideal in a flat containing `red(β) ∩ set`. Starting from the
/// smallest such flat, every pair without an inside middle pair forces one of its middle
/// pairs into the flat; all choices are tried. A generic normal vanishing on a flat meets
/// the ideal in exactly that flat.
///
/// With `cone`, the hyperplane must also meet `cone` inside `red(β)`.
pub(super) fn detaching_normal(
    rs: &RootSystem,
    f: &FacetIdeal,
    graph: &SimGraph,
    beta: usize,
    set: &[usize],
    cone: Option<&[usize]>,
) -> Option<Vec<Rational>> {
    if !extremal(rs, beta, set) {
        return None;
    }
    let unrelated = |g: usize| g != beta && !graph.sim(beta, g);
    let allowed = |g: usize| {
        g != beta && (!set.contains(&g) || unrelated(g)) && cone.is_none_or(|c| !c.contains(&g) || unrelated(g))
    };
    let red: Vec<usize> = set.iter().copied().filter(|&g| unrelated(g)).collect();
    let mut seen = HashSet::new();
    let mut stack = vec![span_in_ideal(rs, f, &red)];
    while let Some(flat) = stack.pop() {
        if !flat.iter().all(|&g| allowed(g)) || !seen.insert(flat.clone()) {
            continue;
        }
        match is_sim_closed(rs, &flat).counterexample {
            None => {
                if let Some(normal) = flat_normal(rs, f, beta, set, &flat) {
                    return Some(normal);
                }
            }
            Some((x, y)) => {
                for (g1, g2) in rs.middle_pairs(x, y) {
                    if allowed(g1) && allowed(g2) {
                        stack.push(span_in_ideal(rs, f, &[&flat[..], &[g1, g2]].concat()));
                    }
                }
            }
        }
    }
    None
}

/// A normal vanishing on the ideal exactly along `flat`, positive at `β` and negative on
/// the rest of `set`.
fn flat_normal(rs: &RootSystem, f: &FacetIdeal, beta: usize, set: &[usize], flat: &[usize]) -> Option<Vec<Rational>> {
    let mut lp = LinearProgram::new(vec![true; rs.rank()]);
    for &g in flat {
        lp.add(rat_vec(rs.coeffs(g)), Relation::Eq, Rational::zero());
    }
    lp.add(rat_vec(rs.coeffs(beta)), Relation::Ge, Rational::one());
    for &g in set.iter().filter(|g| **g != beta && !flat.contains(g)) {
        lp.add(rat_vec(rs.coeffs(g)), Relation::Le, -Rational::one());
    }
    let Feasibility::Feasible(mut normal) = lp.solve() else {
        return None;
    };
    perturb(rs, f, flat, &mut normal);
    let meets: Vec<usize> = f.members().iter().copied().filter(|&g| dot(&normal, rs.coeffs(g)).is_zero()).collect();
    (meets == flat).then_some(normal)
}

struct Search<'a> {
    rs: &'a RootSystem,
    f: &'a FacetIdeal,
    graph: &'a SimGraph,
    dead: HashSet<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, rest: &[usize], steps: &mut Vec<OrderStep>) -> bool {
        let (rs, n) = (self.rs, self.rs.rank());
        let r = rank(rs, rest);
        if r < n {
            return r + 1 == n && is_saturated(rs, &span_in_ideal(rs, self.f, rest));
        }
        if self.dead.contains(rest) || !is_saturated(rs, rest) {
            return false;
        }
        for &beta in rest {
            // the evidence only matters for this step, so the first one found suffices
            let evidence = detaching_normal(rs, self.f, self.graph, beta, rest, None)
                .map(|normal| Evidence::Detach { normal })
                .or_else(|| self.bipartition(beta, rest));
            let Some(evidence) = evidence else {
                continue;
            };
            let next: Vec<usize> = rest.iter().copied().filter(|&g| g != beta).collect();
            steps.push(OrderStep { beta, evidence, source: "search" });
            if self.run(&next, steps) {
                return true;
            }
            steps.pop();
        }
        self.dead.insert(rest.to_vec());
        false
    }
}

/// All down-sets of `set` under the standard order.
fn down_sets(rs: &RootSystem, set: &[usize]) -> Vec<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stack = vec![Vec::new()];
    while let Some(d) = stack.pop() {
        if !seen.insert(d.clone()) {
            continue;
        }
        for &g in set {
            if d.contains(&g) {
                continue;
            }
            let addable = set.iter().all(|&h| !std_lt(rs.coeffs(h), rs.coeffs(g)) || d.contains(&h));
            if addable {
                let mut e = d.clone();
                e.push(g);
                e.sort_unstable();
                stack.push(e);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// A linear functional negative on `below`, positive on `above` and zero on `on`.
fn linear_separator(rs: &RootSystem, below: &[usize], on: &[usize], above: &[usize]) -> Option<Vec<Rational>> {
    let mut lp = LinearProgram::new(vec![true; rs.rank()]);
    for &g in below {
        lp.add(rat_vec(rs.coeffs(g)), Relation::Le, -Rational::one());
    }
    for &g in above {
        lp.add(rat_vec(rs.coeffs(g)), Relation::Ge, Rational::one());
    }
    for &g in on {
        lp.add(rat_vec(rs.coeffs(g)), Relation::Eq, Rational::zero());
    }
    match lp.solve() {
        Feasibility::Feasible(x) => Some(x),
        Feasibility::Infeasible(_) => None,
    }
}

/// Pairs `(J_i ∖ J_f, J_f ∖ J_i)` of a nonempty down-set and a disjoint nonempty up-set
/// of `cone` with every member of the first `≲` every member of the second.
pub(super) fn splits(rs: &RootSystem, graph: &SimGraph, cone: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let downs = down_sets(rs, cone);
    let mut out = Vec::new();
    for below in downs.iter().filter(|d| !d.is_empty()) {
        for rest in downs.iter().filter(|d| d.len() > below.len() && below.iter().all(|g| d.contains(g))) {
            let above: Vec<usize> = cone.iter().copied().filter(|g| !rest.contains(g)).collect();
            if !above.is_empty() && below.iter().all(|&a| above.iter().all(|&b| graph.lesssim(a, b))) {
                out.push((below.clone(), above));
            }
        }
    }
    out
}

/// `(J_i, J_f, separator)` for a split of `cone`, if a linear separator exists.
pub(super) fn bipartition_of(
    rs: &RootSystem,
    cone: &[usize],
    below: &[usize],
    above: &[usize],
) -> Option<(Vec<usize>, Vec<usize>, Vec<Rational>)> {
    let middle: Vec<usize> = cone.iter().copied().filter(|g| !below.contains(g) && !above.contains(g)).collect();
    let separator = linear_separator(rs, below, &middle, above)?;
    let initial = cone.iter().copied().filter(|g| !above.contains(g)).collect();
    let final_part = cone.iter().copied().filter(|g| !below.contains(g)).collect();
    Some((initial, final_part, separator))
}

impl Search<'_> {
    /// The first proper bipartition of `cone` in which `β` is detachable in both parts.
    fn bipartition(&self, beta: usize, cone: &[usize]) -> Option<Evidence> {
        let rs = self.rs;
        for (below, above) in splits(rs, self.graph, cone) {
            if below.contains(&beta) || above.contains(&beta) {
                continue;
            }
            let initial: Vec<usize> = cone.iter().copied().filter(|g| !above.contains(g)).collect();
            let final_part: Vec<usize> = cone.iter().copied().filter(|g| !below.contains(g)).collect();
            let Some(initial_normal) = detaching_normal(rs, self.f, self.graph, beta, &initial, Some(cone)) else {
                continue;
            };
            let Some(final_normal) = detaching_normal(rs, self.f, self.graph, beta, &final_part, Some(cone)) else {
                continue;
            };
            let Some((_, _, separator)) = bipartition_of(rs, cone, &below, &above) else {
                continue;
            };
            return Some(Evidence::Bipartition { initial, final_part, separator, initial_normal, final_normal });
        }
        None
    }
}

/// Steps of a triangulation order made of detachable elements only, or `None` when the
/// search space is exhausted.
pub(super) fn search_steps(
    rs: &RootSystem,
    f: &FacetIdeal,
    graph: &SimGraph,
) -> Option<Vec<OrderStep>> {
    let mut search = Search { rs, f, graph, dead: HashSet::new() };
    let mut steps = Vec::new();
    search.run(f.members(), &mut steps).then_some(steps)
}
