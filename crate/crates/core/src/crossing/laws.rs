//! Executable checks of the structural laws for roots and crossing pairs. Each check
//! enumerates its whole configuration space and returns every counterexample found.

use serde::Serialize;

use super::{crossing_relations, difference_should_vanish, CrossingRelation};
use crate::error::Result;
use crate::ideals::RootIdeal;
use crate::rootsys::{add, std_leq, std_lt, sub, RootSystem};

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: &'static str,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl LawReport {
    fn new(law: &'static str) -> Self {
        LawReport { law, checked: 0, counterexamples: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn merge(&mut self, other: LawReport) {
        self.checked += other.checked;
        self.counterexamples.extend(other.counterexamples);
    }
}

/// Adds the reports of `more` into `acc`, matching by law name.
pub fn accumulate(acc: &mut Vec<LawReport>, more: Vec<LawReport>) {
    for r in more {
        match acc.iter_mut().find(|a| a.law == r.law) {
            Some(a) => a.merge(r),
            None => acc.push(r),
        }
    }
}

fn fmt(v: &[i64]) -> String {
    format!("{v:?}")
}

/// Three roots with no two opposite summing to a root: at least two of the three
/// pairwise sums are roots.
pub fn triple_sums(rs: &RootSystem) -> LawReport {
    let mut rep = LawReport::new("triple_sums");
    let roots = rs.all_roots();
    let opposite = |a: &[i64], b: &[i64]| a.iter().zip(b).all(|(x, y)| x + y == 0);
    for i in 0..roots.len() {
        for j in i..roots.len() {
            let (a, b) = (&roots[i], &roots[j]);
            if opposite(a, b) {
                continue;
            }
            let ab = add(a, b);
            for c in &roots[j..] {
                if opposite(a, c) || opposite(b, c) || !rs.is_root(&add(&ab, c)) {
                    continue;
                }
                let sums = [rs.is_root(&ab), rs.is_root(&add(a, c)), rs.is_root(&add(b, c))];
                let hits = sums.iter().filter(|&&s| s).count();
                rep.check(hits >= 2, || format!("{} {} {}: {hits} root sums", fmt(a), fmt(b), fmt(c)));
            }
        }
    }
    rep
}

/// Lengths and pairings of two roots whose sum is a root.
pub fn summable_pairs(rs: &RootSystem) -> LawReport {
    let mut rep = LawReport::new("summable_pairs");
    let roots = rs.all_roots();
    let pairing = |a: &[i64], b: &[i64]| 2 * rs.inner(a, b) / rs.len2(b);
    for b in &roots {
        for g in &roots {
            let s = add(b, g);
            if !rs.is_root(&s) {
                continue;
            }
            let (lb, lg, ls) = (rs.len2(b), rs.len2(g), rs.len2(&s));
            let ok = if lb == lg && lg == ls {
                pairing(b, g) == -1
            } else if lb == lg {
                lb < ls && ((ls == 2 * lb && pairing(b, g) == 0) || (ls == 3 * lb && pairing(b, g) == 1))
            } else if lb < lg {
                ls == lb && pairing(g, b) == -lg / lb && [2, 3].contains(&(lg / lb)) && pairing(b, g) == -1
            } else {
                // the mirrored case is covered when the roles are swapped
                true
            };
            let nonneg = rs.inner(b, g) >= 0;
            let ok = ok && nonneg == (lb == lg && lb < ls);
            rep.check(ok, || format!("{} + {}", fmt(b), fmt(g)));
        }
    }
    rep
}

/// Short members only add to short positive roots; differences of members pair
/// positively. Negative summands are excluded: in B3 the short member `ε1` of an abelian
/// ideal has `ε1 + (ε2 − ε1) = ε2` with a long summand.
pub fn abelian_differences(rs: &RootSystem, ideal: &RootIdeal) -> Vec<LawReport> {
    let mut short_add = LawReport::new("abelian_short_summands");
    let mut diff = LawReport::new("abelian_difference_positive");
    for &b in ideal.members() {
        let bc = rs.coeffs(b);
        if !rs.is_long(bc) {
            for x in rs.positive_roots().iter().map(|r| r.coeffs()) {
                if rs.is_root(&add(bc, x)) {
                    short_add.check(!rs.is_long(x), || format!("{} + {}", fmt(bc), fmt(x)));
                }
            }
        }
        for &g in ideal.members() {
            let gc = rs.coeffs(g);
            if g != b && rs.is_root(&sub(bc, gc)) {
                diff.check(rs.inner(bc, gc) > 0, || format!("({}, {})", fmt(bc), fmt(gc)));
            }
        }
    }
    vec![short_add, diff]
}

fn oriented(rel: &CrossingRelation) -> impl Iterator<Item = ((usize, usize), (usize, usize))> {
    [(rel.pair1, rel.pair2), (rel.pair2, rel.pair1)].into_iter()
}

/// Crossing pairs `{β1 ≠ β2}`, `{γ1, γ2}`: positive products with root differences,
/// one pair is `{min, max}`, and `(β1, β2) = 0` outside the mixed-length case.
pub fn crossing_pairs(rs: &RootSystem, ideal: &RootIdeal) -> Result<Vec<LawReport>> {
    let mut positive = LawReport::new("crossing_positive_products");
    let mut minmax = LawReport::new("crossing_min_max");
    let mut ortho = LawReport::new("crossing_orthogonal");
    let c = |i: usize| rs.coeffs(i);
    for rel in crossing_relations(rs, ideal)? {
        let quad = [rel.pair1.0, rel.pair1.1, rel.pair2.0, rel.pair2.1];
        let is_minmax = |p: (usize, usize)| {
            let (lo, hi) = if std_leq(c(p.0), c(p.1)) { (p.0, p.1) } else { (p.1, p.0) };
            quad.iter().all(|&q| std_leq(c(lo), c(q)) && std_leq(c(q), c(hi)))
        };
        minmax.check(is_minmax(rel.pair1) || is_minmax(rel.pair2), || format!("{rel:?}"));
        for (b, g) in oriented(&rel) {
            if b.0 == b.1 {
                continue;
            }
            for bi in [b.0, b.1] {
                for gj in [g.0, g.1] {
                    let ok = rs.inner(c(bi), c(gj)) > 0 && rs.is_root(&sub(c(bi), c(gj)));
                    positive.check(ok, || format!("{rel:?}: β={bi} γ={gj}"));
                }
            }
            let exempt = !rs.is_long(c(b.0))
                && !rs.is_long(c(b.1))
                && rs.len2(c(g.0)) != rs.len2(c(g.1));
            if !exempt {
                ortho.check(rs.inner(c(b.0), c(b.1)) == 0, || format!("{rel:?}"));
            }
        }
    }
    Ok(vec![positive, minmax, ortho])
}

/// Raising pairs through a common middle pair are nested, and middle pairs between a
/// common raising pair are nested with at most one incomparable.
pub fn nested_pairs(rs: &RootSystem, ideal: &RootIdeal) -> Vec<LawReport> {
    let mut raising = LawReport::new("raising_pairs_nested");
    let mut middle = LawReport::new("middle_pairs_nested");
    let c = |i: usize| rs.coeffs(i);
    let lt = |a: usize, b: usize| std_lt(c(a), c(b));
    let root_diff = |a: usize, b: usize| rs.is_root(&sub(c(a), c(b)));
    let m = ideal.members();
    let mut configs: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for &b1 in m {
        for &b2 in m {
            for w in rs.middle_pairs(b1, b2) {
                configs.push(((b1, b2), w));
            }
        }
    }
    for (i, &(r, w)) in configs.iter().enumerate() {
        for &(r2, w2) in &configs[i + 1..] {
            if w == w2 {
                let ok = ((lt(r.0, r2.0) && lt(r2.1, r.1)) || (lt(r2.0, r.0) && lt(r.1, r2.1)))
                    && root_diff(r.0, r2.0)
                    && root_diff(r.1, r2.1);
                raising.check(ok, || format!("through {w:?}: {r:?} and {r2:?}"));
            }
            if r == r2 {
                let all_diff = [w.0, w.1].iter().all(|&g| [w2.0, w2.1].iter().all(|&h| root_diff(g, h)));
                let between = |outer: (usize, usize), inner: (usize, usize)| {
                    [(outer.0, outer.1), (outer.1, outer.0)].iter().any(|&(lo, hi)| {
                        [inner.0, inner.1].iter().all(|&g| lt(lo, g) && lt(g, hi))
                    })
                };
                let ok = all_diff && (between(w, w2) || between(w2, w));
                middle.check(ok, || format!("between {r:?}: {w:?} and {w2:?}"));
            }
        }
    }
    for &b1 in m {
        for &b2 in m {
            let pairs = rs.middle_pairs(b1, b2);
            if pairs.is_empty() {
                continue;
            }
            let incomparable = pairs
                .iter()
                .filter(|&&(g1, g2)| g1 != g2 && !std_leq(c(g1), c(g2)) && !std_leq(c(g2), c(g1)))
                .count();
            middle.check(incomparable <= 1, || format!("{incomparable} incomparable middle pairs in ({b1}, {b2})"));
        }
    }
    vec![raising, middle]
}

/// Lengths in a configuration `β1 < {γ1, γ2} < β2` with `x = β2 − γ1`, `y = β2 − γ2`.
pub fn crossing_lengths(rs: &RootSystem, ideal: &RootIdeal) -> Vec<LawReport> {
    let mut long_x = LawReport::new("long_difference_forces_long");
    let mut short = LawReport::new("short_member_forces_short_sides");
    let c = |i: usize| rs.coeffs(i);
    let m = ideal.members();
    for &b1 in m {
        for &b2 in m {
            for (p, q) in rs.middle_pairs(b1, b2) {
                for (g1, g2) in [(p, q), (q, p)] {
                    let x = sub(c(b2), c(g1));
                    let y = sub(c(b2), c(g2));
                    if !rs.is_root(&x) || !rs.is_root(&y) {
                        long_x.check(false, || format!("{b1} < {{{g1}, {g2}}} < {b2}: side not a root"));
                        continue;
                    }
                    let four = [b1, b2, g1, g2].map(|i| rs.is_long(c(i)));
                    if rs.is_long(&x) {
                        let ok = rs.is_long(&y) && four.iter().all(|&l| l);
                        long_x.check(ok, || format!("{b1} < {{{g1}, {g2}}} < {b2}"));
                    }
                    let any_short = !rs.is_long(&x) || !rs.is_long(&y) || four.iter().any(|&l| !l);
                    if any_short {
                        let sides = !rs.is_long(&x) && !rs.is_long(&y);
                        let ok = sides
                            && if g1 == g2 {
                                !four[2] && four[0] && four[1]
                            } else {
                                four.iter().filter(|&&l| l).count() <= 1
                            };
                        short.check(ok, || format!("{b1} < {{{g1}, {g2}}} < {b2}"));
                    }
                }
            }
        }
    }
    vec![long_x, short]
}

/// Comparable members with a non-root difference are `≲`-related, and for related
/// members the difference is a root exactly outside the long / all-short cases.
pub fn difference_criterion(rs: &RootSystem, ideal: &RootIdeal) -> Vec<LawReport> {
    let mut forced = LawReport::new("nonroot_difference_forces_lesssim");
    let mut mixed = LawReport::new("mixed_middle_pair_short_difference");
    let mut iff = LawReport::new("difference_criterion");
    let c = |i: usize| rs.coeffs(i);
    let m = ideal.members();
    for &b1 in m {
        for &b2 in m {
            if !std_lt(c(b1), c(b2)) {
                continue;
            }
            let d = sub(c(b2), c(b1));
            let pairs = rs.middle_pairs(b1, b2);
            if !rs.is_root(&d) {
                forced.check(!pairs.is_empty(), || format!("{b1} < {b2}"));
            }
            if pairs.is_empty() {
                continue;
            }
            let both_short = !rs.is_long(c(b1)) && !rs.is_long(c(b2));
            let has_mixed = pairs.iter().any(|&(g1, g2)| rs.is_long(c(g1)) != rs.is_long(c(g2)));
            if both_short && has_mixed {
                mixed.check(rs.is_root(&d) && !rs.is_long(&d), || format!("{b1} ≲ {b2}"));
            }
            iff.check(!rs.is_root(&d) == difference_should_vanish(rs, b1, b2), || format!("{b1} ≲ {b2}"));
        }
    }
    vec![forced, mixed, iff]
}

/// All laws that concern a root system alone.
pub fn root_laws(rs: &RootSystem) -> Vec<LawReport> {
    vec![triple_sums(rs), summable_pairs(rs)]
}

/// All laws that concern one abelian ideal.
pub fn ideal_laws(rs: &RootSystem, ideal: &RootIdeal) -> Result<Vec<LawReport>> {
    let mut out = abelian_differences(rs, ideal);
    out.extend(crossing_pairs(rs, ideal)?);
    out.extend(nested_pairs(rs, ideal));
    out.extend(crossing_lengths(rs, ideal));
    out.extend(difference_criterion(rs, ideal));
    Ok(out)
}
