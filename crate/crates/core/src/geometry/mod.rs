//! Exact geometry: determinants, separating hyperplanes, cone membership and lattice
//! volumes of point configurations.

pub mod linalg;
pub mod lp;
pub mod placing;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use linalg::{coords_in_basis, primitive, RationalMatrix};
use lp::{Feasibility, FarkasCertificate, LinearProgram, Relation};

pub type Rational = num_rational::BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rational], b: &[i64]) -> Rational {
    a.iter().zip(b).filter(|(_, y)| **y != 0).map(|(x, &y)| x * rat(y)).sum()
}

fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `{x : normal . x = offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn linear(normal: Vec<Rational>) -> Self {
        Hyperplane { normal, offset: Rational::zero() }
    }

    /// `normal . x - offset`.
    pub fn eval(&self, x: &[i64]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }

    pub fn eval_q(&self, x: &[Rational]) -> Rational {
        dot_q(&self.normal, x) - &self.offset
    }

    /// Sign of `eval`: -1, 0 or 1.
    pub fn side(&self, x: &[i64]) -> i32 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.eval(x).is_zero()
    }

    /// Same hyperplane with a coprime integer normal.
    pub fn normalized(&self) -> Self {
        let mut v = self.normal.clone();
        v.push(self.offset.clone());
        let p = primitive(&v);
        let offset = Rational::from_integer(p[p.len() - 1].clone());
        let normal = p[..p.len() - 1].iter().map(|x| Rational::from_integer(x.clone())).collect();
        Hyperplane { normal, offset }
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Hyperplane", 2)?;
        let normal: Vec<String> = self.normal.iter().map(crate::rational_string).collect();
        st.serialize_field("normal", &normal)?;
        st.serialize_field("offset", &crate::rational_string(&self.offset))?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub enum Separation {
    Found(Hyperplane),
    Infeasible(FarkasCertificate),
    /// Both sets equal and no proper hyperplane contains them.
    NoProperHyperplane,
}

/// Hyperplane with `R1 \ R2` strictly on the negative side, `R2 \ R1` strictly on the
/// positive side and `R1 ∩ R2` on it. Membership is by exact equality of points.
pub fn separate(r1: &[Vec<Rational>], r2: &[Vec<Rational>]) -> Separation {
    let n = r1.iter().chain(r2).next().map_or(0, Vec::len);
    let only1: Vec<&Vec<Rational>> = r1.iter().filter(|p| !r2.contains(p)).collect();
    let only2: Vec<&Vec<Rational>> = r2.iter().filter(|p| !r1.contains(p)).collect();
    let common: Vec<&Vec<Rational>> = r1.iter().filter(|p| r2.contains(p)).collect();
    if only1.is_empty() && only2.is_empty() {
        let rows: Vec<Vec<Rational>> = common
            .iter()
            .map(|p| p.iter().cloned().chain(std::iter::once(-Rational::one())).collect())
            .collect();
        let kernel = if rows.is_empty() {
            RationalMatrix::identity(n + 1).to_rows()
        } else {
            RationalMatrix::from_rows(&rows).nullspace()
        };
        return match kernel.into_iter().find(|v| v[..n].iter().any(|x| !x.is_zero())) {
            Some(v) => Separation::Found(Hyperplane { normal: v[..n].to_vec(), offset: v[n].clone() }),
            None => Separation::NoProperHyperplane,
        };
    }
    let mut lp = LinearProgram::new(vec![true; n + 1]);
    let row = |p: &Vec<Rational>| -> Vec<Rational> {
        p.iter().cloned().chain(std::iter::once(-Rational::one())).collect()
    };
    for p in &only1 {
        lp.add(row(p), Relation::Le, -Rational::one());
    }
    for p in &only2 {
        lp.add(row(p), Relation::Ge, Rational::one());
    }
    for p in &common {
        lp.add(row(p), Relation::Eq, Rational::zero());
    }
    match lp.solve() {
        Feasibility::Feasible(x) => {
            let h = Hyperplane { normal: x[..n].to_vec(), offset: x[n].clone() };
            debug_assert!(separates(&h, r1, r2));
            Separation::Found(h)
        }
        Feasibility::Infeasible(c) => Separation::Infeasible(c),
    }
}

pub fn separating_hyperplane(r1: &[Vec<Rational>], r2: &[Vec<Rational>]) -> Option<Hyperplane> {
    match separate(r1, r2) {
        Separation::Found(h) => Some(h),
        _ => None,
    }
}

/// Checks a claimed separating hyperplane by substitution, including that its contact
/// set within `R1 ∪ R2` is exactly `R1 ∩ R2`.
pub fn separates(h: &Hyperplane, r1: &[Vec<Rational>], r2: &[Vec<Rational>]) -> bool {
    if h.normal.iter().all(Zero::is_zero) {
        return false;
    }
    let in1 = |p: &Vec<Rational>| r1.contains(p);
    let in2 = |p: &Vec<Rational>| r2.contains(p);
    r1.iter().chain(r2).all(|p| {
        let v = h.eval_q(p);
        match (in1(p), in2(p)) {
            (true, true) => v.is_zero(),
            (true, false) => v.is_negative(),
            _ => v.is_positive(),
        }
    })
}

#[derive(Clone, Debug)]
pub enum ConeMembership {
    /// Nonnegative coefficients expressing the point.
    Member(Vec<Rational>),
    NotMember(FarkasCertificate),
}

/// Exact membership of `x` in the cone spanned by `gens`.
pub fn cone_membership(x: &[Rational], gens: &[Vec<Rational>]) -> ConeMembership {
    let mut lp = LinearProgram::new(vec![false; gens.len()]);
    for j in 0..x.len() {
        lp.add(gens.iter().map(|g| g[j].clone()).collect(), Relation::Eq, x[j].clone());
    }
    match lp.solve() {
        Feasibility::Feasible(c) => ConeMembership::Member(c),
        Feasibility::Infeasible(c) => ConeMembership::NotMember(c),
    }
}

pub fn in_cone(x: &[Rational], gens: &[Vec<Rational>]) -> bool {
    matches!(cone_membership(x, gens), ConeMembership::Member(_))
}

/// Normalized volume of the convex hull of `points`, which lie on a common affine
/// hyperplane missing the origin, measured in the lattice spanned by `lattice_basis`
/// intersected with that hyperplane. A unimodular simplex has volume 1.
pub fn oracle_volume(points: &[Vec<i64>], lattice_basis: &[Vec<i64>]) -> Result<u64> {
    let n = lattice_basis.len();
    if n == 0 || points.is_empty() {
        return Err(Error::DegenerateInput("empty input".into()));
    }
    if linalg::int_rank(lattice_basis) < n {
        return Err(Error::DegenerateInput("lattice basis is singular".into()));
    }
    let mut coords = Vec::with_capacity(points.len());
    for p in points {
        let c = coords_in_basis(lattice_basis, p)
            .ok_or_else(|| Error::DegenerateInput("point outside the lattice span".into()))?;
        if c.iter().any(|q| !q.is_integer()) {
            return Err(Error::DegenerateInput("point outside the lattice".into()));
        }
        coords.push(c.iter().map(|q| q.to_integer().to_i64().expect("small coordinate")).collect::<Vec<i64>>());
    }
    let diffs: Vec<Vec<i64>> = coords[1..]
        .iter()
        .map(|p| p.iter().zip(&coords[0]).map(|(a, b)| a - b).collect())
        .collect();
    let normal = if diffs.is_empty() {
        if n != 1 {
            return Err(Error::DegenerateInput("points do not span".into()));
        }
        vec![Rational::one()]
    } else {
        let kernel = RationalMatrix::from_int_rows(&diffs).nullspace();
        if kernel.len() != 1 {
            return Err(Error::DegenerateInput("points are not full-dimensional in a hyperplane".into()));
        }
        kernel[0].clone()
    };
    let f = primitive(&normal);
    let height: BigInt = f.iter().zip(&coords[0]).map(|(a, &b)| a * BigInt::from(b)).sum::<BigInt>().abs();
    if height.is_zero() {
        return Err(Error::DegenerateInput("hyperplane passes through the origin".into()));
    }
    let t = placing::placing_triangulation(&coords)?;
    let total = t.total();
    if total != t.total_by_cones() {
        return Err(Error::CertificationFailure("placing volume disagrees with cone splitting".into()));
    }
    let (vol, rem) = total.div_rem(&height);
    if !rem.is_zero() {
        return Err(Error::CertificationFailure("volume is not integral".into()));
    }
    vol.to_u64().ok_or_else(|| Error::CertificationFailure("volume overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_of_lattice_triangle() {
        // Standard triangle lifted to height 2 in the lattice 2Z x Z x Z.
        let basis = vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let pts = vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 1], vec![2, 1, 0]];
        // In lattice coordinates: x + y + z = 1 except (0,1,1) and (1,1,0), which sit at 2.
        assert!(oracle_volume(&pts, &basis).is_err());
        let pts = vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(oracle_volume(&pts, &basis).unwrap(), 1);
    }

    #[test]
    fn volume_respects_hyperplane_height() {
        let basis = vec![vec![1, 0], vec![0, 1]];
        let pts = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        assert_eq!(oracle_volume(&pts, &basis).unwrap(), 2);
        assert_eq!(oracle_volume(&[vec![3]], &[vec![1]]).unwrap(), 1);
    }

    #[test]
    fn separation_of_adjacent_triangles() {
        let p = |a: i64, b: i64| rat_vec(&[a, b, 1]);
        let r1 = vec![p(0, 0), p(1, 0), p(0, 1)];
        let r2 = vec![p(1, 0), p(0, 1), p(1, 1)];
        let h = separating_hyperplane(&r1, &r2).unwrap();
        assert!(separates(&h, &r1, &r2));
        let r3 = vec![p(0, 0), p(1, 1), p(1, 0)];
        assert!(separating_hyperplane(&r1, &r3).is_none());
        assert!(separating_hyperplane(&r1, &r1).is_some());
    }

    #[test]
    fn cone_membership_certificates() {
        let gens = vec![rat_vec(&[1, 0]), rat_vec(&[1, 1])];
        assert!(in_cone(&rat_vec(&[3, 1]), &gens));
        assert!(!in_cone(&rat_vec(&[0, 1]), &gens));
        assert!(in_cone(&rat_vec(&[0, 0]), &[]));
    }
}
