//! Exact feasibility LP: dense tableau, phase 1 only, Bland's rule.
//!
//! The tableau runs over `Ratio<i128>` with checked arithmetic and is redone over
//! `BigRational` if anything overflows. Both outcomes carry a certificate that is
//! checked by substitution against the original constraints.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Feasibility problem over variables that are either free or nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

/// Multipliers `y`, one per constraint, proving infeasibility: `y_i >= 0` on `<=` rows,
/// `y_i <= 0` on `>=` rows, `c = y A` vanishes on free variables and is `>= 0` on the
/// others, and `y . b < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

impl LinearProgram {
    pub fn new(free: Vec<bool>) -> Self {
        LinearProgram { free, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn check_solution(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        if x.iter().zip(&self.free).any(|(v, &f)| !f && v.is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }

    pub fn check_farkas(&self, cert: &FarkasCertificate) -> bool {
        let y = &cert.multipliers;
        if y.len() != self.constraints.len() {
            return false;
        }
        for (c, yi) in self.constraints.iter().zip(y) {
            let ok = match c.relation {
                Relation::Le => !yi.is_negative(),
                Relation::Ge => !yi.is_positive(),
                Relation::Eq => true,
            };
            if !ok {
                return false;
            }
        }
        for j in 0..self.num_vars() {
            let cj: Rational = self.constraints.iter().zip(y).map(|(c, yi)| &c.coeffs[j] * yi).sum();
            if (self.free[j] && !cj.is_zero()) || cj.is_negative() {
                return false;
            }
        }
        let yb: Rational = self.constraints.iter().zip(y).map(|(c, yi)| &c.rhs * yi).sum();
        yb.is_negative()
    }

    /// Equality standard form `A z = b, z >= 0, b >= 0`, with the bookkeeping needed to
    /// map results back.
    fn standard_form(&self) -> StandardForm {
        let n = self.num_vars();
        let mut var_cols = Vec::with_capacity(n);
        let mut cols = 0;
        for &f in &self.free {
            var_cols.push((cols, if f { Some(cols + 1) } else { None }));
            cols += if f { 2 } else { 1 };
        }
        let slack_count = self.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let total = cols + slack_count;
        let mut a = Vec::with_capacity(self.constraints.len());
        let mut b = Vec::with_capacity(self.constraints.len());
        let mut flips = Vec::with_capacity(self.constraints.len());
        let mut slack = cols;
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); total];
            for (j, (pos, neg)) in var_cols.iter().enumerate() {
                row[*pos] = c.coeffs[j].clone();
                if let Some(neg) = neg {
                    row[*neg] = -c.coeffs[j].clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = c.rhs.clone();
            let flip = rhs.is_negative();
            if flip {
                row.iter_mut().for_each(|v| *v = -v.clone());
                rhs = -rhs;
            }
            a.push(row);
            b.push(rhs);
            flips.push(flip);
        }
        StandardForm { a, b, flips, var_cols, width: total }
    }

    pub fn solve(&self) -> Feasibility {
        let sf = self.standard_form();
        let width = sf.width;
        let outcome = phase_one::<Ratio<i128>>(&sf.a, &sf.b, width)
            .unwrap_or_else(|| phase_one::<Rational>(&sf.a, &sf.b, width).expect("BigRational does not overflow"));
        match outcome {
            PhaseOne::Feasible(z) => {
                let x = sf
                    .var_cols
                    .iter()
                    .map(|(pos, neg)| match neg {
                        Some(neg) => &z[*pos] - &z[*neg],
                        None => z[*pos].clone(),
                    })
                    .collect::<Vec<_>>();
                assert!(self.check_solution(&x), "simplex returned a point that fails substitution");
                Feasibility::Feasible(x)
            }
            PhaseOne::Infeasible(y) => {
                let multipliers = y
                    .into_iter()
                    .zip(&sf.flips)
                    .map(|(v, &flip)| if flip { v } else { -v })
                    .collect();
                let cert = FarkasCertificate { multipliers };
                assert!(self.check_farkas(&cert), "simplex returned an invalid Farkas certificate");
                Feasibility::Infeasible(cert)
            }
        }
    }
}

struct StandardForm {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    flips: Vec<bool>,
    var_cols: Vec<(usize, Option<usize>)>,
    width: usize,
}

enum PhaseOne {
    Feasible(Vec<Rational>),
    // y with A^T y <= 0 and b^T y > 0
    Infeasible(Vec<Rational>),
}

trait Field: Clone + PartialOrd + Zero + One {
    fn from_big(q: &Rational) -> Option<Self>;
    fn to_big(&self) -> Rational;
    fn sub_(&self, o: &Self) -> Option<Self>;
    fn mul_(&self, o: &Self) -> Option<Self>;
    fn div_(&self, o: &Self) -> Option<Self>;
}

impl Field for Ratio<i128> {
    fn from_big(q: &Rational) -> Option<Self> {
        let n: i128 = q.numer().try_into().ok()?;
        let d: i128 = q.denom().try_into().ok()?;
        Some(Ratio::new_raw(n, d))
    }
    fn to_big(&self) -> Rational {
        Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

impl Field for Rational {
    fn from_big(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn to_big(&self) -> Rational {
        self.clone()
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
}

/// Minimizes the sum of artificials. `None` on overflow.
fn phase_one<T: Field>(a: &[Vec<Rational>], b: &[Rational], nv: usize) -> Option<PhaseOne> {
    let m = a.len();
    let cols = nv + m;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs: Vec<T> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r = Vec::with_capacity(cols);
        for v in row {
            r.push(T::from_big(v)?);
        }
        r.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
        t.push(r);
        rhs.push(T::from_big(&b[i])?);
    }
    let mut cost = vec![T::zero(); cols];
    let mut neg_w = T::zero();
    for i in 0..m {
        for j in 0..nv {
            cost[j] = cost[j].sub_(&t[i][j])?;
        }
        neg_w = neg_w.sub_(&rhs[i])?;
    }
    let mut basis: Vec<usize> = (nv..cols).collect();
    let zero = T::zero();
    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j] < zero) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if t[i][enter] > zero {
                let ratio = rhs[i].div_(&t[i][enter])?;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, _) = leave.expect("phase 1 objective is bounded below");
        let piv = t[p][enter].clone();
        for v in t[p].iter_mut() {
            *v = v.div_(&piv)?;
        }
        rhs[p] = rhs[p].div_(&piv)?;
        for i in 0..m {
            if i == p || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for j in 0..cols {
                if !t[p][j].is_zero() {
                    t[i][j] = t[i][j].sub_(&f.mul_(&t[p][j])?)?;
                }
            }
            rhs[i] = rhs[i].sub_(&f.mul_(&rhs[p])?)?;
        }
        let f = cost[enter].clone();
        for j in 0..cols {
            if !t[p][j].is_zero() {
                cost[j] = cost[j].sub_(&f.mul_(&t[p][j])?)?;
            }
        }
        neg_w = neg_w.sub_(&f.mul_(&rhs[p])?)?;
        basis[p] = enter;
    }
    if neg_w.is_zero() {
        let mut z = vec![Rational::zero(); nv];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < nv {
                z[bv] = rhs[i].to_big();
            }
        }
        Some(PhaseOne::Feasible(z))
    } else {
        let y = (0..m).map(|i| Rational::one() - cost[nv + i].to_big()).collect();
        Some(PhaseOne::Infeasible(y))
    }
}
