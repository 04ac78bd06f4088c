//! Exact linear algebra: fraction-free elimination over checked `i128` and `BigInt`,
//! and Gauss-Jordan over rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Integer ring with fallible arithmetic, so the fast path can bail out on overflow.
pub trait ExactRing: Clone + PartialEq + Sized {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_nil(&self) -> bool;
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self>;
    fn exact_div(&self, d: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl ExactRing for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn ring_one() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    // self * a - b * c
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self> {
        self.checked_mul(*a)?.checked_sub(b.checked_mul(*c)?)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        debug_assert_eq!(self % d, 0);
        self.checked_div(*d)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self> {
        Some(self * a - b * c)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Bareiss elimination on a copy of `m`. Returns the rank and, for square input, the
/// determinant. `None` means the ring overflowed.
pub fn bareiss<T: ExactRing>(mut m: Vec<Vec<T>>) -> Option<(usize, Option<T>)> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = T::ring_one();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_nil()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            negate = !negate;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = m[r][c].mul_sub(&m[rank][col], &m[r][col], &m[rank][c])?;
                m[r][c] = v.exact_div(&prev)?;
            }
            m[r][col] = T::ring_zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    let det = if rows == cols {
        if rank < rows {
            Some(T::ring_zero())
        } else if rows == 0 {
            Some(T::ring_one())
        } else {
            let d = m[rows - 1][cols - 1].clone();
            Some(if negate { d.neg()? } else { d })
        }
    } else {
        None
    };
    Some((rank, det))
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn to_i128(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect()
}

/// Rank and determinant of an integer matrix, exact.
pub fn int_rank_det(rows: &[Vec<i64>]) -> (usize, Option<BigInt>) {
    if let Some((r, d)) = bareiss(to_i128(rows)) {
        return (r, d.map(BigInt::from));
    }
    bareiss(to_big(rows)).expect("BigInt arithmetic does not overflow")
}

pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    int_rank_det(rows).0
}

/// Determinant of a square integer matrix.
pub fn int_det(rows: &[Vec<i64>]) -> BigInt {
    int_rank_det(rows).1.expect("square matrix")
}

/// Sign of the determinant of a square integer matrix.
pub fn int_det_sign(rows: &[Vec<i64>]) -> i32 {
    let d = int_det(rows);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RationalMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(&r)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n, vec![Rational::zero(); n * n]);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self::new(self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![Rational::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Self::new(self.rows, other.cols, data)
    }

    /// Rows scaled to integers, with the product of the scale factors.
    fn cleared(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let l = self.row(r).iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                scale *= &l;
                self.row(r).iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect();
        (rows, scale)
    }

    /// Rank, and the determinant when square.
    pub fn rank_det(&self) -> (usize, Option<Rational>) {
        let (rows, scale) = self.cleared();
        let (rank, det) = bareiss(rows).expect("BigInt arithmetic does not overflow");
        (rank, det.map(|d| Rational::new(d, scale)))
    }

    pub fn rank(&self) -> usize {
        self.rank_det().0
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for k in 0..m.cols {
                m.data.swap(p * m.cols + k, r * m.cols + k);
            }
            let inv = m.get(r, c).recip();
            for k in 0..m.cols {
                let v = m.get(r, k) * &inv;
                m.data[r * m.cols + k] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for k in 0..m.cols {
                    let v = m.get(i, k) - &f * m.get(r, k);
                    m.data[i * m.cols + k] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Vec::with_capacity(n * 2 * n);
        for r in 0..n {
            aug.extend(self.row(r).iter().cloned());
            aug.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
        }
        let (red, pivots) = Self::new(n, 2 * n, aug).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = (0..n).flat_map(|r| red.row(r)[n..].to_vec()).collect();
        Some(Self::new(n, n, data))
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Coordinates of `v` in the basis given by the rows of `basis`, if `v` lies in their span.
pub fn coords_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = v.len();
    // Solve sum_i x_i basis[i] = v: the system matrix is basis^T with v appended.
    let mut data = Vec::with_capacity(n * (k + 1));
    for j in 0..n {
        for b in basis {
            data.push(Rational::from_integer(b[j].into()));
        }
        data.push(Rational::from_integer(v[j].into()));
    }
    let (red, pivots) = RationalMatrix::new(n, k + 1, data).rref();
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| red.get(i, k).clone()).collect())
}

/// Integer vector on the same ray as `v`, with coprime entries.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
