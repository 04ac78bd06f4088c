//! Placing (beneath-beyond) triangulation of integer points in homogeneous form.
//!
//! Points are vectors in `Z^n` lying on one affine hyperplane that misses the origin,
//! so orientation tests are plain `n x n` determinants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::linalg::{int_det, int_det_sign, int_rank};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PlacingTriangulation {
    pub points: Vec<Vec<i64>>,
    /// Maximal simplices as sorted point indices.
    pub simplices: Vec<Vec<usize>>,
    /// Boundary faces of the final hull as sorted point indices.
    pub boundary: Vec<Vec<usize>>,
    /// Lexicographically least point, the apex used for the cone-splitting count.
    pub apex: usize,
}

fn det_of(points: &[Vec<i64>], idx: &[usize], extra: usize) -> Vec<Vec<i64>> {
    idx.iter().chain(std::iter::once(&extra)).map(|&i| points[i].clone()).collect()
}

pub fn placing_triangulation(points: &[Vec<i64>]) -> Result<PlacingTriangulation> {
    let n = points.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::DegenerateInput("no points".into()));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| points[*a] == points[*b]);

    let mut chosen: Vec<usize> = Vec::new();
    for &i in &order {
        if chosen.len() == n {
            break;
        }
        let mut rows: Vec<Vec<i64>> = chosen.iter().map(|&c| points[c].clone()).collect();
        rows.push(points[i].clone());
        if int_rank(&rows) == rows.len() {
            chosen.push(i);
        }
    }
    if chosen.len() < n {
        return Err(Error::DegenerateInput("points do not span".into()));
    }
    let apex = order[0];
    let mut first = chosen.clone();
    first.sort_unstable();
    let mut simplices = vec![first.clone()];
    // facet -> (opposite vertex, orientation of the opposite vertex)
    let mut boundary: BTreeMap<Vec<usize>, (usize, i32)> = BTreeMap::new();
    for (pos, &v) in first.iter().enumerate() {
        let mut f = first.clone();
        f.remove(pos);
        let s = int_det_sign(&det_of(points, &f, v));
        boundary.insert(f, (v, s));
    }
    for &q in &order {
        if chosen.contains(&q) {
            continue;
        }
        let visible: Vec<Vec<usize>> = boundary
            .iter()
            .filter(|(f, (_, s))| {
                let sq = int_det_sign(&det_of(points, f, q));
                sq != 0 && sq != *s
            })
            .map(|(f, _)| f.clone())
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut fresh: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
        for f in &visible {
            boundary.remove(f);
            let mut simplex = f.clone();
            simplex.push(q);
            simplex.sort_unstable();
            simplices.push(simplex);
            for (pos, &v) in f.iter().enumerate() {
                let mut nf = f.clone();
                nf.remove(pos);
                nf.push(q);
                nf.sort_unstable();
                fresh.entry(nf).or_insert((v, 0)).1 += 1;
            }
        }
        for (nf, (v, count)) in fresh {
            if count == 1 {
                let s = int_det_sign(&det_of(points, &nf, v));
                boundary.insert(nf, (v, s));
            }
        }
    }
    simplices.sort();
    Ok(PlacingTriangulation {
        points: points.to_vec(),
        simplices,
        boundary: boundary.into_keys().collect(),
        apex,
    })
}

impl PlacingTriangulation {
    /// Absolute determinant of each simplex.
    pub fn simplex_volumes(&self) -> Vec<BigInt> {
        self.simplices
            .iter()
            .map(|s| {
                let rows: Vec<Vec<i64>> = s.iter().map(|&i| self.points[i].clone()).collect();
                int_det(&rows).abs()
            })
            .collect()
    }

    pub fn total(&self) -> BigInt {
        self.simplex_volumes().into_iter().sum()
    }

    /// Total recomputed by coning every boundary face from the apex.
    pub fn total_by_cones(&self) -> BigInt {
        self.boundary
            .iter()
            .map(|f| int_det(&det_of(&self.points, f, self.apex)).abs())
            .sum()
    }
}
