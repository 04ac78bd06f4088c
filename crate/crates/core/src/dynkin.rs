//! Standard Cartan data in Bourbaki numbering and identification of Cartan matrices.
//!
//! Cartan matrices follow Kac: `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`. The symmetrized
//! form is scaled so that short roots have squared length 2.

use crate::rootsys::Family;

/// Gram matrix `(α_i, α_j)` of the simple roots.
pub fn gram(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let n = rank;
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, a: usize, b: usize, v: i64| {
        g[a][b] = v;
        g[b][a] = v;
    };
    match family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 1..n {
                link(&mut g, i - 1, i, -1);
            }
        }
        Family::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 2 } else { 4 };
            }
            for i in 1..n {
                link(&mut g, i - 1, i, -2);
            }
        }
        Family::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
            }
            for i in 1..n {
                link(&mut g, i - 1, i, if i + 1 == n { -2 } else { -1 });
            }
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 1..n - 1 {
                link(&mut g, i - 1, i, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 3..n {
                link(&mut g, i - 1, i, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

/// Cartan matrix of a Gram matrix.
pub fn cartan_from_gram(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    g.iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|v| 2 * v / g[i][i]).collect())
        .collect()
}

pub fn cartan(family: Family, rank: usize) -> Vec<Vec<i64>> {
    cartan_from_gram(&gram(family, rank))
}

fn signature(c: &[Vec<i64>], i: usize) -> Vec<(i64, i64)> {
    let mut s: Vec<(i64, i64)> = (0..c.len())
        .filter(|&j| j != i && c[i][j] != 0)
        .map(|j| (c[i][j], c[j][i]))
        .collect();
    s.sort_unstable();
    s
}

/// All bijections `p` with `source[p[i]][p[j]] == target[i][j]`.
pub fn isomorphisms(target: &[Vec<i64>], source: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = target.len();
    let mut out = Vec::new();
    if source.len() != n {
        return out;
    }
    let ts: Vec<_> = (0..n).map(|i| signature(target, i)).collect();
    let ss: Vec<_> = (0..n).map(|i| signature(source, i)).collect();
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        target: &[Vec<i64>],
        source: &[Vec<i64>],
        ts: &[Vec<(i64, i64)>],
        ss: &[Vec<(i64, i64)>],
        p: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = target.len();
        if i == n {
            out.push(p.clone());
            return;
        }
        for s in 0..n {
            if used[s] || ts[i] != ss[s] || target[i][i] != source[s][s] {
                continue;
            }
            if (0..i).all(|j| source[s][p[j]] == target[i][j] && source[p[j]][s] == target[j][i]) {
                p[i] = s;
                used[s] = true;
                rec(i + 1, target, source, ts, ss, p, used, out);
                used[s] = false;
            }
        }
    }
    rec(0, target, source, &ts, &ss, &mut p, &mut used, &mut out);
    out
}

/// Legal families for a rank, in the tie-breaking order A, B, C, D, E, F, G.
pub fn candidates(rank: usize) -> Vec<Family> {
    Family::ALL.iter().copied().filter(|f| f.rank_is_legal(rank)).collect()
}

/// Identifies a connected Cartan matrix. Returns the type and all labelings, each
/// mapping standard node `i` to input node `p[i]`.
pub fn identify(c: &[Vec<i64>]) -> Option<(Family, usize, Vec<Vec<usize>>)> {
    let n = c.len();
    if n == 0 {
        return None;
    }
    for family in candidates(n) {
        let isos = isomorphisms(&cartan(family, n), c);
        if !isos.is_empty() {
            return Some((family, n, isos));
        }
    }
    None
}

/// Images of node `k` (1-based) under diagram automorphisms, sorted.
pub fn automorphism_orbit(family: Family, rank: usize, k: usize) -> Vec<usize> {
    let c = cartan(family, rank);
    let mut orbit: Vec<usize> = isomorphisms(&c, &c).iter().map(|p| p[k - 1] + 1).collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_conventions() {
        assert_eq!(cartan(Family::B, 2), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan(Family::C, 3)[2], vec![0, -1, 2]);
        assert_eq!(cartan(Family::C, 3)[1], vec![-1, 2, -2]);
        assert_eq!(cartan(Family::G, 2), vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(cartan(Family::F, 4)[1], vec![-1, 2, -1, 0]);
        assert_eq!(cartan(Family::F, 4)[2], vec![0, -2, 2, -1]);
    }

    #[test]
    fn b2_is_preferred_over_c2() {
        let (f, n, _) = identify(&cartan(Family::C, 2)).unwrap();
        assert_eq!((f, n), (Family::B, 2));
    }

    #[test]
    fn orbits() {
        assert_eq!(automorphism_orbit(Family::D, 4, 1), vec![1, 3, 4]);
        assert_eq!(automorphism_orbit(Family::D, 5, 4), vec![4, 5]);
        assert_eq!(automorphism_orbit(Family::A, 5, 2), vec![2, 4]);
        assert_eq!(automorphism_orbit(Family::E, 6, 1), vec![1, 6]);
        assert_eq!(automorphism_orbit(Family::E, 7, 7), vec![7]);
    }

    #[test]
    fn relabeled_e6_is_found() {
        let c = cartan(Family::E, 6);
        let perm = [3, 0, 5, 1, 4, 2];
        let mut d = vec![vec![0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                d[perm[i]][perm[j]] = c[i][j];
            }
        }
        let (f, n, isos) = identify(&d).unwrap();
        assert_eq!((f, n), (Family::E, 6));
        assert!(isos.iter().any(|p| p == &perm));
        assert_eq!(isos.len(), 2);
    }
}
