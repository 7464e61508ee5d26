//! Independent reference computations used to check the library.
//!
//! Mutation is done here on the full `2n x 2n` exchange matrix of the
//! framed quiver with plain `i64` arithmetic and the symmetric formula
//! `b' = b + (|b_ik| b_kj + b_ik |b_kj|) / 2`, rather than the library's
//! principal-part/c-matrix split. Hom spaces between representations are
//! found by solving the morphism equations over the rationals.

#![allow(dead_code)]

use greenseq_core::Quiver;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Mat = Vec<Vec<i64>>;

pub fn exchange_rows(q: &Quiver) -> Mat {
    let n = q.n();
    (1..=n)
        .map(|i| (1..=n).map(|j| q.entry(i, j).to_i64().unwrap()).collect())
        .collect()
}

/// Mutation at 0-based `k` of a skew-symmetric integer matrix.
pub fn mutate(b: &Mat, k: usize) -> Mat {
    let m = b.len();
    let mut out = b.clone();
    for i in 0..m {
        for j in 0..m {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// Framed exchange matrix: vertices `0..n` mutable, `n..2n` frozen, one
/// arrow `i -> i'`.
pub fn framed(b: &Mat) -> Mat {
    let n = b.len();
    let mut f = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            f[i][j] = b[i][j];
        }
        f[i][n + i] = 1;
        f[n + i][i] = -1;
    }
    f
}

pub fn c_vector(f: &Mat, i: usize) -> Vec<i64> {
    let n = f.len() / 2;
    f[i][n..].to_vec()
}

pub fn is_green(f: &Mat, i: usize) -> bool {
    c_vector(f, i).iter().all(|&x| x >= 0)
}

pub fn is_red(f: &Mat, i: usize) -> bool {
    c_vector(f, i).iter().all(|&x| x <= 0)
}

/// Replays a 1-based sequence on the framed quiver; returns the c-vector
/// of every mutated vertex (before its mutation) and the final matrix.
pub fn replay(b: &Mat, seq: &[usize]) -> (Vec<Vec<i64>>, Mat) {
    let mut f = framed(b);
    let mut cs = Vec::new();
    for &k in seq {
        cs.push(c_vector(&f, k - 1));
        f = mutate(&f, k - 1);
    }
    (cs, f)
}

pub fn is_mgs(b: &Mat, seq: &[usize]) -> bool {
    let n = b.len();
    let mut f = framed(b);
    for &k in seq {
        if !is_green(&f, k - 1) {
            return false;
        }
        f = mutate(&f, k - 1);
    }
    (0..n).all(|i| is_red(&f, i))
}

/// Every maximal green sequence of length at most `max_len` by plain
/// exhaustive recursion, in lexicographic order, plus whether some green
/// path was still open at the bound.
pub fn all_mgs(b: &Mat, max_len: usize) -> (Vec<Vec<usize>>, bool) {
    fn go(f: &Mat, n: usize, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cut: &mut bool) {
        let green: Vec<usize> = (0..n).filter(|&i| is_green(f, i)).collect();
        if green.is_empty() {
            out.push(path.clone());
            return;
        }
        if path.len() == max_len {
            *cut = true;
            return;
        }
        for k in green {
            path.push(k + 1);
            go(&mutate(f, k), n, max_len, path, out, cut);
            path.pop();
        }
    }
    let mut out = Vec::new();
    let mut cut = false;
    go(&framed(b), b.len(), max_len, &mut Vec::new(), &mut out, &mut cut);
    (out, cut)
}

/// Random acyclic quiver on `n` vertices with multiplicities in `0..=max_mult`,
/// with vertex labels shuffled so sources are not always small.
pub fn random_acyclic<R: Rng>(rng: &mut R, n: usize, max_mult: i64) -> Mat {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = vec![vec![0; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let m = rng.gen_range(0..=max_mult);
            let (i, j) = (order[x], order[y]);
            b[i][j] = m;
            b[j][i] = -m;
        }
    }
    b
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize, max_mult: i64) -> Mat {
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let m = rng.gen_range(-max_mult..=max_mult);
            b[i][j] = m;
            b[j][i] = -m;
        }
    }
    b
}

pub fn quiver(b: &Mat) -> Quiver {
    Quiver::from_rows(b).unwrap()
}

/// All topological orders (sources first) of an acyclic quiver.
pub fn topological_orders(b: &Mat) -> Vec<Vec<usize>> {
    fn go(b: &Mat, used: &mut Vec<bool>, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = b.len();
        if path.len() == n {
            out.push(path.clone());
            return;
        }
        for v in 0..n {
            // v is available once every vertex with an arrow into v is used.
            if !used[v] && (0..n).all(|u| used[u] || b[u][v] <= 0) {
                used[v] = true;
                path.push(v + 1);
                go(b, used, path, out);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(b, &mut vec![false; b.len()], &mut Vec::new(), &mut out);
    out
}

/// A representation of the quiver `n -> n-1 -> ... -> 1`: spaces of
/// dimension `dims[i]` and maps `maps[i]: V_{i+2} -> V_{i+1}` as
/// `dims[i] x dims[i+1]` matrices (0-based storage).
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

/// The interval representation on `a..=b` (1-based) with identity maps.
pub fn interval_rep(a: usize, b: usize, n: usize) -> Rep {
    let dims: Vec<usize> = (1..=n).map(|i| usize::from(a <= i && i <= b)).collect();
    let maps = (0..n - 1)
        .map(|i| {
            let (r, c) = (dims[i], dims[i + 1]);
            let mut m = vec![vec![0; c]; r];
            if r == 1 && c == 1 {
                m[0][0] = 1;
            }
            m
        })
        .collect();
    Rep { dims, maps }
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let d = &factor * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim Hom(v, w)`: unknowns are the entries of `f_i: V_i -> W_i`, subject
/// to `f_i A_i = B_i f_{i+1}` for every arrow.
pub fn hom_dim(v: &Rep, w: &Rep) -> usize {
    let n = v.dims.len();
    let mut offset = vec![0; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + w.dims[i] * v.dims[i];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return 0;
    }
    // f_i entry (r, c) with r < dim W_i, c < dim V_i.
    let var = |i: usize, r: usize, c: usize| offset[i] + r * v.dims[i] + c;
    let mut rows = Vec::new();
    for i in 0..n - 1 {
        let (a, b) = (&v.maps[i], &w.maps[i]);
        for r in 0..w.dims[i] {
            for c in 0..v.dims[i + 1] {
                let mut row = vec![BigRational::zero(); unknowns];
                for s in 0..v.dims[i] {
                    row[var(i, r, s)] += BigRational::from_integer(a[s][c].into());
                }
                for s in 0..w.dims[i + 1] {
                    row[var(i + 1, s, c)] -= BigRational::from_integer(b[r][s].into());
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    unknowns - rank(rows)
}

pub fn hom_nonzero_oracle(src: (usize, usize), tgt: (usize, usize), n: usize) -> bool {
    hom_dim(&interval_rep(src.0, src.1, n), &interval_rep(tgt.0, tgt.1, n)) > 0
}
