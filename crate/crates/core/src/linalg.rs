//! Small dense exact linear algebra over `Rat` and machine integers.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Everything here is sized for
//! desk-scale fans (n ≤ 8, a few hundred columns at most for graded pieces).

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;

/// Builds the n×k matrix whose columns are `cols`.
pub fn from_columns(cols: &[Vec<Rat>]) -> RatMatrix {
    let k = cols.len();
    let n = cols.first().map_or(0, Vec::len);
    (0..n).map(|r| (0..k).map(|c| cols[c][r].clone()).collect()).collect()
}

pub fn from_int_columns(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = cols.len();
    let n = cols.first().map_or(0, Vec::len);
    (0..n).map(|r| (0..k).map(|c| cols[c][r]).collect()).collect()
}

pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut result = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            result = -result;
        }
        let p = a[col][col].clone();
        result *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    result
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_int(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(piv) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn inverse(m: &[Vec<Rat>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (pivots, _) = rref_in_place(&mut a, n);
    if pivots.len() < n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduced row echelon form restricted to the first `ncols` columns for
/// pivot selection. Returns pivot columns and the rank.
pub fn rref_in_place(a: &mut RatMatrix, ncols: usize) -> (Vec<usize>, usize) {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][c].recip();
        for j in c..width {
            let t = &a[r][j] * &inv;
            a[r][j] = t;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..width {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    (pivots, rank)
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    let w = a.first().map_or(0, Vec::len);
    rref_in_place(&mut a, w).1
}

pub fn rank_int(m: &[Vec<i64>]) -> usize {
    let a: RatMatrix = m
        .iter()
        .map(|r| r.iter().map(|&x| crate::rational::rat(x)).collect())
        .collect();
    rank(&a)
}

/// Solves `gens · coeffs = x` when the generators are linearly independent;
/// `None` if `x` is outside their span.
pub fn coefficients_in_span(gens: &[Vec<Rat>], x: &[Rat]) -> Option<Vec<Rat>> {
    let k = gens.len();
    let n = x.len();
    let mut a: RatMatrix = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = gens.iter().map(|g| g[r].clone()).collect();
            row.push(x[r].clone());
            row
        })
        .collect();
    let (pivots, _) = rref_in_place(&mut a, k);
    // Inconsistent if any row has zero coefficients but nonzero rhs.
    for row in &a {
        if row[..k].iter().all(Zero::is_zero) && !row[k].is_zero() {
            return None;
        }
    }
    if pivots.len() < k {
        return None;
    }
    let mut out = vec![Rat::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = a[r][k].clone();
    }
    Some(out)
}

pub fn mat_vec(m: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of all maximal (k×k) minors of a k×n integer matrix given by its
/// k rows. Zero means the rows are dependent; one means they extend to a
/// basis of ℤⁿ.
pub fn maximal_minor_gcd(rows: &[Vec<i64>]) -> i128 {
    let k = rows.len();
    if k == 0 {
        return 1;
    }
    let n = rows[0].len();
    if k > n {
        return 0;
    }
    let mut g: i128 = 0;
    for cols in combinations(n, k) {
        let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&det_int(&sub));
        if g == 1 {
            return 1;
        }
    }
    g.abs()
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}
