//! Small exact integer linear algebra on character vectors.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::rational::gcd_all;
use crate::algebra::Rational;

/// Determinant of a square integer matrix (Bareiss elimination).
pub(crate) fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub(crate) fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Divides by the gcd of the coordinates; `None` for the zero vector.
pub(crate) fn primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return None;
    }
    Some(v.iter().map(|&x| x / g).collect())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Gcd of the maximal minors of the matrix whose columns are `vectors`
/// (each of length `d`, `vectors.len() <= d`): the index of the lattice
/// they span inside its saturation.
pub(crate) fn lattice_index(vectors: &[Vec<i64>], d: usize) -> BigInt {
    let r = vectors.len();
    let minors: Vec<BigInt> = subsets(d, r)
        .into_iter()
        .map(|rows| {
            let m: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&i| vectors.iter().map(|v| BigInt::from(v[i])).collect())
                .collect();
            det(&m).abs()
        })
        .collect();
    gcd_all(minors.iter())
}

/// Rank and pivot coordinates of the span of `rows`: projecting onto the
/// pivot coordinates is injective on the span.
pub(crate) fn rank_and_pivots(rows: &[Vec<i64>], d: usize) -> (usize, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = &m[i][col] / &lead;
                for j in col..d {
                    let v = &m[row][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (pivots.len(), pivots)
}

pub(crate) fn project(v: &[i64], coords: &[usize]) -> Vec<i64> {
    coords.iter().map(|&i| v[i]).collect()
}
