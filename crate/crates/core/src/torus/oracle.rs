//! `d! Vol {x in sigma : <x, lambda> <= 1}` by a pulling triangulation of
//! the cross-section, with facets found by brute force.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::lattice::{lattice_index, rank_and_pivots};
use super::{Cone, TorusError};
use crate::algebra::Rational;

fn det_q(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let piv = m[c][c].clone();
        acc *= &piv;
        for i in c + 1..n {
            let f = &m[i][c] / &piv;
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    acc
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Pivot coordinates of the span of `rows`.
fn pivots_q(rows: &[Vec<Rational>]) -> Vec<usize> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m = rows.to_vec();
    let mut out = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in 0..m.len() {
            if i != r {
                let f = &m[i][c] / &piv;
                for j in 0..width {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        out.push(c);
        r += 1;
    }
    out
}

/// Pulling triangulation of the point set `idx`: simplices as index lists.
fn pull(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<usize>> {
    let base = &points[idx[0]];
    let diffs: Vec<Vec<Rational>> = idx.iter().map(|&i| sub(&points[i], base)).collect();
    let piv = pivots_q(&diffs);
    let m = piv.len();
    if idx.len() == m + 1 {
        return alloc::vec![idx.to_vec()];
    }
    // intrinsic coordinates
    let local: Vec<Vec<Rational>> = diffs
        .iter()
        .map(|v| piv.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in super::lattice::subsets(idx.len(), m) {
        let t0 = &local[t[0]];
        let frame: Vec<Vec<Rational>> = t[1..].iter().map(|&k| sub(&local[k], t0)).collect();
        let side = |k: usize| -> Rational {
            let mut rows = frame.clone();
            rows.push(sub(&local[k], t0));
            det_q(rows)
        };
        let values: Vec<Rational> = (0..idx.len()).map(side).collect();
        if values.iter().all(Zero::is_zero) {
            continue;
        }
        let on_one_side = values.iter().all(|v| !v.is_negative()) || values.iter().all(|v| !v.is_positive());
        if !on_one_side {
            continue;
        }
        let f: Vec<usize> = (0..idx.len()).filter(|&k| values[k].is_zero()).collect();
        // the m points of t must be affinely independent
        if f.len() >= m {
            let check: Vec<Vec<Rational>> = t.iter().map(|&k| local[k].clone()).collect();
            let d: Vec<Vec<Rational>> = check[1..].iter().map(|v| sub(v, &check[0])).collect();
            if pivots_q(&d).len() == m - 1 || m == 1 {
                facets.insert(f);
            }
        }
    }
    let mut out = Vec::new();
    for f in facets {
        if f.contains(&0) {
            continue;
        }
        let sub_idx: Vec<usize> = f.iter().map(|&k| idx[k]).collect();
        for mut s in pull(points, &sub_idx) {
            s.push(idx[0]);
            out.push(s);
        }
    }
    out
}

/// `e_sigma(lambda)` computed as a normalized volume, independently of
/// [`super::triangulate`].
pub fn volume_oracle(cone: &Cone, lambda: &[Rational]) -> Result<Rational, TorusError> {
    if lambda.len() != cone.d {
        return Err(TorusError::CharacterArity { index: 0, expected: cone.d, found: lambda.len() });
    }
    if !cone.pointed {
        return Err(TorusError::NotPointed);
    }
    let heights: Vec<Rational> = cone
        .generators
        .iter()
        .map(|g| {
            g.iter()
                .zip(lambda)
                .map(|(&a, l)| Rational::from_integer(a.into()) * l)
                .sum()
        })
        .collect();
    if heights.iter().any(|h: &Rational| !h.is_positive()) {
        return Err(TorusError::NotPositive);
    }
    let (r, coords) = rank_and_pivots(&cone.generators, cone.d);
    if r == 0 {
        return Ok(Rational::one());
    }
    let points: Vec<Vec<Rational>> = cone
        .generators
        .iter()
        .zip(&heights)
        .map(|(g, h)| coords.iter().map(|&c| Rational::from_integer(g[c].into()) / h).collect())
        .collect();
    let all: Vec<usize> = (0..points.len()).collect();
    let mut total = Rational::zero();
    for s in pull(&points, &all) {
        let m: Vec<Vec<Rational>> = s.iter().map(|&i| points[i].clone()).collect();
        total += det_q(m).abs();
    }
    // covolume of the projected saturated lattice
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..cone.generators.len() {
        let mut trial = basis.clone();
        trial.push(i);
        let rows: Vec<Vec<i64>> = trial.iter().map(|&j| cone.generators[j].clone()).collect();
        if rank_and_pivots(&rows, cone.d).0 == trial.len() {
            basis = trial;
        }
    }
    let gens: Vec<Vec<i64>> = basis.iter().map(|&j| cone.generators[j].clone()).collect();
    let projected: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| coords.iter().map(|&c| Rational::from_integer(g[c].into())).collect())
        .collect();
    let covolume = det_q(projected).abs() / Rational::from_integer(lattice_index(&gens, cone.d));
    Ok(total / covolume)
}

#[cfg(test)]
mod tests {
    use super::super::{cone, CharacterList};
    use super::*;
    use crate::algebra::{int, rat};
    use alloc::vec;

    #[test]
    fn example_value() {
        let c = cone(&CharacterList::full(
            3,
            vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]],
        ))
        .unwrap();
        assert_eq!(volume_oracle(&c, &[int(1), int(1), int(1)]).unwrap(), rat(1, 3));
    }

    #[test]
    fn unit_quadrant() {
        let c = cone(&CharacterList::full(2, vec![vec![1, 0], vec![0, 1]])).unwrap();
        assert_eq!(volume_oracle(&c, &[int(1), int(1)]).unwrap(), int(1));
        assert_eq!(volume_oracle(&c, &[int(1), int(-1)]), Err(TorusError::NotPositive));
    }

    #[test]
    fn lower_rank() {
        let c = cone(&CharacterList::full(3, vec![vec![1, 1, 0], vec![1, -1, 0]])).unwrap();
        // 2 / ((x+y)(x-y)) at (3, 1, 5)
        assert_eq!(volume_oracle(&c, &[int(3), int(1), int(5)]).unwrap(), rat(2, 8));
    }
}
