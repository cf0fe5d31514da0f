//! Exact integer linear algebra: fraction-free elimination, canonical reduced
//! echelon bases, kernels. All vectors are dense `BigInt` rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Int = BigInt;

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn scale(v: &[Int], c: &Int) -> Vec<Int> {
    v.iter().map(|x| x * c).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit(dim: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); dim];
    v[i] = Int::from(1);
    v
}

/// Divides by the gcd of the entries, keeping orientation. `None` for zero.
pub fn normalize_primitive(v: &[Int]) -> Option<Vec<Int>> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

/// `a*x - b*y`, the fraction-free elimination step.
pub fn cross_free(a: &Int, x: &[Int], b: &Int, y: &[Int]) -> Vec<Int> {
    x.iter().zip(y).map(|(xi, yi)| a * xi - b * yi).collect()
}

/// Canonical reduced echelon basis of the row space: pivots are the leftmost
/// nonzero columns, each pivot column is zero in every other row, each row is
/// primitive with positive leading entry. Unique for a given row space.
pub fn rref_primitive(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut work: Vec<Vec<Int>> = rows
        .iter()
        .filter_map(|r| normalize_primitive(r))
        .collect();
    if work.is_empty() {
        return Vec::new();
    }
    let dim = work[0].len();
    let mut out: Vec<Vec<Int>> = Vec::new();
    for col in 0..dim {
        let Some(pos) = work.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let pivot_row = work.swap_remove(pos);
        for r in work.iter_mut() {
            if !r[col].is_zero() {
                *r = cross_free(&pivot_row[col], r, &r[col], &pivot_row);
                if let Some(p) = normalize_primitive(r) {
                    *r = p;
                } else {
                    r.iter_mut().for_each(|x| *x = Int::zero());
                }
            }
        }
        work.retain(|r| !is_zero_vec(r));
        out.push(pivot_row);
    }
    // clear entries above the pivots (full reduction); renormalizing after
    // every combination keeps the coefficients from compounding
    for i in (0..out.len()).rev() {
        let col = out[i].iter().position(|x| !x.is_zero()).unwrap();
        let pivot = out[i][col].clone();
        for j in 0..i {
            if !out[j][col].is_zero() {
                let combined = cross_free(&pivot, &out[j], &out[j][col], &out[i]);
                out[j] = normalize_primitive(&combined).expect("pivot rows stay independent");
            }
        }
    }
    for r in out.iter_mut() {
        *r = normalize_primitive(r).unwrap();
        let lead = r.iter().find(|x| !x.is_zero()).unwrap();
        if lead.is_negative() {
            *r = neg(r);
        }
    }
    out
}

pub fn rank(rows: &[Vec<Int>]) -> usize {
    rref_primitive(rows).len()
}

/// Eliminates the pivot coordinates of `basis` (a reduced echelon basis) from
/// `v`, scaling only by the positive pivots — the canonical representative of
/// `v` modulo the row space, up to positive scale. Zero iff `v` is in the span.
pub fn reduce_mod_rows(v: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    let mut v = v.to_vec();
    for row in basis {
        let col = row.iter().position(|x| !x.is_zero()).unwrap();
        if !v[col].is_zero() {
            v = cross_free(&row[col], &v, &v[col], row);
        }
    }
    v
}

pub fn in_span(basis_rref: &[Vec<Int>], v: &[Int]) -> bool {
    is_zero_vec(&reduce_mod_rows(v, basis_rref))
}

/// Integer basis of the kernel {x : rows · x = 0}, one primitive vector per
/// free column of the reduced echelon form.
pub fn kernel_basis(rows: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    let r = rref_primitive(rows);
    let pivots: Vec<(usize, Int)> = r
        .iter()
        .map(|row| {
            let col = row.iter().position(|x| !x.is_zero()).unwrap();
            (col, row[col].clone())
        })
        .collect();
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut lcm = Int::from(1);
    for (_, p) in &pivots {
        lcm = lcm.lcm(p);
    }
    let mut out = Vec::new();
    for f in 0..dim {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut x = vec![Int::zero(); dim];
        x[f] = lcm.clone();
        for (row, (col, p)) in r.iter().zip(&pivots) {
            x[*col] = -(&row[f] * (&lcm / p));
        }
        out.push(normalize_primitive(&x).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = rref_primitive(&[v(&[2, 4, 6]), v(&[1, 2, 4])]);
        let b = rref_primitive(&[v(&[3, 6, 10]), v(&[0, 0, 7]), v(&[1, 2, 3])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![v(&[1, 2, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn rank_and_span() {
        assert_eq!(rank(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]), 2);
        assert_eq!(rank(&[]), 0);
        let basis = rref_primitive(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(in_span(&basis, &v(&[1, 2, 1])));
        assert!(!in_span(&basis, &v(&[0, 0, 1])));
    }

    #[test]
    fn kernel_is_orthogonal_complement_basis() {
        let rows = [v(&[1, 1, 2, 1])];
        let k = kernel_basis(&rows, 4);
        assert_eq!(k.len(), 3);
        for x in &k {
            assert!(dot(&rows[0], x).is_zero());
        }
        assert_eq!(kernel_basis(&[], 2).len(), 2);
    }
}
