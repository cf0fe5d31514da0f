//! Incremental double description over exact integers. Constraints are
//! ⟨n, x⟩ = 0 (equalities) and ⟨n, x⟩ ≤ 0 (inequalities), inserted in input
//! order; generators are maintained as extreme rays plus an explicit lineality
//! basis, so no preliminary pointedness reduction is needed.

use crate::linalg::{
    cross_free, dot, is_zero_vec, neg, normalize_primitive, rank, unit, Int,
};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct Generators {
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
}

/// Generators of {x : ⟨e, x⟩ = 0 ∀e, ⟨n, x⟩ ≤ 0 ∀n}, starting from the whole
/// space and inserting one constraint at a time.
pub fn dual_description(
    dim: usize,
    equalities: &[Vec<Int>],
    inequalities: &[Vec<Int>],
) -> Generators {
    let mut lineality: Vec<Vec<Int>> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut processed: Vec<Vec<Int>> = Vec::new();

    let constraints = equalities
        .iter()
        .map(|n| (n, true))
        .chain(inequalities.iter().map(|n| (n, false)));
    for (normal, is_equality) in constraints {
        assert_eq!(normal.len(), dim, "constraint of wrong dimension");
        if is_zero_vec(normal) {
            continue;
        }
        let lin_vals: Vec<Int> = lineality.iter().map(|l| dot(normal, l)).collect();
        if let Some(p) = lin_vals.iter().position(|v| !v.is_zero()) {
            // Some lineality direction crosses the hyperplane: slide every
            // other generator along it onto the hyperplane. The pivot itself
            // dies (equality) or survives one-sidedly as a new ray.
            let pivot = lineality[p].clone();
            let v0 = lin_vals[p].clone();
            let sign_pos = v0.is_positive();
            let abs_v0 = v0.abs();
            let mut new_lin = Vec::new();
            for (i, l) in lineality.iter().enumerate() {
                if i == p {
                    continue;
                }
                if lin_vals[i].is_zero() {
                    new_lin.push(l.clone());
                } else {
                    let cand = cross_free(&v0, l, &lin_vals[i], &pivot);
                    new_lin.push(normalize_primitive(&cand).expect("pivot slide is nonzero"));
                }
            }
            let mut new_rays = Vec::new();
            for r in rays.iter() {
                let vr = dot(normal, r);
                if vr.is_zero() {
                    new_rays.push(r.clone());
                } else {
                    let coeff = if sign_pos { vr } else { -vr };
                    let cand = cross_free(&abs_v0, r, &coeff, &pivot);
                    new_rays.push(normalize_primitive(&cand).expect("pivot slide is nonzero"));
                }
            }
            if !is_equality {
                let dir = if sign_pos { neg(&pivot) } else { pivot };
                new_rays.push(normalize_primitive(&dir).unwrap());
            }
            lineality = new_lin;
            rays = dedup(new_rays);
        } else {
            // All lineality is inside the hyperplane: partition rays by sign
            // and combine adjacent opposite-side pairs on it.
            let vals: Vec<Int> = rays.iter().map(|r| dot(normal, r)).collect();
            let mut new_rays: Vec<Vec<Int>> = Vec::new();
            let mut pos = Vec::new();
            let mut negs = Vec::new();
            for (i, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    new_rays.push(rays[i].clone());
                } else if v.is_negative() {
                    negs.push(i);
                    if !is_equality {
                        new_rays.push(rays[i].clone());
                    }
                } else {
                    pos.push(i);
                }
            }
            let target = dim as isize - lineality.len() as isize - 2;
            for &ip in &pos {
                for &iq in &negs {
                    if !adjacent(&processed, &rays[ip], &rays[iq], target) {
                        continue;
                    }
                    // vals[ip]·q − vals[iq]·p is a non-negative combination
                    // (vals[iq] < 0) lying on the hyperplane
                    let w = cross_free(&vals[ip], &rays[iq], &vals[iq], &rays[ip]);
                    if let Some(w) = normalize_primitive(&w) {
                        new_rays.push(w);
                    }
                }
            }
            rays = dedup(new_rays);
        }
        processed.push(normal.clone());
    }
    Generators { rays, lineality }
}

/// Standard algebraic adjacency: two extreme rays span a common 2-face iff
/// their common tight constraints leave exactly two degrees of freedom beyond
/// the lineality.
fn adjacent(processed: &[Vec<Int>], p: &[Int], q: &[Int], target: isize) -> bool {
    if target < 0 {
        return false;
    }
    let common: Vec<Vec<Int>> = processed
        .iter()
        .filter(|n| dot(n, p).is_zero() && dot(n, q).is_zero())
        .cloned()
        .collect();
    rank(&common) as isize == target
}

fn dedup(rays: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = Vec::with_capacity(rays.len());
    for r in rays {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}
