//! Certificates for membership in a string cone: every point of the lifted
//! cone is a nonnegative combination of the letters' position rays, and the
//! extreme rays are exactly the combinations whose letter set is minimal
//! admissible (no proper subset supports a combination descending through
//! the glue). The certificate records exact rational coefficients and the
//! minimality verdict.

use crate::lift::{lifted_letter_rays, thin_lift, ThinLift};
use crate::{ensure_special_biserial, lift_and_cut, StabilityError, WordRef};
use algebra::BoundQuiver;
use cones::linalg::dot;
use cones::{Int, RationalCone};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use words::StringWord;

/// Cap on the number of letter subsets the search may enumerate.
pub const DEFAULT_SUBSET_BOUND: usize = 1 << 20;

/// An exact expression of a lifted cone point as a positive combination of
/// letter rays.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// Letter indices carrying a positive coefficient, ascending.
    pub letters: Vec<usize>,
    /// Coefficients parallel to `letters`; all positive.
    pub coefficients: Vec<BigRational>,
    /// The target in position coordinates (the weight copied across fibers).
    pub lifted_target: Vec<Int>,
    /// Whether no proper nonempty subset of `letters` admits a nonzero
    /// combination that descends through the glue; true exactly when the
    /// target is an extreme ray of the cone.
    pub minimal: bool,
}

/// [`minimal_admissible_certify_bounded`] with the default subset bound.
pub fn minimal_admissible_certify(
    q: &BoundQuiver,
    w: &StringWord,
    ray: &[Int],
) -> Result<Certificate, StabilityError> {
    minimal_admissible_certify_bounded(q, w, ray, DEFAULT_SUBSET_BOUND)
}

/// Finds a support-minimal positive combination of lifted letter rays equal
/// to the lifted target, by searching letter subsets in ascending size. The
/// point must lie in the string's stability cone. The subset enumeration is
/// capped at `bound` subsets.
pub fn minimal_admissible_certify_bounded(
    q: &BoundQuiver,
    w: &StringWord,
    ray: &[Int],
    bound: usize,
) -> Result<Certificate, StabilityError> {
    ensure_special_biserial(q)?;
    let sc = lift_and_cut(q, WordRef::String(w))?;
    if !sc.cone.contains_point(ray)? {
        return Err(StabilityError::NotInCone { descriptor: w.serialize(q) });
    }
    let lift = thin_lift(q, WordRef::String(w));
    let rays = lifted_letter_rays(&lift);
    let target = lift.iota(ray);
    let n = rays.len();
    if n >= 63 || (1usize << n) > bound {
        return Err(StabilityError::SubsetBound {
            subsets: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            bound,
        });
    }

    // Zero target: the empty combination certifies it (trivially minimal).
    if target.iter().all(|x| x.is_zero()) {
        return Ok(Certificate {
            letters: Vec::new(),
            coefficients: Vec::new(),
            lifted_target: target,
            minimal: true,
        });
    }

    let masks = {
        let mut m: Vec<u64> = (1..(1u64 << n)).collect();
        m.sort_by_key(|x| (x.count_ones(), *x));
        m
    };
    for mask in masks {
        let subset: Vec<usize> =
            (0..n).filter(|i| mask & (1u64 << i) != 0).collect();
        if let Some(coefficients) = full_support_solution(&rays, &subset, &target) {
            let minimal = is_minimal(&lift, &rays, &subset);
            verify_combination(&rays, &subset, &coefficients, &target);
            return Ok(Certificate {
                letters: subset,
                coefficients,
                lifted_target: target,
                minimal,
            });
        }
    }
    unreachable!("a cone point is always a combination of the letter rays");
}

/// Looks for coefficients λ > 0 with Σ λᵢ·rayᵢ = target over the subset,
/// every λᵢ strictly positive. The feasible set is the cone of (λ, t)
/// solving Σ λᵢ·rayᵢ = t·target with λ, t ≥ 0; the sum of its canonical
/// generators is a relative-interior point, so full support there decides
/// strict positivity.
fn full_support_solution(
    rays: &[Vec<Int>],
    subset: &[usize],
    target: &[Int],
) -> Option<Vec<BigRational>> {
    let dim = subset.len() + 1;
    let coords = target.len();
    let mut equalities = Vec::with_capacity(coords);
    for c in 0..coords {
        let mut row = Vec::with_capacity(dim);
        for &i in subset {
            row.push(rays[i][c].clone());
        }
        row.push(-&target[c]);
        equalities.push(row);
    }
    let inequalities: Vec<Vec<Int>> = (0..dim)
        .map(|k| {
            let mut row = vec![Int::zero(); dim];
            row[k] = Int::from(-1);
            row
        })
        .collect();
    let feasible = RationalCone::from_hrep(dim, equalities, inequalities)
        .expect("feasibility cone is well-formed");
    let canon = feasible.canonical();
    let mut interior = vec![Int::zero(); dim];
    for r in canon.rays() {
        for (a, b) in interior.iter_mut().zip(r) {
            *a = &*a + b;
        }
    }
    if interior.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let t = interior[dim - 1].clone();
    Some(
        interior[..dim - 1]
            .iter()
            .map(|l| BigRational::new(l.clone(), t.clone()))
            .collect(),
    )
}

/// A subset is minimal admissible when no proper nonempty subset carries a
/// nonzero nonnegative combination that still descends through the glue.
fn is_minimal(lift: &ThinLift, rays: &[Vec<Int>], subset: &[usize]) -> bool {
    for drop_mask in 1u64..(1u64 << subset.len()) {
        if drop_mask == (1u64 << subset.len()) - 1 {
            continue; // the full subset itself
        }
        let sub: Vec<usize> = subset
            .iter()
            .enumerate()
            .filter(|(k, _)| drop_mask & (1u64 << k) != 0)
            .map(|(_, &i)| i)
            .collect();
        // Combinations over `sub` that vanish on every glue row.
        let equalities: Vec<Vec<Int>> = lift
            .glue
            .iter()
            .map(|row| sub.iter().map(|&i| dot(row, &rays[i])).collect())
            .collect();
        let inequalities: Vec<Vec<Int>> = (0..sub.len())
            .map(|k| {
                let mut r = vec![Int::zero(); sub.len()];
                r[k] = Int::from(-1);
                r
            })
            .collect();
        let admissible = RationalCone::from_hrep(sub.len(), equalities, inequalities)
            .expect("admissibility cone is well-formed");
        if !admissible.canonical().rays().is_empty() {
            return false;
        }
    }
    true
}

/// Exact re-check that the coefficients reproduce the target.
fn verify_combination(
    rays: &[Vec<Int>],
    subset: &[usize],
    coefficients: &[BigRational],
    target: &[Int],
) {
    let coords = target.len();
    for c in 0..coords {
        let mut acc = BigRational::zero();
        for (&i, l) in subset.iter().zip(coefficients) {
            acc += l * BigRational::from_integer(rays[i][c].clone());
        }
        assert_eq!(
            acc,
            BigRational::from_integer(target[c].clone()),
            "certificate coefficients must reproduce the lifted target exactly"
        );
    }
}
