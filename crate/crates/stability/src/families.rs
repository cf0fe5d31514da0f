//! One-parameter families of string approximations to a band cone. Powers of
//! a band with a fixed prefix have stability cones with a closed generator
//! form: the arrow rays of all but two letters stay put while one extra
//! generator drifts toward the band's g-vector. Dropping pairs of letters
//! tiles the band cone by simplicial pieces, which is what lets an interior
//! point pick its approximating family.

use crate::gvec::{band_g, prefix_g};
use crate::lift::{lifted_band, off_support_units, thin_lift};
use crate::oracle::oracle_cone;
use crate::{
    add_vec, ensure_special_biserial, lift_and_cut, scale_vec, support_of, zero_vec,
    StabilityCone, StabilityError, WordKind, WordRef,
};
use algebra::BoundQuiver;
use cones::{is_zero_vector, relate, span_union, Int, RationalCone, Relation};
use num_traits::{ToPrimitive, Zero};
use words::{check_string, BandWord, Direction, Letter};

/// Ray `e_src − e_tgt` of the letter's underlying arrow, in vertex
/// coordinates.
fn letter_ray(q: &BoundQuiver, n: usize, l: &Letter) -> Vec<Int> {
    let a = q.arrow(l.arrow);
    let mut r = vec![Int::zero(); n];
    r[a.source] = &r[a.source] + Int::from(1);
    r[a.target] = &r[a.target] - Int::from(1);
    r
}

fn band_letter_rays(q: &BoundQuiver, b: &BandWord) -> Vec<Vec<Int>> {
    let n = q.vertex_count();
    b.letters().iter().map(|l| letter_ray(q, n, l)).collect()
}

/// The extra generator of the power cone beyond the fixed letter rays: zero
/// when the prefix boundary cuts neither a submodule nor a factor, otherwise
/// `(r−1)·g` plus or minus the prefix boundary correction.
fn drifting_generator(
    q: &BoundQuiver,
    b: &BandWord,
    m: usize,
    r: usize,
) -> Result<Vec<Int>, StabilityError> {
    let n = b.len();
    let letters = b.letters();
    let g = band_g(q, b);
    let rm1 = Int::from(r as i64 - 1);
    Ok(match (letters[n - 1].direction, letters[m].direction) {
        (Direction::Inverse, Direction::Direct) => {
            add_vec(&scale_vec(&rm1, &g), &prefix_g(q, b, m, false)?)
        }
        (Direction::Direct, Direction::Inverse) => {
            let neg: Vec<Int> = prefix_g(q, b, m, true)?.iter().map(|x| -x).collect();
            add_vec(&scale_vec(&rm1, &g), &neg)
        }
        _ => zero_vec(q.vertex_count()),
    })
}

/// Stability cone of the walk `b^r` + first `m` letters, assembled from the
/// closed generator form: the letter rays of all letters except `m` and the
/// last one, plus the drifting generator. Requires a thin band so the letter
/// rays are the thin rays; agrees with [`lift_and_cut`] on the same walk.
pub fn band_power_cone(
    q: &BoundQuiver,
    b: &BandWord,
    m: usize,
    r: usize,
) -> Result<StabilityCone, StabilityError> {
    ensure_special_biserial(q)?;
    if !WordRef::Band(b).is_thin(q) {
        return Err(StabilityError::NotThin { descriptor: b.serialize(q) });
    }
    let n = b.len();
    if m >= n {
        return Err(StabilityError::BadWord(format!(
            "prefix length {m} must be shorter than the band length {n}"
        )));
    }
    if r == 0 {
        return Err(StabilityError::BadWord("need at least one full turn".to_string()));
    }
    let word = b.power_with_prefix(r, m);
    let string = check_string(q, &word)
        .map_err(|e| StabilityError::BadWord(e.to_string()))?;
    let descriptor = string.serialize(q);
    let dims = string.dimension_vector(q);

    let rays_all = band_letter_rays(q, b);
    let mut gens: Vec<Vec<Int>> = (0..n)
        .filter(|&i| i != m && i != n - 1)
        .map(|i| rays_all[i].clone())
        .collect();
    let x = drifting_generator(q, b, m, r)?;
    if !is_zero_vector(&x) {
        gens.push(x);
    }
    let nq = q.vertex_count();
    let support = support_of(&dims);
    let lineality = off_support_units(nq, &dims);
    let support_rays: Vec<Vec<Int>> =
        gens.iter().map(|g| crate::restrict(g, &support)).collect();
    let cone = RationalCone::from_vrep(nq, gens, lineality)?;
    let support_cone = RationalCone::from_vrep(support.len(), support_rays, Vec::new())?;
    Ok(StabilityCone { descriptor, kind: WordKind::String, support, cone, support_cone })
}

/// Limit of [`band_power_cone`] as `r` grows: the fixed letter rays plus the
/// band's g-vector.
pub fn band_power_limit(
    q: &BoundQuiver,
    b: &BandWord,
    m: usize,
) -> Result<RationalCone, StabilityError> {
    ensure_special_biserial(q)?;
    if !WordRef::Band(b).is_thin(q) {
        return Err(StabilityError::NotThin { descriptor: b.serialize(q) });
    }
    let n = b.len();
    if m >= n {
        return Err(StabilityError::BadWord(format!(
            "prefix length {m} must be shorter than the band length {n}"
        )));
    }
    let rays_all = band_letter_rays(q, b);
    let mut gens: Vec<Vec<Int>> = (0..n)
        .filter(|&i| i != m && i != n - 1)
        .map(|i| rays_all[i].clone())
        .collect();
    gens.push(band_g(q, b));
    let dims = b.dimension_vector(q);
    let lineality = off_support_units(q.vertex_count(), &dims);
    Ok(RationalCone::from_vrep(q.vertex_count(), gens, lineality)?)
}

/// One piece of the simplicial cover of a band cone: the letter rays with
/// two indices omitted, completed by the g-vector.
#[derive(Clone, Debug)]
pub struct CoverPiece {
    /// Indices into the band's letters, ascending.
    pub omitted_letters: (usize, usize),
    pub piece: RationalCone,
}

/// Covers the band cone by the subcones spanned by all but two letter rays
/// plus the g-vector, one piece per letter pair in lexicographic order.
/// Verifies containment of every piece and that the pieces exhaust the cone
/// (their spans union back to it and a deterministic sample of points of the
/// cone all land in some piece).
pub fn simplicial_cover(
    q: &BoundQuiver,
    b: &BandWord,
) -> Result<Vec<CoverPiece>, StabilityError> {
    ensure_special_biserial(q)?;
    if !WordRef::Band(b).is_thin(q) {
        return Err(StabilityError::NotThin { descriptor: b.serialize(q) });
    }
    let n = b.len();
    let nq = q.vertex_count();
    let whole = oracle_cone(q, WordRef::Band(b))?;
    let g = band_g(q, b);
    let rays_all = band_letter_rays(q, b);
    let dims = b.dimension_vector(q);
    let mut pieces = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut gens: Vec<Vec<Int>> = (0..n)
                .filter(|&k| k != i && k != j)
                .map(|k| rays_all[k].clone())
                .collect();
            gens.push(g.clone());
            let piece =
                RationalCone::from_vrep(nq, gens, off_support_units(nq, &dims))?;
            let rel = relate(&whole.cone, &piece)?;
            assert!(
                matches!(rel, Relation::Equal | Relation::Subcone),
                "cover piece must sit inside the band cone"
            );
            pieces.push(CoverPiece { omitted_letters: (i, j), piece });
        }
    }
    // The pieces must exhaust the cone: their spans union back to it, and a
    // deterministic sample of nonnegative ray combinations all land in a
    // piece.
    let mut union = cones::RationalCone::zero(nq);
    for p in &pieces {
        union = span_union(&union, &p.piece)?;
    }
    assert!(
        union.canon_eq(&whole.cone),
        "cover pieces must span the whole band cone"
    );
    let canon = whole.cone.canonical();
    let rays = canon.rays();
    if !rays.is_empty() {
        let mut sampled = 0usize;
        let mut coeffs = vec![0u64; rays.len()];
        'outer: loop {
            // Odometer over small nonnegative coefficient vectors.
            let mut k = 0;
            loop {
                coeffs[k] += 1;
                if coeffs[k] <= 3 {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
                if k == rays.len() {
                    break 'outer;
                }
            }
            let mut point = vec![Int::zero(); nq];
            for (c, ray) in coeffs.iter().zip(rays) {
                if *c > 0 {
                    point = add_vec(&point, &scale_vec(&Int::from(*c as i64), ray));
                }
            }
            let mut covered = false;
            for p in &pieces {
                if p.piece.contains_point(&point)? {
                    covered = true;
                    break;
                }
            }
            assert!(covered, "sampled point of the band cone missed every cover piece");
            sampled += 1;
            if sampled >= 100 {
                break;
            }
        }
    }
    Ok(pieces)
}

/// Euclidean distance from `x` to the cone, computed exactly over the face
/// structure: the nearest point lies in the relative interior of some face,
/// every face is the hull of a subset of the extreme rays (plus lineality),
/// so projecting onto each subset's span and keeping the projections that
/// land in the cone finds the minimum.
pub fn distance_to_cone(c: &RationalCone, x: &[f64]) -> f64 {
    let c = c.canonical();
    let to_f64 = |v: &Vec<Int>| -> Vec<f64> {
        v.iter().map(|z| z.to_f64().expect("coordinate fits in f64")).collect()
    };
    let rays: Vec<Vec<f64>> = c.rays().iter().map(to_f64).collect();
    let lineality: Vec<Vec<f64>> = c.lineality().iter().map(to_f64).collect();
    let eqs: Vec<Vec<f64>> = c.equalities().iter().map(to_f64).collect();
    let ineqs: Vec<Vec<f64>> = c.inequalities().iter().map(to_f64).collect();
    assert!(rays.len() <= 20, "distance search enumerates ray subsets");

    let dotf = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let norm = |a: &[f64]| -> f64 { dotf(a, a).sqrt() };
    let tol = 1e-9;
    let member = |p: &[f64]| -> bool {
        eqs.iter().all(|e| dotf(e, p).abs() <= tol * (1.0 + norm(e) * norm(p)))
            && ineqs.iter().all(|h| dotf(h, p) <= tol * (1.0 + norm(h) * norm(p)))
    };

    let mut best = f64::INFINITY;
    for mask in 0u32..(1u32 << rays.len()) {
        // Orthonormal basis of lineality + selected rays, by Gram–Schmidt.
        let mut basis: Vec<Vec<f64>> = Vec::new();
        let push = |basis: &mut Vec<Vec<f64>>, v: &[f64]| {
            let mut w = v.to_vec();
            for b in basis.iter() {
                let c = dotf(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
            let len = norm(&w);
            if len > 1e-12 {
                for wi in w.iter_mut() {
                    *wi /= len;
                }
                basis.push(w);
            }
        };
        for l in &lineality {
            push(&mut basis, l);
        }
        for (i, r) in rays.iter().enumerate() {
            if mask & (1 << i) != 0 {
                push(&mut basis, r);
            }
        }
        let mut proj = vec![0.0; x.len()];
        for b in &basis {
            let c = dotf(x, b);
            for (pi, bi) in proj.iter_mut().zip(b) {
                *pi += c * bi;
            }
        }
        if member(&proj) {
            let d: f64 = x
                .iter()
                .zip(&proj)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// The approximating family a point of a band cone selects, with the
/// measured approach of the family's string cones toward the point.
#[derive(Clone, Debug)]
pub struct ApproxFamily {
    pub band: String,
    /// Rotation of the band whose powers approximate the point.
    pub rotation: BandWord,
    /// Prefix length of the family's walks.
    pub m: usize,
    /// Letter indices of the input band omitted by the selected cover piece.
    pub omitted_letters: (usize, usize),
    pub target: Vec<Int>,
    pub schedule: Vec<usize>,
    /// `(r, distance of the target to the r-th string cone)`.
    pub distances: Vec<(usize, f64)>,
    /// For each requested threshold, the least scheduled `r` that gets the
    /// string cone within it, if any.
    pub eps_table: Vec<(f64, Option<usize>)>,
}

impl ApproxFamily {
    /// The `r`-th member's stability cone, computed through the lift.
    pub fn cone_at(
        &self,
        q: &BoundQuiver,
        r: usize,
    ) -> Result<StabilityCone, StabilityError> {
        let word = self.rotation.power_with_prefix(r, self.m);
        let string = check_string(q, &word)
            .map_err(|e| StabilityError::BadWord(e.to_string()))?;
        lift_and_cut(q, WordRef::String(&string))
    }
}

/// Picks the family of band-power strings approximating `x`: `x` must lie in
/// the band cone; the first cover piece (in letter-pair order) containing it
/// names the two letters to drop, hence the rotation and prefix length; the
/// family's cones are then computed for each scheduled `r` and their
/// distances to `x` tabulated. Non-thin bands are handled by lifting to the
/// position quiver, selecting there, and mapping letter indices back.
pub fn approximate_family(
    q: &BoundQuiver,
    b: &BandWord,
    x: &[Int],
    r_schedule: &[usize],
    eps_schedule: &[f64],
) -> Result<ApproxFamily, StabilityError> {
    ensure_special_biserial(q)?;
    let whole = oracle_cone(q, WordRef::Band(b))?;
    if !whole.cone.contains_point(x)? {
        return Err(StabilityError::NotInCone { descriptor: b.serialize(q) });
    }
    let n = b.len();
    let omitted = if WordRef::Band(b).is_thin(q) {
        select_piece(&simplicial_cover(q, b)?, x)?
    } else {
        let lift = thin_lift(q, WordRef::Band(b));
        let tb = lifted_band(&lift, b);
        let lifted_x = lift.iota(x);
        select_piece(&simplicial_cover(&lift.thin_quiver, &tb)?, &lifted_x)?
    };
    let (i, j) = omitted;
    let rotation = b.rotate(q, (i + 1) % n);
    let m = j - i - 1;

    let xf: Vec<f64> =
        x.iter().map(|z| z.to_f64().expect("coordinate fits in f64")).collect();
    let mut distances = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let word = rotation.power_with_prefix(r, m);
        let string = check_string(q, &word)
            .map_err(|e| StabilityError::BadWord(e.to_string()))?;
        let member = lift_and_cut(q, WordRef::String(&string))?;
        distances.push((r, distance_to_cone(&member.cone, &xf)));
    }
    let eps_table = eps_schedule
        .iter()
        .map(|&eps| {
            let hit = distances.iter().find(|(_, d)| *d < eps).map(|(r, _)| *r);
            (eps, hit)
        })
        .collect();
    Ok(ApproxFamily {
        band: b.serialize(q),
        rotation,
        m,
        omitted_letters: omitted,
        target: x.to_vec(),
        schedule: r_schedule.to_vec(),
        distances,
        eps_table,
    })
}

fn select_piece(
    pieces: &[CoverPiece],
    x: &[Int],
) -> Result<(usize, usize), StabilityError> {
    for p in pieces {
        if p.piece.contains_point(x)? {
            return Ok(p.omitted_letters);
        }
    }
    unreachable!("a point of the band cone lies in some cover piece");
}
