//! Reduction to thin modules: every string or band module is the pushforward
//! of a thin module over the quiver whose vertices are the walk's positions.
//! The stability cone of the original module is the slice of the thin cone
//! where weights agree across the copies of each vertex, read back in the
//! original coordinates.

use crate::{
    ensure_special_biserial, package_generators, StabilityCone, StabilityError, WordRef,
};
use algebra::BoundQuiver;
use cones::linalg::{dot, kernel_basis, unit};
use cones::{Int, RationalCone};
use num_traits::Zero;
use std::collections::BTreeSet;
use words::{check_band, check_string, BandWord, Direction, Letter, StringWord, Word};

/// The position quiver of a walk together with the data needed to move
/// weights between the original vertex space and the position space.
#[derive(Clone, Debug)]
pub struct ThinLift {
    /// One vertex per position of the walk, one arrow per letter (pointing
    /// the way the underlying arrow does), no relations.
    pub thin_quiver: BoundQuiver,
    /// `copy_map[p]` is the original vertex sitting at position `p`.
    pub copy_map: Vec<usize>,
    /// Differences of consecutive positions over the same original vertex;
    /// a weight on positions descends to the original vertices exactly when
    /// it vanishes on these rows.
    pub glue: Vec<Vec<Int>>,
    pub cyclic: bool,
}

impl ThinLift {
    pub fn position_count(&self) -> usize {
        self.copy_map.len()
    }

    /// Pulls a weight on the original vertices up to the positions,
    /// duplicating the value across the copies of each vertex.
    pub fn iota(&self, x: &[Int]) -> Vec<Int> {
        self.copy_map.iter().map(|&v| x[v].clone()).collect()
    }

    /// First position lying over each original vertex, if any.
    pub fn first_position(&self, vertex: usize) -> Option<usize> {
        self.copy_map.iter().position(|&v| v == vertex)
    }
}

/// Builds the position quiver of the walk. Positions are named `p0, p1, …`;
/// the letter at index `i` becomes the arrow `{name}_{i}` between positions
/// `i` and `i+1` (mod length for bands), keeping its direction.
pub fn thin_lift(q: &BoundQuiver, w: WordRef) -> ThinLift {
    let letters = w.word().letters();
    let cyclic = w.is_cyclic();
    let positions = w.position_count();
    let names: Vec<String> = (0..positions).map(|p| format!("p{p}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let arrow_names: Vec<String> = letters
        .iter()
        .enumerate()
        .map(|(i, l)| format!("{}_{}", q.arrow(l.arrow).name, i))
        .collect();
    let mut arrows: Vec<(&str, &str, &str)> = Vec::with_capacity(letters.len());
    for (i, l) in letters.iter().enumerate() {
        let here = i;
        let next = if cyclic { (i + 1) % positions } else { i + 1 };
        let (src, tgt) = match l.direction {
            Direction::Direct => (here, next),
            Direction::Inverse => (next, here),
        };
        arrows.push((arrow_names[i].as_str(), name_refs[src], name_refs[tgt]));
    }
    let thin_quiver = BoundQuiver::build(&name_refs, &arrows, &[])
        .expect("position quiver of a valid walk is well-formed");
    let copy_map: Vec<usize> = (0..positions).map(|p| w.word().vertex_at(q, p)).collect();
    let mut glue = Vec::new();
    for v in 0..q.vertex_count() {
        let fiber: Vec<usize> =
            (0..positions).filter(|&p| copy_map[p] == v).collect();
        for pair in fiber.windows(2) {
            let mut row = vec![Int::zero(); positions];
            row[pair[0]] = Int::from(1);
            row[pair[1]] = Int::from(-1);
            glue.push(row);
        }
    }
    ThinLift { thin_quiver, copy_map, glue, cyclic }
}

/// The walk re-read over its own position quiver (letter `i` becomes arrow
/// `i`, same direction); always a valid string.
pub fn lifted_string(lift: &ThinLift, w: &StringWord) -> StringWord {
    let letters: Vec<Letter> = w
        .letters()
        .iter()
        .enumerate()
        .map(|(i, l)| match l.direction {
            Direction::Direct => Letter::direct(i),
            Direction::Inverse => Letter::inverse(i),
        })
        .collect();
    let word = Word::from_letters(&lift.thin_quiver, letters)
        .expect("lifted letters compose by construction");
    check_string(&lift.thin_quiver, &word).expect("lift of a string is a string")
}

/// Band analogue of [`lifted_string`].
pub fn lifted_band(lift: &ThinLift, b: &BandWord) -> BandWord {
    let letters: Vec<Letter> = b
        .letters()
        .iter()
        .enumerate()
        .map(|(i, l)| match l.direction {
            Direction::Direct => Letter::direct(i),
            Direction::Inverse => Letter::inverse(i),
        })
        .collect();
    let word = Word::from_letters(&lift.thin_quiver, letters)
        .expect("lifted letters compose by construction");
    check_band(&lift.thin_quiver, &word).expect("lift of a band is a band")
}

/// Cone generated by one ray `e_src − e_tgt` per arrow, kept as the raw
/// generator multiset (one generator per arrow, repeats included).
pub fn quiver_thin_rays(q: &BoundQuiver) -> RationalCone {
    let n = q.vertex_count();
    let rays: Vec<Vec<Int>> = q
        .arrows()
        .iter()
        .map(|a| {
            let mut r = vec![Int::zero(); n];
            r[a.source] = Int::from(1);
            r[a.target] = &r[a.target] - Int::from(1);
            r
        })
        .collect();
    RationalCone::from_raw_vrep(n, rays, Vec::new())
        .expect("arrow rays have the ambient dimension")
}

/// The thin stability cone of the walk in position coordinates: one ray per
/// letter. For a thin module this is the whole stability story; in general
/// it is the object the glue rows cut.
pub fn thin_rays(q: &BoundQuiver, w: WordRef) -> RationalCone {
    quiver_thin_rays(&thin_lift(q, w).thin_quiver)
}

/// For a walk visiting each vertex at most once, the same rays written in
/// the original vertex coordinates (one ray `e_src − e_tgt` per letter's
/// underlying arrow).
pub fn thin_rays_global(q: &BoundQuiver, w: WordRef) -> Result<RationalCone, StabilityError> {
    if !w.is_thin(q) {
        return Err(StabilityError::NotThin { descriptor: w.serialize(q) });
    }
    let n = q.vertex_count();
    let rays: Vec<Vec<Int>> = w
        .word()
        .letters()
        .iter()
        .map(|l| {
            let a = q.arrow(l.arrow);
            let mut r = vec![Int::zero(); n];
            r[a.source] = Int::from(1);
            r[a.target] = &r[a.target] - Int::from(1);
            r
        })
        .collect();
    Ok(RationalCone::from_raw_vrep(n, rays, Vec::new())?)
}

/// Position-space rays of the letters: `e_src − e_tgt` of each lifted arrow,
/// indexed like the letters.
pub fn lifted_letter_rays(lift: &ThinLift) -> Vec<Vec<Int>> {
    let positions = lift.position_count();
    lift.thin_quiver
        .arrows()
        .iter()
        .map(|a| {
            let mut r = vec![Int::zero(); positions];
            r[a.source] = &r[a.source] + Int::from(1);
            r[a.target] = &r[a.target] - Int::from(1);
            r
        })
        .collect()
}

/// Computes the stability cone by lifting to the position quiver, cutting
/// the thin cone with the glue rows, and reading the result back through one
/// position per vertex. Off-support vertices contribute lineality.
///
/// The cut cone is the image of Λ = {λ ≥ 0 : glue(Σ λᵢ·rayᵢ) = 0} under the
/// rays, so it is computed inside the kernel of the glue pairing — a space
/// whose dimension is bounded by the support size, which keeps long walks
/// (many positions, few vertices) cheap.
pub fn lift_and_cut(q: &BoundQuiver, w: WordRef) -> Result<StabilityCone, StabilityError> {
    ensure_special_biserial(q)?;
    let lift = thin_lift(q, w);
    let rays_v = lifted_letter_rays(&lift);
    let letters = rays_v.len();
    let positions = lift.position_count();

    // The glue condition in coefficient space: one row per glue row, pairing
    // it with each letter ray.
    let pairing: Vec<Vec<Int>> = lift
        .glue
        .iter()
        .map(|g| rays_v.iter().map(|v| dot(g, v)).collect())
        .collect();
    let kernel = kernel_basis(&pairing, letters);
    let k = kernel.len();

    // Componentwise nonnegativity of λ = Σ μⱼ·kernelⱼ, one inequality per
    // letter, deduplicated (long walks repeat their pattern).
    let mut distinct_rows: BTreeSet<Vec<Int>> = BTreeSet::new();
    for i in 0..letters {
        let row: Vec<Int> = kernel.iter().map(|kv| -&kv[i]).collect();
        if row.iter().any(|x| !x.is_zero()) {
            distinct_rows.insert(row);
        }
    }
    let coeff_cone =
        RationalCone::from_hrep(k, Vec::new(), distinct_rows.into_iter().collect())?;
    let cc = coeff_cone.canonical();

    let to_position_space = |mu: &[Int]| -> Vec<Int> {
        let mut lambda = vec![Int::zero(); letters];
        for (j, basis_vec) in kernel.iter().enumerate() {
            if mu[j].is_zero() {
                continue;
            }
            for i in 0..letters {
                lambda[i] = &lambda[i] + &mu[j] * &basis_vec[i];
            }
        }
        let mut y = vec![Int::zero(); positions];
        for i in 0..letters {
            if lambda[i].is_zero() {
                continue;
            }
            for c in 0..positions {
                y[c] = &y[c] + &lambda[i] * &rays_v[i][c];
            }
        }
        y
    };

    let n = q.vertex_count();
    let dims = w.dimension_vector(q);
    // Every image is fiber-constant (it pairs to zero with the glue rows),
    // so reading one position per vertex is exact.
    let pull = |vec: &[Int]| -> Vec<Int> {
        (0..n)
            .map(|v| match lift.first_position(v) {
                Some(p) => vec[p].clone(),
                None => Int::zero(),
            })
            .collect()
    };
    let rays: Vec<Vec<Int>> = cc.rays().iter().map(|mu| pull(&to_position_space(mu))).collect();
    let lineality: Vec<Vec<Int>> =
        cc.lineality().iter().map(|mu| pull(&to_position_space(mu))).collect();
    package_generators(q, w.serialize(q), w.kind(), &dims, rays, lineality)
}

/// Off-support unit lineality in full coordinates, shared by the routes that
/// assemble cones directly from known generators.
pub(crate) fn off_support_units(n: usize, dims: &[usize]) -> Vec<Vec<Int>> {
    (0..n).filter(|&v| dims[v] == 0).map(|v| unit(n, v)).collect()
}
