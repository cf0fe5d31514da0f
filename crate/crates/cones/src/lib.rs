//! Exact rational polyhedral cones with synchronized halfspace and generator
//! representations. Conversion runs the double description method both ways,
//! so every synced cone carries its facets, equality space, extreme rays, and
//! lineality basis in a canonical form where set equality is syntactic
//! equality.

pub mod dd;
pub mod linalg;

use std::collections::BTreeSet;

pub use linalg::Int;
use linalg::{
    dot, in_span, is_zero_vec, neg, normalize_primitive, rank, reduce_mod_rows, rref_primitive,
};
use num_traits::{Signed, Zero};

pub fn int_vec(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("dimension mismatch: expected vectors of length {expected}, found length {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Rays,
    Halfspaces,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    ContainsPoint,
    Subcone,
    Equal,
    Incomparable,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::ContainsPoint => "contains_point",
            Relation::Subcone => "subcone",
            Relation::Equal => "equal",
            Relation::Incomparable => "incomparable",
        }
    }
}

/// A polyhedral cone. Synced cones hold both canonical representations;
/// `from_raw_vrep` keeps the caller's generators verbatim (possibly redundant,
/// H-rep absent) until something canonicalizes them.
#[derive(Clone, Debug)]
pub struct RationalCone {
    ambient_dim: usize,
    equalities: Vec<Vec<Int>>,
    inequalities: Vec<Vec<Int>>,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    synced: bool,
    v_is_source: bool,
}

fn check_dims(dim: usize, groups: &[&[Vec<Int>]]) -> Result<(), ConeError> {
    for group in groups {
        for v in *group {
            if v.len() != dim {
                return Err(ConeError::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
    }
    Ok(())
}

/// Canonical ray representatives: reduced against the reduced-echelon basis
/// (so no ray has support on its pivot columns), primitive, deduplicated, and
/// sorted. Zero after reduction means the vector lay in the basis span.
fn canon_rays(rays: &[Vec<Int>], basis_rref: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = rays
        .iter()
        .filter_map(|r| normalize_primitive(&reduce_mod_rows(r, basis_rref)))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl RationalCone {
    pub fn from_hrep(
        dim: usize,
        equalities: Vec<Vec<Int>>,
        inequalities: Vec<Vec<Int>>,
    ) -> Result<RationalCone, ConeError> {
        check_dims(dim, &[&equalities, &inequalities])?;
        let primal = dd::dual_description(dim, &equalities, &inequalities);
        Ok(Self::finish(dim, primal))
    }

    pub fn from_vrep(
        dim: usize,
        rays: Vec<Vec<Int>>,
        lineality: Vec<Vec<Int>>,
    ) -> Result<RationalCone, ConeError> {
        check_dims(dim, &[&rays, &lineality])?;
        let polar = dd::dual_description(dim, &lineality, &rays);
        let primal = dd::dual_description(dim, &polar.lineality, &polar.rays);
        Ok(Self::finish(dim, primal))
    }

    /// Keeps the generators exactly as given (duplicates and redundancy
    /// included) with no halfspace representation. Operations canonicalize on
    /// demand; use this when the generator multiset itself is the point.
    pub fn from_raw_vrep(
        dim: usize,
        rays: Vec<Vec<Int>>,
        lineality: Vec<Vec<Int>>,
    ) -> Result<RationalCone, ConeError> {
        check_dims(dim, &[&rays, &lineality])?;
        Ok(RationalCone {
            ambient_dim: dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            rays,
            lineality,
            synced: false,
            v_is_source: true,
        })
    }

    pub fn whole_space(dim: usize) -> RationalCone {
        Self::from_hrep(dim, Vec::new(), Vec::new()).unwrap()
    }

    pub fn zero(dim: usize) -> RationalCone {
        Self::from_vrep(dim, Vec::new(), Vec::new()).unwrap()
    }

    /// The polar double-description pass: given minimal generators, compute
    /// facets and the equality space, then canonicalize all four blocks.
    fn finish(dim: usize, primal: dd::Generators) -> RationalCone {
        let polar = dd::dual_description(dim, &primal.lineality, &primal.rays);
        let lineality = rref_primitive(&primal.lineality);
        let equalities = rref_primitive(&polar.lineality);
        let rays = canon_rays(&primal.rays, &lineality);
        let inequalities = canon_rays(&polar.rays, &equalities);
        RationalCone {
            ambient_dim: dim,
            equalities,
            inequalities,
            rays,
            lineality,
            synced: true,
            v_is_source: true,
        }
    }

    /// Both representations, synced and canonical. `Rays` treats the
    /// halfspaces as the source of truth, `Halfspaces` the generators; on an
    /// already-synced cone both are the identity.
    pub fn convert(&self, target: Target) -> RationalCone {
        if self.synced {
            return self.clone();
        }
        match target {
            Target::Rays if !self.v_is_source => {
                Self::from_hrep(self.ambient_dim, self.equalities.clone(), self.inequalities.clone())
                    .expect("stored representation is well-formed")
            }
            _ => Self::from_vrep(self.ambient_dim, self.rays.clone(), self.lineality.clone())
                .expect("stored representation is well-formed"),
        }
    }

    pub fn canonical(&self) -> RationalCone {
        self.convert(Target::Rays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_synced(&self) -> bool {
        self.synced
    }

    pub fn equalities(&self) -> &[Vec<Int>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Vec<Int>] {
        &self.inequalities
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        let mut gens: Vec<Vec<Int>> = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        rank(&gens)
    }

    pub fn lineality_dim(&self) -> usize {
        rank(&self.lineality)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim() == 0
    }

    pub fn contains_point(&self, x: &[Int]) -> Result<bool, ConeError> {
        if x.len() != self.ambient_dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        let c = self.canonical();
        Ok(c.equalities.iter().all(|e| dot(e, x).is_zero())
            && c.inequalities.iter().all(|n| !dot(n, x).is_positive()))
    }

    /// Canonical-form equality. Canonical rays are unique representatives
    /// modulo lineality and the lineality basis is unique for its span, so
    /// comparing them decides set equality.
    pub fn canon_eq(&self, other: &RationalCone) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        let (a, b) = (self.canonical(), other.canonical());
        a.rays == b.rays && a.lineality == b.lineality
    }

    /// (canonical rays, canonical lineality): a hashable identity for the
    /// cone as a point set.
    pub fn canon_key(&self) -> CanonKey {
        let c = self.canonical();
        (c.rays.clone(), c.lineality.clone())
    }
}

/// Canonical generator identity of a cone: sorted extreme rays and sorted
/// lineality basis, both primitive. Equal keys mean equal point sets.
pub type CanonKey = (Vec<Vec<Int>>, Vec<Vec<Int>>);

/// The cone cut by additional hyperplanes ⟨e, x⟩ = 0.
pub fn intersect_subspace(
    c: &RationalCone,
    eqs: &[Vec<Int>],
) -> Result<RationalCone, ConeError> {
    check_dims(c.ambient_dim, &[eqs])?;
    let c = c.canonical();
    let mut equalities = c.equalities.clone();
    equalities.extend(eqs.iter().cloned());
    RationalCone::from_hrep(c.ambient_dim, equalities, c.inequalities.clone())
}

fn generators_inside(outer: &RationalCone, inner: &RationalCone) -> bool {
    let ok_ray = |r: &Vec<Int>| {
        outer.equalities.iter().all(|e| dot(e, r).is_zero())
            && outer.inequalities.iter().all(|n| !dot(n, r).is_positive())
    };
    let ok_line = |l: &Vec<Int>| {
        outer.equalities.iter().all(|e| dot(e, l).is_zero())
            && outer.inequalities.iter().all(|n| dot(n, l).is_zero())
    };
    inner.rays.iter().all(ok_ray) && inner.lineality.iter().all(ok_line)
}

/// How `b` sits relative to `a`: equal, a subcone of `a`, or incomparable.
pub fn relate(a: &RationalCone, b: &RationalCone) -> Result<Relation, ConeError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(ConeError::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    let (a, b) = (a.canonical(), b.canonical());
    let b_in_a = generators_inside(&a, &b);
    let a_in_b = generators_inside(&b, &a);
    Ok(match (b_in_a, a_in_b) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Subcone,
        _ => Relation::Incomparable,
    })
}

/// Point membership in the relation vocabulary.
pub fn relate_point(a: &RationalCone, x: &[Int]) -> Result<Relation, ConeError> {
    Ok(if a.contains_point(x)? { Relation::ContainsPoint } else { Relation::Incomparable })
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<RationalCone>,
    pub simplicial: bool,
}

/// All faces of dimension ≤ `up_to_dim`, each produced by tightening facets
/// one at a time (every proper face is a face of some facet). Deterministic
/// order: ascending dimension, then canonical generators. The simplicial flag
/// refers to the input cone: extreme rays linearly independent.
pub fn face_lattice(c: &RationalCone, up_to_dim: usize) -> FaceLattice {
    let c = c.canonical();
    let simplicial = rank(&c.rays) == c.rays.len();
    let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
    let mut queue: Vec<RationalCone> = vec![c.clone()];
    let mut all: Vec<RationalCone> = Vec::new();
    seen.insert(c.canon_key());
    all.push(c);
    while let Some(f) = queue.pop() {
        for facet in f.inequalities() {
            let child = intersect_subspace(&f, std::slice::from_ref(facet))
                .expect("facet normal has the cone's dimension");
            if seen.insert(child.canon_key()) {
                queue.push(child.clone());
                all.push(child);
            }
        }
    }
    let mut keyed: Vec<(usize, CanonKey, RationalCone)> =
        all.into_iter().map(|f| (f.dim(), f.canon_key(), f)).collect();
    keyed.retain(|(d, _, _)| *d <= up_to_dim);
    keyed.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    FaceLattice { faces: keyed.into_iter().map(|(_, _, f)| f).collect(), simplicial }
}

/// Every face of a cone, identified by the set of canonical extreme rays it
/// contains. A face is determined by its extreme rays (plus the shared
/// lineality space), every proper face is an intersection of facets, and
/// intersecting with a facet keeps exactly the rays tight on it — so a
/// breadth-first closure over facet incidence sets enumerates the whole face
/// lattice without any further cone arithmetic. The supports come back
/// sorted; the full support (the cone itself) is always present.
pub fn face_ray_supports(c: &RationalCone) -> Vec<Vec<usize>> {
    let c = c.canonical();
    let incidence: Vec<BTreeSet<usize>> = c
        .inequalities
        .iter()
        .map(|n| {
            c.rays
                .iter()
                .enumerate()
                .filter(|(_, r)| dot(n, r).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let full: BTreeSet<usize> = (0..c.rays.len()).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    seen.insert(full.clone());
    let mut queue = vec![full];
    while let Some(s) = queue.pop() {
        for inc in &incidence {
            let child: BTreeSet<usize> = s.intersection(inc).copied().collect();
            if seen.insert(child.clone()) {
                queue.push(child);
            }
        }
    }
    seen.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// {x : ⟨x, r⟩ ≥ 0 for all rays, ⟨x, l⟩ = 0 for all lineality}.
pub fn dual_cone(c: &RationalCone) -> RationalCone {
    let c = c.canonical();
    let flipped: Vec<Vec<Int>> = c.rays.iter().map(|r| neg(r)).collect();
    RationalCone::from_hrep(c.ambient_dim, c.lineality.clone(), flipped)
        .expect("generators share the cone's dimension")
}

/// Non-negative span of the union of the two cones' generators.
pub fn span_union(a: &RationalCone, b: &RationalCone) -> Result<RationalCone, ConeError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(ConeError::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    let mut rays = a.rays.clone();
    rays.extend(b.rays.iter().cloned());
    let mut lineality = a.lineality.clone();
    lineality.extend(b.lineality.iter().cloned());
    RationalCone::from_vrep(a.ambient_dim, rays, lineality)
}

/// Linear span of the cone, as a lineality-only cone.
pub fn linear_span(c: &RationalCone) -> RationalCone {
    let mut gens = c.rays.clone();
    gens.extend(c.lineality.iter().cloned());
    RationalCone::from_vrep(c.ambient_dim, Vec::new(), gens)
        .expect("generators share the cone's dimension")
}

/// Whether `x` lies in the linear span of the cone's generators.
pub fn in_linear_span(c: &RationalCone, x: &[Int]) -> bool {
    let mut gens = c.rays.clone();
    gens.extend(c.lineality.iter().cloned());
    in_span(&rref_primitive(&gens), x)
}

/// Exposes zero-vector detection for callers assembling constraints.
pub fn is_zero_vector(v: &[Int]) -> bool {
    is_zero_vec(v)
}
