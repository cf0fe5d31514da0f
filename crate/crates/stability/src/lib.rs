//! Stability cones of string and band modules.
//!
//! A weight vector θ makes a module M semistable when ⟨θ, dim M⟩ = 0 and
//! ⟨θ, dim L⟩ ≤ 0 for every submodule L of M. Over a special biserial
//! algebra the submodules of a string or band module that matter are cut out
//! by contiguous subwalks, so the set of such weights is a rational
//! polyhedral cone. This crate computes that cone two independent ways (a
//! direct halfspace description from subwalk occurrences, and a thin-module
//! lift), plus the g-vector bookkeeping, one-parameter families of string
//! approximations to a band, certificates expressing rays as admissible arrow
//! sums, and the covering of a band cone by its arrow-removal strings.

pub mod certify;
pub mod families;
pub mod gvec;
pub mod lift;
pub mod oracle;
pub mod union;

pub use certify::{
    minimal_admissible_certify, minimal_admissible_certify_bounded, Certificate,
    DEFAULT_SUBSET_BOUND,
};
pub use families::{
    approximate_family, band_power_cone, band_power_limit, distance_to_cone, simplicial_cover,
    ApproxFamily, CoverPiece,
};
pub use gvec::{band_g, g_vector, g_vector_oracle, prefix_g};
pub use lift::{
    lift_and_cut, lifted_band, lifted_letter_rays, lifted_string, quiver_thin_rays, thin_lift,
    thin_rays, thin_rays_global, ThinLift,
};
pub use oracle::oracle_cone;
pub use union::{band_string_union, removal_string, word_poset_closure, RemovalReport, UnionReport};

use algebra::{check_special_biserial, BoundQuiver, PathCapExceeded};
use cones::{ConeError, Int, RationalCone};
use num_traits::Zero;
use words::{BandWord, StringWord, Word};

/// Which flavor of walk a cone was computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordKind {
    String,
    Band,
}

impl WordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WordKind::String => "string",
            WordKind::Band => "band",
        }
    }
}

/// A borrowed string or band walk, so every operation takes one entry point.
#[derive(Clone, Copy, Debug)]
pub enum WordRef<'a> {
    String(&'a StringWord),
    Band(&'a BandWord),
}

impl<'a> WordRef<'a> {
    pub fn kind(&self) -> WordKind {
        match self {
            WordRef::String(_) => WordKind::String,
            WordRef::Band(_) => WordKind::Band,
        }
    }

    pub fn word(&self) -> &'a Word {
        match self {
            WordRef::String(s) => s.word(),
            WordRef::Band(b) => b.word(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, WordRef::Band(_))
    }

    /// Number of vertex positions: letters + 1 for a string, letters for a
    /// band (cyclic).
    pub fn position_count(&self) -> usize {
        match self {
            WordRef::String(s) => s.len() + 1,
            WordRef::Band(b) => b.len(),
        }
    }

    pub fn dimension_vector(&self, q: &BoundQuiver) -> Vec<usize> {
        match self {
            WordRef::String(s) => s.dimension_vector(q),
            WordRef::Band(b) => b.dimension_vector(q),
        }
    }

    pub fn serialize(&self, q: &BoundQuiver) -> String {
        self.word().serialize(q)
    }

    /// Thin means every vertex carries at most one position.
    pub fn is_thin(&self, q: &BoundQuiver) -> bool {
        self.dimension_vector(q).iter().all(|&d| d <= 1)
    }
}

/// A stability cone together with the walk it came from. `cone` lives in the
/// full vertex space (coordinates off the support are lineality);
/// `support_cone` is the same set restricted to the support coordinates.
#[derive(Clone, Debug)]
pub struct StabilityCone {
    pub descriptor: String,
    pub kind: WordKind,
    /// Vertices where the module is nonzero, ascending.
    pub support: Vec<usize>,
    pub cone: RationalCone,
    pub support_cone: RationalCone,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum StabilityError {
    #[error("algebra is not special biserial: {0}")]
    NotSpecialBiserial(String),
    #[error("operation requires a thin walk but '{descriptor}' repeats a vertex")]
    NotThin { descriptor: String },
    #[error("point is not in the stability cone of '{descriptor}'")]
    NotInCone { descriptor: String },
    #[error("certificate search over {subsets} arrow subsets exceeds the bound {bound}")]
    SubsetBound { subsets: usize, bound: usize },
    #[error("walk is not valid here: {0}")]
    BadWord(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    PathCap(#[from] PathCapExceeded),
}

/// Errors unless the algebra passes the four special biserial degree and
/// composition rules.
pub fn ensure_special_biserial(q: &BoundQuiver) -> Result<(), StabilityError> {
    let diag = check_special_biserial(q);
    if diag.violations.is_empty() {
        Ok(())
    } else {
        let mut lines: Vec<String> = diag
            .violations
            .iter()
            .map(|v| format!("{} at {}", v.rule.as_str(), v.witness.join(" ")))
            .collect();
        lines.sort();
        Err(StabilityError::NotSpecialBiserial(lines.join("; ")))
    }
}

pub(crate) fn to_int_vec(dims: &[usize]) -> Vec<Int> {
    dims.iter().map(|&d| Int::from(d as i64)).collect()
}

pub(crate) fn support_of(dims: &[usize]) -> Vec<usize> {
    dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, _)| v).collect()
}

pub(crate) fn restrict(v: &[Int], support: &[usize]) -> Vec<Int> {
    support.iter().map(|&i| v[i].clone()).collect()
}

pub(crate) fn zero_vec(dim: usize) -> Vec<Int> {
    vec![Int::zero(); dim]
}

pub(crate) fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale_vec(k: &Int, v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| k * x).collect()
}

/// Assembles the full-space and support cones from generators given in full
/// coordinates that vanish off the support. Off-support coordinates become
/// lineality in the full cone and are dropped in the support cone.
pub(crate) fn package_generators(
    q: &BoundQuiver,
    descriptor: String,
    kind: WordKind,
    dims: &[usize],
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
) -> Result<StabilityCone, StabilityError> {
    let n = q.vertex_count();
    let support = support_of(dims);
    let support_rays: Vec<Vec<Int>> = rays.iter().map(|r| restrict(r, &support)).collect();
    let support_lineality: Vec<Vec<Int>> =
        lineality.iter().map(|l| restrict(l, &support)).collect();
    let mut full_lineality = lineality;
    for (v, &d) in dims.iter().enumerate() {
        if d == 0 {
            full_lineality.push(cones::linalg::unit(n, v));
        }
    }
    let cone = RationalCone::from_vrep(n, rays, full_lineality)?;
    let support_cone =
        RationalCone::from_vrep(support.len(), support_rays, support_lineality)?;
    Ok(StabilityCone { descriptor, kind, support, cone, support_cone })
}
