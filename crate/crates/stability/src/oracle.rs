//! The halfspace description of a stability cone, straight from the
//! definition: the weights orthogonal to the module's dimension vector that
//! are non-positive against every submodule. For string and band modules the
//! submodules that cut facets come from contiguous subwalk occurrences, so
//! the description is finite and exact.

use crate::{
    ensure_special_biserial, restrict, support_of, to_int_vec, StabilityCone, StabilityError,
};
use crate::WordRef;
use algebra::BoundQuiver;
use cones::{Int, RationalCone};
use std::collections::BTreeSet;
use words::{cyclic_substrings, occurrence_dimension_vector, substrings, SubwordKind};

/// Builds the stability cone from its defining halfspaces: equality against
/// the dimension vector, one inequality per distinct proper submodule
/// dimension vector arising from a subwalk occurrence.
pub fn oracle_cone(q: &BoundQuiver, w: WordRef) -> Result<StabilityCone, StabilityError> {
    ensure_special_biserial(q)?;
    let dims = w.dimension_vector(q);
    let n = q.vertex_count();
    let mut submodule_dims: BTreeSet<Vec<Int>> = BTreeSet::new();
    match w {
        WordRef::String(s) => {
            for occ in substrings(s, SubwordKind::Submodule, true) {
                submodule_dims.insert(to_int_vec(&occurrence_dimension_vector(q, s.word(), &occ)));
            }
        }
        WordRef::Band(b) => {
            for occ in cyclic_substrings(b, SubwordKind::Submodule) {
                submodule_dims.insert(to_int_vec(&occurrence_dimension_vector(q, b.word(), &occ)));
            }
        }
    }
    let dim_row = to_int_vec(&dims);
    let inequalities: Vec<Vec<Int>> = submodule_dims.into_iter().collect();
    let support = support_of(&dims);
    let support_cone = RationalCone::from_hrep(
        support.len(),
        vec![restrict(&dim_row, &support)],
        inequalities.iter().map(|r| restrict(r, &support)).collect(),
    )?;
    let cone = RationalCone::from_hrep(n, vec![dim_row], inequalities)?;
    Ok(StabilityCone {
        descriptor: w.serialize(q),
        kind: w.kind(),
        support,
        cone,
        support_cone,
    })
}
