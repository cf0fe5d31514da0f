//! A thin band cone against the cones of its arrow-removal strings: dropping
//! any one letter from the cyclic walk leaves a string whose cone is a
//! full-dimensional subcone, any two of which already span the band cone.
//! Whether a single removal reproduces the whole cone is detected by an
//! order-theoretic criterion: it does exactly when the removal does not
//! change the reachability order the walk's arrows put on the vertices.

use crate::oracle::oracle_cone;
use crate::{ensure_special_biserial, lift_and_cut, StabilityCone, StabilityError, WordRef};
use algebra::BoundQuiver;
use cones::{span_union, Int};
use std::collections::BTreeSet;
use words::{check_string, BandWord, Letter, StringWord, Word};

/// What one letter removal produces.
#[derive(Clone, Debug)]
pub struct RemovalReport {
    /// Index of the removed letter in the band.
    pub removed_letter: usize,
    /// Name of its underlying arrow.
    pub removed_arrow: String,
    /// The remaining walk, rotated to start right after the removal.
    pub string: String,
    /// Canonical extreme rays of the removal string's cone.
    pub rays: Vec<Vec<Int>>,
    /// Whether the removal cone equals the band cone.
    pub equals_band_cone: bool,
    /// Whether the removal preserves the reachability order of the band's
    /// arrows on the vertices; agrees with `equals_band_cone`.
    pub posets_match: bool,
}

#[derive(Clone, Debug)]
pub struct UnionReport {
    pub band: String,
    /// Canonical extreme rays of the band cone.
    pub band_rays: Vec<Vec<Int>>,
    /// Number of removal pairs checked.
    pub pair_count: usize,
    /// True when every pair of removal cones spans the band cone; asserted.
    pub all_pairs_reproduce: bool,
    pub removals: Vec<RemovalReport>,
}

/// The string left by deleting the letter at `i`: the rotation starting just
/// past it, truncated before coming back around.
pub fn removal_string(
    q: &BoundQuiver,
    b: &BandWord,
    i: usize,
) -> Result<StringWord, StabilityError> {
    let n = b.len();
    if i >= n {
        return Err(StabilityError::BadWord(format!(
            "letter index {i} out of range for a band of length {n}"
        )));
    }
    let rotated = b.rotate(q, (i + 1) % n);
    let letters: Vec<Letter> = rotated.letters()[..n - 1].to_vec();
    let word = Word::from_letters(q, letters)
        .map_err(|e| StabilityError::BadWord(e.to_string()))?;
    check_string(q, &word).map_err(|e| StabilityError::BadWord(e.to_string()))
}

/// Transitive reachability order induced on the quiver vertices by the
/// letters' underlying arrows: target below source, closed transitively.
pub fn word_poset_closure(q: &BoundQuiver, letters: &[Letter]) -> BTreeSet<(usize, usize)> {
    let n = q.vertex_count();
    let mut edge = vec![vec![false; n]; n]; // edge[u][v]: v reachable below u in one step
    for l in letters {
        let a = q.arrow(l.arrow);
        edge[a.source][a.target] = true;
    }
    // Floyd–Warshall closure.
    for k in 0..n {
        let reach_k = edge[k].clone();
        for row in edge.iter_mut() {
            if row[k] {
                for (v, &r) in reach_k.iter().enumerate() {
                    if r {
                        row[v] = true;
                    }
                }
            }
        }
    }
    let mut pairs = BTreeSet::new();
    for (u, row) in edge.iter().enumerate() {
        for (v, &reachable) in row.iter().enumerate() {
            if reachable {
                pairs.insert((v, u)); // (lower, upper)
            }
        }
    }
    pairs
}

/// Compares the band cone of a thin band with the cones of its single-letter
/// removal strings: every pair of removals spans the band cone (asserted),
/// and a single removal reproduces it exactly when the removal keeps the
/// reachability order intact (asserted to agree, reported per removal).
pub fn band_string_union(q: &BoundQuiver, b: &BandWord) -> Result<UnionReport, StabilityError> {
    ensure_special_biserial(q)?;
    if !WordRef::Band(b).is_thin(q) {
        return Err(StabilityError::NotThin { descriptor: b.serialize(q) });
    }
    let n = b.len();
    let whole = oracle_cone(q, WordRef::Band(b))?;
    let band_closure = word_poset_closure(q, b.letters());

    let mut strings: Vec<StringWord> = Vec::with_capacity(n);
    let mut cones: Vec<StabilityCone> = Vec::with_capacity(n);
    for i in 0..n {
        let s = removal_string(q, b, i)?;
        cones.push(lift_and_cut(q, WordRef::String(&s))?);
        strings.push(s);
    }

    let mut pair_count = 0usize;
    let mut all_pairs = true;
    for i in 0..n {
        for j in (i + 1)..n {
            pair_count += 1;
            let u = span_union(&cones[i].cone, &cones[j].cone)?;
            if !u.canon_eq(&whole.cone) {
                all_pairs = false;
            }
        }
    }
    assert!(all_pairs, "two removal cones always span the band cone");

    let mut removals = Vec::with_capacity(n);
    for i in 0..n {
        let equals = cones[i].cone.canon_eq(&whole.cone);
        let closure = word_poset_closure(q, strings[i].letters());
        let posets_match = closure == band_closure;
        assert_eq!(
            equals, posets_match,
            "removal cone equality must match order preservation"
        );
        removals.push(RemovalReport {
            removed_letter: i,
            removed_arrow: q.arrow(b.letters()[i].arrow).name.clone(),
            string: strings[i].serialize(q),
            rays: cones[i].cone.canon_key().0,
            equals_band_cone: equals,
            posets_match,
        });
    }
    Ok(UnionReport {
        band: b.serialize(q),
        band_rays: whole.cone.canon_key().0,
        pair_count,
        all_pairs_reproduce: all_pairs,
        removals,
    })
}
