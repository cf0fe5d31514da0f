//! Finite posets presented by their Hasse diagrams, connected compatible
//! partitions, and the associated order cones.
//!
//! A Hasse quiver records the covering relation x ⋖ y as an arrow y → x. The
//! order cone of a poset is spanned by e_upper − e_lower over the covering
//! pairs; its faces correspond to the partitions of the poset into connected
//! blocks whose quotient relation closes to a partial order, and its dual is
//! the system of monotone labelings {x : x_i ≤ x_j whenever i ⋖ j}.

use std::collections::{BTreeSet, VecDeque};

use algebra::BoundQuiver;
use cones::linalg::unit;
use cones::{
    dual_cone, face_ray_supports, intersect_subspace, relate, ConeError, Int, RationalCone,
    Relation,
};
use thiserror::Error;

/// Elements beyond this count make partition enumeration (Bell numbers) and
/// the pairwise face checks unreasonable.
pub const CCP_CAP: usize = 8;

/// Exhaustive poset enumeration walks 3^(n choose 2) candidate relations.
pub const ENUMERATION_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element index {0} is out of range")]
    BadIndex(usize),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("duplicate covering pair {lower} < {upper}")]
    DuplicateCover { lower: String, upper: String },
    #[error("covering pair relates {0} to itself")]
    SelfCover(String),
    #[error("covering relation has a directed cycle")]
    Cyclic,
    #[error("pair {lower} < {upper} is already implied transitively; the input must be a transitive reduction")]
    TransitiveCover { lower: String, upper: String },
    #[error("quiver has zero relations; a Hasse diagram is a bare quiver")]
    HasRelations,
    #[error("poset has {n} elements; this operation is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A finite poset stored as its covering pairs (lower, upper) together with
/// the cached strict order they generate.
#[derive(Clone, Debug)]
pub struct Poset {
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    below: Vec<BTreeSet<usize>>,
}

impl Poset {
    /// Validates that the covering pairs are acyclic and form a transitive
    /// reduction (no pair is implied by the others), then caches the closure.
    pub fn new(elements: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Poset, PosetError> {
        let n = elements.len();
        {
            let mut seen = BTreeSet::new();
            for name in &elements {
                if !seen.insert(name.clone()) {
                    return Err(PosetError::DuplicateName(name.clone()));
                }
            }
        }
        let mut seen_pairs = BTreeSet::new();
        for &(l, u) in &covers {
            if l >= n {
                return Err(PosetError::BadIndex(l));
            }
            if u >= n {
                return Err(PosetError::BadIndex(u));
            }
            if l == u {
                return Err(PosetError::SelfCover(elements[l].clone()));
            }
            if !seen_pairs.insert((l, u)) {
                return Err(PosetError::DuplicateCover {
                    lower: elements[l].clone(),
                    upper: elements[u].clone(),
                });
            }
        }
        // downward edges: upper -> lower
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(l, u) in &covers {
            down[u].push(l);
        }
        // cycle detection and closure by iterative depth-first search
        let mut below: Vec<Option<BTreeSet<usize>>> = vec![None; n];
        let mut in_progress = vec![false; n];
        for start in 0..n {
            descend(start, &down, &mut below, &mut in_progress)?;
        }
        let below: Vec<BTreeSet<usize>> = below.into_iter().map(|s| s.unwrap()).collect();
        // Hasse property: no cover may follow from the others. A pair (l, u)
        // is redundant exactly when some other cover (a, u) already has l
        // strictly below (or equal to) a.
        for &(l, u) in &covers {
            for &(a, u2) in &covers {
                if u2 == u && a != l && (a == l || below[a].contains(&l)) {
                    return Err(PosetError::TransitiveCover {
                        lower: elements[l].clone(),
                        upper: elements[u].clone(),
                    });
                }
            }
        }
        Ok(Poset { elements, covers, below })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Covering pairs as (lower, upper) element indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict order: is a < b?
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(&a)
    }

    /// The strict order as a set of (smaller, larger) pairs.
    pub fn closure_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (b, set) in self.below.iter().enumerate() {
            for &a in set {
                out.insert((a, b));
            }
        }
        out
    }

    /// Connectivity of the underlying undirected Hasse graph.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n <= 1 {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(l, u) in &self.covers {
            adj[l].push(u);
            adj[u].push(l);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }
}

fn descend(
    v: usize,
    down: &[Vec<usize>],
    below: &mut Vec<Option<BTreeSet<usize>>>,
    in_progress: &mut Vec<bool>,
) -> Result<(), PosetError> {
    if below[v].is_some() {
        return Ok(());
    }
    if in_progress[v] {
        return Err(PosetError::Cyclic);
    }
    in_progress[v] = true;
    let mut acc = BTreeSet::new();
    for &w in &down[v] {
        descend(w, down, below, in_progress)?;
        acc.insert(w);
        acc.extend(below[w].as_ref().unwrap().iter().copied());
    }
    in_progress[v] = false;
    below[v] = Some(acc);
    Ok(())
}

/// Reads a Hasse diagram: an arrow y → x records the covering pair x ⋖ y.
/// Quivers with zero relations, cycles, parallel arrows, or transitively
/// implied arrows are rejected, not repaired.
pub fn poset_from_quiver(q: &BoundQuiver) -> Result<Poset, PosetError> {
    if !q.relations().is_empty() {
        return Err(PosetError::HasRelations);
    }
    let elements: Vec<String> = q.vertices().to_vec();
    let covers: Vec<(usize, usize)> =
        q.arrows().iter().map(|a| (a.target, a.source)).collect();
    Poset::new(elements, covers)
}

/// A partition of the elements into blocks, each block sorted ascending and
/// the blocks ordered by their least element, together with the strict
/// quotient order its covers induce on the blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
    pub quotient_order: BTreeSet<(usize, usize)>,
}

impl Partition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Exactly one block of size two, all others singletons — these are the
    /// partitions that correspond to single covering relations.
    pub fn is_single_doubleton(&self) -> bool {
        self.blocks.iter().filter(|b| b.len() == 2).count() == 1
            && self.blocks.iter().all(|b| b.len() <= 2)
    }

    /// Human-readable form using element names: blocks joined by `|`.
    pub fn display(&self, p: &Poset) -> String {
        self.blocks
            .iter()
            .map(|b| {
                b.iter().map(|&i| p.elements()[i].as_str()).collect::<Vec<_>>().join(" ")
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Does every block of `fine` sit inside a block of `coarse`?
pub fn refines(fine: &Partition, coarse: &Partition) -> bool {
    let mut owner = std::collections::HashMap::new();
    for (bi, b) in coarse.blocks.iter().enumerate() {
        for &x in b {
            owner.insert(x, bi);
        }
    }
    fine.blocks.iter().all(|b| {
        let first = owner[&b[0]];
        b.iter().all(|x| owner[x] == first)
    })
}

/// All partitions of the poset into blocks that are connected in the Hasse
/// graph and whose quotient relation closes to a partial order. Enumerated
/// through restricted-growth strings, so the output order is deterministic
/// and each partition lists its blocks by least element.
pub fn enumerate_ccp(p: &Poset) -> Result<Vec<Partition>, PosetError> {
    let n = p.len();
    if n > CCP_CAP {
        return Err(PosetError::TooLarge { n, cap: CCP_CAP });
    }
    if n == 0 {
        return Ok(vec![Partition { blocks: vec![], quotient_order: BTreeSet::new() }]);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(l, u) in p.covers() {
        adj[l].push(u);
        adj[u].push(l);
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    grow(1, 1, &mut labels, p, &adj, &mut out);
    Ok(out)
}

fn grow(
    i: usize,
    used: usize,
    labels: &mut Vec<usize>,
    p: &Poset,
    adj: &[Vec<usize>],
    out: &mut Vec<Partition>,
) {
    let n = p.len();
    if i == n {
        if let Some(part) = compatible_partition(labels, used, p, adj) {
            out.push(part);
        }
        return;
    }
    for b in 0..=used {
        labels[i] = b;
        grow(i + 1, used.max(b + 1), labels, p, adj, out);
    }
}

/// Checks one candidate labeling: blocks connected in the Hasse graph and
/// quotient relation acyclic. Returns the finished partition if compatible.
fn compatible_partition(
    labels: &[usize],
    used: usize,
    p: &Poset,
    adj: &[Vec<usize>],
) -> Option<Partition> {
    let n = labels.len();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); used];
    for (x, &b) in labels.iter().enumerate() {
        blocks[b].push(x);
    }
    // each block connected within the undirected Hasse graph
    for block in &blocks {
        let members: BTreeSet<usize> = block.iter().copied().collect();
        let mut seen = BTreeSet::from([block[0]]);
        let mut queue = VecDeque::from([block[0]]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if members.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() != block.len() {
            return None;
        }
    }
    // quotient relation between distinct blocks must be acyclic
    let mut edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); used];
    for &(l, u) in p.covers() {
        if labels[l] != labels[u] {
            edges[labels[l]].insert(labels[u]);
        }
    }
    let mut state = vec![0u8; used]; // 0 unseen, 1 in progress, 2 done
    for s in 0..used {
        if quotient_cycle(s, &edges, &mut state) {
            return None;
        }
    }
    // transitive closure of the quotient relation
    let mut quotient_order = BTreeSet::new();
    for s in 0..used {
        let mut queue: VecDeque<usize> = edges[s].iter().copied().collect();
        let mut seen: BTreeSet<usize> = edges[s].clone();
        while let Some(v) = queue.pop_front() {
            for &w in &edges[v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        for v in seen {
            quotient_order.insert((s, v));
        }
    }
    let _ = n;
    Some(Partition { blocks, quotient_order })
}

fn quotient_cycle(v: usize, edges: &[BTreeSet<usize>], state: &mut Vec<u8>) -> bool {
    if state[v] == 2 {
        return false;
    }
    if state[v] == 1 {
        return true;
    }
    state[v] = 1;
    for &w in &edges[v] {
        if quotient_cycle(w, edges, state) {
            return true;
        }
    }
    state[v] = 2;
    false
}

/// The order cone ⟨e_upper − e_lower : lower ⋖ upper⟩ in the element basis.
pub fn cone_of_poset(p: &Poset) -> RationalCone {
    let n = p.len();
    let rays: Vec<Vec<Int>> = p
        .covers()
        .iter()
        .map(|&(l, u)| {
            let mut v = vec![Int::from(0); n];
            v[u] = Int::from(1);
            v[l] = Int::from(-1);
            v
        })
        .collect();
    RationalCone::from_vrep(n, rays, Vec::new()).expect("rays match the element count")
}

/// The face of the order cone cut out by a partition: one equality
/// Σ_{x ∈ B} coord_x = 0 per block B.
pub fn face_of_partition(p: &Poset, part: &Partition) -> Result<RationalCone, PosetError> {
    let n = p.len();
    let eqs: Vec<Vec<Int>> = part
        .blocks
        .iter()
        .map(|b| {
            let mut chi = vec![Int::from(0); n];
            for &x in b {
                chi[x] = Int::from(1);
            }
            chi
        })
        .collect();
    Ok(intersect_subspace(&cone_of_poset(p), &eqs)?)
}

#[derive(Clone, Debug)]
pub struct CorrespondenceRow {
    pub partition: String,
    pub block_count: usize,
    pub face_dim: usize,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub partition_count: usize,
    pub face_count: usize,
    pub ray_count: usize,
    pub cover_count: usize,
    pub counts_match: bool,
    pub rays_match_covers: bool,
    pub bijective: bool,
    pub refinement_respected: bool,
    pub rows: Vec<CorrespondenceRow>,
}

/// Builds the order cone, enumerates its faces and the connected compatible
/// partitions, and checks the full correspondence: equal counts, rays ↔
/// single-doubleton partitions (covering relations), a partition-to-face
/// bijection, and refinement mapping to face inclusion.
pub fn face_correspondence(p: &Poset) -> Result<CorrespondenceReport, PosetError> {
    let parts = enumerate_ccp(p)?;
    let cone = cone_of_poset(p).canonical();
    let supports = face_ray_supports(&cone);
    let cover_count = p.covers().len();
    let ray_count = cone.rays().len();
    let doubletons = parts.iter().filter(|q| q.is_single_doubleton()).count();

    // true faces, keyed canonically
    let mut true_keys = BTreeSet::new();
    for s in &supports {
        let rays: Vec<Vec<Int>> = s.iter().map(|&i| cone.rays()[i].clone()).collect();
        let f = RationalCone::from_vrep(cone.ambient_dim(), rays, cone.lineality().to_vec())?;
        true_keys.insert(f.canon_key());
    }

    let faces: Vec<RationalCone> = parts
        .iter()
        .map(|q| face_of_partition(p, q))
        .collect::<Result<_, _>>()?;
    let part_keys: BTreeSet<_> = faces.iter().map(|f| f.canon_key()).collect();
    let bijective = part_keys.len() == parts.len() && part_keys == true_keys;

    let mut refinement_respected = true;
    for (i, fine) in parts.iter().enumerate() {
        for (j, coarse) in parts.iter().enumerate() {
            if i != j && refines(fine, coarse) {
                let rel = relate(&faces[j], &faces[i])?;
                if !matches!(rel, Relation::Subcone | Relation::Equal) {
                    refinement_respected = false;
                }
            }
        }
    }

    let rows = parts
        .iter()
        .zip(&faces)
        .map(|(q, f)| CorrespondenceRow {
            partition: q.display(p),
            block_count: q.block_count(),
            face_dim: f.dim(),
        })
        .collect();

    let report = CorrespondenceReport {
        partition_count: parts.len(),
        face_count: supports.len(),
        ray_count,
        cover_count,
        counts_match: parts.len() == supports.len(),
        rays_match_covers: ray_count == cover_count && doubletons == cover_count,
        bijective,
        refinement_respected,
        rows,
    };
    assert!(report.counts_match, "face count differs from partition count");
    assert!(report.rays_match_covers, "rays do not match covering relations");
    assert!(report.bijective, "partition faces do not biject with cone faces");
    assert!(report.refinement_respected, "refinement broke face inclusion");
    Ok(report)
}

/// The halfspace system of monotone labelings {x : x_lower ≤ x_upper}.
pub fn monotone_system(p: &Poset) -> RationalCone {
    let n = p.len();
    let ineqs: Vec<Vec<Int>> = p
        .covers()
        .iter()
        .map(|&(l, u)| {
            let mut v = unit(n, l);
            v[u] = Int::from(-1);
            v
        })
        .collect();
    RationalCone::from_hrep(n, Vec::new(), ineqs).expect("rows match the element count")
}

#[derive(Clone, Debug)]
pub struct MonotoneReport {
    pub dual_matches: bool,
    pub double_dual_matches: bool,
    pub dual_facet_count: usize,
}

/// Asserts that the dual of the order cone is exactly the monotone system,
/// and that dualizing twice returns the original canonical cone.
pub fn monotone_dual(p: &Poset) -> MonotoneReport {
    let cone = cone_of_poset(p);
    let dual = dual_cone(&cone);
    let report = MonotoneReport {
        dual_matches: dual.canon_eq(&monotone_system(p)),
        double_dual_matches: dual_cone(&dual).canon_eq(&cone),
        dual_facet_count: dual.canonical().inequalities().len(),
    };
    assert!(report.dual_matches, "dual cone is not the monotone halfspace system");
    assert!(report.double_dual_matches, "double dual changed the cone");
    report
}

/// Every labeled poset on `n` elements (as its Hasse diagram), found by
/// assigning each unordered pair one of <, >, or incomparable and keeping the
/// transitive assignments. Capped: the candidate count is 3^(n choose 2).
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, PosetError> {
    if n > ENUMERATION_CAP {
        return Err(PosetError::TooLarge { n, cap: ENUMERATION_CAP });
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    if n == 0 {
        return Ok(vec![Poset::new(vec![], vec![]).unwrap()]);
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    'candidate: for code in 0..total {
        let mut less = vec![vec![false; n]; n];
        let mut rest = code;
        for &(i, j) in &pairs {
            match rest % 3 {
                1 => less[i][j] = true,
                2 => less[j][i] = true,
                _ => {}
            }
            rest /= 3;
        }
        for a in 0..n {
            for b in 0..n {
                if less[a][b]
                    && less[b].iter().zip(&less[a]).any(|(&below_b, &below_a)| below_b && !below_a)
                {
                    continue 'candidate;
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if less[a][b] && !(0..n).any(|c| less[a][c] && less[c][b]) {
                    covers.push((a, b));
                }
            }
        }
        out.push(Poset::new(names.clone(), covers).expect("transitive relation yields a poset"));
    }
    Ok(out)
}

/// The posets from `enumerate_posets` whose Hasse graphs are connected.
pub fn enumerate_connected_posets(n: usize) -> Result<Vec<Poset>, PosetError> {
    Ok(enumerate_posets(n)?.into_iter().filter(|p| p.is_connected()).collect())
}
