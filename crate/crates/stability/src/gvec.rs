//! g-vectors of string modules: the difference of the multiplicity vectors of
//! the two projectives in a minimal projective presentation P₋₁ → P₀ → M.
//! [`g_vector_oracle`] builds that presentation explicitly from the module's
//! basis-and-action description; [`band_g`], [`prefix_g`] and [`g_vector`]
//! are the closed combinatorial formulas for band powers with a prefix.

use crate::{add_vec, scale_vec, zero_vec, StabilityError};
use algebra::{projective_paths, BoundQuiver};
use cones::linalg::{kernel_basis, rank};
use cones::Int;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use words::{BandWord, Direction, StringWord};

/// One basis column of the projective cover P₀: a relation-free path out of
/// the vertex of a top position, together with where it lands in the module.
struct Column {
    top: usize,
    path: Vec<usize>,
    end_vertex: usize,
    /// Position hit by acting with `path` on the top's generator, if nonzero.
    image: Option<usize>,
}

/// Computes the g-vector from an explicit minimal projective presentation of
/// the string module: g = mult(P₀) − mult(P₋₁), where P₀ covers the tops of
/// the module and P₋₁ covers the tops of the kernel of P₀ → M.
pub fn g_vector_oracle(q: &BoundQuiver, w: &StringWord) -> Result<Vec<Int>, StabilityError> {
    let letters = w.letters();
    let positions = letters.len() + 1;
    let vertex_at: Vec<usize> = (0..positions).map(|p| w.vertex_at(q, p)).collect();

    // The arrow action on the basis of positions: each letter moves one basis
    // element to a neighbor, direct letters forward, inverse letters back.
    let mut act: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, l) in letters.iter().enumerate() {
        match l.direction {
            Direction::Direct => act.insert((l.arrow, i), i + 1),
            Direction::Inverse => act.insert((l.arrow, i + 1), i),
        };
    }
    let apply = |path: &[usize], start: usize| -> Option<usize> {
        let mut cur = start;
        for &a in path {
            cur = *act.get(&(a, cur))?;
        }
        Some(cur)
    };

    // Tops of M: positions no arrow maps into.
    let hit: BTreeSet<usize> = act.values().copied().collect();
    let tops: Vec<usize> = (0..positions).filter(|p| !hit.contains(p)).collect();

    // Basis of P₀ = ⊕ P(vertex of top): all relation-free paths per top.
    let mut cols: Vec<Column> = Vec::new();
    let mut col_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for &t in &tops {
        for path in projective_paths(q, vertex_at[t])? {
            let end_vertex = q.path_end(vertex_at[t], &path);
            let image = apply(&path, t);
            col_index.insert((t, path.clone()), cols.len());
            cols.push(Column { top: t, path, end_vertex, image });
        }
    }

    // ker(P₀ → M), block by block over the vertices: the map sends each
    // column to a single position or to zero, so the matrix per vertex has
    // 0/1 entries.
    let mut kernel: Vec<(usize, Vec<(usize, Int)>)> = Vec::new(); // (vertex, sparse coords)
    for v in 0..q.vertex_count() {
        let vcols: Vec<usize> = (0..cols.len()).filter(|&c| cols[c].end_vertex == v).collect();
        if vcols.is_empty() {
            continue;
        }
        let vpos: Vec<usize> = (0..positions).filter(|&p| vertex_at[p] == v).collect();
        let rows: Vec<Vec<Int>> = vpos
            .iter()
            .map(|&p| {
                vcols
                    .iter()
                    .map(|&c| {
                        if cols[c].image == Some(p) { Int::from(1) } else { Int::zero() }
                    })
                    .collect()
            })
            .collect();
        for k in kernel_basis(&rows, vcols.len()) {
            let sparse: Vec<(usize, Int)> = k
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (vcols[i], x))
                .collect();
            kernel.push((v, sparse));
        }
    }

    // rad K: images of kernel vectors under each arrow, as vectors over the
    // columns (appending the arrow to each column's path stays inside P₀
    // unless a relation kills it).
    let mut rad_by_vertex: BTreeMap<usize, Vec<Vec<Int>>> = BTreeMap::new();
    for (_, sparse) in &kernel {
        for (a_idx, arrow) in q.arrows().iter().enumerate() {
            let mut img = vec![Int::zero(); cols.len()];
            let mut nonzero = false;
            for (ci, coef) in sparse {
                let col = &cols[*ci];
                if col.end_vertex != arrow.source {
                    continue;
                }
                let mut extended = col.path.clone();
                extended.push(a_idx);
                if q.relation_at_suffix(&extended) {
                    continue;
                }
                let j = col_index[&(col.top, extended)];
                img[j] = &img[j] + coef;
                nonzero = true;
            }
            if nonzero && img.iter().any(|x| !x.is_zero()) {
                rad_by_vertex.entry(arrow.target).or_default().push(img);
            }
        }
    }

    // g = mult(P₀) − mult(P₋₁); mult(P₋₁)_v = dim of the degree-v part of
    // K / rad K.
    let mut g = zero_vec(q.vertex_count());
    for &t in &tops {
        g[vertex_at[t]] = &g[vertex_at[t]] + Int::from(1);
    }
    let mut kernel_dim_at: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, _) in &kernel {
        *kernel_dim_at.entry(*v).or_insert(0) += 1;
    }
    for (v, gv) in g.iter_mut().enumerate() {
        let k_dim = kernel_dim_at.get(&v).copied().unwrap_or(0);
        let rad_rank = rad_by_vertex.get(&v).map(|rows| rank(rows)).unwrap_or(0);
        let top_dim = k_dim - rad_rank;
        *gv = &*gv - Int::from(top_dim as i64);
    }
    Ok(g)
}

/// Whether the pair of consecutive letters (into, out of a position) makes
/// the position a top (+1), a socle hit feeding the presentation's kernel
/// (−1), or neither (0).
fn corner_sign(prev: Direction, next: Direction) -> i64 {
    match (prev, next) {
        (Direction::Inverse, Direction::Direct) => 1,
        (Direction::Direct, Direction::Inverse) => -1,
        _ => 0,
    }
}

/// g-vector of the band module (multiplicity one): position `i` contributes
/// the sign of its corner, determined by the letters before and at `i`
/// cyclically.
pub fn band_g(q: &BoundQuiver, b: &BandWord) -> Vec<Int> {
    let n = b.len();
    let letters = b.letters();
    let mut g = zero_vec(q.vertex_count());
    for i in 0..n {
        let s = corner_sign(letters[(i + n - 1) % n].direction, letters[i].direction);
        if s != 0 {
            let v = b.vertex_at(q, i);
            g[v] = &g[v] + Int::from(s);
        }
    }
    g
}

/// Boundary correction for the length-`m` prefix of the band: what the
/// prefix's own g-vector contributes beyond full turns. With `opposite` the
/// direction of every letter is read reversed, which computes the analogous
/// correction for the dual boundary.
pub fn prefix_g(
    q: &BoundQuiver,
    b: &BandWord,
    m: usize,
    opposite: bool,
) -> Result<Vec<Int>, StabilityError> {
    let n = b.len();
    if m >= n {
        return Err(StabilityError::BadWord(format!(
            "prefix length {m} must be shorter than the band length {n}"
        )));
    }
    let letters = b.letters();
    let dir = |d: Direction| -> Direction {
        if opposite {
            match d {
                Direction::Direct => Direction::Inverse,
                Direction::Inverse => Direction::Direct,
            }
        } else {
            d
        }
    };
    let pos = |i: usize| b.vertex_at(q, i % n);
    let mut g = zero_vec(q.vertex_count());
    let mut bump = |v: usize, s: i64| {
        g[v] = &g[v] + Int::from(s);
    };
    // Start of the prefix is a top unless the letter before it (the band's
    // last letter conceptually absent here) already covered it: for the
    // standalone prefix the start contributes +1 when the prefix is trivial
    // or begins with a direct letter.
    if m == 0 || dir(letters[0].direction) == Direction::Direct {
        bump(pos(0), 1);
    }
    // End of the prefix is a top when entered backwards.
    if m >= 1 && dir(letters[m - 1].direction) == Direction::Inverse {
        bump(pos(m), 1);
    }
    // The full-turn formula counts a corner at the seam and at the close;
    // the prefix replaces them by these two boundary terms.
    if dir(letters[m].direction) == Direction::Direct {
        bump(pos(m + 1), -1);
    }
    if dir(letters[n - 1].direction) == Direction::Inverse {
        bump(pos(n - 1), -1);
    }
    for j in 1..m {
        let s = match (dir(letters[j - 1].direction), dir(letters[j].direction)) {
            (Direction::Inverse, Direction::Direct) => 1,
            (Direction::Direct, Direction::Inverse) => -1,
            _ => 0,
        };
        if s != 0 {
            bump(pos(j), s);
        }
    }
    Ok(g)
}

/// g-vector of the walk made of `r` full turns of the band plus its first
/// `m` letters: `r · band_g + prefix_g`. With `r = 0` this is the g-vector
/// of the prefix alone (the simple at the base vertex when `m = 0`).
pub fn g_vector(
    q: &BoundQuiver,
    b: &BandWord,
    m: usize,
    r: usize,
) -> Result<Vec<Int>, StabilityError> {
    let per_turn = band_g(q, b);
    let boundary = prefix_g(q, b, m, false)?;
    Ok(add_vec(&scale_vec(&Int::from(r as i64), &per_turn), &boundary))
}
