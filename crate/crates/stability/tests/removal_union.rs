//! Comparing a thin band cone with the cones of its single-letter removal
//! strings: each removal is a full-dimensional subcone, any two of them span
//! the band cone, and a removal reproduces it exactly when it preserves the
//! reachability order the walk's arrows induce on the vertices.

use algebra::{parse_algebra, BoundQuiver};
use cones::int_vec;
use stability::{band_string_union, removal_string, word_poset_closure, StabilityError};
use words::{check_band, parse_walk, BandWord};

fn square() -> BoundQuiver {
    parse_algebra(
        "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow g: 4 -> 3\narrow d: 1 -> 4\n",
    )
    .unwrap()
}

fn kronecker() -> BoundQuiver {
    parse_algebra("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n").unwrap()
}

fn diamond() -> BoundQuiver {
    parse_algebra(
        "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow c: 2 -> 4\narrow d: 3 -> 4\n",
    )
    .unwrap()
}

fn thick_cycle() -> BoundQuiver {
    parse_algebra(
        "vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\narrow c: 2 -> 1\n\
         zero: a b\nzero: b a\nzero: a c a\n",
    )
    .unwrap()
}

fn band(q: &BoundQuiver, text: &str) -> BandWord {
    check_band(q, &parse_walk(q, text).unwrap()).unwrap()
}

#[test]
fn removal_strings_are_the_truncated_rotations() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let expected = ["b g- d-", "g- d- a", "d- a b", "a b g-"];
    for (i, want) in expected.iter().enumerate() {
        assert_eq!(removal_string(&q, &b, i).unwrap().serialize(&q), *want);
    }
    assert!(matches!(
        removal_string(&q, &b, 4),
        Err(StabilityError::BadWord(_))
    ));
}

#[test]
fn square_band_removals_each_lose_one_ray() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let report = band_string_union(&q, &b).unwrap();
    assert_eq!(report.band, "a b g- d-");
    let mut band_rays = vec![
        int_vec(&[1, -1, 0, 0]),
        int_vec(&[0, 1, -1, 0]),
        int_vec(&[0, 0, -1, 1]),
        int_vec(&[1, 0, 0, -1]),
    ];
    band_rays.sort();
    assert_eq!(report.band_rays, band_rays);
    assert_eq!(report.pair_count, 6);
    assert!(report.all_pairs_reproduce);

    // Per removal: the three surviving band rays, in canonical order.
    let survivors = |missing: [i64; 4]| -> Vec<Vec<cones::Int>> {
        let gone = int_vec(&missing);
        band_rays.iter().filter(|r| **r != gone).cloned().collect()
    };
    let expected = [
        ("a", "b g- d-", survivors([1, -1, 0, 0])),
        ("b", "g- d- a", survivors([0, 1, -1, 0])),
        ("g", "d- a b", survivors([0, 0, -1, 1])),
        ("d", "a b g-", survivors([1, 0, 0, -1])),
    ];
    assert_eq!(report.removals.len(), 4);
    for (i, (arrow, text, rays)) in expected.iter().enumerate() {
        let rem = &report.removals[i];
        assert_eq!(rem.removed_letter, i);
        assert_eq!(&rem.removed_arrow, arrow);
        assert_eq!(&rem.string, text);
        assert_eq!(&rem.rays, rays);
        assert!(!rem.equals_band_cone);
        assert!(!rem.posets_match);
    }
}

#[test]
fn parallel_arrows_make_removals_redundant() {
    let q = kronecker();
    let b = band(&q, "a b-");
    let report = band_string_union(&q, &b).unwrap();
    assert_eq!(report.band_rays, vec![int_vec(&[1, -1])]);
    assert_eq!(report.pair_count, 1);
    // Either arrow alone still reaches the sink, so both removals keep the
    // order and reproduce the whole cone.
    for rem in &report.removals {
        assert!(rem.equals_band_cone);
        assert!(rem.posets_match);
        assert_eq!(rem.rays, vec![int_vec(&[1, -1])]);
    }
}

#[test]
fn diamond_band_report_is_internally_consistent() {
    let q = diamond();
    let b = band(&q, "a c d- b-");
    let report = band_string_union(&q, &b).unwrap();
    assert_eq!(report.pair_count, 6);
    assert!(report.all_pairs_reproduce);
    assert_eq!(report.removals.len(), 4);
    // Each arrow of the diamond is the only route between its endpoints, so
    // no removal preserves the order.
    for rem in &report.removals {
        assert!(!rem.equals_band_cone);
        assert!(!rem.posets_match);
    }
}

#[test]
fn non_thin_bands_are_rejected() {
    let q = thick_cycle();
    let b = band(&q, "a c b- c");
    assert!(matches!(
        band_string_union(&q, &b),
        Err(StabilityError::NotThin { .. })
    ));
}

#[test]
fn reachability_closure_is_transitive() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let closure = word_poset_closure(&q, b.letters());
    let expected: std::collections::BTreeSet<(usize, usize)> =
        [(1, 0), (2, 0), (2, 1), (2, 3), (3, 0)].into_iter().collect();
    assert_eq!(closure, expected);
    // Dropping the long side loses only its own pair: the other relations
    // survive through the short side.
    let s = removal_string(&q, &b, 3).unwrap();
    let pruned = word_poset_closure(&q, s.letters());
    let survivors: std::collections::BTreeSet<(usize, usize)> =
        [(1, 0), (2, 0), (2, 1), (2, 3)].into_iter().collect();
    assert_eq!(pruned, survivors);
}
