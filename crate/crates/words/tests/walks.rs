use algebra::{parse_algebra, BoundQuiver};
use words::{
    check_band, check_string, cyclic_substrings, occurrence_dimension_vector, parse_walk,
    substrings, BandError, StringError, SubwordKind, WalkError,
};

fn square() -> BoundQuiver {
    // two directed paths 1 -> 2 -> 3 and 1 -> 4 -> 3, no relations
    parse_algebra(
        "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow g: 4 -> 3\narrow d: 1 -> 4\n",
    )
    .unwrap()
}

fn cyclic3() -> BoundQuiver {
    parse_algebra(
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\n\
         zero: a b c a b\nzero: b c a b c\nzero: c a b c a\n",
    )
    .unwrap()
}

fn gentle_a3() -> BoundQuiver {
    parse_algebra("vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nzero: a b\n").unwrap()
}

#[test]
fn parse_and_serialize_round_trip() {
    let q = square();
    for text in ["a", "g-", "g- d- a b", "a b", "d g b- a-", "@3", "@1"] {
        let w = parse_walk(&q, text).unwrap();
        assert_eq!(w.serialize(&q), text);
        let again = parse_walk(&q, &w.serialize(&q)).unwrap();
        assert_eq!(w, again);
    }
}

#[test]
fn walk_endpoints_and_vertices() {
    let q = square();
    let w = parse_walk(&q, "g- d- a b").unwrap();
    assert_eq!(w.start(), q.vertex_index("3").unwrap());
    assert_eq!(w.end(&q), q.vertex_index("3").unwrap());
    let names: Vec<&str> = w.vertices(&q).iter().map(|&v| q.vertices()[v].as_str()).collect();
    assert_eq!(names, vec!["3", "4", "1", "2", "3"]);
    assert_eq!(w.dimension_vector(&q), vec![1, 1, 2, 1]);

    let t = parse_walk(&q, "@2").unwrap();
    assert!(t.is_empty());
    assert_eq!(t.start(), 1);
    assert_eq!(t.end(&q), 1);
    assert_eq!(t.dimension_vector(&q), vec![0, 1, 0, 0]);
}

#[test]
fn parse_rejects_bad_walks() {
    let q = square();
    assert_eq!(parse_walk(&q, "  "), Err(WalkError::Empty));
    assert!(matches!(parse_walk(&q, "a x"), Err(WalkError::UnknownArrow(_))));
    assert!(matches!(parse_walk(&q, "@7"), Err(WalkError::UnknownVertex(_))));
    assert!(matches!(parse_walk(&q, "@1 a"), Err(WalkError::MixedTrivial(_))));
    // a ends at 2 but g starts at 4
    let err = parse_walk(&q, "a g").unwrap_err();
    assert!(matches!(err, WalkError::NotComposable { index: 0, .. }), "{err}");
}

#[test]
fn reverse_is_an_involution_and_flips_letters() {
    let q = square();
    let w = parse_walk(&q, "a b").unwrap();
    let r = w.reverse(&q);
    assert_eq!(r.serialize(&q), "b- a-");
    assert_eq!(r.start(), w.end(&q));
    assert_eq!(r.reverse(&q), w);

    let t = parse_walk(&q, "@4").unwrap();
    assert_eq!(t.reverse(&q), t);
}

#[test]
fn string_check_accepts_and_rejects() {
    let q = square();
    assert!(check_string(&q, &parse_walk(&q, "g- d- a b").unwrap()).is_ok());
    assert!(check_string(&q, &parse_walk(&q, "@1").unwrap()).is_ok());
    let unreduced = parse_walk(&q, "a a-").unwrap();
    assert_eq!(
        check_string(&q, &unreduced).unwrap_err(),
        StringError::NotReduced { position: 0 }
    );

    let g = gentle_a3();
    let w = parse_walk(&g, "a b").unwrap();
    assert_eq!(
        check_string(&g, &w).unwrap_err(),
        StringError::HitsRelation { relation: "a b".to_string() }
    );
    // the same relation is found inside a backwards run
    let w = parse_walk(&g, "b- a-").unwrap();
    assert_eq!(
        check_string(&g, &w).unwrap_err(),
        StringError::HitsRelation { relation: "a b".to_string() }
    );
}

#[test]
fn long_relations_only_kill_long_runs() {
    let q = cyclic3();
    assert!(check_string(&q, &parse_walk(&q, "a b c a").unwrap()).is_ok());
    let w = parse_walk(&q, "a b c a b").unwrap();
    assert_eq!(
        check_string(&q, &w).unwrap_err(),
        StringError::HitsRelation { relation: "a b c a b".to_string() }
    );
}

#[test]
fn band_check_accepts_the_square_cycle() {
    let q = square();
    let b = check_band(&q, &parse_walk(&q, "a b g- d-").unwrap()).unwrap();
    assert_eq!(b.dimension_vector(&q), vec![1, 1, 1, 1]);
    // every rotation is again a band
    for k in 0..4 {
        let rot = b.rotate(&q, k);
        assert!(check_band(&q, rot.word()).is_ok());
    }
    // reversal too
    assert!(check_band(&q, b.reverse(&q).word()).is_ok());
}

#[test]
fn band_check_rejections() {
    let q = square();
    assert_eq!(
        check_band(&q, &parse_walk(&q, "@1").unwrap()).unwrap_err(),
        BandError::Trivial
    );
    assert!(matches!(
        check_band(&q, &parse_walk(&q, "a b").unwrap()).unwrap_err(),
        BandError::NotClosed { .. }
    ));
    assert_eq!(
        check_band(&q, &parse_walk(&q, "a a-").unwrap()).unwrap_err(),
        BandError::NotReduced { position: 0 }
    );
    assert_eq!(
        check_band(&q, &parse_walk(&q, "a b g- d- a b g- d-").unwrap()).unwrap_err(),
        BandError::NotPrimitive { period: 4 }
    );

    let c = cyclic3();
    assert_eq!(
        check_band(&c, &parse_walk(&c, "a b c").unwrap()).unwrap_err(),
        BandError::OneDirectional
    );
}

#[test]
fn band_relations_are_checked_across_the_seam() {
    // three loops with the only relation spanning the seam of the cycle:
    // single traversals of "x y- z" avoid it, the second turn hits z then x.
    let q = parse_algebra(
        "vertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\narrow z: 1 -> 1\nzero: z x\n",
    )
    .unwrap();
    let w = parse_walk(&q, "x y- z").unwrap();
    assert!(check_string(&q, &w).is_ok());
    assert_eq!(
        check_band(&q, &w).unwrap_err(),
        BandError::HitsRelation { relation: "z x".to_string() }
    );
}

#[test]
fn canonical_rotation_is_least_and_stable() {
    let q = square();
    let b = check_band(&q, &parse_walk(&q, "b g- d- a").unwrap()).unwrap();
    let (k, canon) = b.canonical_rotation(&q);
    assert_eq!(k, 3);
    assert_eq!(canon.serialize(&q), "a b g- d-");
    let (k2, canon2) = canon.canonical_rotation(&q);
    assert_eq!(k2, 0);
    assert_eq!(canon2.serialize(&q), "a b g- d-");

    // forwards sorts before backwards on the same arrow name
    let kron = parse_algebra("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n").unwrap();
    let b = check_band(&kron, &parse_walk(&kron, "b- a").unwrap()).unwrap();
    let (_, canon) = b.canonical_rotation(&kron);
    assert_eq!(canon.serialize(&kron), "a b-");
}

#[test]
fn powers_with_prefix_concatenate() {
    let q = square();
    let b = check_band(&q, &parse_walk(&q, "a b g- d-").unwrap()).unwrap();
    let w = b.power_with_prefix(2, 1);
    assert_eq!(w.serialize(&q), "a b g- d- a b g- d- a");
    assert_eq!(w.len(), 9);
    assert!(check_string(&q, &w).is_ok());
    // vertex counts: two full turns plus the prefix walk "a" (positions 1,2)
    assert_eq!(w.dimension_vector(&q), vec![3, 3, 2, 2]);
    let w = b.power_with_prefix(1, 0);
    assert_eq!(w.serialize(&q), "a b g- d-");
}

#[test]
fn linear_substring_occurrences() {
    let q = square();
    let w = check_string(&q, &parse_walk(&q, "g- d- a b").unwrap()).unwrap();
    let subs = substrings(&w, SubwordKind::Submodule, true);
    let got: Vec<(usize, usize)> = subs.iter().map(|o| (o.start, o.end)).collect();
    assert_eq!(got, vec![(0, 0), (0, 1), (3, 4), (4, 4)]);
    let dims: Vec<Vec<usize>> =
        subs.iter().map(|o| occurrence_dimension_vector(&q, w.word(), o)).collect();
    assert_eq!(
        dims,
        vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 1],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 0],
        ]
    );
    // the full walk is included when proper occurrences are not requested
    let all = substrings(&w, SubwordKind::Submodule, false);
    assert_eq!(all.len(), 5);
    assert!(all.iter().any(|o| o.start == 0 && o.end == 4));

    let facs = substrings(&w, SubwordKind::Factor, true);
    let got: Vec<(usize, usize)> = facs.iter().map(|o| (o.start, o.end)).collect();
    assert_eq!(
        got,
        vec![(0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)]
    );
}

#[test]
fn cyclic_substring_occurrences() {
    let q = square();
    let b = check_band(&q, &parse_walk(&q, "a b g- d-").unwrap()).unwrap();
    let mut sub_dims: Vec<Vec<usize>> = cyclic_substrings(&b, SubwordKind::Submodule)
        .iter()
        .map(|o| occurrence_dimension_vector(&q, b.word(), o))
        .collect();
    sub_dims.sort();
    assert_eq!(
        sub_dims,
        vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 1],
            vec![0, 1, 1, 0],
            vec![0, 1, 1, 1],
        ]
    );
    let mut fac_dims: Vec<Vec<usize>> = cyclic_substrings(&b, SubwordKind::Factor)
        .iter()
        .map(|o| occurrence_dimension_vector(&q, b.word(), o))
        .collect();
    fac_dims.sort();
    assert_eq!(
        fac_dims,
        vec![
            vec![1, 0, 0, 0],
            vec![1, 0, 0, 1],
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 1],
        ]
    );
    // occurrences wrap: one factor occurrence starts at the backwards run
    assert!(cyclic_substrings(&b, SubwordKind::Factor).iter().any(|o| o.end >= 4));
}

#[test]
fn trivial_walk_has_submodule_occurrence_sets_matching_direction() {
    let q = square();
    let w = check_string(&q, &parse_walk(&q, "@2").unwrap()).unwrap();
    // the only occurrence is the full trivial walk, dropped when proper
    assert!(substrings(&w, SubwordKind::Submodule, true).is_empty());
    assert_eq!(substrings(&w, SubwordKind::Submodule, false).len(), 1);
}

#[test]
fn string_enumeration_covers_the_walk_tree() {
    let q = square();
    // 4 trivial strings plus, on a cycle of 4 vertices, exactly one
    // non-backtracking continuation per walk: 8 walks of each length.
    assert_eq!(words::enumerate_strings(&q, 0).len(), 4);
    assert_eq!(words::enumerate_strings(&q, 1).len(), 12);
    assert_eq!(words::enumerate_strings(&q, 6).len(), 4 + 8 * 6);
    let all = words::enumerate_strings(&q, 6);
    let mut seen = std::collections::BTreeSet::new();
    for s in &all {
        assert!(seen.insert(s.serialize(&q)), "no duplicates");
    }
    assert!(seen.contains("g- d- a b"));
    assert!(seen.contains("@3"));

    // The relations prune: over the gentle A3 algebra "a b" dies.
    let g = gentle_a3();
    let gs = words::enumerate_strings(&g, 2);
    let keys: std::collections::BTreeSet<String> =
        gs.iter().map(|s| s.serialize(&g)).collect();
    assert!(keys.contains("a"));
    assert!(keys.contains("b-"));
    assert!(!keys.contains("a b"));
    assert!(!keys.contains("b- a-"));
}

#[test]
fn band_enumeration_dedups_rotations() {
    let q = square();
    assert!(words::enumerate_bands(&q, 3).is_empty());
    let bands = words::enumerate_bands(&q, 6);
    let keys: Vec<String> = bands.iter().map(|b| b.serialize(&q)).collect();
    // The square's cycle and its reverse, in canonical rotation.
    assert_eq!(keys, vec!["a b g- d-", "a- d g b-"]);

    // Alternating arrows on a double arrow; no bands on an oriented cycle
    // (one-directional) or a tree.
    let kron = parse_algebra("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n").unwrap();
    let kb = words::enumerate_bands(&kron, 4);
    let kk: Vec<String> = kb.iter().map(|b| b.serialize(&kron)).collect();
    assert_eq!(kk, vec!["a b-", "a- b"]);
    assert!(words::enumerate_bands(&cyclic3(), 6).is_empty());
    assert!(words::enumerate_bands(&gentle_a3(), 6).is_empty());
}
