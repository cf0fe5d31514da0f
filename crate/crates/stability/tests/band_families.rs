use algebra::{parse_algebra, BoundQuiver};
use cones::{int_vec, relate, span_union, Int, RationalCone, Relation};
use stability::{
    approximate_family, band_g, band_power_cone, band_power_limit, distance_to_cone, g_vector,
    g_vector_oracle, lift_and_cut, oracle_cone, prefix_g, simplicial_cover, StabilityError,
    WordRef,
};
use words::{check_band, check_string, parse_walk, BandWord, StringWord};

fn square() -> BoundQuiver {
    parse_algebra(
        "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow g: 4 -> 3\narrow d: 1 -> 4\n",
    )
    .unwrap()
}

fn kronecker() -> BoundQuiver {
    parse_algebra("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n").unwrap()
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

fn string(q: &BoundQuiver, text: &str) -> StringWord {
    check_string(q, &parse_walk(q, text).unwrap()).unwrap()
}

fn assert_rays(cone: &RationalCone, expected: &[Vec<Int>]) {
    let mut want = expected.to_vec();
    want.sort();
    assert_eq!(cone.canon_key().0, want);
}

#[test]
fn presentation_g_vectors_on_known_modules() {
    let q = square();
    // One full turn from vertex 3 is the projective at vertex 1.
    assert_eq!(g_vector_oracle(&q, &string(&q, "g- d- a b")).unwrap(), int_vec(&[1, 0, 0, 0]));
    // The directed path 1 -> 2 -> 3 is a quotient of that projective.
    assert_eq!(g_vector_oracle(&q, &string(&q, "a b")).unwrap(), int_vec(&[1, 0, 0, -1]));
    // Walking one arrow backwards makes both endpoints tops.
    assert_eq!(g_vector_oracle(&q, &string(&q, "d-")).unwrap(), int_vec(&[1, -1, -1, 0]));
    assert_eq!(g_vector_oracle(&q, &string(&q, "b g-")).unwrap(), int_vec(&[0, 1, -1, 1]));
    // Simples.
    assert_eq!(g_vector_oracle(&q, &string(&q, "@1")).unwrap(), int_vec(&[1, -1, 0, -1]));
    assert_eq!(g_vector_oracle(&q, &string(&q, "@3")).unwrap(), int_vec(&[0, 0, 1, 0]));
}

#[test]
fn per_turn_g_vector_counts_corners() {
    let q = square();
    let b = band(&q, "a b g- d-");
    assert_eq!(band_g(&q, &b), int_vec(&[1, 0, -1, 0]));
    // Rotation invariance: corners travel with the letters.
    for k in 1..4 {
        assert_eq!(band_g(&q, &b.rotate(&q, k)), int_vec(&[1, 0, -1, 0]));
    }
    let kq = kronecker();
    assert_eq!(band_g(&kq, &band(&kq, "a b-")), int_vec(&[1, -1]));
}

#[test]
fn boundary_corrections_match_the_presentation_route() {
    let q = square();
    let b = band(&q, "a b g- d-");
    // Over every rotation, prefix length, and turn count the closed formula
    // agrees with the projective presentation.
    for k in 0..4 {
        let rot = b.rotate(&q, k);
        for m in 0..4 {
            for r in 0..=3usize {
                let formula = g_vector(&q, &rot, m, r).unwrap();
                let word = if r == 0 {
                    if m == 0 {
                        words::Word::trivial(&q, rot.start())
                    } else {
                        words::Word::from_letters(&q, rot.letters()[..m].to_vec()).unwrap()
                    }
                } else {
                    rot.power_with_prefix(r, m)
                };
                let s = check_string(&q, &word).unwrap();
                let oracle = g_vector_oracle(&q, &s).unwrap();
                assert_eq!(
                    formula,
                    oracle,
                    "rotation {k}, prefix {m}, turns {r} ({})",
                    word.serialize(&q)
                );
            }
        }
    }
}

#[test]
fn adding_a_turn_adds_the_per_turn_g_vector() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let per_turn = band_g(&q, &b);
    for m in 0..4 {
        for r in 1..=3usize {
            let lo = g_vector(&q, &b, m, r).unwrap();
            let hi = g_vector(&q, &b, m, r + 1).unwrap();
            let diff: Vec<Int> = hi.iter().zip(&lo).map(|(a, b)| a - b).collect();
            assert_eq!(diff, per_turn);
        }
    }
}

#[test]
fn per_turn_g_vector_lies_in_the_band_cone() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let whole = oracle_cone(&q, WordRef::Band(&b)).unwrap();
    assert!(whole.cone.contains_point(&band_g(&q, &b)).unwrap());
    // The letter rays sum to twice the per-turn g-vector (each corner is
    // entered and left once).
    let rays = stability::thin_rays_global(&q, WordRef::Band(&b)).unwrap();
    let mut sum = vec![Int::from(0); 4];
    for r in rays.rays() {
        for (s, x) in sum.iter_mut().zip(r) {
            *s = &*s + x;
        }
    }
    let twice: Vec<Int> = band_g(&q, &b).iter().map(|x| x * Int::from(2)).collect();
    assert_eq!(sum, twice);
}

#[test]
fn prefix_corrections_on_the_standard_rotations() {
    let q = square();
    let b1 = band(&q, "g- d- a b");
    let b4 = band(&q, "d- a b g-");
    assert_eq!(prefix_g(&q, &b1, 0, false).unwrap(), int_vec(&[0, 0, 1, 0]));
    assert_eq!(prefix_g(&q, &b1, 0, true).unwrap(), int_vec(&[0, -1, 1, -1]));
    assert_eq!(prefix_g(&q, &b1, 1, true).unwrap(), int_vec(&[-1, -1, 1, 0]));
    assert_eq!(prefix_g(&q, &b4, 1, false).unwrap(), int_vec(&[1, -1, -1, 0]));
    assert!(matches!(prefix_g(&q, &b1, 4, false), Err(StabilityError::BadWord(_))));
}

/// The four families of band-power walks on the square: rotation, prefix
/// length, and the extreme rays of the one-turn member.
fn square_families(q: &BoundQuiver) -> Vec<(BandWord, usize, Vec<Vec<Int>>)> {
    vec![
        (
            band(q, "g- d- a b"),
            0,
            vec![int_vec(&[1, 0, 0, -1]), int_vec(&[1, -1, 0, 0]), int_vec(&[0, 1, -1, 1])],
        ),
        (
            band(q, "g- d- a b"),
            1,
            vec![int_vec(&[1, -1, 0, 0]), int_vec(&[0, 0, -1, 1]), int_vec(&[1, 1, -1, 0])],
        ),
        (
            band(q, "a b g- d-"),
            0,
            vec![int_vec(&[0, 1, -1, 0]), int_vec(&[0, 0, -1, 1]), int_vec(&[1, -1, 0, -1])],
        ),
        (
            band(q, "d- a b g-"),
            1,
            vec![int_vec(&[1, 0, 0, -1]), int_vec(&[0, 1, -1, 0]), int_vec(&[1, -1, -1, 0])],
        ),
    ]
}

#[test]
fn power_cones_in_closed_form_match_the_lift_route() {
    let q = square();
    for (b, m, one_turn_rays) in square_families(&q) {
        let c1 = band_power_cone(&q, &b, m, 1).unwrap();
        assert_rays(&c1.cone, &one_turn_rays);
        for r in 1..=4usize {
            let closed = band_power_cone(&q, &b, m, r).unwrap();
            let word = b.power_with_prefix(r, m);
            let s = check_string(&q, &word).unwrap();
            let lifted = lift_and_cut(&q, WordRef::String(&s)).unwrap();
            assert!(
                closed.cone.canon_eq(&lifted.cone),
                "closed form disagrees at rotation {}, m={m}, r={r}",
                b.serialize(&q)
            );
            assert!(closed.support_cone.canon_eq(&lifted.support_cone));
        }
    }
}

#[test]
fn drifting_generators_at_two_and_three_turns() {
    let q = square();
    let fams = square_families(&q);
    let drift = |f: usize, r: usize| -> Vec<Vec<Int>> {
        let (b, m, _) = &fams[f];
        band_power_cone(&q, b, *m, r).unwrap().cone.canon_key().0
    };
    // The two fixed rays stay; the third generator moves with r.
    let expect = |fixed: [[i64; 4]; 2], x: [i64; 4]| -> Vec<Vec<Int>> {
        let mut v = vec![int_vec(&fixed[0]), int_vec(&fixed[1]), int_vec(&x)];
        v.sort();
        v
    };
    assert_eq!(drift(0, 2), expect([[1, 0, 0, -1], [1, -1, 0, 0]], [1, 1, -2, 1]));
    assert_eq!(drift(0, 3), expect([[1, 0, 0, -1], [1, -1, 0, 0]], [2, 1, -3, 1]));
    assert_eq!(drift(1, 2), expect([[1, -1, 0, 0], [0, 0, -1, 1]], [2, 1, -2, 0]));
    assert_eq!(drift(1, 3), expect([[1, -1, 0, 0], [0, 0, -1, 1]], [3, 1, -3, 0]));
    assert_eq!(drift(2, 2), expect([[0, 1, -1, 0], [0, 0, -1, 1]], [2, -1, -1, -1]));
    assert_eq!(drift(2, 3), expect([[0, 1, -1, 0], [0, 0, -1, 1]], [3, -1, -2, -1]));
    assert_eq!(drift(3, 2), expect([[1, 0, 0, -1], [0, 1, -1, 0]], [2, -1, -2, 0]));
    assert_eq!(drift(3, 3), expect([[1, 0, 0, -1], [0, 1, -1, 0]], [3, -1, -3, 0]));
}

#[test]
fn fixed_rays_persist_along_each_family() {
    let q = square();
    for (b, m, _) in square_families(&q) {
        let limit = band_power_limit(&q, &b, m).unwrap();
        let fixed: Vec<Vec<Int>> = limit
            .canon_key()
            .0
            .into_iter()
            .filter(|r| *r != band_g(&q, &b))
            .collect();
        let fixed_cone = RationalCone::from_vrep(4, fixed, Vec::new()).unwrap();
        for r in 1..=4usize {
            let member = band_power_cone(&q, &b, m, r).unwrap();
            assert_eq!(relate(&member.cone, &fixed_cone).unwrap(), Relation::Subcone);
        }
    }
}

#[test]
fn limits_are_the_four_quadrant_cones() {
    let q = square();
    let g = int_vec(&[1, 0, -1, 0]);
    let fams = square_families(&q);
    let expected: Vec<Vec<Vec<Int>>> = vec![
        vec![int_vec(&[1, 0, 0, -1]), int_vec(&[1, -1, 0, 0]), g.clone()],
        vec![int_vec(&[1, -1, 0, 0]), int_vec(&[0, 0, -1, 1]), g.clone()],
        vec![int_vec(&[0, 1, -1, 0]), int_vec(&[0, 0, -1, 1]), g.clone()],
        vec![int_vec(&[1, 0, 0, -1]), int_vec(&[0, 1, -1, 0]), g.clone()],
    ];
    let whole = oracle_cone(&q, WordRef::Band(&band(&q, "a b g- d-"))).unwrap();
    let mut union = RationalCone::zero(4);
    let mut keys = std::collections::BTreeSet::new();
    for ((b, m, _), rays) in fams.into_iter().zip(expected) {
        let limit = band_power_limit(&q, &b, m).unwrap();
        assert_rays(&limit, &rays);
        assert_eq!(relate(&whole.cone, &limit).unwrap(), Relation::Subcone);
        keys.insert(limit.canon_key());
        union = span_union(&union, &limit).unwrap();
    }
    // Four distinct pieces tiling the band cone.
    assert_eq!(keys.len(), 4);
    assert!(union.canon_eq(&whole.cone));
}

#[test]
fn cover_pieces_tile_the_square_band_cone() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let pieces = simplicial_cover(&q, &b).unwrap();
    assert_eq!(pieces.len(), 6);
    let pairs: Vec<(usize, usize)> = pieces.iter().map(|p| p.omitted_letters).collect();
    assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let g = int_vec(&[1, 0, -1, 0]);
    let mut piece_dims: Vec<usize> = Vec::new();
    for p in &pieces {
        assert!(p.piece.contains_point(&g).unwrap());
        // Every piece is simplicial: as many extreme rays as its dimension.
        assert_eq!(p.piece.canonical().rays().len(), p.piece.dim());
        piece_dims.push(p.piece.dim());
    }
    // Omitting two letters whose rays span the cone sideways leaves a full
    // slice; omitting a pair that sums to the per-turn vector collapses the
    // piece onto the diagonal plane. Four slices tile the cone, two planes
    // sit between them.
    assert_eq!(piece_dims.iter().filter(|&&d| d == 3).count(), 4);
    assert_eq!(piece_dims.iter().filter(|&&d| d == 2).count(), 2);
    // The piece omitting letters 1 and 2 is spanned by the two left-side
    // rays and the per-turn g-vector.
    let p12 = pieces.iter().find(|p| p.omitted_letters == (1, 2)).unwrap();
    assert_rays(
        &p12.piece,
        &[int_vec(&[1, -1, 0, 0]), int_vec(&[1, 0, 0, -1]), g.clone()],
    );
}

#[test]
fn two_letter_band_cover_is_a_single_ray() {
    let q = kronecker();
    let b = band(&q, "a b-");
    let pieces = simplicial_cover(&q, &b).unwrap();
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].omitted_letters, (0, 1));
    assert_rays(&pieces[0].piece, &[int_vec(&[1, -1])]);
    let whole = oracle_cone(&q, WordRef::Band(&b)).unwrap();
    assert!(pieces[0].piece.canon_eq(&whole.cone));
}

#[test]
fn boundary_point_selects_its_family_and_sits_in_every_member() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let x = int_vec(&[2, -1, 0, -1]);
    let fam = approximate_family(&q, &b, &x, &[1, 2, 4, 8], &[1e-6, 1e-12]).unwrap();
    assert_eq!(fam.omitted_letters, (1, 2));
    assert_eq!(fam.rotation.serialize(&q), "g- d- a b");
    assert_eq!(fam.m, 0);
    for (_, d) in &fam.distances {
        assert!(*d <= 1e-12, "boundary point should lie in every member cone, d = {d}");
    }
    // Thresholds are met immediately.
    assert_eq!(fam.eps_table, vec![(1e-6, Some(1)), (1e-12, Some(1))]);
    // The member cones through the family accessor agree with the closed form.
    let member = fam.cone_at(&q, 3).unwrap();
    let closed = band_power_cone(&q, &fam.rotation, fam.m, 3).unwrap();
    assert!(member.cone.canon_eq(&closed.cone));
}

#[test]
fn interior_point_is_approached_at_rate_one_over_r() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let x = int_vec(&[2, -1, -1, 0]);
    let fam = approximate_family(&q, &b, &x, &[1, 2, 4, 8, 16], &[0.5, 0.05, 1e-9]).unwrap();
    assert_eq!(fam.omitted_letters, (1, 2));
    assert_eq!(fam.m, 0);
    let d: Vec<f64> = fam.distances.iter().map(|(_, d)| *d).collect();
    for w in d.windows(2) {
        assert!(w[1] < w[0], "distances must strictly decrease: {d:?}");
    }
    assert!(d[0] > 0.05, "point is outside the first member");
    assert!(d[4] < d[0] / 4.0, "decay should be roughly linear in 1/r: {d:?}");
    // r * d stays bounded within a small factor (C/r behavior).
    let scaled: Vec<f64> =
        fam.distances.iter().map(|(r, dist)| *r as f64 * dist).collect();
    let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = scaled.iter().cloned().fold(0.0, f64::max);
    assert!(hi <= 4.0 * lo, "r*d should stay within a constant band: {scaled:?}");
    let (eps, hit) = fam.eps_table[0];
    assert_eq!(eps, 0.5);
    assert!(hit.is_some());
    assert_eq!(fam.eps_table[2].1, None, "1e-9 is not reached by r <= 16");
}

#[test]
fn points_outside_the_band_cone_are_rejected() {
    let q = square();
    let b = band(&q, "a b g- d-");
    let err = approximate_family(&q, &b, &int_vec(&[1, 0, 0, 0]), &[1], &[]);
    assert!(matches!(err, Err(StabilityError::NotInCone { .. })));
}

#[test]
fn non_thin_bands_select_through_the_position_quiver() {
    let q = thick_cycle();
    let b = band(&q, "a c b- c");
    let whole = oracle_cone(&q, WordRef::Band(&b)).unwrap();
    // The cone is the single ray through the per-turn g-vector direction.
    let rays = whole.cone.canon_key().0;
    assert_eq!(rays.len(), 1);
    let x = rays[0].clone();
    let fam = approximate_family(&q, &b, &x, &[1, 2, 4], &[0.5]).unwrap();
    // Selection works and members approach the ray.
    let d: Vec<f64> = fam.distances.iter().map(|(_, d)| *d).collect();
    assert!(d[2] <= d[0] + 1e-12);
    assert!(d[2] < 0.5);
    // Closed-form power cones are refused off thin bands.
    assert!(matches!(
        band_power_cone(&q, &b, 0, 1),
        Err(StabilityError::NotThin { .. })
    ));
    assert!(matches!(simplicial_cover(&q, &b), Err(StabilityError::NotThin { .. })));
}

#[test]
fn distance_function_agrees_with_hand_values() {
    let c = RationalCone::from_vrep(
        2,
        vec![int_vec(&[1, 0]), int_vec(&[0, 1])],
        Vec::new(),
    )
    .unwrap();
    assert!(distance_to_cone(&c, &[3.0, 4.0]) < 1e-12);
    assert!((distance_to_cone(&c, &[-3.0, 4.0]) - 3.0).abs() < 1e-9);
    assert!((distance_to_cone(&c, &[-3.0, -4.0]) - 5.0).abs() < 1e-9);
    let halfplane =
        RationalCone::from_vrep(2, vec![int_vec(&[0, 1])], vec![int_vec(&[1, 0])]).unwrap();
    assert!((distance_to_cone(&halfplane, &[0.5, -2.0]) - 2.0).abs() < 1e-9);
}
