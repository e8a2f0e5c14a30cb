use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tjkss::moves::{all_sites, creates_free_loop, walk_sites, BraidSide};
use tjkss::oracle::cofactor_determinant;
use tjkss::selftest::random_poly_matrix;
use tjkss::{
    apply, double_cover, enumerate_sites, jkss, parse_diagram, parse_poly, random_diagram,
    twisted_jkss, DiagramEdge, LaurentPoly, MoveKind, MoveSite, PolyMatrix, TwistedDiagram,
};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -3i64..=3, -3i64..=3), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, a, b)| LaurentPoly::monomial(c, a, b))
            .sum()
    })
}

fn diagram(max_crossings: usize, max_bars: u32) -> impl Strategy<Value = TwistedDiagram> {
    (0..=max_crossings, 0..=max_bars, any::<u64>()).prop_map(|(n, b, s)| random_diagram(n, b, s))
}

fn matrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
    (0..=max, any::<u64>())
        .prop_map(|(n, s)| random_poly_matrix(&mut ChaCha8Rng::seed_from_u64(s), n, 3))
}

fn twisted(d: &TwistedDiagram) -> LaurentPoly {
    twisted_jkss(d).unwrap().canonical
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p + &q) + &r, &p + (&q + &r));
        prop_assert_eq!((&p * &q) * &r, &p * (&q * &r));
        prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
    }

    #[test]
    fn normalization_ignores_x_powers(p in poly(), k in -6i64..=6) {
        let shifted = &p * &LaurentPoly::monomial(1, k, 0);
        prop_assert_eq!(shifted.normalize_x(), p.normalize_x());
        prop_assert!(shifted.equal_up_to_x_power(&p));
        prop_assert_eq!(p.normalize_x().normalize_x(), p.normalize_x());
        if !p.is_zero() {
            prop_assert_eq!(p.normalize_x().min_x_exponent(), Some(0));
        }
    }

    #[test]
    fn polynomial_text_round_trip(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn determinant_matches_cofactor(m in matrix(6)) {
        prop_assert_eq!(m.determinant(), cofactor_determinant(&m));
    }

    #[test]
    fn determinant_alternates_and_transposes(m in matrix(5), a in 0usize..5, b in 0usize..5) {
        let n = m.size();
        prop_assume!(n >= 2);
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let mut swapped = m.clone();
        swapped.swap_rows(a, b);
        prop_assert_eq!(swapped.determinant(), -m.determinant());
        prop_assert_eq!(m.transpose().determinant(), m.determinant());
    }

    #[test]
    fn diagram_text_round_trip(d in diagram(8, 6)) {
        prop_assert_eq!(parse_diagram(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn mirror_is_an_involution(d in diagram(8, 6)) {
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        prop_assert_eq!(d.mirror().writhe(), d.writhe());
        prop_assert!(d.mirror().is_valid());
    }

    #[test]
    fn twisted_equals_cover(d in diagram(6, 6)) {
        let cover = double_cover(&d).unwrap();
        prop_assert!(cover.is_valid());
        prop_assert!(cover.is_strictly_virtual());
        prop_assert_eq!(cover.crossing_count(), 2 * d.crossing_count());
        prop_assert_eq!(twisted_jkss(&d).unwrap().raw, jkss(&cover).unwrap().raw);
    }

    #[test]
    fn bar_free_twisted_is_product(d in diagram(6, 0)) {
        let product = jkss(&d).unwrap().raw * jkss(&d.mirror()).unwrap().raw;
        prop_assert_eq!(twisted_jkss(&d).unwrap().raw, product);
    }

    #[test]
    fn only_bar_parity_matters(d in diagram(5, 5), k in 0usize..10) {
        prop_assume!(!d.edges().is_empty());
        let k = k % d.edges().len();
        let edges: Vec<DiagramEdge> = d
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| if i == k { DiagramEdge { bars: e.bars + 2, ..*e } } else { *e })
            .collect();
        let heavier = TwistedDiagram::new(d.crossings().clone(), edges, d.free_loops().to_vec());
        prop_assert_eq!(twisted_jkss(&heavier).unwrap().raw, twisted_jkss(&d).unwrap().raw);
    }

    #[test]
    fn every_site_keeps_validity(d in diagram(6, 5), pick in any::<prop::sample::Index>()) {
        let sites = all_sites(&d);
        prop_assume!(!sites.is_empty());
        let site = *pick.get(&sites);
        let after = apply(&d, site).unwrap();
        prop_assert!(after.is_valid());
        let delta = after.crossing_count() as i64 - d.crossing_count() as i64;
        let expected = match site.kind() {
            MoveKind::R1Plus => 1,
            MoveKind::R1Minus => -1,
            MoveKind::R2Plus => 2,
            MoveKind::R2Minus => -2,
            MoveKind::R3 | MoveKind::T3 => 0,
        };
        prop_assert_eq!(delta, expected);
    }

    #[test]
    fn moves_keep_twisted(d in diagram(5, 5), kind in 0usize..6, pick in any::<prop::sample::Index>()) {
        let sites = walk_sites(&d, MoveKind::ALL[kind]);
        prop_assume!(!sites.is_empty());
        let site = *pick.get(&sites);
        let after = apply(&d, site).unwrap();
        prop_assert_eq!(twisted(&after), twisted(&d), "{}", site);
    }

    #[test]
    fn moves_keep_jkss_without_bars(d in diagram(5, 0), kind in 0usize..5, pick in any::<prop::sample::Index>()) {
        let sites = walk_sites(&d, MoveKind::ALL[kind]);
        prop_assume!(!sites.is_empty());
        let site = *pick.get(&sites);
        let after = apply(&d, site).unwrap();
        prop_assert_eq!(jkss(&after).unwrap().canonical, jkss(&d).unwrap().canonical, "{}", site);
    }

    #[test]
    fn creation_moves_invert(d in diagram(5, 4), pick in any::<prop::sample::Index>()) {
        let mut sites = enumerate_sites(&d, MoveKind::R1Plus);
        sites.extend(enumerate_sites(&d, MoveKind::R2Plus));
        prop_assume!(!sites.is_empty());
        let site = *pick.get(&sites);
        let up = apply(&d, site).unwrap();
        let m = d.max_crossing_id();
        let down = match site {
            MoveSite::R1Plus { .. } => MoveSite::R1Minus { crossing: m + 1 },
            _ => MoveSite::R2Minus { first: m + 1, second: m + 2 },
        };
        prop_assert_eq!(apply(&up, down).unwrap(), d);
    }

    #[test]
    fn t3_involution_and_cover(d in diagram(6, 8)) {
        for site in enumerate_sites(&d, MoveKind::T3) {
            let once = apply(&d, site).unwrap();
            prop_assert_eq!(apply(&once, site).unwrap(), d.clone());
            let before = jkss(&double_cover(&d).unwrap()).unwrap().canonical;
            let after = jkss(&double_cover(&once).unwrap()).unwrap().canonical;
            prop_assert_eq!(after, before);
        }
    }
}

#[test]
fn free_loop_removals_are_the_only_exclusions() {
    for seed in 0..40 {
        let d = random_diagram(3, 0, seed);
        for kind in MoveKind::ALL {
            let all = enumerate_sites(&d, kind);
            let usable = walk_sites(&d, kind);
            for site in all.iter().filter(|s| !usable.contains(s)) {
                assert!(creates_free_loop(&d, *site));
                assert!(matches!(site.kind(), MoveKind::R1Minus | MoveKind::R2Minus));
            }
        }
    }
}

#[test]
fn r3_both_signs_keep_invariants() {
    use tjkss::moves::insert_braid_triangle;
    use tjkss::{CrossingSign, Port};
    for seed in 0..20 {
        let d = random_diagram(3, (seed % 4) as u32, seed);
        let ports: Vec<Port> = d.edges().iter().map(|e| e.from).collect();
        for sign in [CrossingSign::Positive, CrossingSign::Negative] {
            let t = insert_braid_triangle(&d, [ports[0], ports[2], ports[4]], sign).unwrap();
            let site = MoveSite::R3 {
                crossings: [4, 5, 6],
                side: BraidSide::Left,
            };
            let r = apply(&t, site).unwrap();
            assert_eq!(twisted(&r), twisted(&t));
            if t.is_strictly_virtual() {
                assert_eq!(jkss(&r).unwrap().canonical, jkss(&t).unwrap().canonical);
            }
        }
    }
}
