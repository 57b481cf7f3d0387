use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use xatlas_core::bounds::{build_embedding, congestion, Embedding, GraphFamily};
use xatlas_core::count::{chords_cross, count_drawing, count_expanded, helix_crossings};
use xatlas_core::drawing::{generate_dn, q, EdgeClass, RouteSegment, Q};
use xatlas_core::expanded::{expand_dn, ExpandedDrawing, Point, Polyline};
use xatlas_core::formulas::{lb_c4, lb_knn, lb_p3, nu_ex, nu_exy, odd_increment, ub_c4, ub_p3, z_bipartite, z_complete4};
use xatlas_core::graph::{check_isomorphism_map, kn_times_p2, knn_minus_matching, p2_to_knn_map, VertexLabel};
use xatlas_core::split::generate_split_drawing;

fn lone(points: Vec<Point>, tag: usize) -> Polyline {
    Polyline { u: VertexLabel::u(tag), v: VertexLabel::v(tag), class: EdgeClass::EX, points }
}

fn plane(polylines: Vec<Polyline>) -> ExpandedDrawing {
    ExpandedDrawing { period: None, points: BTreeMap::new(), polylines }
}

/// Points `(k, k²)` are in convex position in the order of `k`, like rim
/// points in angular order.
fn parabola(k: usize) -> Point {
    let k = k as i64;
    Point::new(q(k, 1), q(k * k, 1))
}

#[test]
fn chord_test_matches_segments_in_convex_position() {
    for n in 4..=16usize {
        let chords: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                let by_angle = chords_cross(
                    (q(a as i64, n as i64), q(b as i64, n as i64)),
                    (q(c as i64, n as i64), q(d as i64, n as i64)),
                )
                .unwrap();
                let e = plane(vec![lone(vec![parabola(a), parabola(b)], 0), lone(vec![parabola(c), parabola(d)], 1)]);
                let by_segments = count_expanded(&e).unwrap() == 1;
                assert_eq!(by_angle, by_segments, "n={n} ({a},{b}) ({c},{d})");
            }
        }
    }
}

fn rational(max_den: i64) -> impl Strategy<Value = Q> {
    (1..=max_den).prop_flat_map(|d| (0..d).prop_map(move |k| q(k, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_keeps_counts(n in 2usize..=13, by in rational(40)) {
        let d = generate_dn(n).unwrap();
        let r = d.rotated(by);
        r.validate().unwrap();
        let base = count_drawing(&d).unwrap();
        prop_assert_eq!(&count_drawing(&r).unwrap(), &base);
        prop_assert_eq!(count_expanded(&expand_dn(&r)).unwrap(), base.total);
    }

    #[test]
    fn mirroring_swaps_disk_classes(n in 2usize..=13) {
        let d = generate_dn(n).unwrap();
        let a = count_drawing(&d).unwrap();
        let b = count_drawing(&d.mirrored()).unwrap();
        prop_assert_eq!(a.total, b.total);
        prop_assert_eq!(a.pair(EdgeClass::EX, EdgeClass::EX), b.pair(EdgeClass::EY, EdgeClass::EY));
        prop_assert_eq!(a.pair(EdgeClass::EX, EdgeClass::EZXY), b.pair(EdgeClass::EY, EdgeClass::EZXY));
        prop_assert_eq!(count_expanded(&expand_dn(&d.mirrored())).unwrap(), a.total);
    }

    #[test]
    fn helix_count_is_symmetric_and_shift_invariant(
        t1 in rational(12), b1 in rational(12), t2 in rational(12), b2 in rational(12), by in rational(12)
    ) {
        prop_assume!(t1 != t2 && b1 != b2);
        let h1 = RouteSegment::helix(t1, b1);
        let h2 = RouteSegment::helix(t2, b2);
        let c = helix_crossings(&h1, &h2);
        prop_assert_eq!(c, helix_crossings(&h2, &h1));
        prop_assert!(c <= 1);
        let s1 = RouteSegment::helix(t1 + by, b1 + by);
        let s2 = RouteSegment::helix(t2 + by, b2 + by);
        prop_assert_eq!(c, helix_crossings(&s1, &s2));
    }

    #[test]
    fn helix_count_matches_chart(t1 in rational(12), b1 in rational(12), t2 in rational(12), b2 in rational(12)) {
        prop_assume!(t1 != t2 && b1 != b2);
        let lift = |t: Q, b: Q| {
            let RouteSegment::Helix { winding, .. } = RouteSegment::helix(t, b) else { unreachable!() };
            vec![Point::new(t, q(1, 1)), Point::new(t + winding, q(0, 1))]
        };
        let e = ExpandedDrawing {
            period: Some(q(1, 1)),
            points: BTreeMap::new(),
            polylines: vec![lone(lift(t1, b1), 0), lone(lift(t2, b2), 1)],
        };
        let c = helix_crossings(&RouteSegment::helix(t1, b1), &RouteSegment::helix(t2, b2));
        prop_assert_eq!(count_expanded(&e).unwrap(), c as u64);
    }

    #[test]
    fn chart_count_is_pairwise_additive(n in 2usize..=8, width in prop::sample::select(vec![0usize, 2, 4])) {
        let e = if width == 0 {
            expand_dn(&generate_dn(n).unwrap())
        } else {
            prop_assume!(n <= 4);
            generate_split_drawing(n, width).unwrap().expanded
        };
        let sub = |idx: &[usize]| ExpandedDrawing {
            period: e.period,
            points: e.points.clone(),
            polylines: idx.iter().map(|&i| e.polylines[i].clone()).collect(),
        };
        let mut sum = 0;
        for i in 0..e.polylines.len() {
            sum += count_expanded(&sub(&[i])).unwrap();
            for j in i + 1..e.polylines.len() {
                sum += count_expanded(&sub(&[i, j])).unwrap();
            }
        }
        prop_assert_eq!(count_expanded(&e).unwrap(), sum);
    }

    #[test]
    fn congestion_ignores_route_order(n in 3usize..=6, seed in any::<u64>(), family in prop::sample::select(GraphFamily::ALL.to_vec())) {
        let e = build_embedding(family, n).unwrap();
        let mut routes = e.routes();
        // Deterministic shuffle from the seed.
        let mut s = seed | 1;
        for i in (1..routes.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            routes.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let shuffled = Embedding::explicit(e.guest.clone(), e.host.clone(), e.vertex_map.clone(), routes);
        prop_assert_eq!(congestion(&shuffled).unwrap(), congestion(&e).unwrap());
    }

    #[test]
    fn product_with_p2_is_knn_minus_matching(n in 1usize..=12) {
        prop_assert!(check_isomorphism_map(&kn_times_p2(n), &knn_minus_matching(n).unwrap(), &p2_to_knn_map(n)));
    }

    #[test]
    fn zarankiewicz_symmetry(m in 0i64..200, n in 0i64..200) {
        prop_assert_eq!(z_bipartite(m, n), z_bipartite(n, m));
        prop_assert!(z_bipartite(m, n) >= 0);
    }
}

#[test]
fn closed_forms_are_integral() {
    for n in (6..=10_000i64).step_by(2) {
        nu_ex(n).unwrap();
        nu_exy(n).unwrap();
    }
    for n in (5..=10_000i64).step_by(2) {
        odd_increment(n).unwrap();
    }
}

#[test]
fn lower_bounds_stay_below_upper_bounds() {
    let int = |v: i128| BigRational::from_integer(v.into());
    for n in 3..=1000i64 {
        assert!(lb_knn(n).unwrap() <= int(z_complete4(n)), "knn {n}");
        assert!(lb_p3(n).unwrap() <= int(ub_p3(n).unwrap()), "p3 {n}");
        assert!(lb_c4(n).unwrap() <= int(ub_c4(n).unwrap()), "c4 {n}");
    }
}
