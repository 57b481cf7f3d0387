use std::collections::BTreeSet;

use num_rational::BigRational;
use xatlas_core::bounds::{
    build_embedding, certify, congestion, counted_upper, euler_skewness_lb, planarity, GraphFamily, LowerSource,
};
use xatlas_core::count::{count_expanded, mesh_crossings, split_drawing_count};
use xatlas_core::graph::{edge_key, kn_times_c4, kn_times_p3, knn_minus_matching, Graph, VertexLabel};
use xatlas_core::split::generate_split_drawing;

fn edge_set(g: &Graph) -> BTreeSet<(VertexLabel, VertexLabel)> {
    g.edges().map(|(u, v, _)| (*u, *v)).collect()
}

#[test]
fn split_charts_draw_the_product_graphs() {
    for n in 1..=7usize {
        for (width, product) in [(2, kn_times_p3(n)), (4, kn_times_c4(n))] {
            let s = generate_split_drawing(n, width).unwrap();
            s.expanded.validate().unwrap();
            let drawn: Vec<_> = s.expanded.polylines.iter().map(|l| edge_key(&l.u, &l.v)).collect();
            let unique: BTreeSet<_> = drawn.iter().copied().collect();
            assert_eq!(drawn.len(), unique.len(), "n = {n}, width {width}: repeated edge");
            assert_eq!(unique, edge_set(&product), "n = {n}, width {width}");
            let vertices: BTreeSet<_> = s.expanded.points.keys().copied().collect();
            assert_eq!(vertices, product.vertices().copied().collect());
        }
    }
}

#[test]
fn mesh_bookkeeping() {
    for n in 2..=9usize {
        let s2 = generate_split_drawing(n, 2).unwrap();
        assert_eq!(s2.meshes.len(), n);
        assert!(s2.meshes.iter().all(|m| m.left + m.right == n - 1 && m.self_crossing_reductions == 0));
        let s4 = generate_split_drawing(n, 4).unwrap();
        assert_eq!(s4.meshes.len(), 2 * n);
        let reductions: usize = s4.meshes.iter().map(|m| m.self_crossing_reductions).sum();
        let want = match n {
            2 => 2,
            _ if n % 2 == 0 => 2 * n,
            _ => 0,
        };
        assert_eq!(reductions, want, "n = {n}");
        for m in s4.meshes.iter().chain(&s2.meshes) {
            assert!(m.left.abs_diff(m.right) <= 1, "{m:?}");
        }
    }
}

#[test]
fn mesh_formula_values() {
    let s = generate_split_drawing(5, 4).unwrap();
    let m = &s.meshes[0];
    assert_eq!((m.left, m.right), (2, 2));
    // Two same-side bunch pairs at four crossings each, plus one self crossing per bunch.
    assert_eq!(mesh_crossings(m).unwrap(), 2 * 4 + 4);
}

#[test]
fn split_accounting_rejects_bad_meshes() {
    let s = generate_split_drawing(4, 4).unwrap();
    assert!(split_drawing_count(&s.base, &s.meshes[1..], 4).is_err());
    let mut bad = s.meshes.clone();
    bad[0].left += 1;
    assert!(split_drawing_count(&s.base, &bad, 4).is_err());
    assert!(split_drawing_count(&s.base, &s.meshes, 3).is_err());
}

#[test]
fn split_counts_agree_for_larger_n() {
    for n in [8usize, 10, 11] {
        for width in [2, 4] {
            let s = generate_split_drawing(n, width).unwrap();
            let counted = split_drawing_count(&s.base, &s.meshes, width).unwrap();
            assert_eq!(count_expanded(&s.expanded).unwrap(), counted, "n = {n}, width {width}");
        }
    }
}

#[test]
fn embeddings_route_every_copy_on_short_paths() {
    for family in GraphFamily::ALL {
        for n in 3..=7usize {
            let e = build_embedding(family, n).unwrap();
            let mut copies = 0;
            e.for_each_route(|_, _, k, path| {
                assert!(path.len() == 2 || path.len() == 4);
                copies += k;
            });
            assert_eq!(copies, e.guest.total_multiplicity());
            let r = congestion(&e).unwrap();
            assert_eq!(r.per_edge_load.len(), e.host.edge_count());
            // Every host edge is loaded equally.
            assert_eq!(r.histogram().len(), 1, "{family} n = {n}");
        }
    }
}

#[test]
fn planarity_and_skewness() {
    assert!(planarity(&knn_minus_matching(4).unwrap()));
    assert!(!planarity(&knn_minus_matching(5).unwrap()));
    assert!(planarity(&kn_times_p3(3)));
    assert!(!planarity(&kn_times_c4(3)));
    assert!(planarity(&kn_times_c4(2)));
    let skew: Vec<u64> = (3..=8).map(|n| euler_skewness_lb(&knn_minus_matching(n).unwrap()).unwrap()).collect();
    // |E| - 2(|V| - 2) with girth 4.
    assert_eq!(skew, [0, 0, 4, 10, 18, 28]);
}

#[test]
fn certified_intervals() {
    let zero = BigRational::from_integer(0.into());
    for family in GraphFamily::ALL {
        for n in 1..=9usize {
            let c = certify(family, n).unwrap();
            assert_eq!(c.upper, counted_upper(family, n).unwrap());
            assert!(c.lower >= zero && c.lower <= BigRational::from_integer(c.upper.into()));
            if let Some(x) = c.exact {
                assert_eq!(x, c.upper);
            }
        }
    }
    let c = certify(GraphFamily::C4, 3).unwrap();
    assert_eq!(c.upper, 6);
    assert_eq!(c.lower_source, LowerSource::Skewness);
    assert_eq!(certify(GraphFamily::P3, 3).unwrap().exact, Some(0));
}
