mod common;

use std::collections::BTreeSet;

use indmorse::complex::independence_complex;
use indmorse::counts::{grid_count_table, grid_critical_fvector};
use indmorse::generators::{euler_phi, gcd, grid_adjacent, grid_graph, power_graph_cyclic, power_graph_spec, GridSpec};
use indmorse::graph::VertexSet;
use indmorse::morse::build_grid_matching;
use proptest::prelude::*;

fn spec_strategy(max_mn: usize, max_size: usize) -> impl Strategy<Value = GridSpec> {
    (0..=max_mn, 0..=max_mn).prop_flat_map(move |(m, n)| {
        prop::collection::vec(1..=max_size, (m + 1) * (n + 1))
            .prop_map(move |sizes| GridSpec::from_row_major(m, n, &sizes).unwrap())
    })
}

type LabelEdge = ((usize, usize), (usize, usize), usize);

fn label_edges(g: &indmorse::Graph) -> BTreeSet<LabelEdge> {
    // Edge multiset keyed by the pair of labels, counted.
    let mut seen = std::collections::BTreeMap::new();
    for (a, b) in g.edges() {
        let (la, lb) = (g.label(a).unwrap(), g.label(b).unwrap());
        *seen.entry((la.min(lb), la.max(lb))).or_insert(0) += 1;
    }
    seen.into_iter().map(|((a, b), c)| (a, b, c)).collect()
}

proptest! {
    #[test]
    fn adjacency_follows_the_product_order(spec in spec_strategy(3, 3)) {
        let g = grid_graph(&spec);
        for a in 0..g.order() {
            for b in a + 1..g.order() {
                let (la, lb) = (g.label(a).unwrap(), g.label(b).unwrap());
                let comparable = (la.0 <= lb.0 && la.1 <= lb.1) || (lb.0 <= la.0 && lb.1 <= la.1);
                prop_assert_eq!(g.has_edge(a, b), comparable);
                prop_assert_eq!(grid_adjacent(la, lb), comparable);
            }
        }
    }

    #[test]
    fn only_the_corner_cells_are_universal(spec in spec_strategy(3, 2)) {
        let g = grid_graph(&spec);
        let (m, n) = (spec.m(), spec.n());
        for v in 0..g.order() {
            let label = g.label(v).unwrap();
            let universal = g.degree(v) + 1 == g.order();
            if label == (0, 0) || label == (m, n) {
                prop_assert!(universal);
            } else if m >= 1 && n >= 1 {
                prop_assert!(!universal);
            }
        }
    }

    /// Deleting N[u] for u in cell (i, 0) leaves the sub-grid on rows
    /// 0..i-1, columns 1..n; for u in (m, j), rows 0..m-1, columns j+1..n.
    #[test]
    fn deleting_a_closed_neighbourhood_leaves_a_sub_grid(spec in spec_strategy(3, 2)) {
        let g = grid_graph(&spec);
        let (m, n) = (spec.m(), spec.n());
        prop_assume!(m >= 1 && n >= 1);
        let first_in = |cell| (0..g.order()).find(|&v| g.label(v) == Some(cell)).unwrap();
        let cases = (1..=m).map(|i| ((i, 0), i - 1, 1)).chain((1..n).map(|j| ((m, j), m - 1, j + 1)));
        for (cell, rows, first_col) in cases {
            let u = first_in(cell);
            let sub = g.induced_delete(&g.closed_neighborhood(u).unwrap()).unwrap();
            let expected: Vec<Vec<usize>> =
                (0..=rows).map(|r| (first_col..=n).map(|c| spec.size(r, c)).collect()).collect();
            let relabelled: Vec<(usize, usize)> =
                sub.graph.labels().unwrap().iter().map(|&(r, c)| (r, c - first_col)).collect();
            let shifted = sub.graph.clone().with_labels(relabelled).unwrap();
            let target = grid_graph(&GridSpec::new(expected).unwrap());
            prop_assert_eq!(label_edges(&shifted), label_edges(&target));
            prop_assert_eq!(shifted.order(), target.order());
        }
    }

    #[test]
    fn table_entries_match_sub_grid_constructions(spec in spec_strategy(3, 2)) {
        prop_assume!(spec.m() >= 1 && spec.n() >= 1);
        let table = grid_count_table(&spec).unwrap();
        for (i, j, c) in table.entries() {
            let sub = spec.subgrid(i, j).unwrap();
            let built = build_grid_matching(&grid_graph(&sub), &sub).unwrap();
            prop_assert_eq!(built.critical_f().counts(), &c[..built.critical_f().len()]);
            prop_assert!(c[built.critical_f().len()..].iter().all(|x| *x == 0u8.into()));
        }
    }

    #[test]
    fn f_vector_length_is_bounded(spec in spec_strategy(5, 4)) {
        let f = grid_critical_fvector(&spec).unwrap();
        prop_assert!(f.len() <= spec.m().min(spec.n()) + 1);
    }
}

#[test]
fn complex_dimension_is_min_m_n() {
    for spec in common::grid_specs(3, 2) {
        let x = independence_complex(&grid_graph(&spec)).unwrap();
        assert_eq!(x.dim(), spec.m().min(spec.n()) as isize, "{:?}", spec.sizes());
    }
}

/// Power graphs of Z_N, N = p^m q^n <= 60, against the grid with cell sizes
/// φ(p^i q^j): relabel each element by the exponents of its order.
#[test]
fn power_graphs_are_grid_graphs() {
    let mut checked = 0;
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 2), (2, 7), (3, 5), (5, 2), (3, 7), (2, 11)] {
        for m in 0..=5u32 {
            for n in 0..=3u32 {
                let order = p.pow(m) * q.pow(n);
                if order > 60 {
                    continue;
                }
                let g = power_graph_cyclic(p, q, m, n).unwrap();
                let spec = power_graph_spec(p, q, m, n).unwrap();
                for i in 0..=m as usize {
                    for j in 0..=n as usize {
                        assert_eq!(spec.size(i, j) as u64, euler_phi(p.pow(i as u32) * q.pow(j as u32)));
                    }
                }
                // Direct rule on the group: x, y adjacent iff one generates a
                // subgroup containing the other.
                for x in 0..order {
                    for y in x + 1..order {
                        let divides = |a: u64, b: u64| {
                            gcd(order, b).is_multiple_of(gcd(order, a)) || gcd(order, a).is_multiple_of(gcd(order, b))
                        };
                        assert_eq!(g.has_edge(x as usize, y as usize), divides(x, y), "Z_{order}: {x} {y}");
                    }
                }
                assert_eq!(label_edges(&g), label_edges(&grid_graph(&spec)), "Z_{order}");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn sub_grid_vertex_sets_are_rectangles() {
    let spec = GridSpec::uniform(2, 3, 2).unwrap();
    let g = grid_graph(&spec);
    let sub = spec.subgrid(1, 2).unwrap();
    assert_eq!(sub.order(), 2 * 2 * 2);
    let rect = VertexSet::from_vertices(
        g.order(),
        (0..g.order()).filter(|&v| {
            let (r, c) = g.label(v).unwrap();
            r <= 1 && c >= 2
        }),
    );
    assert_eq!(rect.len(), sub.order());
}
