//! Chordality via maximum cardinality search and perfect elimination orderings.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A vertex ordering `v_1, ..., v_n`, first vertex first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder(pub Vec<usize>);

impl EliminationOrder {
    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Maximum cardinality search. Repeatedly numbers the unnumbered vertex with
/// the most numbered neighbours, smallest id first on ties; the visit order
/// reversed is a perfect elimination ordering whenever the graph is chordal.
pub fn maximum_cardinality_search(graph: &Graph) -> EliminationOrder {
    let n = graph.order();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for v in (0..n).filter(|&v| !numbered[v]) {
            if best.is_none_or(|b| weight[v] > weight[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("an unnumbered vertex remains");
        numbered[v] = true;
        visit.push(v);
        for w in graph.neighbors(v).iter() {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    visit.reverse();
    EliminationOrder(visit)
}

/// Whether every vertex's later neighbours in `order` form a clique.
pub fn verify_peo(graph: &Graph, order: &EliminationOrder) -> Result<bool> {
    let n = graph.order();
    let mut position = vec![usize::MAX; n];
    if order.0.len() != n {
        return Err(Error::input(format!(
            "ordering has {} entries for {} vertices",
            order.0.len(),
            n
        )));
    }
    for (i, &v) in order.0.iter().enumerate() {
        graph.check_vertex(v)?;
        if position[v] != usize::MAX {
            return Err(Error::input(format!("vertex {v} repeated in ordering")));
        }
        position[v] = i;
    }
    for (i, &v) in order.0.iter().enumerate() {
        let later = VertexSet::from_vertices(n, graph.neighbors(v).iter().filter(|&w| position[w] > i));
        if !graph.is_clique_unchecked(&later) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_chordal(graph: &Graph) -> bool {
    verify_peo(graph, &maximum_cardinality_search(graph)).expect("MCS yields a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn complete_graph_order_is_valid() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let order = maximum_cardinality_search(&k3);
        assert!(verify_peo(&k3, &order).unwrap());
    }

    #[test]
    fn path_and_cycle() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(verify_peo(&p4, &maximum_cardinality_search(&p4)).unwrap());
        let c4 = cycle(4);
        assert!(!verify_peo(&c4, &maximum_cardinality_search(&c4)).unwrap());
    }

    #[test]
    fn peo_examples() {
        assert!(verify_peo(&Graph::empty(1), &EliminationOrder(vec![0])).unwrap());
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(verify_peo(&p3, &EliminationOrder(vec![0, 2, 1])).unwrap());
        let c4 = cycle(4);
        for p in permutations(&[0, 1, 2, 3]) {
            assert!(!verify_peo(&c4, &EliminationOrder(p)).unwrap());
        }
    }

    #[test]
    fn rejects_non_permutations() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(verify_peo(&p3, &EliminationOrder(vec![0, 0, 1])).is_err());
        assert!(verify_peo(&p3, &EliminationOrder(vec![0, 1])).is_err());
        assert!(verify_peo(&p3, &EliminationOrder(vec![0, 1, 5])).is_err());
    }

    #[test]
    fn named_graphs() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert!(is_chordal(&tree));
        assert!(!is_chordal(&cycle(5)));
        let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_chordal(&diamond));
    }
}
