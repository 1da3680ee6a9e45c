//! The graph of odd-order bonds and its cycle rank.

use crate::diagram::{CoxeterDiagram, Order};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrinkGraph {
    /// Nodes of the component containing the chosen node.
    pub nodes: Vec<String>,
    /// Odd bonds `(a, b, m)` inside that component.
    pub edges: Vec<(String, String, u32)>,
    /// Bonds dropped from the component's nodes because their order is even
    /// or infinite.
    pub dropped: usize,
    pub free_rank: usize,
}

fn is_odd(m: Order) -> bool {
    matches!(m, Order::Finite(k) if k % 2 == 1)
}

pub fn brink_graph(pi: &CoxeterDiagram, node: usize) -> Result<BrinkGraph> {
    if node >= pi.len() {
        return Err(Error::invalid(format!("node {node} is not in the diagram")));
    }
    let mut seen = BTreeSet::from([node]);
    let mut queue = VecDeque::from([node]);
    while let Some(v) = queue.pop_front() {
        for w in 0..pi.len() {
            if w != v && is_odd(pi.order(v, w)) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let comp: Vec<usize> = seen.into_iter().collect();
    let mut edges = Vec::new();
    let mut dropped = 0;
    for (i, &a) in comp.iter().enumerate() {
        for &b in &comp[i + 1..] {
            match pi.order(a, b) {
                m if is_odd(m) => edges.push((pi.name(a).to_string(), pi.name(b).to_string(), m.finite().unwrap())),
                Order::Finite(2) => {}
                _ => dropped += 1,
            }
        }
    }
    Ok(BrinkGraph {
        free_rank: edges.len() + 1 - comp.len(),
        nodes: comp.iter().map(|&i| pi.name(i).to_string()).collect(),
        edges,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_is_a_tree() {
        let d = CoxeterDiagram::with_edges(3, &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(3))]);
        for v in 0..3 {
            assert_eq!(brink_graph(&d, v).unwrap().free_rank, 0);
        }
    }

    #[test]
    fn triangle_has_one_cycle() {
        let d = CoxeterDiagram::with_edges(
            3,
            &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(3)), (0, 2, Order::Finite(3))],
        );
        assert_eq!(brink_graph(&d, 0).unwrap().free_rank, 1);
    }

    #[test]
    fn even_bonds_are_dropped() {
        let d = CoxeterDiagram::with_edges(
            3,
            &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(5)), (0, 2, Order::Finite(4))],
        );
        let g = brink_graph(&d, 0).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.dropped, 1);
        assert_eq!(g.free_rank, 0);
    }
}
