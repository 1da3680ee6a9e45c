//! Coxeter diagrams: storage, classification of spherical diagrams, the
//! opposition involution, automorphisms, isometries and canonical forms.
//!
//! Bond orders are kept as labels. The bilinear form `2cos(π/m)` is never
//! materialized here.

mod automorphism;
mod canonical;
mod isometry;
mod parse;
mod spherical;

pub use automorphism::{automorphism_group, DiagramAutomorphismGroup};
pub use canonical::{canonical_form, CanonicalForm};
pub use isometry::{isometries, isometries_with, Isometry};
pub use parse::{parse_diagram, serialize_diagram};
pub use spherical::{
    classify_components, classify_spherical, opposition_involution, spherical_subdiagrams,
    Irreducible, SphericalComponent, SphericalType,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Order `m_{ss'}` of the product of two simple reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub const ONE: Order = Order::Finite(1);
    pub const COMMUTE: Order = Order::Finite(2);

    /// True for a drawn edge (order ≥ 3 or ∞).
    pub fn is_edge(self) -> bool {
        !matches!(self, Order::Finite(1) | Order::Finite(2))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A finite Coxeter diagram with named nodes.
///
/// Node `i` has name `names[i]`. Orders are stored densely; the diagonal is
/// `1` and non-adjacent pairs are `2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    names: Vec<String>,
    orders: Vec<Order>,
}

impl CoxeterDiagram {
    /// Build a diagram from node names and explicit edges. Nodes are sorted
    /// lexicographically. Edge orders must be ≥ 3 (or infinite).
    pub fn new<S: AsRef<str>>(nodes: &[S], edges: &[(S, S, Order)]) -> Result<Self> {
        let mut names: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("duplicate node {}", w[0])));
            }
        }
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let n = names.len();
        let mut orders = vec![Order::COMMUTE; n * n];
        for i in 0..n {
            orders[i * n + i] = Order::ONE;
        }
        for (a, b, m) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::invalid(format!("unknown node {a}")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::invalid(format!("unknown node {b}")))?;
            if ia == ib {
                return Err(Error::invalid(format!("self-edge on {a}")));
            }
            if let Order::Finite(k) = m {
                if *k < 3 {
                    return Err(Error::invalid(format!("edge {a} {b} has order {k} < 3")));
                }
            }
            orders[ia * n + ib] = *m;
            orders[ib * n + ia] = *m;
        }
        Ok(CoxeterDiagram { names, orders })
    }

    /// Build a diagram on `n` nodes named by `name`, keeping the given node
    /// order, with orders from `order(i, j)` for `i < j`.
    pub fn from_fn(
        n: usize,
        name: impl Fn(usize) -> String,
        order: impl Fn(usize, usize) -> Order,
    ) -> Self {
        let names = (0..n).map(name).collect();
        let mut orders = vec![Order::COMMUTE; n * n];
        for i in 0..n {
            orders[i * n + i] = Order::ONE;
            for j in i + 1..n {
                let m = order(i, j);
                orders[i * n + j] = m;
                orders[j * n + i] = m;
            }
        }
        CoxeterDiagram { names, orders }
    }

    /// Diagram on `n` unnamed nodes (`n00`, `n01`, …) with the given edges.
    pub fn with_edges(n: usize, edges: &[(usize, usize, Order)]) -> Self {
        let mut d = Self::from_fn(n, node_name, |_, _| Order::COMMUTE);
        for &(a, b, m) in edges {
            d.orders[a * n + b] = m;
            d.orders[b * n + a] = m;
        }
        d
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of nodes.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn order(&self, i: usize, j: usize) -> Order {
        self.orders[i * self.names.len() + j]
    }

    /// Nodes joined to `i` by a drawn edge.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| j != i && self.order(i, j).is_edge())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Drawn edges `(i, j, m)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, Order)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.order(i, j);
                if m.is_edge() {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Induced subdiagram on `nodes`, in the given order.
    pub fn induced(&self, nodes: &[usize]) -> CoxeterDiagram {
        CoxeterDiagram::from_fn(
            nodes.len(),
            |i| self.names[nodes[i]].clone(),
            |i, j| self.order(nodes[i], nodes[j]),
        )
    }

    /// Connected components (by drawn edges), each sorted, ordered by
    /// smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in self.neighbors(x) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Relabel: node `i` of the result is node `perm[i]` of `self`.
    pub fn reorder(&self, perm: &[usize]) -> CoxeterDiagram {
        self.induced(perm)
    }

    /// Disjoint union; node names of `other` are kept, so callers must make
    /// them distinct.
    pub fn disjoint_union(&self, other: &CoxeterDiagram) -> CoxeterDiagram {
        let n1 = self.len();
        CoxeterDiagram::from_fn(
            n1 + other.len(),
            |i| {
                if i < n1 {
                    self.names[i].clone()
                } else {
                    other.names[i - n1].clone()
                }
            },
            |i, j| {
                if i < n1 && j < n1 {
                    self.order(i, j)
                } else if i >= n1 && j >= n1 {
                    other.order(i - n1, j - n1)
                } else {
                    Order::COMMUTE
                }
            },
        )
    }
}

/// Default node name for generated diagrams; zero-padded so that the
/// lexicographic order matches the index order.
pub fn node_name(i: usize) -> String {
    format!("n{i:02}")
}

impl fmt::Debug for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterDiagram{{nodes: {:?}, edges: [", self.names)?;
        for (k, (i, j, m)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}:{}", self.names[i], self.names[j], m)?;
        }
        write!(f, "]}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_sorts_and_rejects_bad_edges() {
        let d = CoxeterDiagram::new(&["c", "a", "b"], &[("a", "b", Order::Finite(3))]).unwrap();
        assert_eq!(d.names(), &["a", "b", "c"]);
        assert_eq!(d.order(0, 1), Order::Finite(3));
        assert_eq!(d.order(1, 2), Order::COMMUTE);
        assert_eq!(d.order(2, 2), Order::ONE);
        assert!(CoxeterDiagram::new(&["a", "a"], &[]).is_err());
        assert!(CoxeterDiagram::new(&["a"], &[("a", "a", Order::Finite(3))]).is_err());
        assert!(CoxeterDiagram::new(&["a", "b"], &[("a", "b", Order::Finite(2))]).is_err());
    }

    #[test]
    fn components_of_a_forest() {
        let d = CoxeterDiagram::with_edges(
            5,
            &[(0, 1, Order::Finite(3)), (3, 4, Order::Infinite)],
        );
        assert_eq!(d.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!d.is_connected());
        assert_eq!(d.degree(0), 1);
    }
}
