use super::{CoxeterDiagram, Order};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A canonical relabelling of a diagram.
///
/// `labeling[k]` is the node placed at canonical position `k`. Two diagrams
/// are isomorphic exactly when their certificates are equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub labeling: Vec<usize>,
    pub certificate: String,
}

fn code(m: Order) -> u32 {
    match m {
        Order::Finite(k) => k,
        Order::Infinite => 0,
    }
}

fn certificate_of(d: &CoxeterDiagram, labeling: &[usize]) -> Vec<u32> {
    let n = labeling.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2 + 1);
    out.push(n as u32);
    for i in 0..n {
        for j in i + 1..n {
            out.push(code(d.order(labeling[i], labeling[j])));
        }
    }
    out
}

/// Refine a colouring of `nodes` until stable. Colours are renumbered by
/// sorted signature, so the result does not depend on node indices.
fn refine(d: &CoxeterDiagram, nodes: &[usize], colour: &mut BTreeMap<usize, u32>) {
    loop {
        let mut sigs: BTreeMap<usize, (u32, Vec<(u32, u32)>)> = BTreeMap::new();
        for &x in nodes {
            let mut nb: Vec<(u32, u32)> = nodes
                .iter()
                .filter(|&&y| y != x && d.order(x, y).is_edge())
                .map(|&y| (code(d.order(x, y)), colour[&y]))
                .collect();
            nb.sort_unstable();
            sigs.insert(x, (colour[&x], nb));
        }
        let mut distinct: Vec<&(u32, Vec<(u32, u32)>)> = sigs.values().collect();
        distinct.sort();
        distinct.dedup();
        let before = colour.values().collect::<std::collections::BTreeSet<_>>().len();
        for &x in nodes {
            let c = distinct.binary_search(&&sigs[&x]).unwrap() as u32;
            colour.insert(x, c);
        }
        if distinct.len() == before {
            return;
        }
    }
}

fn search(
    d: &CoxeterDiagram,
    nodes: &[usize],
    colour: BTreeMap<usize, u32>,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
) {
    let mut colour = colour;
    refine(d, nodes, &mut colour);
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for &x in nodes {
        cells.entry(colour[&x]).or_default().push(x);
    }
    let target = cells.iter().find(|(_, v)| v.len() > 1).map(|(&c, v)| (c, v.clone()));
    match target {
        None => {
            let mut lab: Vec<usize> = nodes.to_vec();
            lab.sort_by_key(|x| colour[x]);
            let cert = certificate_of(d, &lab);
            if best.as_ref().is_none_or(|(b, _)| cert < *b) {
                *best = Some((cert, lab));
            }
        }
        Some((c, cell)) => {
            for &x in &cell {
                // individualize x: it keeps colour c, the rest of its cell
                // moves just above
                let mut next = BTreeMap::new();
                for &y in nodes {
                    let cy = colour[&y];
                    let v = if cy < c || y == x { 2 * cy } else { 2 * cy + 1 };
                    next.insert(y, v);
                }
                search(d, nodes, next, best);
            }
        }
    }
}

fn canonical_component(d: &CoxeterDiagram, nodes: &[usize]) -> (Vec<u32>, Vec<usize>) {
    let mut colour = BTreeMap::new();
    for &x in nodes {
        let mut inc: Vec<u32> = nodes
            .iter()
            .filter(|&&y| y != x && d.order(x, y).is_edge())
            .map(|&y| code(d.order(x, y)))
            .collect();
        inc.sort_unstable();
        colour.insert(x, (inc.len(), inc));
    }
    let mut distinct: Vec<_> = colour.values().cloned().collect();
    distinct.sort();
    distinct.dedup();
    let start: BTreeMap<usize, u32> = colour
        .iter()
        .map(|(&x, s)| (x, distinct.binary_search(s).unwrap() as u32))
        .collect();
    let mut best = None;
    search(d, nodes, start, &mut best);
    best.unwrap()
}

/// Canonical labelling by individualization and refinement, done per
/// connected component; components are ordered by their own certificates.
pub fn canonical_form(d: &CoxeterDiagram) -> CanonicalForm {
    let mut parts: Vec<(Vec<u32>, Vec<usize>)> = d
        .components()
        .into_iter()
        .map(|c| canonical_component(d, &c))
        .collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let labeling: Vec<usize> = parts.into_iter().flat_map(|(_, l)| l).collect();
    let cert = certificate_of(d, &labeling);
    let certificate = cert
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(".");
    CanonicalForm {
        labeling,
        certificate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SphericalType;

    fn std(s: &str) -> CoxeterDiagram {
        s.parse::<SphericalType>().unwrap().standard_diagram()
    }

    #[test]
    fn relabelings_agree() {
        for s in ["A3", "D4", "E6", "B3A1^2", "F4", "A2^3"] {
            let d = std(s);
            let n = d.len();
            let rev: Vec<usize> = (0..n).rev().collect();
            let rot: Vec<usize> = (0..n).map(|i| (i + 2) % n).collect();
            let c = canonical_form(&d).certificate;
            assert_eq!(canonical_form(&d.reorder(&rev)).certificate, c, "{s}");
            assert_eq!(canonical_form(&d.reorder(&rot)).certificate, c, "{s}");
        }
    }

    #[test]
    fn different_diagrams_differ() {
        assert_ne!(canonical_form(&std("A3")).certificate, canonical_form(&std("B3")).certificate);
        assert_ne!(canonical_form(&std("D4")).certificate, canonical_form(&std("A4")).certificate);
        assert_ne!(canonical_form(&std("A3")).certificate, canonical_form(&std("A2A1")).certificate);
    }

    #[test]
    fn labeling_is_a_permutation() {
        let d = std("E7A1");
        let mut l = canonical_form(&d).labeling;
        l.sort_unstable();
        assert_eq!(l, (0..8).collect::<Vec<_>>());
    }
}
