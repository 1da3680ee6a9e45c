use super::isometry::search_order;
use super::CoxeterDiagram;
use crate::error::{Error, Result};
use crate::perm::{closure, Perm};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A permutation group acting on the nodes of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramAutomorphismGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub order: u64,
}

/// Above this many elements the closure-based helpers refuse to enumerate.
pub const ENUMERATION_LIMIT: usize = 2_000_000;

impl DiagramAutomorphismGroup {
    pub fn trivial(degree: usize) -> Self {
        DiagramAutomorphismGroup {
            degree,
            generators: vec![],
            order: 1,
        }
    }

    /// The group generated by `generators`; its order is found by closure.
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.len() != degree || Perm::from_images(g.0.clone()).is_none() {
                return Err(Error::invalid(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let gens: Vec<Perm> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let elems = closure(degree, &gens, ENUMERATION_LIMIT)
            .ok_or_else(|| Error::budget("permutation group closure", ENUMERATION_LIMIT as u64))?;
        Ok(DiagramAutomorphismGroup {
            degree,
            generators: gens,
            order: elems.len() as u64,
        })
    }

    /// All elements, sorted.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        let mut e = closure(self.degree, &self.generators, ENUMERATION_LIMIT)
            .ok_or_else(|| Error::budget("permutation group closure", ENUMERATION_LIMIT as u64))?;
        e.sort();
        Ok(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Every generator preserves the bond orders of `d`.
    pub fn acts_on(&self, d: &CoxeterDiagram) -> bool {
        self.degree == d.len() && self.generators.iter().all(|g| is_automorphism(d, g))
    }

    /// `self ⊆ other`, by checking generators against the elements of `other`.
    pub fn is_subgroup_of(&self, other: &DiagramAutomorphismGroup) -> Result<bool> {
        let elems: BTreeSet<Perm> = other.elements()?.into_iter().collect();
        Ok(self.degree == other.degree && self.generators.iter().all(|g| elems.contains(g)))
    }

    /// `self` is normalized by `other` (conjugates of generators stay inside).
    pub fn is_normalized_by(&self, other: &DiagramAutomorphismGroup) -> Result<bool> {
        let elems: BTreeSet<Perm> = self.elements()?.into_iter().collect();
        for h in &other.generators {
            let hi = h.inverse();
            for g in &self.generators {
                if !elems.contains(&h.compose(g).compose(&hi)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn is_automorphism(d: &CoxeterDiagram, p: &Perm) -> bool {
    let n = d.len();
    p.len() == n
        && (0..n).all(|i| (i + 1..n).all(|j| d.order(i, j) == d.order(p.apply(i), p.apply(j))))
}

/// Find an automorphism of `d` that fixes `fixed` pointwise (in order) and
/// maps `from` to `to`.
fn find_extension(d: &CoxeterDiagram, fixed: &[usize], from: usize, to: usize) -> Option<Perm> {
    let n = d.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &f in fixed {
        map[f] = f;
        used[f] = true;
    }
    if used[to] && map[from] != to {
        return None;
    }
    map[from] = to;
    used[to] = true;
    let mut order: Vec<usize> = fixed.to_vec();
    order.push(from);
    for x in search_order(d) {
        if !order.contains(&x) {
            order.push(x);
        }
    }
    let start = fixed.len() + 1;
    for a in 0..start {
        for b in 0..a {
            let (x, y) = (order[a], order[b]);
            if d.order(x, y) != d.order(map[x], map[y]) {
                return None;
            }
        }
    }
    fn rec(
        depth: usize,
        order: &[usize],
        d: &CoxeterDiagram,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let a = order[depth];
        for x in 0..d.len() {
            if used[x] || d.degree(x) != d.degree(a) {
                continue;
            }
            if order[..depth]
                .iter()
                .all(|&b| d.order(a, b) == d.order(x, map[b]))
            {
                used[x] = true;
                map[a] = x;
                if rec(depth + 1, order, d, map, used) {
                    return true;
                }
                used[x] = false;
                map[a] = usize::MAX;
            }
        }
        false
    }
    if rec(start, &order, d, &mut map, &mut used) {
        Some(Perm(map))
    } else {
        None
    }
}

/// The full group of label-preserving automorphisms of `d`.
///
/// The order is the product of basic orbit lengths along the base
/// `0, 1, …, n−1`; the generators are the non-identity transversal elements.
pub fn automorphism_group(d: &CoxeterDiagram) -> DiagramAutomorphismGroup {
    let n = d.len();
    let mut order: u64 = 1;
    let mut gens = BTreeSet::new();
    for level in 0..n {
        let fixed: Vec<usize> = (0..level).collect();
        let mut orbit = 1u64;
        for to in level + 1..n {
            if let Some(p) = find_extension(d, &fixed, level, to) {
                orbit += 1;
                gens.insert(p);
            }
        }
        order *= orbit;
    }
    DiagramAutomorphismGroup {
        degree: n,
        generators: gens.into_iter().collect(),
        order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SphericalType;

    fn aut(s: &str) -> DiagramAutomorphismGroup {
        automorphism_group(&s.parse::<SphericalType>().unwrap().standard_diagram())
    }

    #[test]
    fn orders_of_standard_groups() {
        assert_eq!(aut("A3").order, 2);
        assert_eq!(aut("D4").order, 6);
        assert_eq!(aut("A6").order, 2);
        assert_eq!(aut("E7").order, 1);
        assert_eq!(aut("A1^3").order, 6);
        assert_eq!(aut("A3A1^6").order, 1440);
        assert_eq!(aut("D5A1").order, 2);
    }

    #[test]
    fn closure_agrees_with_transversal_order() {
        for s in ["A3", "D4", "A1^4", "A2^2", "D6", "E6A2"] {
            let g = aut(s);
            let h = DiagramAutomorphismGroup::from_generators(g.degree, g.generators.clone()).unwrap();
            assert_eq!(g.order, h.order, "{s}");
        }
    }

    #[test]
    fn normality() {
        let g = aut("D4");
        let swap = DiagramAutomorphismGroup::from_generators(4, vec![Perm(vec![0, 1, 3, 2])]).unwrap();
        assert!(swap.is_subgroup_of(&g).unwrap());
        assert!(!swap.is_normalized_by(&g).unwrap());
        let c3 = DiagramAutomorphismGroup::from_generators(4, vec![Perm(vec![2, 1, 3, 0])]).unwrap();
        assert_eq!(c3.order, 3);
        assert!(c3.is_normalized_by(&g).unwrap());
    }
}
