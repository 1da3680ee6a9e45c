use crate::diagram::{classify_components, isometries, CoxeterDiagram, Isometry};
use crate::error::{Error, Result};
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

/// `ν_T` for the subdiagram of `s` on `nodes`, as a map on all nodes of `s`
/// (identity off `nodes`). `None` if the subdiagram is not spherical.
pub fn opposition_on(s: &CoxeterDiagram, nodes: &[usize]) -> Option<Vec<usize>> {
    let sub = s.induced(nodes);
    let comps = classify_components(&sub)?;
    let mut nu: Vec<usize> = (0..s.len()).collect();
    for c in comps {
        let o = c.kind.opposition();
        for (k, &local) in c.nodes.iter().enumerate() {
            nu[nodes[local]] = nodes[c.nodes[o.apply(k)]];
        }
    }
    Some(nu)
}

/// The isometry `σ_{K(J)∪s} σ_{K(J)} ∘ K`, i.e. `j ↦ ν_{K(J)∪s}(ν_{K(J)}(K(j)))`.
///
/// Returns `Ok(None)` when `K(J) ∪ {node}` is not spherical.
pub fn adjacent_image(s: &CoxeterDiagram, k: &Isometry, node: usize) -> Result<Option<Isometry>> {
    if k.0.contains(&node) {
        return Err(Error::invalid(format!(
            "node {} is already in the image",
            s.name(node)
        )));
    }
    let img = k.image();
    let nu_k = opposition_on(s, &img)
        .ok_or_else(|| Error::NotSpherical("image of J".into()))?;
    let mut t = img;
    t.push(node);
    t.sort_unstable();
    Ok(opposition_on(s, &t).map(|nu_t| k.postcompose(|x| nu_t[nu_k[x]])))
}

/// All isometries adjacent to `k`, one per node outside the image that
/// gives a spherical extension, in node order.
pub fn adjacent_isometries(s: &CoxeterDiagram, k: &Isometry) -> Vec<(usize, Isometry)> {
    let img = k.image();
    let Some(nu_k) = opposition_on(s, &img) else {
        return vec![];
    };
    let mut out = Vec::new();
    let mut t = img.clone();
    for node in 0..s.len() {
        if img.binary_search(&node).is_ok() {
            continue;
        }
        t.clear();
        t.extend(img.iter().copied());
        t.push(node);
        t.sort_unstable();
        if let Some(nu_t) = opposition_on(s, &t) {
            out.push((node, k.postcompose(|x| nu_t[nu_k[x]])));
        }
    }
    out
}

/// The permutation `ρ` of `J` through which `σ_{K(J)∪s} σ_{K(J)}` acts when
/// `ν_{K(J)∪s}` preserves `K(J)`; `None` otherwise (or when the extension is
/// not spherical).
pub fn reflection_action(s: &CoxeterDiagram, k: &Isometry, node: usize) -> Option<Perm> {
    let k2 = adjacent_image(s, k, node).ok()??;
    k.relative_perm(&k2)
}

/// `K` is adjacent to `K ∘ ρ` for some `ρ ∈ r`.
pub fn is_r_reflective(s: &CoxeterDiagram, k: &Isometry, r: &BTreeSet<Perm>) -> bool {
    adjacent_isometries(s, k)
        .into_iter()
        .any(|(_, k2)| k.relative_perm(&k2).is_some_and(|rho| r.contains(&rho)))
}

/// An equivalence class of isometries under the associate relation,
/// members sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AssociateClass {
    pub members: Vec<Isometry>,
}

impl AssociateClass {
    pub fn representative(&self) -> &Isometry {
        &self.members[0]
    }

    pub fn contains(&self, k: &Isometry) -> bool {
        self.members.binary_search(k).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_r_reflective(&self, s: &CoxeterDiagram, r: &BTreeSet<Perm>) -> bool {
        self.members.iter().any(|k| is_r_reflective(s, k, r))
    }
}

/// The associate class of `k`, by breadth-first closure under adjacency.
pub fn associate_class_of(s: &CoxeterDiagram, k: &Isometry) -> AssociateClass {
    let mut seen: BTreeSet<Isometry> = BTreeSet::from([k.clone()]);
    let mut queue = VecDeque::from([k.clone()]);
    while let Some(x) = queue.pop_front() {
        for (_, y) in adjacent_isometries(s, &x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    AssociateClass {
        members: seen.into_iter().collect(),
    }
}

/// Partition of all isometries `j → s` into associate classes, ordered by
/// smallest member.
pub fn associate_classes(j: &CoxeterDiagram, s: &CoxeterDiagram) -> Vec<AssociateClass> {
    let all = isometries(j, s);
    let mut done: BTreeSet<Isometry> = BTreeSet::new();
    let mut out = Vec::new();
    for k in all {
        if done.contains(&k) {
            continue;
        }
        let c = associate_class_of(s, &k);
        done.extend(c.members.iter().cloned());
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SphericalType;

    fn std(s: &str) -> CoxeterDiagram {
        s.parse::<SphericalType>().unwrap().standard_diagram()
    }

    #[test]
    fn a1_into_a3() {
        let s = std("A3");
        let k = |i| Isometry(vec![i]);
        assert_eq!(adjacent_image(&s, &k(0), 1).unwrap(), Some(k(1)));
        assert_eq!(adjacent_image(&s, &k(0), 2).unwrap(), Some(k(0)));
        assert_eq!(adjacent_image(&s, &k(1), 0).unwrap(), Some(k(0)));
        assert_eq!(adjacent_image(&s, &k(1), 2).unwrap(), Some(k(2)));
        assert!(adjacent_image(&s, &k(1), 1).is_err());
        let triv = BTreeSet::from([Perm::identity(1)]);
        assert!(!is_r_reflective(&s, &k(1), &triv));
        assert!(is_r_reflective(&s, &k(0), &triv));
        assert_eq!(associate_classes(&std("A1"), &s).len(), 1);
    }

    #[test]
    fn adjacency_is_symmetric_on_small_cases() {
        for (j, s) in [("A2", "A4"), ("A3", "D5"), ("A1^2", "B3"), ("A2", "E6"), ("B2", "F4")] {
            let (j, s) = (std(j), std(s));
            for k in isometries(&j, &s) {
                for (_, k2) in adjacent_isometries(&s, &k) {
                    assert!(adjacent_isometries(&s, &k2).iter().any(|(_, x)| *x == k));
                }
            }
        }
    }

    #[test]
    fn class_sizes() {
        let sizes = |j: &str, s: &str| {
            let mut v: Vec<usize> = associate_classes(&std(j), &std(s))
                .iter()
                .map(|c| c.len())
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes("A3", "D5"), vec![2, 6]);
        assert_eq!(sizes("A2", "A4").len(), 2);
        assert_eq!(sizes("A2", "E6").len(), 1);
        assert_eq!(sizes("D5", "D6"), vec![2]);
    }

    #[test]
    fn reflection_actions() {
        // B2: the A1 is sent to itself
        let b2 = std("B2");
        assert_eq!(reflection_action(&b2, &Isometry(vec![0]), 1), Some(Perm::identity(1)));
        let a2 = std("A2");
        assert_eq!(reflection_action(&a2, &Isometry(vec![0]), 1), None);
        // E6 inside E7: the action is the diagram flip of E6
        let e7 = std("E7");
        let e6 = std("E6");
        let ks = isometries(&e6, &e7);
        let k = &ks[0];
        let s = (0..7).find(|x| !k.0.contains(x)).unwrap();
        let rho = reflection_action(&e7, k, s).unwrap();
        assert!(!rho.is_identity());
        assert_eq!(rho.order(), 2);
    }
}
