use super::CoxeterDiagram;
use crate::perm::Perm;
use serde::{Deserialize, Serialize};

/// A label-preserving injective map `K : J → S`, stored as the image of
/// each node of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isometry(pub Vec<usize>);

impl Isometry {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `K ∘ ρ` for a permutation `ρ` of `J`.
    pub fn precompose(&self, rho: &Perm) -> Isometry {
        Isometry(rho.0.iter().map(|&x| self.0[x]).collect())
    }

    /// `g ∘ K` for a map `g` on the nodes of `S`.
    pub fn postcompose(&self, g: impl Fn(usize) -> usize) -> Isometry {
        Isometry(self.0.iter().map(|&x| g(x)).collect())
    }

    /// Sorted image set `K(J)`.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    /// If `other` has the same image, the permutation `ρ` of `J` with
    /// `other = self ∘ ρ`.
    pub fn relative_perm(&self, other: &Isometry) -> Option<Perm> {
        let mut rho = Vec::with_capacity(self.len());
        for &y in &other.0 {
            rho.push(self.0.iter().position(|&x| x == y)?);
        }
        Some(Perm(rho))
    }

    /// Check the isometry condition against the two diagrams.
    pub fn is_valid(&self, j: &CoxeterDiagram, s: &CoxeterDiagram) -> bool {
        if self.len() != j.len() || self.0.iter().any(|&x| x >= s.len()) {
            return false;
        }
        for a in 0..j.len() {
            for b in a + 1..j.len() {
                if self.0[a] == self.0[b] || j.order(a, b) != s.order(self.0[a], self.0[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Order in which to assign the nodes of `j`: breadth-first within each
/// component so that later nodes are constrained by an earlier neighbor.
pub(crate) fn search_order(j: &CoxeterDiagram) -> Vec<usize> {
    let mut order = Vec::with_capacity(j.len());
    let mut seen = vec![false; j.len()];
    for c in j.components() {
        // start from a node of maximal degree
        let start = *c.iter().max_by_key(|&&x| (j.degree(x), std::cmp::Reverse(x))).unwrap();
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for y in j.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Visit every isometry `j → s`. The callback returns `false` to stop early.
/// Visiting order is deterministic but not lexicographic.
pub fn isometries_with(
    j: &CoxeterDiagram,
    s: &CoxeterDiagram,
    mut visit: impl FnMut(&Isometry) -> bool,
) {
    if j.len() > s.len() {
        return;
    }
    let order = search_order(j);
    let mut map = Isometry(vec![usize::MAX; j.len()]);
    let mut used = vec![false; s.len()];
    let degs_s: Vec<usize> = (0..s.len()).map(|x| s.degree(x)).collect();
    let degs_j: Vec<usize> = (0..j.len()).map(|x| j.degree(x)).collect();
    fn rec(
        depth: usize,
        order: &[usize],
        j: &CoxeterDiagram,
        s: &CoxeterDiagram,
        degs_j: &[usize],
        degs_s: &[usize],
        map: &mut Isometry,
        used: &mut [bool],
        visit: &mut dyn FnMut(&Isometry) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(map);
        }
        let a = order[depth];
        for x in 0..s.len() {
            if used[x] || degs_s[x] < degs_j[a] {
                continue;
            }
            let ok = order[..depth]
                .iter()
                .all(|&b| j.order(a, b) == s.order(x, map.0[b]));
            if !ok {
                continue;
            }
            used[x] = true;
            map.0[a] = x;
            let go_on = rec(depth + 1, order, j, s, degs_j, degs_s, map, used, visit);
            used[x] = false;
            map.0[a] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(0, &order, j, s, &degs_j, &degs_s, &mut map, &mut used, &mut visit);
}

/// All isometries `j → s`, sorted lexicographically by image list.
pub fn isometries(j: &CoxeterDiagram, s: &CoxeterDiagram) -> Vec<Isometry> {
    let mut out = Vec::new();
    isometries_with(j, s, |k| {
        out.push(k.clone());
        true
    });
    out.sort();
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
    fn counts_from_small_cases() {
        assert_eq!(isometries(&std("D5"), &std("D6")).len(), 2);
        assert_eq!(isometries(&std("A3"), &std("D5")).len(), 8);
        assert_eq!(isometries(&std("A1"), &std("A1")).len(), 1);
        assert_eq!(isometries(&std("A2"), &std("A1^2")).len(), 0);
        assert_eq!(isometries(&std("A1^2"), &std("A3")).len(), 2);
        for k in isometries(&std("A3"), &std("D5")) {
            assert!(k.is_valid(&std("A3"), &std("D5")));
        }
    }

    #[test]
    fn early_stop() {
        let mut n = 0;
        isometries_with(&std("A1"), &std("A5"), |_| {
            n += 1;
            n < 2
        });
        assert_eq!(n, 2);
    }

    #[test]
    fn relative_perm_recovers_rho() {
        let k = Isometry(vec![4, 2, 7]);
        let rho = Perm(vec![2, 0, 1]);
        let k2 = k.precompose(&rho);
        assert_eq!(k.relative_perm(&k2), Some(rho));
        assert_eq!(k.relative_perm(&Isometry(vec![4, 2, 8])), None);
    }
}
