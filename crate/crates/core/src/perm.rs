use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

/// A permutation of `0..n`, stored as its image list: `i ↦ self[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Build from an image list, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l: u64 = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// All elements of the group generated by `gens` acting on `0..n`, in
/// breadth-first order from the identity. Returns `None` if more than
/// `limit` elements are produced.
pub fn closure(n: usize, gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(out)
}

/// A small helper for subgroup bookkeeping: a sorted set of elements.
pub fn element_set(elements: &[Perm]) -> BTreeSet<Perm> {
    elements.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Perm(vec![1, 2, 0]);
        let b = Perm(vec![1, 0, 2]);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
        // b first, then a: 0 -> 1 -> 2
        assert_eq!(a.compose(&b).apply(0), 2);
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
    }

    #[test]
    fn closure_of_s3() {
        let g = closure(3, &[Perm(vec![1, 2, 0]), Perm(vec![1, 0, 2])], 100).unwrap();
        assert_eq!(g.len(), 6);
        assert!(closure(3, &[Perm(vec![1, 2, 0]), Perm(vec![1, 0, 2])], 5).is_none());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![0, 2]).is_none());
        assert!(Perm::from_images(vec![1, 0]).is_some());
    }
}
