//! Brute-force conjugacy oracle for crystallographic spherical diagrams.
//!
//! Roots are integer vectors in simple-root coordinates. Squared root lengths
//! are `2`, `4` or `6` so that the symmetrized Gram matrix is integral.

use super::adjacency::AssociateClass;
use crate::diagram::{classify_components, isometries, CoxeterDiagram, Isometry, Order};
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

/// Default bound on `|W_S|` for the oracle.
pub const DEFAULT_ORACLE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub rank: usize,
    /// Symmetrized Gram matrix of the simple roots.
    pub gram: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i32>>,
    /// `reflect[i][r]` is the index of `s_i(root r)`.
    pub reflect: Vec<Vec<u32>>,
    /// Index of the simple root `e_i`.
    pub simple: Vec<u32>,
    pub group_order: u128,
}

impl RootSystem {
    pub fn new(s: &CoxeterDiagram, limit: u128) -> Result<Self> {
        let comps = classify_components(s)
            .ok_or_else(|| Error::NotSpherical(format!("{s:?}")))?;
        let group_order: u128 = comps.iter().map(|c| c.kind.group_order()).product();
        if comps.iter().any(|c| !c.kind.is_crystallographic()) {
            return Err(Error::Unsupported(
                "root-system oracle needs bonds in {2,3,4,6}".into(),
            ));
        }
        if group_order > limit {
            return Err(Error::budget("root-system oracle |W|", group_order as u64));
        }
        let n = s.len();
        // squared lengths, propagated along each tree
        let mut len2 = vec![0i64; n];
        for comp in s.components() {
            let mut stack = vec![comp[0]];
            len2[comp[0]] = 1;
            while let Some(x) = stack.pop() {
                for y in s.neighbors(x) {
                    if len2[y] != 0 {
                        continue;
                    }
                    len2[y] = match s.order(x, y) {
                        Order::Finite(3) => len2[x],
                        Order::Finite(4) => 2 * len2[x],
                        Order::Finite(6) => 3 * len2[x],
                        _ => unreachable!(),
                    };
                    stack.push(y);
                }
            }
            let min = comp.iter().map(|&x| len2[x]).min().unwrap();
            let max = comp.iter().map(|&x| len2[x]).max().unwrap();
            for &x in &comp {
                // rescale so the short roots have squared length 2
                len2[x] = if len2[x] == min {
                    2
                } else {
                    2 * max / min
                };
            }
        }
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = len2[i];
            for j in 0..n {
                if i == j || !s.order(i, j).is_edge() {
                    continue;
                }
                let short = len2[i].min(len2[j]);
                gram[i][j] = match s.order(i, j) {
                    Order::Finite(3) => -short / 2,
                    Order::Finite(4) => -short,
                    Order::Finite(6) => -3 * short / 2,
                    _ => unreachable!(),
                };
            }
        }
        // Cartan integers: s_i(v) = v - (2 (v, e_i) / (e_i, e_i)) e_i
        let apply = |i: usize, v: &[i32]| -> Vec<i32> {
            let ip: i64 = (0..n).map(|k| v[k] as i64 * gram[k][i]).sum();
            let c = 2 * ip / len2[i];
            let mut w = v.to_vec();
            w[i] -= c as i32;
            w
        };
        let mut index: HashMap<Vec<i32>, u32> = HashMap::new();
        let mut roots: Vec<Vec<i32>> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if !index.contains_key(&e) {
                index.insert(e.clone(), roots.len() as u32);
                roots.push(e.clone());
                queue.push_back(e);
            }
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = apply(i, &v);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), roots.len() as u32);
                    roots.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let reflect = (0..n)
            .map(|i| roots.iter().map(|v| index[&apply(i, v)]).collect())
            .collect();
        let simple = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                index[&e]
            })
            .collect();
        Ok(RootSystem {
            rank: n,
            gram,
            roots,
            reflect,
            simple,
            group_order,
        })
    }

    /// The `W`-orbit of the tuple of simple roots `(e_{K(j)})_j`.
    pub fn tuple_orbit(&self, k: &Isometry) -> HashSet<Vec<u32>> {
        let start: Vec<u32> = k.0.iter().map(|&x| self.simple[x]).collect();
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for refl in &self.reflect {
                let u: Vec<u32> = t.iter().map(|&r| refl[r as usize]).collect();
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Some `w ∈ W_S` maps `e_{k1(j)}` to `e_{k2(j)}` for every `j`.
    pub fn conjugate(&self, k1: &Isometry, k2: &Isometry) -> bool {
        let target: Vec<u32> = k2.0.iter().map(|&x| self.simple[x]).collect();
        self.tuple_orbit(k1).contains(&target)
    }
}

/// `oracle_conjugate` with an explicit bound on `|W_S|`.
pub fn oracle_conjugate(
    s: &CoxeterDiagram,
    k1: &Isometry,
    k2: &Isometry,
    limit: u128,
) -> Result<bool> {
    Ok(RootSystem::new(s, limit)?.conjugate(k1, k2))
}

/// Partition of the isometries `j → s` into `W_S`-conjugacy classes, in the
/// same shape and order as [`associate_classes`](super::associate_classes).
pub fn oracle_classes(j: &CoxeterDiagram, s: &CoxeterDiagram, limit: u128) -> Result<Vec<AssociateClass>> {
    let rs = RootSystem::new(s, limit)?;
    let all = isometries(j, s);
    let tuple = |k: &Isometry| -> Vec<u32> { k.0.iter().map(|&x| rs.simple[x]).collect() };
    let mut assigned = vec![false; all.len()];
    let mut out = Vec::new();
    for i in 0..all.len() {
        if assigned[i] {
            continue;
        }
        let orbit = rs.tuple_orbit(&all[i]);
        let mut members = Vec::new();
        for (k, a) in all.iter().zip(assigned.iter_mut()) {
            if orbit.contains(&tuple(k)) {
                *a = true;
                members.push(k.clone());
            }
        }
        out.push(AssociateClass { members });
    }
    Ok(out)
}
