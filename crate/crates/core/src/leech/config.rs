//! Finite point configurations in Λ and their Coxeter diagrams.

use super::lattice::{edge_order, LeechPoint, ShellVec};
use super::Leech;
use crate::diagram::{
    classify_spherical, isometries, node_name, CoxeterDiagram, Irreducible, Isometry, Order,
    SphericalType,
};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub points: Vec<LeechPoint>,
}

impl std::fmt::Debug for PointConfiguration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.points.iter()).finish()
    }
}

impl PointConfiguration {
    pub fn new(points: Vec<LeechPoint>) -> Self {
        PointConfiguration { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Pairwise squared distances.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.points
            .iter()
            .map(|a| self.points.iter().map(|b| a.dist2(b)).collect())
            .collect()
    }

    /// Induced diagram, nodes in point order.
    pub fn diagram(&self) -> CoxeterDiagram {
        CoxeterDiagram::from_fn(self.len(), node_name, |i, j| {
            edge_order(&self.points[i], &self.points[j])
        })
    }

    pub fn spherical_type(&self) -> Option<SphericalType> {
        classify_spherical(&self.diagram())
    }

    /// The same points in sorted order.
    pub fn sorted(&self) -> PointConfiguration {
        let mut p = self.points.clone();
        p.sort();
        PointConfiguration { points: p }
    }

    pub fn translate(&self, t: &LeechPoint) -> PointConfiguration {
        PointConfiguration {
            points: self.points.iter().map(|p| p.add(t)).collect(),
        }
    }
}

/// Squared distance from `p0 + x` to `p0 + u`, in units of 1/8.
#[inline]
fn dist8(x: &ShellVec, u: &[i32; 24], x8: i64, u8: i64) -> i64 {
    let mut d = 0i64;
    for k in 0..24 {
        d += x[k] as i64 * u[k] as i64;
    }
    x8 - 2 * d + u8
}

/// Points `p0 + x`, `x` in `shells`, at squared distance 4 or 6 from every
/// `p0 + u` for `u` in `rel`.
fn near_points(shells: &[&[ShellVec]], rel: &[[i32; 24]]) -> Vec<ShellVec> {
    let u8: Vec<i64> = rel
        .iter()
        .map(|u| u.iter().map(|&x| x as i64 * x as i64).sum())
        .collect();
    let mut out = Vec::new();
    for shell in shells {
        out.extend(par::filter(shell, |x| {
            let x8: i64 = x.iter().map(|&c| c as i64 * c as i64).sum();
            rel.iter()
                .zip(&u8)
                .all(|(u, &n)| matches!(dist8(x, u, x8, n), 32 | 48))
        }));
    }
    out
}

/// All `s ∉ cfg` at squared distance 4 or 6 from every point of `cfg` such
/// that `cfg ∪ {s}` is spherical, with the type of `cfg ∪ {s}`.
pub fn extension_nodes(
    leech: &Leech,
    cfg: &PointConfiguration,
) -> Result<Vec<(LeechPoint, SphericalType)>> {
    if cfg.is_empty() {
        return Err(Error::invalid("empty configuration"));
    }
    if cfg.spherical_type().is_none() {
        return Err(Error::NotSpherical(format!("{cfg:?}")));
    }
    let p0 = cfg.points[0];
    let rel: Vec<[i32; 24]> = cfg.points[1..].iter().map(|p| p.sub(&p0).0).collect();
    let shell6 = leech.shell6()?;
    let near = near_points(&[leech.shell4(), shell6], &rel);
    let found: Vec<Option<(LeechPoint, SphericalType)>> = par::map(&near, |x| {
        let s = LeechPoint::from_shell(x).add(&p0);
        let mut pts = cfg.points.clone();
        pts.push(s);
        PointConfiguration::new(pts)
            .spherical_type()
            .map(|t| (s, t))
    });
    let mut out: Vec<_> = found.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// How [`find_configuration`] picks among realizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    FirstFound,
    /// Examine up to `samples` realizations and keep one with the largest
    /// setwise stabilizer.
    MaxStabilizer { samples: usize },
}

/// Node order for building a realization: each node after the first of
/// its component is adjacent to an earlier one.
fn build_order(d: &CoxeterDiagram) -> Vec<usize> {
    let mut order = Vec::new();
    for comp in d.components() {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut queue = std::collections::VecDeque::from([comp[0]]);
        seen.insert(comp[0]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in d.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn required_dist2(m: Order) -> Result<i64> {
    match m {
        Order::Finite(2) => Ok(4),
        Order::Finite(3) => Ok(6),
        _ => Err(Error::Unsupported(format!(
            "bond {m} does not occur between Leech points"
        ))),
    }
}

struct Realizer<'a> {
    d: &'a CoxeterDiagram,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
    limit: usize,
    found: Vec<PointConfiguration>,
    seen: HashSet<Vec<LeechPoint>>,
}

impl Realizer<'_> {
    /// `pool` holds the points at distance² 4 or 6 from everything placed.
    fn dfs(&mut self, placed: &mut Vec<LeechPoint>, pools: &[&[ShellVec]]) -> Result<()> {
        let k = placed.len();
        if k == self.order.len() {
            let mut pts = vec![LeechPoint::ZERO; k];
            for (slot, &node) in self.order.iter().enumerate() {
                pts[node] = placed[slot];
            }
            let mut key = pts.clone();
            key.sort();
            if self.seen.insert(key) {
                self.found.push(PointConfiguration::new(pts));
            }
            return Ok(());
        }
        let node = self.order[k];
        let want: Vec<i64> = self.order[..k]
            .iter()
            .map(|&m| required_dist2(self.d.order(node, m)))
            .collect::<Result<_>>()?;
        for x in pools.iter().flat_map(|p| p.iter()) {
            let p = LeechPoint::from_shell(x);
            if placed.contains(&p) || placed.iter().zip(&want).any(|(q, &w)| p.dist2(q) != w) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::budget("configuration search", self.nodes));
            }
            let rel = [p.0];
            let next = near_points(pools, &rel);
            placed.push(p);
            self.dfs(placed, &[&next])?;
            placed.pop();
            if self.found.len() >= self.limit {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// A configuration of type `t` with its first point at the origin.
pub fn find_configuration(
    leech: &Leech,
    t: &SphericalType,
    selector: Selector,
) -> Result<PointConfiguration> {
    if t.components().iter().any(|c| {
        !matches!(
            c,
            Irreducible::A(_) | Irreducible::D(_) | Irreducible::E(_)
        )
    }) {
        return Err(Error::Unsupported(format!(
            "{t} is not simply laced, so it has no realization in the Leech lattice"
        )));
    }
    if t.rank() == 0 {
        return Err(Error::invalid("empty type"));
    }
    let d = t.standard_diagram();
    let order = build_order(&d);
    let limit = match selector {
        Selector::FirstFound => 1,
        Selector::MaxStabilizer { samples } => samples.max(1),
    };
    let mut r = Realizer {
        d: &d,
        order,
        nodes: 0,
        budget: leech.budget(),
        limit,
        found: Vec::new(),
        seen: HashSet::new(),
    };
    let shell6 = if t.rank() > 1 { leech.shell6()? } else { &[][..] };
    let mut placed = vec![LeechPoint::ZERO];
    r.dfs(&mut placed, &[leech.shell4(), shell6])?;
    if r.found.is_empty() {
        return Err(Error::invalid(format!("no realization of {t} found")));
    }
    match selector {
        Selector::FirstFound => Ok(r.found.swap_remove(0)),
        Selector::MaxStabilizer { .. } => {
            let mut best: Option<(u128, PointConfiguration)> = None;
            for c in r.found {
                let order = setwise_stabilizer_order(leech, &c)?;
                log::info!("candidate {t} configuration: setwise stabilizer {order}");
                if best.as_ref().is_none_or(|(o, _)| order > *o) {
                    best = Some((order, c));
                }
            }
            Ok(best.unwrap().1)
        }
    }
}

/// Order of the setwise stabilizer of `cfg` in `Λ.Aut(Λ)`: the pointwise
/// stabilizer times the number of diagram automorphisms that are realized.
pub fn setwise_stabilizer_order(leech: &Leech, cfg: &PointConfiguration) -> Result<u128> {
    let p = leech.pointwise_stabilizer(&cfg.points)?.order;
    let h = realized_automorphisms(leech, cfg)?.len() as u128;
    Ok(p * h)
}

/// Whether some diagram isometry `c1 → c2` extends to `Λ.Aut(Λ)`.
pub fn equivalent_configurations(
    leech: &Leech,
    c1: &PointConfiguration,
    c2: &PointConfiguration,
) -> Result<bool> {
    let (d1, d2) = (c1.diagram(), c2.diagram());
    if c1.len() != c2.len() || c1.spherical_type() != c2.spherical_type() {
        return Ok(false);
    }
    let autos = realized_automorphisms(leech, c2)?;
    let mut failed: HashSet<Isometry> = HashSet::new();
    for phi in isometries(&d1, &d2) {
        if failed.contains(&phi) {
            continue;
        }
        let dst: Vec<LeechPoint> = (0..c1.len()).map(|i| c2.points[phi.apply(i)]).collect();
        if leech.realize(&c1.points, &dst)?.is_some() {
            return Ok(true);
        }
        for (h, _) in &autos {
            failed.insert(phi.postcompose(|x| h.apply(x)));
        }
    }
    Ok(false)
}

/// The diagram automorphisms of `cfg` induced by `Λ.Aut(Λ)`, each with one
/// symmetry inducing it, sorted by permutation.
pub fn realized_automorphisms(
    leech: &Leech,
    cfg: &PointConfiguration,
) -> Result<Vec<(Perm, super::AffineSymmetry)>> {
    crate::category::realized_automorphisms(leech, &cfg.points)
}

/// Kondo-type `A3A1^6`: for octads `O`, `M` meeting in `{a, c}`, the points
/// `4e_i` for `i ∈ O` together with the `±1` vector that is `−1` exactly on
/// `M`, all shifted by `−4e_a` into the lattice.
pub fn kondo_configuration(leech: &Leech) -> Result<PointConfiguration> {
    let octads = leech.code().octads();
    let (o, m) = octads
        .iter()
        .flat_map(|&o| octads.iter().map(move |&m| (o, m)))
        .find(|(o, m)| (o & m).count_ones() == 2)
        .ok_or_else(|| Error::invalid("no octads meeting in two points"))?;
    let a = (o & m).trailing_zeros() as usize;
    let mut pts = Vec::new();
    for i in (0..24).filter(|i| o >> i & 1 == 1) {
        let mut x = [0i32; 24];
        x[i] += 4;
        x[a] -= 4;
        pts.push(LeechPoint(x));
    }
    let mut b = [1i32; 24];
    for (i, v) in b.iter_mut().enumerate() {
        if m >> i & 1 == 1 {
            *v = -1;
        }
    }
    b[a] -= 4;
    pts.push(LeechPoint(b));
    pts.sort();
    let cfg = PointConfiguration::new(pts);
    for p in &cfg.points {
        if !leech.is_lattice_point(p) {
            return Err(Error::invalid("Kondo construction left the lattice"));
        }
    }
    if cfg.spherical_type().map(|t| t.to_string()).as_deref() != Some("A3A1^6") {
        return Err(Error::invalid("Kondo construction is not of type A3A1^6"));
    }
    Ok(cfg)
}
