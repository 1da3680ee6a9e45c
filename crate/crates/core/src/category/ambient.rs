//! Ambient diagrams `Π` with a symmetry group `Γ_Π`.

use crate::diagram::{automorphism_group, CoxeterDiagram, DiagramAutomorphismGroup, Order};
use crate::error::{Error, Result};
use crate::leech::{self, AffineSymmetry, Leech, LeechPoint, PointConfiguration};
use crate::perm::Perm;
use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

/// What the category construction needs from `(Π, Γ_Π)`.
pub trait Ambient: Sync {
    type Point: Clone + Ord + Hash + Debug + Send + Sync;
    type Sym: Clone + Ord + Hash + Debug + Send + Sync;

    fn bond(&self, a: &Self::Point, b: &Self::Point) -> Order;

    /// Points outside `s` that may extend it to a spherical diagram.
    /// May over-approximate; callers classify.
    fn extension_points(&self, s: &[Self::Point]) -> Result<Vec<Self::Point>>;

    fn identity(&self) -> Self::Sym;
    fn apply(&self, g: &Self::Sym, p: &Self::Point) -> Self::Point;
    /// `g ∘ h`.
    fn compose(&self, g: &Self::Sym, h: &Self::Sym) -> Self::Sym;
    fn inverse(&self, g: &Self::Sym) -> Self::Sym;

    /// Some `g ∈ Γ_Π` with `g(src[i]) = dst[i]`.
    fn realize(&self, src: &[Self::Point], dst: &[Self::Point]) -> Result<Option<Self::Sym>>;

    /// Order and generators of the pointwise stabilizer of `pts` in `Γ_Π`.
    fn pointwise_stabilizer(&self, pts: &[Self::Point]) -> Result<(u128, Vec<Self::Sym>)>;

    /// Integer description of a point for reports.
    fn point_coords(&self, p: &Self::Point) -> Vec<i64>;

    /// Diagram induced on `pts`, nodes in the given order.
    fn induced(&self, pts: &[Self::Point]) -> CoxeterDiagram {
        CoxeterDiagram::from_fn(pts.len(), crate::diagram::node_name, |i, j| {
            self.bond(&pts[i], &pts[j])
        })
    }
}

/// A finite diagram with a group of diagram automorphisms.
#[derive(Clone, Debug)]
pub struct FiniteAmbient {
    pub pi: CoxeterDiagram,
    pub gamma: DiagramAutomorphismGroup,
    elements: Vec<Perm>,
}

impl FiniteAmbient {
    pub fn new(pi: CoxeterDiagram, gamma: DiagramAutomorphismGroup) -> Result<Self> {
        if gamma.degree != pi.len() || !gamma.acts_on(&pi) {
            return Err(Error::invalid("Γ_Π does not act on Π by diagram automorphisms"));
        }
        let elements = gamma.elements()?;
        Ok(FiniteAmbient { pi, gamma, elements })
    }

    /// `Γ_Π = 1`.
    pub fn trivial(pi: CoxeterDiagram) -> Self {
        let n = pi.len();
        FiniteAmbient {
            pi,
            gamma: DiagramAutomorphismGroup::trivial(n),
            elements: vec![Perm::identity(n)],
        }
    }

    /// `Γ_Π = Aut(Π)`.
    pub fn full(pi: CoxeterDiagram) -> Result<Self> {
        let g = automorphism_group(&pi);
        Self::new(pi, g)
    }
}

impl Ambient for FiniteAmbient {
    type Point = usize;
    type Sym = Perm;

    fn bond(&self, a: &usize, b: &usize) -> Order {
        self.pi.order(*a, *b)
    }

    fn extension_points(&self, s: &[usize]) -> Result<Vec<usize>> {
        Ok((0..self.pi.len())
            .filter(|x| !s.contains(x) && s.iter().all(|y| self.pi.order(*x, *y) != Order::Infinite))
            .collect())
    }

    fn identity(&self) -> Perm {
        Perm::identity(self.pi.len())
    }

    fn apply(&self, g: &Perm, p: &usize) -> usize {
        g.apply(*p)
    }

    fn compose(&self, g: &Perm, h: &Perm) -> Perm {
        g.compose(h)
    }

    fn inverse(&self, g: &Perm) -> Perm {
        g.inverse()
    }

    fn realize(&self, src: &[usize], dst: &[usize]) -> Result<Option<Perm>> {
        Ok(self
            .elements
            .iter()
            .find(|g| src.iter().zip(dst).all(|(s, d)| g.apply(*s) == *d))
            .cloned())
    }

    fn pointwise_stabilizer(&self, pts: &[usize]) -> Result<(u128, Vec<Perm>)> {
        let fix: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| pts.iter().all(|p| g.apply(*p) == *p))
            .cloned()
            .collect();
        Ok((fix.len() as u128, fix))
    }

    fn point_coords(&self, p: &usize) -> Vec<i64> {
        vec![*p as i64]
    }
}

impl Ambient for Leech {
    type Point = LeechPoint;
    type Sym = AffineSymmetry;

    fn bond(&self, a: &LeechPoint, b: &LeechPoint) -> Order {
        leech::edge_order(a, b)
    }

    fn extension_points(&self, s: &[LeechPoint]) -> Result<Vec<LeechPoint>> {
        let cfg = PointConfiguration::new(s.to_vec());
        Ok(leech::extension_nodes(self, &cfg)?
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }

    fn identity(&self) -> AffineSymmetry {
        Leech::identity(self)
    }

    fn apply(&self, g: &AffineSymmetry, p: &LeechPoint) -> LeechPoint {
        Leech::apply(self, g, p)
    }

    fn compose(&self, g: &AffineSymmetry, h: &AffineSymmetry) -> AffineSymmetry {
        Leech::compose(self, g, h)
    }

    fn inverse(&self, g: &AffineSymmetry) -> AffineSymmetry {
        Leech::inverse(self, g)
    }

    fn realize(&self, src: &[LeechPoint], dst: &[LeechPoint]) -> Result<Option<AffineSymmetry>> {
        Leech::realize(self, src, dst)
    }

    fn pointwise_stabilizer(&self, pts: &[LeechPoint]) -> Result<(u128, Vec<AffineSymmetry>)> {
        let st = Leech::pointwise_stabilizer(self, pts)?;
        Ok((st.order, st.generators))
    }

    fn point_coords(&self, p: &LeechPoint) -> Vec<i64> {
        p.0.iter().map(|&x| x as i64).collect()
    }
}

/// All elements of the group generated by `gens`, identity first, then in
/// order of discovery. Refuses beyond `limit` elements.
pub fn closure<A: Ambient>(amb: &A, gens: &[A::Sym], limit: usize) -> Result<Vec<A::Sym>> {
    let id = amb.identity();
    let mut seen: HashSet<A::Sym> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        for g in gens {
            let y = amb.compose(&x, g);
            if seen.insert(y.clone()) {
                if out.len() >= limit {
                    return Err(Error::budget("symmetry group closure", limit as u64));
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// The diagram automorphisms of the configuration `pts` induced by `Γ_Π`,
/// each with one symmetry inducing it, sorted by permutation.
pub fn realized_automorphisms<A: Ambient>(amb: &A, pts: &[A::Point]) -> Result<Vec<(Perm, A::Sym)>> {
    let d = amb.induced(pts);
    let all = automorphism_group(&d).elements()?;
    let n = pts.len();
    let mut gens: Vec<(Perm, A::Sym)> = Vec::new();
    let mut group: Vec<(Perm, A::Sym)> = vec![(Perm::identity(n), amb.identity())];
    let mut members: HashMap<Perm, usize> = HashMap::from([(Perm::identity(n), 0)]);
    let mut rejected: HashSet<Perm> = HashSet::new();
    for h in all {
        if members.contains_key(&h) || rejected.contains(&h) {
            continue;
        }
        let dst: Vec<A::Point> = (0..n).map(|i| pts[h.apply(i)].clone()).collect();
        match amb.realize(pts, &dst)? {
            Some(g) => {
                gens.push((h, g));
                let mut i = 0;
                while i < group.len() {
                    let (p, x) = group[i].clone();
                    for (hp, hg) in &gens {
                        let q = p.compose(hp);
                        if !members.contains_key(&q) {
                            members.insert(q.clone(), group.len());
                            group.push((q, amb.compose(&x, hg)));
                        }
                    }
                    i += 1;
                }
            }
            None => {
                for (p, _) in &group {
                    rejected.insert(h.compose(p));
                }
            }
        }
    }
    group.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(group)
}
