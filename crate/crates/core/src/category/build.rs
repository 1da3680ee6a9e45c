//! Breadth-first construction of the component of `Q4` containing `(J, id)`.

use super::ambient::{closure, realized_automorphisms, Ambient};
use crate::diagram::{canonical_form, classify_spherical, isometries, CoxeterDiagram, Isometry, Order, SphericalType};
use crate::error::{Error, Result};
use crate::par;
use crate::parabolic::{associate_class_of, AssociateClass, ParabolicConfig};
use crate::perm::Perm;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// An element `(S, K̄)` of `P3`: sorted points of `S` and a class of
/// isometries from `J` into positions of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetElement<P> {
    pub points: Vec<P>,
    pub class: AssociateClass,
}

impl<P> PosetElement<P> {
    pub fn rank(&self) -> usize {
        self.points.len()
    }
}

/// A pair `(ρ, g) ∈ Γ_J × Γ_Π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism<S> {
    pub rho: Perm,
    pub g: S,
}

/// An object of `Q4` with the symmetry data used to enumerate morphisms.
#[derive(Clone, Debug)]
pub struct Object<A: Ambient> {
    pub element: PosetElement<A::Point>,
    pub diagram: CoxeterDiagram,
    pub kind: SphericalType,
    pub certificate: String,
    pub pointwise_order: u128,
    pub pointwise_generators: Vec<A::Sym>,
    pub pointwise: Vec<A::Sym>,
    /// Diagram automorphisms of `S` induced by `Γ_Π`, with inducing symmetries.
    pub realized: Vec<(Perm, A::Sym)>,
}

impl<A: Ambient> Object<A> {
    pub fn setwise_order(&self) -> u128 {
        self.pointwise_order * self.realized.len() as u128
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_objects: usize,
    /// Refuse to list more than this many morphisms between two objects.
    pub max_morphisms: usize,
    /// Drop `R`-reflective classes (`P3`); when false, keep them (`P3+`).
    pub reflectivity_filter: bool,
    /// Keep only elements with at most this many nodes.
    pub max_rank: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_objects: 64,
            max_morphisms: 2_000_000,
            reflectivity_filter: true,
            max_rank: None,
        }
    }
}

/// A skeleton of the homotopy quotient restricted to one component.
#[derive(Clone, Debug)]
pub struct CategoryQ4<A: Ambient> {
    pub config: ParabolicConfig,
    pub objects: Vec<Object<A>>,
    /// `morphisms[a][b]`, sorted.
    pub morphisms: Vec<Vec<Vec<Morphism<A::Sym>>>>,
    pub base: usize,
}

impl<A: Ambient> CategoryQ4<A> {
    pub fn morphism_count(&self, a: usize, b: usize) -> usize {
        self.morphisms[a][b].len()
    }

    pub fn count_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.objects.len())
            .map(|a| (0..self.objects.len()).map(|b| self.morphism_count(a, b)).collect())
            .collect()
    }

    pub fn identity(&self, amb: &A) -> Morphism<A::Sym> {
        Morphism {
            rho: Perm::identity(self.config.j.len()),
            g: amb.identity(),
        }
    }

    /// `h ∘ f`.
    pub fn compose(&self, amb: &A, h: &Morphism<A::Sym>, f: &Morphism<A::Sym>) -> Morphism<A::Sym> {
        Morphism {
            rho: h.rho.compose(&f.rho),
            g: amb.compose(&h.g, &f.g),
        }
    }

    pub fn inverse(&self, amb: &A, m: &Morphism<A::Sym>) -> Morphism<A::Sym> {
        Morphism {
            rho: m.rho.inverse(),
            g: amb.inverse(&m.g),
        }
    }

    /// Whether `m` maps object `a` below object `b`.
    pub fn is_morphism(&self, amb: &A, a: usize, b: usize, m: &Morphism<A::Sym>) -> bool {
        let (oa, ob) = (&self.objects[a], &self.objects[b]);
        act(amb, m, oa.element.class.representative(), &oa.element.points, &ob.element.points)
            .is_some_and(|k| ob.element.class.contains(&k))
    }
}

/// `g ∘ K ∘ ρ⁻¹` as an isometry into the positions of `dst`, if `g` maps the
/// points of `src` into `dst`.
fn act<A: Ambient>(
    amb: &A,
    m: &Morphism<A::Sym>,
    k: &Isometry,
    src: &[A::Point],
    dst: &[A::Point],
) -> Option<Isometry> {
    let rinv = m.rho.inverse();
    let mut out = Vec::with_capacity(k.len());
    for j in 0..k.len() {
        let p = amb.apply(&m.g, &src[k.apply(rinv.apply(j))]);
        out.push(dst.binary_search(&p).ok()?);
    }
    Some(Isometry(out))
}

/// `ρ ∈ Γ_J` with `φ ∘ K ∘ ρ⁻¹ ∈ class`.
fn admissible_rhos(config: &ParabolicConfig, phi: &Isometry, k: &Isometry, class: &AssociateClass) -> Vec<Perm> {
    config
        .gamma_j_elements()
        .iter()
        .filter(|rho| {
            let kk = k.precompose(&rho.inverse()).postcompose(|x| phi.apply(x));
            class.contains(&kk)
        })
        .cloned()
        .collect()
}

fn make_object<A: Ambient>(amb: &A, element: PosetElement<A::Point>) -> Result<Object<A>> {
    let diagram = amb.induced(&element.points);
    let kind = classify_spherical(&diagram)
        .ok_or_else(|| Error::NotSpherical(format!("{:?}", element.points)))?;
    let certificate = canonical_form(&diagram).certificate;
    let (order, gens) = amb.pointwise_stabilizer(&element.points)?;
    let limit = usize::try_from(order).unwrap_or(usize::MAX).min(10_000_000);
    let pointwise = closure(amb, &gens, limit.saturating_add(1))?;
    if pointwise.len() as u128 != order {
        return Err(Error::invalid(format!(
            "pointwise stabilizer closure has {} elements, expected {order}",
            pointwise.len()
        )));
    }
    let realized = realized_automorphisms(amb, &element.points)?;
    log::info!(
        "object {kind}: pointwise stabilizer {order}, {} induced automorphisms",
        realized.len()
    );
    Ok(Object {
        element,
        diagram,
        kind,
        certificate,
        pointwise_order: order,
        pointwise_generators: gens,
        pointwise,
        realized,
    })
}

/// Re-index an isometry after the point list changed.
fn reindex<P: Ord>(k: &Isometry, old: &[P], new: &[P]) -> Isometry {
    k.postcompose(|x| new.binary_search(&old[x]).expect("point kept"))
}

fn is_reflective(config: &ParabolicConfig, d: &CoxeterDiagram, class: &AssociateClass) -> bool {
    class.is_r_reflective(d, config.r_elements())
}

/// Elements covering `o` by one extra point, one per orbit of the point
/// under the symmetries of `o`.
fn up_elements<A: Ambient>(
    amb: &A,
    config: &ParabolicConfig,
    o: &Object<A>,
    opts: &BuildOptions,
) -> Result<Vec<PosetElement<A::Point>>> {
    let pts = &o.element.points;
    let cap = opts.max_rank.map_or(2 * config.rank(), |r| r.min(2 * config.rank()));
    if pts.len() + 1 > cap {
        return Ok(vec![]);
    }
    let images: BTreeSet<Vec<usize>> = o.element.class.members.iter().map(|k| k.image()).collect();
    let mut cands: Vec<A::Point> = amb
        .extension_points(pts)?
        .into_iter()
        .filter(|p| {
            !opts.reflectivity_filter
                || images.iter().all(|img| {
                img.iter()
                    .any(|&i| amb.bond(p, &pts[i]) != Order::Finite(2))
            })
        })
        .collect();
    cands.sort();
    // symmetries of o acting on the candidates
    let k = o.element.class.representative();
    let mut proj: Vec<Perm> = Vec::new();
    let mut gens: Vec<A::Sym> = o.pointwise_generators.clone();
    let proj_members: Vec<&(Perm, A::Sym)> = o
        .realized
        .iter()
        .filter(|(h, _)| !admissible_rhos(config, &Isometry(h.0.clone()), k, &o.element.class).is_empty())
        .collect();
    let mut reached: usize = 1;
    for (h, g) in proj_members.iter().map(|x| (&x.0, &x.1)) {
        if reached == proj_members.len() {
            break;
        }
        let mut trial = proj.clone();
        trial.push(h.clone());
        let size = crate::perm::closure(pts.len(), &trial, proj_members.len() + 1)
            .map(|c| c.len())
            .unwrap_or(usize::MAX);
        if size > reached {
            proj = trial;
            gens.push(g.clone());
            reached = size;
        }
    }
    let index: HashMap<&A::Point, usize> = cands.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut orbit_of = vec![usize::MAX; cands.len()];
    let mut reps = Vec::new();
    for start in 0..cands.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        orbit_of[start] = start;
        reps.push(start);
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for g in &gens {
                let q = amb.apply(g, &cands[i]);
                if let Some(&qi) = index.get(&q) {
                    if orbit_of[qi] == usize::MAX {
                        orbit_of[qi] = start;
                        queue.push(qi);
                    }
                }
            }
        }
    }
    log::debug!("{} extension points in {} orbits", cands.len(), reps.len());
    let mut out = Vec::new();
    for r in reps {
        let p = &cands[r];
        let mut npts = pts.clone();
        npts.push(p.clone());
        npts.sort();
        let d = amb.induced(&npts);
        if classify_spherical(&d).is_none() {
            continue;
        }
        let class = associate_class_of(&d, &reindex(k, pts, &npts));
        if opts.reflectivity_filter && is_reflective(config, &d, &class) {
            continue;
        }
        out.push(PosetElement { points: npts, class });
    }
    Ok(out)
}

/// Elements below `o` with one point fewer.
fn down_elements<A: Ambient>(
    amb: &A,
    config: &ParabolicConfig,
    o: &Object<A>,
    opts: &BuildOptions,
) -> Vec<PosetElement<A::Point>> {
    let pts = &o.element.points;
    let mut seen = BTreeSet::new();
    for k in &o.element.class.members {
        let img = k.image();
        for t in (0..pts.len()).filter(|t| img.binary_search(t).is_err()) {
            let mut npts = pts.clone();
            npts.remove(t);
            let d = amb.induced(&npts);
            let class = associate_class_of(&d, &reindex(k, pts, &npts));
            if opts.reflectivity_filter && is_reflective(config, &d, &class) {
                continue;
            }
            seen.insert(PosetElement { points: npts, class });
        }
    }
    seen.into_iter().collect()
}

/// A morphism `e → o` that is invertible (so `e` lies in the orbit of `o`),
/// if there is one.
fn find_equivalence<A: Ambient>(
    amb: &A,
    config: &ParabolicConfig,
    e: &PosetElement<A::Point>,
    o: &Object<A>,
) -> Result<Option<Morphism<A::Sym>>> {
    if e.points.len() != o.element.points.len() {
        return Ok(None);
    }
    let de = amb.induced(&e.points);
    if canonical_form(&de).certificate != o.certificate {
        return Ok(None);
    }
    let k = e.class.representative();
    let mut failed: HashSet<Isometry> = HashSet::new();
    for phi in isometries(&de, &o.diagram) {
        if failed.contains(&phi) {
            continue;
        }
        let rhos = admissible_rhos(config, &phi, k, &o.element.class);
        if rhos.is_empty() {
            continue;
        }
        let dst: Vec<A::Point> = (0..e.points.len())
            .map(|i| o.element.points[phi.apply(i)].clone())
            .collect();
        match amb.realize(&e.points, &dst)? {
            Some(g) => {
                return Ok(Some(Morphism {
                    rho: rhos[0].clone(),
                    g,
                }))
            }
            None => {
                for (h, _) in &o.realized {
                    failed.insert(phi.postcompose(|x| h.apply(x)));
                }
            }
        }
    }
    Ok(None)
}

/// All morphisms from `o1` to `o2`.
pub fn morphisms_between<A: Ambient>(
    amb: &A,
    config: &ParabolicConfig,
    o1: &Object<A>,
    o2: &Object<A>,
    limit: usize,
) -> Result<Vec<Morphism<A::Sym>>> {
    let (p1, p2) = (&o1.element.points, &o2.element.points);
    if p1.len() > p2.len() {
        return Ok(vec![]);
    }
    let k1 = o1.element.class.representative();
    let mut cache: HashMap<Isometry, Option<A::Sym>> = HashMap::new();
    let mut out = Vec::new();
    for phi in isometries(&o1.diagram, &o2.diagram) {
        let rhos = admissible_rhos(config, &phi, k1, &o2.element.class);
        if rhos.is_empty() {
            continue;
        }
        let g0 = match cache.get(&phi) {
            Some(g) => g.clone(),
            None => {
                let dst: Vec<A::Point> = (0..p1.len()).map(|i| p2[phi.apply(i)].clone()).collect();
                let g = amb.realize(p1, &dst)?;
                for (h, gh) in &o1.realized {
                    cache.insert(phi.precompose(h), g.as_ref().map(|g| amb.compose(g, gh)));
                }
                g
            }
        };
        let Some(g0) = g0 else { continue };
        for p in &o1.pointwise {
            let g = amb.compose(&g0, p);
            for rho in &rhos {
                out.push(Morphism {
                    rho: rho.clone(),
                    g: g.clone(),
                });
                if out.len() > limit {
                    return Err(Error::budget("morphism enumeration", out.len() as u64));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Build the component of `Q4` containing `(J, id_J)`, where node `i` of
/// `config.j` sits at `j_points[i]`.
pub fn build_component<A: Ambient>(
    amb: &A,
    config: &ParabolicConfig,
    j_points: &[A::Point],
    opts: &BuildOptions,
) -> Result<CategoryQ4<A>> {
    let n = config.j.len();
    if j_points.len() != n {
        return Err(Error::invalid("J and its points differ in size"));
    }
    for a in 0..n {
        for b in a + 1..n {
            if amb.bond(&j_points[a], &j_points[b]) != config.j.order(a, b) {
                return Err(Error::invalid(format!(
                    "points of J do not realize the bond between {} and {}",
                    config.j.name(a),
                    config.j.name(b)
                )));
            }
        }
    }
    let mut pts = j_points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() != n {
        return Err(Error::invalid("points of J are not distinct"));
    }
    let k = Isometry(j_points.iter().map(|p| pts.binary_search(p).unwrap()).collect());
    let base = PosetElement {
        class: associate_class_of(&amb.induced(&pts), &k),
        points: pts,
    };
    let mut objects: Vec<Object<A>> = vec![make_object(amb, base.clone())?];
    let mut known: HashMap<PosetElement<A::Point>, usize> = HashMap::from([(base, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(oi) = queue.pop_front() {
        let mut next = up_elements(amb, config, &objects[oi], opts)?;
        next.extend(down_elements(amb, config, &objects[oi], opts));
        for e in next {
            if known.contains_key(&e) {
                continue;
            }
            let mut found = None;
            for (idx, o) in objects.iter().enumerate() {
                if find_equivalence(amb, config, &e, o)?.is_some() {
                    found = Some(idx);
                    break;
                }
            }
            let idx = match found {
                Some(i) => i,
                None => {
                    if objects.len() >= opts.max_objects {
                        return Err(Error::budget("component objects", objects.len() as u64));
                    }
                    objects.push(make_object(amb, e.clone())?);
                    queue.push_back(objects.len() - 1);
                    objects.len() - 1
                }
            };
            known.insert(e, idx);
        }
    }
    let m = objects.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
    let lists = par::map(&pairs, |&(a, b)| {
        morphisms_between(amb, config, &objects[a], &objects[b], opts.max_morphisms)
    });
    let mut morphisms = vec![vec![Vec::new(); m]; m];
    for ((a, b), l) in pairs.into_iter().zip(lists) {
        morphisms[a][b] = l?;
    }
    Ok(CategoryQ4 {
        config: config.clone(),
        objects,
        morphisms,
        base: 0,
    })
}

/// Length of the longest strictly increasing chain of objects joined by
/// morphisms; bounded by `rank(J) + 1`.
pub fn chain_bound_check<A: Ambient>(q: &CategoryQ4<A>) -> Result<usize> {
    let m = q.objects.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| q.objects[i].element.rank());
    let mut best = vec![1usize; m];
    for (x, &b) in order.iter().enumerate() {
        for &a in &order[..x] {
            if q.objects[a].element.rank() < q.objects[b].element.rank() && !q.morphisms[a][b].is_empty() {
                best[b] = best[b].max(best[a] + 1);
            }
        }
    }
    let longest = best.into_iter().max().unwrap_or(0);
    let bound = q.config.rank() + 1;
    if longest > bound {
        return Err(Error::invalid(format!(
            "chain of length {longest} exceeds the bound {bound}"
        )));
    }
    Ok(longest)
}

/// A generating set of the group `Mor(a, a)`, drawn in a fixed
/// pseudo-random order. Fails if the morphisms do not form a group.
pub fn endomorphism_generators<A: Ambient>(amb: &A, q: &CategoryQ4<A>, a: usize) -> Result<Vec<Morphism<A::Sym>>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let all = &q.morphisms[a][a];
    let members: HashSet<&Morphism<A::Sym>> = all.iter().collect();
    let mut order: Vec<&Morphism<A::Sym>> = all.iter().collect();
    order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(a as u64));
    let id = q.identity(amb);
    let mut gens: Vec<Morphism<A::Sym>> = Vec::new();
    let mut group: HashSet<Morphism<A::Sym>> = HashSet::from([id.clone()]);
    for x in order {
        if group.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut list = vec![id.clone()];
        group = HashSet::from([id.clone()]);
        let mut i = 0;
        while i < list.len() {
            for g in &gens {
                let y = q.compose(amb, &list[i], g);
                if !members.contains(&y) {
                    return Err(Error::invalid(format!("Mor({a}, {a}) is not closed under composition")));
                }
                if group.insert(y.clone()) {
                    list.push(y);
                }
            }
            i += 1;
        }
        if group.len() == all.len() {
            break;
        }
    }
    if group.len() != all.len() {
        return Err(Error::invalid(format!("Mor({a}, {a}) is not a group")));
    }
    Ok(gens)
}

/// Check identities and closure of composition. Composites through an
/// endomorphism group are checked against its generators, which suffices
/// because the group is finite. Associativity is checked on up to
/// `samples` composable triples.
pub fn verify_axioms<A: Ambient>(amb: &A, q: &CategoryQ4<A>, samples: usize) -> Result<()> {
    let m = q.objects.len();
    let id = q.identity(amb);
    let sets: Vec<Vec<HashSet<&Morphism<A::Sym>>>> = q
        .morphisms
        .iter()
        .map(|row| row.iter().map(|l| l.iter().collect()).collect())
        .collect();
    for a in 0..m {
        if !sets[a][a].contains(&id) {
            return Err(Error::invalid(format!("object {a} has no identity")));
        }
    }
    let gens: Vec<Vec<Morphism<A::Sym>>> = (0..m)
        .map(|a| endomorphism_generators(amb, q, a))
        .collect::<Result<_>>()?;
    let missing = |a: usize, b: usize, c: usize| Error::invalid(format!("composite of morphisms {a}→{b}→{c} is missing"));
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if a == b {
                    for h in &q.morphisms[b][c] {
                        for f in &gens[a] {
                            if !sets[a][c].contains(&q.compose(amb, h, f)) {
                                return Err(missing(a, b, c));
                            }
                        }
                    }
                } else if b == c {
                    for h in &gens[b] {
                        for f in &q.morphisms[a][b] {
                            if !sets[a][c].contains(&q.compose(amb, h, f)) {
                                return Err(missing(a, b, c));
                            }
                        }
                    }
                } else {
                    for f in &q.morphisms[a][b] {
                        for h in &q.morphisms[b][c] {
                            if !sets[a][c].contains(&q.compose(amb, h, f)) {
                                return Err(missing(a, b, c));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut triples = 0usize;
    'outer: for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let (Some(f), Some(h), Some(k)) = (
                        q.morphisms[a][b].last(),
                        q.morphisms[b][c].last(),
                        q.morphisms[c][d].last(),
                    ) else {
                        continue;
                    };
                    let l = q.compose(amb, &q.compose(amb, k, h), f);
                    let r = q.compose(amb, k, &q.compose(amb, h, f));
                    if l != r {
                        return Err(Error::invalid("composition is not associative"));
                    }
                    triples += 1;
                    if triples >= samples {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(())
}
