//! Spanning-tree presentations of `π₁(Q4)`, Tietze simplification and
//! abelian invariants.

use super::ambient::Ambient;
use super::build::{CategoryQ4, Morphism};
use crate::error::{Error, Result};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Presentations with more relators than this are not written out.
pub const RELATOR_LIMIT: usize = 250_000;

/// Generators `0..n`; a letter `k + 1` stands for generator `k` and
/// `-(k + 1)` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
    pub base_object: usize,
}

/// A morphism `index` in `Mor(src, dst)` used as a tree edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TreeEdge {
    pub src: usize,
    pub dst: usize,
    pub index: usize,
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_i | t_{i+1}`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u128>,
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Number of relators [`fundamental_group`] would produce.
pub fn relator_count<A: Ambient>(q: &CategoryQ4<A>) -> usize {
    let m = q.objects.len();
    let mut total = m.saturating_sub(1);
    for a in 0..m {
        for b in 0..m {
            let ab = q.morphisms[a][b].len();
            if ab == 0 {
                continue;
            }
            for c in 0..m {
                total = total.saturating_add(ab.saturating_mul(q.morphisms[b][c].len()));
            }
        }
    }
    total
}

/// Breadth-first spanning tree from `base`, visiting objects in index order
/// and taking the first morphism of each new edge.
pub fn bfs_tree<A: Ambient>(q: &CategoryQ4<A>, base: usize) -> Result<Vec<TreeEdge>> {
    let m = q.objects.len();
    if base >= m {
        return Err(Error::invalid(format!("base object {base} is not in the category")));
    }
    let mut seen = vec![false; m];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    let mut tree = Vec::new();
    while let Some(a) = queue.pop_front() {
        for b in 0..m {
            if seen[b] {
                continue;
            }
            let e = if !q.morphisms[a][b].is_empty() {
                TreeEdge { src: a, dst: b, index: 0 }
            } else if !q.morphisms[b][a].is_empty() {
                TreeEdge { src: b, dst: a, index: 0 }
            } else {
                continue;
            };
            seen[b] = true;
            tree.push(e);
            queue.push_back(b);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::invalid("category is not connected"));
    }
    Ok(tree)
}

/// A spanning tree drawn from a seeded shuffle of all non-loop morphisms.
pub fn random_tree<A: Ambient>(q: &CategoryQ4<A>, seed: u64) -> Result<Vec<TreeEdge>> {
    let m = q.objects.len();
    let mut edges: Vec<TreeEdge> = Vec::new();
    for src in 0..m {
        for dst in (0..m).filter(|&d| d != src) {
            edges.extend((0..q.morphisms[src][dst].len()).map(|index| TreeEdge { src, dst, index }));
        }
    }
    edges.shuffle(&mut StdRng::seed_from_u64(seed));
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut tree = Vec::new();
    for e in edges {
        let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
        if a != b {
            parent[a] = b;
            tree.push(e);
        }
    }
    if tree.len() + 1 != m.max(1) {
        return Err(Error::invalid("category is not connected"));
    }
    Ok(tree)
}

fn fingerprint<S: std::fmt::Debug>(m: &Morphism<S>) -> String {
    let digest = Sha256::digest(format!("{m:?}").as_bytes());
    digest[..4].iter().map(|b| format!("{b:02x}")).collect()
}

/// The presentation of `π₁(Q4, base)` using the breadth-first tree.
pub fn fundamental_group<A: Ambient>(amb: &A, q: &CategoryQ4<A>, base: usize) -> Result<Presentation> {
    let tree = bfs_tree(q, base)?;
    fundamental_group_with_tree(amb, q, base, &tree)
}

/// One generator per morphism, a relator `x_f x_h x_{hf}⁻¹` per composable
/// pair and a relator `x_t` per tree edge.
pub fn fundamental_group_with_tree<A: Ambient>(
    amb: &A,
    q: &CategoryQ4<A>,
    base: usize,
    tree: &[TreeEdge],
) -> Result<Presentation> {
    let m = q.objects.len();
    if base >= m {
        return Err(Error::invalid(format!("base object {base} is not in the category")));
    }
    if tree.len() + 1 != m {
        return Err(Error::invalid("tree has the wrong number of edges"));
    }
    let count = relator_count(q);
    if count > RELATOR_LIMIT {
        return Err(Error::Unsupported(format!(
            "presentation would have {count} relators (limit {RELATOR_LIMIT})"
        )));
    }
    let mut offset = vec![vec![0usize; m]; m];
    let mut generators = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    for a in 0..m {
        for b in 0..m {
            offset[a][b] = generators.len();
            for f in &q.morphisms[a][b] {
                let mut name = format!("o{a}o{b}_{}", fingerprint(f));
                let dup = names.entry(name.clone()).or_insert(0);
                *dup += 1;
                if *dup > 1 {
                    name = format!("{name}_{dup}");
                }
                generators.push(name);
            }
        }
    }
    let index: Vec<Vec<HashMap<&Morphism<A::Sym>, usize>>> = q
        .morphisms
        .iter()
        .map(|row| {
            row.iter()
                .map(|l| l.iter().enumerate().map(|(i, f)| (f, i)).collect())
                .collect()
        })
        .collect();
    let letter = |a: usize, b: usize, k: usize| (offset[a][b] + k + 1) as i32;
    let mut relators = Vec::with_capacity(count);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for (i, f) in q.morphisms[a][b].iter().enumerate() {
                    for (k, h) in q.morphisms[b][c].iter().enumerate() {
                        let hf = q.compose(amb, h, f);
                        let j = *index[a][c].get(&hf).ok_or_else(|| {
                            Error::invalid(format!("composite {a}→{b}→{c} is not a morphism"))
                        })?;
                        relators.push(vec![letter(a, b, i), letter(b, c, k), -letter(a, c, j)]);
                    }
                }
            }
        }
    }
    let mut reached = BTreeSet::from([base]);
    for e in tree {
        if e.src >= m || e.dst >= m || e.index >= q.morphisms[e.src][e.dst].len() {
            return Err(Error::invalid(format!("tree edge {e:?} is not a morphism")));
        }
        relators.push(vec![letter(e.src, e.dst, e.index)]);
        reached.insert(e.src);
        reached.insert(e.dst);
    }
    if reached.len() != m {
        return Err(Error::invalid("tree does not span the category"));
    }
    Ok(Presentation {
        generators,
        relators,
        base_object: base,
    })
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(w: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn inverse_word(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|x| -x).collect()
}

/// Least rotation of `w` or of its inverse.
fn canonical_relator(w: &[i32]) -> Vec<i32> {
    let mut best: Option<Vec<i32>> = None;
    for v in [w.to_vec(), inverse_word(w)] {
        for r in 0..v.len().max(1) {
            let mut c = v[r..].to_vec();
            c.extend_from_slice(&v[..r]);
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

fn normalize(rels: Vec<Vec<i32>>) -> Vec<Vec<i32>> {
    let set: BTreeSet<Vec<i32>> = rels
        .into_iter()
        .map(|r| cyclic_reduce(&r))
        .filter(|r| !r.is_empty())
        .map(|r| canonical_relator(&r))
        .collect();
    let mut out: Vec<Vec<i32>> = set.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Tietze simplification: repeatedly solve a shortest relator for a
/// generator occurring in it once and substitute. Checks that the abelian
/// invariants are unchanged.
pub fn simplify(p: &Presentation) -> Result<Presentation> {
    let n = p.generators.len();
    let mut rels = normalize(p.relators.clone());
    let mut alive = vec![true; n];
    let budget = rels.iter().map(Vec::len).sum::<usize>() * 2 + 1000;
    for _ in 0..=n {
        let mut occ = vec![0usize; n + 1];
        for r in &rels {
            for &x in r {
                occ[x.unsigned_abs() as usize] += 1;
            }
        }
        let mut choice: Option<(usize, usize)> = None;
        for (ri, r) in rels.iter().enumerate() {
            if choice.is_some_and(|(cr, _)| rels[cr].len() < r.len()) {
                break;
            }
            for (pos, &x) in r.iter().enumerate() {
                let g = x.unsigned_abs();
                if r.iter().filter(|y| y.unsigned_abs() == g).count() != 1 {
                    continue;
                }
                let better = match choice {
                    None => true,
                    Some((cr, cp)) => {
                        let cg = rels[cr][cp].unsigned_abs() as usize;
                        occ[g as usize] < occ[cg]
                    }
                };
                if better {
                    choice = Some((ri, pos));
                }
            }
        }
        let Some((ri, pos)) = choice else { break };
        let r = rels.swap_remove(ri);
        let x = r[pos];
        let g = x.unsigned_abs() as usize;
        // r = u x v, so x = u⁻¹ v⁻¹
        let mut word = inverse_word(&r[..pos]);
        word.extend(inverse_word(&r[pos + 1..]));
        if x < 0 {
            word = inverse_word(&word);
        }
        let inv = inverse_word(&word);
        let next: Vec<Vec<i32>> = rels
            .iter()
            .map(|w| {
                let mut out = Vec::with_capacity(w.len());
                for &y in w {
                    if y == g as i32 {
                        out.extend_from_slice(&word);
                    } else if y == -(g as i32) {
                        out.extend_from_slice(&inv);
                    } else {
                        out.push(y);
                    }
                }
                out
            })
            .collect();
        if next.iter().map(Vec::len).sum::<usize>() > budget {
            rels.push(r);
            break;
        }
        alive[g - 1] = false;
        rels = normalize(next);
    }
    let mut renumber = vec![0i32; n + 1];
    let mut generators = Vec::new();
    for k in 0..n {
        if alive[k] {
            generators.push(p.generators[k].clone());
            renumber[k + 1] = generators.len() as i32;
        }
    }
    let relators = normalize(
        rels.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.signum() * renumber[x.unsigned_abs() as usize])
                    .collect()
            })
            .collect(),
    );
    let out = Presentation {
        generators,
        relators,
        base_object: p.base_object,
    };
    if abelianization(p)? != abelianization(&out)? {
        return Err(Error::invalid("simplification changed the abelian invariants"));
    }
    Ok(out)
}

fn overflow() -> Error {
    Error::Unsupported("integer overflow in abelianization".into())
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `x·a + y·b`, checked.
fn combine(x: i128, a: &[i128], y: i128, b: &[i128]) -> Result<Vec<i128>> {
    a.iter()
        .zip(b)
        .map(|(&p, &q)| {
            x.checked_mul(p)
                .and_then(|u| y.checked_mul(q).and_then(|v| u.checked_add(v)))
                .ok_or_else(overflow)
        })
        .collect()
}

/// Row echelon form built one relation at a time.
struct Echelon {
    rows: Vec<Vec<i128>>,
    pivot: Vec<Option<usize>>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<i128>) -> Result<()> {
        while let Some(c) = v.iter().position(|&x| x != 0) {
            let Some(pi) = self.pivot[c] else {
                if v[c] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.pivot[c] = Some(self.rows.len());
                self.rows.push(v);
                return Ok(());
            };
            let (a, b) = (self.rows[pi][c], v[c]);
            if b % a == 0 {
                v = combine(1, &v, -(b / a), &self.rows[pi])?;
            } else {
                let (g, s, t) = egcd(a, b);
                let p = combine(s, &self.rows[pi], t, &v)?;
                v = combine(a / g, &v, -(b / g), &self.rows[pi])?;
                self.rows[pi] = p;
            }
        }
        Ok(())
    }
}

/// Diagonal of the Smith normal form of `m`, nonzero entries only.
fn smith_diagonal(mut m: Vec<Vec<i128>>, cols: usize) -> Result<Vec<i128>> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Ok(diag);
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t] / p;
                if f != 0 {
                    let pivot_row = m[t].clone();
                    m[i] = combine(1, &m[i], -f, &pivot_row)?;
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = m[t][j] / p;
                if f != 0 {
                    for row in m.iter_mut() {
                        row[j] = f
                            .checked_mul(row[t])
                            .and_then(|x| row[j].checked_sub(x))
                            .ok_or_else(overflow)?;
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the matrix
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let r = m[i].clone();
                    m[t] = combine(1, &m[t], 1, &r)?;
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    Ok(diag)
}

/// Abelian invariants of the presented group.
pub fn abelianization(p: &Presentation) -> Result<Abelianization> {
    let n = p.generators.len();
    let mut e = Echelon {
        rows: Vec::new(),
        pivot: vec![None; n],
    };
    for r in &p.relators {
        let mut v = vec![0i128; n];
        for &x in r {
            let k = x.unsigned_abs() as usize;
            if k == 0 || k > n {
                return Err(Error::invalid(format!("letter {x} out of range")));
            }
            v[k - 1] += x.signum() as i128;
        }
        e.insert(v)?;
    }
    let diag = smith_diagonal(e.rows, n)?;
    let torsion = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u128)
        .collect();
    Ok(Abelianization {
        free_rank: n - diag.len(),
        torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, rels: Vec<Vec<i32>>) -> Presentation {
        Presentation {
            generators: (0..n).map(|i| format!("x{i}")).collect(),
            relators: rels,
            base_object: 0,
        }
    }

    #[test]
    fn trivial_group_simplifies_away() {
        let p = simplify(&pres(2, vec![vec![1], vec![1, 2]])).unwrap();
        assert!(p.generators.is_empty());
        assert!(p.relators.is_empty());
    }

    #[test]
    fn commutator_survives() {
        let p = simplify(&pres(2, vec![vec![1, 2, -1, -2]])).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relators.len(), 1);
        let a = abelianization(&p).unwrap();
        assert_eq!(a, Abelianization { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn invariant_factors() {
        // Z/4 x Z/6 = Z/2 + Z/12
        let a = abelianization(&pres(2, vec![vec![1, 1, 1, 1], vec![2; 6], vec![1, 2, -1, -2]])).unwrap();
        assert_eq!(a.torsion, vec![2, 12]);
        assert_eq!(a.free_rank, 0);
        let a = abelianization(&pres(3, vec![vec![1, 1, 2, 2, 2]])).unwrap();
        assert_eq!(a, Abelianization { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn canonical_relator_is_rotation_and_inversion_invariant() {
        let w = vec![1, 2, -3];
        let c = canonical_relator(&w);
        assert_eq!(canonical_relator(&[2, -3, 1]), c);
        assert_eq!(canonical_relator(&inverse_word(&w)), c);
    }
}
