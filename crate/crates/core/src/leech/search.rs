//! Backtracking search for automorphisms of Λ with prescribed inner products
//! against a finite configuration.
//!
//! A source frame fixes difference vectors `u_k` and a basis `b_i` of norm-4
//! vectors chosen from the smallest inner-product classes. An isometry taking
//! `u_k` to `w_k` is determined by images `a_i` with `(a_i, w_k) = (b_i, u_k)`
//! and `(a_i, a_j) = (b_i, b_j)`; those are the constraints searched here.

use super::basis::Basis;
use super::lattice::{dot8_mixed, dot8_shell, LeechPoint, ShellVec};
use crate::error::{Error, Result};
use crate::par;
use std::collections::{HashMap, HashSet};

/// Images of the 24 search-basis vectors, as indices into the norm-4 shell.
pub type Assignment = [u32; 24];

const KEY_BITS: u32 = 7;
const MAX_PROFILE: usize = 18;
const BASIS_CANDIDATES: usize = 6000;

pub(crate) fn profile_key(x: &ShellVec, u: &[[i32; 24]]) -> u128 {
    let mut key = 0u128;
    for v in u {
        let d = dot8_mixed(x, v) / 8 + 64;
        debug_assert!((0..128).contains(&d));
        key = key << KEY_BITS | d as u128;
    }
    key
}

#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub u: Vec<[i32; 24]>,
    pub basis: Basis,
    /// Inner-product class of each basis vector.
    pub keys: Vec<u128>,
}

impl Frame {
    pub fn new(shell: &[ShellVec], u: &[LeechPoint]) -> Result<Frame> {
        if u.len() > MAX_PROFILE {
            return Err(Error::Unsupported(format!(
                "configurations with more than {} points",
                MAX_PROFILE + 1
            )));
        }
        let u: Vec<[i32; 24]> = u.iter().map(|p| p.0).collect();
        let keys: Vec<u128> = par::flat_map_range(shell.len(), 1 << 13, |r| {
            shell[r].iter().map(|x| profile_key(x, &u)).collect()
        });
        let mut sizes: HashMap<u128, u32> = HashMap::new();
        for &k in &keys {
            *sizes.entry(k).or_default() += 1;
        }
        let mut order: Vec<u32> = (0..shell.len() as u32).collect();
        order.sort_by_key(|&i| (sizes[&keys[i as usize]], i));
        let mut cands: Vec<ShellVec> = order
            .iter()
            .take(BASIS_CANDIDATES)
            .map(|&i| shell[i as usize])
            .collect();
        let basis = match Basis::from_candidates(&cands) {
            Ok(b) => b,
            Err(_) => {
                cands = order.iter().map(|&i| shell[i as usize]).collect();
                Basis::from_candidates(&cands)?
            }
        };
        let keys = basis.rows.iter().map(|b| profile_key(b, &u)).collect();
        Ok(Frame { u, basis, keys })
    }

    /// Domains for the images of the basis vectors when `u_k ↦ w_k`.
    pub fn domains(&self, shell: &[ShellVec], w: &[LeechPoint]) -> Vec<Vec<u32>> {
        let w: Vec<[i32; 24]> = w.iter().map(|p| p.0).collect();
        let wanted: HashSet<u128> = self.keys.iter().copied().collect();
        let hits: Vec<(u128, u32)> = par::flat_map_range(shell.len(), 1 << 13, |r| {
            let lo = r.start;
            shell[r]
                .iter()
                .enumerate()
                .filter_map(|(k, x)| {
                    let key = profile_key(x, &w);
                    wanted.contains(&key).then_some((key, (lo + k) as u32))
                })
                .collect()
        });
        let mut by_key: HashMap<u128, Vec<u32>> = HashMap::new();
        for (k, i) in hits {
            by_key.entry(k).or_default().push(i);
        }
        self.keys
            .iter()
            .map(|k| by_key.get(k).cloned().unwrap_or_default())
            .collect()
    }

    /// Image of a shell vector under the linear map sending `b_i` to
    /// `shell[a[i]]`.
    pub fn image(&self, shell: &[ShellVec], a: &Assignment, x: &ShellVec) -> [i64; 24] {
        let c = self.basis.coords_shell(x);
        let mut out = [0i64; 24];
        for (ci, &ai) in c.iter().zip(a.iter()) {
            if *ci == 0 {
                continue;
            }
            let v = &shell[ai as usize];
            for k in 0..24 {
                out[k] += ci * v[k] as i64;
            }
        }
        out
    }
}

/// Depth-first search with forward checking and smallest-domain-first
/// variable choice.
pub(crate) struct Dfs<'a> {
    pub shell: &'a [ShellVec],
    pub gram8: &'a [[i32; 24]],
    pub nodes: u64,
    pub budget: u64,
    pub what: &'static str,
}

impl<'a> Dfs<'a> {
    pub fn new(shell: &'a [ShellVec], basis: &'a Basis, budget: u64, what: &'static str) -> Self {
        Dfs {
            shell,
            gram8: &basis.gram8,
            nodes: 0,
            budget,
            what,
        }
    }

    /// First full assignment consistent with `doms`.
    pub fn first(&mut self, doms: Vec<Vec<u32>>) -> Result<Option<Assignment>> {
        if doms.iter().any(|d| d.is_empty()) {
            return Ok(None);
        }
        let mut assigned = [u32::MAX; 24];
        let mut done = [false; 24];
        if self.step(&doms, &mut assigned, &mut done)? {
            Ok(Some(assigned))
        } else {
            Ok(None)
        }
    }

    fn step(
        &mut self,
        doms: &[Vec<u32>],
        assigned: &mut Assignment,
        done: &mut [bool; 24],
    ) -> Result<bool> {
        let Some(v) = (0..24)
            .filter(|&i| !done[i])
            .min_by_key(|&i| (doms[i].len(), i))
        else {
            return Ok(true);
        };
        done[v] = true;
        for &x in &doms[v] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::budget(self.what, self.nodes));
            }
            let xv = &self.shell[x as usize];
            let mut next: Vec<Vec<u32>> = Vec::with_capacity(24);
            let mut ok = true;
            for u in 0..24 {
                if done[u] {
                    next.push(Vec::new());
                    continue;
                }
                let g = self.gram8[u][v];
                let d: Vec<u32> = doms[u]
                    .iter()
                    .copied()
                    .filter(|&y| dot8_shell(&self.shell[y as usize], xv) == g)
                    .collect();
                if d.is_empty() {
                    ok = false;
                    break;
                }
                next.push(d);
            }
            if !ok {
                continue;
            }
            assigned[v] = x;
            if self.step(&next, assigned, done)? {
                return Ok(true);
            }
        }
        done[v] = false;
        Ok(false)
    }
}

/// Order and generators of the group of solutions of the problem `u ↦ u`.
pub(crate) struct Stabilizer {
    pub order: u128,
    pub generators: Vec<Assignment>,
}

/// Orbit-by-orbit computation along a base of basis vectors, processed from
/// the deepest level up so that generators found lower down prune the
/// searches above.
pub(crate) fn pointwise_stabilizer(
    shell: &[ShellVec],
    index: &HashMap<ShellVec, u32>,
    frame: &Frame,
    budget: u64,
) -> Result<Stabilizer> {
    let u: Vec<LeechPoint> = frame.u.iter().map(|x| LeechPoint(*x)).collect();
    let doms = frame.domains(shell, &u);
    let ident: Assignment = std::array::from_fn(|i| index[&frame.basis.rows[i]]);
    let mut base: Vec<usize> = (0..24).collect();
    base.sort_by_key(|&i| (doms[i].len(), i));
    let mut dfs = Dfs::new(shell, &frame.basis, budget, "pointwise stabilizer search");
    let mut gens: Vec<(usize, Assignment)> = Vec::new();
    let mut order: u128 = 1;
    let apply = |a: &Assignment, y: u32| -> Option<u32> {
        let v = frame.image(shell, a, &shell[y as usize]);
        let mut s = [0i8; 24];
        for k in 0..24 {
            s[k] = i8::try_from(v[k]).ok()?;
        }
        index.get(&s).copied()
    };
    let close = |seed: &mut Vec<u32>, seen: &mut HashSet<u32>, gens: &[&Assignment]| -> Result<()> {
        let mut i = 0;
        while i < seed.len() {
            let y = seed[i];
            for g in gens {
                let z = apply(g, y)
                    .ok_or_else(|| Error::invalid("stabilizer generator left the shell"))?;
                if seen.insert(z) {
                    seed.push(z);
                }
            }
            i += 1;
        }
        Ok(())
    };
    for level in (0..24).rev() {
        let var = base[level];
        let fixed = &base[..level];
        let level_gens = |gens: &[(usize, Assignment)]| -> Vec<Assignment> {
            gens.iter().filter(|(l, _)| *l >= level).map(|(_, a)| *a).collect()
        };
        let cands: Vec<u32> = doms[var]
            .iter()
            .copied()
            .filter(|&x| {
                fixed.iter().all(|&f| {
                    dot8_shell(&shell[x as usize], &frame.basis.rows[f]) == frame.basis.gram8[var][f]
                })
            })
            .collect();
        let mut orbit = vec![ident[var]];
        let mut in_orbit: HashSet<u32> = orbit.iter().copied().collect();
        {
            let g = level_gens(&gens);
            close(&mut orbit, &mut in_orbit, &g.iter().collect::<Vec<_>>())?;
        }
        let mut dead: HashSet<u32> = HashSet::new();
        for &x in &cands {
            if in_orbit.contains(&x) || dead.contains(&x) {
                continue;
            }
            let mut d: Vec<Vec<u32>> = doms.clone();
            for &f in fixed {
                d[f] = vec![ident[f]];
            }
            d[var] = vec![x];
            match dfs.first(d)? {
                Some(sol) => {
                    gens.push((level, sol));
                    let g = level_gens(&gens);
                    let gr: Vec<&Assignment> = g.iter().collect();
                    // re-close the orbit and the dead set under the new generator
                    let mut seed: Vec<u32> = orbit.clone();
                    close(&mut seed, &mut in_orbit, &gr)?;
                    orbit = seed;
                    let mut dseed: Vec<u32> = dead.iter().copied().collect();
                    dseed.sort_unstable();
                    close(&mut dseed, &mut dead, &gr)?;
                }
                None => {
                    let g = level_gens(&gens);
                    let gr: Vec<&Assignment> = g.iter().collect();
                    let mut seed = vec![x];
                    dead.insert(x);
                    close(&mut seed, &mut dead, &gr)?;
                }
            }
        }
        order = order
            .checked_mul(orbit.len() as u128)
            .ok_or_else(|| Error::Unsupported("stabilizer order overflow".into()))?;
    }
    log::debug!(
        "pointwise stabilizer: order {order}, {} generators, {} nodes",
        gens.len(),
        dfs.nodes
    );
    Ok(Stabilizer {
        order,
        generators: gens.into_iter().map(|(_, a)| a).collect(),
    })
}
