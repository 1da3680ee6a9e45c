//! Finite scan for isometries `J → S` into strictly larger spherical `S`
//! that fail to be `Aut(J)`-reflective.

use super::adjacency::is_r_reflective;
use crate::diagram::{
    automorphism_group, classify_components, isometries_with, CoxeterDiagram, Irreducible,
    Isometry, SphericalType,
};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A non-reflective isometry found by the scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanWitness {
    pub target: SphericalType,
    pub isometry: Isometry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    /// Candidate target types examined.
    pub targets: usize,
    /// Isometries examined (one per image set).
    pub isometries: usize,
    pub witness: Option<ScanWitness>,
}

fn irreducibles_of_rank(r: usize, max_dihedral: u32) -> Vec<Irreducible> {
    use Irreducible::*;
    let r32 = r as u32;
    let mut out = vec![];
    match r {
        0 => {}
        1 => out.push(A(1)),
        2 => {
            out.push(A(2));
            out.push(B(2));
            out.extend((5..=max_dihedral).map(I2));
        }
        _ => {
            out.push(A(r32));
            out.push(B(r32));
            if r >= 4 {
                out.push(D(r32));
            }
            if (6..=8).contains(&r) {
                out.push(E(r32));
            }
            if r == 4 {
                out.push(F4);
            }
            if r == 3 || r == 4 {
                out.push(H(r32));
            }
        }
    }
    out
}

/// Candidate target types: at most as many components as `J` has, each of
/// rank at least the smallest component of `J`, total rank in
/// `(rank J, 2 rank J]`. Targets with a component missing the image of `J`
/// are always reflective and are not generated.
fn candidate_targets(j: &CoxeterDiagram, max_dihedral: u32) -> Vec<SphericalType> {
    let comps = j.components();
    let rank = j.len();
    let min_comp = comps.iter().map(|c| c.len()).min().unwrap_or(0);
    let mut pool: Vec<Irreducible> = Vec::new();
    for r in min_comp.max(1)..=2 * rank {
        pool.extend(irreducibles_of_rank(r, max_dihedral));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        pool: &[Irreducible],
        from: usize,
        cur: &mut Vec<Irreducible>,
        total: usize,
        max_parts: usize,
        rank: usize,
        out: &mut Vec<SphericalType>,
    ) {
        if total > rank {
            out.push(SphericalType::new(cur.clone()));
        }
        if cur.len() == max_parts {
            return;
        }
        for i in from..pool.len() {
            let t = total + pool[i].rank();
            if t > 2 * rank {
                continue;
            }
            cur.push(pool[i]);
            rec(pool, i, cur, t, max_parts, rank, out);
            cur.pop();
        }
    }
    rec(&pool, 0, &mut cur, 0, comps.len(), rank, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Search for an isometry from `j` into a strictly larger spherical diagram
/// of rank at most `2 rank(j)` that is not `Aut(j)`-reflective.
///
/// Dihedral targets `I2(m)` are tried for `m` up to `max(8, largest bond of
/// j)`; beyond that a lone `A1` component behaves the same way.
pub fn larger_extension_scan(j: &CoxeterDiagram) -> Result<ScanReport> {
    if classify_components(j).is_none() {
        return Err(Error::NotSpherical("J".into()));
    }
    let max_bond = j
        .edges()
        .iter()
        .filter_map(|(_, _, m)| m.finite())
        .max()
        .unwrap_or(3);
    let r: BTreeSet<_> = automorphism_group(j).elements()?.into_iter().collect();
    let targets = candidate_targets(j, max_bond.max(8));
    let mut report = ScanReport {
        targets: targets.len(),
        isometries: 0,
        witness: None,
    };
    for t in targets {
        let s = t.standard_diagram();
        let comps = s.components();
        let mut images = BTreeSet::new();
        let mut found = None;
        isometries_with(j, &s, |k| {
            let img = k.image();
            if comps.iter().any(|c| c.iter().all(|x| img.binary_search(x).is_err())) {
                return true;
            }
            if !images.insert(img) {
                return true;
            }
            report.isometries += 1;
            if !is_r_reflective(&s, k, &r) {
                found = Some(k.clone());
                return false;
            }
            true
        });
        if let Some(k) = found {
            report.witness = Some(ScanWitness {
                target: t,
                isometry: k,
            });
            return Ok(report);
        }
    }
    Ok(report)
}

/// Every isometry from `j` into a strictly larger spherical diagram of rank
/// at most `2 rank(j)` is `Aut(j)`-reflective.
pub fn all_larger_extensions_reflective(j: &CoxeterDiagram) -> Result<bool> {
    Ok(larger_extension_scan(j)?.witness.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std(s: &str) -> CoxeterDiagram {
        s.parse::<SphericalType>().unwrap().standard_diagram()
    }

    #[test]
    fn small_cases() {
        assert!(all_larger_extensions_reflective(&std("E6")).unwrap());
        assert!(all_larger_extensions_reflective(&std("B2")).unwrap());
        let w = larger_extension_scan(&std("A1")).unwrap().witness.unwrap();
        assert_eq!(w.target.to_string(), "A2");
    }

    #[test]
    fn candidates_respect_rank_window() {
        for t in candidate_targets(&std("A2A1"), 8) {
            assert!(t.rank() > 3 && t.rank() <= 6, "{t}");
            assert!(t.components().len() <= 2);
        }
    }
}
