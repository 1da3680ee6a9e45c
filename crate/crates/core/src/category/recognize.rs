//! Naming the group `Γ_Ω` when the category has a recognizable shape.

use super::ambient::Ambient;
use super::build::{CategoryQ4, Morphism};
use super::presentation::{abelianization, Abelianization, Presentation};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// `π₁ = A *_{A∩B} B` for a two-object category with `Mor(q, p) = ∅` and
/// `Mor(p, q) = BA`, where `A = Mor(p, p)` and `B = Mor(q, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamData {
    pub p: usize,
    pub q: usize,
    pub a_order: u128,
    pub b_order: u128,
    pub intersection_order: u128,
    /// Order of a cyclic `C` with `B = (A∩B) × C`, when one exists.
    pub c_order: Option<u128>,
    /// Copies of `C` in the normal free product with quotient `A`.
    pub copies: Option<u128>,
    pub quotient_order: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupDescription {
    Finite {
        order: u128,
    },
    Free {
        rank: usize,
    },
    Amalgam(AmalgamData),
    Raw {
        generators: usize,
        relators: usize,
        abelianization: Option<Abelianization>,
    },
}

impl GroupDescription {
    /// Description of `Γ_Ω` alone.
    pub fn gamma_omega(&self) -> String {
        match self {
            GroupDescription::Finite { order } => format!("Γ_Ω finite of order {order}"),
            GroupDescription::Free { rank } => format!("Γ_Ω free of rank {rank}"),
            GroupDescription::Amalgam(a) => match (a.c_order, a.copies, a.quotient_order) {
                (Some(c), Some(k), Some(qo)) => format!(
                    "Γ_Ω = G{} *_G{} (G{} x Z/{c}) = (Z/{c})^{{*{k}}} . [order {qo}]",
                    a.a_order, a.intersection_order, a.intersection_order
                ),
                _ => format!(
                    "Γ_Ω = G{} *_G{} G{}",
                    a.a_order, a.intersection_order, a.b_order
                ),
            },
            GroupDescription::Raw {
                generators,
                relators,
                abelianization,
            } => {
                let mut s = format!("Γ_Ω presented by {generators} generators and {relators} relators");
                if let Some(ab) = abelianization {
                    s.push_str(&format!(", abelianization {ab}"));
                }
                s
            }
        }
    }

    /// `N = W_J . W_Ω . Γ_Ω` with the description of `Γ_Ω`.
    pub fn structure(&self) -> String {
        format!("N = W_J . W_Ω . Γ_Ω, {}", self.gamma_omega())
    }
}

fn element_order<A: Ambient>(amb: &A, q: &CategoryQ4<A>, x: &Morphism<A::Sym>, limit: u128) -> Option<u128> {
    let id = q.identity(amb);
    let mut y = x.clone();
    let mut k = 1u128;
    while y != id {
        if k >= limit {
            return None;
        }
        y = q.compose(amb, x, &y);
        k += 1;
    }
    Some(k)
}

/// The amalgam shape, if `q` has it.
pub fn amalgam<A: Ambient>(amb: &A, q: &CategoryQ4<A>) -> Option<AmalgamData> {
    if q.objects.len() != 2 {
        return None;
    }
    for (p, r) in [(0usize, 1usize), (1, 0)] {
        if !q.morphisms[r][p].is_empty() || q.morphisms[p][r].is_empty() {
            continue;
        }
        let a = &q.morphisms[p][p];
        let a_set: HashSet<&Morphism<A::Sym>> = a.iter().collect();
        // conjugate B so that the stabilizer of the image of p sits inside it
        let m0 = &q.morphisms[p][r][0];
        let m0i = q.inverse(amb, m0);
        let b: Vec<Morphism<A::Sym>> = q.morphisms[r][r]
            .iter()
            .map(|x| q.compose(amb, &m0i, &q.compose(amb, x, m0)))
            .collect();
        let ab: Vec<&Morphism<A::Sym>> = b.iter().filter(|x| a_set.contains(x)).collect();
        let (na, nb, nab) = (a.len() as u128, b.len() as u128, ab.len() as u128);
        if q.morphisms[p][r].len() as u128 * nab != na * nb {
            continue;
        }
        let n = nb / nab;
        let ab_set: HashSet<&Morphism<A::Sym>> = ab.iter().copied().collect();
        let c = b.iter().find(|x| {
            ab.iter()
                .all(|y| q.compose(amb, x, y) == q.compose(amb, y, x))
                && element_order(amb, q, x, n + 1) == Some(n)
                && {
                    let mut z = (*x).clone();
                    (1..n).all(|_| {
                        let ok = !ab_set.contains(&z);
                        z = q.compose(amb, x, &z);
                        ok
                    })
                }
        });
        let found = c.is_some();
        return Some(AmalgamData {
            p,
            q: r,
            a_order: na,
            b_order: nb,
            intersection_order: nab,
            c_order: found.then_some(n),
            copies: found.then_some(na / nab),
            quotient_order: found.then_some(na),
        });
    }
    None
}

/// Recognize `π₁(q)` from its shape and, failing that, from a simplified
/// presentation.
pub fn recognize<A: Ambient>(
    amb: &A,
    q: &CategoryQ4<A>,
    simplified: Option<&Presentation>,
) -> Result<GroupDescription> {
    if q.objects.len() == 1 {
        return Ok(GroupDescription::Finite {
            order: q.morphisms[0][0].len() as u128,
        });
    }
    if let Some(a) = amalgam(amb, q) {
        return Ok(GroupDescription::Amalgam(a));
    }
    match simplified {
        Some(p) if p.relators.is_empty() => Ok(GroupDescription::Free {
            rank: p.generators.len(),
        }),
        Some(p) => Ok(GroupDescription::Raw {
            generators: p.generators.len(),
            relators: p.relators.len(),
            abelianization: abelianization(p).ok(),
        }),
        None => Ok(GroupDescription::Raw {
            generators: q.morphisms.iter().flatten().map(Vec::len).sum(),
            relators: super::presentation::relator_count(q),
            abelianization: None,
        }),
    }
}
