use crate::diagram::{automorphism_group, classify_spherical, CoxeterDiagram, DiagramAutomorphismGroup};
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::BTreeSet;

/// The `J`-side inputs: a spherical diagram `J`, a group `Γ_J ⊆ Aut(J)` and
/// a normal subgroup `R ⊴ Γ_J`.
#[derive(Clone, Debug)]
pub struct ParabolicConfig {
    pub j: CoxeterDiagram,
    pub gamma_j: DiagramAutomorphismGroup,
    pub r: DiagramAutomorphismGroup,
    gamma_j_elements: Vec<Perm>,
    r_elements: BTreeSet<Perm>,
}

impl ParabolicConfig {
    pub fn new(
        j: CoxeterDiagram,
        gamma_j: DiagramAutomorphismGroup,
        r: DiagramAutomorphismGroup,
    ) -> Result<Self> {
        if classify_spherical(&j).is_none() {
            return Err(Error::NotSpherical("J".into()));
        }
        if !gamma_j.acts_on(&j) {
            return Err(Error::invalid("Γ_J contains a non-automorphism of J"));
        }
        if !r.is_subgroup_of(&gamma_j)? {
            return Err(Error::invalid("R is not a subgroup of Γ_J"));
        }
        if !r.is_normalized_by(&gamma_j)? {
            return Err(Error::invalid("R is not normal in Γ_J"));
        }
        let gamma_j_elements = gamma_j.elements()?;
        let r_elements = r.elements()?.into_iter().collect();
        Ok(ParabolicConfig {
            j,
            gamma_j,
            r,
            gamma_j_elements,
            r_elements,
        })
    }

    /// `Γ_J = R = Aut(J)`.
    pub fn full(j: CoxeterDiagram) -> Result<Self> {
        let a = automorphism_group(&j);
        Self::new(j, a.clone(), a)
    }

    /// `Γ_J = Aut(J)`, `R = 1`.
    pub fn full_gamma_trivial_r(j: CoxeterDiagram) -> Result<Self> {
        let a = automorphism_group(&j);
        let n = j.len();
        Self::new(j, a, DiagramAutomorphismGroup::trivial(n))
    }

    /// `Γ_J = R = 1`.
    pub fn trivial(j: CoxeterDiagram) -> Result<Self> {
        let n = j.len();
        Self::new(
            j,
            DiagramAutomorphismGroup::trivial(n),
            DiagramAutomorphismGroup::trivial(n),
        )
    }

    pub fn rank(&self) -> usize {
        self.j.len()
    }

    /// Elements of `Γ_J`, sorted (identity first).
    pub fn gamma_j_elements(&self) -> &[Perm] {
        &self.gamma_j_elements
    }

    pub fn r_elements(&self) -> &BTreeSet<Perm> {
        &self.r_elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SphericalType;

    #[test]
    fn validation() {
        let d4 = "D4".parse::<SphericalType>().unwrap().standard_diagram();
        let aut = automorphism_group(&d4);
        let swap = DiagramAutomorphismGroup::from_generators(4, vec![Perm(vec![0, 1, 3, 2])]).unwrap();
        assert!(ParabolicConfig::new(d4.clone(), aut.clone(), swap.clone()).is_err());
        assert!(ParabolicConfig::new(d4.clone(), swap.clone(), swap).is_ok());
        let bad = DiagramAutomorphismGroup::from_generators(4, vec![Perm(vec![1, 0, 2, 3])]).unwrap();
        assert!(ParabolicConfig::new(d4.clone(), bad.clone(), bad).is_err());
        let c = ParabolicConfig::full(d4).unwrap();
        assert_eq!(c.gamma_j_elements().len(), 6);
        assert!(c.gamma_j_elements()[0].is_identity());
    }
}
