//! Affine automorphisms `x ↦ L x + t` of the Leech lattice.
//!
//! The linear part is stored as the images of a fixed global basis of norm-4
//! vectors, which makes the representation unique and hashable.

use super::basis::Basis;
use super::golay::GolayCode;
use super::lattice::{dot8_shell, is_lattice_vector, LeechPoint, ShellVec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineSymmetry {
    /// `images[j] = L(basis.rows[j])`.
    pub images: Vec<ShellVec>,
    pub translation: LeechPoint,
}

impl std::fmt::Debug for AffineSymmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AffineSymmetry(t = {:?})", self.translation)
    }
}

impl AffineSymmetry {
    pub fn identity(basis: &Basis) -> Self {
        AffineSymmetry {
            images: basis.rows.clone(),
            translation: LeechPoint::ZERO,
        }
    }

    pub fn translation_by(basis: &Basis, t: LeechPoint) -> Self {
        AffineSymmetry {
            images: basis.rows.clone(),
            translation: t,
        }
    }

    pub fn is_translation(&self, basis: &Basis) -> bool {
        self.images == basis.rows
    }

    /// The linear part applied to a lattice vector.
    pub fn linear(&self, basis: &Basis, v: &LeechPoint) -> LeechPoint {
        let c = basis.coords(&v.0);
        let mut out = [0i64; 24];
        for (ci, img) in c.iter().zip(self.images.iter()) {
            if *ci == 0 {
                continue;
            }
            for k in 0..24 {
                out[k] += ci * img[k] as i64;
            }
        }
        LeechPoint(out.map(|x| x as i32))
    }

    pub fn apply(&self, basis: &Basis, p: &LeechPoint) -> LeechPoint {
        self.linear(basis, p).add(&self.translation)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, basis: &Basis, other: &AffineSymmetry) -> AffineSymmetry {
        let images = other
            .images
            .iter()
            .map(|v| {
                self.linear(basis, &LeechPoint::from_shell(v))
                    .to_shell()
                    .expect("norm-4 image")
            })
            .collect();
        let translation = self.apply(basis, &other.translation);
        AffineSymmetry {
            images,
            translation,
        }
    }

    pub fn inverse(&self, basis: &Basis) -> AffineSymmetry {
        // L^{-1} e_j has coordinates (e_j, L d_i) in the basis, d_i the duals
        let ld: Vec<LeechPoint> = basis
            .dual
            .iter()
            .map(|d| self.linear(basis, &LeechPoint(*d)))
            .collect();
        let images = basis
            .rows
            .iter()
            .map(|e| {
                let e = LeechPoint::from_shell(e);
                let mut out = [0i64; 24];
                for (i, row) in basis.rows.iter().enumerate() {
                    let c = e.dot8(&ld[i]) / 8;
                    for k in 0..24 {
                        out[k] += c * row[k] as i64;
                    }
                }
                LeechPoint(out.map(|x| x as i32))
                    .to_shell()
                    .expect("norm-4 image")
            })
            .collect();
        let mut inv = AffineSymmetry {
            images,
            translation: LeechPoint::ZERO,
        };
        inv.translation = inv.linear(basis, &self.translation).neg();
        inv
    }

    /// Check that the linear part preserves the form on the basis and maps
    /// it into the lattice, and that the translation is a lattice vector.
    pub fn verify(&self, basis: &Basis, code: &GolayCode) -> Result<()> {
        if self.images.len() != 24 {
            return Err(Error::invalid("affine symmetry needs 24 basis images"));
        }
        for i in 0..24 {
            if !is_lattice_vector(code, &LeechPoint::from_shell(&self.images[i]).0) {
                return Err(Error::invalid("basis image is not a lattice vector"));
            }
            for j in 0..24 {
                if dot8_shell(&self.images[i], &self.images[j]) != basis.gram8[i][j] {
                    return Err(Error::invalid("linear part does not preserve the form"));
                }
            }
        }
        if !is_lattice_vector(code, &self.translation.0) {
            return Err(Error::invalid("translation is not a lattice vector"));
        }
        Ok(())
    }
}
