//! Normalizers of finite parabolic subgroups of Coxeter groups.
//!
//! The normalizer of a finite standard parabolic subgroup `W_J` of a Coxeter
//! group `W_Π` (extended by a group `Γ_Π` of diagram automorphisms) has the
//! shape `W_J . W_Ω . Γ_Ω`. This crate computes `Γ_Ω` as the fundamental group
//! of a finite category `Q4` built from spherical subdiagrams of `Π` and
//! associate classes of diagram isometries `J → S`.
//!
//! Modules:
//!
//! * [`diagram`]: Coxeter diagrams, spherical classification, opposition
//!   involutions, automorphisms, isometries and canonical forms.
//! * [`parabolic`]: adjacency, associate classes, `R`-reflectivity and a
//!   brute-force root-system oracle for conjugacy.
//! * [`category`]: the poset of non-reflective pairs, the skeleton `Q4`,
//!   spanning-tree presentations and structure recognition.
//! * [`leech`]: the Leech lattice ambient: Golay code, shells, exact
//!   affine symmetries and the isometry-extension search.

pub mod category;
pub mod diagram;
pub mod error;
pub mod leech;
pub mod par;
pub mod parabolic;
pub mod perm;

pub use error::{Error, Result};
pub use perm::Perm;
