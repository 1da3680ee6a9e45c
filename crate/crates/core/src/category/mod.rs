//! The category `Q4`: objects are orbit representatives of non-reflective
//! pairs `(S, K̄)`, morphisms are pairs `(ρ, g)` with `g(S) ⊆ S'`.

mod ambient;
mod brink;
mod build;
mod presentation;
mod recognize;
mod report;

pub use ambient::{closure, realized_automorphisms, Ambient, FiniteAmbient};
pub use brink::{brink_graph, BrinkGraph};
pub use build::{
    build_component, chain_bound_check, endomorphism_generators, morphisms_between, verify_axioms, BuildOptions, CategoryQ4,
    Morphism, Object, PosetElement,
};
pub use presentation::{
    abelianization, bfs_tree, fundamental_group, fundamental_group_with_tree, random_tree,
    relator_count, simplify, Abelianization, Presentation, TreeEdge, RELATOR_LIMIT,
};
pub use recognize::{amalgam, recognize, AmalgamData, GroupDescription};
pub use report::{analyze, analyze_with, to_dot, CategoryReport, ObjectReport};
