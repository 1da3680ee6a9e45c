//! Serializable results of a run and their text rendering.

use crate::run::Command;
use coxnorm::category::{to_dot, BrinkGraph, CategoryReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classify: Option<ClassifyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalizer: Option<NormalizerReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brink: Option<BrinkReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shells: Option<ShellsReport>,
}

impl Report {
    pub fn new(command: Command, example: Option<String>) -> Self {
        Report {
            command: command.name().to_string(),
            example,
            classify: None,
            normalizer: None,
            brink: None,
            shells: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    /// The input diagram in file syntax.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter_group_order: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism_group_order: Option<u64>,
    /// `(node, image)` under the opposition involution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opposition: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isometries: Vec<IsometryReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scan: Vec<ScanEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyEntry {
    pub from: usize,
    pub to: usize,
    /// The node of `S` whose addition gives the adjacency.
    pub via: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub j: String,
    pub s: String,
    /// Each isometry as the images of the nodes of `J`, sorted.
    pub maps: Vec<Vec<String>>,
    pub adjacency: Vec<AdjacencyEntry>,
    /// Associate classes as indices into `maps`.
    pub classes: Vec<Vec<usize>>,
    /// Whether conjugacy in the root system gives the same classes.
    pub oracle_agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_note: Option<String>,
    pub r_order: usize,
    /// `R`-reflectivity of each map.
    pub reflective: Vec<bool>,
    /// `Aut(J)`-reflectivity of each map.
    pub reflective_full_aut: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanWitnessEntry {
    pub target: String,
    pub isometry: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub j: String,
    pub all_reflective: bool,
    pub targets: usize,
    pub isometries: usize,
    pub witness: Option<ScanWitnessEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrinkReport {
    pub graph: BrinkGraph,
    pub objects: usize,
    /// Rank of `π₁(Q4)` when the simplified presentation has no relators.
    pub category_free_rank: Option<usize>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerReport {
    /// `leech`, or the ambient diagram in file syntax.
    pub ambient: String,
    pub j: String,
    pub j_points: Vec<Vec<i64>>,
    pub gamma_j_order: u64,
    pub r_order: u64,
    pub gamma_pi: String,
    pub reflectivity_filter: bool,
    pub max_rank: Option<usize>,
    pub tree_seed: Option<u64>,
    pub axioms_verified: bool,
    pub category: CategoryReport,
    /// Odd-bond graph cross-check, for `J = A1` with trivial `Γ_Π`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brink: Option<BrinkGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellsReport {
    pub octads: usize,
    pub shell4: usize,
    pub shell6: usize,
    pub code_fingerprint: String,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    if let Some(e) = &r.example {
        let _ = writeln!(s, "example {e}");
    }
    if let Some(c) = &r.classify {
        classify_text(&mut s, c);
    }
    if let Some(b) = &r.brink {
        brink_text(&mut s, b);
    }
    if let Some(n) = &r.normalizer {
        normalizer_text(&mut s, n);
    }
    if let Some(sh) = &r.shells {
        let _ = writeln!(s, "octads: {}", sh.octads);
        let _ = writeln!(s, "norm-4 vectors: {}", sh.shell4);
        let _ = writeln!(s, "norm-6 vectors: {}", sh.shell6);
        let _ = writeln!(s, "code fingerprint: {}", sh.code_fingerprint);
    }
    s
}

fn classify_text(s: &mut String, c: &ClassifyReport) {
    if let Some(d) = &c.diagram {
        let _ = writeln!(s, "type: {}", c.spherical_type.as_deref().unwrap_or("not spherical"));
        if let Some(o) = c.coxeter_group_order {
            let _ = writeln!(s, "|W|: {o}");
        }
        if let Some(o) = c.automorphism_group_order {
            let _ = writeln!(s, "|Aut|: {o}");
        }
        if let Some(op) = &c.opposition {
            let moved: Vec<String> = op.iter().filter(|(a, b)| a < b).map(|(a, b)| format!("{a}<->{b}")).collect();
            let _ = writeln!(s, "opposition: {}", if moved.is_empty() { "trivial".into() } else { moved.join(" ") });
        }
        let _ = d;
    }
    for iso in &c.isometries {
        let _ = writeln!(s, "isometries {} -> {}: {}", iso.j, iso.s, iso.maps.len());
        for (k, m) in iso.maps.iter().enumerate() {
            let _ = writeln!(
                s,
                "  [{k}] {}  reflective(R): {}  reflective(Aut J): {}",
                m.join(" "),
                yes(iso.reflective[k]),
                yes(iso.reflective_full_aut[k])
            );
        }
        for a in &iso.adjacency {
            let _ = writeln!(s, "  [{}] -> [{}] via {}", a.from, a.to, a.via);
        }
        let sizes: Vec<String> = iso.classes.iter().map(|c| c.len().to_string()).collect();
        let _ = writeln!(s, "  classes: {} (sizes {})", iso.classes.len(), sizes.join(", "));
        match (iso.oracle_agrees, &iso.oracle_note) {
            (Some(a), _) => {
                let _ = writeln!(s, "  root-system oracle agrees: {}", yes(a));
            }
            (None, Some(n)) => {
                let _ = writeln!(s, "  root-system oracle skipped: {n}");
            }
            _ => {}
        }
    }
    for e in &c.scan {
        match &e.witness {
            None => {
                let _ = writeln!(
                    s,
                    "scan {}: every larger extension Aut(J)-reflective ({} targets, {} isometries)",
                    e.j, e.targets, e.isometries
                );
            }
            Some(w) => {
                let _ = writeln!(s, "scan {}: non-reflective isometry into {} {:?}", e.j, w.target, w.isometry);
            }
        }
    }
}

fn brink_text(s: &mut String, b: &BrinkReport) {
    let g = &b.graph;
    let _ = writeln!(s, "odd-bond component: {} nodes, {} edges", g.nodes.len(), g.edges.len());
    for (a, c, m) in &g.edges {
        let _ = writeln!(s, "  {a} - {c} ({m})");
    }
    let _ = writeln!(s, "free rank E - V + 1: {}", g.free_rank);
    let _ = writeln!(s, "category objects: {}", b.objects);
    match b.category_free_rank {
        Some(r) => {
            let _ = writeln!(s, "category group: free of rank {r}");
        }
        None => {
            let _ = writeln!(s, "category group: not visibly free");
        }
    }
    let _ = writeln!(s, "agree: {}", yes(b.agrees));
}

fn normalizer_text(s: &mut String, n: &NormalizerReport) {
    let c = &n.category;
    let _ = writeln!(s, "J = {}, |Γ_J| = {}, |R| = {}, Γ_Π: {}", n.j, n.gamma_j_order, n.r_order, n.gamma_pi);
    let _ = writeln!(s, "objects: {}", c.objects.len());
    for o in &c.objects {
        let _ = writeln!(
            s,
            "  [{}] {}  class size {}  |Mor| = {}  pointwise stabilizer {}  setwise {}",
            o.index, o.kind, o.class_size, c.morphism_counts[o.index][o.index], o.pointwise_stabilizer, o.setwise_stabilizer
        );
    }
    let _ = writeln!(s, "morphism counts:");
    for row in &c.morphism_counts {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>8}")).collect();
        let _ = writeln!(s, " {}", cells.join(""));
    }
    for (a, b, k) in &c.containing {
        let _ = writeln!(s, "  object {a} lies below {k} objects of type {}", c.objects[*b].kind);
    }
    let _ = writeln!(s, "longest chain: {} (bound {})", c.longest_chain, c.chain_bound);
    let _ = writeln!(s, "axioms verified: {}", yes(n.axioms_verified));
    match (&c.presentation, &c.presentation_note) {
        (Some(p), _) => {
            let _ = writeln!(s, "presentation: {} generators, {} relators", p.generators.len(), p.relators.len());
        }
        (None, Some(note)) => {
            let _ = writeln!(s, "presentation omitted: {note}");
        }
        _ => {}
    }
    if let Some(p) = &c.simplified {
        let _ = writeln!(s, "simplified: {} generators, {} relators", p.generators.len(), p.relators.len());
    }
    if let Some(a) = &c.abelianization {
        let _ = writeln!(s, "abelianization: {a}");
    }
    let _ = writeln!(s, "{}", c.structure);
    if let Some(g) = &n.brink {
        let _ = writeln!(s, "odd-bond graph free rank: {}", g.free_rank);
    }
}

/// DOT for the category of a normalizer run.
pub fn render_dot(r: &Report) -> Option<String> {
    r.normalizer.as_ref().map(|n| to_dot(&n.category))
}
