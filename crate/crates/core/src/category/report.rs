//! Serializable summaries of a built component and DOT export.

use super::ambient::Ambient;
use super::build::{chain_bound_check, CategoryQ4};
use super::presentation::{
    abelianization, fundamental_group, fundamental_group_with_tree, simplify, Abelianization,
    Presentation, TreeEdge,
};
use super::recognize::{recognize, GroupDescription};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectReport {
    pub index: usize,
    #[serde(rename = "type")]
    pub kind: String,
    pub points: Vec<Vec<i64>>,
    /// Image of each node of `J` under the class representative.
    pub class_representative: Vec<usize>,
    pub class_size: usize,
    pub pointwise_stabilizer: u128,
    pub setwise_stabilizer: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub objects: Vec<ObjectReport>,
    /// `morphism_counts[a][b] = |Mor(a, b)|`.
    pub morphism_counts: Vec<Vec<usize>>,
    /// `(a, b, |Mor(a, b)| / |Mor(b, b)|)`: how many objects in the orbit
    /// of `b` lie above `a`.
    pub containing: Vec<(usize, usize, usize)>,
    pub longest_chain: usize,
    pub chain_bound: usize,
    pub presentation: Option<Presentation>,
    /// Why the presentation was not written out.
    pub presentation_note: Option<String>,
    pub simplified: Option<Presentation>,
    pub abelianization: Option<Abelianization>,
    pub group: GroupDescription,
    pub structure: String,
}

/// Chain check, presentation, simplification and recognition.
pub fn analyze<A: Ambient>(amb: &A, q: &CategoryQ4<A>) -> Result<CategoryReport> {
    analyze_with(amb, q, None)
}

/// [`analyze`] with a given spanning tree instead of the BFS tree.
pub fn analyze_with<A: Ambient>(
    amb: &A,
    q: &CategoryQ4<A>,
    tree: Option<&[TreeEdge]>,
) -> Result<CategoryReport> {
    let longest_chain = chain_bound_check(q)?;
    let pres = match tree {
        Some(t) => fundamental_group_with_tree(amb, q, q.base, t),
        None => fundamental_group(amb, q, q.base),
    };
    let (presentation, presentation_note) = match pres {
        Ok(p) => (Some(p), None),
        Err(Error::Unsupported(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    let simplified = presentation.as_ref().map(simplify).transpose()?;
    let abel = simplified.as_ref().map(abelianization).transpose()?;
    let group = recognize(amb, q, simplified.as_ref())?;
    let counts = q.count_matrix();
    let objects = q
        .objects
        .iter()
        .enumerate()
        .map(|(index, o)| ObjectReport {
            index,
            kind: o.kind.to_string(),
            points: o.element.points.iter().map(|p| amb.point_coords(p)).collect(),
            class_representative: o.element.class.representative().0.clone(),
            class_size: o.element.class.len(),
            pointwise_stabilizer: o.pointwise_order,
            setwise_stabilizer: o.setwise_order(),
        })
        .collect();
    Ok(CategoryReport {
        objects,
        containing: containing_counts(&counts),
        morphism_counts: counts,
        longest_chain,
        chain_bound: q.config.rank() + 1,
        presentation,
        presentation_note,
        simplified,
        abelianization: abel,
        structure: group.structure(),
        group,
    })
}

fn containing_counts(c: &[Vec<usize>]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, row) in c.iter().enumerate() {
        for (b, &n) in row.iter().enumerate() {
            if a != b && n > 0 && c[b][b] > 0 {
                out.push((a, b, n / c[b][b]));
            }
        }
    }
    out
}

/// The underlying graph of `Q4` with morphism counts as edge labels.
pub fn to_dot(r: &CategoryReport) -> String {
    let mut s = String::from("digraph Q4 {\n");
    for o in &r.objects {
        s.push_str(&format!(
            "  o{} [label=\"{}({})\"];\n",
            o.index, o.kind, r.morphism_counts[o.index][o.index]
        ));
    }
    for (a, row) in r.morphism_counts.iter().enumerate() {
        for (b, &n) in row.iter().enumerate() {
            if a != b && n > 0 {
                s.push_str(&format!("  o{a} -> o{b} [label=\"{n}\"];\n"));
            }
        }
    }
    s.push_str("}\n");
    s
}
