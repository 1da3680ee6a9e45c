//! Named configurations for the worked examples.

use crate::run::{Command, GroupSpec};

#[derive(Clone, Debug)]
pub enum LeechJ {
    /// First realization found for a type.
    Type(&'static str),
    /// The `A3A1^6` built from two octads meeting in two points.
    Kondo,
}

#[derive(Clone, Debug)]
pub enum ExampleKind {
    /// Isometries `J → S` with adjacency and classes, for each `(J, S)`.
    Adjacency { pairs: &'static [(&'static str, &'static str)] },
    /// Larger-extension reflectivity scan over these `J`.
    Scan { types: &'static [&'static str] },
    Brink { pi: &'static str, node: &'static str },
    Finite {
        pi: &'static str,
        j: &'static [&'static str],
        gamma_j: GroupSpec,
        r: GroupSpec,
        gamma_pi: GroupSpec,
    },
    Leech { j: LeechJ, gamma_j: GroupSpec, r: GroupSpec },
}

#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    pub kind: ExampleKind,
}

impl Example {
    /// The command that runs this example.
    pub fn command(&self) -> Command {
        match self.kind {
            ExampleKind::Adjacency { .. } | ExampleKind::Scan { .. } => Command::Classify,
            ExampleKind::Brink { .. } => Command::Brink,
            ExampleKind::Finite { .. } => Command::Normalizer,
            ExampleKind::Leech { .. } => Command::LeechExample,
        }
    }
}

const BRINK_PI: &str = "nodes: a b c d\nedge a b 3\nedge b c 3\nedge a c 5\nedge c d 4\n";

fn cycles(text: &'static str) -> GroupSpec {
    GroupSpec::Cycles(vec![text.to_string()])
}

pub fn registry() -> Vec<Example> {
    use ExampleKind::*;
    vec![
        Example {
            name: "a1-in-a3",
            summary: "A1 into A3: adjacency of the three isometries",
            kind: Adjacency { pairs: &[("A1", "A3")] },
        },
        Example {
            name: "d5-in-d6",
            summary: "D5 into D6: two isometries, reflective only for R = Aut(D5)",
            kind: Adjacency { pairs: &[("D5", "D6")] },
        },
        Example {
            name: "a3-in-d5",
            summary: "A3 into D5: eight isometries in classes of sizes 2 and 6",
            kind: Adjacency { pairs: &[("A3", "D5")] },
        },
        Example {
            name: "a2-classes",
            summary: "A2 into A_n, D_n and E_n: two classes for A_n, one otherwise",
            kind: Adjacency {
                pairs: &[
                    ("A2", "A2"),
                    ("A2", "A3"),
                    ("A2", "A4"),
                    ("A2", "A5"),
                    ("A2", "D4"),
                    ("A2", "D5"),
                    ("A2", "D6"),
                    ("A2", "E6"),
                    ("A2", "E7"),
                    ("A2", "E8"),
                ],
            },
        },
        Example {
            name: "odd-graph",
            summary: "odd-bond graph of a four-node diagram, J = A1",
            kind: Brink { pi: BRINK_PI, node: "a" },
        },
        Example {
            name: "odd-graph-category",
            summary: "the same diagram through the category, J = A1 at a, trivial symmetry",
            kind: Finite {
                pi: BRINK_PI,
                j: &["a"],
                gamma_j: GroupSpec::Trivial,
                r: GroupSpec::Trivial,
                gamma_pi: GroupSpec::Trivial,
            },
        },
        Example {
            name: "leech-e6",
            summary: "E6 in the Leech lattice, R = 1, Γ_J = Aut(E6)",
            kind: Leech {
                j: LeechJ::Type("E6"),
                gamma_j: GroupSpec::Full,
                r: GroupSpec::Trivial,
            },
        },
        Example {
            name: "leech-e6-full",
            summary: "E6 in the Leech lattice, R = Γ_J = Aut(E6)",
            kind: Leech {
                j: LeechJ::Type("E6"),
                gamma_j: GroupSpec::Full,
                r: GroupSpec::Full,
            },
        },
        Example {
            name: "leech-d6",
            summary: "D6 in the Leech lattice, R = 1, Γ_J = Aut(D6)",
            kind: Leech {
                j: LeechJ::Type("D6"),
                gamma_j: GroupSpec::Full,
                r: GroupSpec::Trivial,
            },
        },
        Example {
            name: "leech-a6",
            summary: "A6 in the Leech lattice, R = 1, Γ_J = Aut(A6)",
            kind: Leech {
                j: LeechJ::Type("A6"),
                gamma_j: GroupSpec::Full,
                r: GroupSpec::Trivial,
            },
        },
        Example {
            name: "leech-kondo",
            summary: "Kondo's A3A1^6 in the Leech lattice, R = Γ_J = Aut(J)",
            kind: Leech {
                j: LeechJ::Kondo,
                gamma_j: GroupSpec::Full,
                r: GroupSpec::Full,
            },
        },
        Example {
            name: "extension-scan",
            summary: "larger-extension reflectivity scan for R = Aut(J)",
            kind: Scan {
                types: &[
                    "E6", "E7", "E8", "F4", "B2", "B3", "B4", "B5", "B6", "D4", "D6", "B2B3", "F4B2",
                    "D4B2", "E6B2", "A1", "A2", "D5",
                ],
            },
        },
        Example {
            name: "leech-d4",
            summary: "D4 in the Leech lattice, R = Γ_J = Aut(D4)",
            kind: Leech {
                j: LeechJ::Type("D4"),
                gamma_j: GroupSpec::Full,
                r: GroupSpec::Full,
            },
        },
        Example {
            name: "leech-d4-swap",
            summary: "D4 in the Leech lattice, R = Γ_J the order-2 subgroup swapping n02 and n03",
            kind: Leech {
                j: LeechJ::Type("D4"),
                gamma_j: cycles("(n02 n03)"),
                r: cycles("(n02 n03)"),
            },
        },
    ]
}

pub fn find(name: &str) -> Option<Example> {
    registry().into_iter().find(|e| e.name == name)
}

/// One line per example, for help text.
pub fn listing() -> String {
    registry()
        .iter()
        .map(|e| format!("  {:<20} {}", e.name, e.summary))
        .collect::<Vec<_>>()
        .join("\n")
}
