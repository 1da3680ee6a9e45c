//! Run configuration and the pipeline behind each subcommand.

use crate::examples::{self, Example, ExampleKind, LeechJ};
use crate::report::*;
use anyhow::{anyhow, bail, Context, Result};
use coxnorm::category::{
    analyze_with, brink_graph, build_component, fundamental_group, random_tree, simplify, verify_axioms,
    Ambient, BuildOptions, FiniteAmbient,
};
use coxnorm::diagram::{
    automorphism_group, classify_spherical, isometries, opposition_involution, parse_diagram,
    serialize_diagram, CoxeterDiagram, DiagramAutomorphismGroup, SphericalType,
};
use coxnorm::leech::{find_configuration, kondo_configuration, Leech, Selector};
use coxnorm::parabolic::{
    adjacent_isometries, associate_classes, is_r_reflective, larger_extension_scan, oracle_classes,
    ParabolicConfig, DEFAULT_ORACLE_LIMIT,
};
use coxnorm::Perm;
use std::collections::BTreeSet;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Normalizer,
    Brink,
    LeechExample,
    Shells,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Normalizer => "normalizer",
            Command::Brink => "brink",
            Command::LeechExample => "leech-example",
            Command::Shells => "shells",
        }
    }
}

/// A group of diagram automorphisms given by name or by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Full,
    Trivial,
    /// Generators in cycle notation on node names, e.g. `(a b)(c d)`.
    Cycles(Vec<String>),
}

impl GroupSpec {
    /// `full`, `trivial`, or a file with one generator per line.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        match text {
            "full" => Ok(GroupSpec::Full),
            "trivial" => Ok(GroupSpec::Trivial),
            path => {
                let body = std::fs::read_to_string(path)
                    .with_context(|| format!("reading generator file {path}"))?;
                Ok(GroupSpec::Cycles(
                    body.lines()
                        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                        .filter(|l| !l.is_empty())
                        .collect(),
                ))
            }
        }
    }

    pub fn resolve(&self, d: &CoxeterDiagram) -> Result<DiagramAutomorphismGroup> {
        match self {
            GroupSpec::Full => Ok(automorphism_group(d)),
            GroupSpec::Trivial => Ok(DiagramAutomorphismGroup::trivial(d.len())),
            GroupSpec::Cycles(lines) => {
                let gens = lines
                    .iter()
                    .map(|l| parse_cycles(d, l))
                    .collect::<Result<Vec<_>>>()?;
                Ok(DiagramAutomorphismGroup::from_generators(d.len(), gens)?)
            }
        }
    }
}

fn parse_cycles(d: &CoxeterDiagram, text: &str) -> Result<Perm> {
    let mut images: Vec<usize> = (0..d.len()).collect();
    let mut seen = BTreeSet::new();
    for cycle in text.split(')') {
        let cycle = cycle.trim();
        if cycle.is_empty() {
            continue;
        }
        let body = cycle
            .strip_prefix('(')
            .ok_or_else(|| anyhow!("expected '(' in generator {text:?}"))?;
        let nodes = body
            .split_whitespace()
            .map(|n| d.index_of(n).ok_or_else(|| anyhow!("unknown node {n:?} in generator {text:?}")))
            .collect::<Result<Vec<_>>>()?;
        for (i, &x) in nodes.iter().enumerate() {
            if !seen.insert(x) {
                bail!("node {} repeated in generator {text:?}", d.name(x));
            }
            images[x] = nodes[(i + 1) % nodes.len()];
        }
    }
    Ok(Perm(images))
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Diagram file, or `leech`.
    pub pi: Option<String>,
    /// Node names separated by commas (finite `Π`), a type, or a diagram file.
    pub j: Option<String>,
    pub gamma_j: GroupSpec,
    pub r: GroupSpec,
    pub gamma_pi: GroupSpec,
    pub example: Option<String>,
    pub node: Option<String>,
    /// Types for the larger-extension scan.
    pub scan: Vec<String>,
    pub cache: Option<PathBuf>,
    pub budget: Option<u64>,
    pub oracle_limit: u128,
    pub tree_seed: Option<u64>,
    pub reflectivity_filter: bool,
    pub max_rank: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            pi: None,
            j: None,
            gamma_j: GroupSpec::Full,
            r: GroupSpec::Trivial,
            gamma_pi: GroupSpec::Full,
            example: None,
            node: None,
            scan: vec![],
            cache: None,
            budget: None,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            tree_seed: None,
            reflectivity_filter: true,
            max_rank: None,
        }
    }

    pub fn with_example(command: Command, name: &str) -> Self {
        let mut c = RunConfig::new(command);
        c.example = Some(name.to_string());
        c
    }
}

/// Whether an error chain ends in a budget refusal.
pub fn is_budget(e: &anyhow::Error) -> bool {
    e.chain()
        .any(|c| c.downcast_ref::<coxnorm::Error>().is_some_and(|e| e.is_budget()))
}

/// Process exit status for a run result: 0, 1 for bad input, 2 for a
/// budget refusal.
pub fn exit_code(r: &Result<Report>) -> i32 {
    match r {
        Ok(_) => 0,
        Err(e) if is_budget(e) => 2,
        Err(_) => 1,
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new(cfg.command, cfg.example.clone());
    if let Some(name) = &cfg.example {
        let ex = examples::find(name).ok_or_else(|| {
            anyhow!("unknown example {name:?}; known examples:\n{}", examples::listing())
        })?;
        let want = ex.command();
        let ok = want == cfg.command || (want == Command::LeechExample && cfg.command == Command::Normalizer);
        if !ok {
            bail!("example {name} runs under `{}`", want.name());
        }
        run_example(cfg, &ex, &mut report)?;
        return Ok(report);
    }
    match cfg.command {
        Command::Classify => report.classify = Some(classify(cfg)?),
        Command::Normalizer => report.normalizer = Some(normalizer(cfg)?),
        Command::Brink => {
            let pi = read_pi(cfg)?;
            let node = cfg.node.as_deref().ok_or_else(|| anyhow!("--node is required"))?;
            report.brink = Some(brink(&pi, node)?);
        }
        Command::LeechExample => bail!("leech-example needs --example; known examples:\n{}", examples::listing()),
        Command::Shells => report.shells = Some(shells(cfg)?),
    }
    Ok(report)
}

fn run_example(cfg: &RunConfig, ex: &Example, report: &mut Report) -> Result<()> {
    match &ex.kind {
        ExampleKind::Adjacency { pairs } => {
            let mut c = ClassifyReport::default();
            for (j, s) in pairs.iter() {
                let jd = j.parse::<SphericalType>()?.standard_diagram();
                let sd = s.parse::<SphericalType>()?.standard_diagram();
                c.isometries.push(isometry_report(&jd, &sd, &cfg.r, cfg.oracle_limit)?);
            }
            report.classify = Some(c);
        }
        ExampleKind::Scan { types } => {
            report.classify = Some(ClassifyReport {
                scan: scan(&types.iter().map(|s| s.to_string()).collect::<Vec<_>>())?,
                ..ClassifyReport::default()
            });
        }
        ExampleKind::Brink { pi, node } => {
            report.brink = Some(brink(&parse_diagram(pi)?, node)?);
        }
        ExampleKind::Finite {
            pi,
            j,
            gamma_j,
            r,
            gamma_pi,
        } => {
            let pi = parse_diagram(pi)?;
            let names: Vec<String> = j.iter().map(|s| s.to_string()).collect();
            report.normalizer = Some(finite_normalizer(cfg, &pi, &names, gamma_j, r, gamma_pi)?);
        }
        ExampleKind::Leech { j, gamma_j, r } => {
            let leech = leech(cfg)?;
            let points = match j {
                LeechJ::Type(t) => find_configuration(&leech, &t.parse()?, Selector::FirstFound)?,
                LeechJ::Kondo => kondo_configuration(&leech)?,
            };
            let jd = match j {
                LeechJ::Type(t) => t.parse::<SphericalType>()?.standard_diagram(),
                LeechJ::Kondo => points.diagram(),
            };
            let config = ParabolicConfig::new(jd.clone(), gamma_j.resolve(&jd)?, r.resolve(&jd)?)?;
            report.normalizer = Some(normalize(cfg, &leech, &config, &points.points, "leech".into(), "Λ.Aut(Λ)".into())?);
        }
    }
    Ok(())
}

fn read_pi(cfg: &RunConfig) -> Result<CoxeterDiagram> {
    let path = cfg.pi.as_deref().ok_or_else(|| anyhow!("--pi is required"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading diagram file {path}"))?;
    parse_diagram(&text).with_context(|| format!("parsing {path}"))
}

/// A type such as `E6`, or a diagram file.
fn read_j_diagram(text: &str) -> Result<CoxeterDiagram> {
    if let Ok(t) = text.parse::<SphericalType>() {
        return Ok(t.standard_diagram());
    }
    let body = std::fs::read_to_string(text).with_context(|| format!("{text:?} is neither a type nor a readable file"))?;
    Ok(parse_diagram(&body)?)
}

fn leech(cfg: &RunConfig) -> Result<Leech> {
    let mut l = Leech::new(cfg.cache.clone())?;
    if let Some(b) = cfg.budget {
        l = l.with_budget(b);
    }
    Ok(l)
}

fn classify(cfg: &RunConfig) -> Result<ClassifyReport> {
    let mut c = ClassifyReport::default();
    if !cfg.scan.is_empty() {
        c.scan = scan(&cfg.scan)?;
    }
    if cfg.pi.is_none() {
        if cfg.scan.is_empty() {
            bail!("--pi is required");
        }
        return Ok(c);
    }
    let d = read_pi(cfg)?;
    c.diagram = Some(serialize_diagram(&d));
    c.automorphism_group_order = Some(automorphism_group(&d).order);
    if let Some(t) = classify_spherical(&d) {
        c.spherical_type = Some(t.to_string());
        c.coxeter_group_order = Some(t.group_order());
        let nu = opposition_involution(&d)?;
        c.opposition = Some(
            (0..d.len())
                .map(|i| (d.name(i).to_string(), d.name(nu.apply(i)).to_string()))
                .collect(),
        );
    }
    if let Some(j) = &cfg.j {
        let jd = read_j_diagram(j)?;
        if classify_spherical(&d).is_none() {
            bail!(coxnorm::Error::NotSpherical("S".into()));
        }
        c.isometries.push(isometry_report(&jd, &d, &cfg.r, cfg.oracle_limit)?);
    }
    Ok(c)
}

fn isometry_report(j: &CoxeterDiagram, s: &CoxeterDiagram, r: &GroupSpec, oracle_limit: u128) -> Result<IsometryReport> {
    let maps = isometries(j, s);
    let index = |k: &coxnorm::diagram::Isometry| maps.binary_search(k).ok();
    let mut adjacency = Vec::new();
    for (a, k) in maps.iter().enumerate() {
        for (node, k2) in adjacent_isometries(s, k) {
            let b = index(&k2).ok_or_else(|| anyhow!("adjacent map is not an isometry"))?;
            adjacency.push(AdjacencyEntry {
                from: a,
                to: b,
                via: s.name(node).to_string(),
            });
        }
    }
    let to_indices = |classes: &[coxnorm::parabolic::AssociateClass]| -> Vec<Vec<usize>> {
        classes
            .iter()
            .map(|c| c.members.iter().filter_map(index).collect())
            .collect()
    };
    let classes = to_indices(&associate_classes(j, s));
    let (oracle, oracle_note) = match oracle_classes(j, s, oracle_limit) {
        Ok(o) => (Some(to_indices(&o)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let r_elems: BTreeSet<Perm> = r.resolve(j)?.elements()?.into_iter().collect();
    let full: BTreeSet<Perm> = automorphism_group(j).elements()?.into_iter().collect();
    Ok(IsometryReport {
        j: classify_spherical(j).map(|t| t.to_string()).unwrap_or_default(),
        s: classify_spherical(s).map(|t| t.to_string()).unwrap_or_default(),
        maps: maps
            .iter()
            .map(|k| k.0.iter().map(|&x| s.name(x).to_string()).collect())
            .collect(),
        adjacency,
        oracle_agrees: oracle.as_ref().map(|o| *o == classes),
        classes,
        oracle_note,
        r_order: r_elems.len(),
        reflective: maps.iter().map(|k| is_r_reflective(s, k, &r_elems)).collect(),
        reflective_full_aut: maps.iter().map(|k| is_r_reflective(s, k, &full)).collect(),
    })
}

fn scan(types: &[String]) -> Result<Vec<ScanEntry>> {
    types
        .iter()
        .map(|t| {
            let ty: SphericalType = t.parse()?;
            let r = larger_extension_scan(&ty.standard_diagram())?;
            Ok(ScanEntry {
                j: ty.to_string(),
                all_reflective: r.witness.is_none(),
                targets: r.targets,
                isometries: r.isometries,
                witness: r.witness.map(|w| ScanWitnessEntry {
                    target: w.target.to_string(),
                    isometry: w.isometry.0,
                }),
            })
        })
        .collect()
}

fn brink(pi: &CoxeterDiagram, node: &str) -> Result<BrinkReport> {
    let v = pi.index_of(node).ok_or_else(|| anyhow!("unknown node {node:?}"))?;
    let graph = brink_graph(pi, v)?;
    let amb = FiniteAmbient::trivial(pi.clone());
    let a1 = "A1".parse::<SphericalType>()?.standard_diagram();
    let config = ParabolicConfig::trivial(a1)?;
    let q = build_component(&amb, &config, &[v], &BuildOptions::default())?;
    let p = simplify(&fundamental_group(&amb, &q, 0)?)?;
    let category_free_rank = p.relators.is_empty().then_some(p.generators.len());
    Ok(BrinkReport {
        agrees: category_free_rank == Some(graph.free_rank),
        objects: q.objects.len(),
        category_free_rank,
        graph,
    })
}

fn normalizer(cfg: &RunConfig) -> Result<NormalizerReport> {
    let pi = cfg.pi.as_deref().ok_or_else(|| anyhow!("--pi is required"))?;
    let j = cfg.j.as_deref().ok_or_else(|| anyhow!("--j is required"))?;
    if pi == "leech" {
        let leech = leech(cfg)?;
        let t: SphericalType = j.parse().with_context(|| format!("--j {j:?} is not a spherical type"))?;
        let points = find_configuration(&leech, &t, Selector::FirstFound)?;
        let jd = t.standard_diagram();
        let config = ParabolicConfig::new(jd.clone(), cfg.gamma_j.resolve(&jd)?, cfg.r.resolve(&jd)?)?;
        return normalize(cfg, &leech, &config, &points.points, "leech".into(), "Λ.Aut(Λ)".into());
    }
    let d = read_pi(cfg)?;
    let names: Vec<String> = j.split(',').map(|s| s.trim().to_string()).collect();
    finite_normalizer(cfg, &d, &names, &cfg.gamma_j, &cfg.r, &cfg.gamma_pi)
}

fn finite_normalizer(
    cfg: &RunConfig,
    pi: &CoxeterDiagram,
    names: &[String],
    gamma_j: &GroupSpec,
    r: &GroupSpec,
    gamma_pi: &GroupSpec,
) -> Result<NormalizerReport> {
    let nodes = names
        .iter()
        .map(|n| pi.index_of(n).ok_or_else(|| anyhow!("unknown node {n:?}")))
        .collect::<Result<Vec<_>>>()?;
    let jd = pi.induced(&nodes);
    let config = ParabolicConfig::new(jd.clone(), gamma_j.resolve(&jd)?, r.resolve(&jd)?)?;
    let gp = gamma_pi.resolve(pi)?;
    let amb = FiniteAmbient::new(pi.clone(), gp.clone())?;
    let mut rep = normalize(cfg, &amb, &config, &nodes, serialize_diagram(pi), format!("order {}", gp.order))?;
    if names.len() == 1 && gp.order == 1 {
        rep.brink = Some(brink_graph(pi, nodes[0])?);
    }
    Ok(rep)
}

fn normalize<A: Ambient>(
    cfg: &RunConfig,
    amb: &A,
    config: &ParabolicConfig,
    points: &[A::Point],
    ambient: String,
    gamma_pi: String,
) -> Result<NormalizerReport> {
    let opts = BuildOptions {
        reflectivity_filter: cfg.reflectivity_filter,
        max_rank: cfg.max_rank,
        ..BuildOptions::default()
    };
    let q = build_component(amb, config, points, &opts)?;
    verify_axioms(amb, &q, 1000)?;
    let tree = cfg.tree_seed.map(|s| random_tree(&q, s)).transpose()?;
    let category = analyze_with(amb, &q, tree.as_deref())?;
    Ok(NormalizerReport {
        ambient,
        j: classify_spherical(&config.j).map(|t| t.to_string()).unwrap_or_default(),
        j_points: points.iter().map(|p| amb.point_coords(p)).collect(),
        gamma_j_order: config.gamma_j.order,
        r_order: config.r.order,
        gamma_pi,
        reflectivity_filter: cfg.reflectivity_filter,
        max_rank: cfg.max_rank,
        tree_seed: cfg.tree_seed,
        axioms_verified: true,
        category,
        brink: None,
    })
}

fn shells(cfg: &RunConfig) -> Result<ShellsReport> {
    let leech = leech(cfg)?;
    Ok(ShellsReport {
        octads: leech.code().octads().len(),
        shell4: leech.shell4().len(),
        shell6: leech.shell6()?.len(),
        code_fingerprint: format!("{:016x}", leech.code().fingerprint()),
    })
}
