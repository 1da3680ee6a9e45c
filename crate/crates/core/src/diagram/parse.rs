use super::{CoxeterDiagram, Order};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Parse the text diagram format:
///
/// ```text
/// # comment
/// nodes: a b c
/// edge a b 3
/// edge b c inf
/// ```
pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram> {
    let mut nodes: Option<Vec<String>> = None;
    let mut edges: Vec<(String, String, Order)> = Vec::new();
    let mut seen_pairs = BTreeSet::new();
    let err = |line: usize, message: String| Error::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("nodes:") {
            if nodes.is_some() {
                return Err(err(line_no, "second `nodes:` line".into()));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            let mut uniq = BTreeSet::new();
            for n in &list {
                if !uniq.insert(n.as_str()) {
                    return Err(err(line_no, format!("duplicate node {n}")));
                }
            }
            nodes = Some(list);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] != "edge" {
            return Err(err(line_no, format!("unexpected `{}`", toks[0])));
        }
        if toks.len() != 4 {
            return Err(err(line_no, "expected `edge <id> <id> <m>`".into()));
        }
        let Some(ns) = nodes.as_ref() else {
            return Err(err(line_no, "edge before `nodes:` line".into()));
        };
        let (a, b) = (toks[1], toks[2]);
        for x in [a, b] {
            if !ns.iter().any(|n| n == x) {
                return Err(err(line_no, format!("unknown node {x}")));
            }
        }
        if a == b {
            return Err(err(line_no, format!("self-edge on {a}")));
        }
        let m = match toks[3] {
            "inf" => Order::Infinite,
            t => {
                let m: u32 = t
                    .parse()
                    .map_err(|_| err(line_no, format!("bad bond order `{t}`")))?;
                if m < 3 {
                    return Err(err(line_no, format!("bond order {m} < 3")));
                }
                Order::Finite(m)
            }
        };
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen_pairs.insert((key.0.to_string(), key.1.to_string())) {
            return Err(err(line_no, format!("repeated edge {a} {b}")));
        }
        edges.push((a.to_string(), b.to_string(), m));
    }
    let nodes = nodes.ok_or_else(|| err(0, "missing `nodes:` line".into()))?;
    CoxeterDiagram::new(&nodes, &edges)
}

/// Inverse of [`parse_diagram`]: nodes sorted, edges sorted by endpoints.
pub fn serialize_diagram(d: &CoxeterDiagram) -> String {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d.name(a).cmp(d.name(b)));
    let mut out = String::from("nodes:");
    for &i in &order {
        out.push(' ');
        out.push_str(d.name(i));
    }
    out.push('\n');
    let mut edges: Vec<(&str, &str, Order)> = d
        .edges()
        .into_iter()
        .map(|(i, j, m)| {
            let (a, b) = (d.name(i), d.name(j));
            if a < b {
                (a, b, m)
            } else {
                (b, a, m)
            }
        })
        .collect();
    edges.sort();
    for (a, b, m) in edges {
        out.push_str(&format!("edge {a} {b} {m}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a3_with_comments() {
        let d = parse_diagram("# path\nnodes: a b c\nedge a b 3\nedge b c 3 # tail\n").unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.order(0, 1), Order::Finite(3));
        assert_eq!(d.order(0, 2), Order::COMMUTE);
    }

    #[test]
    fn single_node() {
        let d = parse_diagram("nodes: a").unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.edges().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_diagram("nodes: a\nedge a a 3") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_diagram("nodes: a a").is_err());
        assert!(parse_diagram("nodes: a b\nedge a b 2").is_err());
        assert!(parse_diagram("nodes: a b\nedge a b x").is_err());
        assert!(parse_diagram("edge a b 3").is_err());
        assert!(parse_diagram("nodes: a b\nedge a b 3\nedge b a 4").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "nodes: x a m\nedge x a inf\nedge m a 5\n";
        let d = parse_diagram(text).unwrap();
        let s = serialize_diagram(&d);
        assert_eq!(s, "nodes: a m x\nedge a m 5\nedge a x inf\n");
        assert_eq!(parse_diagram(&s).unwrap(), d);
    }
}
