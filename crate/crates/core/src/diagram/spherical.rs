use super::{node_name, CoxeterDiagram, Order};
use crate::error::{Error, Result};
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// An irreducible spherical Coxeter diagram.
///
/// Constructors normalize the low-rank coincidences, so `B1`, `D3`, `E5`,
/// `I2(3)` and friends never appear as values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Irreducible {
    A(u32),
    B(u32),
    D(u32),
    E(u32),
    F4,
    H(u32),
    I2(u32),
}

use Irreducible::*;

impl Irreducible {
    pub fn rank(self) -> usize {
        match self {
            A(n) | B(n) | D(n) | E(n) | H(n) => n as usize,
            F4 => 4,
            I2(_) => 2,
        }
    }

    /// Order of the Coxeter group.
    pub fn group_order(self) -> u128 {
        let fact = |n: u32| (1..=n as u128).product::<u128>();
        match self {
            A(n) => fact(n + 1),
            B(n) => (1u128 << n) * fact(n),
            D(n) => (1u128 << (n - 1)) * fact(n),
            E(6) => 51_840,
            E(7) => 2_903_040,
            E(8) => 696_729_600,
            E(_) => unreachable!(),
            F4 => 1_152,
            H(3) => 120,
            H(4) => 14_400,
            H(_) => unreachable!(),
            I2(m) => 2 * m as u128,
        }
    }

    /// True when every bond is 2, 3, 4 or 6.
    pub fn is_crystallographic(self) -> bool {
        match self {
            H(_) => false,
            I2(m) => m == 6,
            _ => true,
        }
    }

    /// Bond order between standard nodes `i < j`.
    fn standard_order(self, i: usize, j: usize) -> Order {
        let n = self.rank();
        let three = Order::Finite(3);
        let path = |i: usize, j: usize| j == i + 1;
        match self {
            A(_) => {
                if path(i, j) {
                    three
                } else {
                    Order::COMMUTE
                }
            }
            B(_) => {
                if path(i, j) {
                    if j == n - 1 {
                        Order::Finite(4)
                    } else {
                        three
                    }
                } else {
                    Order::COMMUTE
                }
            }
            D(_) => {
                if (path(i, j) && j <= n - 2) || (i == n - 3 && j == n - 1) {
                    three
                } else {
                    Order::COMMUTE
                }
            }
            E(_) => {
                if (path(i, j) && j <= n - 2) || (i == 2 && j == n - 1) {
                    three
                } else {
                    Order::COMMUTE
                }
            }
            F4 => match (i, j) {
                (1, 2) => Order::Finite(4),
                (0, 1) | (2, 3) => three,
                _ => Order::COMMUTE,
            },
            H(_) => match (i, j) {
                (0, 1) => Order::Finite(5),
                _ if path(i, j) => three,
                _ => Order::COMMUTE,
            },
            I2(m) => Order::Finite(m),
        }
    }

    /// The diagram in standard labelling, nodes `n00, n01, …`.
    pub fn standard_diagram(self) -> CoxeterDiagram {
        CoxeterDiagram::from_fn(self.rank(), node_name, |i, j| self.standard_order(i, j))
    }

    /// Opposition involution on standard labels.
    pub fn opposition(self) -> Perm {
        let n = self.rank();
        match self {
            A(_) => Perm((0..n).rev().collect()),
            D(k) if k % 2 == 1 => {
                let mut p = Perm::identity(n);
                p.0.swap(n - 2, n - 1);
                p
            }
            E(6) => Perm(vec![4, 3, 2, 1, 0, 5]),
            I2(m) if m % 2 == 1 => Perm(vec![1, 0]),
            _ => Perm::identity(n),
        }
    }

    /// Normalize a family letter and parameter, applying the low-rank
    /// identifications. Returns the resulting (possibly reducible) list.
    pub fn normalize(family: char, n: u32) -> Result<Vec<Irreducible>> {
        let bad = || Error::invalid(format!("no spherical diagram {family}{n}"));
        Ok(match (family, n) {
            (_, 0) => return Err(bad()),
            ('A', n) => vec![A(n)],
            ('B' | 'C', 1) => vec![A(1)],
            ('B' | 'C', n) => vec![B(n)],
            ('D', 1) => vec![A(1)],
            ('D', 2) => vec![A(1), A(1)],
            ('D', 3) => vec![A(3)],
            ('D', n) => vec![D(n)],
            ('E', 1) => vec![A(1)],
            ('E', 2) => vec![A(1), A(1)],
            ('E', 3) => vec![A(2), A(1)],
            ('E', 4) => vec![A(4)],
            ('E', 5) => vec![D(5)],
            ('E', n @ 6..=8) => vec![E(n)],
            ('F', 4) => vec![F4],
            ('G', 2) => vec![I2(6)],
            ('H', 1) => vec![A(1)],
            ('H', 2) => vec![I2(5)],
            ('H', n @ 3..=4) => vec![H(n)],
            ('I', 1) => vec![A(1)],
            ('I', 2) => vec![A(1), A(1)],
            ('I', 3) => vec![A(2)],
            ('I', 4) => vec![B(2)],
            ('I', m) => vec![I2(m)],
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E(n) => write!(f, "E{n}"),
            F4 => write!(f, "F4"),
            H(n) => write!(f, "H{n}"),
            I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A multiset of irreducible types, sorted by decreasing rank then name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphericalType {
    components: Vec<Irreducible>,
}

fn sort_key(c: &Irreducible) -> (std::cmp::Reverse<usize>, Irreducible) {
    (std::cmp::Reverse(c.rank()), *c)
}

impl SphericalType {
    pub fn new(mut components: Vec<Irreducible>) -> Self {
        components.sort_by_key(sort_key);
        SphericalType { components }
    }

    pub fn empty() -> Self {
        SphericalType { components: vec![] }
    }

    pub fn components(&self) -> &[Irreducible] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn group_order(&self) -> u128 {
        self.components.iter().map(|c| c.group_order()).product()
    }

    pub fn is_crystallographic(&self) -> bool {
        self.components.iter().all(|c| c.is_crystallographic())
    }

    /// Standard diagram of the product, components laid out in order.
    pub fn standard_diagram(&self) -> CoxeterDiagram {
        let mut offsets = Vec::new();
        let mut total = 0;
        for c in &self.components {
            offsets.push(total);
            total += c.rank();
        }
        let locate = |i: usize| {
            let k = offsets.iter().rposition(|&o| o <= i).unwrap();
            (k, i - offsets[k])
        };
        CoxeterDiagram::from_fn(total, node_name, |i, j| {
            let ((ki, ii), (kj, jj)) = (locate(i), locate(j));
            if ki == kj {
                self.components[ki].standard_order(ii, jj)
            } else {
                Order::COMMUTE
            }
        })
    }
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "empty");
        }
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut k = 1;
            while i + k < self.components.len() && self.components[i + k] == c {
                k += 1;
            }
            if k == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

impl FromStr for SphericalType {
    type Err = Error;

    /// Accepts products such as `A3A1^6`, `E6`, `I2(5)`, `A2 x A1`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "empty" || s.is_empty() {
            return Ok(SphericalType::empty());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut comps = Vec::new();
        let bad = |msg: &str| Error::invalid(format!("bad type `{s}`: {msg}"));
        let read_num = |pos: &mut usize| -> Option<u32> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            chars[start..*pos].iter().collect::<String>().parse().ok()
        };
        while pos < chars.len() {
            let c = chars[pos];
            if c.is_whitespace() || c == 'x' || c == '×' || c == '*' {
                pos += 1;
                continue;
            }
            let family = c.to_ascii_uppercase();
            if !"ABCDEFGHI".contains(family) {
                return Err(bad("unknown family"));
            }
            pos += 1;
            let parts = if family == 'I' && chars.get(pos) == Some(&'2') && chars.get(pos + 1) == Some(&'(') {
                pos += 2;
                let m = read_num(&mut pos).ok_or_else(|| bad("missing I2 parameter"))?;
                if chars.get(pos) != Some(&')') {
                    return Err(bad("missing `)`"));
                }
                pos += 1;
                Irreducible::normalize('I', m)?
            } else {
                let n = read_num(&mut pos).ok_or_else(|| bad("missing rank"))?;
                Irreducible::normalize(family, n)?
            };
            let mut times = 1;
            if chars.get(pos) == Some(&'^') {
                pos += 1;
                times = read_num(&mut pos).ok_or_else(|| bad("missing exponent"))?;
            }
            for _ in 0..times {
                comps.extend(parts.iter().copied());
            }
        }
        Ok(SphericalType::new(comps))
    }
}

/// One connected component of a spherical diagram.
///
/// `nodes[k]` is the node of the ambient diagram playing the role of the
/// standard label `k` of `kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalComponent {
    pub kind: Irreducible,
    pub nodes: Vec<usize>,
}

/// Classify each connected component, or `None` if some component is not
/// spherical. Components are listed by smallest node.
pub fn classify_components(d: &CoxeterDiagram) -> Option<Vec<SphericalComponent>> {
    d.components()
        .into_iter()
        .map(|c| classify_connected(d, &c))
        .collect()
}

/// The spherical type of `d`, or `None` when `d` is not spherical.
pub fn classify_spherical(d: &CoxeterDiagram) -> Option<SphericalType> {
    classify_components(d).map(|cs| SphericalType::new(cs.into_iter().map(|c| c.kind).collect()))
}

/// `ν_S = −σ_S` as a permutation of the nodes of a spherical diagram.
pub fn opposition_involution(d: &CoxeterDiagram) -> Result<Perm> {
    let comps = classify_components(d)
        .ok_or_else(|| Error::NotSpherical(format!("{:?}", d)))?;
    let mut p = Perm::identity(d.len());
    for c in comps {
        let o = c.kind.opposition();
        for (k, &node) in c.nodes.iter().enumerate() {
            p.0[node] = c.nodes[o.apply(k)];
        }
    }
    Ok(p)
}

/// Walk a path component from endpoint `start`.
fn walk_path(d: &CoxeterDiagram, comp: &[usize], start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while out.len() < comp.len() {
        let next = d.neighbors(cur).find(|&y| y != prev).unwrap();
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

fn classify_connected(d: &CoxeterDiagram, comp: &[usize]) -> Option<SphericalComponent> {
    let n = comp.len();
    let mk = |kind, nodes| Some(SphericalComponent { kind, nodes });
    if n == 1 {
        return mk(A(1), comp.to_vec());
    }
    let mut edge_count = 0;
    let mut non_simple = Vec::new();
    for (a, &i) in comp.iter().enumerate() {
        for &j in &comp[a + 1..] {
            let m = d.order(i, j);
            if m.is_edge() {
                edge_count += 1;
                match m {
                    Order::Infinite => return None,
                    Order::Finite(3) => {}
                    Order::Finite(k) => non_simple.push((i, j, k)),
                }
            }
        }
    }
    if edge_count != n - 1 {
        return None;
    }
    if n == 2 {
        let m = d.order(comp[0], comp[1]).finite()?;
        let kind = Irreducible::normalize('I', m).ok()?;
        return mk(kind[0], comp.to_vec());
    }
    let degrees: Vec<usize> = comp.iter().map(|&i| d.degree(i)).collect();
    let branch: Vec<usize> = comp
        .iter()
        .zip(&degrees)
        .filter(|(_, &g)| g >= 3)
        .map(|(&i, _)| i)
        .collect();
    if degrees.iter().any(|&g| g > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&centre) = branch.first() {
        if !non_simple.is_empty() {
            return None;
        }
        // arms as node lists walking away from the centre
        let mut arms: Vec<Vec<usize>> = d
            .neighbors(centre)
            .map(|first| {
                let mut arm = vec![first];
                let mut prev = centre;
                let mut cur = first;
                while let Some(next) = d.neighbors(cur).find(|&y| y != prev) {
                    prev = cur;
                    cur = next;
                    arm.push(cur);
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| (a.len(), a[0]));
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        return match lens.as_slice() {
            [1, 1, k] => {
                // D_{k+3}: long arm reversed, centre, then the two leaves.
                // For D4 every arm has length one; the arm sort puts the
                // largest-index leaf last, which becomes the "long" arm.
                let mut nodes: Vec<usize> = arms[2].iter().rev().copied().collect();
                nodes.push(centre);
                nodes.push(arms[0][0]);
                nodes.push(arms[1][0]);
                mk(D(*k as u32 + 3), nodes)
            }
            [1, 2, k @ 2..=4] => {
                let (left, right) = if *k == 2 && arms[2][0] < arms[1][0] {
                    (&arms[2], &arms[1])
                } else {
                    (&arms[1], &arms[2])
                };
                let mut nodes: Vec<usize> = left.iter().rev().copied().collect();
                nodes.push(centre);
                nodes.extend(right.iter().copied());
                nodes.push(arms[0][0]);
                mk(E(*k as u32 + 4), nodes)
            }
            _ => None,
        };
    }
    // path
    let ends: Vec<usize> = comp
        .iter()
        .zip(&degrees)
        .filter(|(_, &g)| g == 1)
        .map(|(&i, _)| i)
        .collect();
    let (e0, e1) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
    let p0 = walk_path(d, comp, e0);
    let p1 = walk_path(d, comp, e1);
    match non_simple.as_slice() {
        [] => mk(A(n as u32), p0),
        [(i, j, k)] => {
            let at_start = |p: &[usize]| (p[0] == *i && p[1] == *j) || (p[0] == *j && p[1] == *i);
            match k {
                4 => {
                    if n == 4 {
                        let mid = |p: &[usize]| {
                            (p[1] == *i && p[2] == *j) || (p[1] == *j && p[2] == *i)
                        };
                        if mid(&p0) {
                            return mk(F4, p0);
                        }
                    }
                    // B_n: the 4 sits on the last edge of the standard path
                    if at_start(&p1) {
                        mk(B(n as u32), p0)
                    } else if at_start(&p0) {
                        mk(B(n as u32), p1)
                    } else {
                        None
                    }
                }
                5 if n <= 4 => {
                    if at_start(&p0) {
                        mk(H(n as u32), p0)
                    } else if at_start(&p1) {
                        mk(H(n as u32), p1)
                    } else {
                        None
                    }
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// All node subsets of `pi` that contain `containing`, have at most
/// `max_rank` nodes and induce a spherical diagram. Each subset is sorted;
/// subsets are emitted in depth-first lexicographic order.
pub fn spherical_subdiagrams(
    pi: &CoxeterDiagram,
    containing: &[usize],
    max_rank: usize,
) -> Vec<Vec<usize>> {
    let mut base: Vec<usize> = containing.to_vec();
    base.sort_unstable();
    base.dedup();
    let mut out = Vec::new();
    if base.len() > max_rank || classify_spherical(&pi.induced(&base)).is_none() {
        return out;
    }
    let extra: Vec<usize> = (0..pi.len()).filter(|x| !base.contains(x)).collect();
    let mut chosen = Vec::new();
    grow(pi, &base, &extra, 0, &mut chosen, max_rank, &mut out);
    out
}

fn grow(
    pi: &CoxeterDiagram,
    base: &[usize],
    extra: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    max_rank: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let mut set: Vec<usize> = base.iter().chain(chosen.iter()).copied().collect();
    set.sort_unstable();
    out.push(set);
    if base.len() + chosen.len() == max_rank {
        return;
    }
    for k in from..extra.len() {
        let x = extra[k];
        if base
            .iter()
            .chain(chosen.iter())
            .any(|&y| pi.order(x, y) == Order::Infinite)
        {
            continue;
        }
        chosen.push(x);
        let mut set: Vec<usize> = base.iter().chain(chosen.iter()).copied().collect();
        set.sort_unstable();
        if classify_spherical(&pi.induced(&set)).is_some() {
            grow(pi, base, extra, k + 1, chosen, max_rank, out);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn ty(s: &str) -> SphericalType {
        s.parse().unwrap()
    }

    #[test]
    fn standard_diagrams_classify_as_themselves() {
        let kinds = [
            A(1), A(2), A(5), B(2), B(3), B(6), D(4), D(5), D(8), E(6), E(7), E(8), F4, H(3),
            H(4), I2(5), I2(6), I2(7),
        ];
        for k in kinds {
            let d = k.standard_diagram();
            let comps = classify_components(&d).unwrap();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].kind, k);
            // the reported labelling reproduces the standard orders
            let nodes = &comps[0].nodes;
            for i in 0..d.len() {
                for j in 0..d.len() {
                    assert_eq!(d.order(nodes[i], nodes[j]), d.order(i, j), "{k}");
                }
            }
        }
    }

    #[test]
    fn paths_triangles_and_pairs() {
        let a3 = parse_diagram("nodes: a b c\nedge a b 3\nedge b c 3").unwrap();
        assert_eq!(classify_spherical(&a3), Some(ty("A3")));
        let tri = parse_diagram("nodes: a b c\nedge a b 3\nedge b c 3\nedge a c 3").unwrap();
        assert_eq!(classify_spherical(&tri), None);
        let two = parse_diagram("nodes: a b").unwrap();
        assert_eq!(classify_spherical(&two).unwrap().to_string(), "A1^2");
        let inf = parse_diagram("nodes: a b\nedge a b inf").unwrap();
        assert_eq!(classify_spherical(&inf), None);
    }

    #[test]
    fn non_spherical_shapes() {
        // affine B3~ style: two 4-bonds
        let d = CoxeterDiagram::with_edges(
            3,
            &[(0, 1, Order::Finite(4)), (1, 2, Order::Finite(4))],
        );
        assert!(classify_spherical(&d).is_none());
        // 5 in the middle of a 4-path
        let d = CoxeterDiagram::with_edges(
            4,
            &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(5)), (2, 3, Order::Finite(3))],
        );
        assert!(classify_spherical(&d).is_none());
        // E9-shaped tree
        let d = CoxeterDiagram::with_edges(
            9,
            &[
                (0, 1, Order::Finite(3)),
                (1, 2, Order::Finite(3)),
                (2, 3, Order::Finite(3)),
                (3, 4, Order::Finite(3)),
                (4, 5, Order::Finite(3)),
                (5, 6, Order::Finite(3)),
                (6, 7, Order::Finite(3)),
                (2, 8, Order::Finite(3)),
            ],
        );
        assert!(classify_spherical(&d).is_none());
        // H5
        let d = CoxeterDiagram::with_edges(
            5,
            &[
                (0, 1, Order::Finite(5)),
                (1, 2, Order::Finite(3)),
                (2, 3, Order::Finite(3)),
                (3, 4, Order::Finite(3)),
            ],
        );
        assert!(classify_spherical(&d).is_none());
    }

    #[test]
    fn aliases_normalize() {
        assert_eq!(ty("D3"), ty("A3"));
        assert_eq!(ty("B1"), ty("A1"));
        assert_eq!(ty("D2"), ty("A1^2"));
        assert_eq!(ty("I2(3)"), ty("A2"));
        assert_eq!(ty("I2(4)"), ty("B2"));
        assert_eq!(ty("G2").to_string(), "I2(6)");
        assert_eq!(ty("E5"), ty("D5"));
        assert_eq!(ty("A1 A3 A1^5").to_string(), "A3A1^6");
        assert!("Q4".parse::<SphericalType>().is_err());
        assert!("A0".parse::<SphericalType>().is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["A3A1^6", "A5A1^5", "E6", "I2(5)", "D4^2B2", "empty"] {
            assert_eq!(ty(s).to_string(), s);
        }
    }

    #[test]
    fn opposition_examples() {
        let a3 = ty("A3").standard_diagram();
        assert_eq!(opposition_involution(&a3).unwrap(), Perm(vec![2, 1, 0]));
        let e7 = ty("E7").standard_diagram();
        assert!(opposition_involution(&e7).unwrap().is_identity());
        let a2a1 = ty("A2A1").standard_diagram();
        assert_eq!(opposition_involution(&a2a1).unwrap(), Perm(vec![1, 0, 2]));
        let d5 = ty("D5").standard_diagram();
        assert_eq!(opposition_involution(&d5).unwrap(), Perm(vec![0, 1, 2, 4, 3]));
        let tri = CoxeterDiagram::with_edges(
            3,
            &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(3)), (0, 2, Order::Finite(3))],
        );
        assert!(opposition_involution(&tri).is_err());
    }

    #[test]
    fn subdiagram_examples() {
        let a3 = ty("A3").standard_diagram();
        assert_eq!(
            spherical_subdiagrams(&a3, &[1], 2),
            vec![vec![1], vec![0, 1], vec![1, 2]]
        );
        let tri = CoxeterDiagram::with_edges(
            3,
            &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(3)), (0, 2, Order::Finite(3))],
        );
        let subs = spherical_subdiagrams(&tri, &[], 3);
        assert_eq!(subs.len(), 7);
        assert!(!subs.contains(&vec![0, 1, 2]));
    }

    #[test]
    fn group_orders() {
        assert_eq!(ty("D5").group_order(), 1920);
        assert_eq!(ty("D6").group_order(), 23040);
        assert_eq!(ty("A3A1^2").group_order(), 96);
        assert_eq!(ty("B3").group_order(), 48);
    }
}
