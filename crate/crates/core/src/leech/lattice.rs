//! Leech lattice vectors in the scaling where `norm(x) = Σ x_i² / 8`.
//!
//! `x ∈ Z^24` lies in the lattice iff all coordinates share a parity `m`,
//! `Σ x_i ≡ 4m (mod 8)`, and the positions with `x_i ≡ 2 + m (mod 4)` form
//! a Golay codeword.

use super::golay::GolayCode;
use crate::diagram::Order;
use crate::par;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A lattice vector with exact integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeechPoint(pub [i32; 24]);

/// A compact shell vector.
pub type ShellVec = [i8; 24];

impl LeechPoint {
    pub const ZERO: LeechPoint = LeechPoint([0; 24]);

    pub fn from_shell(v: &ShellVec) -> Self {
        LeechPoint(v.map(|x| x as i32))
    }

    /// `Σ x_i²`, i.e. eight times the norm.
    pub fn norm8(&self) -> i64 {
        self.0.iter().map(|&x| (x as i64) * (x as i64)).sum()
    }

    pub fn norm(&self) -> i64 {
        self.norm8() / 8
    }

    pub fn dot8(&self, other: &LeechPoint) -> i64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    pub fn add(&self, other: &LeechPoint) -> LeechPoint {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(other.0.iter()) {
            *x += y;
        }
        LeechPoint(r)
    }

    pub fn sub(&self, other: &LeechPoint) -> LeechPoint {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(other.0.iter()) {
            *x -= y;
        }
        LeechPoint(r)
    }

    pub fn neg(&self) -> LeechPoint {
        LeechPoint(self.0.map(|x| -x))
    }

    /// `(a − b)²` in norm units.
    pub fn dist2(&self, other: &LeechPoint) -> i64 {
        self.sub(other).norm()
    }

    pub fn to_shell(&self) -> Option<ShellVec> {
        let mut out = [0i8; 24];
        for (o, &x) in out.iter_mut().zip(self.0.iter()) {
            *o = i8::try_from(x).ok()?;
        }
        Some(out)
    }
}

impl fmt::Debug for LeechPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub fn dot8_shell(a: &ShellVec, b: &ShellVec) -> i32 {
    let mut s = 0i32;
    for i in 0..24 {
        s += a[i] as i32 * b[i] as i32;
    }
    s
}

#[inline]
pub fn dot8_mixed(a: &ShellVec, b: &[i32; 24]) -> i64 {
    let mut s = 0i64;
    for i in 0..24 {
        s += a[i] as i64 * b[i] as i64;
    }
    s
}

pub fn is_lattice_vector(code: &GolayCode, x: &[i32; 24]) -> bool {
    let m = x[0].rem_euclid(2);
    if x.iter().any(|&v| v.rem_euclid(2) != m) {
        return false;
    }
    let sum: i64 = x.iter().map(|&v| v as i64).sum();
    if sum.rem_euclid(8) != 4 * m as i64 {
        return false;
    }
    let target = 2 + m;
    let mut w = 0u32;
    for (i, &v) in x.iter().enumerate() {
        if v.rem_euclid(4) == target {
            w |= 1 << i;
        }
    }
    code.contains(w)
}

/// Coxeter bond between the simple roots attached to two lattice points:
/// squared distance 0, 4, 6 give orders 1, 2, 3; anything larger gives ∞.
pub fn edge_order(a: &LeechPoint, b: &LeechPoint) -> Order {
    match a.dist2(b) {
        0 => Order::ONE,
        4 => Order::COMMUTE,
        6 => Order::Finite(3),
        _ => Order::Infinite,
    }
}

/// Visit every vector of norm `norm` whose shape comes from codeword `c`.
/// For even vectors `c` marks the coordinates `≡ 2 (mod 4)`; for odd ones the
/// coordinates `≡ 3 (mod 4)`.
fn shell_for_codeword(c: u32, norm8: i32, odd: bool, out: &mut Vec<ShellVec>) {
    let w = c.count_ones() as i32;
    let base = if odd { 24 } else { 4 * w };
    if base > norm8 {
        return;
    }
    // magnitudes per position, chosen by distributing the excess
    let mut mag = [0i8; 24];
    for (i, m) in mag.iter_mut().enumerate() {
        let in_c = c >> i & 1 == 1;
        *m = if odd {
            1
        } else if in_c {
            2
        } else {
            0
        };
    }
    fn steps(odd: bool, in_c: bool) -> &'static [(i8, i32)] {
        // (new magnitude, extra Σx² over the base magnitude)
        if odd {
            &[(3, 8), (5, 24), (7, 48), (9, 80)]
        } else if in_c {
            &[(6, 32), (10, 96)]
        } else {
            &[(4, 16), (8, 64)]
        }
    }
    fn distribute(
        pos: usize,
        budget: i32,
        c: u32,
        odd: bool,
        mag: &mut [i8; 24],
        emit: &mut dyn FnMut(&[i8; 24]),
    ) {
        if budget == 0 {
            emit(mag);
            return;
        }
        if pos == 24 {
            return;
        }
        distribute(pos + 1, budget, c, odd, mag, emit);
        let in_c = c >> pos & 1 == 1;
        let old = mag[pos];
        for &(m, extra) in steps(odd, in_c) {
            if extra <= budget {
                mag[pos] = m;
                distribute(pos + 1, budget - extra, c, odd, mag, emit);
            }
        }
        mag[pos] = old;
    }
    let mut emit = |mag: &[i8; 24]| {
        if odd {
            // sign fixed by the residue class
            let mut v = [0i8; 24];
            let mut sum = 0i32;
            for i in 0..24 {
                let three = c >> i & 1 == 1;
                let m = mag[i];
                // m ≡ 1 or 3 (mod 4); choose the sign with the right residue
                let pos_res = (m as i32).rem_euclid(4);
                let want = if three { 3 } else { 1 };
                v[i] = if pos_res == want { m } else { -m };
                sum += v[i] as i32;
            }
            if sum.rem_euclid(8) == 4 {
                out.push(v);
            }
        } else {
            let nz: Vec<usize> = (0..24).filter(|&i| mag[i] != 0).collect();
            let k = nz.len();
            for signs in 0u32..(1 << k) {
                let mut v = [0i8; 24];
                let mut sum = 0i32;
                for (b, &i) in nz.iter().enumerate() {
                    let m = mag[i];
                    v[i] = if signs >> b & 1 == 1 { -m } else { m };
                    sum += v[i] as i32;
                }
                if sum.rem_euclid(8) == 0 {
                    out.push(v);
                }
            }
        }
    };
    distribute(0, norm8 - base, c, odd, &mut mag, &mut emit);
}

/// All lattice vectors of the given norm, ordered by (parity, codeword,
/// magnitude pattern, signs). Even vectors come first.
pub fn generate_shell(code: &GolayCode, norm: u32) -> Vec<ShellVec> {
    let norm8 = 8 * norm as i32;
    let words = code.words();
    let mut out = Vec::new();
    for odd in [false, true] {
        let part = par::flat_map_range(words.len(), 64, |r| {
            let mut v = Vec::new();
            for &c in &words[r] {
                shell_for_codeword(c, norm8, odd, &mut v);
            }
            v
        });
        out.extend(part);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shells() {
        let code = GolayCode::new().unwrap();
        assert!(generate_shell(&code, 2).is_empty());
        let s4 = generate_shell(&code, 4);
        assert_eq!(s4.len(), 196_560);
        for v in s4.iter().step_by(997) {
            let p = LeechPoint::from_shell(v);
            assert!(is_lattice_vector(&code, &p.0));
            assert_eq!(p.norm8(), 32);
        }
    }

    #[test]
    fn membership_and_edges() {
        let code = GolayCode::new().unwrap();
        let mut x = [0i32; 24];
        x[0] = 4;
        x[1] = -4;
        assert!(is_lattice_vector(&code, &x));
        x[1] = 0;
        assert!(!is_lattice_vector(&code, &x));
        let mut y = [1i32; 24];
        y[0] = -3;
        assert!(is_lattice_vector(&code, &y));
        let a = LeechPoint::ZERO;
        let mut b = [0; 24];
        b[0] = 4;
        b[1] = 4;
        assert_eq!(edge_order(&a, &LeechPoint(b)), Order::COMMUTE);
        assert_eq!(edge_order(&a, &a), Order::ONE);
        assert_eq!(edge_order(&a, &LeechPoint(y)), Order::COMMUTE);
        let mut z = [0; 24];
        z[0] = 8;
        assert_eq!(edge_order(&a, &LeechPoint(z)), Order::Infinite);
    }
}
