//! Z-bases of the Leech lattice made of norm-4 vectors, with dual bases for
//! exact coordinates.

use super::lattice::{dot8_mixed, dot8_shell, ShellVec};
use crate::error::{Error, Result};

/// `|det|` of a basis matrix in the √8 scaling: `8^12`.
const UNIMODULAR_DET: i128 = 1 << 36;

#[derive(Clone, Debug)]
pub struct Basis {
    /// Basis vectors, all of norm 4.
    pub rows: Vec<ShellVec>,
    /// Dual vectors: `dot8(rows[i], dual[j]) = 8 δ_ij`.
    pub dual: Vec<[i32; 24]>,
    /// `gram8[i][j] = dot8(rows[i], rows[j])`.
    pub gram8: Vec<[i32; 24]>,
}

/// Fraction-free Gauss–Jordan on `[m | I]`. Returns `(det, adj)` with
/// `m · adj = det · I`, or `None` if `m` is singular.
fn det_adjugate(m: &[[i128; 24]; 24]) -> Result<Option<(i128, Vec<[i128; 24]>)>> {
    let n = 24;
    let mut a: Vec<[i128; 48]> = vec![[0; 48]; n];
    for i in 0..n {
        a[i][..24].copy_from_slice(&m[i]);
        a[i][24 + i] = 1;
    }
    let overflow = || Error::Unsupported("integer overflow in basis elimination".into());
    let mut prev: i128 = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return Ok(None);
        };
        if p != k {
            a.swap(p, k);
        }
        let pivot_row = a[k];
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k];
            for j in 0..48 {
                let x = pivot_row[k]
                    .checked_mul(a[i][j])
                    .and_then(|u| f.checked_mul(pivot_row[j]).and_then(|v| u.checked_sub(v)))
                    .ok_or_else(overflow)?;
                debug_assert_eq!(x % prev, 0);
                a[i][j] = x / prev;
            }
        }
        prev = pivot_row[k];
    }
    // now a[i][i] = d for all i and the right half is d · m^{-1}
    let d = a[0][0];
    let adj: Vec<[i128; 24]> = a
        .iter()
        .map(|row| {
            let mut r = [0i128; 24];
            r.copy_from_slice(&row[24..]);
            r
        })
        .collect();
    // verify m · adj = d · I exactly
    for i in 0..n {
        for j in 0..n {
            let mut s: i128 = 0;
            for k in 0..n {
                s = s
                    .checked_add(m[i][k].checked_mul(adj[k][j]).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
            if s != if i == j { d } else { 0 } {
                return Err(Error::Unsupported("adjugate verification failed".into()));
            }
        }
    }
    Ok(Some((d, adj)))
}

fn to_matrix(rows: &[ShellVec]) -> [[i128; 24]; 24] {
    let mut m = [[0i128; 24]; 24];
    for (i, r) in rows.iter().enumerate() {
        for j in 0..24 {
            m[i][j] = r[j] as i128;
        }
    }
    m
}

/// Rank of a set of at most 24 vectors.
fn rank_of(rows: &[ShellVec]) -> usize {
    let mut a: Vec<[i128; 24]> = rows
        .iter()
        .map(|r| {
            let mut x = [0i128; 24];
            for j in 0..24 {
                x[j] = r[j] as i128;
            }
            x
        })
        .collect();
    let mut rank = 0;
    for col in 0..24 {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(p, rank);
        let piv = a[rank];
        for r in rank + 1..a.len() {
            let f = a[r][col];
            if f == 0 {
                continue;
            }
            for j in 0..24 {
                a[r][j] = a[r][j] * piv[col] - f * piv[j];
            }
            let g = a[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                for x in a[r].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Basis {
    /// Greedy choice of a basis from `candidates`, preferring earlier ones:
    /// first 24 independent vectors, then single-vector exchanges that lower
    /// the index until the lattice spanned is all of Λ.
    pub fn from_candidates(candidates: &[ShellVec]) -> Result<Basis> {
        let mut rows: Vec<ShellVec> = Vec::with_capacity(24);
        for c in candidates {
            rows.push(*c);
            if rank_of(&rows) < rows.len() {
                rows.pop();
            }
            if rows.len() == 24 {
                break;
            }
        }
        if rows.len() < 24 {
            return Err(Error::invalid("candidates do not span the lattice"));
        }
        loop {
            let (d, adj) = det_adjugate(&to_matrix(&rows))?
                .ok_or_else(|| Error::invalid("singular basis"))?;
            if d.abs() == UNIMODULAR_DET {
                let mut dual = Vec::with_capacity(24);
                for j in 0..24 {
                    // dual_j = 8 · column j of m^{-1}
                    let mut v = [0i32; 24];
                    for k in 0..24 {
                        let num = 8 * adj[k][j];
                        if num % d != 0 {
                            return Err(Error::invalid("dual basis is not integral"));
                        }
                        v[k] = (num / d) as i32;
                    }
                    dual.push(v);
                }
                let gram8 = rows
                    .iter()
                    .map(|a| {
                        let mut g = [0i32; 24];
                        for (j, b) in rows.iter().enumerate() {
                            g[j] = dot8_shell(a, b);
                        }
                        g
                    })
                    .collect();
                let basis = Basis { rows, dual, gram8 };
                for i in 0..24 {
                    for j in 0..24 {
                        let want = if i == j { 8 } else { 0 };
                        if dot8_mixed(&basis.rows[i], &basis.dual[j]) != want {
                            return Err(Error::invalid("dual basis check failed"));
                        }
                    }
                }
                return Ok(basis);
            }
            let mut improved = false;
            'cands: for c in candidates {
                let mut num = [0i128; 24];
                for (i, n) in num.iter_mut().enumerate() {
                    *n = (0..24).map(|k| c[k] as i128 * adj[k][i]).sum();
                }
                for i in (0..24).rev() {
                    if num[i] != 0 && num[i].abs() < d.abs() {
                        rows[i] = *c;
                        improved = true;
                        break 'cands;
                    }
                }
            }
            if !improved {
                return Err(Error::Unsupported(
                    "could not reach a unimodular basis by exchanges".into(),
                ));
            }
        }
    }

    /// Coordinates of a lattice vector in this basis.
    pub fn coords(&self, v: &[i32; 24]) -> [i64; 24] {
        let mut c = [0i64; 24];
        for (i, d) in self.dual.iter().enumerate() {
            let s: i64 = v.iter().zip(d.iter()).map(|(&a, &b)| a as i64 * b as i64).sum();
            debug_assert_eq!(s % 8, 0);
            c[i] = s / 8;
        }
        c
    }

    pub fn coords_shell(&self, v: &ShellVec) -> [i64; 24] {
        self.coords(&v.map(|x| x as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::super::golay::GolayCode;
    use super::super::lattice::generate_shell;
    use super::*;

    #[test]
    fn basis_from_shell_is_unimodular() {
        let code = GolayCode::new().unwrap();
        let s4 = generate_shell(&code, 4);
        let b = Basis::from_candidates(&s4).unwrap();
        // coordinates reconstruct vectors
        for v in s4.iter().step_by(4099) {
            let c = b.coords_shell(v);
            let mut r = [0i64; 24];
            for (i, row) in b.rows.iter().enumerate() {
                for k in 0..24 {
                    r[k] += c[i] * row[k] as i64;
                }
            }
            assert!(r.iter().zip(v.iter()).all(|(&a, &b)| a == b as i64));
        }
    }
}
