//! The extended binary Golay code, as 24-bit masks.

use crate::error::{Error, Result};

/// Generator polynomial of the cyclic [23, 12] Golay code:
/// `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`.
const GENERATOR_POLY: u32 = 0b1100_0111_0101;

#[derive(Clone, Debug)]
pub struct GolayCode {
    rows: [u32; 12],
    words: Vec<u32>,
    member: Vec<u64>,
}

impl GolayCode {
    /// Build the code from the cyclic generator, extend by a parity bit,
    /// and check linearity, size, minimum weight and the weight enumerator.
    pub fn new() -> Result<Self> {
        let mut rows = [0u32; 12];
        for (i, row) in rows.iter_mut().enumerate() {
            let w = GENERATOR_POLY << i;
            let parity = w.count_ones() & 1;
            *row = w | (parity << 23);
        }
        let mut words = Vec::with_capacity(4096);
        for mask in 0u32..4096 {
            let mut w = 0;
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w ^= r;
                }
            }
            words.push(w);
        }
        words.sort_unstable();
        words.dedup();
        let mut member = vec![0u64; 1 << 18];
        for &w in &words {
            member[(w >> 6) as usize] |= 1 << (w & 63);
        }
        let code = GolayCode {
            rows,
            words,
            member,
        };
        code.self_check()?;
        Ok(code)
    }

    fn self_check(&self) -> Result<()> {
        let dist = self.weight_distribution();
        let mut expected = [0usize; 25];
        expected[0] = 1;
        expected[8] = 759;
        expected[12] = 2576;
        expected[16] = 759;
        expected[24] = 1;
        if self.words.len() != 4096 || dist != expected {
            return Err(Error::invalid(format!(
                "Golay self-check failed: {} words, distribution {:?}",
                self.words.len(),
                dist
            )));
        }
        for &a in self.rows.iter() {
            for &b in self.rows.iter() {
                if (a & b).count_ones() % 2 != 0 {
                    return Err(Error::invalid("Golay code is not self-orthogonal"));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[u32; 12] {
        &self.rows
    }

    /// All 4096 codewords, sorted.
    pub fn words(&self) -> &[u32] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, w: u32) -> bool {
        w < (1 << 24) && self.member[(w >> 6) as usize] >> (w & 63) & 1 == 1
    }

    pub fn weight_distribution(&self) -> [usize; 25] {
        let mut d = [0usize; 25];
        for &w in &self.words {
            d[w.count_ones() as usize] += 1;
        }
        d
    }

    /// Codewords of weight 8, sorted.
    pub fn octads(&self) -> Vec<u32> {
        self.words
            .iter()
            .copied()
            .filter(|w| w.count_ones() == 8)
            .collect()
    }

    /// A stable fingerprint of the generator rows, used to invalidate caches.
    pub fn fingerprint(&self) -> u64 {
        self.rows
            .iter()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, &r| (h ^ r as u64).wrapping_mul(0x100_0000_01b3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay_self_check() {
        let g = GolayCode::new().unwrap();
        assert_eq!(g.octads().len(), 759);
        assert!(g.contains(0));
        assert!(g.contains((1 << 24) - 1));
        let o = g.octads()[17];
        assert!(g.contains(o ^ ((1 << 24) - 1)));
        assert!(!g.contains(1));
    }
}
