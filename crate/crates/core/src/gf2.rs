//! Linear algebra over F2, used for rational square classes.
//!
//! A squarefree integer `±p1·…·pr` is the F2-vector with a 1 in the sign
//! coordinate (when negative) and in the coordinate of each `pi`.

use std::collections::BTreeSet;

use crate::arith::factor;
use crate::error::Result;

#[derive(Clone, Debug, Default)]
pub struct BitRow {
    words: Vec<u64>,
}

impl PartialEq for BitRow {
    fn eq(&self, other: &Self) -> bool {
        let n = self.words.len().max(other.words.len());
        (0..n).all(|i| self.words.get(i).unwrap_or(&0) == other.words.get(i).unwrap_or(&0))
    }
}

impl Eq for BitRow {}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, k: usize) -> Self {
        let mut r = Self::zeros(len.max(k + 1));
        r.set(k, true);
        r
    }

    pub fn get(&self, k: usize) -> bool {
        self.words.get(k / 64).is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    pub fn set(&mut self, k: usize, bit: bool) {
        if k / 64 >= self.words.len() {
            self.words.resize(k / 64 + 1, 0);
        }
        if bit {
            self.words[k / 64] |= 1 << (k % 64);
        } else {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Inner product `Σ aᵢbᵢ` mod 2.
    pub fn dot(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// An echelon basis that remembers how each stored row combines the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Gf2Basis {
    // (reduced vector, its pivot, combination of basis indices)
    rows: Vec<(BitRow, usize, BitRow)>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitRow) -> (BitRow, BitRow) {
        let mut residual = v.clone();
        let mut combo = BitRow::default();
        for (row, pivot, c) in &self.rows {
            if residual.get(*pivot) {
                residual.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (residual, combo)
    }

    /// Adds `v`; returns its basis index when it was independent of the earlier ones.
    pub fn insert(&mut self, v: &BitRow) -> Option<usize> {
        let (residual, mut combo) = self.reduce(v);
        let pivot = residual.lowest()?;
        let k = self.rows.len();
        combo.set(k, !combo.get(k));
        self.rows.push((residual, pivot, combo));
        Some(k)
    }

    /// Coordinates of `v` in terms of the inserted independent vectors, if it lies in their span.
    pub fn coordinates(&self, v: &BitRow) -> Option<BitRow> {
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }
}

pub fn rank(vectors: &[BitRow]) -> usize {
    let mut basis = Gf2Basis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Whether some linear functional `g` satisfies `g(vᵢ) = bᵢ` for every constraint.
pub fn functional_exists(constraints: &[(BitRow, bool)]) -> bool {
    let mut basis = Gf2Basis::new();
    let mut targets = Vec::new();
    for (v, b) in constraints {
        match basis.coordinates(v) {
            Some(c) => {
                let implied = targets
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| c.get(k))
                    .fold(false, |acc, (_, &t)| acc ^ t);
                if implied != *b {
                    return false;
                }
            }
            None => {
                basis.insert(v);
                targets.push(*b);
            }
        }
    }
    true
}

/// Coordinates (sign, then each prime) for a family of squarefree integers.
#[derive(Clone, Debug)]
pub struct SquareClassSpace {
    primes: Vec<u64>,
}

impl SquareClassSpace {
    pub fn new(values: &[i128], bound: u64) -> Result<Self> {
        let mut primes = BTreeSet::new();
        for &n in values {
            for (p, _) in factor(n, bound)? {
                primes.insert(p);
            }
        }
        Ok(SquareClassSpace {
            primes: primes.into_iter().collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.primes.len() + 1
    }

    /// Square class of a nonzero integer over this space's primes.
    pub fn vector(&self, n: i128, bound: u64) -> Result<BitRow> {
        let mut row = BitRow::zeros(self.dimension());
        if n < 0 {
            row.set(0, true);
        }
        for (p, e) in factor(n, bound)? {
            if e % 2 == 1 {
                let k = self
                    .primes
                    .binary_search(&p)
                    .map_err(|_| crate::error::malformed(format!("prime {p} outside the class space")))?;
                row.set(k + 1, true);
            }
        }
        Ok(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &[usize]) -> BitRow {
        let mut r = BitRow::zeros(8);
        for &b in bits {
            r.set(b, true);
        }
        r
    }

    #[test]
    fn rank_and_coordinates() {
        let vs = [row(&[0, 1]), row(&[1, 2]), row(&[0, 2]), row(&[3])];
        assert_eq!(rank(&vs), 3);
        let mut b = Gf2Basis::new();
        assert_eq!(b.insert(&vs[0]), Some(0));
        assert_eq!(b.insert(&vs[1]), Some(1));
        assert_eq!(b.insert(&vs[2]), None);
        let c = b.coordinates(&vs[2]).unwrap();
        assert!(c.get(0) && c.get(1));
        assert!(b.coordinates(&vs[3]).is_none());
    }

    #[test]
    fn functional_consistency() {
        // independent constraints are always solvable
        assert!(functional_exists(&[(row(&[1]), true), (row(&[2]), true)]));
        // same vector, opposite targets
        assert!(!functional_exists(&[(row(&[1]), true), (row(&[1]), false)]));
        // v3 = v1 + v2 forces b3 = b1 + b2
        let sys = |b3| [(row(&[1]), true), (row(&[2]), true), (row(&[1, 2]), b3)];
        assert!(functional_exists(&sys(false)));
        assert!(!functional_exists(&sys(true)));
        // the zero vector carries the trivial character
        assert!(!functional_exists(&[(BitRow::zeros(4), true)]));
    }

    #[test]
    fn square_class_vectors() {
        let space = SquareClassSpace::new(&[-10, 15, 7], 1000).unwrap();
        assert_eq!(space.dimension(), 5);
        let a = space.vector(-10, 1000).unwrap();
        let b = space.vector(15, 1000).unwrap();
        let mut ab = a.clone();
        ab.xor_assign(&b);
        // -10·15 = -150 = -6 · 25
        assert_eq!(ab, space.vector(-6, 1000).unwrap());
        assert!(space.vector(11, 1000).is_err());
    }
}
