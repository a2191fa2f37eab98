//! Substring relations over a fixed text length, stored as bit rows.
//!
//! A relation over length `n` holds pairs `(i, j)` with `0 <= i <= j <= n`;
//! row `i` is a bitset over `j`. All set algebra is word-parallel. Composition
//! iterates whichever operand has fewer pairs, so that concatenating with a
//! sparse relation (a literal, a delimiter) stays quadratic.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PositionRelation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl core::fmt::Debug for PositionRelation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PositionRelation")
            .field("n", &self.n)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl PositionRelation {
    pub fn empty(n: usize) -> Self {
        let words = (n + 1).div_ceil(WORD);
        PositionRelation { n, words, bits: vec![0; (n + 1) * words] }
    }

    /// `{(i, i)}` for every position.
    pub fn diagonal(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..=n {
            r.insert(i, i);
        }
        r
    }

    /// Every pair `i <= j`.
    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..=n {
            let row = r.row_mut(i);
            row[i / WORD..].fill(!0);
            row[i / WORD] &= !0 << (i % WORD);
        }
        r.mask_tail();
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Self> {
        let mut r = Self::empty(n);
        for (i, j) in pairs {
            if i > j || j > n {
                return Err(Error::Range { what: "relation pair end", value: j });
            }
            r.insert(i, j);
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(i <= j && j <= self.n, "pair ({i}, {j}) outside 0 <= i <= j <= {}", self.n);
        self.row_mut(i)[j / WORD] |= 1 << (j % WORD);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i <= j && j <= self.n && self.row(i)[j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn row_ones(&self, i: usize) -> RowOnes<'_> {
        RowOnes { row: self.row(i), word: 0, current: self.row(i).first().copied().unwrap_or(0) }
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.n).flat_map(move |i| self.row_ones(i).map(move |j| (i, j)))
    }

    /// Ends `j` with `(i, j)` in the relation.
    pub fn ends_from(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_ones(i)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::LengthMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Ok(PositionRelation { n: self.n, words: self.words, bits })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    /// Difference from the full upper-triangular relation.
    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.n);
        for (o, &b) in out.bits.iter_mut().zip(&self.bits) {
            *o &= !b;
        }
        out
    }

    /// Clears bits past column `n` in every row.
    fn mask_tail(&mut self) {
        let rem = (self.n + 1) % WORD;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            let words = self.words;
            for i in 0..=self.n {
                self.bits[i * words + words - 1] &= mask;
            }
        }
    }

    /// Relational composition: `(i, j)` such that some `k` has `(i, k)` in
    /// `self` and `(k, j)` in `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        // (A ∘ B)ᵀ = Bᵀ ∘ Aᵀ; iterate the sparser side, unless the three
        // transposes would cost more than they save.
        if self.len() <= 2 * other.len() {
            Ok(self.compose_by_rows(other))
        } else {
            Ok(other.transpose().compose_by_rows(&self.transpose()).transpose())
        }
    }

    fn compose_by_rows(&self, other: &Self) -> Self {
        let mut out = Self::empty(self.n);
        let words = self.words;
        for i in 0..=self.n {
            let dst = &mut out.bits[i * words..(i + 1) * words];
            for k in self.row_ones(i) {
                let src = other.row(k);
                // Row k only has bits at columns >= k.
                let first = k / WORD;
                for (d, s) in dst[first..].iter_mut().zip(&src[first..]) {
                    *d |= s;
                }
            }
        }
        out
    }

    /// Mirror image `(i, j) -> (n - j, n - i)`; keeps the upper-triangular
    /// shape, so it can stand in for a transpose.
    fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::empty(n);
        for i in 0..=n {
            for j in self.row_ones(i) {
                out.insert(n - j, n - i);
            }
        }
        out
    }

    /// Reflexive-transitive closure. Rows are filled from the right: since
    /// every pair has `i <= j`, row `i` of the closure is `{i}` together with
    /// the closed rows of every `k > i` reachable in one step.
    pub fn closure(&self) -> Self {
        let mut out = Self::diagonal(self.n);
        let words = self.words;
        for i in (0..=self.n).rev() {
            let (head, tail) = out.bits.split_at_mut((i + 1) * words);
            let dst = &mut head[i * words..];
            for k in self.row_ones(i).filter(|&k| k > i) {
                let src = &tail[(k - i - 1) * words..(k - i) * words];
                let first = k / WORD;
                for (d, s) in dst[first..].iter_mut().zip(&src[first..]) {
                    *d |= s;
                }
            }
        }
        out
    }
}

struct RowOnes<'a> {
    row: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for RowOnes<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + bit);
            }
            self.word += 1;
            self.current = *self.row.get(self.word)?;
        }
    }
}
