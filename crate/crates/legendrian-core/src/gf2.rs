//! Dense linear algebra over Z/2.
//!
//! `BitMat` is a square matrix with at most 64 rows, one `u64` per row.
//! Indices are 0-based here; the chain-complex layer converts from the
//! 1-based strand positions used everywhere else.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMat {
    n: usize,
    rows: Vec<u64>,
}

impl BitMat {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64, "BitMat supports at most 64 rows");
        BitMat { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    /// The matrix with a single 1 at (r, c).
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(r, c, true);
        m
    }

    /// I + unit(r, c).
    pub fn elementary(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::identity(n);
        m.toggle(r, c);
        m
    }

    /// Permutation matrix exchanging i and i+1.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows.swap(i, i + 1);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if v {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.rows[r] ^= 1 << c;
    }

    pub fn row(&self, r: usize) -> u64 {
        self.rows[r]
    }

    pub fn col(&self, c: usize) -> u64 {
        let mut out = 0;
        for (r, row) in self.rows.iter().enumerate() {
            out |= (row >> c & 1) << r;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_strictly_lower(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(r, &row)| row >> r == 0)
    }

    pub fn mul(&self, other: &BitMat) -> BitMat {
        assert_eq!(self.n, other.n);
        let mut out = BitMat::zero(self.n);
        for r in 0..self.n {
            let mut bits = self.rows[r];
            let mut acc = 0;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                acc ^= other.rows[c];
                bits &= bits - 1;
            }
            out.rows[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &BitMat) -> BitMat {
        assert_eq!(self.n, other.n);
        BitMat {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn square_is_zero(&self) -> bool {
        self.mul(self).is_zero()
    }

    /// In place `E A E` with `E = I + unit(r, c)`, r != c.
    pub fn conj_elementary(&mut self, r: usize, c: usize) {
        debug_assert_ne!(r, c);
        self.rows[r] ^= self.rows[c];
        let bit_r = 1u64 << r;
        let bit_c = 1u64 << c;
        for row in self.rows.iter_mut() {
            if *row & bit_r != 0 {
                *row ^= bit_c;
            }
        }
    }

    /// In place `P A P` with P exchanging i and i+1.
    pub fn conj_transposition(&mut self, i: usize) {
        self.rows.swap(i, i + 1);
        for row in self.rows.iter_mut() {
            let a = *row >> i & 1;
            let b = *row >> (i + 1) & 1;
            if a != b {
                *row ^= (1 << i) | (1 << (i + 1));
            }
        }
    }

    /// Insert two zero rows and columns so that the old index `at` moves to `at + 2`.
    pub fn insert_pair(&self, at: usize) -> BitMat {
        assert!(at <= self.n);
        let mut out = BitMat::zero(self.n + 2);
        for r in 0..self.n {
            let nr = if r < at { r } else { r + 2 };
            out.rows[nr] = spread(self.rows[r], at);
        }
        out
    }

    /// Delete rows and columns `at` and `at + 1`.
    pub fn delete_pair(&self, at: usize) -> BitMat {
        assert!(at + 1 < self.n);
        let mut out = BitMat::zero(self.n - 2);
        for r in 0..self.n {
            if r == at || r == at + 1 {
                continue;
            }
            let nr = if r < at { r } else { r - 2 };
            out.rows[nr] = squeeze(self.rows[r], at);
        }
        out
    }

    /// Nonzero entries as (row, col) pairs in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                if self.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

fn spread(bits: u64, at: usize) -> u64 {
    let low = bits & ((1u64 << at) - 1);
    let high = if at >= 64 { 0 } else { bits >> at };
    low | (high << (at + 2))
}

fn squeeze(bits: u64, at: usize) -> u64 {
    let low = bits & ((1u64 << at) - 1);
    let high = bits >> (at + 2);
    low | (high << at)
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMat({})", self.n)?;
        for r in (0..self.n).rev() {
            for c in 0..self.n {
                write!(f, "{}", if self.get(r, c) { '1' } else { '.' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Variable-width bit vector used by the linear solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zero(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)] }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// A system of linear equations over Z/2, one row per equation.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub nvars: usize,
    pub rows: Vec<BitRow>,
    pub rhs: Vec<bool>,
}

/// Either a solution or a set of equations whose sum reads 0 = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved(Vec<bool>),
    Inconsistent(Vec<usize>),
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn push(&mut self, row: BitRow, rhs: bool) {
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Does `x` satisfy every equation?
    pub fn check(&self, x: &[bool]) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
            let mut v = false;
            for (i, &xi) in x.iter().enumerate() {
                if xi && row.get(i) {
                    v = !v;
                }
            }
            v == b
        })
    }

    /// Gaussian elimination. Free variables are set to 0.
    pub fn solve(&self) -> Solution {
        let m = self.rows.len();
        // each working row carries the set of original equations it is a sum of
        let mut rows: Vec<(BitRow, bool, BitRow)> = (0..m)
            .map(|i| {
                let mut tag = BitRow::zero(m);
                tag.toggle(i);
                (self.rows[i].clone(), self.rhs[i], tag)
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0;
        for col in 0..self.nvars {
            let Some(p) = (next..m).find(|&r| rows[r].0.get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let (prow, prhs, ptag) = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.0.get(col) {
                    row.0.xor(&prow);
                    row.1 ^= prhs;
                    row.2.xor(&ptag);
                }
            }
            pivots.push((next, col));
            next += 1;
        }
        for row in rows.iter().skip(next) {
            if row.1 {
                let eqs = (0..m).filter(|&i| row.2.get(i)).collect();
                return Solution::Inconsistent(eqs);
            }
        }
        let mut x = vec![false; self.nvars];
        for (r, col) in pivots {
            x[col] = rows[r].1;
        }
        Solution::Solved(x)
    }
}
