//! Ordered chain complexes over Z/2 and the four MCS chain maps.
//!
//! Generators are 1-based, bottom to top. `d[k][l] = 1` means y_l appears
//! in the boundary of y_k, so the matrix is strictly lower triangular.

use std::fmt;

use crate::error::ComplexError;
use crate::gf2::BitMat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedChainComplex {
    pub grading: Vec<i32>,
    pub d: BitMat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleForm {
    pub complex: OrderedChainComplex,
    /// Partner of each generator, 1-based (index 0 unused); 0 if unpaired.
    pub pairing: Vec<usize>,
    /// The handleslides (k, l) used, in order.
    pub handleslides: Vec<(usize, usize)>,
}

impl OrderedChainComplex {
    pub fn empty() -> Self {
        OrderedChainComplex { grading: Vec::new(), d: BitMat::zero(0) }
    }

    pub fn new(grading: Vec<i32>, d: BitMat) -> Self {
        assert_eq!(grading.len(), d.n());
        OrderedChainComplex { grading, d }
    }

    pub fn n(&self) -> usize {
        self.grading.len()
    }

    /// <d y_k | y_l>
    pub fn get(&self, k: usize, l: usize) -> bool {
        self.d.get(k - 1, l - 1)
    }

    pub fn set(&mut self, k: usize, l: usize, v: bool) {
        self.d.set(k - 1, l - 1, v)
    }

    pub fn grade(&self, k: usize) -> i32 {
        self.grading[k - 1]
    }

    pub fn is_valid(&self) -> bool {
        self.d.is_strictly_lower()
            && self.d.square_is_zero()
            && self.d.entries().iter().all(|&(r, c)| self.grading[r] == self.grading[c] + 1)
    }

    fn check_pair(&self, k: usize, l: usize) -> Result<(), ComplexError> {
        if l < 1 || k > self.n() || k <= l {
            return Err(ComplexError::Index { k, l, n: self.n() });
        }
        Ok(())
    }

    /// Conjugation by E_{k,l}: y_k is replaced by y_k + y_l.
    pub fn handleslide(&self, k: usize, l: usize) -> Result<Self, ComplexError> {
        self.check_pair(k, l)?;
        if self.grade(k) != self.grade(l) {
            return Err(ComplexError::Grading { k, l, gk: self.grade(k), gl: self.grade(l) });
        }
        let mut out = self.clone();
        out.d.conj_elementary(k - 1, l - 1);
        Ok(out)
    }

    pub fn swap(&self, k: usize) -> Result<Self, ComplexError> {
        self.check_pair(k + 1, k)?;
        if self.get(k + 1, k) {
            return Err(ComplexError::SwapEntry { k });
        }
        let mut out = self.clone();
        out.d.conj_transposition(k - 1);
        out.grading.swap(k - 1, k);
        Ok(out)
    }

    /// Simple birth of a pair at k, k+1 with gradings g, g+1.
    pub fn birth(&self, k: usize, g: i32) -> Result<Self, ComplexError> {
        if k < 1 || k > self.n() + 1 {
            return Err(ComplexError::Index { k: k + 1, l: k, n: self.n() });
        }
        let mut d = self.d.insert_pair(k - 1);
        d.set(k, k - 1, true);
        let mut grading = self.grading.clone();
        grading.insert(k - 1, g + 1);
        grading.insert(k - 1, g);
        Ok(OrderedChainComplex { grading, d })
    }

    /// The implicit handleslides of a death at k.
    pub fn death_handleslides(&self, k: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for v in 1..k {
            if self.get(k + 1, v) {
                e.push((k, v));
            }
        }
        for u in k + 2..=self.n() {
            if self.get(u, k) {
                e.push((u, k + 1));
            }
        }
        e
    }

    pub fn death(&self, k: usize) -> Result<Self, ComplexError> {
        self.check_pair(k + 1, k)?;
        if !self.get(k + 1, k) {
            return Err(ComplexError::DeathEntry { k });
        }
        let mut d = self.d.clone();
        for (a, b) in self.death_handleslides(k) {
            d.conj_elementary(a - 1, b - 1);
        }
        debug_assert!(d.row(k - 1) == 0 && d.col(k) == 0);
        debug_assert!(d.row(k) == 1 << (k - 1) && d.col(k - 1) == 1 << k);
        let mut grading = self.grading.clone();
        grading.drain(k - 1..=k);
        Ok(OrderedChainComplex { grading, d: d.delete_pair(k - 1) })
    }

    pub fn is_simple(&self) -> bool {
        let n = self.n();
        let mut hit = vec![false; n];
        for r in 0..n {
            let row = self.d.row(r);
            if row.count_ones() > 1 || self.d.col(r).count_ones() > 1 {
                return false;
            }
            if row != 0 {
                let c = row.trailing_zeros() as usize;
                if hit[c] || self.d.col(r) != 0 || self.d.row(c) != 0 {
                    return false;
                }
                hit[c] = true;
            }
        }
        true
    }

    /// Reduce to simple form by handleslides: generators are processed
    /// bottom to top; the boundary of each is cleared of already-used
    /// targets, then its top target absorbs the rest of it.
    pub fn barannikov(&self) -> SimpleForm {
        let n = self.n();
        let mut c = self.clone();
        let mut pivot_of: Vec<Option<usize>> = vec![None; n + 1]; // target -> source
        let mut moves = Vec::new();
        for j in 1..=n {
            loop {
                let row = c.d.row(j - 1);
                if row == 0 {
                    break;
                }
                let p = 64 - row.leading_zeros() as usize; // 1-based top target
                match pivot_of[p] {
                    Some(src) => {
                        c.d.conj_elementary(j - 1, src - 1);
                        moves.push((j, src));
                    }
                    None => {
                        for x in 1..p {
                            if c.get(j, x) {
                                c.d.conj_elementary(p - 1, x - 1);
                                moves.push((p, x));
                            }
                        }
                        pivot_of[p] = Some(j);
                        break;
                    }
                }
            }
        }
        let mut pairing = vec![0; n + 1];
        for (p, src) in pivot_of.iter().enumerate() {
            if let Some(s) = src {
                pairing[p] = *s;
                pairing[*s] = p;
            }
        }
        debug_assert!(c.is_simple());
        SimpleForm { complex: c, pairing, handleslides: moves }
    }

    /// The pairing involution; errors if some generator is unpaired.
    pub fn pairing(&self) -> Result<Vec<usize>, ComplexError> {
        let sf = self.barannikov();
        match (1..=self.n()).find(|&k| sf.pairing[k] == 0) {
            Some(k) => Err(ComplexError::Unpaired { k }),
            None => Ok(sf.pairing),
        }
    }

    /// The simple complex with the given pairing and gradings.
    pub fn from_pairing(grading: Vec<i32>, pairing: &[usize]) -> Self {
        let n = grading.len();
        let mut d = BitMat::zero(n);
        for k in 1..=n {
            if pairing[k] < k && pairing[k] > 0 {
                d.set(k - 1, pairing[k] - 1, true);
            }
        }
        OrderedChainComplex { grading, d }
    }
}

impl fmt::Debug for OrderedChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One line per generator, top first: grading, then the row of d.
impl fmt::Display for OrderedChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (1..=self.n()).rev() {
            let row: String = (1..=self.n()).map(|l| if self.get(k, l) { '1' } else { '.' }).collect();
            writeln!(f, "{k:>3} |{:>3}| {row}", self.grade(k))?;
        }
        Ok(())
    }
}
