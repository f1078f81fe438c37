//! Collections of handleslide marks swept across a front.
//!
//! A collection is kept in sweep order: smaller upper end first, ties by
//! smaller lower end. Out-of-order neighbours are fixed by moves 1, 2-5
//! and 6; the planner below works on a bare list so the same steps can be
//! replayed as moves on a marked front.

use crate::error::MoveError;
use crate::front::FrontEvent;
use crate::gf2::BitMat;
use crate::moves::{byproduct, commute, Mark};

/// A step on a list of marks, at an offset into the list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListStep {
    /// remove two identical neighbours at p, p+1
    Cancel(usize),
    /// exchange commuting neighbours
    Swap(usize),
    /// [a, b] -> [b, byproduct, a] for non-commuting neighbours
    Expand(usize),
}

const STEP_CAP: usize = 200_000;

pub fn apply_step(marks: &mut Vec<Mark>, s: ListStep) {
    match s {
        ListStep::Cancel(p) => {
            marks.drain(p..p + 2);
        }
        ListStep::Swap(p) => marks.swap(p, p + 1),
        ListStep::Expand(p) => {
            let (a, b) = (marks[p], marks[p + 1]);
            marks.splice(p..p + 2, [b, byproduct(a, b), a]);
        }
    }
}

/// Sort into sweep order, fixing the leftmost inversion each time.
pub fn normalize_plan(marks: &[Mark]) -> Result<Vec<ListStep>, MoveError> {
    let mut m = marks.to_vec();
    let mut steps = Vec::new();
    'outer: loop {
        for p in 0..m.len().saturating_sub(1) {
            let (x, y) = (m[p], m[p + 1]);
            if x < y {
                continue;
            }
            let s = if x == y {
                ListStep::Cancel(p)
            } else if commute(x, y) {
                ListStep::Swap(p)
            } else {
                ListStep::Expand(p)
            };
            apply_step(&mut m, s);
            steps.push(s);
            if steps.len() > STEP_CAP {
                return Err(MoveError::Internal("mark normalization does not terminate".into()));
            }
            continue 'outer;
        }
        return Ok(steps);
    }
}

/// Move the mark at `p` to the front (`left`) or back of the list.
/// Returns None if it cancelled against an identical neighbour.
pub fn bubble_plan(marks: &[Mark], mut p: usize, left: bool) -> (Vec<ListStep>, Option<usize>) {
    let mut m = marks.to_vec();
    let mut steps = Vec::new();
    loop {
        let (q, done) = if left { (p.wrapping_sub(1), p == 0) } else { (p, p + 1 >= m.len()) };
        if done {
            return (steps, Some(p));
        }
        let s = if m[q] == m[q + 1] {
            ListStep::Cancel(q)
        } else if commute(m[q], m[q + 1]) {
            ListStep::Swap(q)
        } else {
            ListStep::Expand(q)
        };
        apply_step(&mut m, s);
        steps.push(s);
        match s {
            ListStep::Cancel(_) => return (steps, None),
            ListStep::Swap(_) => p = if left { p - 1 } else { p + 1 },
            ListStep::Expand(_) => p = if left { p - 1 } else { p + 2 },
        }
    }
}

/// The product of the elementary matrices of the marks, left to right.
pub fn product(marks: &[Mark], n: usize) -> BitMat {
    let mut out = BitMat::identity(n);
    for &(k, l) in marks {
        out = out.mul(&BitMat::elementary(n, k - 1, l - 1));
    }
    out
}

/// A collection of marks being swept, with its sweep-order invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepCollection {
    pub marks: Vec<Mark>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    /// a mark enters from the left
    I(Mark),
    /// a mark enters from the right
    II(Mark),
    /// the collection passes a crossing X(i)
    III(usize),
    /// the collection passes a cusp
    IV(FrontEvent),
}

impl SweepCollection {
    pub fn v(&self, k: usize, l: usize) -> bool {
        self.marks.iter().filter(|&&m| m == (k, l)).count() % 2 == 1
    }

    fn normalize(&mut self) -> Result<Vec<ListStep>, MoveError> {
        let steps = normalize_plan(&self.marks)?;
        for &s in &steps {
            apply_step(&mut self.marks, s);
        }
        Ok(steps)
    }

    /// Apply a sweeping move; returns the list steps used to restore order.
    pub fn sweep(&mut self, kind: SweepKind) -> Result<Vec<ListStep>, MoveError> {
        match kind {
            SweepKind::I(m) => self.marks.insert(0, m),
            SweepKind::II(m) => self.marks.push(m),
            SweepKind::III(i) => {
                if self.v(i + 1, i) {
                    return Err(MoveError::Internal("collection holds the crossing mark".into()));
                }
                let s = |p: usize| if p == i { i + 1 } else if p == i + 1 { i } else { p };
                for m in self.marks.iter_mut() {
                    *m = (s(m.0), s(m.1));
                }
            }
            SweepKind::IV(ev) => {
                let (i, up) = match ev {
                    FrontEvent::LeftCusp(i) => (i, true),
                    FrontEvent::RightCusp(i) => (i, false),
                    _ => return Err(MoveError::Internal("not a cusp".into())),
                };
                let f = |p: usize| if p < i { Some(p) } else if up { Some(p + 2) } else if p > i + 1 { Some(p - 2) } else { None };
                let mut out = Vec::new();
                for &(k, l) in &self.marks {
                    match (f(k), f(l)) {
                        (Some(a), Some(b)) => out.push((a, b)),
                        _ => return Err(MoveError::Internal("mark touches the cusp strands".into())),
                    }
                }
                self.marks = out;
            }
        }
        self.normalize()
    }
}
