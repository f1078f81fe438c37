//! The Chekanov-Eliashberg DGA of the Ng resolution of a front.
//!
//! Generators are the crossings and the right-cusp loops, numbered in
//! x-order. Disks are found by growing the upper and lower boundary paths
//! leftward from the positive corner.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::FrontError;
use crate::front::{FrontDiagram, FrontEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Crossing,
    RightCusp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    /// 0-based; reports print `id + 1`.
    pub id: usize,
    pub kind: GeneratorKind,
    pub position: usize,
    pub grading: i32,
    /// 0-based index into the front's event list.
    pub source_event: usize,
}

pub type Monomial = Vec<usize>;

/// A Z/2 linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlgebraElement {
    pub terms: BTreeSet<Monomial>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new())
    }

    pub fn monomial(w: Monomial) -> Self {
        let mut e = Self::zero();
        e.terms.insert(w);
        e
    }

    pub fn toggle(&mut self, w: Monomial) {
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for w in &other.terms {
            self.toggle(w.clone());
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for a in &self.terms {
            for b in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.toggle(w);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, w: &[usize]) -> bool {
        self.terms.contains(w)
    }

    /// Evaluate under a valuation of the letters.
    pub fn eval(&self, val: impl Fn(usize) -> bool) -> bool {
        self.terms
            .iter()
            .filter(|w| w.iter().all(|&g| val(g)))
            .count()
            % 2
            == 1
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedDga {
    pub generators: Vec<Generator>,
    pub differential: Vec<AlgebraElement>,
}

/// Generators only.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub front: FrontDiagram,
    pub generators: Vec<Generator>,
    /// generator id per event, if the event carries one
    pub by_event: Vec<Option<usize>>,
}

pub fn resolve(front: &FrontDiagram) -> Result<Skeleton, FrontError> {
    let front = if front.has_marks() { front.underlying() } else { front.clone() };
    front.maslov_potential()?;
    let mut generators = Vec::new();
    let mut by_event = vec![None; front.len()];
    for (e, ev) in front.events().iter().enumerate() {
        let (kind, position, grading) = match *ev {
            FrontEvent::Crossing(i) => (GeneratorKind::Crossing, i, front.crossing_grading(e)?),
            FrontEvent::RightCusp(i) => (GeneratorKind::RightCusp, i, 1),
            _ => continue,
        };
        by_event[e] = Some(generators.len());
        generators.push(Generator { id: generators.len(), kind, position, grading, source_event: e });
    }
    Ok(Skeleton { front, generators, by_event })
}

#[derive(Clone)]
struct Path {
    upper: usize,
    lower: usize,
    lower_corners: Vec<usize>,
    upper_corners: Vec<usize>,
}

/// Words of the disks with positive corner at `q`, reduced mod 2.
///
/// Only disks whose vertical slices are single intervals are counted. That
/// is complete as long as no right cusp ever sits strictly between the two
/// boundary paths; otherwise the loop corners of the resolved cusp come into
/// play and the search stops with an error.
pub fn enumerate_disks(sk: &Skeleton, q: usize) -> Result<BTreeSet<Monomial>, FrontError> {
    let g = &sk.generators[q];
    let mut out = AlgebraElement::zero();
    if g.kind == GeneratorKind::RightCusp {
        out.toggle(Vec::new());
    }
    let j = g.position;
    let mut frontier = vec![Path { upper: j + 1, lower: j, lower_corners: vec![], upper_corners: vec![] }];
    let events = sk.front.events();
    for t in (0..g.source_event).rev() {
        let mut next = Vec::new();
        for mut p in frontier {
            match events[t] {
                FrontEvent::Crossing(c) => {
                    let gen = sk.by_event[t].unwrap();
                    if p.upper == c + 1 && p.lower == c {
                        continue;
                    }
                    if p.upper == c {
                        let mut corner = p.clone();
                        corner.upper_corners.push(gen);
                        next.push(corner);
                        p.upper = c + 1;
                    } else if p.upper == c + 1 {
                        p.upper = c;
                    } else if p.lower == c + 1 {
                        let mut corner = p.clone();
                        corner.lower_corners.push(gen);
                        next.push(corner);
                        p.lower = c;
                    } else if p.lower == c {
                        p.lower = c + 1;
                    }
                    next.push(p);
                }
                FrontEvent::LeftCusp(c) => {
                    if p.upper == c + 1 && p.lower == c {
                        let mut word = p.lower_corners.clone();
                        word.extend(p.upper_corners.iter().rev());
                        assert!(
                            {
                                let mut s = word.clone();
                                s.sort_unstable();
                                s.windows(2).all(|w| w[0] != w[1])
                            },
                            "disk with a repeated corner"
                        );
                        out.toggle(word);
                    } else if [p.upper, p.lower].iter().any(|&x| x == c || x == c + 1) {
                        // the path runs into the cusp
                    } else {
                        if p.upper > c + 1 {
                            p.upper -= 2;
                        }
                        if p.lower > c + 1 {
                            p.lower -= 2;
                        }
                        next.push(p);
                    }
                }
                FrontEvent::RightCusp(c) => {
                    if p.lower < c && p.upper >= c {
                        return Err(FrontError::CuspInsideDisk { event: t + 1, generator: q + 1 });
                    }
                    if p.upper >= c {
                        p.upper += 2;
                    }
                    if p.lower >= c {
                        p.lower += 2;
                    }
                    next.push(p);
                }
                FrontEvent::Mark(..) => unreachable!("skeleton fronts carry no marks"),
            }
        }
        frontier = next;
    }
    Ok(out.terms)
}

pub fn differential(sk: &Skeleton) -> Result<ResolvedDga, FrontError> {
    let differential = (0..sk.generators.len())
        .into_par_iter()
        .map(|q| enumerate_disks(sk, q).map(|terms| AlgebraElement { terms }))
        .collect::<Result<Vec<_>, _>>()?;
    let dga = ResolvedDga { generators: sk.generators.clone(), differential };
    assert!(check_d_squared(&dga), "d^2 != 0: disk enumeration is inconsistent");
    Ok(dga)
}

/// Resolve a front and compute its differential.
pub fn build_dga(front: &FrontDiagram) -> Result<ResolvedDga, FrontError> {
    differential(&resolve(front)?)
}

impl ResolvedDga {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Apply the differential to a word via the Leibniz rule.
    pub fn d_word(&self, w: &[usize]) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, &x) in w.iter().enumerate() {
            for term in &self.differential[x].terms {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(term);
                nw.extend_from_slice(&w[i + 1..]);
                out.toggle(nw);
            }
        }
        out
    }

    pub fn d_element(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for w in &a.terms {
            out.add_assign(&self.d_word(w));
        }
        out
    }

    pub fn word_grading(&self, w: &[usize]) -> i32 {
        w.iter().map(|&g| self.generators[g].grading).sum()
    }

    pub fn grading_zero(&self) -> Vec<usize> {
        self.generators.iter().filter(|g| g.grading == 0).map(|g| g.id).collect()
    }
}

/// Is d(dq) = 0 for every generator q?
pub fn check_d_squared(dga: &ResolvedDga) -> bool {
    dga.differential.iter().all(|dq| dga.d_element(dq).is_zero())
}

/// Every term of dq has grading |q| - 1 and only letters left of q.
pub fn check_degrees(dga: &ResolvedDga) -> bool {
    dga.differential.iter().enumerate().all(|(q, dq)| {
        dq.terms.iter().all(|w| {
            dga.word_grading(w) == dga.generators[q].grading - 1 && w.iter().all(|&x| x < q)
        })
    })
}
