//! Dipped diagrams checked through matrix formulas alone.
//!
//! A dipped diagram is a sequence of inserts separated by dips. Inserts
//! `I_1 .. I_{m+1}` carry at most one singularity; dip `D_j` sits between
//! `I_j` and `I_{j+1}` and contributes the letters `a_j^{k,l}`, `b_j^{k,l}`
//! for `k > l`. Crossing inserts contribute `q_s`, right cusp inserts `z_s`.
//! Strands are 1-based, bottom to top, relabelled at each dip.
//!
//! No disks are enumerated here: the differential is written down from the
//! dip formulas, so the results can be compared with the disk search in
//! `legendrian-core` through augmentations.

use std::collections::BTreeMap;

use legendrian_core::augmentation::{homotopy_system, Augmentation};
use legendrian_core::dga::{AlgebraElement, Generator, GeneratorKind, ResolvedDga};
use legendrian_core::front::FrontEvent;
use legendrian_core::gf2::{BitMat, Solution};
use legendrian_core::mcs::{reconstruct, Mcs};
use legendrian_core::MarkedFront;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DippedError {
    #[error("insert {insert}: {reason}")]
    Insert { insert: usize, reason: String },
    #[error("dip {dip}: {reason}")]
    Dip { dip: usize, reason: String },
    #[error("valuation does not fit the diagram: {0}")]
    Shape(String),
    #[error("MCS: {0}")]
    Mcs(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Insert {
    Parallel,
    Crossing(usize),
    RightCusp(usize),
    LeftCusp(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DippedDiagram {
    inserts: Vec<Insert>,
    /// Maslov potential of each strand, per dip.
    potentials: Vec<Vec<i32>>,
}

impl DippedDiagram {
    pub fn new(inserts: Vec<Insert>, potentials: Vec<Vec<i32>>) -> Result<Self, DippedError> {
        if inserts.len() != potentials.len() + 1 {
            return Err(DippedError::Shape(format!("{} inserts for {} dips", inserts.len(), potentials.len())));
        }
        let mut prev: Vec<i32> = Vec::new();
        for (s0, &ins) in inserts.iter().enumerate() {
            let s = s0 + 1;
            let bad = |reason: String| DippedError::Insert { insert: s, reason };
            let n = prev.len();
            let expected: Option<Vec<i32>> = match ins {
                Insert::Parallel => Some(prev.clone()),
                Insert::Crossing(i) => {
                    if i < 1 || i + 1 > n {
                        return Err(bad(format!("crossing at {i} with {n} strands")));
                    }
                    let mut p = prev.clone();
                    p.swap(i - 1, i);
                    Some(p)
                }
                Insert::RightCusp(i) => {
                    if i < 1 || i + 1 > n {
                        return Err(bad(format!("right cusp at {i} with {n} strands")));
                    }
                    if prev[i] != prev[i - 1] + 1 {
                        return Err(bad(format!("right cusp joins potentials {} and {}", prev[i - 1], prev[i])));
                    }
                    let mut p = prev.clone();
                    p.drain(i - 1..=i);
                    Some(p)
                }
                Insert::LeftCusp(i) => {
                    if i < 1 || i > n + 1 {
                        return Err(bad(format!("left cusp at {i} with {n} strands")));
                    }
                    None
                }
            };
            if s0 == potentials.len() {
                if expected.map_or(true, |p| !p.is_empty()) {
                    return Err(bad("diagram does not close up".into()));
                }
                break;
            }
            let here = &potentials[s0];
            match expected {
                Some(p) if &p != here => {
                    return Err(DippedError::Dip { dip: s, reason: format!("potentials {here:?}, expected {p:?}") });
                }
                None => {
                    let Insert::LeftCusp(i) = ins else { unreachable!() };
                    let mut rest = here.clone();
                    if here.len() != n + 2 || here[i] != here[i - 1] + 1 {
                        return Err(DippedError::Dip { dip: s, reason: format!("potentials {here:?} after left cusp at {i}") });
                    }
                    rest.drain(i - 1..=i);
                    if rest != prev {
                        return Err(DippedError::Dip { dip: s, reason: format!("potentials {here:?} after left cusp at {i}") });
                    }
                }
                _ => {}
            }
            if here.len() > 64 {
                return Err(DippedError::Dip { dip: s, reason: "too many strands".into() });
            }
            prev = here.clone();
        }
        Ok(DippedDiagram { inserts, potentials })
    }

    /// One dip after every event but the last. Marks become parallel inserts.
    pub fn from_front(front: &MarkedFront) -> Result<Self, DippedError> {
        let inserts = front.events().iter().map(|&e| insert_of(e)).collect::<Vec<_>>();
        let mut potentials = Vec::new();
        for g in 1..front.len() {
            potentials.push(front.gradings_at(g).map_err(|e| DippedError::Mcs(e.to_string()))?);
        }
        DippedDiagram::new(inserts, potentials)
    }

    pub fn inserts(&self) -> &[Insert] {
        &self.inserts
    }

    pub fn dips(&self) -> usize {
        self.potentials.len()
    }

    /// Strand count of dip j (1-based); dip 0 and dip m+1 are empty.
    pub fn dim(&self, j: usize) -> usize {
        if j == 0 || j > self.dips() {
            0
        } else {
            self.potentials[j - 1].len()
        }
    }

    pub fn potential(&self, j: usize) -> &[i32] {
        &self.potentials[j - 1]
    }

    /// Grading of q_s for a crossing insert s.
    pub fn crossing_grading(&self, s: usize) -> Option<i32> {
        match self.inserts[s - 1] {
            Insert::Crossing(i) => {
                let mu = self.potential(s - 1);
                Some(mu[i] - mu[i - 1])
            }
            _ => None,
        }
    }
}

fn insert_of(e: FrontEvent) -> Insert {
    match e {
        FrontEvent::LeftCusp(i) => Insert::LeftCusp(i),
        FrontEvent::RightCusp(i) => Insert::RightCusp(i),
        FrontEvent::Crossing(i) => Insert::Crossing(i),
        FrontEvent::Mark(..) => Insert::Parallel,
    }
}

/// Values of an algebra map (or a homotopy) on the letters of a dipped
/// diagram, grouped as matrices. `inserts[s - 1]` is the value on `q_s` or
/// `z_s` and is unused for parallel and left cusp inserts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DipValuation {
    pub a: Vec<BitMat>,
    pub b: Vec<BitMat>,
    pub inserts: Vec<bool>,
}

impl DipValuation {
    pub fn zero(d: &DippedDiagram) -> Self {
        let a: Vec<BitMat> = (1..=d.dips()).map(|j| BitMat::zero(d.dim(j))).collect();
        DipValuation { b: a.clone(), a, inserts: vec![false; d.inserts.len()] }
    }

    pub fn fits(&self, d: &DippedDiagram) -> Result<(), DippedError> {
        if self.a.len() != d.dips() || self.b.len() != d.dips() || self.inserts.len() != d.inserts.len() {
            return Err(DippedError::Shape("wrong number of dips or inserts".into()));
        }
        for j in 1..=d.dips() {
            for (name, m) in [("A", &self.a[j - 1]), ("B", &self.b[j - 1])] {
                if m.n() != d.dim(j) || !m.is_strictly_lower() {
                    return Err(DippedError::Shape(format!("{name}_{j} is not strictly lower {}x{}", d.dim(j), d.dim(j))));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A { dip: usize, k: usize, l: usize },
    B { dip: usize, k: usize, l: usize },
    Q { insert: usize },
    Z { insert: usize },
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Letter::A { dip, k, l } => write!(f, "a_{dip}^{{{k},{l}}}"),
            Letter::B { dip, k, l } => write!(f, "b_{dip}^{{{k},{l}}}"),
            Letter::Q { insert } => write!(f, "q_{insert}"),
            Letter::Z { insert } => write!(f, "z_{insert}"),
        }
    }
}

/// Square matrix of algebra elements, 0-based.
pub type SymMat = Vec<Vec<AlgebraElement>>;

fn zero_sym(n: usize) -> SymMat {
    vec![vec![AlgebraElement::zero(); n]; n]
}

fn const_sym(m: &BitMat) -> SymMat {
    let n = m.n();
    let mut out = zero_sym(n);
    for (r, c) in m.entries() {
        out[r][c] = AlgebraElement::one();
    }
    out
}

fn const_el(v: bool) -> AlgebraElement {
    if v {
        AlgebraElement::one()
    } else {
        AlgebraElement::zero()
    }
}

fn sum(terms: impl IntoIterator<Item = AlgebraElement>) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for t in terms {
        out.add_assign(&t);
    }
    out
}

/// Ã for insert `ins`, given the A matrix of the dip to its left and the
/// letter (or value) of the insert's crossing.
pub fn a_tilde_sym(ins: Insert, prev: &SymMat, q: &AlgebraElement) -> Result<SymMat, DippedError> {
    let n = prev.len();
    let a = |u: usize, v: usize| -> AlgebraElement {
        if u > v {
            prev[u - 1][v - 1].clone()
        } else {
            AlgebraElement::zero()
        }
    };
    let shape = |what: &str| DippedError::Shape(format!("{what} does not fit {n} strands"));
    Ok(match ins {
        Insert::Parallel => prev.clone(),
        Insert::Crossing(i) => {
            if i < 1 || i + 1 > n {
                return Err(shape("crossing"));
            }
            let mut out = zero_sym(n);
            for u in 1..=n {
                for v in 1..u {
                    out[u - 1][v - 1] = if u == i + 1 && v == i {
                        AlgebraElement::zero()
                    } else if u == i + 1 {
                        a(i, v)
                    } else if u == i && v < i {
                        sum([a(i + 1, v), q.mul(&a(i, v))])
                    } else if v == i {
                        a(u, i + 1)
                    } else if v == i + 1 {
                        sum([a(u, i), a(u, i + 1).mul(q)])
                    } else {
                        a(u, v)
                    };
                }
            }
            out
        }
        Insert::RightCusp(i) => {
            if i < 1 || i + 1 > n {
                return Err(shape("right cusp"));
            }
            let old = |u: usize| if u < i { u } else { u + 2 };
            let mut out = zero_sym(n - 2);
            for u in 1..=n - 2 {
                for v in 1..u {
                    let (uu, vv) = (old(u), old(v));
                    out[u - 1][v - 1] = if uu < i || vv > i + 1 {
                        a(uu, vv)
                    } else {
                        sum([
                            a(uu, vv),
                            a(uu, i).mul(&a(i + 1, vv)),
                            a(uu, i + 1).mul(q).mul(&a(i + 1, vv)),
                            a(uu, i).mul(q).mul(&a(i, vv)),
                            a(uu, i + 1).mul(q).mul(q).mul(&a(i, vv)),
                        ])
                    };
                }
            }
            out
        }
        Insert::LeftCusp(i) => {
            if i < 1 || i > n + 1 {
                return Err(shape("left cusp"));
            }
            let old = |u: usize| if u < i { u } else { u - 2 };
            let mut out = zero_sym(n + 2);
            for u in 1..=n + 2 {
                for v in 1..u {
                    out[u - 1][v - 1] = if u == i + 1 && v == i {
                        AlgebraElement::one()
                    } else if u == i || u == i + 1 || v == i || v == i + 1 {
                        AlgebraElement::zero()
                    } else {
                        a(old(u), old(v))
                    };
                }
            }
            out
        }
    })
}

fn eval_sym(m: &SymMat, val: &impl Fn(usize) -> bool) -> BitMat {
    let n = m.len();
    let mut out = BitMat::zero(n);
    for r in 0..n {
        for c in 0..n {
            if m[r][c].eval(val) {
                out.set(r, c, true);
            }
        }
    }
    out
}

/// Ã_{s-1} evaluated under `val`, for inserts s = 1..=m. For s = 1 this is
/// H_{2,1}.
pub fn a_tilde(d: &DippedDiagram, val: &DipValuation, s: usize) -> Result<BitMat, DippedError> {
    val.fits(d)?;
    if s < 1 || s > d.dips() {
        return Err(DippedError::Shape(format!("no dip after insert {s}")));
    }
    let prev = if s == 1 { zero_sym(0) } else { const_sym(&val.a[s - 2]) };
    let t = a_tilde_sym(d.inserts[s - 1], &prev, &const_el(val.inserts[s - 1]))?;
    Ok(eval_sym(&t, &|_| false))
}

/// The dipped DGA written out as a DGA over the letters. Letter order is
/// insert 1, dip 1, insert 2, dip 2, ... and within a dip all a's then all
/// b's by increasing k - l, so every differential only uses earlier letters.
#[derive(Clone, Debug)]
pub struct DippedDga {
    pub letters: Vec<Letter>,
    pub index: BTreeMap<Letter, usize>,
    pub dga: ResolvedDga,
    /// Ã_{s-1} in terms of the letters, for s = 1..=m.
    pub tilde: Vec<SymMat>,
}

impl DippedDga {
    pub fn new(d: &DippedDiagram) -> Self {
        let mut letters = Vec::new();
        let mut grading = Vec::new();
        for s in 1..=d.inserts.len() {
            match d.inserts[s - 1] {
                Insert::Crossing(_) => {
                    letters.push(Letter::Q { insert: s });
                    grading.push(d.crossing_grading(s).unwrap());
                }
                Insert::RightCusp(_) => {
                    letters.push(Letter::Z { insert: s });
                    grading.push(1);
                }
                _ => {}
            }
            if s > d.dips() {
                continue;
            }
            let mu = d.potential(s);
            let n = mu.len();
            for ab in 0..2 {
                for gap in 1..n {
                    for l in 1..=n - gap {
                        let k = l + gap;
                        let g = mu[k - 1] - mu[l - 1];
                        if ab == 0 {
                            letters.push(Letter::A { dip: s, k, l });
                            grading.push(g - 1);
                        } else {
                            letters.push(Letter::B { dip: s, k, l });
                            grading.push(g);
                        }
                    }
                }
            }
        }
        let index: BTreeMap<Letter, usize> = letters.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let lt = |x: Letter| AlgebraElement::monomial(vec![index[&x]]);
        let sym = |dip: usize, b: bool| -> SymMat {
            let n = d.dim(dip);
            let mut m = zero_sym(n);
            for k in 1..=n {
                for l in 1..k {
                    m[k - 1][l - 1] = if b { lt(Letter::B { dip, k, l }) } else { lt(Letter::A { dip, k, l }) };
                }
            }
            m
        };
        let mut tilde = Vec::new();
        for s in 1..=d.dips() {
            let prev = if s == 1 { zero_sym(0) } else { sym(s - 1, false) };
            let q = match d.inserts[s - 1] {
                Insert::Crossing(_) => lt(Letter::Q { insert: s }),
                Insert::RightCusp(_) => lt(Letter::Z { insert: s }),
                _ => AlgebraElement::zero(),
            };
            tilde.push(a_tilde_sym(d.inserts[s - 1], &prev, &q).expect("diagram was validated"));
        }
        let mut differential = Vec::new();
        for &x in &letters {
            let dx = match x {
                Letter::Q { insert } | Letter::Z { insert } => {
                    let (Insert::Crossing(i) | Insert::RightCusp(i)) = d.inserts[insert - 1] else { unreachable!() };
                    let mut e = lt(Letter::A { dip: insert - 1, k: i + 1, l: i });
                    if matches!(x, Letter::Z { .. }) {
                        e.add_assign(&AlgebraElement::one());
                    }
                    e
                }
                Letter::A { dip, k, l } => {
                    sum((l + 1..k).map(|p| lt(Letter::A { dip, k, l: p }).mul(&lt(Letter::A { dip, k: p, l }))))
                }
                Letter::B { dip, k, l } => {
                    let t = &tilde[dip - 1];
                    let mut e = lt(Letter::A { dip, k, l });
                    e.add_assign(&t[k - 1][l - 1]);
                    for p in l + 1..k {
                        e.add_assign(&lt(Letter::B { dip, k, l: p }).mul(&lt(Letter::A { dip, k: p, l })));
                        e.add_assign(&t[k - 1][p - 1].mul(&lt(Letter::B { dip, k: p, l })));
                    }
                    e
                }
            };
            differential.push(dx);
        }
        let generators = grading
            .into_iter()
            .enumerate()
            .map(|(id, grading)| Generator { id, kind: GeneratorKind::Crossing, position: 0, grading, source_event: 0 })
            .collect();
        DippedDga { letters, index, dga: ResolvedDga { generators, differential }, tilde }
    }

    pub fn letter_values(&self, val: &DipValuation) -> Vec<bool> {
        self.letters
            .iter()
            .map(|&x| match x {
                Letter::A { dip, k, l } => val.a[dip - 1].get(k - 1, l - 1),
                Letter::B { dip, k, l } => val.b[dip - 1].get(k - 1, l - 1),
                Letter::Q { insert } | Letter::Z { insert } => val.inserts[insert - 1],
            })
            .collect()
    }

    pub fn valuation(&self, d: &DippedDiagram, values: &[bool]) -> DipValuation {
        let mut val = DipValuation::zero(d);
        for (&x, &v) in self.letters.iter().zip(values) {
            match x {
                Letter::A { dip, k, l } => val.a[dip - 1].set(k - 1, l - 1, v),
                Letter::B { dip, k, l } => val.b[dip - 1].set(k - 1, l - 1, v),
                Letter::Q { insert } | Letter::Z { insert } => val.inserts[insert - 1] = v,
            }
        }
        val
    }

    pub fn grading(&self, x: Letter) -> i32 {
        self.dga.generators[self.index[&x]].grading
    }
}

/// The equations of an augmentation in matrix form: the crossing and cusp
/// conditions, A_j^2 = 0 and (I + B_j) A_j = Ã_{j-1} (I + B_j), together
/// with support in grading 0.
pub fn check_dipped_augmentation(d: &DippedDiagram, val: &DipValuation) -> bool {
    if val.fits(d).is_err() {
        return false;
    }
    for s in 1..=d.inserts.len() {
        match d.inserts[s - 1] {
            Insert::Crossing(i) => {
                if val.a[s - 2].get(i, i - 1) || (val.inserts[s - 1] && d.crossing_grading(s) != Some(0)) {
                    return false;
                }
            }
            Insert::RightCusp(i) => {
                if !val.a[s - 2].get(i, i - 1) || val.inserts[s - 1] {
                    return false;
                }
            }
            _ => {
                if val.inserts[s - 1] {
                    return false;
                }
            }
        }
    }
    for j in 1..=d.dips() {
        let mu = d.potential(j);
        let (a, b) = (&val.a[j - 1], &val.b[j - 1]);
        let graded = |m: &BitMat, shift: i32| m.entries().iter().all(|&(k, l)| mu[k] - mu[l] + shift == 0);
        if !graded(a, -1) || !graded(b, 0) || !a.square_is_zero() {
            return false;
        }
        let t = a_tilde(d, val, j).expect("valuation fits");
        let ib = BitMat::identity(a.n()).add(b);
        if ib.mul(a) != t.mul(&ib) {
            return false;
        }
    }
    true
}

/// The same condition checked letter by letter: ε∘∂ = 0 on the dipped DGA.
pub fn is_augmentation_generic(dd: &DippedDga, val: &DipValuation) -> bool {
    let e = Augmentation { values: dd.letter_values(val) };
    legendrian_core::augmentation::is_augmentation(&dd.dga, &e)
}

/// One dip after each event except the last, with A_j the j-th gap complex,
/// B_j = H_{k,l} after a mark H_{k,l} and every crossing valued 0.
pub fn mcs_to_dipped_aug(mcs: &Mcs) -> Result<(DippedDiagram, DipValuation), DippedError> {
    let d = DippedDiagram::from_front(&mcs.front)?;
    let mut val = DipValuation::zero(&d);
    for j in 1..=d.dips() {
        let c = &mcs.complexes[j];
        if c.grading != d.potential(j) {
            return Err(DippedError::Mcs(format!("gap {j} gradings {:?} disagree with the front", c.grading)));
        }
        val.a[j - 1] = c.d.clone();
        if let FrontEvent::Mark(k, l) = mcs.events()[j - 1] {
            val.b[j - 1].set(k - 1, l - 1, true);
        }
    }
    Ok((d, val))
}

/// Inverse of `mcs_to_dipped_aug`: each parallel insert must carry a single
/// handleslide and every other B must vanish.
pub fn dipped_aug_to_mcs(d: &DippedDiagram, val: &DipValuation) -> Result<Mcs, DippedError> {
    val.fits(d)?;
    let mut events = Vec::new();
    for (s0, &ins) in d.inserts.iter().enumerate() {
        let b = if s0 < d.dips() { val.b[s0].entries() } else { Vec::new() };
        events.push(match ins {
            Insert::Parallel => match b[..] {
                [(k, l)] => FrontEvent::Mark(k + 1, l + 1),
                _ => return Err(DippedError::Mcs(format!("insert {} is not a single handleslide", s0 + 1))),
            },
            _ if !b.is_empty() => return Err(DippedError::Mcs(format!("B_{} is nonzero at a singular insert", s0 + 1))),
            Insert::Crossing(i) => FrontEvent::Crossing(i),
            Insert::RightCusp(i) => FrontEvent::RightCusp(i),
            Insert::LeftCusp(i) => FrontEvent::LeftCusp(i),
        });
    }
    let front = MarkedFront::new(events).map_err(|e| DippedError::Mcs(e.to_string()))?;
    let mcs = reconstruct(&front).map_err(|e| DippedError::Mcs(e.to_string()))?;
    for j in 1..=d.dips() {
        if mcs.complexes[j].d != val.a[j - 1] {
            return Err(DippedError::Mcs(format!("A_{j} is not the gap complex")));
        }
    }
    Ok(mcs)
}

/// Minimal occ-simple: B vanishes away from parallel inserts and is a single
/// handleslide at each of them.
pub fn is_minimal_occ_simple(d: &DippedDiagram, val: &DipValuation) -> bool {
    (1..=d.dips()).all(|j| match d.inserts[j - 1] {
        Insert::Parallel => val.b[j - 1].entries().len() == 1,
        _ => val.b[j - 1].is_zero(),
    })
}

/// Add a dip right after insert `s` (1..=m), valued B = 0 and A = ε(Ã_{s-1}).
/// The old dip `D_s` now follows a parallel insert.
pub fn extend_by_zero(d: &DippedDiagram, val: &DipValuation, s: usize) -> Result<(DippedDiagram, DipValuation), DippedError> {
    let a = a_tilde(d, val, s)?;
    let mut inserts = d.inserts.clone();
    inserts.insert(s, Insert::Parallel);
    let mut potentials = d.potentials.clone();
    potentials.insert(s - 1, d.potentials[s - 1].clone());
    let nd = DippedDiagram::new(inserts, potentials)?;
    let mut nv = val.clone();
    nv.b.insert(s - 1, BitMat::zero(a.n()));
    nv.a.insert(s - 1, a);
    nv.inserts.insert(s, false);
    Ok((nd, nv))
}

/// Add a dip right after dip `j`, separated from it by a parallel insert,
/// valued A = A_j and B = 0.
pub fn extend_by_zero_after_dip(d: &DippedDiagram, val: &DipValuation, j: usize) -> Result<(DippedDiagram, DipValuation), DippedError> {
    val.fits(d)?;
    if j < 1 || j > d.dips() {
        return Err(DippedError::Shape(format!("no dip {j}")));
    }
    let mut inserts = d.inserts.clone();
    inserts.insert(j, Insert::Parallel);
    let mut potentials = d.potentials.clone();
    potentials.insert(j, d.potentials[j - 1].clone());
    let nd = DippedDiagram::new(inserts, potentials)?;
    let mut nv = val.clone();
    nv.a.insert(j, val.a[j - 1].clone());
    nv.b.insert(j, BitMat::zero(d.dim(j)));
    nv.inserts.insert(j, false);
    Ok((nd, nv))
}

/// Add a dip right after dip `j`, just left of the crossing insert
/// `I_{j+1}` at strands i+1, i (grading 0). The new dip carries
/// B = H_{i+1,i} and A = E A_j E, and the crossing's value flips; the new
/// value is returned.
pub fn extend_by_handleslide(
    d: &DippedDiagram,
    val: &DipValuation,
    j: usize,
) -> Result<(DippedDiagram, DipValuation, bool), DippedError> {
    val.fits(d)?;
    if j < 1 || j > d.dips() {
        return Err(DippedError::Shape(format!("no dip {j}")));
    }
    let Insert::Crossing(i) = d.inserts[j] else {
        return Err(DippedError::Insert { insert: j + 1, reason: "not a crossing".into() });
    };
    if d.crossing_grading(j + 1) != Some(0) {
        return Err(DippedError::Insert { insert: j + 1, reason: "crossing is not of grading 0".into() });
    }
    let mut inserts = d.inserts.clone();
    inserts.insert(j, Insert::Parallel);
    let mut potentials = d.potentials.clone();
    potentials.insert(j, d.potentials[j - 1].clone());
    let nd = DippedDiagram::new(inserts, potentials)?;
    let mut a = val.a[j - 1].clone();
    a.conj_elementary(i, i - 1);
    let mut nv = val.clone();
    nv.a.insert(j, a);
    nv.b.insert(j, BitMat::unit(d.dim(j), i, i - 1));
    nv.inserts.insert(j, false);
    nv.inserts[j + 1] ^= true;
    let flipped = nv.inserts[j + 1];
    Ok((nd, nv, flipped))
}

/// Build a minimal occ-simple augmentation from the values of an
/// augmentation on the crossings of an unmarked front (indexed by event),
/// adding dips left to right: a handleslide dip before each augmented
/// crossing, then a zero-extended dip after every event but the last.
pub fn replay_surjectivity(front: &MarkedFront, crossing_values: &[bool]) -> Result<(DippedDiagram, DipValuation), DippedError> {
    let events = front.events();
    if crossing_values.len() != events.len() {
        return Err(DippedError::Shape("one value per event expected".into()));
    }
    let mut inserts = Vec::new();
    let mut potentials: Vec<Vec<i32>> = Vec::new();
    let mut val = DipValuation { a: Vec::new(), b: Vec::new(), inserts: Vec::new() };
    for (e, &ev) in events.iter().enumerate() {
        if ev.is_mark() {
            return Err(DippedError::Mcs("front already carries marks".into()));
        }
        let ins = insert_of(ev);
        let mut value = crossing_values[e];
        if value && !matches!(ins, Insert::Crossing(_)) {
            return Err(DippedError::Insert { insert: inserts.len() + 1, reason: "only crossings can be augmented".into() });
        }
        if value {
            let Insert::Crossing(i) = ins else { unreachable!() };
            let mu = potentials.last().cloned().unwrap_or_default();
            if mu[i] != mu[i - 1] {
                return Err(DippedError::Insert { insert: inserts.len() + 1, reason: "augmented crossing of nonzero grading".into() });
            }
            let mut a = val.a.last().cloned().unwrap();
            a.conj_elementary(i, i - 1);
            inserts.push(Insert::Parallel);
            potentials.push(mu.clone());
            val.b.push(BitMat::unit(mu.len(), i, i - 1));
            val.a.push(a);
            val.inserts.push(false);
            value = false;
        }
        inserts.push(ins);
        val.inserts.push(value);
        if e + 1 == events.len() {
            break;
        }
        let mu = front.gradings_at(e + 1).map_err(|err| DippedError::Mcs(err.to_string()))?;
        let prev = val.a.last().map(const_sym).unwrap_or_else(|| zero_sym(0));
        let t = eval_sym(&a_tilde_sym(ins, &prev, &const_el(value))?, &|_| false);
        potentials.push(mu);
        val.b.push(BitMat::zero(t.n()));
        val.a.push(t);
    }
    let d = DippedDiagram::new(inserts, potentials)?;
    Ok((d, val))
}

/// H applied to a polynomial, as a derivation: e1 on the left of the hit
/// letter, e2 on the right.
fn h_of(p: &AlgebraElement, e1: &[bool], e2: &[bool], h: &[bool]) -> bool {
    let mut out = false;
    for w in &p.terms {
        for (i, &x) in w.iter().enumerate() {
            if h[x] && w[..i].iter().all(|&y| e1[y]) && w[i + 1..].iter().all(|&y| e2[y]) {
                out = !out;
            }
        }
    }
    out
}

/// Is `e1 - e2 = h∘∂`? Checked through the crossing and cusp equations and
///   e1(A)(I + H(A)) = (I + H(A)) e2(A),
///   H(B) e2(A_j) + e1(Ã_{j-1}) H(B) = e1(B) + e2(B) + (I + e1(B)) H(A_j) + H(Ã_{j-1})(I + e2(B)).
/// `h` must vanish off grading -1.
pub fn check_dipped_homotopy(d: &DippedDiagram, e1: &DipValuation, e2: &DipValuation, h: &DipValuation) -> Result<bool, DippedError> {
    e1.fits(d)?;
    e2.fits(d)?;
    h.fits(d)?;
    let dd = DippedDga::new(d);
    let hv = dd.letter_values(h);
    if dd.letters.iter().zip(&hv).any(|(&x, &v)| v && dd.grading(x) != -1) {
        return Ok(false);
    }
    for s in 1..=d.inserts.len() {
        if let Insert::Crossing(i) | Insert::RightCusp(i) = d.inserts[s - 1] {
            if e1.inserts[s - 1] ^ e2.inserts[s - 1] != h.a[s - 2].get(i, i - 1) {
                return Ok(false);
            }
        }
    }
    let v1 = dd.letter_values(e1);
    let v2 = dd.letter_values(e2);
    for j in 1..=d.dips() {
        let n = d.dim(j);
        let id = BitMat::identity(n);
        let (a1, a2, ha) = (&e1.a[j - 1], &e2.a[j - 1], &h.a[j - 1]);
        let iha = id.add(ha);
        if a1.mul(&iha) != iha.mul(a2) {
            return Ok(false);
        }
        let t = &dd.tilde[j - 1];
        let t1 = eval_sym(t, &|x| v1[x]);
        let mut ht = BitMat::zero(n);
        for r in 0..n {
            for c in 0..n {
                if h_of(&t[r][c], &v1, &v2, &hv) {
                    ht.set(r, c, true);
                }
            }
        }
        let (b1, b2, hb) = (&e1.b[j - 1], &e2.b[j - 1], &h.b[j - 1]);
        let lhs = hb.mul(a2).add(&t1.mul(hb));
        let rhs = b1.add(b2).add(&id.add(b1).mul(ha)).add(&ht.mul(&id.add(b2)));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyResult {
    Found(DipValuation),
    /// Letters whose equations add up to 0 = 1.
    Obstructed(Vec<Letter>),
}

/// Solve for a homotopy between two augmentations of the same dipped diagram.
pub fn solve_dipped_homotopy(d: &DippedDiagram, e1: &DipValuation, e2: &DipValuation) -> Result<HomotopyResult, DippedError> {
    e1.fits(d)?;
    e2.fits(d)?;
    let dd = DippedDga::new(d);
    let a1 = Augmentation { values: dd.letter_values(e1) };
    let a2 = Augmentation { values: dd.letter_values(e2) };
    let (sys, unknowns) = homotopy_system(&dd.dga, &a1, &a2);
    Ok(match sys.solve() {
        Solution::Solved(x) => {
            let mut values = vec![false; dd.letters.len()];
            for (&g, v) in unknowns.iter().zip(x) {
                values[g] = v;
            }
            HomotopyResult::Found(dd.valuation(d, &values))
        }
        Solution::Inconsistent(eqs) => HomotopyResult::Obstructed(eqs.into_iter().map(|q| dd.letters[q]).collect()),
    })
}

/// One equation of h∘∂ = e1 - e2, restricted to the grading -1 letters:
/// the letters whose h-values appear, and the right-hand side.
pub fn homotopy_equation(d: &DippedDiagram, e1: &DipValuation, e2: &DipValuation, x: Letter) -> (Vec<Letter>, bool) {
    let dd = DippedDga::new(d);
    let a1 = Augmentation { values: dd.letter_values(e1) };
    let a2 = Augmentation { values: dd.letter_values(e2) };
    let (sys, unknowns) = homotopy_system(&dd.dga, &a1, &a2);
    let q = dd.index[&x];
    let row = &sys.rows[q];
    let vars = unknowns.iter().enumerate().filter(|&(c, _)| row.get(c)).map(|(_, &g)| dd.letters[g]).collect();
    (vars, sys.rhs[q])
}

/// Bring `e2` onto the diagram `target` by zero-extending at each parallel
/// insert of `target` that `d2` lacks. `d2`'s inserts must be a subsequence
/// of `target`'s obtained by deleting parallel inserts.
pub fn extend_to(d2: &DippedDiagram, e2: &DipValuation, target: &DippedDiagram) -> Result<(DippedDiagram, DipValuation), DippedError> {
    let mut d = d2.clone();
    let mut e = e2.clone();
    let mut s = 0;
    while s < target.inserts.len() {
        if s < d.inserts.len() && d.inserts[s] == target.inserts[s] {
            s += 1;
            continue;
        }
        if target.inserts[s] != Insert::Parallel || s == 0 {
            return Err(DippedError::Insert { insert: s + 1, reason: "diagrams differ away from parallel inserts".into() });
        }
        (d, e) = extend_by_zero_after_dip(&d, &e, s)?;
        s += 1;
    }
    if d != *target {
        return Err(DippedError::Shape("diagrams still differ after extension".into()));
    }
    Ok((d, e))
}
