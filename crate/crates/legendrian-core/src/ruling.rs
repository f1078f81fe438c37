//! Graded normal rulings.
//!
//! A ruling is tracked as a fixed-point-free involution on the positions of
//! each slice. Crossings are numbered 1, 2, ... in word order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{FrontError, RulingError};
use crate::front::{FrontDiagram, FrontEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    Switch,
    Departure,
    Return,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingTag {
    pub kind: CrossingKind,
    pub graded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalRuling {
    /// Crossing numbers (1-based) of the switches.
    pub switches: BTreeSet<usize>,
    /// Per gap, partner of each position, all 1-based (index 0 unused).
    pub pairing: Vec<Vec<usize>>,
    /// Per crossing, in word order.
    pub classification: Vec<CrossingTag>,
}

/// Relative position of the intervals [min(a,b), max(a,b)] of two strands
/// and their companions.
fn interleaved(i: usize, a: usize, j: usize, b: usize) -> bool {
    let (p, q) = (i.min(a), i.max(a));
    let (r, s) = (j.min(b), j.max(b));
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

fn transpose(tau: &[usize], i: usize) -> Vec<usize> {
    let s = |p: usize| if p == i { i + 1 } else if p == i + 1 { i } else { p };
    let mut out = vec![0; tau.len()];
    for p in 1..tau.len() {
        out[s(p)] = s(tau[p]);
    }
    out
}

/// Pairing after a left cusp at i, where the new strands pair with each other.
fn after_left_cusp(tau: &[usize], i: usize) -> Vec<usize> {
    let shift = |p: usize| if p >= i { p + 2 } else { p };
    let mut out = vec![0; tau.len() + 2];
    for p in 1..tau.len() {
        out[shift(p)] = shift(tau[p]);
    }
    out[i] = i + 1;
    out[i + 1] = i;
    out
}

fn after_right_cusp(tau: &[usize], i: usize) -> Vec<usize> {
    let shift = |p: usize| if p > i + 1 { p - 2 } else { p };
    let mut out = vec![0; tau.len() - 2];
    for p in 1..tau.len() {
        if p != i && p != i + 1 {
            out[shift(p)] = shift(tau[p]);
        }
    }
    out
}

/// Is a switch at X(i) normal for the pairing `tau` just left of it?
pub fn switch_is_normal(tau: &[usize], i: usize) -> bool {
    tau[i] != i + 1 && !interleaved(i, tau[i], i + 1, tau[i + 1])
}

/// Classify an unswitched crossing from the pairing just left of it.
pub fn unswitched_kind(tau: &[usize], i: usize) -> CrossingKind {
    if interleaved(i, tau[i], i + 1, tau[i + 1]) {
        CrossingKind::Return
    } else {
        CrossingKind::Departure
    }
}

pub fn enumerate_rulings(front: &FrontDiagram) -> Result<Vec<NormalRuling>, FrontError> {
    let front = if front.has_marks() { front.underlying() } else { front.clone() };
    front.maslov_potential()?;
    let gradings: Vec<i32> = front
        .events()
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e, FrontEvent::Crossing(_)))
        .map(|(e, _)| front.crossing_grading(e))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut state = Walk { pairing: vec![vec![0]], switches: BTreeSet::new(), tags: Vec::new() };
    walk(&front, &gradings, 0, &mut state, &mut out);
    out.sort_by(|a, b| a.switches.iter().cmp(b.switches.iter()));
    Ok(out)
}

struct Walk {
    pairing: Vec<Vec<usize>>,
    switches: BTreeSet<usize>,
    tags: Vec<CrossingTag>,
}

fn walk(front: &FrontDiagram, gradings: &[i32], e: usize, st: &mut Walk, out: &mut Vec<NormalRuling>) {
    if e == front.len() {
        out.push(NormalRuling {
            switches: st.switches.clone(),
            pairing: st.pairing.clone(),
            classification: st.tags.clone(),
        });
        return;
    }
    let tau = st.pairing.last().unwrap().clone();
    let mut step = |st: &mut Walk, next: Vec<usize>, tag: Option<CrossingTag>, switch: Option<usize>| {
        st.pairing.push(next);
        if let Some(t) = tag {
            st.tags.push(t);
        }
        if let Some(s) = switch {
            st.switches.insert(s);
        }
        walk(front, gradings, e + 1, st, out);
        st.pairing.pop();
        if tag.is_some() {
            st.tags.pop();
        }
        if let Some(s) = switch {
            st.switches.remove(&s);
        }
    };
    match front.events()[e] {
        FrontEvent::LeftCusp(i) => step(st, after_left_cusp(&tau, i), None, None),
        FrontEvent::RightCusp(i) => {
            if tau[i] == i + 1 {
                step(st, after_right_cusp(&tau, i), None, None);
            }
        }
        FrontEvent::Crossing(i) => {
            if tau[i] == i + 1 {
                return;
            }
            let c = st.tags.len();
            let graded = gradings[c] == 0;
            if graded && switch_is_normal(&tau, i) {
                let tag = CrossingTag { kind: CrossingKind::Switch, graded };
                step(st, tau.clone(), Some(tag), Some(c + 1));
            }
            let tag = CrossingTag { kind: unswitched_kind(&tau, i), graded };
            step(st, transpose(&tau, i), Some(tag), None);
        }
        FrontEvent::Mark(..) => unreachable!(),
    }
}

/// Rebuild a ruling from its switch set; None if the switches do not form one.
pub fn ruling_from_switches(front: &FrontDiagram, switches: &BTreeSet<usize>) -> Result<Option<NormalRuling>, FrontError> {
    let front = if front.has_marks() { front.underlying() } else { front.clone() };
    let mut pairing = vec![vec![0]];
    let mut tags = Vec::new();
    for (e, ev) in front.events().iter().enumerate() {
        let tau = pairing.last().unwrap().clone();
        let next = match *ev {
            FrontEvent::LeftCusp(i) => after_left_cusp(&tau, i),
            FrontEvent::RightCusp(i) => {
                if tau[i] != i + 1 {
                    return Ok(None);
                }
                after_right_cusp(&tau, i)
            }
            FrontEvent::Crossing(i) => {
                if tau[i] == i + 1 {
                    return Ok(None);
                }
                let graded = front.crossing_grading(e)? == 0;
                if switches.contains(&(tags.len() + 1)) {
                    if !graded || !switch_is_normal(&tau, i) {
                        return Ok(None);
                    }
                    tags.push(CrossingTag { kind: CrossingKind::Switch, graded });
                    tau
                } else {
                    tags.push(CrossingTag { kind: unswitched_kind(&tau, i), graded });
                    transpose(&tau, i)
                }
            }
            FrontEvent::Mark(..) => unreachable!(),
        };
        pairing.push(next);
    }
    Ok(Some(NormalRuling { switches: switches.clone(), pairing, classification: tags }))
}

pub fn classify_crossings(ruling: &NormalRuling) -> &[CrossingTag] {
    &ruling.classification
}

/// Number of graded departure-return pairs. On a 2-bridge front a return
/// is always immediately preceded by its departure.
pub fn nu(front: &FrontDiagram, ruling: &NormalRuling) -> Result<usize, RulingError> {
    if !front.is_two_bridge() {
        return Err(RulingError::NotTwoBridge);
    }
    Ok(departure_return_pairs(ruling).iter().filter(|p| p.graded).count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepartureReturn {
    /// 1-based crossing numbers.
    pub departure: usize,
    pub ret: usize,
    pub graded: bool,
}

/// Pairs each return with the previous crossing (2-bridge fronts only).
pub fn departure_return_pairs(ruling: &NormalRuling) -> Vec<DepartureReturn> {
    let tags = &ruling.classification;
    let mut out = Vec::new();
    for c in 0..tags.len() {
        if tags[c].kind == CrossingKind::Return {
            assert!(
                c > 0 && tags[c - 1].kind == CrossingKind::Departure,
                "return at crossing {} does not follow a departure",
                c + 1
            );
            out.push(DepartureReturn {
                departure: c,
                ret: c + 1,
                graded: tags[c - 1].graded && tags[c].graded,
            });
        }
    }
    out
}

pub fn sum_two_to_nu(front: &FrontDiagram, rulings: &[NormalRuling]) -> Result<u64, RulingError> {
    rulings.iter().map(|r| nu(front, r).map(|v| 1u64 << v)).sum()
}
