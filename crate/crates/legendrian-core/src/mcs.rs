//! Morse complex sequences stored as marked fronts.

use std::collections::BTreeSet;

use crate::complex::OrderedChainComplex;
use crate::error::{ComplexError, McsError, MoveError};
use crate::front::{FrontEvent, MarkedFront};
use crate::ruling::{ruling_from_switches, NormalRuling};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mcs {
    pub front: MarkedFront,
    /// Complex at each gap; the first and last are empty.
    pub complexes: Vec<OrderedChainComplex>,
}

/// Apply one event to the complex to its left.
pub fn step(front: &MarkedFront, e: usize, c: &OrderedChainComplex) -> Result<OrderedChainComplex, McsError> {
    let ev = front.events()[e];
    let wrap = |cause: ComplexError| McsError::Event { event: e + 1, token: ev.to_string(), cause };
    match ev {
        FrontEvent::LeftCusp(i) => {
            let g = front.gradings_at(e + 1)?[i - 1];
            c.birth(i, g).map_err(wrap)
        }
        FrontEvent::RightCusp(i) => c.death(i).map_err(wrap),
        FrontEvent::Crossing(i) => c.swap(i).map_err(wrap),
        FrontEvent::Mark(k, l) => c.handleslide(k, l).map_err(wrap),
    }
}

pub fn reconstruct(front: &MarkedFront) -> Result<Mcs, McsError> {
    front.maslov_potential()?;
    let mut complexes = vec![OrderedChainComplex::empty()];
    for e in 0..front.len() {
        let next = step(front, e, complexes.last().unwrap())?;
        debug_assert!(next.is_valid());
        complexes.push(next);
    }
    if complexes.last().unwrap().n() != 0 {
        return Err(McsError::NotClosed);
    }
    Ok(Mcs { front: front.clone(), complexes })
}

/// Complex at gap g, folding only the first g events.
pub fn complex_at(front: &MarkedFront, g: usize) -> Result<OrderedChainComplex, McsError> {
    let mut c = OrderedChainComplex::empty();
    for e in 0..g {
        c = step(front, e, &c)?;
    }
    Ok(c)
}

impl Mcs {
    pub fn from_word(word: &str) -> Result<Mcs, MoveError> {
        let front = crate::front::parse_front(word).map_err(McsError::from)?;
        Ok(reconstruct(&front)?)
    }

    pub fn events(&self) -> &[FrontEvent] {
        self.front.events()
    }

    pub fn marks(&self) -> usize {
        self.events().iter().filter(|e| e.is_mark()).count()
    }
}

/// The ruling read off from the pairings of the gap complexes.
pub fn ruling_of(mcs: &Mcs) -> Result<NormalRuling, MoveError> {
    let mut switches = BTreeSet::new();
    let mut crossing = 0;
    let mut pairings = Vec::new();
    for (e, ev) in mcs.events().iter().enumerate() {
        let before = mcs.complexes[e].pairing().map_err(|err| MoveError::Internal(err.to_string()))?;
        if !ev.is_mark() {
            pairings.push(before.clone());
        }
        if let FrontEvent::Crossing(_) = *ev {
            crossing += 1;
            let after = mcs.complexes[e + 1].pairing().map_err(|err| MoveError::Internal(err.to_string()))?;
            if after == before {
                switches.insert(crossing);
            }
        }
    }
    pairings.push(vec![0]);
    let underlying = mcs.front.underlying();
    let ruling = ruling_from_switches(&underlying, &switches)
        .map_err(|e| MoveError::Internal(e.to_string()))?
        .ok_or_else(|| MoveError::Internal("pairings do not form a normal ruling".into()))?;
    if ruling.pairing != pairings {
        return Err(MoveError::Internal("ruling pairings disagree with the MCS".into()));
    }
    Ok(ruling)
}
