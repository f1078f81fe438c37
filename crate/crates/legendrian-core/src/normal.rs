//! Normal forms of MCSs and the map to augmentation classes.

use std::collections::BTreeSet;

use crate::augmentation::{class_representative, is_augmentation, Augmentation};
use crate::dga::ResolvedDga;
use crate::error::MoveError;
use crate::front::{FrontDiagram, FrontEvent, MarkedFront};
use crate::mcs::{complex_at, reconstruct, ruling_of, Mcs};
use crate::moves::{block17, plan, rewrite, Mark, MoveInstance, MoveOp};
use crate::ruling::{departure_return_pairs, switch_is_normal, CrossingKind, NormalRuling};
use crate::sweep::{bubble_plan, normalize_plan, ListStep};

/// A marked front being rewritten, with the journal of moves applied.
pub struct Engine {
    pub front: MarkedFront,
    pub journal: Vec<MoveInstance>,
}

fn internal(msg: impl Into<String>) -> MoveError {
    MoveError::Internal(msg.into())
}

impl Engine {
    pub fn new(front: MarkedFront) -> Self {
        Engine { front, journal: Vec::new() }
    }

    fn ev(&self, p: usize) -> FrontEvent {
        self.front.events()[p]
    }

    fn mark(&self, p: usize) -> Mark {
        match self.ev(p) {
            FrontEvent::Mark(k, l) => (k, l),
            other => panic!("expected a mark at {p}, found {other}"),
        }
    }

    fn marks(&self, vs: usize, ve: usize) -> Vec<Mark> {
        (vs..ve).map(|p| self.mark(p)).collect()
    }

    /// Apply `op` at 0-based position `p`.
    fn apply(&mut self, p: usize, op: MoveOp) -> Result<(), MoveError> {
        let mv = plan(&self.front, p + 1, op)?;
        self.front = rewrite(&self.front, &mv)?;
        self.journal.push(mv);
        Ok(())
    }

    /// Replay list steps on the marks starting at `vs`; returns the new end.
    fn run_steps(&mut self, vs: usize, mut ve: usize, steps: &[ListStep]) -> Result<usize, MoveError> {
        for &s in steps {
            match s {
                ListStep::Cancel(p) => {
                    self.apply(vs + p, MoveOp::Delete1)?;
                    ve -= 2;
                }
                ListStep::Swap(p) => self.apply(vs + p, MoveOp::Swap)?,
                ListStep::Expand(p) => {
                    self.apply(vs + p, MoveOp::Expand)?;
                    ve += 1;
                }
            }
        }
        Ok(ve)
    }

    fn normalize(&mut self, vs: usize, ve: usize) -> Result<usize, MoveError> {
        let steps = normalize_plan(&self.marks(vs, ve))?;
        self.run_steps(vs, ve, &steps)
    }

    /// Bubble the mark at `p` to one end of V. Returns the new end of V and
    /// the mark's final position, or None if it cancelled.
    fn bubble(&mut self, vs: usize, ve: usize, p: usize, left: bool) -> Result<(usize, Option<usize>), MoveError> {
        let (steps, pos) = bubble_plan(&self.marks(vs, ve), p - vs, left);
        let ve = self.run_steps(vs, ve, &steps)?;
        Ok((ve, pos.map(|q| vs + q)))
    }

    /// Move every mark of V = [vs, ve) rightward across the singular event at ve.
    fn pass_right(&mut self, vs: usize, ve: usize) -> Result<(), MoveError> {
        for p in (vs..ve).rev() {
            self.apply(p, MoveOp::PassRight)?;
        }
        Ok(())
    }

    fn simple_at(&self, g: usize) -> Result<crate::complex::OrderedChainComplex, MoveError> {
        let c = complex_at(&self.front, g)?;
        if !c.is_simple() {
            return Err(internal(format!("complex at gap {g} is not simple")));
        }
        Ok(c)
    }

    /// Remove every mark of V touching the strands of the right cusp at ve.
    /// With `left_simple` the complex left of V is simple; otherwise the one
    /// between V and the cusp is.
    fn clear_cusp(&mut self, vs: usize, mut ve: usize, i: usize, left_simple: bool) -> Result<usize, MoveError> {
        let touches = |m: Mark| m.0 == i || m.0 == i + 1 || m.1 == i || m.1 == i + 1;
        let absorbable = |m: Mark| (m.1 == i + 1 && m.0 > i + 1) || (m.0 == i && m.1 < i);
        for _round in 0..100_000 {
            let v = self.marks(vs, ve);
            if !v.iter().any(|&m| touches(m)) {
                return Ok(ve);
            }
            if let Some(q) = (0..v.len()).rev().find(|&q| absorbable(v[q])) {
                let (nve, pos) = self.bubble(vs, ve, vs + q, false)?;
                ve = nve;
                if pos.is_some() {
                    self.apply(ve - 1, MoveOp::Absorb)?;
                    ve -= 1;
                }
                continue;
            }
            let q = (0..v.len()).find(|&q| touches(v[q])).unwrap();
            let h = v[q];
            // (l, k) chosen so that E(l, k) contains h and the rest is absorbable
            let (l, k) = if h.0 == i + 1 { (h.1, i) } else { (i + 1, h.0) };
            let (nve, pos) = self.bubble(vs, ve, vs + q, left_simple)?;
            ve = nve;
            let Some(pos) = pos else { continue };
            let gap = if left_simple { pos } else { pos + 1 };
            // right of V the block only needs <d y_{i+1}|y_i> = 1, which holds
            // next to the cusp even after earlier absorptions
            let c = if left_simple { self.simple_at(gap)? } else { complex_at(&self.front, gap)? };
            let e = block17(&c, l, k).map_err(internal)?;
            let copy = e.iter().position(|&m| m == h).ok_or_else(|| internal("block misses the mark"))?;
            self.apply(gap, MoveOp::Insert17(l, k))?;
            if left_simple {
                // block occupies [gap, gap+len); bring the copy next to h
                for p in gap + copy..gap + e.len() - 1 {
                    self.apply(p, MoveOp::Swap)?;
                }
                self.apply(gap + e.len() - 1, MoveOp::Delete1)?;
            } else {
                for p in (gap..gap + copy).rev() {
                    self.apply(p, MoveOp::Swap)?;
                }
                self.apply(gap - 1, MoveOp::Delete1)?;
            }
            ve = ve + e.len() - 2;
        }
        Err(internal("cusp clearing does not terminate"))
    }
}

/// Companions of the crossing strands just left of X(i) under `tau`, and
/// the mark joining them when both lie on the same side.
fn companion_mark(tau: &[usize], i: usize) -> Option<Mark> {
    let (a, b) = (tau[i], tau[i + 1]);
    let opposite = (a < i && b > i + 1) || (a > i + 1 && b < i);
    if opposite {
        None
    } else {
        Some((a.max(b), a.min(b)))
    }
}

pub fn sr_bar_form(mcs: &Mcs) -> Result<(Mcs, Vec<MoveInstance>), MoveError> {
    let mut eng = Engine::new(mcs.front.clone());
    let (mut vs, mut ve) = (0, 0);
    while ve < eng.front.len() {
        match eng.ev(ve) {
            FrontEvent::Mark(..) => ve += 1,
            FrontEvent::LeftCusp(_) => {
                ve = eng.normalize(vs, ve)?;
                eng.pass_right(vs, ve)?;
                vs += 1;
                ve += 1;
            }
            FrontEvent::Crossing(i) => {
                ve = eng.normalize(vs, ve)?;
                let marked = match (vs..ve).find(|&p| eng.mark(p) == (i + 1, i)) {
                    Some(p) => {
                        let (nve, pos) = eng.bubble(vs, ve, p, true)?;
                        if pos != Some(vs) {
                            return Err(internal("could not extract the crossing mark"));
                        }
                        vs += 1;
                        ve = eng.normalize(vs, nve)?;
                        true
                    }
                    None => false,
                };
                eng.pass_right(vs, ve)?;
                vs += 1;
                ve += 1;
                if marked {
                    let tau = eng.simple_at(vs - 2)?.pairing().map_err(|e| internal(e.to_string()))?;
                    let b = companion_mark(&tau, i);
                    if switch_is_normal(&tau, i) {
                        eng.apply(vs, MoveOp::Insert1((i + 1, i)))?;
                        ve += 2;
                        vs += 1;
                        if let Some(b) = b {
                            eng.apply(vs, MoveOp::Insert1(b))?;
                            ve += 2;
                            vs += 1;
                        }
                    } else if let Some(b) = b {
                        eng.apply(vs, MoveOp::Insert1(b))?;
                        ve += 2;
                        vs += 1;
                    }
                }
                eng.simple_at(vs)?;
            }
            FrontEvent::RightCusp(i) => {
                ve = eng.normalize(vs, ve)?;
                eng.simple_at(vs)?;
                ve = eng.clear_cusp(vs, ve, i, true)?;
                eng.pass_right(vs, ve)?;
                vs += 1;
                ve += 1;
            }
        }
    }
    if vs != ve {
        return Err(internal("marks left over at the end of the sweep"));
    }
    Ok((reconstruct(&eng.front)?, eng.journal))
}

pub fn is_a_form(front: &MarkedFront) -> bool {
    let ev = front.events();
    ev.iter().enumerate().all(|(p, e)| match *e {
        FrontEvent::Mark(k, l) => matches!(ev.get(p + 1), Some(FrontEvent::Crossing(i)) if (k, l) == (i + 1, *i)),
        _ => true,
    })
}

pub fn a_form(mcs: &Mcs) -> Result<(Mcs, Vec<MoveInstance>), MoveError> {
    if is_a_form(&mcs.front) {
        return Ok((mcs.clone(), Vec::new()));
    }
    let (sr, mut journal) = sr_bar_form(mcs)?;
    let mut eng = Engine::new(sr.front);
    let (mut vs, mut ve) = (0, 0);
    while ve < eng.front.len() {
        match eng.ev(ve) {
            FrontEvent::Mark(..) => ve += 1,
            FrontEvent::LeftCusp(_) => {
                ve = eng.normalize(vs, ve)?;
                eng.pass_right(vs, ve)?;
                vs += 1;
                ve += 1;
            }
            FrontEvent::Crossing(i) => {
                ve = eng.normalize(vs, ve)?;
                if let Some(p) = (vs..ve).find(|&p| eng.mark(p) == (i + 1, i)) {
                    let (nve, pos) = eng.bubble(vs, ve, p, true)?;
                    if pos != Some(vs) {
                        return Err(internal("could not extract the crossing mark"));
                    }
                    vs += 1;
                    ve = eng.normalize(vs, nve)?;
                }
                eng.pass_right(vs, ve)?;
                vs += 1;
                ve += 1;
            }
            FrontEvent::RightCusp(i) => {
                ve = eng.normalize(vs, ve)?;
                eng.simple_at(ve)?;
                ve = eng.clear_cusp(vs, ve, i, false)?;
                eng.pass_right(vs, ve)?;
                vs += 1;
                ve += 1;
            }
        }
    }
    if vs != ve {
        return Err(internal("marks left over at the end of the sweep"));
    }
    journal.extend(eng.journal);
    let out = reconstruct(&eng.front)?;
    debug_assert!(is_a_form(&out.front));
    Ok((out, journal))
}

/// The augmentation of an A-form: the marked crossings.
pub fn a_form_augmentation(front: &MarkedFront, dga: &ResolvedDga) -> Augmentation {
    let mut values = vec![false; dga.len()];
    let ev = front.events();
    let mut q = 0;
    for (p, e) in ev.iter().enumerate() {
        match e {
            FrontEvent::Crossing(_) => {
                let gen = dga.generators.iter().filter(|g| g.kind == crate::dga::GeneratorKind::Crossing).nth(q).unwrap();
                values[gen.id] = p > 0 && ev[p - 1].is_mark();
                q += 1;
            }
            _ => continue,
        }
    }
    Augmentation { values }
}

/// The augmentation read off the A-form of `mcs`.
pub fn psi_augmentation(mcs: &Mcs, dga: &ResolvedDga) -> Result<Augmentation, MoveError> {
    let (a, _) = a_form(mcs)?;
    let e = a_form_augmentation(&a.front, dga);
    if !is_augmentation(dga, &e) {
        return Err(internal("A-form does not give an augmentation"));
    }
    Ok(e)
}

/// The class of Psi(mcs), as its lexicographically least member.
pub fn psi(mcs: &Mcs, dga: &ResolvedDga) -> Result<Augmentation, MoveError> {
    Ok(class_representative(dga, &psi_augmentation(mcs, dga)?))
}

/// One mark just left of each augmented crossing.
pub fn aug_to_mcs(e: &Augmentation, front: &FrontDiagram, dga: &ResolvedDga) -> Result<Mcs, MoveError> {
    let mut events = Vec::new();
    for (p, ev) in front.events().iter().enumerate() {
        if let FrontEvent::Crossing(i) = *ev {
            let gen = dga.generators.iter().find(|g| g.source_event == p).unwrap();
            if e.values[gen.id] {
                events.push(FrontEvent::Mark(i + 1, i));
            }
        }
        events.push(*ev);
    }
    let front = MarkedFront::new(events).map_err(|err| internal(err.to_string()))?;
    reconstruct(&front).map_err(|err| internal(format!("augmentation does not give an MCS: {err}")))
}

/// The S R-bar form with the given ruling and marked graded returns
/// (1-based crossing numbers).
pub fn sr_bar_from_ruling(front: &FrontDiagram, ruling: &NormalRuling, marked: &BTreeSet<usize>) -> Result<MarkedFront, MoveError> {
    let mut events = Vec::new();
    let mut c = 0;
    for (e, ev) in front.events().iter().enumerate() {
        if let FrontEvent::Crossing(i) = *ev {
            let tau = &ruling.pairing[e];
            let tag = ruling.classification[c];
            c += 1;
            let b = companion_mark(tau, i);
            let h = FrontEvent::Mark(i + 1, i);
            match tag.kind {
                CrossingKind::Switch => {
                    events.extend([h, *ev, h]);
                    events.extend(b.map(|(k, l)| FrontEvent::Mark(k, l)));
                }
                CrossingKind::Return if marked.contains(&c) => {
                    if !tag.graded {
                        return Err(internal(format!("crossing {c} is an ungraded return")));
                    }
                    events.extend([h, *ev]);
                    events.extend(b.map(|(k, l)| FrontEvent::Mark(k, l)));
                }
                _ => {
                    if marked.contains(&c) {
                        return Err(internal(format!("crossing {c} is not a return")));
                    }
                    events.push(*ev);
                }
            }
        } else {
            events.push(*ev);
        }
    }
    MarkedFront::new(events).map_err(|err| internal(err.to_string()))
}

/// Returns (1-based crossing numbers) that carry a mark just left of them.
pub fn marked_returns(front: &MarkedFront, ruling: &NormalRuling) -> BTreeSet<usize> {
    let ev = front.events();
    let mut out = BTreeSet::new();
    let mut c = 0;
    for (p, e) in ev.iter().enumerate() {
        if let FrontEvent::Crossing(i) = *e {
            let tag = ruling.classification[c];
            c += 1;
            if tag.kind == CrossingKind::Return && p > 0 && ev[p - 1] == FrontEvent::Mark(i + 1, i) {
                out.insert(c);
            }
        }
    }
    out
}

pub fn is_sr_bar_form(mcs: &Mcs) -> bool {
    let Ok(ruling) = ruling_of(mcs) else { return false };
    let marked = marked_returns(&mcs.front, &ruling);
    match sr_bar_from_ruling(&mcs.front.underlying(), &ruling, &marked) {
        Ok(f) => f == mcs.front,
        Err(_) => false,
    }
}

/// Graded returns whose departure is also graded, as 1-based crossing numbers.
pub fn graded_pair_returns(ruling: &NormalRuling) -> BTreeSet<usize> {
    departure_return_pairs(ruling).into_iter().filter(|p| p.graded).map(|p| p.ret).collect()
}

pub fn srg_form(mcs: &Mcs) -> Result<(Mcs, Vec<MoveInstance>), MoveError> {
    if !mcs.front.is_two_bridge() {
        return Err(MoveError::NotTwoBridge);
    }
    let (sr, journal) = sr_bar_form(mcs)?;
    let ruling = ruling_of(&sr)?;
    let mut eng = Engine::new(sr.front.clone());
    eng.journal = journal;
    let pairs = departure_return_pairs(&ruling);
    let todo: Vec<usize> = marked_returns(&sr.front, &ruling)
        .into_iter()
        .filter(|r| pairs.iter().any(|p| p.ret == *r && !p.graded))
        .collect();
    let underlying = sr.front.underlying();
    for &r in todo.iter().rev() {
        let xr = eng
            .front
            .events()
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, FrontEvent::Crossing(_)))
            .nth(r - 1)
            .map(|(p, _)| p)
            .unwrap();
        let FrontEvent::Crossing(i) = eng.ev(xr) else { unreachable!() };
        let e_under = underlying.crossing_events()[r - 1];
        let b = companion_mark(&ruling.pairing[e_under], i);
        if !matches!(eng.ev(xr - 2), FrontEvent::Crossing(_)) || eng.ev(xr - 1) != FrontEvent::Mark(i + 1, i) {
            return Err(internal("departure does not precede the marked return"));
        }
        let mut block = 1;
        if b.is_some() {
            // the companion mark crosses back over the return
            eng.apply(xr, MoveOp::PassLeft)?;
            block = 2;
        }
        // h (and B) now sit at xr-1 .. xr-1+block, just right of the departure at xr-2
        for q in 0..block {
            eng.apply(xr - 2 + q, MoveOp::PassLeft)?;
        }
        let gap = xr - 2;
        let c = eng.simple_at(gap)?;
        let mut have = eng.marks(gap, gap + block);
        have.sort();
        let mut found = None;
        'search: for k in 1..=c.n() {
            for l in 1..k {
                if let Ok(e) = block17(&c, l, k) {
                    if e == have {
                        found = Some((l, k));
                        break 'search;
                    }
                }
            }
        }
        let (l, k) = found.ok_or_else(|| internal(format!("no move 17 removes the marks of return {r}")))?;
        eng.apply(gap, MoveOp::Delete17(l, k))?;
    }
    let out = reconstruct(&eng.front)?;
    Ok((out, eng.journal))
}

/// Is `mcs` the S R-bar_g representative of its class?
pub fn is_srg_form(mcs: &Mcs) -> bool {
    if !is_sr_bar_form(mcs) {
        return false;
    }
    let Ok(ruling) = ruling_of(mcs) else { return false };
    marked_returns(&mcs.front, &ruling).is_subset(&graded_pair_returns(&ruling))
}

pub fn equivalent_2bridge(m1: &Mcs, m2: &Mcs) -> Result<bool, MoveError> {
    if m1.front.underlying() != m2.front.underlying() {
        return Err(MoveError::DifferentFronts);
    }
    Ok(srg_form(m1)?.0.front == srg_form(m2)?.0.front)
}
