//! MCS moves as rewrites of the marked event word.
//!
//! A move is located by a 1-based `at`: the event index of the first event
//! it touches, or for insertions the index the first inserted event gets.
//!
//! | id  | rewrite |
//! |-----|---------|
//! | 1   | insert or delete two identical adjacent marks |
//! | 2-5 | exchange adjacent commuting marks: 2 disjoint or crossing spans, 3 nested, 4 same upper end, 5 same lower end |
//! | 6   | `(a,b) (b,c)` <-> `(b,c) (a,c) (a,b)` and its mirror |
//! | 7/10 | mark passes a crossing it does not touch; 10 when it spans it |
//! | 8/9 | `(k,i)` <-> `(k,i+1)` across X(i) for k > i+1; `(i+1,l)` <-> `(i,l)` for l < i |
//! | 11/14 | mark passes a left cusp; 14 when it spans it |
//! | 12/13 | mark passes a right cusp; 13 when it spans it |
//! | 15/16 | `(u,i+1)` resp. `(i,v)` is absorbed into or emitted from R(i) |
//! | 17  | insert or delete the commuting block E(l,k) at a gap |

use std::fmt;
use std::str::FromStr;

use crate::error::{McsError, MoveError};
use crate::front::{FrontEvent, MarkedFront};
use crate::mcs::{complex_at, reconstruct, Mcs};

pub type Mark = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveOp {
    Insert1(Mark),
    Delete1,
    Swap,
    Expand,
    Contract,
    PassRight,
    PassLeft,
    Absorb,
    Emit(Mark),
    /// (l, k) with l < k
    Insert17(usize, usize),
    Delete17(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveInstance {
    pub id: u8,
    pub at: usize,
    pub op: MoveOp,
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} @{} ", self.id, self.at)?;
        match self.op {
            MoveOp::Insert1((k, l)) => write!(f, "ins {k},{l}"),
            MoveOp::Delete1 => write!(f, "del"),
            MoveOp::Swap => write!(f, "swap"),
            MoveOp::Expand => write!(f, "expand"),
            MoveOp::Contract => write!(f, "contract"),
            MoveOp::PassRight => write!(f, "right"),
            MoveOp::PassLeft => write!(f, "left"),
            MoveOp::Absorb => write!(f, "absorb"),
            MoveOp::Emit((k, l)) => write!(f, "emit {k},{l}"),
            MoveOp::Insert17(l, k) => write!(f, "ins {l},{k}"),
            MoveOp::Delete17(l, k) => write!(f, "del {l},{k}"),
        }
    }
}

impl FromStr for MoveInstance {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MoveError::Journal(s.to_string());
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() < 3 {
            return Err(bad());
        }
        let id: u8 = parts[0].strip_prefix('#').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let at: usize = parts[1].strip_prefix('@').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let pair = || -> Result<(usize, usize), MoveError> {
            let (a, b) = parts.get(3).and_then(|p| p.split_once(',')).ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        };
        let op = match (parts[2], id) {
            ("ins", 1) => MoveOp::Insert1(pair()?),
            ("del", 1) => MoveOp::Delete1,
            ("ins", 17) => {
                let (l, k) = pair()?;
                MoveOp::Insert17(l, k)
            }
            ("del", 17) => {
                let (l, k) = pair()?;
                MoveOp::Delete17(l, k)
            }
            ("swap", _) => MoveOp::Swap,
            ("expand", _) => MoveOp::Expand,
            ("contract", _) => MoveOp::Contract,
            ("right", _) => MoveOp::PassRight,
            ("left", _) => MoveOp::PassLeft,
            ("absorb", _) => MoveOp::Absorb,
            ("emit", _) => MoveOp::Emit(pair()?),
            _ => return Err(bad()),
        };
        Ok(MoveInstance { id, at, op })
    }
}

pub fn commute(a: Mark, b: Mark) -> bool {
    a.0 != b.1 && b.0 != a.1
}

/// The third mark produced when two non-commuting marks are exchanged.
pub fn byproduct(a: Mark, b: Mark) -> Mark {
    (a.0.max(b.0), a.1.min(b.1))
}

fn swap_id(a: Mark, b: Mark) -> u8 {
    if a.0 == b.0 {
        4
    } else if a.1 == b.1 {
        5
    } else if (a.1 < b.1 && b.0 < a.0) || (b.1 < a.1 && a.0 < b.0) {
        3
    } else {
        2
    }
}

/// Where a mark lands after crossing a singular event, and the move id.
/// `rightward` says which side the mark starts on.
fn pass(ev: FrontEvent, m: Mark, rightward: bool) -> Result<(Mark, u8), String> {
    let (k, l) = m;
    match ev {
        FrontEvent::Crossing(i) => {
            if m == (i + 1, i) {
                return Err("mark joins the crossing strands".into());
            }
            let s = |p: usize| if p == i { i + 1 } else if p == i + 1 { i } else { p };
            let touches = |p: usize| p == i || p == i + 1;
            let id = if !touches(k) && !touches(l) {
                if l < i && k > i + 1 { 10 } else { 7 }
            } else if k > i + 1 {
                8
            } else {
                9
            };
            Ok(((s(k), s(l)), id))
        }
        FrontEvent::LeftCusp(i) | FrontEvent::RightCusp(i) => {
            let left_cusp = matches!(ev, FrontEvent::LeftCusp(_));
            // the side where the cusp strands exist
            let on_strand_side = left_cusp != rightward;
            if on_strand_side && (k == i || k == i + 1 || l == i || l == i + 1) {
                return Err("mark touches the cusp strands".into());
            }
            let spans = if on_strand_side { l < i && k > i + 1 } else { l < i && k >= i };
            let id = match (left_cusp, spans) {
                (true, false) => 11,
                (true, true) => 14,
                (false, false) => 12,
                (false, true) => 13,
            };
            let f = |p: usize| {
                if p < i {
                    p
                } else if on_strand_side {
                    p - 2
                } else {
                    p + 2
                }
            };
            Ok(((f(k), f(l)), id))
        }
        FrontEvent::Mark(..) => Err("not a singular event".into()),
    }
}

fn absorb_id(i: usize, m: Mark) -> Option<u8> {
    if m.1 == i + 1 && m.0 > i + 1 {
        Some(15)
    } else if m.0 == i && m.1 < i {
        Some(16)
    } else {
        None
    }
}

/// The block E(l, k) for the complex at a gap, in sweep order.
pub fn block17(c: &crate::complex::OrderedChainComplex, l: usize, k: usize) -> Result<Vec<Mark>, String> {
    if l < 1 || k > c.n() || l >= k {
        return Err(format!("need 1 <= l < k <= {}", c.n()));
    }
    if c.grade(l) != c.grade(k) + 1 {
        return Err(format!("need |y_{l}| = |y_{k}| + 1"));
    }
    let mut e = Vec::new();
    for v in 1..l {
        if c.get(l, v) {
            e.push((k, v));
        }
    }
    for u in k + 1..=c.n() {
        if c.get(u, k) {
            e.push((u, l));
        }
    }
    e.sort();
    Ok(e)
}

fn mark_at(events: &[FrontEvent], idx: usize) -> Option<Mark> {
    match events.get(idx) {
        Some(FrontEvent::Mark(k, l)) => Some((*k, *l)),
        _ => None,
    }
}

/// Work out the id of `op` at 1-based `at`, checking the pattern.
pub fn plan(front: &MarkedFront, at: usize, op: MoveOp) -> Result<MoveInstance, MoveError> {
    let (id, _) = rewrite_events(front, at, op)?;
    Ok(MoveInstance { id, at, op })
}

fn rewrite_events(front: &MarkedFront, at: usize, op: MoveOp) -> Result<(u8, Vec<FrontEvent>), MoveError> {
    let ev = front.events();
    let err = |id: u8, reason: &str| MoveError::Pattern { id, at, reason: reason.to_string() };
    if at == 0 || at > ev.len() + 1 {
        return Err(err(0, "location out of range"));
    }
    let p = at - 1;
    let mut out = ev.to_vec();
    let mark = |idx: usize, id: u8| mark_at(ev, idx).ok_or_else(|| err(id, "expected a mark"));
    let id = match op {
        MoveOp::Insert1((k, l)) => {
            out.splice(p..p, [FrontEvent::Mark(k, l), FrontEvent::Mark(k, l)]);
            1
        }
        MoveOp::Delete1 => {
            if mark(p, 1)? != mark(p + 1, 1)? {
                return Err(err(1, "marks differ"));
            }
            out.drain(p..p + 2);
            1
        }
        MoveOp::Swap => {
            let (a, b) = (mark(p, 2)?, mark(p + 1, 2)?);
            if a == b || !commute(a, b) {
                return Err(err(2, "marks do not commute"));
            }
            out.swap(p, p + 1);
            swap_id(a, b)
        }
        MoveOp::Expand => {
            let (a, b) = (mark(p, 6)?, mark(p + 1, 6)?);
            if commute(a, b) {
                return Err(err(6, "marks commute"));
            }
            let c = byproduct(a, b);
            out.splice(p..p + 2, [FrontEvent::Mark(b.0, b.1), FrontEvent::Mark(c.0, c.1), FrontEvent::Mark(a.0, a.1)]);
            6
        }
        MoveOp::Contract => {
            let (b, c, a) = (mark(p, 6)?, mark(p + 1, 6)?, mark(p + 2, 6)?);
            if commute(a, b) || byproduct(a, b) != c {
                return Err(err(6, "not a contractible triple"));
            }
            out.splice(p..p + 3, [FrontEvent::Mark(a.0, a.1), FrontEvent::Mark(b.0, b.1)]);
            6
        }
        MoveOp::PassRight | MoveOp::PassLeft => {
            let rightward = op == MoveOp::PassRight;
            let (mi, si) = if rightward { (p, p + 1) } else { (p + 1, p) };
            let m = mark(mi, 7)?;
            let s = *ev.get(si).ok_or_else(|| err(7, "expected a singular event"))?;
            let (nm, id) = pass(s, m, rightward).map_err(|r| err(7, &r))?;
            out[p] = if rightward { s } else { FrontEvent::Mark(nm.0, nm.1) };
            out[p + 1] = if rightward { FrontEvent::Mark(nm.0, nm.1) } else { s };
            id
        }
        MoveOp::Absorb => {
            let m = mark(p, 15)?;
            let Some(FrontEvent::RightCusp(i)) = ev.get(p + 1) else {
                return Err(err(15, "expected a right cusp"));
            };
            let id = absorb_id(*i, m).ok_or_else(|| err(15, "mark cannot be absorbed"))?;
            out.remove(p);
            id
        }
        MoveOp::Emit(m) => {
            let Some(FrontEvent::RightCusp(i)) = ev.get(p) else {
                return Err(err(15, "expected a right cusp"));
            };
            let id = absorb_id(*i, m).ok_or_else(|| err(15, "mark cannot be emitted"))?;
            out.insert(p, FrontEvent::Mark(m.0, m.1));
            id
        }
        MoveOp::Insert17(l, k) | MoveOp::Delete17(l, k) => {
            let c = complex_at(front, p)?;
            let e = block17(&c, l, k).map_err(|r| err(17, &r))?;
            if e.is_empty() {
                return Err(err(17, "empty block"));
            }
            if let MoveOp::Insert17(..) = op {
                out.splice(p..p, e.iter().map(|&(a, b)| FrontEvent::Mark(a, b)));
            } else {
                let mut have: Vec<Mark> = (p..p + e.len())
                    .map(|i| mark(i, 17))
                    .collect::<Result<_, _>>()?;
                have.sort();
                if have != e {
                    return Err(err(17, "marks do not form the block"));
                }
                out.drain(p..p + e.len());
            }
            17
        }
    };
    Ok((id, out))
}

/// Apply a move to a marked front. The id must match the pattern.
pub fn rewrite(front: &MarkedFront, mv: &MoveInstance) -> Result<MarkedFront, MoveError> {
    let (id, events) = rewrite_events(front, mv.at, mv.op)?;
    if id != mv.id {
        return Err(MoveError::Pattern { id: mv.id, at: mv.at, reason: format!("pattern is move {id}") });
    }
    MarkedFront::new(events).map_err(|e| MoveError::Pattern { id, at: mv.at, reason: e.to_string() })
}

pub fn apply_move(mcs: &Mcs, mv: &MoveInstance) -> Result<Mcs, MoveError> {
    Ok(reconstruct(&rewrite(&mcs.front, mv)?)?)
}

pub fn parse_journal(text: &str) -> Result<Vec<MoveInstance>, MoveError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

pub fn replay(front: &MarkedFront, journal: &[MoveInstance]) -> Result<MarkedFront, MoveError> {
    let mut f = front.clone();
    for mv in journal {
        f = rewrite(&f, mv)?;
    }
    Ok(f)
}

/// Every move applicable to `front`, in a fixed order.
pub fn legal_moves(front: &MarkedFront) -> Result<Vec<MoveInstance>, McsError> {
    let ev = front.events();
    let mut ops: Vec<(usize, MoveOp)> = Vec::new();
    for at in 1..=ev.len() + 1 {
        let p = at - 1;
        if p <= ev.len() && p > 0 {
            let g = front.gradings_at(p)?;
            for k in 1..=g.len() {
                for l in 1..k {
                    if g[k - 1] == g[l - 1] {
                        ops.push((at, MoveOp::Insert1((k, l))));
                    }
                    if g[l - 1] == g[k - 1] + 1 {
                        ops.push((at, MoveOp::Insert17(l, k)));
                        ops.push((at, MoveOp::Delete17(l, k)));
                    }
                }
            }
        }
        if let Some(FrontEvent::RightCusp(i)) = ev.get(p) {
            let g = front.gradings_at(p)?;
            for u in i + 2..=g.len() {
                ops.push((at, MoveOp::Emit((u, i + 1))));
            }
            for v in 1..*i {
                ops.push((at, MoveOp::Emit((*i, v))));
            }
        }
        for op in [
            MoveOp::Delete1,
            MoveOp::Swap,
            MoveOp::Expand,
            MoveOp::Contract,
            MoveOp::PassRight,
            MoveOp::PassLeft,
            MoveOp::Absorb,
        ] {
            ops.push((at, op));
        }
    }
    let mut out = Vec::new();
    for (at, op) in ops {
        if let Ok((id, events)) = rewrite_events(front, at, op) {
            if MarkedFront::new(events).is_ok() {
                out.push(MoveInstance { id, at, op });
            }
        }
    }
    Ok(out)
}

/// The event interval a move touches, as 0-based half-open ranges
/// before and after the move.
pub fn footprint(before: &MarkedFront, mv: &MoveInstance) -> (usize, usize, usize) {
    let p = mv.at - 1;
    let len_before = match mv.op {
        MoveOp::Insert1(_) | MoveOp::Insert17(..) => 0,
        MoveOp::Emit(_) => 1,
        MoveOp::Delete1 | MoveOp::Swap | MoveOp::PassLeft | MoveOp::PassRight | MoveOp::Absorb | MoveOp::Expand => 2,
        MoveOp::Contract => 3,
        MoveOp::Delete17(l, k) => {
            let c = complex_at(before, p).expect("valid front");
            block17(&c, l, k).expect("valid block").len()
        }
    };
    let len_after = match mv.op {
        MoveOp::Insert1(_) | MoveOp::Swap | MoveOp::PassLeft | MoveOp::PassRight | MoveOp::Contract => 2,
        MoveOp::Emit(_) => 2,
        MoveOp::Absorb => 1,
        MoveOp::Delete1 | MoveOp::Delete17(..) => 0,
        MoveOp::Expand => 3,
        MoveOp::Insert17(l, k) => {
            let c = complex_at(before, p).expect("valid front");
            block17(&c, l, k).expect("valid block").len()
        }
    };
    (p, len_before, len_after)
}
