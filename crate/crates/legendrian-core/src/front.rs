//! Front projections as event words.
//!
//! Positions are 1-based and counted bottom to top at the slice where the
//! event happens. Gap `g` is the slice after the first `g` events, so gap 0
//! and the last gap are empty.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::FrontError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrontEvent {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
    Mark(usize, usize),
}

impl FrontEvent {
    pub fn is_mark(&self) -> bool {
        matches!(self, FrontEvent::Mark(..))
    }
}

impl fmt::Display for FrontEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrontEvent::LeftCusp(i) => write!(f, "L{i}"),
            FrontEvent::RightCusp(i) => write!(f, "R{i}"),
            FrontEvent::Crossing(i) => write!(f, "X{i}"),
            FrontEvent::Mark(k, l) => write!(f, "H{k},{l}"),
        }
    }
}

/// A validated event word, possibly containing handleslide marks.
///
/// Strands are numbered by left cusp: the lower branch of the `c`-th left
/// cusp is strand `2c`, the upper branch `2c + 1`.
#[derive(Clone, Debug)]
pub struct MarkedFront {
    events: Vec<FrontEvent>,
    slices: Vec<Vec<usize>>,
    potential: Result<Vec<i32>, FrontError>,
}

impl PartialEq for MarkedFront {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events
    }
}

impl Eq for MarkedFront {}

/// A front without marks.
pub type FrontDiagram = MarkedFront;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaslovPotential {
    /// Value per strand id.
    pub values: Vec<i32>,
}

pub fn parse_front(text: &str) -> Result<MarkedFront, FrontError> {
    let mut events = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let mut col = 0;
        for piece in line.split_inclusive(char::is_whitespace) {
            let token = piece.trim();
            if !token.is_empty() {
                let ev = parse_token(token).ok_or_else(|| FrontError::Syntax {
                    line: lineno + 1,
                    column: col + 1,
                    token: token.to_string(),
                })?;
                events.push(ev);
            }
            col += piece.chars().count();
        }
    }
    MarkedFront::new(events)
}

fn parse_token(token: &str) -> Option<FrontEvent> {
    let head = token.chars().next()?;
    let rest = &token[head.len_utf8()..];
    let num = |s: &str| -> Option<usize> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    };
    match head {
        'L' => num(rest).map(FrontEvent::LeftCusp),
        'R' => num(rest).map(FrontEvent::RightCusp),
        'X' => num(rest).map(FrontEvent::Crossing),
        'H' => {
            let (k, l) = rest.split_once(',')?;
            Some(FrontEvent::Mark(num(k)?, num(l)?))
        }
        _ => None,
    }
}

impl MarkedFront {
    pub fn new(events: Vec<FrontEvent>) -> Result<Self, FrontError> {
        let mut slices = vec![Vec::new()];
        let mut cur: Vec<usize> = Vec::new();
        let mut next_strand = 0;
        let mut uf = UnionFind::<usize>::new(2 * events.len() + 2);
        for (e, ev) in events.iter().enumerate() {
            let n = cur.len();
            let bad = |pos: usize| FrontError::Position { event: e + 1, pos, count: n };
            match *ev {
                FrontEvent::LeftCusp(i) => {
                    if i < 1 || i > n + 1 {
                        return Err(bad(i));
                    }
                    cur.insert(i - 1, next_strand + 1);
                    cur.insert(i - 1, next_strand);
                    uf.union(next_strand, next_strand + 1);
                    next_strand += 2;
                }
                FrontEvent::RightCusp(i) => {
                    if i < 1 || i + 1 > n {
                        return Err(bad(i));
                    }
                    uf.union(cur[i - 1], cur[i]);
                    cur.drain(i - 1..=i);
                }
                FrontEvent::Crossing(i) => {
                    if i < 1 || i + 1 > n {
                        return Err(bad(i));
                    }
                    cur.swap(i - 1, i);
                }
                FrontEvent::Mark(k, l) => {
                    if l < 1 || k > n || k <= l {
                        return Err(FrontError::MarkRange { event: e + 1, upper: k, lower: l, count: n });
                    }
                }
            }
            slices.push(cur.clone());
        }
        if !cur.is_empty() {
            return Err(FrontError::NonzeroFinal { count: cur.len() });
        }
        if next_strand == 0 {
            return Err(FrontError::Empty);
        }
        let mut roots: Vec<usize> = (0..next_strand).map(|s| uf.find(s)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() != 1 {
            return Err(FrontError::MultiComponent { components: roots.len() });
        }
        let potential = solve_potential(&events, &slices, next_strand);
        let front = MarkedFront { events, slices, potential };
        for (e, ev) in front.events.iter().enumerate() {
            if let FrontEvent::Mark(k, l) = *ev {
                let mu = front.potential.as_ref().map_err(|err| err.clone())?;
                let s = &front.slices[e];
                if mu[s[k - 1]] != mu[s[l - 1]] {
                    return Err(FrontError::MarkPotential { event: e + 1, upper: k, lower: l });
                }
            }
        }
        Ok(front)
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Strand ids at gap `g`, bottom to top.
    pub fn slice(&self, g: usize) -> &[usize] {
        &self.slices[g]
    }

    pub fn strand_count(&self) -> usize {
        self.slices.iter().flatten().max().map_or(0, |m| m + 1)
    }

    pub fn maslov_potential(&self) -> Result<MaslovPotential, FrontError> {
        self.potential.clone().map(|values| MaslovPotential { values })
    }

    /// Potentials of the strands at gap `g`, bottom to top.
    pub fn gradings_at(&self, g: usize) -> Result<Vec<i32>, FrontError> {
        let mu = self.potential.as_ref().map_err(|e| e.clone())?;
        Ok(self.slices[g].iter().map(|&s| mu[s]).collect())
    }

    pub fn has_marks(&self) -> bool {
        self.events.iter().any(FrontEvent::is_mark)
    }

    /// The front with all marks removed.
    pub fn underlying(&self) -> FrontDiagram {
        let events: Vec<_> = self.events.iter().copied().filter(|e| !e.is_mark()).collect();
        MarkedFront::new(events).expect("removing marks keeps a front valid")
    }

    /// At most two left cusps, so the one-cusp unknot counts too.
    pub fn is_two_bridge(&self) -> bool {
        self.events.iter().filter(|e| matches!(e, FrontEvent::LeftCusp(_))).count() <= 2
    }

    /// Mirror in the vertical axis: reverse the word and swap left and right cusps.
    pub fn mirror(&self) -> Result<FrontDiagram, FrontError> {
        let events = self
            .underlying()
            .events
            .iter()
            .rev()
            .map(|e| match *e {
                FrontEvent::LeftCusp(i) => FrontEvent::RightCusp(i),
                FrontEvent::RightCusp(i) => FrontEvent::LeftCusp(i),
                other => other,
            })
            .collect();
        MarkedFront::new(events)
    }

    /// Ordinals (0-based) of the crossing events, in word order.
    pub fn crossing_events(&self) -> Vec<usize> {
        self.events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, FrontEvent::Crossing(_)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Grading of the crossing at event `e`: potential of the strand at
    /// position i+1 minus that at position i, read just left of the crossing.
    pub fn crossing_grading(&self, e: usize) -> Result<i32, FrontError> {
        let FrontEvent::Crossing(i) = self.events[e] else {
            panic!("event {e} is not a crossing");
        };
        let mu = self.gradings_at(e)?;
        Ok(mu[i] - mu[i - 1])
    }

    pub fn to_word(&self) -> String {
        serialize(&self.events)
    }
}

pub fn serialize(events: &[FrontEvent]) -> String {
    events.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for MarkedFront {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

fn solve_potential(
    events: &[FrontEvent],
    slices: &[Vec<usize>],
    nstrands: usize,
) -> Result<Vec<i32>, FrontError> {
    // constraint edges: mu[upper] = mu[lower] + 1
    let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); nstrands];
    for (e, ev) in events.iter().enumerate() {
        let (lower, upper) = match *ev {
            FrontEvent::LeftCusp(i) => (slices[e + 1][i - 1], slices[e + 1][i]),
            FrontEvent::RightCusp(i) => (slices[e][i - 1], slices[e][i]),
            _ => continue,
        };
        adj[lower].push((upper, 1));
        adj[upper].push((lower, -1));
    }
    let mut mu: Vec<Option<i32>> = vec![None; nstrands];
    mu[0] = Some(0);
    let mut stack = vec![0];
    while let Some(s) = stack.pop() {
        let v = mu[s].unwrap();
        for &(t, d) in &adj[s] {
            match mu[t] {
                None => {
                    mu[t] = Some(v + d);
                    stack.push(t);
                }
                Some(w) if w != v + d => return Err(FrontError::NoPotential),
                _ => {}
            }
        }
    }
    let values: Vec<i32> = mu.into_iter().map(|m| m.expect("knot is connected")).collect();
    let min = *values.iter().min().unwrap();
    Ok(values.into_iter().map(|v| v - min).collect())
}
