//! Augmentations to Z/2 and their chain homotopy classes.

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::dga::ResolvedDga;
use crate::gf2::{BitRow, LinearSystem, Solution};

/// Values per generator, in generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Augmentation {
    pub values: Vec<bool>,
}

impl Augmentation {
    pub fn zero(dga: &ResolvedDga) -> Self {
        Augmentation { values: vec![false; dga.len()] }
    }

    pub fn eval_word(&self, w: &[usize]) -> bool {
        w.iter().all(|&g| self.values[g])
    }

    /// Bits on the grading-0 generators, in x-order.
    pub fn grading_zero_bits(&self, dga: &ResolvedDga) -> Vec<u8> {
        dga.grading_zero().iter().map(|&g| self.values[g] as u8).collect()
    }

    pub fn from_grading_zero_bits(dga: &ResolvedDga, bits: &[bool]) -> Self {
        let mut values = vec![false; dga.len()];
        for (&g, &b) in dga.grading_zero().iter().zip(bits) {
            values[g] = b;
        }
        Augmentation { values }
    }
}

pub fn is_augmentation(dga: &ResolvedDga, e: &Augmentation) -> bool {
    dga.generators.iter().all(|g| !e.values[g.id] || g.grading == 0)
        && dga.differential.iter().all(|dq| !dq.eval(|x| e.values[x]))
}

/// All augmentations, by depth-first search in x-order. Since dq only uses
/// letters left of q, the constraint at q is checked as soon as q is reached.
pub fn enumerate_augmentations(dga: &ResolvedDga) -> Vec<Augmentation> {
    let mut out = Vec::new();
    let mut values = vec![false; dga.len()];
    search(dga, 0, &mut values, &mut out);
    out.sort();
    out
}

fn search(dga: &ResolvedDga, q: usize, values: &mut Vec<bool>, out: &mut Vec<Augmentation>) {
    if q == dga.len() {
        out.push(Augmentation { values: values.clone() });
        return;
    }
    if dga.differential[q].eval(|x| values[x]) {
        return;
    }
    values[q] = false;
    search(dga, q + 1, values, out);
    if dga.generators[q].grading == 0 {
        values[q] = true;
        search(dga, q + 1, values, out);
        values[q] = false;
    }
}

/// Unknowns are h on the grading -1 generators; one equation per generator.
pub fn homotopy_system(dga: &ResolvedDga, e1: &Augmentation, e2: &Augmentation) -> (LinearSystem, Vec<usize>) {
    let unknowns: Vec<usize> = dga.generators.iter().filter(|g| g.grading == -1).map(|g| g.id).collect();
    let mut col = vec![usize::MAX; dga.len()];
    for (i, &g) in unknowns.iter().enumerate() {
        col[g] = i;
    }
    let mut sys = LinearSystem::new(unknowns.len());
    for (q, dq) in dga.differential.iter().enumerate() {
        let mut row = BitRow::zero(unknowns.len());
        for w in &dq.terms {
            for (i, &x) in w.iter().enumerate() {
                if col[x] != usize::MAX && e1.eval_word(&w[..i]) && e2.eval_word(&w[i + 1..]) {
                    row.toggle(col[x]);
                }
            }
        }
        sys.push(row, e1.values[q] ^ e2.values[q]);
    }
    (sys, unknowns)
}

/// A homotopy, as values on the grading -1 generators, if one exists.
pub fn find_homotopy(dga: &ResolvedDga, e1: &Augmentation, e2: &Augmentation) -> Option<Vec<(usize, bool)>> {
    let (sys, unknowns) = homotopy_system(dga, e1, e2);
    match sys.solve() {
        Solution::Solved(x) => Some(unknowns.into_iter().zip(x).collect()),
        Solution::Inconsistent(_) => None,
    }
}

pub fn is_chain_homotopic(dga: &ResolvedDga, e1: &Augmentation, e2: &Augmentation) -> bool {
    find_homotopy(dga, e1, e2).is_some()
}

/// Classes of `augs` (sorted), each sorted, ordered by representative.
/// The representative is the first member, which is lexicographically least.
pub fn partition(dga: &ResolvedDga, augs: &[Augmentation]) -> Vec<Vec<Augmentation>> {
    let n = augs.len();
    let mut uf = UnionFind::<usize>::new(n);
    // each new augmentation is compared against one member of every earlier class
    for j in 0..n {
        let reps: Vec<usize> = {
            let mut seen = Vec::new();
            let mut reps = Vec::new();
            for i in 0..j {
                let r = uf.find(i);
                if !seen.contains(&r) {
                    seen.push(r);
                    reps.push(i);
                }
            }
            reps
        };
        let hit = reps
            .par_iter()
            .map(|&i| is_chain_homotopic(dga, &augs[i], &augs[j]))
            .collect::<Vec<_>>();
        for (&i, h) in reps.iter().zip(hit) {
            if h {
                uf.union(i, j);
            }
        }
    }
    let mut classes: Vec<Vec<Augmentation>> = Vec::new();
    let mut root_of: Vec<(usize, usize)> = Vec::new();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by(|&a, &b| augs[a].cmp(&augs[b]));
    for i in sorted {
        let r = uf.find(i);
        match root_of.iter().find(|(root, _)| *root == r) {
            Some(&(_, c)) => classes[c].push(augs[i].clone()),
            None => {
                root_of.push((r, classes.len()));
                classes.push(vec![augs[i].clone()]);
            }
        }
    }
    classes
}

pub fn partition_classes(dga: &ResolvedDga) -> Vec<Vec<Augmentation>> {
    partition(dga, &enumerate_augmentations(dga))
}

/// The lexicographically least augmentation homotopic to `e`.
pub fn class_representative(dga: &ResolvedDga, e: &Augmentation) -> Augmentation {
    enumerate_augmentations(dga)
        .into_iter()
        .find(|a| is_chain_homotopic(dga, a, e))
        .unwrap_or_else(|| e.clone())
}
