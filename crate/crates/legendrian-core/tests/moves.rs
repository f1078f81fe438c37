//! Locality of the MCS moves, invariance of Psi under random move
//! sequences, and the journal format.

mod common;

use legendrian_core::mcs::complex_at;
use legendrian_core::moves::{footprint, legal_moves, parse_journal, replay};
use legendrian_core::augmentation::enumerate_augmentations;
use legendrian_core::normal::{aug_to_mcs, psi};
use legendrian_core::{apply_move, build_dga, parse_front, reconstruct, Mcs, MoveInstance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn moves_are_local() {
    let mut checked = 0;
    for (name, mcs) in common::corpus_mcs().into_iter().step_by(2) {
        for mv in legal_moves(&mcs.front).unwrap() {
            let after = apply_move(&mcs, &mv).unwrap_or_else(|e| panic!("{name} {mv}: {e}"));
            let (p, lb, la) = footprint(&mcs.front, &mv);
            let (eb, ea) = (mcs.front.events(), after.front.events());
            assert_eq!(eb.len() - lb, ea.len() - la, "{name} {mv}");
            assert_eq!(eb[..p], ea[..p], "{name} {mv}");
            assert_eq!(eb[p + lb..], ea[p + la..], "{name} {mv}");
            for g in 0..=p {
                assert_eq!(mcs.complexes[g], after.complexes[g], "{name} {mv} gap {g}");
            }
            for t in 0..=eb.len() - p - lb {
                assert_eq!(mcs.complexes[p + lb + t], after.complexes[p + la + t], "{name} {mv}");
            }
            checked += 1;
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn random_sequences_keep_psi() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let all = common::corpus_mcs();
    for _ in 0..200 {
        let (name, start) = all.choose(&mut rng).unwrap();
        let dga = build_dga(&start.front.underlying()).unwrap();
        let class = psi(start, &dga).unwrap();
        let mut cur = start.clone();
        let mut journal = Vec::new();
        for _ in 0..rng.gen_range(1..=8) {
            let moves = legal_moves(&cur.front).unwrap();
            // the bare unknot admits no move
            let Some(&mv) = moves.choose(&mut rng) else { break };
            cur = apply_move(&cur, &mv).unwrap();
            journal.push(mv);
            assert_eq!(psi(&cur, &dga).unwrap(), class, "{name} {journal:?}");
        }
        assert_eq!(replay(&start.front, &journal).unwrap(), cur.front);
    }
}

#[test]
fn journal_round_trip() {
    let mut lines = Vec::new();
    for (_, mcs) in common::corpus_mcs().into_iter().take(12) {
        for mv in legal_moves(&mcs.front).unwrap() {
            let s = mv.to_string();
            assert_eq!(s.parse::<MoveInstance>().unwrap(), mv);
            lines.push(s);
        }
    }
    let text = lines.join("\n");
    let parsed = parse_journal(&format!("\n{text}\n\n")).unwrap();
    assert_eq!(parsed.len(), lines.len());
    for bad in ["", "#3", "3 @1 swap", "#1 @2 ins", "#1 @2 ins 3", "#4 @x swap", "#2 @1 jump"] {
        assert!(bad.parse::<MoveInstance>().is_err(), "{bad:?}");
    }
}

#[test]
fn wrong_move_id_is_rejected() {
    let mcs = common::corpus_mcs().into_iter().find(|(n, _)| n == "trefoil").unwrap().1;
    let mv = legal_moves(&mcs.front).unwrap()[0];
    let wrong = MoveInstance { id: if mv.id == 1 { 2 } else { 1 }, ..mv };
    assert!(apply_move(&mcs, &wrong).is_err());
}

#[test]
fn replay_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (_, mcs) in common::corpus_mcs().into_iter().take(20) {
        let mut f = mcs.front.clone();
        let mut journal = Vec::new();
        for _ in 0..6 {
            let mv = *legal_moves(&f).unwrap().choose(&mut rng).unwrap();
            f = legendrian_core::moves::rewrite(&f, &mv).unwrap();
            journal.push(mv);
        }
        let text: String = journal.iter().map(|m| format!("{m}\n")).collect();
        let j = parse_journal(&text).unwrap();
        let a = replay(&mcs.front, &j).unwrap();
        let b = replay(&mcs.front, &j).unwrap();
        assert_eq!(a, f);
        assert_eq!(a, b);
        assert!(reconstruct(&a).is_ok());
        assert_eq!(complex_at(&a, a.len()).unwrap().n(), 0);
    }
}

#[test]
fn every_move_type_occurs() {
    // all moves two steps away from six-strand MCSs with three strands of
    // equal grading
    let mut seen = [false; 18];
    let mut starts: Vec<Mcs> = Vec::new();
    for w in [
        "L1 L3 L2 X3 X4 X3 X1 X2 X2 R3 R1 R1",
        "L1 L1 L3 X4 X5 X2 X3 X4 X4 R3 R1 R1",
        "L1 L3 L5 X2 X4 X1 X3 X1 X4 X4 X2 R1 R1 R1",
    ] {
        let f = parse_front(w).unwrap();
        let dga = build_dga(&f).unwrap();
        let e = &enumerate_augmentations(&dga)[0];
        starts.push(aug_to_mcs(e, &f, &dga).unwrap());
    }
    for mcs in starts {
        let dga = build_dga(&mcs.front.underlying()).unwrap();
        let class = psi(&mcs, &dga).unwrap();
        for m1 in legal_moves(&mcs.front).unwrap() {
            let a = apply_move(&mcs, &m1).unwrap();
            assert_eq!(psi(&a, &dga).unwrap(), class, "{m1}");
            for m2 in legal_moves(&a.front).unwrap() {
                let b = apply_move(&a, &m2).unwrap();
                assert_eq!(psi(&b, &dga).unwrap(), class, "{m1} {m2}");
                for m3 in legal_moves(&b.front).unwrap() {
                    seen[m3.id as usize] = true;
                }
            }
        }
    }
    let missing: Vec<usize> = (1..=17).filter(|&i| !seen[i]).collect();
    assert!(missing.is_empty(), "{missing:?}");
}
