//! Brute-force oracles checked against the library on the corpus and on
//! random small fronts.

mod common;

use std::collections::BTreeSet;

use legendrian_core::augmentation::{enumerate_augmentations, partition_classes, Augmentation};
use legendrian_core::dga::{check_degrees, ResolvedDga};
use legendrian_core::error::FrontError;
use legendrian_core::ruling::sum_two_to_nu;
use legendrian_core::{build_dga, check_d_squared, enumerate_rulings, parse_front, FrontEvent, MarkedFront};
use petgraph::unionfind::UnionFind;
use proptest::prelude::*;

fn brute_augmentations(dga: &ResolvedDga) -> BTreeSet<Vec<bool>> {
    let zero = dga.grading_zero();
    assert!(zero.len() <= 20);
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << zero.len() {
        let mut values = vec![false; dga.len()];
        for (b, &g) in zero.iter().enumerate() {
            values[g] = mask >> b & 1 == 1;
        }
        if dga.differential.iter().all(|dq| !dq.eval(|x| values[x])) {
            out.insert(values);
        }
    }
    out
}

/// Is there h on grading -1 generators with e1 - e2 = h∘∂? Tries every h.
fn brute_homotopic(dga: &ResolvedDga, e1: &[bool], e2: &[bool]) -> bool {
    let minus: Vec<usize> = dga.generators.iter().filter(|g| g.grading == -1).map(|g| g.id).collect();
    assert!(minus.len() <= 12);
    (0u32..1 << minus.len()).any(|mask| {
        let mut h = vec![false; dga.len()];
        for (b, &g) in minus.iter().enumerate() {
            h[g] = mask >> b & 1 == 1;
        }
        dga.differential.iter().enumerate().all(|(q, dq)| {
            let mut v = false;
            for w in &dq.terms {
                for i in 0..w.len() {
                    if h[w[i]] && w[..i].iter().all(|&x| e1[x]) && w[i + 1..].iter().all(|&x| e2[x]) {
                        v = !v;
                    }
                }
            }
            v == (e1[q] ^ e2[q])
        })
    })
}

fn brute_classes(dga: &ResolvedDga, augs: &[Vec<bool>]) -> BTreeSet<BTreeSet<Vec<bool>>> {
    let mut uf = UnionFind::<usize>::new(augs.len());
    for i in 0..augs.len() {
        for j in i + 1..augs.len() {
            if brute_homotopic(dga, &augs[i], &augs[j]) {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut by: std::collections::BTreeMap<usize, BTreeSet<Vec<bool>>> = Default::default();
    for (i, a) in augs.iter().enumerate() {
        by.entry(labels[i]).or_default().insert(a.clone());
    }
    by.into_values().collect()
}

/// Switch sets of graded normal rulings, by trying every subset of the
/// crossings and following the pairing along the front.
fn brute_rulings(front: &MarkedFront) -> BTreeSet<BTreeSet<usize>> {
    let ev = front.events();
    let crossings: Vec<usize> = (0..ev.len()).filter(|&e| matches!(ev[e], FrontEvent::Crossing(_))).collect();
    assert!(crossings.len() <= 16);
    let mut out = BTreeSet::new();
    'subset: for mask in 0u32..1 << crossings.len() {
        // partner of each position, 1-based, index 0 unused
        let mut p: Vec<usize> = vec![0];
        let mut c = 0;
        for (e, &x) in ev.iter().enumerate() {
            match x {
                FrontEvent::LeftCusp(i) => {
                    let mut q: Vec<usize> = vec![0; p.len() + 2];
                    let up = |v: usize| if v >= i { v + 2 } else { v };
                    for k in 1..p.len() {
                        q[up(k)] = up(p[k]);
                    }
                    q[i] = i + 1;
                    q[i + 1] = i;
                    p = q;
                }
                FrontEvent::RightCusp(i) => {
                    if p[i] != i + 1 {
                        continue 'subset;
                    }
                    let down = |v: usize| if v > i + 1 { v - 2 } else { v };
                    let mut q = vec![0; p.len() - 2];
                    for k in 1..p.len() {
                        if k != i && k != i + 1 {
                            q[down(k)] = down(p[k]);
                        }
                    }
                    p = q;
                }
                FrontEvent::Crossing(i) => {
                    let switch = mask >> c & 1 == 1;
                    c += 1;
                    let (a, b) = (p[i], p[i + 1]);
                    if a == i + 1 {
                        continue 'subset;
                    }
                    if switch {
                        let mu = front.gradings_at(e).unwrap();
                        let normal = (a < i && b > i + 1) || (b < a && a < i) || (i + 1 < b && b < a);
                        if mu[i - 1] != mu[i] || !normal {
                            continue 'subset;
                        }
                    } else {
                        p[a] = i + 1;
                        p[b] = i;
                        p[i] = b;
                        p[i + 1] = a;
                    }
                }
                FrontEvent::Mark(..) => unreachable!(),
            }
        }
        out.insert((0..crossings.len()).filter(|&c| mask >> c & 1 == 1).map(|c| c + 1).collect());
    }
    out
}

fn check_front(f: &MarkedFront) {
    let dga = build_dga(f).unwrap();
    assert!(check_d_squared(&dga), "{f}");
    assert!(check_degrees(&dga), "{f}");
    let augs = enumerate_augmentations(&dga);
    let lib: BTreeSet<Vec<bool>> = augs.iter().map(|a| a.values.clone()).collect();
    assert_eq!(lib, brute_augmentations(&dga), "{f}");
    let rulings: BTreeSet<BTreeSet<usize>> = enumerate_rulings(f).unwrap().into_iter().map(|r| r.switches).collect();
    assert_eq!(rulings, brute_rulings(f), "{f}");
    let classes: BTreeSet<BTreeSet<Vec<bool>>> = partition_classes(&dga)
        .into_iter()
        .map(|c| c.into_iter().map(|a: Augmentation| a.values).collect())
        .collect();
    let all: Vec<Vec<bool>> = lib.into_iter().collect();
    assert_eq!(classes, brute_classes(&dga, &all), "{f}");
}

#[test]
fn corpus_matches_oracles() {
    for (_, f) in common::corpus() {
        check_front(&f);
    }
}

#[test]
fn corpus_counts() {
    let expect = [
        ("mixed_5", 2, 1, 1, Some(1)),
        ("mixed_7", 10, 5, 3, Some(5)),
        ("torus_2_5", 21, 21, 8, Some(21)),
        ("trefoil", 5, 5, 3, Some(5)),
        ("trefoil_sum", 25, 25, 9, None),
        ("unknot", 1, 1, 1, Some(1)),
    ];
    let corpus = common::corpus();
    assert_eq!(corpus.len(), expect.len());
    for ((name, f), (en, augs, classes, rulings, sum)) in corpus.iter().zip(expect) {
        assert_eq!(name, en);
        let dga = build_dga(f).unwrap();
        assert_eq!(enumerate_augmentations(&dga).len(), augs, "{name}");
        assert_eq!(partition_classes(&dga).len(), classes, "{name}");
        let r = enumerate_rulings(f).unwrap();
        assert_eq!(r.len(), rulings, "{name}");
        assert_eq!(sum_two_to_nu(f, &r).ok(), sum, "{name}");
    }
}

#[test]
fn trefoil_differential() {
    let dga = build_dga(&common::front("trefoil")).unwrap();
    assert_eq!(dga.len(), 5);
    assert!(dga.differential[4].contains(&[2, 1, 0]));
    assert!(dga.differential[3].contains(&[0, 1, 2]));
    assert!(dga.differential[..3].iter().all(|d| d.is_zero()));
}

#[test]
fn unknot_differential() {
    let dga = build_dga(&common::front("unknot")).unwrap();
    assert_eq!(dga.len(), 1);
    assert!(dga.differential[0].is_zero());
    assert_eq!(dga.generators[0].grading, 1);
}

#[test]
fn right_cusp_inside_a_disk_is_rejected() {
    let f = parse_front("L1 L3 L5 X2 X1 X1 X4 R2 R1 R1").unwrap();
    assert!(matches!(build_dga(&f), Err(FrontError::CuspInsideDisk { .. })));
}

#[test]
fn parse_errors_carry_positions() {
    assert_eq!(
        parse_front("L1 L3\nX2 Y2").unwrap_err(),
        FrontError::Syntax { line: 2, column: 4, token: "Y2".into() }
    );
    assert!(matches!(parse_front("L1 L3 R1").unwrap_err(), FrontError::NonzeroFinal { count: 2 }));
    assert!(matches!(parse_front("L1 X2 R1"), Err(FrontError::Position { .. })));
    assert!(parse_front("# nothing\n").is_err());
    assert!(matches!(parse_front("L1 é1 R1"), Err(FrontError::Syntax { column: 4, .. })));
}

/// A knot with a Maslov potential.
fn usable(w: &str) -> Option<MarkedFront> {
    parse_front(w).ok().filter(|f| f.maslov_potential().is_ok())
}

fn random_word(cusps: usize) -> impl Strategy<Value = String> {
    let top = 2 * cusps - 1;
    prop::collection::vec(1..=top, 0..=7).prop_map(move |xs| {
        let mut w: Vec<String> = (0..cusps).map(|c| format!("L{}", 2 * c + 1)).collect();
        w.extend(xs.iter().map(|x| format!("X{x}")));
        w.extend((0..cusps).map(|_| "R1".to_string()));
        w.join(" ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_two_bridge_fronts(w in random_word(2)) {
        if let Some(f) = usable(&w) {
            check_front(&f);
            let dga = build_dga(&f).unwrap();
            let r = enumerate_rulings(&f).unwrap();
            prop_assert_eq!(sum_two_to_nu(&f, &r).unwrap(), partition_classes(&dga).len() as u64);
        }
    }

    #[test]
    fn random_three_cusp_fronts(w in random_word(3)) {
        if let Some(f) = usable(&w) {
            check_front(&f);
        }
    }

    #[test]
    fn display_round_trips(w in random_word(2)) {
        if let Ok(f) = parse_front(&w) {
            prop_assert_eq!(parse_front(&f.to_string()).unwrap(), f);
        }
    }
}
