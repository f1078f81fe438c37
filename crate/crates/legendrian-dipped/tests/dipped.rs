use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use legendrian_core::augmentation::enumerate_augmentations;
use legendrian_core::dga::{build_dga, check_d_squared, check_degrees, AlgebraElement};
use legendrian_core::gf2::BitMat;
use legendrian_core::normal::{aug_to_mcs, sr_bar_from_ruling};
use legendrian_core::ruling::departure_return_pairs;
use legendrian_core::{enumerate_rulings, parse_front, reconstruct, FrontEvent, MarkedFront, Mcs, OrderedChainComplex};
use legendrian_dipped::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(String, MarkedFront)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "front"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), parse_front(&fs::read_to_string(&p).unwrap()).unwrap()))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Every MCS of the form aug_to_mcs(ε) over the corpus.
fn corpus_mcs() -> Vec<(String, Mcs)> {
    let mut out = Vec::new();
    for (name, f) in corpus() {
        let dga = build_dga(&f).unwrap();
        for e in enumerate_augmentations(&dga) {
            out.push((name.clone(), aug_to_mcs(&e, &f, &dga).unwrap()));
        }
    }
    out
}

fn random_complex(rng: &mut ChaCha8Rng, max_pairs: usize) -> OrderedChainComplex {
    let mut c = OrderedChainComplex::empty();
    let pairs = rng.gen_range(1..=max_pairs);
    for _ in 0..pairs {
        let k = rng.gen_range(1..=c.n() + 1);
        c = c.birth(k, rng.gen_range(-1..=1)).unwrap();
    }
    for _ in 0..4 * c.n() {
        let k = rng.gen_range(1..c.n());
        if rng.gen_bool(0.5) {
            if let Ok(next) = c.swap(k) {
                c = next;
            }
        } else {
            let l = rng.gen_range(1..=k);
            if let Ok(next) = c.handleslide(k + 1, l) {
                c = next;
            }
        }
    }
    assert!(c.is_valid());
    c
}

fn const_mat(m: &BitMat) -> SymMat {
    let n = m.n();
    let mut out = vec![vec![AlgebraElement::zero(); n]; n];
    for (r, c) in m.entries() {
        out[r][c] = AlgebraElement::one();
    }
    out
}

fn eval(m: &SymMat) -> BitMat {
    let mut out = BitMat::zero(m.len());
    for (r, row) in m.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            out.set(r, c, x.eval(|_| false));
        }
    }
    out
}

#[test]
fn dipped_dga_squares_to_zero() {
    for (name, mcs) in corpus_mcs() {
        let d = DippedDiagram::from_front(&mcs.front).unwrap();
        let dd = DippedDga::new(&d);
        assert!(check_d_squared(&dd.dga), "{name}: {}", mcs.front);
        assert!(check_degrees(&dd.dga), "{name}: {}", mcs.front);
    }
}

#[test]
fn mcs_valuations_are_augmentations() {
    for (name, mcs) in corpus_mcs() {
        let (d, v) = mcs_to_dipped_aug(&mcs).unwrap();
        assert!(check_dipped_augmentation(&d, &v), "{name}: {}", mcs.front);
        assert!(is_augmentation_generic(&DippedDga::new(&d), &v), "{name}: {}", mcs.front);
        assert!(is_minimal_occ_simple(&d, &v));
        for j in 1..=d.dips() {
            assert_eq!(v.a[j - 1], mcs.complexes[j].d);
        }
        assert_eq!(dipped_aug_to_mcs(&d, &v).unwrap(), mcs);
    }
}

#[test]
fn matrix_and_generic_checks_agree() {
    // every augmentation of a small dipped DGA, plus random valuations
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let picks: Vec<Mcs> = corpus_mcs().into_iter().filter(|(n, _)| n == "unknot" || n == "trefoil").map(|(_, m)| m).collect();
    for mcs in picks.iter().take(3) {
        let (d, _) = mcs_to_dipped_aug(mcs).unwrap();
        let dd = DippedDga::new(&d);
        let augs = enumerate_augmentations(&dd.dga);
        assert!(!augs.is_empty());
        for e in &augs {
            assert!(check_dipped_augmentation(&d, &dd.valuation(&d, &e.values)));
        }
        let set: BTreeSet<Vec<bool>> = augs.iter().map(|e| e.values.clone()).collect();
        for p in [0.02, 0.1, 0.3] {
            for _ in 0..300 {
                let vals: Vec<bool> = (0..dd.letters.len()).map(|_| rng.gen_bool(p)).collect();
                let v = dd.valuation(&d, &vals);
                assert_eq!(check_dipped_augmentation(&d, &v), set.contains(&vals), "{}", mcs.front);
            }
        }
    }
}

#[test]
fn unknot_single_dip() {
    let d = DippedDiagram::new(vec![Insert::LeftCusp(1), Insert::RightCusp(1)], vec![vec![0, 1]]).unwrap();
    let mut v = DipValuation::zero(&d);
    v.a[0] = BitMat::unit(2, 1, 0);
    assert!(check_dipped_augmentation(&d, &v));
    assert_eq!(a_tilde(&d, &v, 1).unwrap(), BitMat::unit(2, 1, 0));
    v.a[0] = BitMat::zero(2);
    assert!(!check_dipped_augmentation(&d, &v));

    let mcs = Mcs::from_word("L1 R1").unwrap();
    let (d, v) = mcs_to_dipped_aug(&mcs).unwrap();
    assert_eq!(d.dips(), 1);
    assert!(v.b[0].is_zero());
}

#[test]
fn trefoil_all_ones_dip_count() {
    let f = parse_front("L1 L3 X2 X2 X2 R1 R1").unwrap();
    let dga = build_dga(&f).unwrap();
    let e = enumerate_augmentations(&dga).into_iter().find(|e| (0..3).all(|q| e.values[q])).unwrap();
    let mcs = aug_to_mcs(&e, &f, &dga).unwrap();
    assert_eq!(mcs.front.len(), 10);
    let (d, v) = mcs_to_dipped_aug(&mcs).unwrap();
    assert_eq!(d.dips(), 9);
    assert!(check_dipped_augmentation(&d, &v));
}

#[test]
fn bad_diagrams_are_rejected() {
    assert!(DippedDiagram::new(vec![Insert::Crossing(1)], vec![]).is_err());
    assert!(DippedDiagram::new(vec![Insert::LeftCusp(1), Insert::RightCusp(1)], vec![vec![0, 0]]).is_err());
    assert!(DippedDiagram::new(vec![Insert::LeftCusp(1), Insert::Parallel], vec![vec![0, 1]]).is_err());
    let d = DippedDiagram::new(vec![Insert::LeftCusp(1), Insert::RightCusp(1)], vec![vec![0, 1]]).unwrap();
    let mut v = DipValuation::zero(&d);
    v.a[0] = BitMat::zero(3);
    assert!(a_tilde(&d, &v, 1).is_err());
    assert!(!check_dipped_augmentation(&d, &v));
}

#[test]
fn tilde_matches_mcs_chain_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let zero = AlgebraElement::zero();
    for _ in 0..500 {
        let c = random_complex(&mut rng, 5);
        let n = c.n();
        let a = const_mat(&c.d);
        assert_eq!(eval(&a_tilde_sym(Insert::Parallel, &a, &zero).unwrap()), c.d);
        let i = rng.gen_range(1..n);
        let t = eval(&a_tilde_sym(Insert::Crossing(i), &a, &zero).unwrap());
        match c.swap(i) {
            Ok(s) => assert_eq!(t, s.d),
            Err(_) => assert!(c.get(i + 1, i)),
        }
        let mut p = c.d.clone();
        p.conj_transposition(i - 1);
        p.set(i - 1, i, false);
        assert_eq!(t, p);
        if c.get(i + 1, i) {
            let t = eval(&a_tilde_sym(Insert::RightCusp(i), &a, &zero).unwrap());
            assert_eq!(t, c.death(i).unwrap().d);
        }
        let k = rng.gen_range(1..=n + 1);
        let t = eval(&a_tilde_sym(Insert::LeftCusp(k), &a, &zero).unwrap());
        assert_eq!(t, c.birth(k, 0).unwrap().d);
    }
    let t = eval(&a_tilde_sym(Insert::LeftCusp(1), &Vec::new(), &zero).unwrap());
    assert_eq!(t, BitMat::unit(2, 1, 0));
}

#[test]
fn extend_by_zero_everywhere() {
    for (name, mcs) in corpus_mcs().into_iter().step_by(3) {
        let (d, v) = mcs_to_dipped_aug(&mcs).unwrap();
        for s in 1..=d.dips() {
            let (nd, nv) = extend_by_zero(&d, &v, s).unwrap();
            assert_eq!(nd.dips(), d.dips() + 1);
            assert!(check_dipped_augmentation(&nd, &nv), "{name} at {s}");
            assert!(nv.b[s - 1].is_zero());
            assert_eq!(nv.a[s - 1], a_tilde(&d, &v, s).unwrap());
            if s > 1 && d.inserts()[s - 1] == Insert::Parallel {
                assert_eq!(nv.a[s - 1], v.a[s - 2]);
            }
        }
    }
}

#[test]
fn handleslide_dip_flips_trefoil_crossing() {
    let f = parse_front("L1 L3 X2 X2 X2 R1 R1").unwrap();
    let dga = build_dga(&f).unwrap();
    let e = enumerate_augmentations(&dga).into_iter().find(|e| !e.values[0]).unwrap();
    let mcs = aug_to_mcs(&e, &f, &dga).unwrap();
    let (d, v) = mcs_to_dipped_aug(&mcs).unwrap();
    // q1 is insert 3, right after dip 2
    let (nd, nv, flipped) = extend_by_handleslide(&d, &v, 2).unwrap();
    assert!(flipped);
    assert!(check_dipped_augmentation(&nd, &nv));
    let mut e = v.a[1].clone();
    e.conj_elementary(2, 1);
    assert_eq!(nv.a[2], e);
    assert_eq!(nv.b[2], BitMat::unit(4, 2, 1));
    assert!(extend_by_handleslide(&d, &v, 1).is_err());
}

#[test]
fn surjectivity_replay() {
    for (name, f) in corpus() {
        let dga = build_dga(&f).unwrap();
        for e in enumerate_augmentations(&dga) {
            let mut values = vec![false; f.len()];
            for g in &dga.generators {
                values[g.source_event] = e.values[g.id];
            }
            let (d, v) = replay_surjectivity(&f, &values).unwrap();
            assert!(check_dipped_augmentation(&d, &v), "{name}");
            let expected = mcs_to_dipped_aug(&aug_to_mcs(&e, &f, &dga).unwrap()).unwrap();
            assert_eq!((d, v), expected, "{name}");
        }
    }
}

#[test]
fn trivial_homotopy() {
    for (_, mcs) in corpus_mcs().into_iter().step_by(5) {
        let (d, v) = mcs_to_dipped_aug(&mcs).unwrap();
        assert!(check_dipped_homotopy(&d, &v, &v, &DipValuation::zero(&d)).unwrap());
    }
}

#[test]
fn matrix_homotopy_check_agrees_with_linear_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = parse_front("L1 L3 X2 X2 X2 R1 R1").unwrap();
    let dga = build_dga(&f).unwrap();
    let augs = enumerate_augmentations(&dga);
    let m1 = aug_to_mcs(&augs[0], &f, &dga).unwrap();
    let (d, e1) = mcs_to_dipped_aug(&m1).unwrap();
    let dd = DippedDga::new(&d);
    let all = enumerate_augmentations(&dd.dga);
    let minus_one: Vec<usize> = dd.dga.generators.iter().filter(|g| g.grading == -1).map(|g| g.id).collect();
    for e in all.iter().take(40) {
        let e2 = dd.valuation(&d, &e.values);
        match solve_dipped_homotopy(&d, &e1, &e2).unwrap() {
            HomotopyResult::Found(h) => assert!(check_dipped_homotopy(&d, &e1, &e2, &h).unwrap()),
            HomotopyResult::Obstructed(_) => {}
        }
        for _ in 0..20 {
            let mut hv = vec![false; dd.letters.len()];
            for &g in &minus_one {
                hv[g] = rng.gen_bool(0.3);
            }
            let h = dd.valuation(&d, &hv);
            let (sys, unknowns) = legendrian_core::augmentation::homotopy_system(
                &dd.dga,
                &legendrian_core::Augmentation { values: dd.letter_values(&e1) },
                e,
            );
            let x: Vec<bool> = unknowns.iter().map(|&g| hv[g]).collect();
            assert_eq!(check_dipped_homotopy(&d, &e1, &e2, &h).unwrap(), sys.check(&x));
        }
    }
}

#[test]
fn move_one_homotopy() {
    // C2 is C1 with a pair of identical marks inserted after some event
    let mut checked = 0;
    for (name, c1) in corpus_mcs().into_iter().step_by(4) {
        let ev = c1.events().to_vec();
        for g in 1..ev.len() {
            let mu = c1.front.gradings_at(g).unwrap();
            let Some((k, l)) = (1..=mu.len()).flat_map(|k| (1..k).map(move |l| (k, l))).find(|&(k, l)| mu[k - 1] == mu[l - 1])
            else {
                continue;
            };
            let mut w = ev.clone();
            w.splice(g..g, [FrontEvent::Mark(k, l); 2]);
            let c2 = reconstruct(&MarkedFront::new(w).unwrap()).unwrap();
            let (d1, e1) = mcs_to_dipped_aug(&c1).unwrap();
            let (d2, e2) = mcs_to_dipped_aug(&c2).unwrap();
            let (d, e1) = extend_by_zero_after_dip(&d1, &e1, g).unwrap();
            let (d, e1) = extend_by_zero_after_dip(&d, &e1, g + 1).unwrap();
            assert_eq!(d, d2);
            assert!(check_dipped_augmentation(&d, &e1));
            let j = g + 1;
            let mut h = DipValuation::zero(&d);
            h.a[j - 1] = e2.b[j - 1].clone();
            assert!(check_dipped_homotopy(&d, &e1, &e2, &h).unwrap(), "{name} at {g}");
            h.a[j - 1] = BitMat::zero(mu.len());
            assert!(!check_dipped_homotopy(&d, &e1, &e2, &h).unwrap());
            checked += 1;
        }
    }
    assert!(checked > 10);
}

/// Departure X_k directly followed by the return X_k, marked in C1.
#[test]
fn marked_graded_return_is_not_homotopic() {
    let mut seen = 0;
    for (name, f) in corpus() {
        if !f.is_two_bridge() {
            continue;
        }
        for r in enumerate_rulings(&f).unwrap() {
            for p in departure_return_pairs(&r).into_iter().filter(|p| p.graded) {
                let c1 = reconstruct(&sr_bar_from_ruling(&f, &r, &BTreeSet::from([p.ret])).unwrap()).unwrap();
                let c2 = reconstruct(&sr_bar_from_ruling(&f, &r, &BTreeSet::new()).unwrap()).unwrap();
                let (d1, e1) = mcs_to_dipped_aug(&c1).unwrap();
                let (d2, e2) = mcs_to_dipped_aug(&c2).unwrap();
                let (d, e2) = extend_to(&d2, &e2, &d1).unwrap();
                assert!(check_dipped_augmentation(&d, &e2));
                let res = solve_dipped_homotopy(&d, &e1, &e2).unwrap();
                assert!(matches!(res, HomotopyResult::Obstructed(_)), "{name}");

                // the three equations of the simplest configuration
                let ev = c1.events();
                let s = ev.iter().enumerate().filter(|(_, x)| matches!(x, FrontEvent::Crossing(_))).nth(p.ret - 1).unwrap().0;
                let FrontEvent::Crossing(k) = ev[s] else { unreachable!() };
                let q = s + 1; // insert index of the return crossing
                if s < 2 || ev[s - 1] != FrontEvent::Mark(k + 1, k) || ev[s - 2] != FrontEvent::Crossing(k) {
                    continue;
                }
                let (j, jm) = (q - 1, q - 2);
                let a = |dip| Letter::A { dip, k: k + 1, l: k };
                let e_q = homotopy_equation(&d, &e1, &e2, Letter::Q { insert: q });
                let e_bj = homotopy_equation(&d, &e1, &e2, Letter::B { dip: j, k: k + 1, l: k });
                let e_bjm = homotopy_equation(&d, &e1, &e2, Letter::B { dip: jm, k: k + 1, l: k });
                assert_eq!(e_q, (vec![a(j)], false));
                let mut both = e_bj.0.clone();
                both.sort();
                let mut want = vec![a(j), a(jm)];
                want.sort();
                assert_eq!((both, e_bj.1), (want, true));
                assert_eq!(e_bjm, (vec![a(jm)], false));
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}
