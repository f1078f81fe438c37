#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use legendrian_core::augmentation::enumerate_augmentations;
use legendrian_core::normal::aug_to_mcs;
use legendrian_core::{build_dga, parse_front, MarkedFront, Mcs};

pub fn corpus() -> Vec<(String, MarkedFront)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "front"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, parse_front(&fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn front(name: &str) -> MarkedFront {
    corpus().into_iter().find(|(n, _)| n == name).unwrap().1
}

/// aug_to_mcs of every augmentation of every corpus front.
pub fn corpus_mcs() -> Vec<(String, Mcs)> {
    let mut out = Vec::new();
    for (name, f) in corpus() {
        let dga = build_dga(&f).unwrap();
        for e in enumerate_augmentations(&dga) {
            out.push((name.clone(), aug_to_mcs(&e, &f, &dga).unwrap()));
        }
    }
    out
}
