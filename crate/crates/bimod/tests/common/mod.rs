#![allow(dead_code)]

use std::sync::Arc;

use sbim_algebra::{Laurent, Q};
use sbim_bimod::Engine;
use sbim_coxeter::{DoubleCoset, Subset};
use sbim_realization::preset_doc;
use sbim_schubert::Schubert;

pub fn setup(preset: &str) -> (Arc<Schubert<Q>>, Engine<Q>) {
    let real = preset_doc(preset).unwrap().build::<Q>().unwrap();
    let sch = Arc::new(Schubert::for_realization(real).unwrap());
    let eng = Engine::new(sch.clone());
    (sch, eng)
}

pub fn l(s: &str) -> Laurent {
    Laurent::parse(s).unwrap()
}

pub fn sub(sch: &Schubert<Q>, s: &str) -> Subset {
    sch.group.parse_subset(s).unwrap()
}

pub fn coset(sch: &Schubert<Q>, w: &str, s1: Subset, s2: Subset) -> DoubleCoset {
    let w = sch.group.parse_element(w).unwrap();
    sch.group.double_coset(&w, s1, s2).unwrap()
}

/// All words of length at most `n` in the generators `0..rank`.
pub fn words(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..rank {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
