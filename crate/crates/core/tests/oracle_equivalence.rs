//! OI-Buchberger against width-by-width classical Gröbner bases on a seeded
//! random corpus.

mod common;

use common::*;
use oigb_core::groebner::{buchberger, passes_criterion, stabilization_check};
use oigb_core::OILex;

const CORPUS: u64 = 60;

#[test]
fn buchberger_matches_classical_widthwise() {
    for seed in 0..CORPUS {
        let mut r = rng(seed);
        let (module, b) = random_problem(&mut r, &SMALL);
        let g = buchberger(&b, &OILex).unwrap();
        if let Err(e) = widthwise_agreement(&module, &b, &g) {
            panic!("seed {seed}: {e}\nB = {b:?}");
        }
    }
}

#[test]
fn criterion_agrees_with_stabilization() {
    for seed in 0..CORPUS {
        let mut r = rng(seed);
        let (_, b) = random_problem(&mut r, &SMALL);
        let crit = passes_criterion(&b, &OILex).unwrap();
        let stab = stabilization_check(&b, &OILex).unwrap();
        assert_eq!(crit, stab, "seed {seed}: B = {b:?}");
        // the completed basis always passes both
        let g = buchberger(&b, &OILex).unwrap();
        assert!(passes_criterion(&g, &OILex).unwrap(), "seed {seed}");
        assert!(stabilization_check(&g, &OILex).unwrap(), "seed {seed}");
    }
}

#[test]
fn corpus_is_not_trivial() {
    // some inputs should already be bases and some should not
    let (mut yes, mut no) = (0, 0);
    for seed in 0..CORPUS {
        let (_, b) = random_problem(&mut rng(seed), &SMALL);
        if passes_criterion(&b, &OILex).unwrap() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 0 && no > 0, "yes={yes} no={no}");
}
