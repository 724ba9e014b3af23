//! The remainder contract checked from first principles: reconstruction,
//! (R1)-(R3), and zero remainders surviving pushforward.

mod common;

use common::*;
use oigb_core::division::remainder;
use oigb_core::free_module::orbit;
use oigb_core::groebner::buchberger;
use oigb_core::{OILex, QQElement};
use proptest::prelude::*;
use rand::Rng;

const SHAPE: Shape = Shape {
    max_c: 2,
    max_rank: 2,
    max_basis_width: 2,
    max_width: 3,
    max_degree: 2,
    max_terms: 3,
    max_gens: 3,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn remainders_satisfy_contract(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (module, b) = random_problem(&mut r, &SHAPE);
        let lo = module.basis().iter().map(|x| x.width).min().unwrap();
        let w = r.gen_range(lo.max(1)..=4);
        let f = random_element(&mut r, &module, w, 3, 5);
        division_contract(&f, &b).map_err(TestCaseError::fail)?;
        // elements built from B itself exercise the reducing branch
        let orb = orbit(&b, w);
        if !orb.is_empty() {
            let mut g = f.clone();
            for _ in 0..2 {
                let h = &orb[r.gen_range(0..orb.len())];
                let a = random_monomial(&mut r, module.c(), w, 1);
                g = g.add(&h.mul_term(&q(r.gen_range(1..4)), &a), &OILex).unwrap();
            }
            division_contract(&g, &b).map_err(TestCaseError::fail)?;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn zero_remainders_survive_pushforward(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (module, b) = random_problem(&mut r, &SMALL);
        let g = buchberger(&b, &OILex).unwrap();
        let w = r.gen_range(1..=3);
        let orb = orbit(&g, w);
        prop_assume!(!orb.is_empty());
        let mut f = QQElement::zero(w);
        for _ in 0..3 {
            let h = &orb[r.gen_range(0..orb.len())];
            let a = random_monomial(&mut r, module.c(), w, 2);
            f = f.add(&h.mul_term(&q(r.gen_range(-3..4)), &a), &OILex).unwrap();
        }
        prop_assert!(remainder(&f, &g, &OILex).unwrap().remainder.is_zero());
        let eps = random_morphism(&mut r, w, 3);
        let pushed = f.apply_morphism(&eps).unwrap();
        prop_assert!(remainder(&pushed, &g, &OILex).unwrap().remainder.is_zero());
    }
}
