//! Seeded random instances shared by the integration suites.
#![allow(dead_code)]

use std::cmp::Ordering;

use oigb_core::classical::{
    classical_gb, classical_is_gb, classical_reduce_all, classical_syzygies, leading_terms,
    same_monomial_module, CVector, ComponentSpace,
};
use oigb_core::division::remainder;
use oigb_core::free_module::{orbit, BasisSpec, FreeOIModule, ModuleMonomial};
use oigb_core::groebner::max_width;
use oigb_core::oi_category::enumerate_hom;
use oigb_core::terms::Term;
use oigb_core::{Monomial, MonomialOrder, OIMorphism, OILex, QQElement, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn mm(width: usize, e: &[(usize, usize, u32)], pi: &[usize], slot: usize) -> ModuleMonomial {
    ModuleMonomial::new(
        Monomial::new(width, e).unwrap(),
        OIMorphism::new(width, pi).unwrap(),
        slot,
    )
}

pub fn elem(width: usize, ts: Vec<(i64, ModuleMonomial)>) -> QQElement {
    let terms = ts.into_iter().map(|(c, m)| Term::new(q(c), m)).collect();
    QQElement::from_terms(width, terms, &OILex).unwrap()
}

/// Shape of random problems.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_c: usize,
    pub max_rank: usize,
    pub max_basis_width: usize,
    pub max_width: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub max_gens: usize,
}

/// c ≤ 2, generator widths ≤ 2, degrees ≤ 2, at most 3 generators.
pub const SMALL: Shape = Shape {
    max_c: 2,
    max_rank: 2,
    max_basis_width: 1,
    max_width: 2,
    max_degree: 2,
    max_terms: 2,
    max_gens: 3,
};

pub fn random_module(rng: &mut TestRng, shape: &Shape) -> FreeOIModule {
    let c = rng.gen_range(1..=shape.max_c);
    let rank = rng.gen_range(1..=shape.max_rank);
    let basis = (0..rank)
        .map(|_| BasisSpec {
            width: rng.gen_range(0..=shape.max_basis_width),
            shift: 0,
        })
        .collect();
    FreeOIModule::new(c, basis)
}

pub fn random_monomial(rng: &mut TestRng, c: usize, width: usize, max_degree: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_degree);
    let mut e = Vec::new();
    if width > 0 {
        for _ in 0..deg {
            e.push((rng.gen_range(1..=c), rng.gen_range(1..=width), 1));
        }
    }
    Monomial::new(width, &e).unwrap()
}

/// A random monomial of `module` in width `width`, if that width has any
/// local basis element.
pub fn random_module_monomial(
    rng: &mut TestRng,
    module: &FreeOIModule,
    width: usize,
    max_degree: u32,
) -> Option<ModuleMonomial> {
    let basis = module.local_basis(width);
    let (slot, pi) = basis.choose(rng)?.clone();
    Some(ModuleMonomial::new(
        random_monomial(rng, module.c(), width, max_degree),
        pi,
        slot,
    ))
}

pub fn random_element(
    rng: &mut TestRng,
    module: &FreeOIModule,
    width: usize,
    max_degree: u32,
    max_terms: usize,
) -> QQElement {
    let k = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..k {
        if let Some(m) = random_module_monomial(rng, module, width, max_degree) {
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            terms.push(Term::new(q(c), m));
        }
    }
    QQElement::from_terms(width, terms, &OILex).unwrap()
}

/// A module and a nonempty list of nonzero generators.
pub fn random_problem(rng: &mut TestRng, shape: &Shape) -> (FreeOIModule, Vec<QQElement>) {
    loop {
        let module = random_module(rng, shape);
        let min_width = module.basis().iter().map(|b| b.width).min().unwrap();
        let lo = min_width.max(1);
        if lo > shape.max_width {
            continue;
        }
        let k = rng.gen_range(1..=shape.max_gens);
        let gens: Vec<QQElement> = (0..k)
            .map(|_| {
                let w = rng.gen_range(lo..=shape.max_width);
                random_element(rng, &module, w, shape.max_degree, shape.max_terms)
            })
            .filter(|g| !g.is_zero())
            .collect();
        if !gens.is_empty() {
            return (module, gens);
        }
    }
}

pub fn random_morphism(rng: &mut TestRng, m: usize, extra: usize) -> OIMorphism {
    let n = m + rng.gen_range(0..=extra);
    enumerate_hom(m, n).choose(rng).unwrap().clone()
}

/// OI-divisibility by exhaustive search over `Hom(w(u), w(v))`.
pub fn brute_divides(u: &ModuleMonomial, v: &ModuleMonomial) -> bool {
    u.slot == v.slot
        && enumerate_hom(u.width(), v.width())
            .iter()
            .any(|eps| u.apply(eps).divides(v))
}

/// Reconstruction and (R1)-(R3) for the remainder of `f` modulo `b`.
pub fn division_contract(f: &QQElement, b: &[QQElement]) -> Result<(), String> {
    let res = remainder(f, b, &OILex).map_err(|e| e.to_string())?;
    let r = &res.remainder;
    let mut rebuilt = r.clone();
    for qt in &res.quotients {
        let q = b[qt.generator].apply_morphism(&qt.eps).unwrap();
        if q != qt.element {
            return Err(format!("quotient {} is not F(ε)(b)", qt.element));
        }
        let part = q.scale_by_polynomial(&qt.coeff, &OILex).unwrap();
        if let Some(lp) = part.leading_monomial() {
            let lf = f.leading_monomial().unwrap();
            if OILex.compare(lp, lf) == Ordering::Greater {
                return Err(format!("(R3): {lp} > {lf}"));
            }
        }
        rebuilt = rebuilt.add(&part, &OILex).unwrap();
    }
    if rebuilt != *f {
        return Err("reconstruction fails".into());
    }
    if let Some(lr) = r.leading_monomial() {
        if let Some(g) = b.iter().find(|g| brute_divides(g.leading_monomial().unwrap(), lr)) {
            return Err(format!("(R1): {} divides {lr}", g.leading_monomial().unwrap()));
        }
        let lf = f.leading_monomial().unwrap();
        if r != f && OILex.compare(lr, lf) != Ordering::Less {
            return Err(format!("(R2): {lr} not below {lf}"));
        }
    }
    Ok(())
}

/// For every `n <= 2·maxwidth(G)`: `Orb(G, n)` is a classical Gröbner basis
/// and its leading module equals that of a classical basis of `Orb(B, n)`.
pub fn widthwise_agreement(
    module: &FreeOIModule,
    b: &[QQElement],
    g: &[QQElement],
) -> Result<(), String> {
    for n in 0..=2 * max_width(g) {
        let space = ComponentSpace::from_module(module, n);
        let ord = space.oilex_order();
        let og: Vec<_> = orbit(g, n).iter().map(|f| space.vector(f)).collect();
        let ob: Vec<_> = orbit(b, n).iter().map(|f| space.vector(f)).collect();
        if !classical_is_gb(&og, &ord) {
            return Err(format!("orbit of G is not a Gröbner basis in width {n}"));
        }
        let reference = classical_gb(&ob, &ord);
        if !same_monomial_module(&leading_terms(&og, &ord), &leading_terms(&reference, &ord)) {
            return Err(format!("leading modules differ in width {n}"));
        }
    }
    Ok(())
}

/// `c = 2`, `F = F^{OI,1} ⊕ F^{OI,1} ⊕ F^{OI,2}`, generators of widths 1 and 2.
pub fn fixture_minimal_gb() -> (FreeOIModule, Vec<QQElement>) {
    let f = FreeOIModule::with_widths(2, &[1, 1, 2]);
    let b = vec![
        elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0)), (1, mm(1, &[(2, 1, 1)], &[1], 1))]),
        elem(
            2,
            vec![
                (1, mm(2, &[(1, 2, 1), (1, 1, 1)], &[2], 1)),
                (1, mm(2, &[(2, 2, 1), (2, 1, 1)], &[1, 2], 2)),
            ],
        ),
    ];
    (f, b)
}

/// `F = F^{OI,1} ⊕ F^{OI,2}`, one generator of width 3.
pub fn fixture_widths_1_2() -> (FreeOIModule, Vec<QQElement>) {
    let f = FreeOIModule::with_widths(2, &[1, 2]);
    let b = vec![elem(
        3,
        vec![
            (1, mm(3, &[(1, 2, 1), (1, 1, 1)], &[2], 0)),
            (1, mm(3, &[(2, 2, 1), (2, 1, 1)], &[1, 3], 1)),
        ],
    )];
    (f, b)
}

/// `F = F^{OI,1} ⊕ F^{OI,1}`, one generator of width 2.
pub fn fixture_widths_1_1() -> (FreeOIModule, Vec<QQElement>) {
    let f = FreeOIModule::with_widths(2, &[1, 1]);
    let b = vec![elem(
        2,
        vec![
            (1, mm(2, &[(1, 2, 1), (1, 1, 1)], &[2], 0)),
            (1, mm(2, &[(2, 2, 1), (2, 1, 1)], &[1], 1)),
        ],
    )];
    (f, b)
}

pub fn fixtures() -> Vec<(&'static str, FreeOIModule, Vec<QQElement>)> {
    let (a, b) = fixture_minimal_gb();
    let (c, d) = fixture_widths_1_2();
    let (e, f) = fixture_widths_1_1();
    vec![("minimal_gb", a, b), ("widths_1_2", c, d), ("widths_1_1", e, f)]
}

/// The syzygies `syz` of `g` (a Gröbner basis of a submodule of `target`)
/// restricted to width `n`: every orbit element lies in `ker φ_n`, the orbit
/// is a classical Gröbner basis under the classical Schreyer order, and it
/// generates every kernel element found by elimination.
pub fn restricted_syzygies_sound(
    target: &FreeOIModule,
    g: &[QQElement],
    syz: &[QQElement],
    n: usize,
) -> Result<(), String> {
    let source = FreeOIModule::new(
        target.c(),
        g.iter().map(|x| BasisSpec { width: x.width(), shift: 0 }).collect(),
    );
    let src = ComponentSpace::from_module(&source, n);
    let tgt = ComponentSpace::from_module(target, n);
    if src.rank() == 0 {
        return Ok(());
    }
    let images: Vec<CVector<Rational>> = src
        .components()
        .iter()
        .map(|(i, pi)| tgt.vector(&g[*i].apply_morphism(pi).unwrap()))
        .collect();
    let base = tgt.oilex_order();
    let schreyer = base.schreyer(&images);
    let orb: Vec<CVector<Rational>> = orbit(syz, n).iter().map(|s| src.vector(s)).collect();
    for v in &orb {
        if !oigb_core::classical::apply_matrix(v, &images, &base).is_zero() {
            return Err(format!("restricted syzygy outside the kernel in width {n}"));
        }
    }
    if !classical_is_gb(&orb, &schreyer) {
        return Err(format!("restricted syzygies are not a Gröbner basis in width {n}"));
    }
    // `orb` is a Gröbner basis, so reduction decides membership
    let kernel = classical_syzygies(&images, tgt.rank(), n);
    if classical_reduce_all(&kernel, &orb, &schreyer).iter().any(|r| !r.is_zero()) {
        return Err(format!("kernel element not generated in width {n}"));
    }
    Ok(())
}
