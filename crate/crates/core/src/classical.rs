//! Textbook module Gröbner machinery over a single ring `P_n`, used to check
//! the OI algorithms width by width.
//!
//! Vectors live in `P_n^r` with components indexed `0..r`. Division, pair
//! handling and orders are implemented here from scratch; only the scalar
//! and monomial types are shared with the rest of the crate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::field::Field;
use crate::free_module::{FreeOIModule, ModuleElement, ModuleMonomial};
use crate::oi_category::OIMorphism;
use crate::order::MonomialOrder;
use crate::polynomial::Monomial;
use crate::terms::Term;

#[derive(Debug, Clone, PartialEq)]
pub struct CTerm<S> {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: S,
}

/// A vector of `P_n^r` as a list of terms. Functions taking an order sort
/// their inputs themselves, so vectors may be built in any term order.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector<S> {
    pub terms: Vec<CTerm<S>>,
}

/// Lexicographic comparison with `x_{i',j'} < x_{i,j}` iff `i' < i`, or
/// `i' = i` and `j' < j`.
pub fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    let sorted = |m: &Monomial| {
        let mut e = m.exponents();
        e.sort_by_key(|&(i, j, _)| std::cmp::Reverse((i, j)));
        e
    };
    let (ea, eb) = (sorted(a), sorted(b));
    for (x, y) in ea.iter().zip(eb.iter()) {
        let (vx, vy) = ((x.0, x.1), (y.0, y.1));
        if vx != vy {
            return vx.cmp(&vy);
        }
        if x.2 != y.2 {
            return x.2.cmp(&y.2);
        }
    }
    ea.len().cmp(&eb.len())
}

/// Module term orders on `P_n^r`.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalOrder {
    /// Component first (higher rank is larger), then [`lex`].
    PositionOverTerm { rank: Vec<usize> },
    /// Induced by images `v_k` under `base`: compare `a·lt(v_k)` first; on a
    /// tie the smaller component index is larger.
    Schreyer {
        base: Box<ClassicalOrder>,
        leads: Vec<(usize, Monomial)>,
    },
}

impl ClassicalOrder {
    pub fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self {
            ClassicalOrder::PositionOverTerm { rank } => rank[a.0]
                .cmp(&rank[b.0])
                .then_with(|| lex(a.1, b.1)),
            ClassicalOrder::Schreyer { base, leads } => {
                let (ca, ma) = &leads[a.0];
                let (cb, mb) = &leads[b.0];
                let ia = ma.mul(a.1);
                let ib = mb.mul(b.1);
                base.compare((*ca, &ia), (*cb, &ib))
                    .then_with(|| b.0.cmp(&a.0))
            }
        }
    }

    /// The Schreyer order induced by `images` (all nonzero) under `self`.
    pub fn schreyer<S: Field>(&self, images: &[CVector<S>]) -> ClassicalOrder {
        let leads = images
            .iter()
            .map(|v| {
                let t = lead(v, self).expect("Schreyer order needs nonzero images");
                (t.comp, t.mono.clone())
            })
            .collect();
        ClassicalOrder::Schreyer {
            base: Box::new(self.clone()),
            leads,
        }
    }
}

fn cmp_terms<S>(ord: &ClassicalOrder, a: &CTerm<S>, b: &CTerm<S>) -> Ordering {
    ord.compare((a.comp, &a.mono), (b.comp, &b.mono))
}

fn lead<'a, S>(v: &'a CVector<S>, ord: &ClassicalOrder) -> Option<&'a CTerm<S>> {
    v.terms.iter().max_by(|a, b| cmp_terms(ord, a, b))
}

impl<S: Field> CVector<S> {
    pub fn zero() -> Self {
        CVector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sort descending, merge equal monomials and drop zeros.
    pub fn normalized(mut self, ord: &ClassicalOrder) -> Self {
        self.terms.sort_by(|a, b| cmp_terms(ord, b, a));
        let mut out: Vec<CTerm<S>> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coeff = last.coeff.clone() + t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        CVector { terms: out }
    }

    fn monic(mut self) -> Self {
        if let Some(c) = self.terms.first().map(|t| t.coeff.inv()) {
            for t in &mut self.terms {
                t.coeff = t.coeff.clone() * c.clone();
            }
        }
        self
    }

    /// `self + c·m·other` for sorted inputs; the result is sorted.
    fn add_multiple(&self, c: &S, m: &Monomial, other: &Self, ord: &ClassicalOrder) -> Self {
        let shifted: Vec<CTerm<S>> = other
            .terms
            .iter()
            .map(|t| CTerm {
                comp: t.comp,
                mono: t.mono.mul(m),
                coeff: t.coeff.clone() * c.clone(),
            })
            .collect();
        let mut out = Vec::with_capacity(self.terms.len() + shifted.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < shifted.len() {
            match cmp_terms(ord, &self.terms[i], &shifted[j]) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.terms[i].coeff.clone() + shifted[j].coeff.clone();
                    if !s.is_zero() {
                        out.push(CTerm {
                            comp: self.terms[i].comp,
                            mono: self.terms[i].mono.clone(),
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted.into_iter().skip(j));
        CVector { terms: out }
    }
}

/// Divisor lookup by leading component.
struct Basis<'a, S> {
    gens: &'a [CVector<S>],
    index: &'a LeadIndex,
}

/// Generator positions grouped by leading component.
#[derive(Default)]
struct LeadIndex {
    by_comp: HashMap<usize, Vec<usize>>,
}

impl LeadIndex {
    /// `gens` must be sorted and nonzero.
    fn new<S>(gens: &[CVector<S>]) -> Self {
        let mut index = LeadIndex::default();
        for (k, g) in gens.iter().enumerate() {
            index.push(k, g);
        }
        index
    }

    fn push<S>(&mut self, k: usize, g: &CVector<S>) {
        self.by_comp.entry(g.terms[0].comp).or_default().push(k);
    }
}

impl<'a, S: Field> Basis<'a, S> {
    fn new(gens: &'a [CVector<S>], index: &'a LeadIndex) -> Self {
        Basis { gens, index }
    }

    fn divisor(&self, t: &CTerm<S>) -> Option<(usize, Monomial)> {
        self.index.by_comp.get(&t.comp)?.iter().find_map(|&k| {
            t.mono
                .divide(&self.gens[k].terms[0].mono)
                .map(|q| (k, q))
        })
    }

    fn reduce_full(&self, v: CVector<S>, ord: &ClassicalOrder) -> CVector<S> {
        let mut p = v;
        let mut rem = Vec::new();
        while !p.terms.is_empty() {
            let t = p.terms[0].clone();
            match self.divisor(&t) {
                Some((k, q)) => {
                    let g = &self.gens[k];
                    let c = -(t.coeff / g.terms[0].coeff.clone());
                    p = p.add_multiple(&c, &q, g, ord);
                }
                None => {
                    rem.push(t);
                    p.terms.remove(0);
                }
            }
        }
        CVector { terms: rem }
    }

    fn top_reduces_to_zero(&self, v: CVector<S>, ord: &ClassicalOrder) -> bool {
        let mut p = v;
        while let Some(t) = p.terms.first().cloned() {
            let Some((k, q)) = self.divisor(&t) else {
                return false;
            };
            let g = &self.gens[k];
            let c = -(t.coeff / g.terms[0].coeff.clone());
            p = p.add_multiple(&c, &q, g, ord);
        }
        true
    }
}

fn prepare<S: Field>(gens: &[CVector<S>], ord: &ClassicalOrder) -> Vec<CVector<S>> {
    gens.iter()
        .map(|g| g.clone().normalized(ord))
        .filter(|g| !g.is_zero())
        .collect()
}

fn s_vector<S: Field>(f: &CVector<S>, g: &CVector<S>, ord: &ClassicalOrder) -> Option<CVector<S>> {
    let (a, b) = (&f.terms[0], &g.terms[0]);
    if a.comp != b.comp {
        return None;
    }
    let l = a.mono.lcm(&b.mono);
    let fa = l.divide(&a.mono).unwrap();
    let gb = l.divide(&b.mono).unwrap();
    let left = CVector::zero().add_multiple(&a.coeff.inv(), &fa, f, ord);
    Some(left.add_multiple(&-b.coeff.inv(), &gb, g, ord))
}

/// Remainder of `v` under full reduction by `gens` (first divisor wins).
pub fn classical_reduce<S: Field>(
    v: &CVector<S>,
    gens: &[CVector<S>],
    ord: &ClassicalOrder,
) -> CVector<S> {
    let gs = prepare(gens, ord);
    let index = LeadIndex::new(&gs);
    Basis::new(&gs, &index).reduce_full(v.clone().normalized(ord), ord)
}

/// Remainders of every `vs[k]` under full reduction by `gens`.
pub fn classical_reduce_all<S: Field>(
    vs: &[CVector<S>],
    gens: &[CVector<S>],
    ord: &ClassicalOrder,
) -> Vec<CVector<S>> {
    let gs = prepare(gens, ord);
    let index = LeadIndex::new(&gs);
    let basis = Basis::new(&gs, &index);
    vs.par_iter()
        .map(|v| basis.reduce_full(v.clone().normalized(ord), ord))
        .collect()
}

/// Buchberger's criterion: every S-vector top-reduces to zero.
pub fn classical_is_gb<S: Field>(gens: &[CVector<S>], ord: &ClassicalOrder) -> bool {
    let gs = prepare(gens, ord);
    let index = LeadIndex::new(&gs);
    let basis = Basis::new(&gs, &index);
    (0..gs.len()).into_par_iter().all(|i| {
        index.by_comp[&gs[i].terms[0].comp]
            .iter()
            .filter(|&&j| j > i)
            .all(|&j| {
                let s = s_vector(&gs[i], &gs[j], ord).unwrap();
                basis.top_reduces_to_zero(s, ord)
            })
    })
}

/// Gröbner basis of the submodule generated by `gens`: the nonzero inputs
/// followed by monic remainders, with pairs taken by smallest lcm degree.
pub fn classical_gb<S: Field>(gens: &[CVector<S>], ord: &ClassicalOrder) -> Vec<CVector<S>> {
    let mut gs = prepare(gens, ord);
    let mut index = LeadIndex::new(&gs);
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let key = |f: &CVector<S>, g: &CVector<S>| f.terms[0].mono.lcm(&g.terms[0].mono).degree();
    for j in 0..gs.len() {
        for i in 0..j {
            if gs[i].terms[0].comp == gs[j].terms[0].comp {
                queue.insert((key(&gs[i], &gs[j]), j, i));
            }
        }
    }
    while let Some((_, j, i)) = queue.pop_first() {
        let s = s_vector(&gs[i], &gs[j], ord).unwrap();
        let r = Basis::new(&gs, &index).reduce_full(s, ord);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let t = gs.len();
        for &k in index.by_comp.get(&r.terms[0].comp).into_iter().flatten() {
            queue.insert((key(&gs[k], &r), t, k));
        }
        index.push(t, &r);
        gs.push(r);
    }
    gs
}

/// Reduced Gröbner basis: minimal leading terms, fully interreduced, monic,
/// sorted by leading term descending.
pub fn classical_reduced_gb<S: Field>(gens: &[CVector<S>], ord: &ClassicalOrder) -> Vec<CVector<S>> {
    let g = classical_gb(gens, ord);
    let mut keep: Vec<CVector<S>> = Vec::new();
    for (k, f) in g.iter().enumerate() {
        let t = &f.terms[0];
        let redundant = g.iter().enumerate().any(|(h, other)| {
            let u = &other.terms[0];
            h != k
                && u.comp == t.comp
                && u.mono.divides(&t.mono)
                && (u.mono != t.mono || h < k)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<CVector<S>> = keep
            .iter()
            .enumerate()
            .filter(|&(h, _)| h != k)
            .map(|(_, v)| v.clone())
            .collect();
        let head = CVector {
            terms: vec![keep[k].terms[0].clone()],
        };
        let tail = CVector {
            terms: keep[k].terms[1..].to_vec(),
        };
        let index = LeadIndex::new(&others);
        let tail = Basis::new(&others, &index).reduce_full(tail, ord);
        let mut v = head;
        v.terms.extend(tail.terms);
        out.push(v.monic());
    }
    out.sort_by(|a, b| cmp_terms(ord, &b.terms[0], &a.terms[0]));
    out
}

/// Membership in the submodule generated by `gens`.
pub fn classical_member<S: Field>(v: &CVector<S>, gens: &[CVector<S>], ord: &ClassicalOrder) -> bool {
    first_non_member(std::slice::from_ref(v), gens, ord).is_none()
}

/// Index of the first `vs[k]` outside the submodule generated by `gens`.
pub fn first_non_member<S: Field>(
    vs: &[CVector<S>],
    gens: &[CVector<S>],
    ord: &ClassicalOrder,
) -> Option<usize> {
    let g = classical_gb(gens, ord);
    let index = LeadIndex::new(&g);
    let basis = Basis::new(&g, &index);
    vs.par_iter()
        .position_first(|v| !basis.reduce_full(v.clone().normalized(ord), ord).is_zero())
}

/// Leading terms `(component, monomial)` of a sorted-on-demand set.
pub fn leading_terms<S: Field>(gens: &[CVector<S>], ord: &ClassicalOrder) -> Vec<(usize, Monomial)> {
    prepare(gens, ord)
        .iter()
        .map(|g| (g.terms[0].comp, g.terms[0].mono.clone()))
        .collect()
}

/// `true` iff the monomial submodules generated by `a` and `b` coincide.
pub fn same_monomial_module(a: &[(usize, Monomial)], b: &[(usize, Monomial)]) -> bool {
    let covered = |x: &[(usize, Monomial)], y: &[(usize, Monomial)]| {
        y.iter()
            .all(|(c, m)| x.iter().any(|(c2, m2)| c == c2 && m2.divides(m)))
    };
    covered(a, b) && covered(b, a)
}

/// `Σ_k v_k·images[k]`, the image of `v` under the matrix with columns
/// `images`.
pub fn apply_matrix<S: Field>(
    v: &CVector<S>,
    images: &[CVector<S>],
    ord: &ClassicalOrder,
) -> CVector<S> {
    let mut out = CVector::zero();
    for t in &v.terms {
        let img = images[t.comp].clone().normalized(ord);
        out = out.add_multiple(&t.coeff, &t.mono, &img, ord);
    }
    out
}

/// Generators of the kernel of `e_k ↦ images[k]`, `images` in
/// `P_n^{target_rank}`, by elimination in `P_n^{target_rank + r}`.
pub fn classical_syzygies<S: Field>(
    images: &[CVector<S>],
    target_rank: usize,
    n: usize,
) -> Vec<CVector<S>> {
    let r = images.len();
    // target components outrank all source components
    let rank: Vec<usize> = (0..target_rank)
        .map(|c| r + target_rank - c)
        .chain((0..r).map(|k| r - k))
        .collect();
    let ord = ClassicalOrder::PositionOverTerm { rank };
    let gens: Vec<CVector<S>> = images
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut terms = v.terms.clone();
            terms.push(CTerm {
                comp: target_rank + k,
                mono: Monomial::one(n),
                coeff: S::one(),
            });
            CVector { terms }
        })
        .collect();
    classical_gb(&gens, &ord)
        .into_iter()
        .filter(|g| g.terms[0].comp >= target_rank)
        .map(|g| CVector {
            terms: g
                .terms
                .into_iter()
                .map(|t| CTerm {
                    comp: t.comp - target_rank,
                    ..t
                })
                .collect(),
        })
        .collect()
}

/// Indexing of local basis elements `e_{π,i}` of one width as components.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSpace {
    width: usize,
    comps: Vec<(usize, OIMorphism)>,
    index: HashMap<(usize, OIMorphism), usize>,
}

impl ComponentSpace {
    fn from_list(width: usize, mut comps: Vec<(usize, OIMorphism)>) -> Self {
        comps.sort();
        comps.dedup();
        let index = comps
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k))
            .collect();
        ComponentSpace { width, comps, index }
    }

    /// All local basis elements of `F_n`, ordered by slot then map.
    pub fn from_module(module: &FreeOIModule, n: usize) -> Self {
        let comps = (0..module.rank())
            .flat_map(|i| {
                crate::oi_category::hom_iter(module.basis_width(i), n).map(move |pi| (i, pi))
            })
            .collect();
        Self::from_list(n, comps)
    }

    /// The local basis elements occurring in `elems` (all of one width).
    pub fn from_elements<S: Field>(elems: &[ModuleElement<S>]) -> Self {
        let width = elems.first().map_or(0, |e| e.width());
        let comps = elems
            .iter()
            .flat_map(|e| e.terms().iter().map(|t| (t.mono.slot, t.mono.pi.clone())))
            .collect();
        Self::from_list(width, comps)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[(usize, OIMorphism)] {
        &self.comps
    }

    pub fn index_of(&self, slot: usize, pi: &OIMorphism) -> Option<usize> {
        self.index.get(&(slot, pi.clone())).copied()
    }

    /// The coordinate vector of `f`; panics on a component outside the space.
    pub fn vector<S: Field>(&self, f: &ModuleElement<S>) -> CVector<S> {
        CVector {
            terms: f
                .terms()
                .iter()
                .map(|t| CTerm {
                    comp: self.index_of(t.mono.slot, &t.mono.pi).expect("component in space"),
                    mono: t.mono.mono.clone(),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn element<S: Field>(
        &self,
        v: &CVector<S>,
        ord: &(impl MonomialOrder + ?Sized),
    ) -> ModuleElement<S> {
        let terms = v
            .terms
            .iter()
            .map(|t| {
                let (slot, pi) = self.comps[t.comp].clone();
                Term::new(t.coeff.clone(), ModuleMonomial::new(t.mono.clone(), pi, slot))
            })
            .collect();
        ModuleElement::from_terms(self.width, terms, ord).expect("uniform width")
    }

    /// Position-over-term order in which smaller slots are larger and, within
    /// a slot, larger maps are larger.
    pub fn oilex_order(&self) -> ClassicalOrder {
        let mut idx: Vec<usize> = (0..self.comps.len()).collect();
        idx.sort_by(|&a, &b| {
            let (sa, pa) = &self.comps[a];
            let (sb, pb) = &self.comps[b];
            sb.cmp(sa).then_with(|| pa.cmp(pb))
        });
        let mut rank = vec![0; self.comps.len()];
        for (r, k) in idx.into_iter().enumerate() {
            rank[k] = r;
        }
        ClassicalOrder::PositionOverTerm { rank }
    }
}
