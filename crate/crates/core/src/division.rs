//! OI division: remainders of module elements modulo a finite set.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{ModuleElement, ModuleMonomial};
use crate::oi_category::OIMorphism;
use crate::order::{oi_divides, MonomialOrder};
use crate::polynomial::{Monomial, PolyTerm, Polynomial};
use crate::terms::Term;

/// One summand `a_k q_k` of a division expression, with `q_k = F(ε)(b_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quotient<S: Field> {
    pub coeff: Polynomial<S>,
    pub generator: usize,
    pub eps: OIMorphism,
    pub element: ModuleElement<S>,
}

/// `f = Σ a_k q_k + remainder`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionResult<S: Field> {
    pub remainder: ModuleElement<S>,
    pub quotients: Vec<Quotient<S>>,
}

/// Precomputed divisor data; reusable across many divisions by the same set.
pub struct Divisors<'a, S> {
    elems: &'a [ModuleElement<S>],
    leads: Vec<ModuleMonomial>,
}

impl<'a, S: Field> Divisors<'a, S> {
    pub fn new(elems: &'a [ModuleElement<S>]) -> Result<Self> {
        let leads = elems
            .iter()
            .map(|b| b.leading_monomial().cloned().ok_or(Error::ZeroElement))
            .collect::<Result<Vec<_>>>()?;
        Ok(Divisors { elems, leads })
    }

    /// First `(k, witness)` with `lm(b_k)` OI-dividing `v`, scanning `B` in
    /// order and then `Hom` canonically.
    fn find(&self, v: &ModuleMonomial) -> Option<(usize, OIMorphism, Monomial)> {
        self.leads.iter().enumerate().find_map(|(k, u)| {
            oi_divides(u, v).map(|w| (k, w.eps, w.quotient))
        })
    }

    pub fn is_reducible(&self, v: &ModuleMonomial) -> bool {
        self.find(v).is_some()
    }
}

/// Full OI division of `f` by `divisors`.
pub fn remainder<S: Field>(
    f: &ModuleElement<S>,
    divisors: &[ModuleElement<S>],
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<DivisionResult<S>> {
    let divs = Divisors::new(divisors)?;
    Ok(divide_with(f, &divs, ord, true))
}

/// `true` iff the remainder of `f` modulo `divisors` is zero. Stops at the
/// first irreducible leading term.
pub fn reduces_to_zero<S: Field>(
    f: &ModuleElement<S>,
    divs: &Divisors<'_, S>,
    ord: &(impl MonomialOrder + ?Sized),
) -> bool {
    let mut p = f.clone();
    let mut cache = HashMap::new();
    while let Some(lt) = p.leading_term().cloned() {
        let Some((k, eps, q)) = divs.find(&lt.mono) else {
            return false;
        };
        let image = cache
            .entry((k, eps.clone()))
            .or_insert_with(|| divs.elems[k].apply_unchecked(&eps));
        let coef = lt.coeff / divs.elems[k].leading_coefficient().unwrap().clone();
        p = p.add_term_multiple(image, &-coef, &q, ord);
    }
    true
}

pub(crate) fn divide_with<S: Field>(
    f: &ModuleElement<S>,
    divs: &Divisors<'_, S>,
    ord: &(impl MonomialOrder + ?Sized),
    track_quotients: bool,
) -> DivisionResult<S> {
    let width = f.width();
    // An irreducible leading term makes f its own remainder, as (R2) demands.
    if f.leading_monomial().is_none_or(|lm| !divs.is_reducible(lm)) {
        return DivisionResult {
            remainder: f.clone(),
            quotients: Vec::new(),
        };
    }
    let mut p = f.clone();
    let mut rem: Vec<Term<S, ModuleMonomial>> = Vec::new();
    let mut images: HashMap<(usize, OIMorphism), ModuleElement<S>> = HashMap::new();
    let mut quotient_terms: Vec<((usize, OIMorphism), Vec<PolyTerm<S>>)> = Vec::new();

    while let Some(lt) = p.leading_term().cloned() {
        match divs.find(&lt.mono) {
            Some((k, eps, q)) => {
                let key = (k, eps.clone());
                let image = images
                    .entry(key.clone())
                    .or_insert_with(|| divs.elems[k].apply_unchecked(&eps));
                let coef = lt.coeff / divs.elems[k].leading_coefficient().unwrap().clone();
                p = p.add_term_multiple(image, &-coef.clone(), &q, ord);
                if track_quotients {
                    let t = Term::new(coef, q);
                    match quotient_terms.iter_mut().find(|(k2, _)| *k2 == key) {
                        Some((_, v)) => v.push(t),
                        None => quotient_terms.push((key, vec![t])),
                    }
                }
            }
            None => {
                rem.push(lt);
                let rest = p.into_terms().split_off(1);
                p = ModuleElement::from_sorted(width, rest);
            }
        }
    }

    let quotients = quotient_terms
        .into_iter()
        .map(|((k, eps), ts)| {
            let element = images.remove(&(k, eps.clone())).unwrap();
            Quotient {
                coeff: Polynomial::from_terms(width, ts).expect("uniform width"),
                generator: k,
                eps,
                element,
            }
        })
        .collect();
    DivisionResult {
        remainder: ModuleElement::from_sorted(width, rem),
        quotients,
    }
}

/// Check the defining properties of a remainder: exact reconstruction,
/// (R1)-(R3), and full reduction of `r` unless `r = f`. Returns a description of the first
/// violation.
pub fn verify_division<S: Field>(
    f: &ModuleElement<S>,
    divisors: &[ModuleElement<S>],
    result: &DivisionResult<S>,
    ord: &(impl MonomialOrder + ?Sized),
) -> std::result::Result<(), String> {
    let divs = Divisors::new(divisors).map_err(|e| e.to_string())?;
    let mut rebuilt = result.remainder.clone();
    for q in &result.quotients {
        let expected = divisors[q.generator]
            .apply_morphism(&q.eps)
            .map_err(|e| e.to_string())?;
        if expected != q.element {
            return Err(format!("quotient element for generator {} is not F(ε)(b)", q.generator));
        }
        let part = q.element.scale_by_polynomial(&q.coeff, ord).map_err(|e| e.to_string())?;
        rebuilt = rebuilt.add(&part, ord).map_err(|e| e.to_string())?;
        // (R3)
        if let (Some(lm_part), Some(lm_f)) = (part.leading_monomial(), f.leading_monomial()) {
            if ord.compare(lm_part, lm_f) == Ordering::Greater {
                return Err(format!("(R3) fails: lm(a q) = {lm_part} > lm(f) = {lm_f}"));
            }
        }
    }
    if rebuilt != *f {
        return Err("reconstruction f = Σ a q + r fails".into());
    }
    let r = &result.remainder;
    // (R1)
    if let Some(lm) = r.leading_monomial() {
        if divs.is_reducible(lm) {
            return Err(format!("(R1) fails: lm(r) = {lm} is OI-divisible by lm(B)"));
        }
    }
    // full reduction whenever any reduction happened
    if r != f {
        if let Some(t) = r.terms().iter().find(|t| divs.is_reducible(&t.mono)) {
            return Err(format!("remainder term {} is OI-divisible by lm(B)", t.mono));
        }
    }
    // (R2)
    if let (Some(lr), Some(lf)) = (r.leading_monomial(), f.leading_monomial()) {
        if r != f && ord.compare(lr, lf) != Ordering::Less {
            return Err(format!("(R2) fails: lm(r) = {lr} is not below lm(f) = {lf}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::free_module::ModuleMonomial;
    use crate::order::OILex;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mm(width: usize, e: &[(usize, usize, u32)], pi: &[usize], slot: usize) -> ModuleMonomial {
        ModuleMonomial::new(
            Monomial::new(width, e).unwrap(),
            OIMorphism::new(width, pi).unwrap(),
            slot,
        )
    }

    fn elem(width: usize, ts: Vec<(i64, ModuleMonomial)>) -> ModuleElement<Rational> {
        ModuleElement::from_terms(width, ts.into_iter().map(|(c, m)| Term::new(q(c), m)).collect(), &OILex)
            .unwrap()
    }

    #[test]
    fn self_division() {
        let f = elem(1, vec![(2, mm(1, &[(1, 1, 1)], &[1], 0)), (1, mm(1, &[(2, 1, 1)], &[1], 1))]);
        let res = remainder(&f, std::slice::from_ref(&f), &OILex).unwrap();
        assert!(res.remainder.is_zero());
        assert_eq!(res.quotients.len(), 1);
        assert!(res.quotients[0].coeff.is_unit());
        assert!(res.quotients[0].eps.is_identity());
        verify_division(&f, std::slice::from_ref(&f), &res, &OILex).unwrap();
    }

    #[test]
    fn reduction_through_a_morphism() {
        let b = elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0))]);
        let f = elem(2, vec![(1, mm(2, &[(1, 2, 2)], &[2], 0))]);
        let res = remainder(&f, std::slice::from_ref(&b), &OILex).unwrap();
        assert!(res.remainder.is_zero());
        assert_eq!(res.quotients[0].eps, OIMorphism::new(2, &[2]).unwrap());
        verify_division(&f, &[b], &res, &OILex).unwrap();
    }

    #[test]
    fn irreducible_terms_stay_in_remainder() {
        let b = elem(1, vec![(1, mm(1, &[(2, 1, 1)], &[1], 0))]);
        let f = elem(
            2,
            vec![
                (3, mm(2, &[(1, 2, 1)], &[2], 0)),
                (1, mm(2, &[(2, 1, 1), (1, 1, 1)], &[1], 0)),
                (5, mm(2, &[], &[1], 1)),
            ],
        );
        let res = remainder(&f, std::slice::from_ref(&b), &OILex).unwrap();
        assert_eq!(res.remainder, f);
        assert!(res.quotients.is_empty());
        verify_division(&f, std::slice::from_ref(&b), &res, &OILex).unwrap();

        // once the leading term reduces, the tail is reduced as well
        let g = f
            .add(&elem(2, vec![(1, mm(2, &[(2, 2, 1), (1, 2, 1)], &[2], 0))]), &OILex)
            .unwrap();
        let res = remainder(&g, std::slice::from_ref(&b), &OILex).unwrap();
        assert_eq!(res.remainder.len(), 2);
        assert!(res.remainder.terms().iter().all(|t| t.mono.mono.exponent(2, 1) == 0));
        verify_division(&g, &[b], &res, &OILex).unwrap();
    }

    #[test]
    fn zero_divisor_rejected() {
        let f = elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0))]);
        assert_eq!(
            remainder(&f, &[ModuleElement::zero(1)], &OILex).unwrap_err(),
            Error::ZeroElement
        );
    }
}
