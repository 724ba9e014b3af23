//! Monomial orders on free OI-modules, leading data and OI-divisibility.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{ModuleElement, ModuleMonomial};
use crate::oi_category::{hom_with_fixed, OIMorphism};
use crate::polynomial::Monomial;

/// A total order on all monomials of a free OI-module, across widths,
/// compatible with multiplication by monomials of `P_n` and with the OI
/// action. Restricting it to one width gives the classical order `<_n`.
pub trait MonomialOrder: Send + Sync + Debug {
    fn compare(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering;
}

impl<O: MonomialOrder + ?Sized> MonomialOrder for std::sync::Arc<O> {
    fn compare(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        (**self).compare(a, b)
    }
}

impl<O: MonomialOrder + ?Sized> MonomialOrder for &O {
    fn compare(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        (**self).compare(a, b)
    }
}

/// The lexicographic OI order.
///
/// Slots compare first with `e_{·,j} < e_{·,i}` when `i < j`; within a slot
/// the maps compare as tuples `(m, π(1), ..., π(d))`; with equal local basis
/// elements the coefficient monomials compare lexicographically with
/// `x_{i',j'} < x_{i,j}` iff `i' < i`, or `i' = i` and `j' < j`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OILex;

impl MonomialOrder for OILex {
    fn compare(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        b.slot
            .cmp(&a.slot)
            .then_with(|| a.pi.cmp(&b.pi))
            .then_with(|| a.mono.lex_cmp(&b.mono))
    }
}

/// Leading monomial, coefficient and term of a nonzero element.
#[derive(Debug, Clone, PartialEq)]
pub struct Leading<S> {
    pub lm: ModuleMonomial,
    pub lc: S,
}

/// Leading data of `f`. Elements keep their terms sorted, so this is the
/// first term; `ord` is used to double check in debug builds.
pub fn leading<S: Field>(
    f: &ModuleElement<S>,
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<Leading<S>> {
    debug_assert!(f.is_sorted(ord));
    let t = f.leading_term().ok_or(Error::ZeroElement)?;
    Ok(Leading {
        lm: t.mono.clone(),
        lc: t.coeff.clone(),
    })
}

/// A witness for OI-divisibility: `F(ε)(u)` divides `v` with quotient `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityWitness {
    pub eps: OIMorphism,
    pub quotient: Monomial,
}

/// Decide whether `u` OI-divides `v`; returns the first witness `ε` in
/// canonical `Hom` order.
pub fn oi_divides(u: &ModuleMonomial, v: &ModuleMonomial) -> Option<DivisibilityWitness> {
    if u.slot != v.slot || u.width() > v.width() || u.mono.degree() > v.mono.degree() {
        return None;
    }
    // ε ∘ π_u = π_v pins ε on im(π_u).
    let fixed: Vec<(usize, usize)> = (1..=u.pi.source_width())
        .map(|k| (u.pi.apply(k), v.pi.apply(k)))
        .collect();
    for eps in hom_with_fixed(u.width(), v.width(), &fixed) {
        let image = u.mono.induced(&eps);
        if let Some(quotient) = v.mono.divide(&image) {
            return Some(DivisibilityWitness { eps, quotient });
        }
    }
    None
}
