//! Free OI-modules `F = ⊕ F^{OI,d_i}` over `P`, their width-wise elements,
//! the action `F(ε)` and orbits.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::oi_category::{hom_iter, OIMorphism};
use crate::order::MonomialOrder;
use crate::polynomial::{write_signed_term, Monomial, Polynomial};
use crate::terms::{self, Term};

/// One free summand `F^{OI,d}` with the degree of its basis element.
///
/// `shift` is the degree assigned to `e_{id,i}`; a summand written
/// `F^{OI,d}(-k)` has `shift = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    pub width: usize,
    pub shift: i64,
}

/// Signature of a finitely generated free OI-module over `P = (X^{OI,1})^{⊗c}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeOIModule {
    c: usize,
    basis: Vec<BasisSpec>,
}

impl FreeOIModule {
    pub fn new(c: usize, basis: Vec<BasisSpec>) -> Self {
        FreeOIModule { c, basis }
    }

    /// Ungraded convenience constructor from basis widths.
    pub fn with_widths(c: usize, widths: &[usize]) -> Self {
        FreeOIModule::new(
            c,
            widths.iter().map(|&width| BasisSpec { width, shift: 0 }).collect(),
        )
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisSpec] {
        &self.basis
    }

    pub fn basis_width(&self, slot: usize) -> usize {
        self.basis[slot].width
    }

    pub fn shift(&self, slot: usize) -> i64 {
        self.basis[slot].shift
    }

    /// The module with basis element `slot` removed; later slots shift down.
    pub fn remove_basis(&self, slot: usize) -> FreeOIModule {
        let mut basis = self.basis.clone();
        basis.remove(slot);
        FreeOIModule::new(self.c, basis)
    }

    /// Local basis elements `e_{π,i}` of width `n`, by slot then `π`.
    pub fn local_basis(&self, n: usize) -> Vec<(usize, OIMorphism)> {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(slot, b)| hom_iter(b.width, n).map(move |pi| (slot, pi)))
            .collect()
    }

    /// The generator `e_{id,slot}` as an element of its own width.
    pub fn generator<S: Field>(&self, slot: usize) -> ModuleElement<S> {
        let d = self.basis[slot].width;
        ModuleElement {
            width: d,
            terms: vec![Term::new(
                S::one(),
                ModuleMonomial::new(Monomial::one(d), OIMorphism::identity(d), slot),
            )],
        }
    }

    pub fn validate_monomial(&self, m: &ModuleMonomial) -> Result<()> {
        let Some(spec) = self.basis.get(m.slot) else {
            return Err(Error::ParentMismatch(format!(
                "slot {} out of range for rank {}",
                m.slot + 1,
                self.rank()
            )));
        };
        if m.pi.source_width() != spec.width {
            return Err(Error::ParentMismatch(format!(
                "basis map {} has source width {} but slot {} has width {}",
                m.pi,
                m.pi.source_width(),
                m.slot + 1,
                spec.width
            )));
        }
        if m.mono.width() != m.pi.target_width() {
            return Err(Error::WidthMismatch {
                expected: m.pi.target_width(),
                found: m.mono.width(),
            });
        }
        if m.mono.max_row() > self.c {
            return Err(Error::ParentMismatch(format!(
                "variable row {} exceeds c = {}",
                m.mono.max_row(),
                self.c
            )));
        }
        Ok(())
    }

    pub fn validate<S: Field>(&self, f: &ModuleElement<S>) -> Result<()> {
        for t in &f.terms {
            self.validate_monomial(&t.mono)?;
            if t.mono.width() != f.width {
                return Err(Error::WidthMismatch {
                    expected: f.width,
                    found: t.mono.width(),
                });
            }
        }
        Ok(())
    }
}

/// A monomial `a e_{π,i}` of `F`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleMonomial {
    pub mono: Monomial,
    pub pi: OIMorphism,
    /// 0-based basis slot `i - 1`.
    pub slot: usize,
}

impl ModuleMonomial {
    pub fn new(mono: Monomial, pi: OIMorphism, slot: usize) -> Self {
        debug_assert_eq!(mono.width(), pi.target_width());
        ModuleMonomial { mono, pi, slot }
    }

    pub fn width(&self) -> usize {
        self.pi.target_width()
    }

    /// `F(ε)(a e_{π,i}) = ε_*(a) e_{ε∘π,i}`.
    pub fn apply(&self, eps: &OIMorphism) -> ModuleMonomial {
        ModuleMonomial {
            mono: self.mono.induced(eps),
            pi: eps.compose_unchecked(&self.pi),
            slot: self.slot,
        }
    }

    pub fn mul(&self, a: &Monomial) -> ModuleMonomial {
        ModuleMonomial {
            mono: self.mono.mul(a),
            pi: self.pi.clone(),
            slot: self.slot,
        }
    }

    /// Same local basis element `e_{π,i}`.
    pub fn same_basis(&self, other: &ModuleMonomial) -> bool {
        self.slot == other.slot && self.pi == other.pi
    }

    /// `lcm` of module monomials; `None` stands for the zero lcm of distinct
    /// local basis elements.
    pub fn lcm(&self, other: &ModuleMonomial) -> Option<ModuleMonomial> {
        self.same_basis(other).then(|| ModuleMonomial {
            mono: self.mono.lcm(&other.mono),
            pi: self.pi.clone(),
            slot: self.slot,
        })
    }

    /// Ordinary divisibility within one width.
    pub fn divides(&self, other: &ModuleMonomial) -> bool {
        self.same_basis(other) && self.mono.divides(&other.mono)
    }

    pub fn degree(&self, module: &FreeOIModule) -> i64 {
        self.mono.degree() as i64 + module.shift(self.slot)
    }
}

impl fmt::Display for ModuleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.mono.is_one() {
            write!(f, "{} ", self.mono)?;
        }
        write!(f, "e_{{{},{}}}", self.pi, self.slot + 1)
    }
}

impl fmt::Debug for ModuleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.width())
    }
}

pub type ModuleTerm<S> = Term<S, ModuleMonomial>;

/// An element of `F_n`. Terms are sorted descending under the monomial order
/// the element was built with; every operation that may reorder terms takes
/// that order explicitly.
#[derive(Clone, PartialEq)]
pub struct ModuleElement<S> {
    width: usize,
    terms: Vec<ModuleTerm<S>>,
}

impl<S: Field> ModuleElement<S> {
    pub fn zero(width: usize) -> Self {
        ModuleElement {
            width,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        width: usize,
        terms: Vec<ModuleTerm<S>>,
        ord: &(impl MonomialOrder + ?Sized),
    ) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.mono.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                found: t.mono.width(),
            });
        }
        Ok(ModuleElement {
            width,
            terms: terms::normalize(terms, |a, b| ord.compare(a, b)),
        })
    }

    pub(crate) fn from_sorted(width: usize, terms: Vec<ModuleTerm<S>>) -> Self {
        ModuleElement { width, terms }
    }

    pub fn monomial(c: S, mono: ModuleMonomial) -> Self {
        let width = mono.width();
        let terms = if c.is_zero() { Vec::new() } else { vec![Term::new(c, mono)] };
        ModuleElement { width, terms }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[ModuleTerm<S>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<ModuleTerm<S>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&ModuleTerm<S>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&ModuleMonomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<&S> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn is_sorted(&self, ord: &(impl MonomialOrder + ?Sized)) -> bool {
        terms::is_sorted_desc(&self.terms, |a, b| ord.compare(a, b))
    }

    /// Re-sort under a different order.
    pub fn reorder(&self, ord: &(impl MonomialOrder + ?Sized)) -> Self {
        ModuleElement {
            width: self.width,
            terms: terms::normalize(self.terms.clone(), |a, b| ord.compare(a, b)),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, ord: &(impl MonomialOrder + ?Sized)) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_scaled(other, &S::one(), ord))
    }

    pub fn sub(&self, other: &Self, ord: &(impl MonomialOrder + ?Sized)) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_scaled(other, &-S::one(), ord))
    }

    /// `self + scale * other`.
    pub fn add_scaled(&self, other: &Self, scale: &S, ord: &(impl MonomialOrder + ?Sized)) -> Self {
        debug_assert_eq!(self.width, other.width);
        ModuleElement {
            width: self.width,
            terms: terms::add_scaled(&self.terms, other.terms.iter().cloned(), scale, |a, b| {
                ord.compare(a, b)
            }),
        }
    }

    /// `self + c * mono * other`, with `mono` a monomial of `P_n`.
    pub fn add_term_multiple(
        &self,
        other: &Self,
        c: &S,
        mono: &Monomial,
        ord: &(impl MonomialOrder + ?Sized),
    ) -> Self {
        debug_assert_eq!(self.width, other.width);
        ModuleElement {
            width: self.width,
            terms: terms::add_scaled(
                &self.terms,
                other.terms.iter().map(|t| Term::new(t.coeff.clone(), t.mono.mul(mono))),
                c,
                |a, b| ord.compare(a, b),
            ),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return ModuleElement::zero(self.width);
        }
        ModuleElement {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(c.clone() * t.coeff.clone(), t.mono.clone()))
                .collect(),
        }
    }

    /// `c * mono * self`; monomial orders are multiplicative so no re-sort is needed.
    pub fn mul_term(&self, c: &S, mono: &Monomial) -> Self {
        debug_assert_eq!(mono.width(), self.width);
        if c.is_zero() {
            return ModuleElement::zero(self.width);
        }
        ModuleElement {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(c.clone() * t.coeff.clone(), t.mono.mul(mono)))
                .collect(),
        }
    }

    pub fn scale_by_polynomial(
        &self,
        a: &Polynomial<S>,
        ord: &(impl MonomialOrder + ?Sized),
    ) -> Result<Self> {
        if a.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: a.width(),
            });
        }
        let mut acc = ModuleElement::zero(self.width);
        for t in a.terms() {
            acc = acc.add_term_multiple(self, &t.coeff, &t.mono, ord);
        }
        Ok(acc)
    }

    /// Divide by the leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    /// `F(ε)(f) = Σ ε_*(a) e_{ε∘π,i}`. Monomial orders are compatible with
    /// the OI action, so the term order is preserved.
    pub fn apply_morphism(&self, eps: &OIMorphism) -> Result<Self> {
        if eps.source_width() != self.width {
            return Err(Error::WidthMismatch {
                expected: eps.source_width(),
                found: self.width,
            });
        }
        Ok(self.apply_unchecked(eps))
    }

    pub(crate) fn apply_unchecked(&self, eps: &OIMorphism) -> Self {
        ModuleElement {
            width: eps.target_width(),
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), t.mono.apply(eps)))
                .collect(),
        }
    }

    /// Degree of the leading term: `deg(a) + shift_i`.
    pub fn degree(&self, module: &FreeOIModule) -> Option<i64> {
        self.terms.iter().map(|t| t.mono.degree(module)).max()
    }

    pub fn is_homogeneous(&self, module: &FreeOIModule) -> bool {
        let mut degs = self.terms.iter().map(|t| t.mono.degree(module));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Group terms by local basis element: `Σ a_{π,i} e_{π,i}`.
    pub fn coefficients_by_basis(&self) -> Vec<((usize, OIMorphism), Polynomial<S>)> {
        let mut groups: Vec<((usize, OIMorphism), Vec<Term<S, Monomial>>)> = Vec::new();
        for t in &self.terms {
            let key = (t.mono.slot, t.mono.pi.clone());
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(Term::new(t.coeff.clone(), t.mono.mono.clone())),
                None => groups.push((key, vec![Term::new(t.coeff.clone(), t.mono.mono.clone())])),
            }
        }
        groups
            .into_iter()
            .map(|(k, v)| (k, Polynomial::from_terms(self.width, v).expect("uniform width")))
            .collect()
    }

    /// Rename slots through `map` (`None` drops the term); used when basis
    /// elements are removed from a module. The result is re-sorted.
    pub fn remap_slots(
        &self,
        map: impl Fn(usize) -> Option<usize>,
        ord: &(impl MonomialOrder + ?Sized),
    ) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                map(t.mono.slot).map(|s| {
                    Term::new(
                        t.coeff.clone(),
                        ModuleMonomial::new(t.mono.mono.clone(), t.mono.pi.clone(), s),
                    )
                })
            })
            .collect();
        ModuleElement {
            width: self.width,
            terms: terms::normalize(terms, |a, b| ord.compare(a, b)),
        }
    }
}

impl<S: Field> fmt::Display for ModuleElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, t) in self.terms.iter().enumerate() {
            write_signed_term(f, k == 0, &t.coeff, &t.mono.to_string(), false)?;
        }
        write!(f, " ∈ F_{}", self.width)
    }
}

impl<S: Field> fmt::Debug for ModuleElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Orb(S, m)`: every `F(ε)(s)` with `w(s) <= m`, `ε ∈ Hom(w(s), m)`, in
/// generator-then-morphism order with duplicates removed.
pub fn orbit<S: Field>(gens: &[ModuleElement<S>], m: usize) -> Vec<ModuleElement<S>> {
    let mut out: Vec<ModuleElement<S>> = Vec::new();
    for g in gens {
        if g.width() > m {
            continue;
        }
        for eps in hom_iter(g.width(), m) {
            let h = g.apply_unchecked(&eps);
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

/// Orbit elements with their provenance `(generator index, ε)`.
pub fn orbit_with_provenance<S: Field>(
    gens: &[ModuleElement<S>],
    m: usize,
) -> Vec<(usize, OIMorphism, ModuleElement<S>)> {
    let mut out = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.width() > m {
            continue;
        }
        for eps in hom_iter(g.width(), m) {
            let h = g.apply_unchecked(&eps);
            out.push((k, eps, h));
        }
    }
    out
}
