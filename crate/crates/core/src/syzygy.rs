//! The Schreyer construction: the free module `G` over a Gröbner basis `B`,
//! the map `φ`, the order `<_B` and the syzygies `s_{i,j}^{σ,τ}`.

use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;

use crate::division::{divide_with, Divisors};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{BasisSpec, FreeOIModule, ModuleElement, ModuleMonomial};
use crate::groebner::{effective_pairs_between, minimal_lead_indices, pair_s_polynomial, passes_criterion, CriticalPair};
use crate::oi_category::OIMorphism;
use crate::order::MonomialOrder;
use crate::terms::Term;

/// The free module `G = ⊕_i F^{OI, w(b_i)}` with `ε_{id,i} ↦ b_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyzygyPresentation<S: Field> {
    pub source: FreeOIModule,
    pub target_generators: Vec<ModuleElement<S>>,
}

impl<S: Field> SyzygyPresentation<S> {
    /// With `graded`, the basis element `ε_{id,i}` gets the degree of `b_i`
    /// in `target`; otherwise all shifts are zero.
    pub fn new(b: Vec<ModuleElement<S>>, target: &FreeOIModule, graded: bool) -> Result<Self> {
        let mut basis = Vec::with_capacity(b.len());
        for (k, x) in b.iter().enumerate() {
            let shift = if graded {
                if !x.is_homogeneous(target) {
                    return Err(Error::NotHomogeneous(k));
                }
                x.degree(target).ok_or(Error::ZeroElement)?
            } else {
                0
            };
            basis.push(BasisSpec {
                width: x.width(),
                shift,
            });
        }
        Ok(SyzygyPresentation {
            source: FreeOIModule::new(target.c(), basis),
            target_generators: b,
        })
    }

    /// `φ(s) = Σ a·F(π)(b_i)` over the terms `a·ε_{π,i}` of `s`.
    pub fn phi_apply(
        &self,
        s: &ModuleElement<S>,
        ord: &(impl MonomialOrder + ?Sized),
    ) -> Result<ModuleElement<S>> {
        phi_apply(&self.target_generators, s, ord)
    }
}

/// Linear extension of `ε_{id,i} ↦ images[i]`.
pub fn phi_apply<S: Field>(
    images: &[ModuleElement<S>],
    s: &ModuleElement<S>,
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<ModuleElement<S>> {
    let mut out = ModuleElement::zero(s.width());
    for t in s.terms() {
        let b = images.get(t.mono.slot).ok_or_else(|| {
            Error::ParentMismatch(format!("slot {} outside the source module", t.mono.slot + 1))
        })?;
        if b.width() != t.mono.pi.source_width() {
            return Err(Error::ParentMismatch(format!(
                "basis map {} does not start at width {}",
                t.mono.pi,
                b.width()
            )));
        }
        let img = b.apply_unchecked(&t.mono.pi);
        out = out.add_term_multiple(&img, &t.coeff, &t.mono.mono, ord);
    }
    Ok(out)
}

/// The Schreyer order `<_B` on the monomials of `G`.
#[derive(Debug, Clone)]
pub struct SchreyerOrder {
    base: Arc<dyn MonomialOrder>,
    leads: Vec<ModuleMonomial>,
}

impl SchreyerOrder {
    /// `leads[i] = lm(b_i)` under `base`.
    pub fn new(base: Arc<dyn MonomialOrder>, leads: Vec<ModuleMonomial>) -> Self {
        SchreyerOrder { base, leads }
    }

    pub fn from_generators<S: Field>(base: Arc<dyn MonomialOrder>, b: &[ModuleElement<S>]) -> Result<Self> {
        let leads = b
            .iter()
            .map(|x| x.leading_monomial().cloned().ok_or(Error::ZeroElement))
            .collect::<Result<_>>()?;
        Ok(SchreyerOrder::new(base, leads))
    }

    pub fn base(&self) -> &Arc<dyn MonomialOrder> {
        &self.base
    }

    pub fn leads(&self) -> &[ModuleMonomial] {
        &self.leads
    }

    /// `lm(φ(a ε_{π,i})) = a·π_*(lm b_i)`.
    pub fn image_monomial(&self, u: &ModuleMonomial) -> ModuleMonomial {
        self.leads[u.slot].apply(&u.pi).mul(&u.mono)
    }
}

impl MonomialOrder for SchreyerOrder {
    fn compare(&self, u: &ModuleMonomial, v: &ModuleMonomial) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        self.base
            .compare(&self.image_monomial(u), &self.image_monomial(v))
            // (π,i) ≺_B (ρ,j) puts a ε_{ρ,j} below b ε_{π,i}
            .then_with(|| (v.slot, &v.pi).cmp(&(u.slot, &u.pi)))
            .then_with(|| u.mono.lex_cmp(&v.mono))
    }
}

/// `schreyer_compare(u, v)` under the order induced by `lm(B)`.
pub fn schreyer_compare(order: &SchreyerOrder, u: &ModuleMonomial, v: &ModuleMonomial) -> Ordering {
    order.compare(u, v)
}

/// `lm_{<_B}(s_{i,j}^{σ,τ}) = m_{i,j}^{σ,τ} ε_{σ,i}`, or `None` when the
/// pushed-forward leading monomials sit on different local basis elements.
pub fn syzygy_leading_monomial(leads: &[ModuleMonomial], p: &CriticalPair) -> Option<ModuleMonomial> {
    let a = leads[p.i].apply(&p.sigma);
    let b = leads[p.j].apply(&p.tau);
    let l = a.lcm(&b)?;
    let m = l.mono.divide(&a.mono)?;
    Some(ModuleMonomial::new(m, p.sigma.clone(), p.i))
}

/// The oriented critical pairs `(σ,i) ≺_B (τ,j)` with nonzero S-polynomial
/// leading data, in canonical order.
fn oriented_pairs(leads: &[ModuleMonomial]) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for i in 0..leads.len() {
        for j in i..leads.len() {
            out.extend(effective_pairs_between(i, j, &leads[i], &leads[j]));
        }
    }
    out
}

fn build_syzygy<S: Field>(
    b: &[ModuleElement<S>],
    leads: &[ModuleMonomial],
    p: &CriticalPair,
    schreyer: &SchreyerOrder,
    base: &(impl MonomialOrder + ?Sized),
) -> ModuleElement<S> {
    let m = p.width();
    let a = leads[p.i].apply(&p.sigma);
    let c = leads[p.j].apply(&p.tau);
    let l = a.lcm(&c).expect("effective pair");
    let m_ij = l.mono.divide(&a.mono).unwrap();
    let m_ji = l.mono.divide(&c.mono).unwrap();
    let s = pair_s_polynomial(b, p, base);
    let divs = Divisors::new(b).expect("nonzero generators");
    let res = divide_with(&s, &divs, base, true);
    debug_assert!(res.remainder.is_zero(), "B is not a Gröbner basis");
    let mut terms = vec![
        Term::new(S::one(), ModuleMonomial::new(m_ij, p.sigma.clone(), p.i)),
        Term::new(-S::one(), ModuleMonomial::new(m_ji, p.tau.clone(), p.j)),
    ];
    for q in res.quotients {
        for t in q.coeff.into_terms() {
            terms.push(Term::new(-t.coeff, ModuleMonomial::new(t.mono, q.eps.clone(), q.generator)));
        }
    }
    ModuleElement::from_terms(m, terms, schreyer).expect("uniform width")
}

/// `s_{i,j}^{σ,τ}` for every critical pair with `(σ,i) ≺_B (τ,j)` and nonzero
/// S-polynomial, in canonical pair order. Together they form a Gröbner basis
/// of `Syz(B)` under `<_B`.
pub fn syzygy_generators<S: Field>(
    b: &[ModuleElement<S>],
    ord: Arc<dyn MonomialOrder>,
) -> Result<(SchreyerOrder, Vec<ModuleElement<S>>)> {
    check_input(b, &ord)?;
    let schreyer = SchreyerOrder::from_generators(ord.clone(), b)?;
    let pairs = oriented_pairs(schreyer.leads());
    let out = pairs
        .par_iter()
        .map(|p| build_syzygy(b, schreyer.leads(), p, &schreyer, &ord))
        .collect();
    Ok((schreyer, out))
}

/// Like [`syzygy_generators`], but only the pairs whose leading monomials
/// form a minimal generating set of `⟨lm Syz(B)⟩` are divided out. The
/// result is still a Gröbner basis of `Syz(B)`.
pub fn minimal_syzygy_generators<S: Field>(
    b: &[ModuleElement<S>],
    ord: Arc<dyn MonomialOrder>,
) -> Result<(SchreyerOrder, Vec<ModuleElement<S>>)> {
    check_input(b, &ord)?;
    Ok(minimal_syzygy_generators_unchecked(b, ord))
}

pub(crate) fn minimal_syzygy_generators_unchecked<S: Field>(
    b: &[ModuleElement<S>],
    ord: Arc<dyn MonomialOrder>,
) -> (SchreyerOrder, Vec<ModuleElement<S>>) {
    let schreyer = SchreyerOrder::from_generators(ord.clone(), b).expect("nonzero generators");
    let pairs = oriented_pairs(schreyer.leads());
    let lms: Vec<ModuleMonomial> = pairs
        .iter()
        .map(|p| syzygy_leading_monomial(schreyer.leads(), p).expect("effective pair"))
        .collect();
    let keep = minimal_lead_indices(&lms, &schreyer);
    let mut out: Vec<ModuleElement<S>> = keep
        .par_iter()
        .map(|&k| build_syzygy(b, schreyer.leads(), &pairs[k], &schreyer, &ord))
        .collect();
    out.sort_by(|x, y| {
        x.width()
            .cmp(&y.width())
            .then_with(|| schreyer.compare(x.leading_monomial().unwrap(), y.leading_monomial().unwrap()))
    });
    (schreyer, out)
}

fn check_input<S: Field>(b: &[ModuleElement<S>], ord: &Arc<dyn MonomialOrder>) -> Result<()> {
    for (k, x) in b.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !x.is_monic() {
            return Err(Error::NotMonic(k));
        }
    }
    if !passes_criterion(b, ord)? {
        return Err(Error::NotGroebner);
    }
    Ok(())
}

/// The oriented critical pairs behind [`syzygy_generators`], in the same
/// order.
pub fn oriented_critical_pairs<S: Field>(b: &[ModuleElement<S>]) -> Result<Vec<CriticalPair>> {
    let leads: Vec<ModuleMonomial> = b
        .iter()
        .map(|x| x.leading_monomial().cloned().ok_or(Error::ZeroElement))
        .collect::<Result<_>>()?;
    Ok(oriented_pairs(&leads))
}

/// `ε_{π,i}` as a monomial of `G`.
pub fn basis_monomial(width: usize, pi: OIMorphism, slot: usize) -> ModuleMonomial {
    ModuleMonomial::new(crate::polynomial::Monomial::one(width), pi, slot)
}
