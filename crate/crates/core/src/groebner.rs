//! S-polynomials, critical pairs, the OI-Buchberger criterion and
//! algorithm, minimal Gröbner bases and the width-`2W` stabilization test.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use log::warn;

use crate::classical;
use crate::division::{divide_with, reduces_to_zero, Divisors};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{orbit, ModuleElement, ModuleMonomial};
use crate::oi_category::{hom_iter, hom_with_fixed, OIMorphism};
use crate::order::{oi_divides, MonomialOrder, OILex};

/// A critical pair `(F(σ)(b_i), F(τ)(b_j))` of width `m = |im σ ∪ im τ|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalPair {
    pub i: usize,
    pub j: usize,
    pub sigma: OIMorphism,
    pub tau: OIMorphism,
}

impl CriticalPair {
    pub fn width(&self) -> usize {
        self.sigma.target_width()
    }
}

/// `S(f, g)`; zero when the leading monomials sit on different local basis
/// elements.
pub fn s_polynomial<S: Field>(
    f: &ModuleElement<S>,
    g: &ModuleElement<S>,
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<ModuleElement<S>> {
    if f.width() != g.width() {
        return Err(Error::WidthMismatch {
            expected: f.width(),
            found: g.width(),
        });
    }
    let (tf, tg) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ZeroElement),
    };
    let Some(l) = tf.mono.lcm(&tg.mono) else {
        return Ok(ModuleElement::zero(f.width()));
    };
    let mf = l.mono.divide(&tf.mono.mono).unwrap();
    let mg = l.mono.divide(&tg.mono.mono).unwrap();
    let left = f.mul_term(&tf.coeff.inv(), &mf);
    Ok(left.add_term_multiple(g, &-tg.coeff.inv(), &mg, ord))
}

fn leads<S: Field>(b: &[ModuleElement<S>]) -> Result<Vec<ModuleMonomial>> {
    b.iter()
        .map(|x| x.leading_monomial().cloned().ok_or(Error::ZeroElement))
        .collect()
}

/// All critical pairs `C(B)`: matching leading slots and
/// `m = |im σ ∪ im τ|`, excluding the trivial `(i, σ) = (j, τ)`. Ordered by
/// `(i, j, m, σ, τ)`.
pub fn critical_pairs<S: Field>(
    b: &[ModuleElement<S>],
    _ord: &(impl MonomialOrder + ?Sized),
) -> Result<Vec<CriticalPair>> {
    let lm = leads(b)?;
    let mut out = Vec::new();
    for i in 0..b.len() {
        for j in 0..b.len() {
            if lm[i].slot != lm[j].slot {
                continue;
            }
            let (wi, wj) = (b[i].width(), b[j].width());
            for m in wi.max(wj)..=wi + wj {
                for sigma in hom_iter(wi, m) {
                    for tau in hom_iter(wj, m) {
                        if i == j && sigma == tau {
                            continue;
                        }
                        if sigma.image_union_size(&tau) == m {
                            out.push(CriticalPair {
                                i,
                                j,
                                sigma: sigma.clone(),
                                tau,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Critical pairs between `lm_i` and `lm_j` whose pushed-forward leading
/// monomials share the local basis element (all others have zero
/// S-polynomial). With `i == j` only `σ < τ` is produced.
pub(crate) fn effective_pairs_between(
    i: usize,
    j: usize,
    lm_i: &ModuleMonomial,
    lm_j: &ModuleMonomial,
) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    if lm_i.slot != lm_j.slot {
        return out;
    }
    let (wi, wj) = (lm_i.width(), lm_j.width());
    let d = lm_i.pi.source_width();
    for m in wi.max(wj)..=wi + wj {
        for sigma in hom_iter(wi, m) {
            let fixed: Vec<(usize, usize)> = (1..=d)
                .map(|k| (lm_j.pi.apply(k), sigma.apply(lm_i.pi.apply(k))))
                .collect();
            for tau in hom_with_fixed(wj, m, &fixed) {
                if i == j && tau <= sigma {
                    continue;
                }
                if sigma.image_union_size(&tau) == m {
                    out.push(CriticalPair {
                        i,
                        j,
                        sigma: sigma.clone(),
                        tau,
                    });
                }
            }
        }
    }
    out
}

pub(crate) fn pair_s_polynomial<S: Field>(
    b: &[ModuleElement<S>],
    p: &CriticalPair,
    ord: &(impl MonomialOrder + ?Sized),
) -> ModuleElement<S> {
    let f = b[p.i].apply_unchecked(&p.sigma);
    let g = b[p.j].apply_unchecked(&p.tau);
    s_polynomial(&f, &g, ord).expect("nonzero, same width")
}

/// Priority used to pick the next pair: width, then lcm degree, then indices.
type PairKey = (usize, u32, usize, usize, OIMorphism, OIMorphism);

fn pair_key(p: &CriticalPair, lm: &[ModuleMonomial]) -> PairKey {
    let a = lm[p.i].apply(&p.sigma);
    let b = lm[p.j].apply(&p.tau);
    let deg = a.mono.lcm(&b.mono).degree();
    (p.width(), deg, p.i, p.j, p.sigma.clone(), p.tau.clone())
}

/// OI-Buchberger: extend `B` by monic remainders of S-polynomials until every
/// critical pair reduces to zero.
pub fn buchberger<S: Field>(
    b: &[ModuleElement<S>],
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<Vec<ModuleElement<S>>> {
    let mut g: Vec<ModuleElement<S>> = Vec::with_capacity(b.len());
    for (k, x) in b.iter().enumerate() {
        if x.is_zero() {
            warn!("dropping zero generator {}", k + 1);
        } else {
            g.push(x.clone());
        }
    }
    let mut lm = leads(&g)?;
    let mut queue: BTreeSet<PairKey> = BTreeSet::new();
    for i in 0..g.len() {
        for j in i..g.len() {
            for p in effective_pairs_between(i, j, &lm[i], &lm[j]) {
                queue.insert(pair_key(&p, &lm));
            }
        }
    }
    while let Some(key) = queue.pop_first() {
        let (_, _, i, j, sigma, tau) = key;
        let pair = CriticalPair { i, j, sigma, tau };
        let s = pair_s_polynomial(&g, &pair, ord);
        if s.is_zero() {
            continue;
        }
        let r = {
            let divs = Divisors::new(&g)?;
            divide_with(&s, &divs, ord, false).remainder
        };
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic();
        log::debug!("appending {} (from pair {i},{j} in width {})", r, r.width());
        let t = g.len();
        lm.push(r.leading_monomial().unwrap().clone());
        g.push(r);
        for k in 0..=t {
            for p in effective_pairs_between(k, t, &lm[k], &lm[t]) {
                queue.insert(pair_key(&p, &lm));
            }
        }
    }
    Ok(g)
}

/// `true` iff every critical pair of `B` has S-polynomial reducing to zero.
pub fn passes_criterion<S: Field>(
    b: &[ModuleElement<S>],
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<bool> {
    let lm = leads(b)?;
    let divs = Divisors::new(b)?;
    for i in 0..b.len() {
        for j in i..b.len() {
            for p in effective_pairs_between(i, j, &lm[i], &lm[j]) {
                let s = pair_s_polynomial(b, &p, ord);
                if !reduces_to_zero(&s, &divs, ord) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Indices of a minimal subset of `lms` generating the same monomial
/// OI-submodule: scan in increasing order, keep what no kept monomial
/// OI-divides. Returned in increasing index order.
pub(crate) fn minimal_lead_indices(
    lms: &[ModuleMonomial],
    ord: &(impl MonomialOrder + ?Sized),
) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..lms.len()).collect();
    idx.sort_by(|&a, &b| match ord.compare(&lms[a], &lms[b]) {
        Ordering::Equal => a.cmp(&b),
        o => o,
    });
    let mut kept: Vec<usize> = Vec::new();
    for k in idx {
        if !kept.iter().any(|&h| oi_divides(&lms[h], &lms[k]).is_some()) {
            kept.push(k);
        }
    }
    kept.sort_unstable();
    kept
}

/// Minimal Gröbner basis: drop elements whose leading monomial is
/// OI-divisible by another's; all elements made monic.
pub fn minimize<S: Field>(
    g: &[ModuleElement<S>],
    ord: &(impl MonomialOrder + ?Sized),
) -> Result<Vec<ModuleElement<S>>> {
    if !passes_criterion(g, ord)? {
        return Err(Error::NotGroebner);
    }
    Ok(minimize_unchecked(g, ord))
}

pub(crate) fn minimize_unchecked<S: Field>(
    g: &[ModuleElement<S>],
    ord: &(impl MonomialOrder + ?Sized),
) -> Vec<ModuleElement<S>> {
    let lms: Vec<ModuleMonomial> = g.iter().map(|x| x.leading_monomial().unwrap().clone()).collect();
    minimal_lead_indices(&lms, ord)
        .into_iter()
        .map(|k| g[k].make_monic())
        .collect()
}

/// `true` iff `Orb(B, m)` is a classical Gröbner basis of the `P_m`-module
/// it generates for every `m <= 2W`, checked with the classical oracle.
pub fn stabilization_check<S: Field>(b: &[ModuleElement<S>], _ord: &OILex) -> Result<bool> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if b.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroElement);
    }
    let w = b.iter().map(|x| x.width()).max().unwrap();
    for m in 0..=2 * w {
        let orb = orbit(b, m);
        if orb.is_empty() {
            continue;
        }
        let space = classical::ComponentSpace::from_elements(&orb);
        let vecs: Vec<_> = orb.iter().map(|f| space.vector(f)).collect();
        if !classical::classical_is_gb(&vecs, &space.oilex_order()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest width among the elements, reported alongside computed bases.
pub fn max_width<S: Field>(g: &[ModuleElement<S>]) -> usize {
    g.iter().map(|x| x.width()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::polynomial::Monomial;
    use crate::terms::Term;

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

    /// Generators of the minimal Gröbner basis example: c = 2,
    /// F = F^{OI,1} ⊕ F^{OI,1} ⊕ F^{OI,2}.
    fn example_generators() -> Vec<ModuleElement<Rational>> {
        vec![
            elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0)), (1, mm(1, &[(2, 1, 1)], &[1], 1))]),
            elem(
                2,
                vec![
                    (1, mm(2, &[(1, 2, 1), (1, 1, 1)], &[2], 1)),
                    (1, mm(2, &[(2, 2, 1), (2, 1, 1)], &[1, 2], 2)),
                ],
            ),
        ]
    }

    #[test]
    fn trivial_s_polynomials() {
        let f = example_generators()[1].clone();
        assert!(s_polynomial(&f, &f, &OILex).unwrap().is_zero());
        let a = elem(1, vec![(2, mm(1, &[(1, 1, 1)], &[1], 0))]);
        let b = elem(1, vec![(3, mm(1, &[(2, 1, 1)], &[1], 0))]);
        assert!(s_polynomial(&a, &b, &OILex).unwrap().is_zero());
        let c = elem(1, vec![(1, mm(1, &[(2, 1, 1)], &[1], 1))]);
        assert!(s_polynomial(&a, &c, &OILex).unwrap().is_zero());
        assert!(s_polynomial(&a, &ModuleElement::zero(1), &OILex).is_err());
        assert!(s_polynomial(&a, &f, &OILex).is_err());
    }

    #[test]
    fn critical_pair_counts_single_width_one_generator() {
        let b = vec![elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0))])];
        let pairs = critical_pairs(&b, &OILex).unwrap();
        assert!(pairs.iter().all(|p| p.width() == 2));
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].sigma.images(), vec![1]);
        assert_eq!(pairs[0].tau.images(), vec![2]);
    }

    #[test]
    fn slot_disjoint_leads_have_no_pairs() {
        let b = vec![
            elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0))]),
            elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 1))]),
        ];
        let pairs = critical_pairs(&b, &OILex).unwrap();
        assert!(pairs.iter().all(|p| p.i == p.j));
        let b = vec![elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 1))]), elem(0, vec![(1, mm(0, &[], &[], 0))])];
        assert!(critical_pairs(&b, &OILex)
            .unwrap()
            .iter()
            .all(|p| p.i == p.j));
    }

    #[test]
    fn example_pair_count_is_finite_and_stable() {
        let pairs = critical_pairs(&example_generators(), &OILex).unwrap();
        // b_1 with itself: 2 pairs in width 2; b_2 with itself: widths 2..4.
        let self1 = pairs.iter().filter(|p| p.i == 0 && p.j == 0).count();
        let self2 = pairs.iter().filter(|p| p.i == 1 && p.j == 1).count();
        assert_eq!(self1, 2);
        // |{(σ,τ) ∈ Hom(2,m)^2 : im σ ∪ im τ = [m]}| minus diagonal, m = 2,3,4
        let brute: usize = (2..=4)
            .map(|m| {
                let h: Vec<_> = hom_iter(2, m).collect();
                h.iter()
                    .flat_map(|s| h.iter().map(move |t| (s, t)))
                    .filter(|(s, t)| s != t && s.image_union_size(t) == m)
                    .count()
            })
            .sum();
        assert_eq!(self2, brute);
        assert_eq!(self2, 12);
        assert_eq!(pairs.len(), 14);
    }

    #[test]
    fn buchberger_on_example_appends_one_width_three_element() {
        let b = example_generators();
        assert!(!passes_criterion(&b, &OILex).unwrap());
        let g = buchberger(&b, &OILex).unwrap();
        assert!(passes_criterion(&g, &OILex).unwrap());
        let min = minimize(&g, &OILex).unwrap();
        assert_eq!(min.iter().map(|x| x.width()).collect::<Vec<_>>(), vec![1, 2, 3]);
        let expected = elem(
            3,
            vec![
                (1, mm(3, &[(2, 3, 1), (2, 2, 1), (1, 1, 1)], &[2, 3], 2)),
                (-1, mm(3, &[(2, 3, 1), (2, 1, 1), (1, 2, 1)], &[1, 3], 2)),
            ],
        );
        assert_eq!(min[2], expected);
        assert!(stabilization_check(&min, &OILex).unwrap());
        assert!(!stabilization_check(&b, &OILex).unwrap());
    }

    #[test]
    fn monomial_generators_are_already_groebner() {
        let b = vec![elem(2, vec![(1, mm(2, &[(1, 1, 1), (1, 2, 1)], &[], 0))])];
        assert!(passes_criterion(&b, &OILex).unwrap());
        assert_eq!(buchberger(&b, &OILex).unwrap(), b);
        assert!(stabilization_check(&b, &OILex).unwrap());
    }

    #[test]
    fn minimize_removes_orbit_elements() {
        let g = minimize(&buchberger(&example_generators(), &OILex).unwrap(), &OILex).unwrap();
        let eps = OIMorphism::new(3, &[1, 3]).unwrap();
        let mut padded = g.clone();
        padded.push(g[1].apply_morphism(&eps).unwrap());
        assert_eq!(minimize(&padded, &OILex).unwrap(), g);
        assert_eq!(minimize(&g, &OILex).unwrap(), g);
        assert_eq!(minimize(&example_generators(), &OILex), Err(Error::NotGroebner));
    }

    #[test]
    fn zero_generators_are_dropped() {
        let mut b = example_generators();
        b.insert(1, ModuleElement::zero(1));
        let g = buchberger(&b, &OILex).unwrap();
        assert_eq!(g[0], b[0]);
        assert_eq!(g[1], b[2]);
    }
}
