//! Sorted sparse term lists shared by polynomials and module elements.

use std::cmp::Ordering;

use crate::field::Field;

/// A coefficient together with a monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<S, M> {
    pub coeff: S,
    pub mono: M,
}

impl<S, M> Term<S, M> {
    pub fn new(coeff: S, mono: M) -> Self {
        Term { coeff, mono }
    }
}

/// Sort descending, combine equal monomials and drop zero coefficients.
pub(crate) fn normalize<S: Field, M>(
    mut terms: Vec<Term<S, M>>,
    cmp: impl Fn(&M, &M) -> Ordering,
) -> Vec<Term<S, M>> {
    terms.sort_by(|a, b| cmp(&b.mono, &a.mono));
    let mut out: Vec<Term<S, M>> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if cmp(&last.mono, &t.mono) == Ordering::Equal => {
                last.coeff = last.coeff.clone() + t.coeff;
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

/// `a + scale * b` for two descending term lists.
pub(crate) fn add_scaled<S: Field, M: Clone>(
    a: &[Term<S, M>],
    b: impl IntoIterator<Item = Term<S, M>>,
    scale: &S,
    cmp: impl Fn(&M, &M) -> Ordering,
) -> Vec<Term<S, M>> {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut ia = a.iter().peekable();
    for tb in b {
        let cb = scale.clone() * tb.coeff;
        loop {
            match ia.peek() {
                Some(ta) => match cmp(&ta.mono, &tb.mono) {
                    Ordering::Greater => {
                        out.push((*ta).clone());
                        ia.next();
                    }
                    Ordering::Equal => {
                        let c = ta.coeff.clone() + cb.clone();
                        if !c.is_zero() {
                            out.push(Term::new(c, tb.mono.clone()));
                        }
                        ia.next();
                        break;
                    }
                    Ordering::Less => {
                        if !cb.is_zero() {
                            out.push(Term::new(cb.clone(), tb.mono.clone()));
                        }
                        break;
                    }
                },
                None => {
                    if !cb.is_zero() {
                        out.push(Term::new(cb.clone(), tb.mono.clone()));
                    }
                    break;
                }
            }
        }
    }
    out.extend(ia.cloned());
    out
}

pub(crate) fn is_sorted_desc<S, M>(terms: &[Term<S, M>], cmp: impl Fn(&M, &M) -> Ordering) -> bool {
    terms
        .windows(2)
        .all(|w| cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
}
