//! Width-tagged sparse polynomials in `P_n = K[x_{i,j} : i ∈ [c], j ∈ [n]]`
//! and the maps `ε_*` induced by OI-morphisms.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::oi_category::OIMorphism;
use crate::terms::{self, Term};

/// Variable `x_{row,col}` packed so that integer order is the variable order:
/// `x_{i',j'} < x_{i,j}` iff `i' < i`, or `i' = i` and `j' < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(u32);

impl Var {
    pub fn new(row: usize, col: usize) -> Var {
        debug_assert!(row >= 1 && col >= 1 && row <= u16::MAX as usize && col <= u16::MAX as usize);
        Var(((row as u32) << 16) | col as u32)
    }
    pub fn row(self) -> usize {
        (self.0 >> 16) as usize
    }
    pub fn col(self) -> usize {
        (self.0 & 0xffff) as usize
    }
    fn with_col(self, col: usize) -> Var {
        Var((self.0 & 0xffff_0000) | col as u32)
    }
}

type Exps = SmallVec<[(Var, u16); 6]>;

/// A monomial of `P_n`: a width and sparse positive exponents, stored with
/// the largest variable first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    width: u16,
    exps: Exps,
}

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial {
            width: width as u16,
            exps: SmallVec::new(),
        }
    }

    /// Build from `(row, col, exp)` triples; zero exponents are ignored and
    /// repeated variables accumulate.
    pub fn new(width: usize, exps: &[(usize, usize, u32)]) -> Result<Self> {
        let mut v: Vec<(Var, u32)> = Vec::with_capacity(exps.len());
        for &(row, col, e) in exps {
            if row == 0 || col == 0 || col > width || row > u16::MAX as usize {
                return Err(Error::InvalidMonomial(format!(
                    "variable x_{{{row},{col}}} is not in width {width}"
                )));
            }
            if e > 0 {
                v.push((Var::new(row, col), e));
            }
        }
        v.sort_by_key(|a| std::cmp::Reverse(a.0));
        let mut out: Exps = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e as u16,
                _ => out.push((var, e as u16)),
            }
        }
        Ok(Monomial {
            width: width as u16,
            exps: out,
        })
    }

    pub fn var(width: usize, row: usize, col: usize) -> Result<Self> {
        Monomial::new(width, &[(row, col, 1)])
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e as u32).sum()
    }

    /// `(row, col, exp)` triples, largest variable first.
    pub fn exponents(&self) -> Vec<(usize, usize, u32)> {
        self.exps
            .iter()
            .map(|&(v, e)| (v.row(), v.col(), e as u32))
            .collect()
    }

    pub fn exponent(&self, row: usize, col: usize) -> u32 {
        let v = Var::new(row, col);
        self.exps
            .iter()
            .find(|(w, _)| *w == v)
            .map_or(0, |&(_, e)| e as u32)
    }

    pub fn max_row(&self) -> usize {
        self.exps.iter().map(|(v, _)| v.row()).max().unwrap_or(0)
    }

    fn check_width(&self, other: &Monomial) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: other.width(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_width(other)?;
        Ok(self.mul(other))
    }

    /// Exponentwise sum; widths must agree.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.width, other.width);
        self.merge(other, |a, b| a + b)
    }

    pub fn try_lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_width(other)?;
        Ok(self.lcm(other))
    }

    /// Exponentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.width, other.width);
        self.merge(other, |a, b| a.max(b))
    }

    fn merge(&self, other: &Monomial, op: impl Fn(u16, u16) -> u16) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out: Exps = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push((a[i].0, op(a[i].1, 0)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, op(0, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, op(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().map(|&(v, e)| (v, op(e, 0))));
        out.extend(b[j..].iter().map(|&(v, e)| (v, op(0, e))));
        Monomial {
            width: self.width,
            exps: out,
        }
    }

    pub fn try_divide(&self, divisor: &Monomial) -> Result<Option<Monomial>> {
        self.check_width(divisor)?;
        Ok(self.divide(divisor))
    }

    /// `self / divisor` when `divisor` divides `self`.
    pub fn divide(&self, divisor: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.width, divisor.width);
        if !divisor.divides(self) {
            return None;
        }
        let mut out: Exps = SmallVec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let d = match divisor.exps.get(j) {
                Some(&(w, f)) if w == v => {
                    j += 1;
                    f
                }
                _ => 0,
            };
            if e > d {
                out.push((v, e - d));
            }
        }
        Some(Monomial {
            width: self.width,
            exps: out,
        })
    }

    /// Exponentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.exps.len() > other.exps.len() {
            return false;
        }
        let mut j = 0;
        for &(v, e) in &self.exps {
            loop {
                match other.exps.get(j) {
                    None => return false,
                    Some(&(w, f)) => {
                        if w > v {
                            j += 1;
                            continue;
                        }
                        if w < v || f < e {
                            return false;
                        }
                        j += 1;
                        break;
                    }
                }
            }
        }
        true
    }

    /// Lexicographic comparison with `x_{c,n}` the largest variable.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => continue,
                    o => return o,
                },
                o => return o,
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }

    /// `ε_*`: relabel column `j` to `ε(j)`.
    pub fn induced(&self, eps: &OIMorphism) -> Monomial {
        debug_assert_eq!(eps.source_width(), self.width());
        let imgs = eps.raw_images();
        Monomial {
            width: eps.target_width() as u16,
            exps: self
                .exps
                .iter()
                .map(|&(v, e)| (v.with_col(imgs[v.col() - 1] as usize), e))
                .collect(),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.width)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for &(v, e) in &self.exps {
            write!(f, "x_{{{},{}}}", v.row(), v.col())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub type PolyTerm<S> = Term<S, Monomial>;

/// An element of `P_n`, terms sorted descending in lex order.
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    width: usize,
    terms: Vec<PolyTerm<S>>,
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.lex_cmp(b)
}

impl<S: Field> Polynomial<S> {
    pub fn zero(width: usize) -> Self {
        Polynomial {
            width,
            terms: Vec::new(),
        }
    }

    pub fn constant(width: usize, c: S) -> Self {
        Polynomial::from_terms(width, vec![Term::new(c, Monomial::one(width))]).unwrap()
    }

    pub fn one(width: usize) -> Self {
        Polynomial::constant(width, S::one())
    }

    pub fn monomial(c: S, mono: Monomial) -> Self {
        let width = mono.width();
        Polynomial::from_terms(width, vec![Term::new(c, mono)]).unwrap()
    }

    pub fn from_terms(width: usize, terms: Vec<PolyTerm<S>>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.mono.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                found: t.mono.width(),
            });
        }
        Ok(Polynomial {
            width,
            terms: terms::normalize(terms, lex),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[PolyTerm<S>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<PolyTerm<S>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&PolyTerm<S>> {
        self.terms.first()
    }

    /// Nonzero constant polynomials, i.e. units of `P_n`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
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

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_scaled(other, &S::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_scaled(other, &-S::one()))
    }

    pub(crate) fn add_scaled(&self, other: &Self, scale: &S) -> Self {
        Polynomial {
            width: self.width,
            terms: terms::add_scaled(&self.terms, other.terms.iter().cloned(), scale, lex),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.width);
        }
        Polynomial {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(c.clone() * t.coeff.clone(), t.mono.clone()))
                .collect(),
        }
    }

    /// `c * mono * self`; sortedness is preserved because lex is a monomial order.
    pub fn mul_term(&self, c: &S, mono: &Monomial) -> Self {
        debug_assert_eq!(mono.width(), self.width);
        if c.is_zero() {
            return Polynomial::zero(self.width);
        }
        Polynomial {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(c.clone() * t.coeff.clone(), t.mono.mul(mono)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc = Polynomial::zero(self.width);
        for t in &other.terms {
            let part = self.mul_term(&t.coeff, &t.mono);
            acc = acc.add_scaled(&part, &S::one());
        }
        Ok(acc)
    }

    /// `ε_*(self)`: a ring homomorphism `P_m -> P_n`.
    pub fn induced_map(&self, eps: &OIMorphism) -> Result<Self> {
        if eps.source_width() != self.width {
            return Err(Error::WidthMismatch {
                expected: eps.source_width(),
                found: self.width,
            });
        }
        Ok(Polynomial {
            width: eps.target_width(),
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), t.mono.induced(eps)))
                .collect(),
        })
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| t.mono.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

impl<S: Field> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ∈ P_{}", self.width)
    }
}

impl<S: Field> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            write_signed_term(f, k == 0, &t.coeff, &t.mono.to_string(), t.mono.is_one())?;
        }
        Ok(())
    }
}

/// Shared term printer: `+ 3/2 x_{1,1}`, `- x_{2,1}`, `+ 5`.
pub(crate) fn write_signed_term<S: Field>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &S,
    body: &str,
    body_is_one: bool,
) -> fmt::Result {
    let text = coeff.to_string();
    let (negative, magnitude) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if body_is_one {
        write!(f, "{magnitude}")
    } else if magnitude == "1" {
        write!(f, "{body}")
    } else {
        write!(f, "{magnitude} {body}")
    }
}
