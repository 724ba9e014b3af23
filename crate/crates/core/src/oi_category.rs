//! Objects `[n]` and morphisms of the category OI: finite totally ordered
//! sets with order-preserving injections between them.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Images = SmallVec<[u16; 12]>;

/// A strictly increasing map `[m] -> [n]`, stored by its 1-based images.
///
/// The derived `Ord` compares `(n, images)` lexicographically, which is the
/// order the OI lex order uses on local basis elements of one slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OIMorphism {
    target: u16,
    images: Images,
}

impl OIMorphism {
    pub fn new(target: usize, images: &[usize]) -> Result<Self> {
        if target > u16::MAX as usize {
            return Err(Error::InvalidMorphism(format!("target width {target} too large")));
        }
        if images.len() > target {
            return Err(Error::InvalidMorphism(format!(
                "source width {} exceeds target width {target}",
                images.len()
            )));
        }
        let mut prev = 0;
        for &v in images {
            if v <= prev || v > target {
                return Err(Error::InvalidMorphism(format!(
                    "images {images:?} are not strictly increasing within [1, {target}]"
                )));
            }
            prev = v;
        }
        Ok(OIMorphism {
            target: target as u16,
            images: images.iter().map(|&v| v as u16).collect(),
        })
    }

    pub(crate) fn from_raw(target: u16, images: Images) -> Self {
        debug_assert!(images.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(images.last().is_none_or(|&v| v <= target && v >= 1));
        OIMorphism { target, images }
    }

    pub fn identity(n: usize) -> Self {
        OIMorphism {
            target: n as u16,
            images: (1..=n as u16).collect(),
        }
    }

    pub fn source_width(&self) -> usize {
        self.images.len()
    }

    pub fn target_width(&self) -> usize {
        self.target as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw_images(&self) -> &[u16] {
        &self.images
    }

    /// Image of the 1-based point `j`.
    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.len() == self.target as usize
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OIMorphism) -> Result<OIMorphism> {
        if inner.target_width() != self.source_width() {
            return Err(Error::WidthMismatch {
                expected: self.source_width(),
                found: inner.target_width(),
            });
        }
        Ok(self.compose_unchecked(inner))
    }

    pub(crate) fn compose_unchecked(&self, inner: &OIMorphism) -> OIMorphism {
        debug_assert_eq!(inner.target_width(), self.source_width());
        OIMorphism {
            target: self.target,
            images: inner
                .images
                .iter()
                .map(|&j| self.images[j as usize - 1])
                .collect(),
        }
    }

    /// Union of the images of two maps into the same width.
    pub fn image_union_size(&self, other: &OIMorphism) -> usize {
        let (a, b) = (&self.images, &other.images);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() || j < b.len() {
            count += 1;
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => i += 1,
                (Some(_), None) => i += 1,
                _ => j += 1,
            }
        }
        count
    }
}

impl fmt::Debug for OIMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:[{}]->[{}]", self.images.as_slice(), self.images.len(), self.target)
    }
}

impl fmt::Display for OIMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Iterator over `Hom(m, n)` in lexicographic order of image tuples.
#[derive(Debug, Clone)]
pub struct HomIter {
    target: u16,
    current: Option<Images>,
}

impl Iterator for HomIter {
    type Item = OIMorphism;

    fn next(&mut self) -> Option<OIMorphism> {
        let cur = self.current.take()?;
        let out = OIMorphism::from_raw(self.target, cur.clone());
        // advance to the lexicographic successor
        let m = cur.len();
        let n = self.target as usize;
        let mut next = cur;
        let mut k = m;
        while k > 0 {
            let limit = (n - (m - k)) as u16;
            if next[k - 1] < limit {
                next[k - 1] += 1;
                for t in k..m {
                    next[t] = next[t - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
            k -= 1;
        }
        Some(out)
    }
}

/// All strictly increasing maps `[m] -> [n]`, lexicographic on images.
pub fn hom_iter(m: usize, n: usize) -> HomIter {
    let current = (m <= n).then(|| (1..=m as u16).collect());
    HomIter {
        target: n as u16,
        current,
    }
}

pub fn enumerate_hom(m: usize, n: usize) -> Vec<OIMorphism> {
    hom_iter(m, n).collect()
}

/// Maps `[m] -> [n]` that send each `(pos, value)` in `fixed` (1-based
/// positions) to the given value, in lexicographic order.
pub(crate) fn hom_with_fixed(m: usize, n: usize, fixed: &[(usize, usize)]) -> Vec<OIMorphism> {
    let mut forced: Vec<Option<u16>> = vec![None; m];
    for &(pos, val) in fixed {
        match forced[pos - 1] {
            Some(v) if v as usize != val => return Vec::new(),
            _ => forced[pos - 1] = Some(val as u16),
        }
    }
    let mut out = Vec::new();
    let mut buf: Images = SmallVec::with_capacity(m);
    fill_fixed(&forced, 0, 1, n as u16, &mut buf, &mut out);
    out
}

fn fill_fixed(
    forced: &[Option<u16>],
    pos: usize,
    lower: u16,
    n: u16,
    buf: &mut Images,
    out: &mut Vec<OIMorphism>,
) {
    let m = forced.len();
    if pos == m {
        out.push(OIMorphism::from_raw(n, buf.clone()));
        return;
    }
    let remaining = (m - pos - 1) as u16;
    if lower + remaining > n {
        return;
    }
    let upper = n - remaining;
    let candidates = match forced[pos] {
        Some(v) if v >= lower && v <= upper => v..=v,
        Some(_) => return,
        None => lower..=upper,
    };
    for v in candidates {
        buf.push(v);
        fill_fixed(forced, pos + 1, v + 1, n, buf, out);
        buf.pop();
    }
}

/// Output of [`factorize`]: `sigma = rho ∘ sigma_bar`, `tau = rho ∘ tau_bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sigma_bar: OIMorphism,
    pub tau_bar: OIMorphism,
    pub rho: OIMorphism,
}

/// Factor two maps with a common target through the union of their images.
pub fn factorize(sigma: &OIMorphism, tau: &OIMorphism) -> Result<Factorization> {
    if sigma.target != tau.target {
        return Err(Error::WidthMismatch {
            expected: sigma.target_width(),
            found: tau.target_width(),
        });
    }
    let mut union: Images = sigma.images.iter().chain(tau.images.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();
    let ell = union.len() as u16;
    // gamma(v) = |L ∩ [v]| is the position of v in the sorted union
    let gamma = |v: u16| union.binary_search(&v).unwrap() as u16 + 1;
    Ok(Factorization {
        sigma_bar: OIMorphism::from_raw(ell, sigma.images.iter().map(|&v| gamma(v)).collect()),
        tau_bar: OIMorphism::from_raw(ell, tau.images.iter().map(|&v| gamma(v)).collect()),
        rho: OIMorphism::from_raw(sigma.target, union),
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mor(n: usize, im: &[usize]) -> OIMorphism {
        OIMorphism::new(n, im).unwrap()
    }

    #[test]
    fn identity_morphisms() {
        let id0 = OIMorphism::identity(0);
        assert_eq!(id0.source_width(), 0);
        assert_eq!(id0.target_width(), 0);
        assert!(id0.images().is_empty());
        assert_eq!(OIMorphism::identity(2).images(), vec![1, 2]);
        for f in enumerate_hom(2, 3) {
            assert_eq!(OIMorphism::identity(3).compose(&f).unwrap(), f);
            assert_eq!(f.compose(&OIMorphism::identity(2)).unwrap(), f);
        }
    }

    #[test]
    fn construction_rejects_bad_images() {
        assert!(OIMorphism::new(3, &[2, 2]).is_err());
        assert!(OIMorphism::new(3, &[3, 1]).is_err());
        assert!(OIMorphism::new(3, &[4]).is_err());
        assert!(OIMorphism::new(1, &[1, 2]).is_err());
        assert!(OIMorphism::new(4, &[]).is_ok());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(mor(3, &[2, 3]).compose(&mor(2, &[1])).unwrap(), mor(3, &[2]));
        assert_eq!(mor(3, &[2, 3]).compose(&mor(2, &[2])).unwrap(), mor(3, &[3]));
        assert!(matches!(
            mor(3, &[2, 3]).compose(&mor(3, &[1])),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn hom_enumeration() {
        let h = enumerate_hom(1, 3);
        assert_eq!(h.iter().map(|f| f.images()).collect::<Vec<_>>(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(enumerate_hom(2, 4).len(), 6);
        assert!(enumerate_hom(3, 2).is_empty());
        assert_eq!(enumerate_hom(0, 3).len(), 1);
        for n in 0..7 {
            for m in 0..=n + 1 {
                let h = enumerate_hom(m, n);
                assert_eq!(h.len(), binomial(n, m));
                assert!(h.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn fixed_enumeration_matches_filter() {
        for n in 0..6 {
            for m in 0..=n {
                for pos in 1..=m {
                    for val in 1..=n {
                        let got = hom_with_fixed(m, n, &[(pos, val)]);
                        let want: Vec<_> = enumerate_hom(m, n)
                            .into_iter()
                            .filter(|f| f.apply(pos) == val)
                            .collect();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let f = factorize(&mor(3, &[2]), &mor(3, &[1, 3])).unwrap();
        assert_eq!(f.rho, OIMorphism::identity(3));
        assert_eq!(f.sigma_bar, mor(3, &[2]));
        assert_eq!(f.tau_bar, mor(3, &[1, 3]));

        let f = factorize(&mor(4, &[3]), &mor(4, &[3])).unwrap();
        assert_eq!(f.sigma_bar, OIMorphism::identity(1));
        assert_eq!(f.tau_bar, OIMorphism::identity(1));
        assert_eq!(f.rho, mor(4, &[3]));

        let f = factorize(&mor(4, &[2]), &mor(4, &[2, 4])).unwrap();
        assert_eq!(f.sigma_bar, mor(2, &[1]));
        assert_eq!(f.tau_bar, mor(2, &[1, 2]));
        assert_eq!(f.rho, mor(4, &[2, 4]));

        assert!(factorize(&mor(4, &[2]), &mor(3, &[2])).is_err());
    }

    #[test]
    fn factorization_laws_exhaustive() {
        for m in 0..=5 {
            for k1 in 0..=m {
                for k2 in 0..=m {
                    for s in enumerate_hom(k1, m) {
                        for t in enumerate_hom(k2, m) {
                            let f = factorize(&s, &t).unwrap();
                            assert_eq!(f.rho.compose(&f.sigma_bar).unwrap(), s);
                            assert_eq!(f.rho.compose(&f.tau_bar).unwrap(), t);
                            let ell = f.rho.source_width();
                            assert_eq!(f.sigma_bar.target_width(), ell);
                            assert_eq!(f.sigma_bar.image_union_size(&f.tau_bar), ell);
                            assert_eq!(s.image_union_size(&t), ell);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_is_associative() {
        for a in 0..=5usize {
            for b in a..=5 {
                for c in b..=5 {
                    for d in c..=5 {
                        for f in enumerate_hom(a, b) {
                            for g in enumerate_hom(b, c) {
                                let gf = g.compose(&f).unwrap();
                                for h in enumerate_hom(c, d) {
                                    assert_eq!(
                                        h.compose(&gf).unwrap(),
                                        h.compose(&g).unwrap().compose(&f).unwrap()
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
