//! Free resolutions by iterated Schreyer steps, pruning to a graded minimal
//! resolution, and restriction to a single width.

use std::sync::Arc;

use rayon::prelude::*;

use crate::classical::{self, CVector, ComponentSpace};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{FreeOIModule, ModuleElement};
use crate::groebner::{buchberger, minimize_unchecked};
use crate::order::{MonomialOrder, OILex};
use crate::syzygy::{minimal_syzygy_generators_unchecked, SyzygyPresentation};

/// A map of free OI-modules given by the images of the source basis
/// elements `f_i = e_{id,i}`, the `i`-th of width `d_i(source)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OIMorphismMatrix<S: Field> {
    pub source: FreeOIModule,
    pub target: FreeOIModule,
    pub images: Vec<ModuleElement<S>>,
}

impl<S: Field> OIMorphismMatrix<S> {
    pub fn new(source: FreeOIModule, target: FreeOIModule, images: Vec<ModuleElement<S>>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::ParentMismatch(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (i, f) in images.iter().enumerate() {
            if f.width() != source.basis_width(i) {
                return Err(Error::WidthMismatch {
                    expected: source.basis_width(i),
                    found: f.width(),
                });
            }
            target.validate(f)?;
        }
        Ok(OIMorphismMatrix { source, target, images })
    }

    /// The first `(i, j, λ)` such that the coefficient of `φ(f_i)` on
    /// `e_{id,j}` is the nonzero constant `λ`.
    pub fn find_unit(&self) -> Option<(usize, usize, S)> {
        self.images.iter().enumerate().find_map(|(i, f)| {
            let mut best: Option<(usize, S)> = None;
            for ((slot, pi), a) in f.coefficients_by_basis() {
                if pi.is_identity() && a.is_unit() && best.as_ref().is_none_or(|b| slot < b.0) {
                    best = Some((slot, a.terms()[0].coeff.clone()));
                }
            }
            best.map(|(j, l)| (i, j, l))
        })
    }

    /// `true` iff no image has a unit coefficient on an `e_{id,j}`.
    pub fn is_minimal_morphism(&self) -> bool {
        self.find_unit().is_none()
    }

    /// `true` iff every image is homogeneous of the degree of its source
    /// basis element.
    pub fn is_graded(&self) -> bool {
        self.images.iter().enumerate().all(|(i, f)| {
            f.is_homogeneous(&self.target)
                && f.degree(&self.target).is_none_or(|d| d == self.source.shift(i))
        })
    }
}

/// `is_minimal_morphism(φ)`.
pub fn is_minimal_morphism<S: Field>(phi: &OIMorphismMatrix<S>) -> bool {
    phi.is_minimal_morphism()
}

/// `⋯ → F^1 → F^0 → F`, with `maps[k] = φ_k : F^k → F^{k-1}` and
/// `F^{-1}` the ambient module. Images are kept sorted under [`OILex`].
#[derive(Debug, Clone, PartialEq)]
pub struct FreeResolution<S: Field> {
    pub ambient: FreeOIModule,
    pub target_generators: Vec<ModuleElement<S>>,
    pub maps: Vec<OIMorphismMatrix<S>>,
    pub graded: bool,
}

/// Compute `φ_0, ..., φ_p`. `B_0` is a minimal Gröbner basis of `⟨B⟩` and
/// each `B_k` a Gröbner basis of `Syz(B_{k-1})` under the Schreyer order.
/// With `minimize` (graded input only) one more step is computed, the whole
/// sequence is pruned and then cut back to `p` maps.
pub fn resolve<S: Field>(
    b: &[ModuleElement<S>],
    ambient: &FreeOIModule,
    p: usize,
    ord: Arc<dyn MonomialOrder>,
    minimize: bool,
) -> Result<FreeResolution<S>> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    for f in b {
        ambient.validate(f)?;
    }
    let graded = b.iter().all(|f| f.is_homogeneous(ambient));
    if minimize && !graded {
        return Err(Error::NotGraded);
    }
    let g = buchberger(b, &ord)?;
    let b0 = minimize_unchecked(&g, &ord);
    let raw_steps = if minimize { p + 1 } else { p };

    let mut maps: Vec<OIMorphismMatrix<S>> = Vec::with_capacity(raw_steps + 1);
    let pres = SyzygyPresentation::new(b0.clone(), ambient, graded)?;
    maps.push(OIMorphismMatrix {
        source: pres.source.clone(),
        target: ambient.clone(),
        images: b0.clone(),
    });
    let mut current = b0;
    let mut current_ord: Arc<dyn MonomialOrder> = ord;
    let mut current_module = pres.source;
    for k in 1..=raw_steps {
        let (sch, next) = if current.is_empty() {
            (None, Vec::new())
        } else {
            let (sch, next) = minimal_syzygy_generators_unchecked(&current, current_ord.clone());
            (Some(sch), next)
        };
        log::info!("step {k}: {} syzygy generators", next.len());
        let pres = SyzygyPresentation::new(next.clone(), &current_module, graded)?;
        maps.push(OIMorphismMatrix {
            source: pres.source.clone(),
            target: current_module.clone(),
            images: next.clone(),
        });
        if let Some(sch) = sch {
            current_ord = Arc::new(sch);
        }
        current = next;
        current_module = pres.source;
    }
    for m in &mut maps {
        m.images = m.images.iter().map(|f| f.reorder(&OILex)).collect();
    }
    let mut res = FreeResolution {
        ambient: ambient.clone(),
        target_generators: b.to_vec(),
        maps,
        graded,
    };
    if minimize {
        res.prune_in_place()?;
        res.maps.truncate(p + 1);
    }
    Ok(res)
}

/// `prune(res)`: the graded minimal resolution obtained by removing trivial
/// summands `f_i ↦ λ g_j + R`.
pub fn prune<S: Field>(res: &FreeResolution<S>) -> Result<FreeResolution<S>> {
    let mut out = res.clone();
    out.prune_in_place()?;
    Ok(out)
}

impl<S: Field> FreeResolution<S> {
    /// Homological length `p`.
    pub fn length(&self) -> usize {
        self.maps.len() - 1
    }

    /// `F^k` for `k = 0..=p`.
    pub fn module(&self, k: usize) -> &FreeOIModule {
        &self.maps[k].source
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(|m| m.source.rank()).collect()
    }

    pub fn gen_widths(&self) -> Vec<Vec<usize>> {
        self.maps
            .iter()
            .map(|m| m.source.basis().iter().map(|b| b.width).collect())
            .collect()
    }

    pub fn gen_degrees(&self) -> Vec<Vec<i64>> {
        self.maps
            .iter()
            .map(|m| m.source.basis().iter().map(|b| b.shift).collect())
            .collect()
    }

    /// Every `φ_k` with `k >= 1` is minimal (`φ_0` maps into the ambient
    /// module and is not a differential of the resolution).
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().skip(1).all(|m| m.is_minimal_morphism())
    }

    pub(crate) fn prune_in_place(&mut self) -> Result<()> {
        if !self.graded {
            return Err(Error::NotGraded);
        }
        loop {
            let mut changed = false;
            for k in (1..self.maps.len()).rev() {
                while let Some((i, j, lambda)) = self.maps[k].find_unit() {
                    self.eliminate(k, i, j, &lambda);
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Remove `f_i` from `F^k` and `g_j` from `F^{k-1}`, where
    /// `φ_k(f_i) = λ g_j + R`.
    fn eliminate(&mut self, k: usize, i: usize, j: usize, lambda: &S) {
        log::debug!("pruning f_{} of F^{} against g_{}", i + 1, k, j + 1);
        let ord = &OILex;
        let fi = &self.maps[k].images[i];
        let r = ModuleElement::from_sorted(
            fi.width(),
            fi.terms()
                .iter()
                .filter(|t| !(t.mono.slot == j && t.mono.pi.is_identity()))
                .cloned()
                .collect(),
        );
        let scale = -lambda.inv();
        let down = |skip: usize| move |s: usize| if s == skip { None } else if s > skip { Some(s - 1) } else { Some(s) };

        // φ_k: substitute g_j = λ^{-1}(φ_k(f_i) - R) and drop the f_i image
        let old = std::mem::take(&mut self.maps[k].images);
        let new_images: Vec<ModuleElement<S>> = old
            .into_par_iter()
            .enumerate()
            .filter(|(l, _)| *l != i)
            .map(|(_, f)| {
                let mut acc = ModuleElement::zero(f.width());
                let mut rest = Vec::new();
                for t in f.terms() {
                    if t.mono.slot == j {
                        let pushed = r.apply_unchecked(&t.mono.pi);
                        acc = acc.add_term_multiple(&pushed, &(scale.clone() * t.coeff.clone()), &t.mono.mono, ord);
                    } else {
                        rest.push(t.clone());
                    }
                }
                let rest = ModuleElement::from_sorted(f.width(), rest);
                rest.add(&acc, ord).expect("same width").remap_slots(down(j), ord)
            })
            .collect();
        self.maps[k].images = new_images;
        self.maps[k].source = self.maps[k].source.remove_basis(i);
        self.maps[k].target = self.maps[k].target.remove_basis(j);

        // φ_{k-1}: g_j disappears
        self.maps[k - 1].images.remove(j);
        self.maps[k - 1].source = self.maps[k - 1].source.remove_basis(j);

        // φ_{k+1}: drop the f_i coordinates
        if k + 1 < self.maps.len() {
            let m = &mut self.maps[k + 1];
            m.images = m.images.par_iter().map(|f| f.remap_slots(down(i), ord)).collect();
            m.target = m.target.remove_basis(i);
        }
    }

    /// The complex at width `n`.
    pub fn restrict_to_width(&self, n: usize) -> RestrictedComplex<S> {
        restrict_to_width(self, n)
    }

    /// `φ_k ∘ φ_{k+1} = 0` at width `n`, entrywise.
    pub fn verify_complex(&self, n: usize) -> std::result::Result<(), String> {
        self.restrict_to_width(n).verify_complex()
    }

    /// `ker φ_k = im φ_{k+1}` at width `n` for `k = 0..p-1`, and every
    /// `φ_k ∘ φ_{k+1} = 0`.
    pub fn verify_exactness(&self, n: usize) -> std::result::Result<(), String> {
        let rc = self.restrict_to_width(n);
        rc.verify_complex()?;
        rc.verify_exactness()
    }
}

/// A resolution restricted to width `n`: free `P_n`-modules indexed by local
/// basis elements and the differentials as lists of column vectors.
#[derive(Debug, Clone)]
pub struct RestrictedComplex<S: Field> {
    pub width: usize,
    /// `spaces[0]` is the ambient module, `spaces[k+1]` is `F^k_n`.
    pub spaces: Vec<ComponentSpace>,
    /// `columns[k]`: images of the basis of `F^k_n` in `spaces[k]`.
    pub columns: Vec<Vec<CVector<S>>>,
}

/// `restrict_to_width(res, n)`.
pub fn restrict_to_width<S: Field>(res: &FreeResolution<S>, n: usize) -> RestrictedComplex<S> {
    let mut spaces = vec![ComponentSpace::from_module(&res.ambient, n)];
    let mut columns = Vec::with_capacity(res.maps.len());
    for m in &res.maps {
        let src = ComponentSpace::from_module(&m.source, n);
        let tgt = spaces.last().unwrap();
        let cols = src
            .components()
            .par_iter()
            .map(|(slot, pi)| tgt.vector(&m.images[*slot].apply_unchecked(pi)))
            .collect();
        columns.push(cols);
        spaces.push(src);
    }
    RestrictedComplex { width: n, spaces, columns }
}

impl<S: Field> RestrictedComplex<S> {
    pub fn ranks(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.rank()).collect()
    }

    fn ord(&self, k: usize) -> classical::ClassicalOrder {
        self.spaces[k].oilex_order()
    }

    pub fn verify_complex(&self) -> std::result::Result<(), String> {
        for k in 0..self.columns.len().saturating_sub(1) {
            let ord = self.ord(k);
            let bad = self.columns[k + 1]
                .par_iter()
                .position_first(|v| !classical::apply_matrix(v, &self.columns[k], &ord).is_zero());
            if let Some(c) = bad {
                return Err(format!(
                    "width {}: φ_{} ∘ φ_{} is nonzero on column {}",
                    self.width,
                    k,
                    k + 1,
                    c + 1
                ));
            }
        }
        Ok(())
    }

    /// `ker φ_k ⊆ im φ_{k+1}` for every `k` with a following map; the
    /// reverse inclusion is [`Self::verify_complex`].
    pub fn verify_exactness(&self) -> std::result::Result<(), String> {
        let n = self.width;
        for k in 0..self.columns.len().saturating_sub(1) {
            let kernel = classical::classical_syzygies(&self.columns[k], self.spaces[k].rank(), n);
            let ord = self.ord(k + 1);
            let missing = classical::first_non_member(&kernel, &self.columns[k + 1], &ord);
            if let Some(c) = missing {
                return Err(format!(
                    "width {n}: kernel generator {} of φ_{k} is not in the image of φ_{}",
                    c + 1,
                    k + 1
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::free_module::{BasisSpec, ModuleMonomial};
    use crate::oi_category::OIMorphism;
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

    fn oilex() -> Arc<dyn MonomialOrder> {
        Arc::new(OILex)
    }

    /// F = F^{OI,1} ⊕ F^{OI,1}, c = 2, generator in width 2.
    fn small_example() -> (FreeOIModule, Vec<ModuleElement<Rational>>) {
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

    #[test]
    fn zero_steps_is_the_gb_map() {
        let (f, b) = small_example();
        let res = resolve(&b, &f, 0, oilex(), false).unwrap();
        assert_eq!(res.length(), 0);
        assert!(res.graded);
        assert_eq!(res.maps[0].images.len(), res.ranks()[0]);
    }

    #[test]
    fn unit_detection() {
        let target = FreeOIModule::with_widths(1, &[1, 2]);
        let source = FreeOIModule::new(1, vec![BasisSpec { width: 2, shift: 0 }]);
        let img = elem(
            2,
            vec![(3, mm(2, &[], &[1, 2], 1)), (1, mm(2, &[(1, 1, 1)], &[2], 0))],
        );
        let m = OIMorphismMatrix::new(source.clone(), target.clone(), vec![img]).unwrap();
        assert!(!m.is_minimal_morphism());
        assert_eq!(m.find_unit().unwrap().1, 1);
        let img = elem(2, vec![(1, mm(2, &[(1, 1, 1)], &[1, 2], 1))]);
        let m = OIMorphismMatrix::new(source, target, vec![img]).unwrap();
        assert!(m.is_minimal_morphism());
    }

    #[test]
    fn padded_trivial_summand_is_pruned() {
        // F^0 = P e_1 ⊕ P e_2 → F, e_1 ↦ x_{1,1} e, e_2 ↦ x_{1,1} e as well;
        // F^1 has f ↦ e_1 - e_2 whose coefficient on e_{id,1} is a unit.
        let ambient = FreeOIModule::new(1, vec![BasisSpec { width: 1, shift: 0 }]);
        let x = elem(1, vec![(1, mm(1, &[(1, 1, 1)], &[1], 0))]);
        let f0 = FreeOIModule::new(1, vec![BasisSpec { width: 1, shift: 1 }, BasisSpec { width: 1, shift: 1 }]);
        let f1 = FreeOIModule::new(1, vec![BasisSpec { width: 1, shift: 1 }]);
        let diff = elem(1, vec![(1, mm(1, &[], &[1], 0)), (-1, mm(1, &[], &[1], 1))]);
        let mut res = FreeResolution {
            ambient: ambient.clone(),
            target_generators: vec![x.clone()],
            maps: vec![
                OIMorphismMatrix::new(f0.clone(), ambient, vec![x.clone(), x.clone()]).unwrap(),
                OIMorphismMatrix::new(f1, f0, vec![diff]).unwrap(),
            ],
            graded: true,
        };
        res.verify_exactness(2).unwrap();
        res.prune_in_place().unwrap();
        assert_eq!(res.ranks(), vec![1, 0]);
        assert_eq!(res.maps[0].images, vec![x]);
        res.verify_exactness(2).unwrap();
    }

    #[test]
    fn small_example_minimal_ranks_low_degree() {
        let (f, b) = small_example();
        let res = resolve(&b, &f, 2, oilex(), true).unwrap();
        assert!(res.is_minimal());
        assert_eq!(res.ranks(), vec![1, 1, 2]);
        assert_eq!(res.gen_widths(), vec![vec![2], vec![4], vec![5, 5]]);
        for n in 0..=4 {
            res.verify_exactness(n).unwrap();
        }
    }

    #[test]
    fn non_graded_minimize_rejected() {
        let f = FreeOIModule::with_widths(1, &[1]);
        let b = vec![elem(1, vec![(1, mm(1, &[(1, 1, 2)], &[1], 0)), (1, mm(1, &[(1, 1, 1)], &[1], 0))])];
        assert_eq!(resolve(&b, &f, 1, oilex(), true).unwrap_err(), Error::NotGraded);
        assert!(resolve(&b, &f, 1, oilex(), false).is_ok());
    }

    #[test]
    fn restriction_below_generator_widths_is_zero() {
        let (f, b) = small_example();
        let res = resolve(&b, &f, 1, oilex(), false).unwrap();
        let rc = res.restrict_to_width(1);
        assert_eq!(rc.ranks()[1..], vec![0, 0][..]);
    }
}
