//! Bounded cochain complexes of right modules with degree `+1`
//! differentials, projective complexes over an algebra, minimal projective
//! resolutions, truncations, duality and derived tensor and Hom against
//! bimodules concentrated in one degree.

mod derived;
mod json;
mod projective;
mod resolve;

pub use derived::{
    derived_hom, derived_hom_pd_bounded, derived_tensor, derived_tensor_tor_bounded, derived_tensor_truncated, DerivedComplex,
};
pub use json::ComplexJson;
pub use projective::{Elem, ProjectiveComplex};
pub use resolve::{
    complex_invariants, dual_perfect, inj_truncate, is_perfect, minimal_projective_resolution, proj_truncate, resolve,
    ComplexInvariants, Extent, Perfection, Resolution, Truncation,
};

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::module::{same_algebra, Module, ModuleMap};

/// A complex `X^low -> ... -> X^high` of right modules.
#[derive(Clone, Debug)]
pub struct BoundedComplex<S> {
    alg: Arc<Algebra>,
    low: i64,
    terms: Vec<Module<S>>,
    diffs: Vec<ModuleMap<S>>,
}

impl<S: Scalar> BoundedComplex<S> {
    /// Terms start in degree `low`; `diffs[k]` maps `terms[k]` to
    /// `terms[k + 1]`.
    pub fn new(alg: Arc<Algebra>, low: i64, terms: Vec<Module<S>>, diffs: Vec<ModuleMap<S>>) -> Result<Self> {
        if terms.iter().any(|t| !same_algebra(t.algebra(), &alg)) {
            return Err(Error::InvalidInput("complex term over a different algebra".into()));
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidInput("a complex needs one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            let (s, t) = (&terms[k], &terms[k + 1]);
            let shapes_ok = d.blocks.len() == alg.num_vertices()
                && d.blocks.iter().enumerate().all(|(v, b)| b.shape() == (s.dim_at(v), t.dim_at(v)));
            if !shapes_ok || !d.is_homomorphism(s, t) {
                return Err(Error::InvalidInput(format!("differential in degree {} is not a homomorphism", low + k as i64)));
            }
            if k > 0 && !diffs[k - 1].then(d).is_zero() {
                return Err(Error::InvalidInput(format!("d^2 is nonzero at degree {}", low + k as i64 - 1)));
            }
        }
        Ok(BoundedComplex { alg, low, terms, diffs })
    }

    pub(crate) fn from_parts(alg: Arc<Algebra>, low: i64, terms: Vec<Module<S>>, diffs: Vec<ModuleMap<S>>) -> Self {
        BoundedComplex { alg, low, terms, diffs }
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        BoundedComplex { alg, low: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M` concentrated in one degree.
    pub fn stalk(m: &Module<S>, degree: i64) -> Self {
        BoundedComplex { alg: m.algebra().clone(), low: degree, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Lowest and highest stored degree, nonzero or not.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.low, self.low + self.terms.len() as i64 - 1))
        }
    }

    /// Lowest and highest degree of a nonzero term.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> =
            self.terms.iter().enumerate().filter(|(_, t)| !t.is_zero()).map(|(k, _)| self.low + k as i64).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    fn index(&self, i: i64) -> Option<usize> {
        let k = i - self.low;
        (k >= 0 && (k as usize) < self.terms.len()).then_some(k as usize)
    }

    pub fn term(&self, i: i64) -> Module<S> {
        match self.index(i) {
            Some(k) => self.terms[k].clone(),
            None => Module::zero(self.alg.clone()),
        }
    }

    fn term_dims(&self, i: i64) -> Vec<usize> {
        match self.index(i) {
            Some(k) => self.terms[k].dims().to_vec(),
            None => vec![0; self.alg.num_vertices()],
        }
    }

    /// `d^i: X^i -> X^{i+1}`.
    pub fn differential(&self, i: i64) -> ModuleMap<S> {
        match (self.index(i), self.index(i + 1)) {
            (Some(k), Some(_)) => self.diffs[k].clone(),
            _ => {
                let (s, t) = (self.term_dims(i), self.term_dims(i + 1));
                ModuleMap { blocks: s.iter().zip(&t).map(|(&a, &b)| Matrix::zeros(a, b)).collect() }
            }
        }
    }

    /// Cycles `ker d^i` and boundaries `im d^{i-1}` at every vertex.
    pub fn cycles_boundaries(&self, i: i64) -> (Vec<Subspace<S>>, Vec<Subspace<S>>) {
        (self.differential(i).kernel_spaces(), self.differential(i - 1).image_spaces())
    }

    /// `H^i` as a module.
    pub fn cohomology(&self, i: i64) -> Module<S> {
        let x = self.term(i);
        let (z, b) = self.cycles_boundaries(i);
        let (zm, _) = x.submodule(&z);
        let b_in_z: Vec<Subspace<S>> = z
            .iter()
            .zip(&b)
            .map(|(zs, bs)| Subspace::span(bs.basis().iter().map(|v| zs.coords(v).unwrap()).collect(), zs.dim()))
            .collect();
        zm.quotient(&b_in_z).0
    }

    pub fn cohomology_dim(&self, i: i64) -> usize {
        let (z, b) = self.cycles_boundaries(i);
        z.iter().zip(&b).map(|(z, b)| z.dim() - b.dim()).sum()
    }

    /// Lowest and highest degree with nonzero cohomology.
    pub fn cohomology_support(&self) -> Option<(i64, i64)> {
        let (lo, hi) = self.range()?;
        let nz: Vec<i64> = (lo..=hi).filter(|&i| self.cohomology_dim(i) != 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// `X[k]`, with `X[k]^i = X^{i+k}`.
    pub fn shift(&self, k: i64) -> Self {
        BoundedComplex { low: self.low - k, ..self.clone() }
    }

    /// The vector-space dual `DX` over the opposite algebra, with
    /// `(DX)^i = D(X^{-i})`.
    pub fn dual(&self) -> Self {
        let op = self.alg.opposite_arc();
        let Some((_, hi)) = self.range() else {
            return BoundedComplex::zero(op);
        };
        let terms = self.terms.iter().rev().map(|t| t.dual()).collect();
        let diffs = self.diffs.iter().rev().map(|d| d.dual()).collect();
        BoundedComplex { alg: op, low: -hi, terms, diffs }
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Self {
        match self.support() {
            None => BoundedComplex::zero(self.alg.clone()),
            Some((lo, hi)) => self.window(lo, hi),
        }
    }

    /// Terms in degrees `[lo, hi]`, padding with zero modules.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        let terms = (lo..=hi).map(|i| self.term(i)).collect();
        let diffs = (lo..hi).map(|i| self.differential(i)).collect();
        BoundedComplex { alg: self.alg.clone(), low: lo, terms, diffs }
    }
}

/// A family of maps `f^i: X^i -> Y^i`, zero outside the stored degrees.
#[derive(Clone, Debug)]
pub struct ChainMap<S> {
    pub low: i64,
    pub maps: Vec<ModuleMap<S>>,
}

impl<S: Scalar> ChainMap<S> {
    pub fn component(&self, i: i64, x: &BoundedComplex<S>, y: &BoundedComplex<S>) -> ModuleMap<S> {
        let k = i - self.low;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            ModuleMap { blocks: x.term_dims(i).iter().zip(y.term_dims(i)).map(|(&a, b)| Matrix::zeros(a, b)).collect() }
        }
    }

    fn degrees(x: &BoundedComplex<S>, y: &BoundedComplex<S>) -> Option<(i64, i64)> {
        match (x.range(), y.range()) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r),
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
        }
    }

    pub fn is_chain_map(&self, x: &BoundedComplex<S>, y: &BoundedComplex<S>) -> bool {
        let Some((lo, hi)) = Self::degrees(x, y) else { return true };
        (lo - 1..=hi).all(|i| {
            let f = self.component(i, x, y);
            let f1 = self.component(i + 1, x, y);
            f.is_homomorphism(&x.term(i), &y.term(i))
                && x.differential(i).then(&f1).blocks == f.then(&y.differential(i)).blocks
        })
    }

    /// Whether the induced map on `H^i` is an isomorphism in every degree
    /// `i >= from`.
    pub fn is_quasi_iso_from(&self, x: &BoundedComplex<S>, y: &BoundedComplex<S>, from: i64) -> bool {
        if !self.is_chain_map(x, y) {
            return false;
        }
        let Some((lo, hi)) = Self::degrees(x, y) else { return true };
        (lo.max(from)..=hi).all(|i| {
            let f = self.component(i, x, y);
            let (zx, bx) = x.cycles_boundaries(i);
            let (zy, by) = y.cycles_boundaries(i);
            (0..x.alg.num_vertices()).all(|v| {
                let hx = zx[v].dim() - bx[v].dim();
                let hy = zy[v].dim() - by[v].dim();
                let images: Vec<Vec<S>> = zx[v].basis().iter().map(|z| f.blocks[v].apply(z)).collect();
                let reached = by[v].sum(&Subspace::span(images, zy[v].ambient()));
                hx == hy && reached.dim() == zy[v].dim()
            })
        })
    }

    pub fn is_quasi_iso(&self, x: &BoundedComplex<S>, y: &BoundedComplex<S>) -> bool {
        self.is_quasi_iso_from(x, y, i64::MIN)
    }

    /// `Df: DY -> DX`.
    pub fn dual(&self) -> ChainMap<S> {
        let n = self.maps.len() as i64;
        ChainMap { low: -(self.low + n - 1), maps: self.maps.iter().rev().map(|m| m.dual()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;

    fn s1_to_zero_complex() -> BoundedComplex<Q> {
        let p2 = Module::projective(a2(), 1);
        let p1 = Module::projective(a2(), 0);
        let f = ModuleMap { blocks: vec![Matrix::zeros(0, 1), Matrix::identity(1)] };
        BoundedComplex::new(a2(), -1, vec![p2, p1], vec![f]).unwrap()
    }

    #[test]
    fn cohomology_of_projective_resolution() {
        let x = s1_to_zero_complex();
        assert_eq!(x.cohomology_dim(-1), 0);
        assert_eq!(x.cohomology_dim(0), 1);
        assert_eq!(x.cohomology(0).dims(), &[1, 0]);
        assert_eq!(x.cohomology_support(), Some((0, 0)));
        assert_eq!(x.shift(1).cohomology_support(), Some((-1, -1)));
        assert_eq!(x.dual().cohomology_support(), Some((0, 0)));
    }

    #[test]
    fn rejects_non_complexes() {
        let p1 = Module::<Q>::projective(a2(), 0);
        let bad = ModuleMap { blocks: vec![Matrix::identity(1), Matrix::zeros(1, 1)] };
        assert!(BoundedComplex::new(a2(), 0, vec![p1.clone(), p1.clone()], vec![bad]).is_err());
        let id = ModuleMap::identity(&p1);
        assert!(BoundedComplex::new(a2(), 0, vec![p1.clone(), p1.clone(), p1], vec![id.clone(), id]).is_err());
    }

    #[test]
    fn quasi_iso_check() {
        let x = s1_to_zero_complex();
        let s1 = BoundedComplex::stalk(&Module::simple(a2(), 0), 0);
        let f = ChainMap { low: 0, maps: vec![ModuleMap { blocks: vec![Matrix::identity(1), Matrix::zeros(1, 0)] }] };
        assert!(f.is_quasi_iso(&x, &s1));
        let zero = ChainMap { low: 0, maps: vec![] };
        assert!(zero.is_chain_map(&x, &s1));
        assert!(!zero.is_quasi_iso(&x, &s1));
    }
}
