//! Complexes of finitely generated projectives `⊕ e_v A`, with differentials
//! stored as matrices of algebra elements.
//!
//! A map `e_v A -> e_w A` is left multiplication by an element of
//! `e_w A e_v`, so following `a: e_u A -> e_v A` by `b: e_v A -> e_w A`
//! gives `b a`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BoundedComplex, ChainMap};
use crate::algebra::Algebra;
use crate::linalg::{Matrix, Scalar};
use crate::module::{Bimodule, Module, ModuleMap, ProjectiveLayout};

/// A linear combination of basis paths.
pub type Elem<S> = BTreeMap<usize, S>;

fn elem_add<S: Scalar>(a: &mut Elem<S>, p: usize, c: S) {
    if c.is_zero() {
        return;
    }
    let e = a.entry(p).or_insert_with(S::zero);
    *e = e.clone() + c;
    if e.is_zero() {
        a.remove(&p);
    }
}

pub(crate) fn elem_mul<S: Scalar>(alg: &Algebra, a: &Elem<S>, b: &Elem<S>) -> Elem<S> {
    let mut out = Elem::new();
    for (&p, x) in a {
        for (&q, y) in b {
            if let Some(r) = alg.mul(p, q) {
                elem_add(&mut out, r, x.clone() * y.clone());
            }
        }
    }
    out
}

fn elem_sum<S: Scalar>(a: &Elem<S>, b: &Elem<S>) -> Elem<S> {
    let mut out = a.clone();
    for (&p, c) in b {
        elem_add(&mut out, p, c.clone());
    }
    out
}

fn elem_scale<S: Scalar>(a: &Elem<S>, c: &S) -> Elem<S> {
    a.iter().filter(|_| !c.is_zero()).map(|(&p, x)| (p, x.clone() * c.clone())).collect()
}

/// Inverse of `c e_v + r` with `c != 0` and `r` in the radical of `e_v A e_v`.
fn local_inverse<S: Scalar>(alg: &Algebra, u: &Elem<S>, v: usize) -> Elem<S> {
    let e = alg.trivial(v);
    let c = u[&e].clone();
    let cinv = c.inv();
    let mut r = u.clone();
    r.remove(&e);
    let minus_r = elem_scale(&r, &(S::zero() - cinv.clone()));
    let mut term: Elem<S> = Elem::from([(e, cinv.clone())]);
    let mut total = term.clone();
    loop {
        term = elem_mul(alg, &minus_r, &term);
        if term.is_empty() {
            break;
        }
        total = elem_sum(&total, &term);
    }
    total
}

/// `P^low -> ... -> P^high` with `P^i = ⊕_j e_{terms[i][j]} A`.
#[derive(Clone, Debug)]
pub struct ProjectiveComplex<S> {
    pub alg: Arc<Algebra>,
    pub low: i64,
    pub terms: Vec<Vec<usize>>,
    /// `diffs[k][i][j]`: component from summand `i` of term `k` to summand
    /// `j` of term `k + 1`.
    pub diffs: Vec<Vec<Vec<Elem<S>>>>,
}

/// Images of the generators of a projective complex in a target complex:
/// `images[k][i]` lies in the target's degree `low + k` term at the vertex of
/// summand `i`.
pub(crate) type GeneratorImages<S> = Vec<Vec<Vec<S>>>;

impl<S: Scalar> ProjectiveComplex<S> {
    pub fn zero(alg: Arc<Algebra>) -> Self {
        ProjectiveComplex { alg, low: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `e_v A` in one degree, for each `v` in `gens`.
    pub fn stalk(alg: Arc<Algebra>, gens: &[usize], degree: i64) -> Self {
        ProjectiveComplex { alg, low: degree, terms: vec![gens.to_vec()], diffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    /// Lowest and highest degree of a nonzero term.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> =
            self.terms.iter().enumerate().filter(|(_, t)| !t.is_empty()).map(|(k, _)| self.low + k as i64).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn term(&self, i: i64) -> &[usize] {
        let k = i - self.low;
        if k >= 0 && (k as usize) < self.terms.len() {
            &self.terms[k as usize]
        } else {
            &[]
        }
    }

    pub fn module(&self, k: usize) -> Module<S> {
        Module::projective_sum(self.alg.clone(), &self.terms[k])
    }

    /// The module map of an element matrix between two projective sums.
    pub fn element_map(alg: &Algebra, src: &[usize], dst: &[usize], d: &[Vec<Elem<S>>]) -> ModuleMap<S> {
        let ls = ProjectiveLayout::new(alg, src);
        let lt = ProjectiveLayout::new(alg, dst);
        let blocks = (0..alg.num_vertices())
            .map(|x| {
                let mut m: Matrix<S> = Matrix::zeros(ls.dims[x], lt.dims[x]);
                for (row, &(i, p)) in ls.entries[x].iter().enumerate() {
                    for (j, a) in d[i].iter().enumerate() {
                        for (&q, c) in a {
                            if let Some(r) = alg.mul(q, p) {
                                let col = lt.position(x, j, r).expect("product lies in the target summand");
                                m[(row, col)] = m[(row, col)].clone() + c.clone();
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    pub fn to_bounded(&self) -> BoundedComplex<S> {
        let terms = (0..self.terms.len()).map(|k| self.module(k)).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| Self::element_map(&self.alg, &self.terms[k], &self.terms[k + 1], d))
            .collect();
        BoundedComplex::from_parts(self.alg.clone(), self.low, terms, diffs)
    }

    /// The chain map to `target` sending each generator to its image.
    pub(crate) fn chain_map_from_images(
        &self,
        images: &GeneratorImages<S>,
        target: &BoundedComplex<S>,
    ) -> ChainMap<S> {
        let maps = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, gens)| {
                let t = target.term(self.low + k as i64);
                let layout = ProjectiveLayout::new(&self.alg, gens);
                let blocks = (0..self.alg.num_vertices())
                    .map(|x| {
                        let rows: Vec<Vec<S>> = layout.entries[x]
                            .iter()
                            .map(|&(i, p)| t.path_matrix(p).apply(&images[k][i]))
                            .collect();
                        Matrix::from_rows(rows, t.dim_at(x))
                    })
                    .collect();
                ModuleMap { blocks }
            })
            .collect();
        ChainMap { low: self.low, maps }
    }

    /// Whether every differential component lies in the radical.
    pub fn is_minimal(&self) -> bool {
        self.find_unit().is_none()
    }

    fn find_unit(&self) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (i, row) in d.iter().enumerate() {
                for (j, a) in row.iter().enumerate() {
                    let v = self.terms[k][i];
                    if self.terms[k + 1][j] == v && a.contains_key(&self.alg.trivial(v)) {
                        return Some((k, i, j));
                    }
                }
            }
        }
        None
    }

    /// Splits off all contractible summands `e_v A -> e_v A` by Gaussian
    /// elimination.
    pub fn minimize(&self) -> Self {
        let mut out = self.clone();
        out.minimize_tracking(None);
        out
    }

    /// As [`ProjectiveComplex::minimize`], updating generator images along
    /// the inclusion of the smaller complex into the larger one.
    pub(crate) fn minimize_tracking(&mut self, mut images: Option<(&mut GeneratorImages<S>, &BoundedComplex<S>)>) {
        while let Some((k, i0, j0)) = self.find_unit() {
            let v = self.terms[k][i0];
            let inv = local_inverse(&self.alg, &self.diffs[k][i0][j0], v);
            let minus_inv = elem_scale(&inv, &(S::zero() - S::one()));
            let n_src = self.terms[k].len();
            let n_dst = self.terms[k + 1].len();
            let shifts: Vec<Elem<S>> = (0..n_src)
                .map(|i| if i == i0 { Elem::new() } else { elem_mul(&self.alg, &minus_inv, &self.diffs[k][i][j0]) })
                .collect();
            for i in 0..n_src {
                if i == i0 || shifts[i].is_empty() {
                    continue;
                }
                for j in 0..n_dst {
                    let extra = elem_mul(&self.alg, &self.diffs[k][i0][j], &shifts[i]);
                    self.diffs[k][i][j] = elem_sum(&self.diffs[k][i][j], &extra);
                }
            }
            if let Some((imgs, target)) = images.as_mut() {
                let t = target.term(self.low + k as i64);
                let base = imgs[k][i0].clone();
                for i in 0..n_src {
                    if i == i0 {
                        continue;
                    }
                    for (&p, c) in &shifts[i] {
                        let moved = t.path_matrix(p).apply(&base);
                        for (x, y) in imgs[k][i].iter_mut().zip(moved) {
                            *x = x.clone() + c.clone() * y;
                        }
                    }
                }
                imgs[k].remove(i0);
                imgs[k + 1].remove(j0);
            }
            self.terms[k].remove(i0);
            self.terms[k + 1].remove(j0);
            self.diffs[k].remove(i0);
            for row in self.diffs[k].iter_mut() {
                row.remove(j0);
            }
            if k > 0 {
                for row in self.diffs[k - 1].iter_mut() {
                    row.remove(i0);
                }
            }
            if k + 1 < self.diffs.len() {
                self.diffs[k + 1].remove(j0);
            }
        }
    }

    /// Drops empty terms at both ends.
    pub fn trimmed(&self) -> Self {
        let Some((lo, hi)) = self.support() else {
            return ProjectiveComplex::zero(self.alg.clone());
        };
        let (a, b) = ((lo - self.low) as usize, (hi - self.low) as usize);
        ProjectiveComplex {
            alg: self.alg.clone(),
            low: lo,
            terms: self.terms[a..=b].to_vec(),
            diffs: self.diffs[a..b].to_vec(),
        }
    }

    /// `Hom_A(-, A)` applied term-wise: a complex over `A^op` with the term
    /// of degree `i` going to degree `-i`.
    pub fn dual(&self) -> Self {
        let op = self.alg.opposite_arc();
        let op_index: Vec<usize> = (0..self.alg.dim())
            .map(|p| {
                let path = self.alg.path(p);
                if path.is_trivial() {
                    op.trivial(path.source)
                } else {
                    let rev: Vec<usize> = path.arrows.iter().rev().copied().collect();
                    op.word_class(&rev).expect("reversed path is nonzero in the opposite algebra")
                }
            })
            .collect();
        let Some((_, _)) = self.support() else {
            return ProjectiveComplex::zero(op);
        };
        let n = self.terms.len();
        let terms: Vec<Vec<usize>> = self.terms.iter().rev().cloned().collect();
        let diffs = (0..n.saturating_sub(1))
            .map(|m| {
                let k = n - 2 - m;
                let d = &self.diffs[k];
                (0..self.terms[k + 1].len())
                    .map(|j| {
                        (0..self.terms[k].len())
                            .map(|i| d[i][j].iter().map(|(&p, c)| (op_index[p], c.clone())).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ProjectiveComplex { alg: op, low: -(self.low + n as i64 - 1), terms, diffs }
    }

    /// `P ⊗_A X` for an `(A, R)`-bimodule `X`, as a complex of right
    /// `R`-modules.
    pub fn tensor(&self, x: &Bimodule<S>) -> BoundedComplex<S> {
        let r_alg = x.right_algebra().clone();
        let terms: Vec<Module<S>> = self
            .terms
            .iter()
            .map(|gens| Module::direct_sum_all(r_alg.clone(), gens.iter().map(|&v| x.slice(v))))
            .collect();
        let path_maps: BTreeMap<usize, ModuleMap<S>> = self
            .diffs
            .iter()
            .flatten()
            .flatten()
            .flat_map(|a| a.keys().copied())
            .map(|p| (p, x.left_path_map(p)))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let (src, dst) = (&self.terms[k], &self.terms[k + 1]);
                let blocks = (0..r_alg.num_vertices())
                    .map(|r| {
                        let rows: Vec<usize> = src.iter().map(|&v| x.slice(v).dim_at(r)).collect();
                        let cols: Vec<usize> = dst.iter().map(|&w| x.slice(w).dim_at(r)).collect();
                        let mut m: Matrix<S> = Matrix::zeros(rows.iter().sum(), cols.iter().sum());
                        let mut r0 = 0;
                        for (i, &h) in rows.iter().enumerate() {
                            let mut c0 = 0;
                            for (j, &w) in cols.iter().enumerate() {
                                for (&p, c) in &d[i][j] {
                                    let b = &path_maps[&p].blocks[r];
                                    for a in 0..h {
                                        for bcol in 0..w {
                                            m[(r0 + a, c0 + bcol)] =
                                                m[(r0 + a, c0 + bcol)].clone() + c.clone() * b[(a, bcol)].clone();
                                        }
                                    }
                                }
                                c0 += w;
                            }
                            r0 += h;
                        }
                        m
                    })
                    .collect();
                ModuleMap { blocks }
            })
            .collect();
        BoundedComplex::from_parts(r_alg, self.low, terms, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;

    fn one(p: usize) -> Elem<Q> {
        Elem::from([(p, Q::from_i64(1))])
    }

    #[test]
    fn local_inverse_in_dual_numbers() {
        let alg = dual_numbers();
        let x = alg.arrow_basis(0);
        let u: Elem<Q> = Elem::from([(alg.trivial(0), Q::from_i64(2)), (x, Q::from_i64(3))]);
        let inv = local_inverse(&alg, &u, 0);
        assert_eq!(elem_mul(&alg, &u, &inv), one(alg.trivial(0)));
    }

    #[test]
    fn minimize_cancels_identity() {
        let alg = a2();
        let e1 = alg.trivial(0);
        let c = ProjectiveComplex { alg: alg.clone(), low: 0, terms: vec![vec![0], vec![0]], diffs: vec![vec![vec![one(e1)]]] };
        assert!(!c.is_minimal());
        assert!(c.minimize().is_zero());
    }

    #[test]
    fn minimize_one_step() {
        let alg = a2();
        let e1 = alg.trivial(0);
        let c = ProjectiveComplex {
            alg: alg.clone(),
            low: 0,
            terms: vec![vec![0, 1], vec![0]],
            diffs: vec![vec![vec![one(e1)], vec![Elem::new()]]],
        };
        let m = c.minimize().trimmed();
        assert_eq!(m.terms, vec![vec![1]]);
        assert_eq!(m.low, 0);
    }

    #[test]
    fn element_maps_compose_to_bounded_complex() {
        let alg = a2();
        let a = alg.arrow_basis(0);
        let c = ProjectiveComplex { alg: alg.clone(), low: -1, terms: vec![vec![1], vec![0]], diffs: vec![vec![vec![one(a)]]] };
        assert!(c.is_minimal());
        let b = c.to_bounded();
        assert_eq!(b.cohomology_support(), Some((0, 0)));
        assert_eq!(b.cohomology(0).dims(), &[1, 0]);
        let d = c.dual();
        assert_eq!(d.low, 0);
        assert_eq!(d.terms, vec![vec![0], vec![1]]);
        let db = d.to_bounded();
        assert_eq!(db.cohomology_support(), Some((1, 1)));
        assert_eq!(d.dual().terms, c.terms);
    }

    #[test]
    fn tensor_with_regular_is_identity() {
        let alg = a2();
        let a = alg.arrow_basis(0);
        let c = ProjectiveComplex { alg: alg.clone(), low: -1, terms: vec![vec![1], vec![0]], diffs: vec![vec![vec![one(a)]]] };
        let t = c.tensor(&Bimodule::regular(alg.clone()));
        assert_eq!(t.cohomology_support(), Some((0, 0)));
        assert_eq!(t.cohomology(0).dims(), &[1, 0]);
    }
}
