//! Right modules as quiver representations.
//!
//! A module assigns a vector space `M_v` to every vertex and to every arrow
//! `a: u -> v` a matrix of shape `dim M_u x dim M_v` acting on row vectors,
//! so a path `a b` acts by the product `M_a M_b`.

mod bimodule;
mod hom;
mod json;
mod resolution;

pub use bimodule::{tensor_over, triangular, Bimodule, BimoduleSide};
pub use hom::{hom_dim, hom_space};
pub use json::ModuleJson;
pub use resolution::{ext_dim, Presentation};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

pub struct Module<S> {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    action: Vec<Matrix<S>>,
    path_cache: OnceLock<Vec<Matrix<S>>>,
    pres_cache: OnceLock<Arc<Presentation<S>>>,
}

impl<S: Clone> Clone for Module<S> {
    fn clone(&self) -> Self {
        Module {
            alg: self.alg.clone(),
            dims: self.dims.clone(),
            action: self.action.clone(),
            path_cache: self.path_cache.clone(),
            pres_cache: self.pres_cache.clone(),
        }
    }
}

impl<S: Scalar> PartialEq for Module<S> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.action == other.action
    }
}

impl<S: Scalar> Eq for Module<S> {}

impl<S: fmt::Debug> fmt::Debug for Module<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("dims", &self.dims).field("action", &self.action).finish()
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A module homomorphism given by one block per vertex; `x` maps to `x * f_v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleMap<S> {
    pub blocks: Vec<Matrix<S>>,
}

impl<S: Scalar> Module<S> {
    /// Builds a module and checks shapes and relations.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix<S>>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || action.len() != alg.num_arrows() {
            return Err(Error::InvalidInput("module data does not match the quiver".into()));
        }
        for (ai, m) in action.iter().enumerate() {
            let a = alg.arrow(ai);
            if m.shape() != (dims[a.from], dims[a.to]) {
                return Err(Error::InvalidInput(format!(
                    "arrow {} needs a {}x{} matrix",
                    a.name, dims[a.from], dims[a.to]
                )));
            }
        }
        let m = Self::from_parts(alg, dims, action);
        for f in m.alg.forbidden() {
            if !m.word_matrix(f).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "relation {} does not act as zero",
                    m.alg.word_name(f)
                )));
            }
        }
        for (p, q) in m.alg.commutations() {
            if m.word_matrix(p) != m.word_matrix(q) {
                return Err(Error::InvalidInput(format!(
                    "commutation {} = {} does not hold",
                    m.alg.word_name(p),
                    m.alg.word_name(q)
                )));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_parts(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix<S>>) -> Self {
        Module { alg, dims, action, path_cache: OnceLock::new(), pres_cache: OnceLock::new() }
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let action = alg.quiver().arrows.iter().map(|_| Matrix::zeros(0, 0)).collect();
        Self::from_parts(alg, dims, action)
    }

    pub fn simple(alg: Arc<Algebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let action = alg.quiver().arrows.iter().map(|a| Matrix::zeros(dims[a.from], dims[a.to])).collect();
        Self::from_parts(alg, dims, action)
    }

    /// The indecomposable projective `P(v) = e_v A`, spanned by the paths
    /// starting at `v`.
    pub fn projective(alg: Arc<Algebra>, v: usize) -> Self {
        Self::projective_sum(alg, &[v])
    }

    /// `P(v_1) ⊕ ... ⊕ P(v_r)`. At vertex `x` the basis lists, summand by
    /// summand, the paths from `v_i` to `x` in algebra basis order.
    pub fn projective_sum(alg: Arc<Algebra>, gens: &[usize]) -> Self {
        let layout = ProjectiveLayout::new(&alg, gens);
        let mut action = Vec::with_capacity(alg.num_arrows());
        for (ai, a) in alg.quiver().arrows.iter().enumerate() {
            let mut m = Matrix::zeros(layout.dims[a.from], layout.dims[a.to]);
            let arrow_path = alg.arrow_basis(ai);
            for (row, &(g, p)) in layout.entries[a.from].iter().enumerate() {
                if let Some(q) = alg.mul(p, arrow_path) {
                    let col = layout.position(a.to, g, q).expect("product lies in the same summand");
                    m[(row, col)] = S::one();
                }
            }
            action.push(m);
        }
        Self::from_parts(alg, layout.dims, action)
    }

    pub fn regular(alg: Arc<Algebra>) -> Self {
        let gens: Vec<usize> = (0..alg.num_vertices()).collect();
        Self::projective_sum(alg, &gens)
    }

    /// The indecomposable injective `I(v) = D(A e_v)`.
    pub fn injective(alg: Arc<Algebra>, v: usize) -> Self {
        let op = alg.opposite_arc();
        Module::<S>::projective(op, v).dual_over(alg)
    }

    /// `D(A_A)`, the injective cogenerator.
    pub fn injective_cogenerator(alg: Arc<Algebra>) -> Self {
        let op = alg.opposite_arc();
        Module::<S>::regular(op).dual_over(alg)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, a: usize) -> &Matrix<S> {
        &self.action[a]
    }

    pub fn actions(&self) -> &[Matrix<S>] {
        &self.action
    }

    /// Matrix of an arbitrary composable arrow word.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix<S> {
        let first = self.alg.arrow(word[0]).from;
        let mut m = Matrix::identity(self.dims[first]);
        for &a in word {
            m = &m * &self.action[a];
        }
        m
    }

    /// Action matrix of the basis path `p`.
    pub fn path_matrix(&self, p: usize) -> &Matrix<S> {
        &self.path_matrices()[p]
    }

    fn path_matrices(&self) -> &Vec<Matrix<S>> {
        self.path_cache.get_or_init(|| {
            let alg = &self.alg;
            let mut out: Vec<Matrix<S>> = Vec::with_capacity(alg.dim());
            for i in 0..alg.dim() {
                let m = match alg.prefix(i) {
                    None => Matrix::identity(self.dims[alg.path(i).source]),
                    Some((pre, a)) => &out[pre] * &self.action[a],
                };
                out.push(m);
            }
            out
        })
    }

    /// Dimension of the radical `M rad A` at each vertex.
    pub fn radical_spaces(&self) -> Vec<Subspace<S>> {
        (0..self.alg.num_vertices())
            .map(|v| {
                let mut rows = Vec::new();
                for (ai, a) in self.alg.quiver().arrows.iter().enumerate() {
                    if a.to == v {
                        rows.extend(self.action[ai].row_vecs());
                    }
                }
                Subspace::span(rows, self.dims[v])
            })
            .collect()
    }

    /// Dimension vector of the top `M / M rad A`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_spaces().iter().zip(&self.dims).map(|(r, &d)| d - r.dim()).collect()
    }

    /// `M` is projective iff its dimension equals that of its projective cover.
    pub fn is_projective(&self) -> bool {
        let top = self.top_dims();
        let cover: usize = top.iter().enumerate().map(|(v, &m)| m * self.alg.paths_from(v).len()).sum();
        cover == self.total_dim()
    }

    pub fn is_injective(&self) -> bool {
        self.dual().is_projective()
    }

    /// The dual `D M = Hom_k(M, k)` as a right module over the opposite
    /// algebra: arrow actions are transposed along reversed arrows.
    pub fn dual(&self) -> Module<S> {
        self.dual_over(self.alg.opposite_arc())
    }

    fn dual_over(&self, target: Arc<Algebra>) -> Module<S> {
        let action = self.action.iter().map(|m| m.transpose()).collect();
        Module::from_parts(target, self.dims.clone(), action)
    }

    pub fn direct_sum(&self, other: &Module<S>) -> Module<S> {
        assert!(same_algebra(&self.alg, &other.alg), "direct sum over different algebras");
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Module::from_parts(self.alg.clone(), dims, action)
    }

    pub fn direct_sum_all<'a>(alg: Arc<Algebra>, parts: impl IntoIterator<Item = &'a Module<S>>) -> Module<S> {
        parts.into_iter().fold(Module::zero(alg), |acc, m| acc.direct_sum(m))
    }

    pub fn power(&self, k: usize) -> Module<S> {
        Module::direct_sum_all(self.alg.clone(), std::iter::repeat(self).take(k))
    }

    /// The submodule spanned by the given vertexwise subspaces, which must be
    /// closed under the action, with its inclusion map.
    pub fn submodule(&self, spaces: &[Subspace<S>]) -> (Module<S>, ModuleMap<S>) {
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let mut action = Vec::with_capacity(self.alg.num_arrows());
        for (ai, a) in self.alg.quiver().arrows.iter().enumerate() {
            let rows: Vec<Vec<S>> = spaces[a.from]
                .basis()
                .iter()
                .map(|b| {
                    spaces[a.to]
                        .coords(&self.action[ai].apply(b))
                        .expect("subspaces must be closed under the action")
                })
                .collect();
            action.push(Matrix::from_rows(rows, dims[a.to]));
        }
        let incl = ModuleMap { blocks: spaces.iter().map(|s| s.basis_matrix()).collect() };
        (Module::from_parts(self.alg.clone(), dims, action), incl)
    }

    /// The quotient by a submodule given by vertexwise subspaces, with the
    /// projection map. The quotient basis is indexed by non-pivot units.
    pub fn quotient(&self, spaces: &[Subspace<S>]) -> (Module<S>, ModuleMap<S>) {
        let keep: Vec<Vec<usize>> = spaces
            .iter()
            .map(|s| {
                let mut is_pivot = vec![false; s.ambient()];
                for &p in s.pivots() {
                    is_pivot[p] = true;
                }
                (0..s.ambient()).filter(|&i| !is_pivot[i]).collect()
            })
            .collect();
        let reduce = |v: usize, x: &[S]| -> Vec<S> {
            let s = &spaces[v];
            let mut r = x.to_vec();
            for (b, &p) in s.basis().iter().zip(s.pivots()) {
                let c = r[p].clone();
                if c.is_zero() {
                    continue;
                }
                for (ri, bi) in r.iter_mut().zip(b) {
                    if !bi.is_zero() {
                        *ri = ri.clone() - c.clone() * bi.clone();
                    }
                }
            }
            keep[v].iter().map(|&k| r[k].clone()).collect()
        };
        let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
        let mut action = Vec::with_capacity(self.alg.num_arrows());
        for (ai, a) in self.alg.quiver().arrows.iter().enumerate() {
            let rows: Vec<Vec<S>> = keep[a.from]
                .iter()
                .map(|&k| {
                    let row = self.action[ai].row(k).to_vec();
                    reduce(a.to, &row)
                })
                .collect();
            action.push(Matrix::from_rows(rows, dims[a.to]));
        }
        let blocks = (0..self.alg.num_vertices())
            .map(|v| {
                let rows = (0..self.dims[v])
                    .map(|i| {
                        let mut e = vec![S::zero(); self.dims[v]];
                        e[i] = S::one();
                        reduce(v, &e)
                    })
                    .collect();
                Matrix::from_rows(rows, dims[v])
            })
            .collect();
        (Module::from_parts(self.alg.clone(), dims, action), ModuleMap { blocks })
    }

    /// The submodule `M rad^j A`.
    pub fn radical_power(&self, j: usize) -> Vec<Subspace<S>> {
        let alg = &self.alg;
        (0..alg.num_vertices())
            .map(|v| {
                let mut rows = Vec::new();
                for &p in alg.paths_to(v) {
                    if alg.path(p).len() >= j {
                        rows.extend(self.path_matrix(p).row_vecs());
                    }
                }
                Subspace::span(rows, self.dims[v])
            })
            .collect()
    }

    /// Conjugates every action matrix by the vertexwise invertible matrices
    /// `g_v`, giving an isomorphic module with `g` as the isomorphism.
    pub fn change_basis(&self, g: &[Matrix<S>]) -> Module<S> {
        let inv: Vec<Matrix<S>> = g.iter().map(|m| m.inverse().expect("basis change must be invertible")).collect();
        let action = self
            .alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| &(&inv[a.from] * &self.action[ai]) * &g[a.to])
            .collect();
        Module::from_parts(self.alg.clone(), self.dims.clone(), action)
    }

    /// Cheap isomorphism invariant: dimension vector and the rank of every
    /// basis path.
    pub fn rank_profile(&self) -> Vec<usize> {
        let mut out = self.dims.clone();
        for p in 0..self.alg.dim() {
            if !self.alg.path(p).is_trivial() {
                out.push(self.path_matrix(p).rank());
            }
        }
        out
    }

    /// Splits along connected components of the graph on basis vectors
    /// whose edges are the nonzero entries of the action matrices.
    pub fn block_components(&self) -> Vec<Module<S>> {
        let n = self.alg.num_vertices();
        let mut off = vec![0; n + 1];
        for v in 0..n {
            off[v + 1] = off[v] + self.dims[v];
        }
        let total = off[n];
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for (ai, a) in self.alg.quiver().arrows.iter().enumerate() {
            let m = &self.action[ai];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m[(r, c)].is_zero() {
                        let (x, y) = (find(&mut parent, off[a.from] + r), find(&mut parent, off[a.to] + c));
                        if x != y {
                            parent[x.max(y)] = x.min(y);
                        }
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..total).map(|i| find(&mut parent, i)).collect();
        let mut order: Vec<usize> = roots.clone();
        order.sort();
        order.dedup();
        if order.len() <= 1 {
            return vec![self.clone()];
        }
        for r in roots.iter_mut() {
            *r = order.binary_search(r).unwrap();
        }
        order
            .iter()
            .enumerate()
            .map(|(ci, _)| {
                let spaces: Vec<Subspace<S>> = (0..n)
                    .map(|v| {
                        let rows = (0..self.dims[v])
                            .filter(|&i| roots[off[v] + i] == ci)
                            .map(|i| {
                                let mut e = vec![S::zero(); self.dims[v]];
                                e[i] = S::one();
                                e
                            })
                            .collect();
                        Subspace::span(rows, self.dims[v])
                    })
                    .collect();
                self.submodule(&spaces).0
            })
            .collect()
    }
}

/// Basis layout of a direct sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct ProjectiveLayout {
    pub gens: Vec<usize>,
    pub dims: Vec<usize>,
    /// At each vertex, the `(summand, path)` pairs in basis order.
    pub entries: Vec<Vec<(usize, usize)>>,
}

impl ProjectiveLayout {
    pub fn new(alg: &Algebra, gens: &[usize]) -> Self {
        let n = alg.num_vertices();
        let mut entries = vec![Vec::new(); n];
        for (g, &v) in gens.iter().enumerate() {
            for &p in alg.paths_from(v) {
                entries[alg.path(p).target].push((g, p));
            }
        }
        let dims = entries.iter().map(|e| e.len()).collect();
        ProjectiveLayout { gens: gens.to_vec(), dims, entries }
    }

    pub fn position(&self, x: usize, g: usize, p: usize) -> Option<usize> {
        self.entries[x].iter().position(|&e| e == (g, p))
    }
}

impl<S: Scalar> ModuleMap<S> {
    pub fn zero(m: &Module<S>, n: &Module<S>) -> Self {
        ModuleMap { blocks: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(a, b)).collect() }
    }

    pub fn identity(m: &Module<S>) -> Self {
        ModuleMap { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ModuleMap<S>) -> ModuleMap<S> {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect() }
    }

    pub fn add(&self, other: &ModuleMap<S>) -> ModuleMap<S> {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ModuleMap<S>) -> ModuleMap<S> {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &S) -> ModuleMap<S> {
        ModuleMap { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    /// `Df: DN -> DM` for `f: M -> N`.
    pub fn dual(&self) -> ModuleMap<S> {
        ModuleMap { blocks: self.blocks.iter().map(|b| b.transpose()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn trace(&self) -> S {
        self.blocks.iter().fold(S::zero(), |acc, b| acc + b.trace())
    }

    pub fn kernel_spaces(&self) -> Vec<Subspace<S>> {
        self.blocks.iter().map(|b| Subspace::span(b.kernel_basis(), b.rows())).collect()
    }

    pub fn image_spaces(&self) -> Vec<Subspace<S>> {
        self.blocks.iter().map(|b| Subspace::span(b.row_vecs(), b.cols())).collect()
    }

    /// Whether the blocks commute with the actions of `m` and `n`.
    pub fn is_homomorphism(&self, m: &Module<S>, n: &Module<S>) -> bool {
        m.alg.quiver().arrows.iter().enumerate().all(|(ai, a)| {
            &self.blocks[a.from] * &n.action[ai] == &m.action[ai] * &self.blocks[a.to]
        })
    }
}

impl Algebra {
    pub fn word_name(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.arrow(a).name.as_str()).collect::<Vec<_>>().join("*")
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use crate::algebra::{NakayamaShape, Quiver};
    use crate::linalg::{FieldSpec, Rational};

    pub type Q = Rational;

    pub fn field_alg() -> Arc<Algebra> {
        Arc::new(Algebra::monomial(Quiver::new(vec!["1".into()]), vec![], FieldSpec::Rational).unwrap())
    }

    pub fn a2() -> Arc<Algebra> {
        let mut q = Quiver::new(vec!["1".into(), "2".into()]);
        q.add_arrow("a", 0, 1);
        Arc::new(Algebra::monomial(q, vec![], FieldSpec::Rational).unwrap())
    }

    pub fn dual_numbers() -> Arc<Algebra> {
        let mut q = Quiver::new(vec!["1".into()]);
        q.add_arrow("x", 0, 0);
        Arc::new(Algebra::monomial(q, vec![vec![0, 0]], FieldSpec::Rational).unwrap())
    }

    pub fn nakayama(cyclic: bool, kupisch: &[usize]) -> Arc<Algebra> {
        Arc::new(
            Algebra::nakayama(&NakayamaShape { cyclic, kupisch: kupisch.to_vec() }, FieldSpec::Rational).unwrap(),
        )
    }

    /// `1 -a-> 3 <-b- 2` with a loop `x` at 3 and `xx = ax = bx = 0`.
    pub fn v_loop() -> Arc<Algebra> {
        let mut q = Quiver::new(vec!["1".into(), "2".into(), "3".into()]);
        q.add_arrow("a", 0, 2);
        q.add_arrow("b", 1, 2);
        q.add_arrow("x", 2, 2);
        Arc::new(Algebra::monomial(q, vec![vec![2, 2], vec![0, 2], vec![1, 2]], FieldSpec::Rational).unwrap())
    }

    /// The dimension (1,1) representation of A_2 with the arrow acting by `c`.
    pub fn a2_rep(c: i64) -> Module<Q> {
        Module::new(a2(), vec![1, 1], vec![Matrix::from_i64(1, 1, &[c])]).unwrap()
    }
}
