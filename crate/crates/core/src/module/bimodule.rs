//! Bimodules and the tensor product over an algebra.
//!
//! A `(L, R)`-bimodule `X` is stored left-sliced: for every vertex `l` of
//! `L` the right `R`-module `e_l X`, and for every arrow `α: l -> l'` of `L`
//! the right `R`-linear map `e_{l'} X -> e_l X`, `x -> α x`. This carries the
//! same data as a right module over `L^op ⊗ R`; see [`Bimodule::to_enveloping`].

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{same_algebra, Module, ModuleMap};
use crate::algebra::{Algebra, ConnectingArrow, Gluing, IdempotentSplit};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct Bimodule<S> {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    slices: Vec<Module<S>>,
    left_maps: Vec<ModuleMap<S>>,
}

/// Which side of a bimodule a one-sided question refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BimoduleSide {
    Left,
    Right,
}

impl<S: Scalar> Bimodule<S> {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        slices: Vec<Module<S>>,
        left_maps: Vec<ModuleMap<S>>,
    ) -> Result<Self> {
        if slices.len() != left.num_vertices() || left_maps.len() != left.num_arrows() {
            return Err(Error::InvalidInput("bimodule data does not match the left quiver".into()));
        }
        if slices.iter().any(|s| !same_algebra(s.algebra(), &right)) {
            return Err(Error::InvalidInput("bimodule slices must be modules over the right algebra".into()));
        }
        for (ai, a) in left.quiver().arrows.iter().enumerate() {
            if !left_maps[ai].is_homomorphism(&slices[a.to], &slices[a.from]) {
                return Err(Error::InvalidInput(format!("left action of {} is not right linear", a.name)));
            }
        }
        let x = Bimodule { left, right, slices, left_maps };
        for f in x.left.forbidden() {
            if !x.left_word_map(f).is_zero() {
                return Err(Error::InvalidInput("left action violates a relation".into()));
            }
        }
        for (p, q) in x.left.commutations() {
            if x.left_word_map(p) != x.left_word_map(q) {
                return Err(Error::InvalidInput("left action violates a commutation".into()));
            }
        }
        Ok(x)
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(alg: Arc<Algebra>) -> Self {
        let n = alg.num_vertices();
        let vmap: Vec<usize> = (0..n).collect();
        let amap: Vec<usize> = (0..alg.num_arrows()).collect();
        Self::corner(&alg, alg.clone(), &vmap, &amap, alg.clone(), &vmap, &amap, &[])
    }

    /// The bimodule spanned by the paths of `A` from (images of) vertices of
    /// `left` to vertices of `right` that avoid the vertices in `kill`, with
    /// actions by multiplication in `A`. The vertex and arrow maps embed the
    /// basis paths of `left` and `right` into those of `A`.
    #[allow(clippy::too_many_arguments)]
    pub fn corner(
        a: &Algebra,
        left: Arc<Algebra>,
        left_vertices: &[usize],
        left_arrows: &[usize],
        right: Arc<Algebra>,
        right_vertices: &[usize],
        right_arrows: &[usize],
        kill: &[usize],
    ) -> Self {
        let killed: BTreeSet<usize> = kill.iter().copied().collect();
        let visits_killed = |p: usize| {
            let path = a.path(p);
            killed.contains(&path.source) || path.arrows.iter().any(|&x| killed.contains(&a.arrow(x).to))
        };
        let rv_index: HashMap<usize, usize> = right_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // spans[l][r] lists the A-paths spanning e_l X e_r.
        let spans: Vec<Vec<Vec<usize>>> = left_vertices
            .iter()
            .map(|&lv| {
                let mut per_r = vec![Vec::new(); right_vertices.len()];
                for &p in a.paths_from(lv) {
                    if visits_killed(p) {
                        continue;
                    }
                    if let Some(&r) = rv_index.get(&a.path(p).target) {
                        per_r[r].push(p);
                    }
                }
                per_r
            })
            .collect();
        let mut slices = Vec::with_capacity(left_vertices.len());
        for span in &spans {
            let dims: Vec<usize> = span.iter().map(|s| s.len()).collect();
            let action = right
                .quiver()
                .arrows
                .iter()
                .enumerate()
                .map(|(bi, b)| {
                    let arrow_path = a.arrow_basis(right_arrows[bi]);
                    Matrix::from_fn(dims[b.from], dims[b.to], |row, col| {
                        match a.mul(span[b.from][row], arrow_path) {
                            Some(q) if q == span[b.to][col] => S::one(),
                            _ => S::zero(),
                        }
                    })
                })
                .collect();
            slices.push(Module::from_parts(right.clone(), dims, action));
        }
        let left_maps = left
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, al)| {
                let arrow_path = a.arrow_basis(left_arrows[ai]);
                let (src, dst) = (&spans[al.to], &spans[al.from]);
                let blocks = (0..right_vertices.len())
                    .map(|r| {
                        Matrix::from_fn(src[r].len(), dst[r].len(), |row, col| match a.mul(arrow_path, src[r][row]) {
                            Some(q) if q == dst[r][col] => S::one(),
                            _ => S::zero(),
                        })
                    })
                    .collect();
                ModuleMap { blocks }
            })
            .collect();
        Bimodule { left, right, slices, left_maps }
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    /// The right module `e_l X`.
    pub fn slice(&self, l: usize) -> &Module<S> {
        &self.slices[l]
    }

    pub fn slices(&self) -> &[Module<S>] {
        &self.slices
    }

    pub fn left_arrow_map(&self, a: usize) -> &ModuleMap<S> {
        &self.left_maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.slices.iter().map(|s| s.total_dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    fn left_word_map(&self, word: &[usize]) -> ModuleMap<S> {
        let last = self.left.arrow(*word.last().unwrap()).to;
        let mut m = ModuleMap::identity(&self.slices[last]);
        for &a in word.iter().rev() {
            m = m.then(&self.left_maps[a]);
        }
        m
    }

    /// Left multiplication by the basis path `p: l -> l'` of `L`, as a map
    /// `e_{l'} X -> e_l X`.
    pub fn left_path_map(&self, p: usize) -> ModuleMap<S> {
        let path = self.left.path(p);
        if path.is_trivial() {
            return ModuleMap::identity(&self.slices[path.source]);
        }
        self.left_word_map(&path.arrows)
    }

    /// `X` as a right `R`-module.
    pub fn right_module(&self) -> Module<S> {
        Module::direct_sum_all(self.right.clone(), &self.slices)
    }

    /// The bimodule `X` seen as an `(R^op, L^op)`-bimodule.
    pub fn opposite(&self) -> Bimodule<S> {
        let lop = self.left.opposite_arc();
        let rop = self.right.opposite_arc();
        let nl = self.left.num_vertices();
        let slices: Vec<Module<S>> = (0..self.right.num_vertices())
            .map(|r| {
                let dims: Vec<usize> = (0..nl).map(|l| self.slices[l].dim_at(r)).collect();
                let action = (0..self.left.num_arrows()).map(|ai| self.left_maps[ai].blocks[r].clone()).collect();
                Module::from_parts(lop.clone(), dims, action)
            })
            .collect();
        let left_maps = (0..self.right.num_arrows())
            .map(|bi| ModuleMap { blocks: (0..nl).map(|l| self.slices[l].action(bi).clone()).collect() })
            .collect();
        Bimodule { left: rop, right: lop, slices, left_maps }
    }

    /// `X` as a left `L`-module, i.e. a right `L^op`-module.
    pub fn left_module(&self) -> Module<S> {
        self.opposite().right_module()
    }

    /// The same data as a right module over `L^op ⊗ R`, whose vertex `(l, r)`
    /// has index `l * |R_0| + r`.
    pub fn to_enveloping(&self) -> Result<Module<S>> {
        let env = Arc::new(self.left.opposite().tensor(&self.right)?);
        let nr = self.right.num_vertices();
        let nl = self.left.num_vertices();
        let mut dims = vec![0; nl * nr];
        for l in 0..nl {
            for r in 0..nr {
                dims[l * nr + r] = self.slices[l].dim_at(r);
            }
        }
        let mut action = Vec::new();
        for ai in 0..self.left.num_arrows() {
            for r in 0..nr {
                action.push(self.left_maps[ai].blocks[r].clone());
            }
        }
        for l in 0..nl {
            for bi in 0..self.right.num_arrows() {
                action.push(self.slices[l].action(bi).clone());
            }
        }
        Module::new(env, dims, action)
    }
}

/// `M ⊗_L X` as a right `R`-module: the quotient of `⊕_l M_l ⊗ e_l X` by
/// `m α ⊗ x - m ⊗ α x`.
pub fn tensor_over<S: Scalar>(m: &Module<S>, x: &Bimodule<S>) -> Result<Module<S>> {
    let (l_alg, r_alg) = (&x.left, &x.right);
    if !same_algebra(m.algebra(), l_alg) {
        return Err(Error::InvalidInput("tensor factor over the wrong algebra".into()));
    }
    let nl = l_alg.num_vertices();
    let nr = r_alg.num_vertices();
    // offsets[r][l]: start of the block M_l ⊗ X_{l,r} at vertex r.
    let mut offsets = vec![vec![0; nl + 1]; nr];
    for r in 0..nr {
        for l in 0..nl {
            offsets[r][l + 1] = offsets[r][l] + m.dim_at(l) * x.slices[l].dim_at(r);
        }
    }
    let dims: Vec<usize> = (0..nr).map(|r| offsets[r][nl]).collect();
    let action = r_alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(bi, b)| {
            let mut big = Matrix::zeros(dims[b.from], dims[b.to]);
            for l in 0..nl {
                let block = Matrix::identity(m.dim_at(l)).kron(x.slices[l].action(bi));
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        big[(offsets[b.from][l] + i, offsets[b.to][l] + j)] = block[(i, j)].clone();
                    }
                }
            }
            big
        })
        .collect();
    let big = Module::from_parts(r_alg.clone(), dims.clone(), action);
    let relations: Vec<Subspace<S>> = (0..nr)
        .map(|r| {
            let mut rows = Vec::new();
            for (ai, al) in l_alg.quiver().arrows.iter().enumerate() {
                let (l, l2) = (al.from, al.to);
                let dx = x.slices[l2].dim_at(r);
                let lm = &x.left_maps[ai].blocks[r];
                for i in 0..m.dim_at(l) {
                    let mut e_i = vec![S::zero(); m.dim_at(l)];
                    e_i[i] = S::one();
                    let m_alpha = m.action(ai).apply(&e_i);
                    for j in 0..dx {
                        let mut row = vec![S::zero(); dims[r]];
                        for (k, c) in m_alpha.iter().enumerate() {
                            if !c.is_zero() {
                                row[offsets[r][l2] + k * dx + j] = c.clone();
                            }
                        }
                        let ax = lm.row(j);
                        let dl = x.slices[l].dim_at(r);
                        for (k, c) in ax.iter().enumerate() {
                            if !c.is_zero() {
                                let idx = offsets[r][l] + i * dl + k;
                                row[idx] = row[idx].clone() - c.clone();
                            }
                        }
                        rows.push(row);
                    }
                }
            }
            Subspace::span(rows, dims[r])
        })
        .collect();
    Ok(big.quotient(&relations).0)
}

/// The triangular algebra `A = [B 0; M C]` for a `(C, B)`-bimodule `M`.
///
/// Top generators of `M` become connecting arrows; a crossing path
/// `p γ q` acts as `p t_γ q`. Crossing paths with zero image become monomial
/// relations and crossing paths with equal images become commutations. Any
/// other linear dependence among the images makes `M` not realizable.
pub fn triangular<S: Scalar>(
    b: &Arc<Algebra>,
    c: &Arc<Algebra>,
    m: &Bimodule<S>,
) -> Result<(Algebra, IdempotentSplit)> {
    if !same_algebra(&m.left, c) || !same_algebra(&m.right, b) {
        return Err(Error::InvalidInput("bimodule must be a (C, B)-bimodule".into()));
    }
    let nc = c.num_vertices();
    let nb = b.num_vertices();
    // Radical of M as a bimodule, per slice and vertex.
    let mut gens: Vec<(usize, usize, Vec<S>)> = Vec::new();
    for cv in 0..nc {
        let slice = &m.slices[cv];
        let right_rad = slice.radical_spaces();
        for bv in 0..nb {
            let mut rows: Vec<Vec<S>> = right_rad[bv].basis().to_vec();
            for (ai, al) in c.quiver().arrows.iter().enumerate() {
                if al.from == cv {
                    rows.extend(m.left_maps[ai].blocks[bv].row_vecs());
                }
            }
            let rad = Subspace::span(rows, slice.dim_at(bv));
            for u in rad.complement_units() {
                gens.push((cv, bv, u));
            }
        }
    }
    let b_names: Vec<String> = b.quiver().arrows.iter().map(|a| a.name.clone()).collect();
    let c_names: Vec<String> = c.quiver().arrows.iter().map(|a| a.name.clone()).collect();
    let clash = c.quiver().vertices.iter().any(|v| b.quiver().vertex_index(v).is_some())
        || c_names.iter().any(|n| b_names.contains(n));
    let (pb, pc) = if clash { ("B.", "C.") } else { ("", "") };
    let conn_names: Vec<String> = (0..gens.len()).map(|i| format!("m{}", i + 1)).collect();
    if conn_names.iter().any(|n| b_names.contains(n) || c_names.contains(n)) {
        return Err(Error::InvalidInput("connecting arrow names clash with existing arrows".into()));
    }
    let mut gluing = Gluing::default();
    for (i, (cv, bv, _)) in gens.iter().enumerate() {
        gluing.arrows.push(ConnectingArrow {
            name: conn_names[i].clone(),
            from: c.vertex_label(*cv).to_string(),
            to: b.vertex_label(*bv).to_string(),
        });
    }
    // Images of crossing words, grouped by the slice and vertex they land in.
    struct Crossing<S> {
        word: Vec<String>,
        len: usize,
        image: Vec<S>,
        minimal_zero: bool,
    }
    let mut groups: HashMap<(usize, usize), Vec<Crossing<S>>> = HashMap::new();
    let image_of = |p: usize, g: usize, q: usize| -> Vec<S> {
        let (cv, _, t) = &gens[g];
        let right = m.slices[*cv].path_matrix(q).apply(t);
        let tgt = b.path(q).target;
        m.left_path_map(p).blocks[tgt].apply(&right)
    };
    for (g, (cv, bv, _)) in gens.iter().enumerate() {
        for &p in c.paths_to(*cv) {
            for &q in b.paths_from(*bv) {
                let image = image_of(p, g, q);
                let zero = image.iter().all(|x| x.is_zero());
                let minimal_zero = zero && {
                    let pp = c.path(p);
                    let qp = b.path(q);
                    let drop_first = if pp.is_trivial() {
                        None
                    } else {
                        let w = &pp.arrows[1..];
                        Some(if w.is_empty() { c.trivial(*cv) } else { c.word_class(w).unwrap() })
                    };
                    let drop_last = if qp.is_trivial() {
                        None
                    } else {
                        let w = &qp.arrows[..qp.arrows.len() - 1];
                        Some(if w.is_empty() { b.trivial(*bv) } else { b.word_class(w).unwrap() })
                    };
                    drop_first.is_none_or(|p2| image_of(p2, g, q).iter().any(|x| !x.is_zero()))
                        && drop_last.is_none_or(|q2| image_of(p, g, q2).iter().any(|x| !x.is_zero()))
                };
                let mut word: Vec<String> =
                    c.path(p).arrows.iter().map(|&a| format!("{pc}{}", c_names[a])).collect();
                word.push(conn_names[g].clone());
                word.extend(b.path(q).arrows.iter().map(|&a| format!("{pb}{}", b_names[a])));
                let key = (c.path(p).source, b.path(q).target);
                groups.entry(key).or_default().push(Crossing {
                    word,
                    len: c.path(p).len() + b.path(q).len() + 1,
                    image,
                    minimal_zero,
                });
            }
        }
    }
    let mut keys: Vec<(usize, usize)> = groups.keys().copied().collect();
    keys.sort();
    let mut expected_dim = 0;
    for key in keys {
        let crossings = &groups[&key];
        let mut distinct: Vec<(Vec<S>, usize)> = Vec::new();
        for (i, cr) in crossings.iter().enumerate() {
            if cr.image.iter().all(|x| x.is_zero()) {
                if cr.minimal_zero {
                    gluing.relations.push(cr.word.clone());
                }
                continue;
            }
            match distinct.iter().find(|(img, _)| *img == cr.image) {
                Some(&(_, first)) => {
                    if crossings[first].len != cr.len {
                        return Err(Error::NotMonomialRealizable(format!(
                            "paths {} and {} of different lengths act equally",
                            crossings[first].word.join("*"),
                            cr.word.join("*")
                        )));
                    }
                    gluing.commutations.push((crossings[first].word.clone(), cr.word.clone()));
                }
                None => distinct.push((cr.image.clone(), i)),
            }
        }
        let rows: Vec<Vec<S>> = distinct.iter().map(|(img, _)| img.clone()).collect();
        let d = m.slices[key.0].dim_at(key.1);
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone(), d).rank() };
        if rank != rows.len() || rank != d {
            return Err(Error::NotMonomialRealizable(format!(
                "images of crossing paths from {} to {} are not a basis up to equality",
                c.vertex_label(key.0),
                b.vertex_label(key.1)
            )));
        }
        expected_dim += d;
    }
    for cv in 0..nc {
        for bv in 0..nb {
            if !groups.contains_key(&(cv, bv)) && m.slices[cv].dim_at(bv) > 0 {
                return Err(Error::NotMonomialRealizable("bimodule is not generated by its top".into()));
            }
        }
    }
    let (alg, split) = Algebra::triangular_glue(b, c, &gluing)?;
    if alg.dim() != b.dim() + c.dim() + expected_dim {
        return Err(Error::NotMonomialRealizable(format!(
            "glued algebra has dimension {} instead of {}",
            alg.dim(),
            b.dim() + c.dim() + expected_dim
        )));
    }
    Ok((alg, split))
}
