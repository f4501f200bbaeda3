//! Endomorphism algebras, Krull–Schmidt decompositions and isomorphism
//! tests.
//!
//! The Jacobson radical of `End(M)` is the kernel of the trace form
//! `(x, y) -> tr_M(x y)`, valid in characteristic zero or larger than
//! `dim M`. Decompositions split along Fitting decompositions of suitable
//! endomorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::module::{hom_space, Module, ModuleMap};

/// `End(M)` with a basis of module maps.
#[derive(Clone, Debug)]
pub struct EndoAlgebra<S> {
    pub module: Module<S>,
    pub basis: Vec<ModuleMap<S>>,
}

fn flatten<S: Scalar>(f: &ModuleMap<S>) -> Vec<S> {
    f.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
}

/// Fails unless the trace criterion is sound for modules of dimension `dim`.
pub fn check_characteristic(field: &FieldSpec, dim: usize) -> Result<()> {
    if let FieldSpec::Prime { p } = field {
        if (*p as u128) <= dim as u128 {
            return Err(Error::FieldUnsupported(format!(
                "characteristic {p} does not exceed the module dimension {dim}"
            )));
        }
    }
    Ok(())
}

impl<S: Scalar> EndoAlgebra<S> {
    pub fn new(m: &Module<S>) -> Self {
        EndoAlgebra { module: m.clone(), basis: hom_space(m, m) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn span(&self) -> Subspace<S> {
        let len = self.module.dims().iter().map(|d| d * d).sum();
        Subspace::span(self.basis.iter().map(flatten).collect(), len)
    }

    /// Structure constants: row `i * dim + j` holds the coordinates of
    /// `b_i` followed by `b_j`, relative to the echelon form of the span.
    pub fn multiplication_table(&self) -> Vec<Vec<S>> {
        let span = self.span();
        let mut out = Vec::with_capacity(self.dim() * self.dim());
        for bi in &self.basis {
            for bj in &self.basis {
                out.push(span.coords(&flatten(&bi.then(bj))).expect("End(M) is closed under composition"));
            }
        }
        out
    }

    /// Coordinates (relative to `basis`) of a basis of the Jacobson radical.
    pub fn radical(&self) -> Result<Vec<Vec<S>>> {
        check_characteristic(&S::field_spec(), self.module.total_dim())?;
        let n = self.dim();
        if n == 0 {
            return Ok(Vec::new());
        }
        let g = Matrix::from_fn(n, n, |i, j| trace_of_product(&self.basis[i], &self.basis[j]));
        Ok(g.kernel_basis())
    }

    pub fn element(&self, coords: &[S]) -> ModuleMap<S> {
        let mut acc = ModuleMap::zero(&self.module, &self.module);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

fn trace_of_product<S: Scalar>(f: &ModuleMap<S>, g: &ModuleMap<S>) -> S {
    let mut t = S::zero();
    for (a, b) in f.blocks.iter().zip(&g.blocks) {
        for k in 0..a.rows() {
            for l in 0..a.cols() {
                let x = &a[(k, l)];
                if !x.is_zero() {
                    t = t + x.clone() * b[(l, k)].clone();
                }
            }
        }
    }
    t
}

/// The radical of `End(M)` as module maps.
pub fn radical_of_endo<S: Scalar>(e: &EndoAlgebra<S>) -> Result<Vec<ModuleMap<S>>> {
    Ok(e.radical()?.iter().map(|c| e.element(c)).collect())
}

/// An indecomposable summand of a module together with split maps.
#[derive(Clone, Debug)]
pub struct Piece<S> {
    pub module: Module<S>,
    pub inclusion: ModuleMap<S>,
    pub projection: ModuleMap<S>,
    /// `End/rad` has dimension above one and no splitting endomorphism was
    /// found, so the summand is indecomposable but not absolutely so.
    pub unsplit: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    /// Indecomposable summands with multiplicities, in canonical order.
    pub summands: Vec<(Module<S>, usize)>,
    /// Every summand occurrence with its split inclusion and projection.
    pub pieces: Vec<Piece<S>>,
}

impl<S: Scalar> Decomposition<S> {
    pub fn unsplit_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.unsplit).count()
    }

    /// Checks that the witnesses exhibit the original module as the direct
    /// sum of the pieces.
    pub fn verify(&self, m: &Module<S>) -> bool {
        let mut sum = ModuleMap::zero(m, m);
        for (i, p) in self.pieces.iter().enumerate() {
            if !p.inclusion.is_homomorphism(&p.module, m) || !p.projection.is_homomorphism(m, &p.module) {
                return false;
            }
            for (j, q) in self.pieces.iter().enumerate() {
                let comp = p.inclusion.then(&q.projection);
                let ok = if i == j { comp == ModuleMap::identity(&p.module) } else { comp.is_zero() };
                if !ok {
                    return false;
                }
            }
            sum = sum.add(&p.projection.then(&p.inclusion));
        }
        sum == ModuleMap::identity(m)
    }
}

/// Krull–Schmidt decomposition of `M`.
pub fn decompose<S: Scalar>(m: &Module<S>) -> Result<Decomposition<S>> {
    check_characteristic(&S::field_spec(), m.total_dim())?;
    let mut pieces = Vec::new();
    split_recursive(m, ModuleMap::identity(m), ModuleMap::identity(m), &mut pieces)?;
    let mut classes: Vec<(Module<S>, usize, Vec<usize>)> = Vec::new();
    for p in &pieces {
        let profile = p.module.rank_profile();
        let mut found = false;
        for (rep, count, prof) in classes.iter_mut() {
            if *prof == profile && indecomposables_isomorphic(rep, &p.module) {
                *count += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push((p.module.clone(), 1, profile));
        }
    }
    classes.sort_by(|a, b| (a.0.dims(), &a.2).cmp(&(b.0.dims(), &b.2)));
    let summands = classes.into_iter().map(|(m, c, _)| (m, c)).collect();
    Ok(Decomposition { summands, pieces })
}

fn split_recursive<S: Scalar>(
    m: &Module<S>,
    incl: ModuleMap<S>,
    proj: ModuleMap<S>,
    out: &mut Vec<Piece<S>>,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let supports = unit_supports(m);
    if supports.len() > 1 {
        for sup in supports {
            let spaces: Vec<Subspace<S>> = sup
                .iter()
                .enumerate()
                .map(|(v, idx)| {
                    let rows = idx
                        .iter()
                        .map(|&i| {
                            let mut e = vec![S::zero(); m.dim_at(v)];
                            e[i] = S::one();
                            e
                        })
                        .collect();
                    Subspace::span(rows, m.dim_at(v))
                })
                .collect();
            let (sub, ci) = m.submodule(&spaces);
            let cp = ModuleMap { blocks: ci.blocks.iter().map(|b| b.transpose()).collect() };
            split_recursive(&sub, ci.then(&incl), proj.then(&cp), out)?;
        }
        return Ok(());
    }
    match find_split(m)? {
        Split::Indecomposable { unsplit } => {
            out.push(Piece { module: m.clone(), inclusion: incl, projection: proj, unsplit });
        }
        Split::Pair(parts) => {
            for (sub, si, sp) in parts {
                split_recursive(&sub, si.then(&incl), proj.then(&sp), out)?;
            }
        }
    }
    Ok(())
}

/// For each connected block of basis vectors (linked by nonzero action
/// entries), the indices of the unit vectors spanning it at every vertex.
fn unit_supports<S: Scalar>(m: &Module<S>) -> Vec<Vec<Vec<usize>>> {
    let n = m.algebra().num_vertices();
    let mut off = vec![0; n + 1];
    for v in 0..n {
        off[v + 1] = off[v] + m.dim_at(v);
    }
    let total = off[n];
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    for (ai, a) in m.algebra().quiver().arrows.iter().enumerate() {
        let mat = m.action(ai);
        for r in 0..mat.rows() {
            for c in 0..mat.cols() {
                if !mat[(r, c)].is_zero() {
                    let (x, y) = (find(&mut parent, off[a.from] + r), find(&mut parent, off[a.to] + c));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
    }
    let roots: Vec<usize> = (0..total).map(|i| find(&mut parent, i)).collect();
    let mut order = roots.clone();
    order.sort();
    order.dedup();
    order
        .iter()
        .map(|&root| {
            (0..n).map(|v| (0..m.dim_at(v)).filter(|&i| roots[off[v] + i] == root).collect()).collect()
        })
        .collect()
}

enum Split<S> {
    Indecomposable { unsplit: bool },
    Pair(Vec<(Module<S>, ModuleMap<S>, ModuleMap<S>)>),
}

fn find_split<S: Scalar>(m: &Module<S>) -> Result<Split<S>> {
    let e = EndoAlgebra::new(m);
    if e.dim() <= 1 {
        return Ok(Split::Indecomposable { unsplit: false });
    }
    let rad = e.radical()?;
    if e.dim() - rad.len() == 1 {
        return Ok(Split::Indecomposable { unsplit: false });
    }
    let rad_space = Subspace::span(rad, e.dim());
    let unit = |i: usize| {
        let mut v = vec![S::zero(); e.dim()];
        v[i] = S::one();
        v
    };
    let outside: Vec<usize> = (0..e.dim()).filter(|&i| !rad_space.contains(&unit(i))).collect();
    let mut candidates: Vec<ModuleMap<S>> = outside.iter().map(|&i| e.basis[i].clone()).collect();
    for (x, &i) in outside.iter().enumerate() {
        for &j in &outside[x + 1..] {
            candidates.push(e.basis[i].add(&e.basis[j]));
            candidates.push(e.basis[i].then(&e.basis[j]));
            candidates.push(e.basis[j].then(&e.basis[i]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let coords: Vec<S> = (0..e.dim()).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect();
        candidates.push(e.element(&coords));
    }
    for phi in &candidates {
        if let Some(parts) = fitting_split(m, phi) {
            return Ok(Split::Pair(parts));
        }
    }
    Ok(Split::Indecomposable { unsplit: true })
}

/// Tries `phi - λ` for `λ` ranging over zero and the eigenvalues of `phi`
/// in the ground field; on success returns `M = im ψ^N ⊕ ker ψ^N`.
fn fitting_split<S: Scalar>(
    m: &Module<S>,
    phi: &ModuleMap<S>,
) -> Option<Vec<(Module<S>, ModuleMap<S>, ModuleMap<S>)>> {
    let mut shifts = vec![S::zero()];
    for b in &phi.blocks {
        if b.rows() == 0 {
            continue;
        }
        for r in S::roots_in_field(&b.char_poly()) {
            if !shifts.contains(&r) {
                shifts.push(r);
            }
        }
    }
    let big_n = m.dims().iter().copied().max().unwrap_or(0) as u32;
    for lambda in shifts {
        let psi = ModuleMap {
            blocks: phi.blocks.iter().map(|b| b - &Matrix::scalar(b.rows(), lambda.clone())).collect(),
        };
        let power = ModuleMap { blocks: psi.blocks.iter().map(|b| b.pow(big_n)).collect() };
        if power.is_zero() || power.is_iso() {
            continue;
        }
        let image = power.image_spaces();
        let kernel = power.kernel_spaces();
        let (im_mod, im_incl) = m.submodule(&image);
        let (ker_mod, ker_incl) = m.submodule(&kernel);
        // Change of basis [image; kernel] gives the complementary projections.
        let mut im_proj = Vec::new();
        let mut ker_proj = Vec::new();
        for v in 0..m.algebra().num_vertices() {
            let t = im_incl.blocks[v].vstack(&ker_incl.blocks[v]);
            let inv = t.inverse().expect("Fitting decomposition is direct");
            let r = image[v].dim();
            im_proj.push(inv.submatrix(0, 0, inv.rows(), r));
            ker_proj.push(inv.submatrix(0, r, inv.rows(), inv.cols() - r));
        }
        return Some(vec![
            (im_mod, im_incl, ModuleMap { blocks: im_proj }),
            (ker_mod, ker_incl, ModuleMap { blocks: ker_proj }),
        ]);
    }
    None
}

/// Isomorphism test for indecomposable modules: some composition of basis
/// maps `X -> Y -> X` is invertible.
pub fn indecomposables_isomorphic<S: Scalar>(x: &Module<S>, y: &Module<S>) -> bool {
    if x.dims() != y.dims() {
        return false;
    }
    if x == y {
        return true;
    }
    let f = hom_space(x, y);
    if f.is_empty() {
        return false;
    }
    let g = hom_space(y, x);
    f.iter().any(|fi| fi.is_iso()) || f.iter().any(|fi| g.iter().any(|gj| fi.then(gj).is_iso()))
}

/// Whether `M ≅ N`, by matching indecomposable summands with multiplicities.
pub fn is_isomorphic<S: Scalar>(m: &Module<S>, n: &Module<S>) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m == n {
        return Ok(true);
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(false);
    }
    let mut used = vec![false; dn.summands.len()];
    for (x, cx) in &dm.summands {
        let hit = dn.summands.iter().enumerate().position(|(j, (y, cy))| {
            !used[j] && cx == cy && x.rank_profile() == y.rank_profile() && indecomposables_isomorphic(x, y)
        });
        match hit {
            Some(j) => used[j] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// All indecomposable modules of a Nakayama algebra: the uniserial
/// quotients `P_i / rad^j P_i` for `1 <= j <= length(P_i)`.
pub fn enumerate_indecomposables<S: Scalar>(alg: &std::sync::Arc<crate::algebra::Algebra>) -> Result<Vec<Module<S>>> {
    let shape = alg
        .nakayama_shape()
        .ok_or_else(|| Error::NotNakayama("some vertex has two incoming or outgoing arrows".into()))?;
    let mut out = Vec::new();
    for (i, &len) in shape.kupisch.iter().enumerate() {
        let p = Module::<S>::projective(alg.clone(), i);
        for j in 1..=len {
            let (q, _) = p.quotient(&p.radical_power(j));
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn radical_examples() {
        let k = Module::<Q>::simple(field_alg(), 0);
        assert!(EndoAlgebra::new(&k).radical().unwrap().is_empty());
        let ss = Module::<Q>::simple(a2(), 0).power(2);
        let e = EndoAlgebra::new(&ss);
        assert_eq!(e.dim(), 4);
        assert!(e.radical().unwrap().is_empty());
        let reg = Module::<Q>::regular(dual_numbers());
        let e = EndoAlgebra::new(&reg);
        assert_eq!(e.dim(), 2);
        let rad = radical_of_endo(&e).unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].rank(), 1);
        assert!(rad[0].then(&rad[0]).is_zero());
    }

    #[test]
    fn multiplication_table_has_identity_row_structure() {
        let e = EndoAlgebra::new(&Module::<Q>::regular(dual_numbers()));
        assert_eq!(e.multiplication_table().len(), 4);
    }

    #[test]
    fn decompose_examples() {
        let s1 = Module::<Q>::simple(a2(), 0);
        let p2 = Module::<Q>::projective(a2(), 1);
        let m = s1.power(2).direct_sum(&p2);
        let d = decompose(&m).unwrap();
        assert_eq!(d.summands.len(), 2);
        assert!(d.verify(&m));
        let find = |x: &Module<Q>| d.summands.iter().find(|(y, _)| y == x).map(|(_, c)| *c);
        assert_eq!(find(&s1), Some(2));
        assert_eq!(find(&p2), Some(1));
        let p1 = Module::<Q>::projective(a2(), 0);
        assert_eq!(decompose(&p1).unwrap().summands, vec![(p1.clone(), 1)]);
        let split = decompose(&a2_rep(0)).unwrap();
        assert_eq!(split.summands.len(), 2);
    }

    #[test]
    fn decompose_hidden_sum_after_basis_change() {
        let alg = nakayama(false, &[3, 2, 1]);
        let m = Module::<Q>::regular(alg.clone()).direct_sum(&Module::simple(alg.clone(), 1));
        let g: Vec<Matrix<Q>> = m
            .dims()
            .iter()
            .map(|&d| Matrix::from_fn(d, d, |r, c| Q::from_i64(if r <= c { 1 + (r + 2 * c) as i64 % 3 } else { 0 })))
            .collect();
        let hidden = m.change_basis(&g);
        assert_eq!(hidden.block_components().len(), 1);
        let d = decompose(&hidden).unwrap();
        assert_eq!(d.pieces.len(), 4);
        assert!(d.verify(&hidden));
        assert!(is_isomorphic(&hidden, &m).unwrap());
    }

    #[test]
    fn iso_examples() {
        let p1 = Module::<Q>::projective(a2(), 0);
        let ss = Module::<Q>::simple(a2(), 0).direct_sum(&Module::simple(a2(), 1));
        assert!(is_isomorphic(&p1, &p1).unwrap());
        assert!(!is_isomorphic(&p1, &ss).unwrap());
        assert!(!is_isomorphic(&Module::<Q>::simple(a2(), 0), &Module::simple(a2(), 1)).unwrap());
        assert!(is_isomorphic(&a2_rep(1), &a2_rep(5)).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_indecomposables::<Q>(&dual_numbers()).unwrap().len(), 2);
        assert_eq!(enumerate_indecomposables::<Q>(&a2()).unwrap().len(), 3);
        let r = nakayama(false, &[2, 2, 1]);
        let all = enumerate_indecomposables::<Q>(&r).unwrap();
        assert_eq!(all.len(), 5);
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                assert!(!indecomposables_isomorphic(x, y));
            }
        }
    }

    #[test]
    fn prime_field_floor() {
        use crate::linalg::Fp;
        use std::sync::Arc;
        let mut q = crate::algebra::Quiver::new(vec!["1".into()]);
        q.add_arrow("x", 0, 0);
        let alg = Arc::new(
            crate::algebra::Algebra::monomial(q, vec![vec![0, 0, 0]], FieldSpec::Prime { p: 2 }).unwrap(),
        );
        let m = Module::<Fp<2>>::regular(alg);
        assert!(matches!(decompose(&m), Err(Error::FieldUnsupported(_))));
    }

    fn random_module(seed: u64) -> Module<Q> {
        let alg = nakayama(true, &[3, 2, 3]);
        let all = enumerate_indecomposables::<Q>(&alg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=3);
        let parts: Vec<Module<Q>> = (0..k).map(|_| all[rng.gen_range(0..all.len())].clone()).collect();
        Module::direct_sum_all(alg, &parts)
    }

    fn random_basis_change(m: &Module<Q>, seed: u64) -> Module<Q> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: Vec<Matrix<Q>> = m
            .dims()
            .iter()
            .map(|&d| loop {
                let c = Matrix::from_fn(d, d, |_, _| Q::from_i64(rng.gen_range(-2..=2)));
                if c.rank() == d {
                    break c;
                }
            })
            .collect();
        m.change_basis(&g)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn iso_invariant_under_basis_change(seed in 0u64..10_000) {
            let m = random_module(seed);
            let n = random_basis_change(&m, seed + 1);
            prop_assert!(is_isomorphic(&m, &n).unwrap());
            prop_assert!(is_isomorphic(&n, &m).unwrap());
            let d = decompose(&n).unwrap();
            prop_assert!(d.verify(&n));
            for p in &d.pieces {
                let e = EndoAlgebra::new(&p.module);
                prop_assert_eq!(e.dim() - e.radical().unwrap().len(), 1);
            }
        }
    }
}
