//! Projective covers, presentations, syzygies and Ext dimensions.

use std::sync::Arc;

use super::{hom_dim, Module, ModuleMap, ProjectiveLayout};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

/// A minimal projective presentation `P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation<S> {
    /// Vertices of the top generators of `M`, i.e. the summands of `P_0`.
    pub gens: Vec<usize>,
    /// The generator vectors `t_i` in `M_{v_i}`.
    pub gen_vectors: Vec<Vec<S>>,
    pub layout: ProjectiveLayout,
    /// The projective cover `P_0`.
    pub cover: Module<S>,
    /// The epimorphism `P_0 -> M`.
    pub epi: ModuleMap<S>,
    /// A vertexwise linear section of `epi`: `section_x * epi_x = id`.
    pub section: Vec<Matrix<S>>,
    /// `Omega M = ker(epi)`.
    pub syzygy: Module<S>,
    /// The inclusion `Omega M -> P_0`.
    pub inclusion: ModuleMap<S>,
    /// Top generators of `Omega M` as vectors of `P_0` at their vertex.
    pub relations: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Module<S> {
    pub fn presentation(&self) -> Arc<Presentation<S>> {
        self.pres_cache.get_or_init(|| Arc::new(build_presentation(self))).clone()
    }

    /// The projective cover `P -> M`; `P` is a sum of `P(v)` with
    /// multiplicity `dim top(M)_v`.
    pub fn projective_cover(&self) -> Result<(Module<S>, ModuleMap<S>)> {
        if self.is_zero() {
            return Err(Error::ZeroModule);
        }
        let p = self.presentation();
        Ok((p.cover.clone(), p.epi.clone()))
    }

    /// `Omega^n M`, the `n`-th minimal syzygy.
    pub fn syzygy(&self, n: usize) -> Module<S> {
        let mut m = self.clone();
        for _ in 0..n {
            if m.is_zero() {
                break;
            }
            m = m.presentation().syzygy.clone();
        }
        m
    }

    /// The map `M -> N` sending the `i`-th top generator of `M` to
    /// `images[i]` in `N_{v_i}`. The images must respect the relations.
    pub fn map_from_generators(&self, n: &Module<S>, images: &[Vec<S>]) -> ModuleMap<S> {
        let pres = self.presentation();
        let alg = self.algebra();
        let blocks = (0..alg.num_vertices())
            .map(|x| {
                let entries = &pres.layout.entries[x];
                let rows: Vec<Vec<S>> =
                    entries.iter().map(|&(g, p)| n.path_matrix(p).apply(&images[g])).collect();
                let eval = Matrix::from_rows(rows, n.dim_at(x));
                &pres.section[x] * &eval
            })
            .collect();
        ModuleMap { blocks }
    }
}

fn build_presentation<S: Scalar>(m: &Module<S>) -> Presentation<S> {
    let alg = m.algebra().clone();
    let n = alg.num_vertices();
    let rad = m.radical_spaces();
    let mut gens = Vec::new();
    let mut gen_vectors = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for u in r.complement_units() {
            gens.push(v);
            gen_vectors.push(u);
        }
    }
    let layout = ProjectiveLayout::new(&alg, &gens);
    let cover = Module::projective_sum(alg.clone(), &gens);
    let epi_blocks: Vec<Matrix<S>> = (0..n)
        .map(|x| {
            let rows: Vec<Vec<S>> =
                layout.entries[x].iter().map(|&(g, p)| m.path_matrix(p).apply(&gen_vectors[g])).collect();
            Matrix::from_rows(rows, m.dim_at(x))
        })
        .collect();
    let section = epi_blocks
        .iter()
        .enumerate()
        .map(|(x, e)| e.solve_left_rows(&Matrix::identity(m.dim_at(x))).expect("the cover map is surjective"))
        .collect();
    let epi = ModuleMap { blocks: epi_blocks };
    let kernel: Vec<Subspace<S>> = epi.kernel_spaces();
    let (syzygy, inclusion) = cover.submodule(&kernel);
    let mut relations = Vec::new();
    for (w, r) in syzygy.radical_spaces().iter().enumerate() {
        for u in r.complement_units() {
            relations.push((w, inclusion.blocks[w].apply(&u)));
        }
    }
    Presentation { gens, gen_vectors, layout, cover, epi, section, syzygy, inclusion, relations }
}

/// `dim Ext^i(M, N)`, computed by dimension shifting along minimal syzygies:
/// `Ext^i(M, N) = Ext^1(Omega^{i-1} M, N)` and, for `0 -> Omega L -> P -> L -> 0`,
/// `dim Ext^1(L, N) = dim Hom(Omega L, N) - dim Hom(P, N) + dim Hom(L, N)`.
pub fn ext_dim<S: Scalar>(m: &Module<S>, n: &Module<S>, i: usize, limit: usize) -> Result<usize> {
    if i > limit {
        return Err(Error::DepthLimitExceeded { limit });
    }
    if i == 0 {
        return Ok(hom_dim(m, n));
    }
    let l = m.syzygy(i - 1);
    if l.is_zero() {
        return Ok(0);
    }
    let pres = l.presentation();
    let hom_p: usize = pres.gens.iter().map(|&v| n.dim_at(v)).sum();
    Ok(hom_dim(&pres.syzygy, n) + hom_dim(&l, n) - hom_p)
}
