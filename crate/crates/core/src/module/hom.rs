//! Hom spaces between modules.
//!
//! A map `M -> N` is determined by the images of the top generators of `M`,
//! subject to the relations of a minimal presentation, so the linear system
//! has one unknown block `N_{v_i}` per generator.

use super::{Module, ModuleMap};
use crate::linalg::{Matrix, Scalar};

/// Constraint matrix whose left kernel is `Hom(M, N)` in generator-image
/// coordinates.
fn constraints<S: Scalar>(m: &Module<S>, n: &Module<S>) -> (Matrix<S>, Vec<usize>) {
    let pres = m.presentation();
    let mut offsets = Vec::with_capacity(pres.gens.len() + 1);
    offsets.push(0);
    for &v in &pres.gens {
        offsets.push(offsets.last().unwrap() + n.dim_at(v));
    }
    let vars = *offsets.last().unwrap();
    let mut col_off = Vec::with_capacity(pres.relations.len() + 1);
    col_off.push(0);
    for (w, _) in &pres.relations {
        col_off.push(col_off.last().unwrap() + n.dim_at(*w));
    }
    let mut c: Matrix<S> = Matrix::zeros(vars, *col_off.last().unwrap());
    for (j, (w, r)) in pres.relations.iter().enumerate() {
        for (coef, &(g, p)) in r.iter().zip(&pres.layout.entries[*w]) {
            if coef.is_zero() {
                continue;
            }
            let np = n.path_matrix(p);
            for t in 0..np.rows() {
                for l in 0..np.cols() {
                    let e = &np[(t, l)];
                    if !e.is_zero() {
                        let (row, col) = (offsets[g] + t, col_off[j] + l);
                        c[(row, col)] = c[(row, col)].clone() + coef.clone() * e.clone();
                    }
                }
            }
        }
    }
    (c, offsets)
}

/// A basis of `Hom(M, N)`, in canonical echelon order of generator images.
pub fn hom_space<S: Scalar>(m: &Module<S>, n: &Module<S>) -> Vec<ModuleMap<S>> {
    if m.is_zero() || n.is_zero() {
        return Vec::new();
    }
    let (c, offsets) = constraints(m, n);
    c.kernel_basis()
        .into_iter()
        .map(|v| {
            let images: Vec<Vec<S>> = offsets.windows(2).map(|w| v[w[0]..w[1]].to_vec()).collect();
            m.map_from_generators(n, &images)
        })
        .collect()
}

pub fn hom_dim<S: Scalar>(m: &Module<S>, n: &Module<S>) -> usize {
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    let (c, _) = constraints(m, n);
    c.rows() - c.rank()
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn hom_examples() {
        let s1 = Module::<Q>::simple(a2(), 0);
        let s2 = Module::<Q>::simple(a2(), 1);
        let p1 = Module::<Q>::projective(a2(), 0);
        assert!(hom_space(&s1, &s2).is_empty());
        assert_eq!(hom_space(&p1, &s1).len(), 1);
        assert_eq!(hom_dim(&s2, &p1), 1);
        assert_eq!(hom_dim(&p1, &s2), 0);
    }

    #[test]
    fn hom_contains_identity_and_maps_commute() {
        let modules = vec![
            Module::<Q>::regular(a2()),
            a2_rep(0),
            Module::<Q>::regular(dual_numbers()).direct_sum(&Module::simple(dual_numbers(), 0)),
            Module::<Q>::regular(nakayama(true, &[3, 2])),
        ];
        for m in &modules {
            let basis = hom_space(m, m);
            for f in &basis {
                assert!(f.is_homomorphism(m, m));
            }
            let stacked: Vec<Vec<Q>> = basis
                .iter()
                .map(|f| f.blocks.iter().flat_map(|b| b.entries().to_vec()).collect())
                .collect();
            let id: Vec<Q> = ModuleMap::identity(m).blocks.iter().flat_map(|b| b.entries().to_vec()).collect();
            let space = crate::linalg::Subspace::span(stacked, id.len());
            assert!(space.contains(&id));
        }
    }

    #[test]
    fn hom_dim_matches_direct_solve() {
        let alg = nakayama(false, &[3, 2, 1]);
        let mods: Vec<Module<Q>> = (0..3)
            .flat_map(|v| [Module::projective(alg.clone(), v), Module::simple(alg.clone(), v)])
            .collect();
        for m in &mods {
            for n in &mods {
                assert_eq!(hom_dim(m, n), naive_hom_dim(m, n));
            }
        }
    }

    /// Solves the vertexwise commutation equations directly.
    fn naive_hom_dim(m: &Module<Q>, n: &Module<Q>) -> usize {
        let alg = m.algebra();
        let nv = alg.num_vertices();
        let mut off = vec![0];
        for v in 0..nv {
            off.push(off[v] + m.dim_at(v) * n.dim_at(v));
        }
        let mut eqs: Vec<Vec<Q>> = Vec::new();
        for (ai, a) in alg.quiver().arrows.iter().enumerate() {
            let (u, v) = (a.from, a.to);
            for i in 0..m.dim_at(u) {
                for l in 0..n.dim_at(v) {
                    let mut row = vec![Q::from_i64(0); off[nv]];
                    for j in 0..n.dim_at(u) {
                        row[off[u] + i * n.dim_at(u) + j] += n.action(ai)[(j, l)].clone();
                    }
                    for k in 0..m.dim_at(v) {
                        row[off[v] + k * n.dim_at(v) + l] -= m.action(ai)[(i, k)].clone();
                    }
                    eqs.push(row);
                }
            }
        }
        if eqs.is_empty() {
            return off[nv];
        }
        off[nv] - Matrix::from_rows(eqs, off[nv]).rank()
    }
}
