//! The Igusa-Todorov function: the K-group of indecomposable non-projective
//! classes, the syzygy endomorphism on it, `phi` by rank stabilization,
//! `phi`-dimension and d-Division certificates.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::decomp::enumerate_indecomposables;
use crate::error::{Error, Result};
use num_traits::Zero;

use crate::linalg::{Matrix, Rational, Scalar};
use crate::module::{ext_dim, Module};
use crate::session::{HomDim, KClassVector, Registry, Session};

/// Number of extra steps over which rank constancy is re-checked.
pub const CONFIRMATION_WINDOW: usize = 8;

/// Rank of the integer matrix whose rows are `vectors`.
pub fn subgroup_rank(vectors: &[KClassVector]) -> usize {
    let mut cols: Vec<usize> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
    cols.sort_unstable();
    cols.dedup();
    let m = Matrix::<Rational>::from_fn(vectors.len(), cols.len(), |i, j| {
        Rational::from_i64(vectors[i].get(&cols[j]).copied().unwrap_or(0) as i64)
    });
    m.rank()
}

/// `phi(M)` with the rank sequence that determined it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phi {
    pub value: usize,
    /// `rank Omega^n <M>` for `n = 0..=value + 1`.
    pub trace: Vec<usize>,
}

/// The syzygy endomorphism of `K` restricted to the classes reachable from
/// some roots.
#[derive(Clone, Debug)]
pub struct Transfer {
    pub classes: Vec<usize>,
    index: BTreeMap<usize, usize>,
    matrix: Matrix<Rational>,
}

impl Transfer {
    pub fn new<S: Scalar>(reg: &Registry<S>, roots: &[usize], limit: usize) -> Result<Self> {
        let ex = reg.explore(roots, limit)?;
        if !ex.complete {
            return Err(Error::DepthLimitExceeded { limit });
        }
        let classes = ex.order.clone();
        let index: BTreeMap<usize, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n = classes.len();
        let mut matrix = Matrix::<Rational>::zeros(n, n);
        for (i, c) in classes.iter().enumerate() {
            for (d, &mult) in &ex.edges[c].classes {
                matrix[(i, index[d])] = Rational::from_i64(mult as i64);
            }
        }
        Ok(Transfer { classes, index, matrix })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Row vector of a K-class over the reachable classes.
    pub fn row(&self, v: &KClassVector) -> Vec<Rational> {
        let mut row = vec![Rational::from_i64(0); self.len()];
        for (c, &m) in v {
            row[self.index[c]] = Rational::from_i64(m as i64);
        }
        row
    }

    /// Image of a row vector under `Omega^d`.
    pub fn apply_power(&self, row: &[Rational], d: usize) -> Vec<Rational> {
        let mut cur = Matrix::from_rows(vec![row.to_vec()], self.len());
        for _ in 0..d {
            cur = &cur * &self.matrix;
        }
        cur.row(0).to_vec()
    }

    /// `rank Omega^n` of the span of `generators`, for `n = 0..=steps`.
    pub fn rank_sequence(&self, generators: &[usize], steps: usize) -> Vec<usize> {
        let n = self.len();
        let rows: Vec<Vec<Rational>> = generators
            .iter()
            .map(|g| (0..n).map(|j| Rational::from_i64((j == self.index[g]) as i64)).collect())
            .collect();
        let mut cur = Matrix::from_rows(rows, n);
        let mut out = Vec::with_capacity(steps + 1);
        for step in 0..=steps {
            let (r, pivots) = cur.rref();
            out.push(pivots.len());
            if step < steps {
                cur = &r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()) * &self.matrix;
            }
        }
        out
    }
}

fn reachability_limit(alg: &Algebra, session_limit: usize, roots: usize) -> usize {
    session_limit.max(alg.dim() + roots + 3)
}

/// `phi` of the subgroup generated by registered classes.
pub fn phi_of_classes<S: Scalar>(reg: &Registry<S>, roots: &[usize], limit: usize) -> Result<Phi> {
    if roots.is_empty() {
        return Ok(Phi { value: 0, trace: vec![0, 0] });
    }
    let limit = reachability_limit(reg.algebra(), limit, roots.len());
    let t = Transfer::new(reg, roots, limit)?;
    let steps = t.len() + CONFIRMATION_WINDOW;
    let ranks = t.rank_sequence(roots, steps);
    if ranks.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidInput("syzygy rank increased; decomposition is inconsistent".into()));
    }
    let stable = *ranks.last().unwrap();
    let value = ranks.iter().position(|&r| r == stable).unwrap();
    if ranks[value..].iter().any(|&r| r != stable) || value + CONFIRMATION_WINDOW > steps {
        return Err(Error::InvalidInput("syzygy rank did not stay constant over the confirmation window".into()));
    }
    Ok(Phi { value, trace: ranks[..=value + 1].to_vec() })
}

/// The Igusa-Todorov function of `M`.
pub fn phi<S: Scalar>(session: &Session<S>, m: &Module<S>) -> Result<Phi> {
    let reg = session.registry(m.algebra());
    let k = reg.k_class(m)?;
    let roots: Vec<usize> = k.keys().copied().collect();
    phi_of_classes(&reg, &roots, session.limit())
}

/// How `phi`-dimension is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiDimMode {
    /// Over all indecomposables of a Nakayama algebra.
    RepFinite,
    /// As the global dimension, when that is finite.
    GldimFinite,
    /// Over the syzygy closure of simples, projective quotients and injective
    /// submodules; a lower bound.
    Corpus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiDim {
    pub value: usize,
    pub exact: bool,
    pub mode: PhiDimMode,
}

fn register_all<S: Scalar>(reg: &Registry<S>, modules: &[Module<S>]) -> Result<Vec<usize>> {
    let mut roots = Vec::new();
    for m in modules {
        roots.extend(reg.k_class(m)?.into_keys());
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Truncations `P_i / rad^j P_i` of the indecomposable projectives and the
/// duals of the corresponding truncations over the opposite algebra.
pub fn corpus_modules<S: Scalar>(alg: &Arc<Algebra>) -> Vec<Module<S>> {
    let mut out = Vec::new();
    let ll = alg.loewy_length();
    let op = alg.opposite_arc();
    for (a, dualize) in [(alg.clone(), false), (op, true)] {
        for v in 0..a.num_vertices() {
            let p = Module::<S>::projective(a.clone(), v);
            for j in 1..=ll {
                let (q, _) = p.quotient(&p.radical_power(j));
                if !q.is_zero() {
                    out.push(if dualize { q.dual() } else { q });
                }
            }
        }
    }
    out
}

/// `phi dim(A)` in the requested mode.
pub fn phi_dim<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>, mode: PhiDimMode) -> Result<PhiDim> {
    let reg = session.registry(alg);
    match mode {
        PhiDimMode::RepFinite => {
            let roots = register_all(&reg, &enumerate_indecomposables::<S>(alg)?)?;
            let p = phi_of_classes(&reg, &roots, session.limit())?;
            Ok(PhiDim { value: p.value, exact: true, mode })
        }
        PhiDimMode::GldimFinite => {
            let simples: Vec<Module<S>> = (0..alg.num_vertices()).map(|v| Module::simple(alg.clone(), v)).collect();
            let sum = Module::direct_sum_all(alg.clone(), &simples);
            match session.pd(&sum)? {
                HomDim::Zero => Ok(PhiDim { value: 0, exact: true, mode }),
                HomDim::Finite(d) => Ok(PhiDim { value: d, exact: true, mode }),
                HomDim::Infinite { .. } => {
                    Err(Error::InvalidInput("global dimension is infinite; gldim-finite mode does not apply".into()))
                }
                HomDim::Unknown { limit } => Err(Error::DepthLimitExceeded { limit }),
            }
        }
        PhiDimMode::Corpus => {
            let roots = register_all(&reg, &corpus_modules::<S>(alg))?;
            let p = phi_of_classes(&reg, &roots, session.limit())?;
            Ok(PhiDim { value: p.value, exact: false, mode })
        }
    }
}

/// A sound witness of a d-Division `(X, Y)` of `M`: `Omega^d X` and
/// `Omega^d Y` agree up to projective summands, so the functors
/// `Ext^{d+1}(X, -)` and `Ext^{d+1}(Y, -)` are isomorphic, while
/// `test` separates `Ext^d(X, -)` from `Ext^d(Y, -)`.
#[derive(Clone, Debug)]
pub struct DivisionCertificate<S> {
    pub d: usize,
    pub x: KClassVector,
    pub y: KClassVector,
    pub test: Module<S>,
    pub ext_x: usize,
    pub ext_y: usize,
}

/// Largest number of distinct non-projective summands searched exhaustively.
pub const DIVISION_SEARCH_CLASSES: usize = 6;

fn coefficient_vectors(r: usize) -> impl Iterator<Item = Vec<i64>> {
    let total = 5usize.pow(r as u32);
    (0..total).map(move |mut code| {
        let mut c = Vec::with_capacity(r);
        for _ in 0..r {
            c.push((code % 5) as i64 - 2);
            code /= 5;
        }
        c
    })
}

fn class_sum<S: Scalar>(reg: &Registry<S>, v: &KClassVector) -> Module<S> {
    let parts: Vec<Module<S>> = v.iter().map(|(&c, &m)| reg.module(c).power(m)).collect();
    Module::direct_sum_all(reg.algebra().clone(), &parts)
}

/// Certified d-Divisions of `M` for `1 <= d <= window`, at most one per `d`.
/// The search covers pairs with multiplicities up to two among the first
/// [`DIVISION_SEARCH_CLASSES`] non-projective summand classes.
pub fn division_certificates<S: Scalar>(
    session: &Session<S>,
    m: &Module<S>,
    window: usize,
) -> Result<Vec<DivisionCertificate<S>>> {
    let alg = m.algebra().clone();
    let reg = session.registry(&alg);
    let k = reg.k_class(m)?;
    let mut gens: Vec<usize> = k.keys().copied().collect();
    gens.truncate(DIVISION_SEARCH_CLASSES);
    if gens.len() < 2 {
        return Ok(Vec::new());
    }
    let limit = reachability_limit(&alg, session.limit(), gens.len());
    let t = Transfer::new(&reg, &gens, limit)?;

    let mut tests: Vec<Module<S>> = Vec::new();
    for v in 0..alg.num_vertices() {
        tests.push(Module::simple(alg.clone(), v));
        tests.push(Module::projective(alg.clone(), v));
        tests.push(Module::injective(alg.clone(), v));
    }
    tests.extend(t.classes.iter().map(|&c| reg.module(c)));

    let mut out = Vec::new();
    for d in 1..=window {
        let images: Vec<Vec<Rational>> = gens
            .iter()
            .map(|g| t.apply_power(&t.row(&KClassVector::from([(*g, 1)])), d))
            .collect();
        'coeffs: for c in coefficient_vectors(gens.len()) {
            if !c.iter().any(|&x| x > 0) || !c.iter().any(|&x| x < 0) {
                continue;
            }
            let first_pos = c.iter().position(|&x| x > 0).unwrap();
            let first_neg = c.iter().position(|&x| x < 0).unwrap();
            if first_neg < first_pos {
                continue;
            }
            let zero = (0..t.len()).all(|j| {
                let mut s = Rational::from_i64(0);
                for (i, &ci) in c.iter().enumerate() {
                    s = s + images[i][j].clone() * Rational::from_i64(ci);
                }
                s.is_zero()
            });
            if !zero {
                continue;
            }
            let x: KClassVector = gens.iter().zip(&c).filter(|(_, &ci)| ci > 0).map(|(&g, &ci)| (g, ci as usize)).collect();
            let y: KClassVector = gens.iter().zip(&c).filter(|(_, &ci)| ci < 0).map(|(&g, &ci)| (g, (-ci) as usize)).collect();
            let (xm, ym) = (class_sum(&reg, &x), class_sum(&reg, &y));
            for test in &tests {
                let ext_x = ext_dim(&xm, test, d, session.limit().max(d))?;
                let ext_y = ext_dim(&ym, test, d, session.limit().max(d))?;
                if ext_x != ext_y {
                    out.push(DivisionCertificate { d, x, y, test: test.clone(), ext_x, ext_y });
                    break 'coeffs;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;
    use crate::module::Module;

    #[test]
    fn subgroup_rank_examples() {
        let v = |pairs: &[(usize, usize)]| pairs.iter().copied().collect::<KClassVector>();
        assert_eq!(subgroup_rank(&[v(&[(0, 1)])]), 1);
        assert_eq!(subgroup_rank(&[v(&[(0, 1)]), v(&[(0, 2)])]), 1);
        assert_eq!(subgroup_rank(&[v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 1)])]), 2);
        assert_eq!(subgroup_rank(&[]), 0);
        let s: Session<Q> = Session::default();
        let reg = s.registry(&a2());
        let m = Module::simple(a2(), 0).direct_sum(&Module::projective(a2(), 0));
        let gens: Vec<KClassVector> =
            crate::decomp::decompose(&m).unwrap().summands.iter().map(|(x, _)| reg.k_class(x).unwrap()).collect();
        assert_eq!(subgroup_rank(&gens), 1);
    }

    #[test]
    fn phi_examples() {
        let s: Session<Q> = Session::default();
        let p = phi(&s, &Module::simple(dual_numbers(), 0)).unwrap();
        assert_eq!(p, Phi { value: 0, trace: vec![1, 1] });
        assert_eq!(phi(&s, &Module::simple(a2(), 0)).unwrap().value, 1);
        assert_eq!(phi(&s, &Module::regular(a2())).unwrap().value, 0);
        assert_eq!(phi(&s, &Module::regular(dual_numbers())).unwrap().value, 0);
    }

    #[test]
    fn phi_of_sum_can_exceed_summands() {
        let s: Session<Q> = Session::default();
        let alg = v_loop();
        let (s1, s2) = (Module::simple(alg.clone(), 0), Module::simple(alg.clone(), 1));
        assert_eq!(phi(&s, &s1).unwrap().value, 0);
        assert_eq!(phi(&s, &s2).unwrap().value, 0);
        let m = s1.direct_sum(&s2);
        assert_eq!(phi(&s, &m).unwrap(), Phi { value: 1, trace: vec![2, 1, 1] });
        assert_eq!(s.pd(&m).unwrap(), HomDim::Infinite { period: 1 });
        let certs = division_certificates(&s, &m, 4).unwrap();
        assert_eq!(certs.iter().map(|c| c.d).max(), Some(1));
        assert_ne!(certs[0].ext_x, certs[0].ext_y);
    }

    #[test]
    fn phi_equals_finite_pd() {
        let s: Session<Q> = Session::default();
        for alg in [nakayama(false, &[3, 2, 2, 1]), nakayama(false, &[2, 2, 2, 2, 1]), nakayama(true, &[3, 3, 2])] {
            for m in enumerate_indecomposables::<Q>(&alg).unwrap() {
                if let HomDim::Finite(p) = s.pd(&m).unwrap() {
                    assert_eq!(phi(&s, &m).unwrap().value, p);
                }
            }
        }
    }

    #[test]
    fn phi_dim_examples() {
        let s: Session<Q> = Session::default();
        assert_eq!(phi_dim(&s, &dual_numbers(), PhiDimMode::RepFinite).unwrap().value, 0);
        assert_eq!(phi_dim(&s, &a2(), PhiDimMode::RepFinite).unwrap().value, 1);
        assert_eq!(phi_dim(&s, &a2(), PhiDimMode::GldimFinite).unwrap().value, 1);
        assert_eq!(phi_dim(&s, &field_alg(), PhiDimMode::RepFinite).unwrap().value, 0);
        let c = phi_dim(&s, &nakayama(true, &[3, 3, 3]), PhiDimMode::Corpus).unwrap();
        assert_eq!((c.value, c.exact), (0, false));
        assert!(matches!(phi_dim(&s, &v_loop(), PhiDimMode::RepFinite), Err(Error::NotNakayama(_))));
        assert!(phi_dim(&s, &v_loop(), PhiDimMode::Corpus).unwrap().value >= 1);
    }

    #[test]
    fn no_certificates_for_projective_or_single_class() {
        let s: Session<Q> = Session::default();
        assert!(division_certificates(&s, &Module::regular(a2()), 3).unwrap().is_empty());
        let m = Module::simple(a2(), 0).direct_sum(&Module::projective(a2(), 1));
        assert!(division_certificates(&s, &m, 3).unwrap().is_empty());
    }
}
