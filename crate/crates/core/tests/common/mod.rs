//! Algebras and random complexes shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use homdim::algebra::NakayamaShape;
use homdim::complexes::BoundedComplex;
use homdim::module::{hom_space, Module, ModuleMap};
use homdim::{Algebra, FieldSpec, Matrix, Quiver, Rational, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn field() -> Arc<Algebra> {
    Arc::new(Algebra::monomial(Quiver::new(vec!["1".into()]), vec![], FieldSpec::Rational).unwrap())
}

pub fn dual_numbers() -> Arc<Algebra> {
    nakayama(true, &[2])
}

pub fn a2() -> Arc<Algebra> {
    nakayama(false, &[2, 1])
}

pub fn nakayama(cyclic: bool, kupisch: &[usize]) -> Arc<Algebra> {
    let shape = NakayamaShape { cyclic, kupisch: kupisch.to_vec() };
    Arc::new(Algebra::nakayama(&shape, FieldSpec::Rational).unwrap())
}

/// `1 -a-> 3 <-b- 2` with a loop `x` at 3 and `xx = ax = bx = 0`.
pub fn v_loop() -> Arc<Algebra> {
    let mut q = Quiver::new(vec!["1".into(), "2".into(), "3".into()]);
    q.add_arrow("a", 0, 2);
    q.add_arrow("b", 1, 2);
    q.add_arrow("x", 2, 2);
    Arc::new(Algebra::monomial(q, vec![vec![2, 2], vec![0, 2], vec![1, 2]], FieldSpec::Rational).unwrap())
}

/// Every Kupisch series of a linear Nakayama algebra with `n` vertices.
pub fn linear_kupisch(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![1]];
    for _ in 1..n {
        let mut next = Vec::new();
        for tail in &out {
            for c in 1..=tail[0] + 1 {
                let mut k = vec![c];
                k.extend(tail);
                next.push(k);
            }
        }
        out = next;
    }
    out
}

/// Cyclic Kupisch series with entries in `2..=max`.
pub fn cyclic_kupisch(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|k| (2..=max).map(move |c| [k.clone(), vec![c]].concat()))
            .collect();
    }
    out.retain(|k| (0..n).all(|i| k[i] <= k[(i + 1) % n] + 1));
    out
}

pub fn random_map(rng: &mut ChaCha8Rng, m: &Module<Q>, n: &Module<Q>) -> ModuleMap<Q> {
    let mut f = ModuleMap::zero(m, n);
    for h in hom_space(m, n) {
        let c = rng.gen_range(-2i64..=2);
        f = f.add(&h.scale(&Q::from_i64(c)));
    }
    f
}

/// `M -f-> N -> coker f` or `M -f-> N`, placed at a random degree.
pub fn random_complex(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>, pool: &[Module<Q>]) -> BoundedComplex<Q> {
    let m = pool.choose(rng).unwrap().clone();
    let n = pool.choose(rng).unwrap().clone();
    let f = random_map(rng, &m, &n);
    let low = rng.gen_range(-3i64..=2);
    if rng.gen_bool(0.5) {
        return BoundedComplex::new(alg.clone(), low, vec![m, n], vec![f]).unwrap();
    }
    let (cok, pi) = n.quotient(&f.image_spaces());
    BoundedComplex::new(alg.clone(), low, vec![m, n, cok], vec![f, pi]).unwrap()
}

fn block_diag(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
        if i < a.rows() && j < a.cols() {
            a[(i, j)].clone()
        } else if i >= a.rows() && j >= a.cols() {
            b[(i - a.rows(), j - a.cols())].clone()
        } else {
            Q::from_i64(0)
        }
    })
}

pub fn direct_sum(x: &BoundedComplex<Q>, y: &BoundedComplex<Q>) -> BoundedComplex<Q> {
    let (lo, hi) = match (x.range(), y.range()) {
        (None, _) => return y.clone(),
        (_, None) => return x.clone(),
        (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
    };
    let terms = (lo..=hi).map(|i| x.term(i).direct_sum(&y.term(i))).collect();
    let diffs = (lo..hi)
        .map(|i| {
            let (dx, dy) = (x.differential(i), y.differential(i));
            ModuleMap { blocks: dx.blocks.iter().zip(&dy.blocks).map(|(a, b)| block_diag(a, b)).collect() }
        })
        .collect();
    BoundedComplex::new(x.algebra().clone(), lo, terms, diffs).unwrap()
}
