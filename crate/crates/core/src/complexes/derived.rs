//! Derived tensor products and derived Hom against bimodules concentrated
//! in degree zero.

use super::{minimal_projective_resolution, resolve, BoundedComplex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::module::{same_algebra, Bimodule, Module, ModuleMap};

/// A derived functor value, possibly cut off at the depth limit. When
/// `complete` is false only cohomology above `reliable_from` is meaningful.
#[derive(Clone, Debug)]
pub struct DerivedComplex<S> {
    pub complex: BoundedComplex<S>,
    pub complete: bool,
    pub reliable_from: i64,
}

fn check_left<S: Scalar>(x: &BoundedComplex<S>, y: &Bimodule<S>) -> Result<()> {
    if !same_algebra(x.algebra(), y.left_algebra()) {
        return Err(Error::InvalidInput("complex and bimodule are over different algebras".into()));
    }
    Ok(())
}

/// `X ⊗^L_C Y` for a complex `X` of right `C`-modules and a
/// `(C, A)`-bimodule `Y`, truncated at `limit` syzygies below `X`.
pub fn derived_tensor_truncated<S: Scalar>(
    x: &BoundedComplex<S>,
    y: &Bimodule<S>,
    limit: usize,
) -> Result<DerivedComplex<S>> {
    check_left(x, y)?;
    let mut r = resolve(x, limit)?;
    r.minimize(x);
    let complex = r.complex.tensor(y);
    Ok(DerivedComplex { complete: r.complete, reliable_from: r.complex.low + 1, complex })
}

/// `X ⊗^L_C Y`, failing when the resolution of `X` does not terminate
/// within `limit` steps.
pub fn derived_tensor<S: Scalar>(x: &BoundedComplex<S>, y: &Bimodule<S>, limit: usize) -> Result<BoundedComplex<S>> {
    check_left(x, y)?;
    let r = minimal_projective_resolution(x, limit)?;
    Ok(r.complex.tensor(y))
}

/// `RHom_A(Y, N)` for a `(B, A)`-bimodule `Y` and a right `A`-module `N`,
/// as a complex of right `B`-modules in degrees `>= 0`. Computed as
/// `D(DN ⊗^L_{A^op} Y^op)`.
pub fn derived_hom<S: Scalar>(y: &Bimodule<S>, n: &Module<S>, limit: usize) -> Result<BoundedComplex<S>> {
    if !same_algebra(n.algebra(), y.right_algebra()) {
        return Err(Error::InvalidInput("module and bimodule are over different algebras".into()));
    }
    let dn = BoundedComplex::stalk(&n.dual(), 0);
    let t = derived_tensor(&dn, &y.opposite(), limit)?;
    Ok(t.dual())
}

/// `X ⊗^L_C Y` when `Y` has flat dimension at most `tor_bound` as a left
/// `C`-module, so that the derived tensor product has no cohomology below
/// `low(X) - tor_bound`. The resolution of `X` is cut a little below that
/// degree and folded: the bottom term is replaced by a cokernel.
pub fn derived_tensor_tor_bounded<S: Scalar>(
    x: &BoundedComplex<S>,
    y: &Bimodule<S>,
    tor_bound: usize,
) -> Result<BoundedComplex<S>> {
    check_left(x, y)?;
    let Some((a, _)) = x.range() else {
        return Ok(BoundedComplex::zero(y.right_algebra().clone()));
    };
    let t = derived_tensor_truncated(x, y, tor_bound + 2)?;
    if t.complete {
        return Ok(t.complex);
    }
    let n = a - tor_bound as i64;
    debug_assert!(n - 1 >= t.reliable_from);
    Ok(fold_bottom(&t.complex, n))
}

/// `RHom_A(Y, N)` when `Y` has projective dimension at most `pd_bound` as a
/// right `A`-module.
pub fn derived_hom_pd_bounded<S: Scalar>(y: &Bimodule<S>, n: &Module<S>, pd_bound: usize) -> Result<BoundedComplex<S>> {
    if !same_algebra(n.algebra(), y.right_algebra()) {
        return Err(Error::InvalidInput("module and bimodule are over different algebras".into()));
    }
    let dn = BoundedComplex::stalk(&n.dual(), 0);
    Ok(derived_tensor_tor_bounded(&dn, &y.opposite(), pd_bound)?.dual())
}

/// The complex `Z^n / B^n -> Z^{n+1} -> ...`, quasi-isomorphic to `Z` when
/// `Z` has no cohomology below degree `n`.
fn fold_bottom<S: Scalar>(z: &BoundedComplex<S>, n: i64) -> BoundedComplex<S> {
    let alg = z.algebra().clone();
    let Some((_, top)) = z.range() else {
        return z.clone();
    };
    if n > top {
        return BoundedComplex::zero(alg);
    }
    let (cok, pi) = z.term(n).quotient(&z.differential(n - 1).image_spaces());
    let d = z.differential(n);
    let blocks = pi
        .blocks
        .iter()
        .zip(&d.blocks)
        .map(|(q, dv)| {
            let s = q.solve_left_rows(&Matrix::identity(q.cols())).expect("quotient map is onto");
            &s * dv
        })
        .collect();
    let mut terms = vec![cok];
    let mut diffs = Vec::new();
    if n < top {
        diffs.push(ModuleMap { blocks });
    }
    for i in n + 1..=top {
        terms.push(z.term(i));
        if i < top {
            diffs.push(z.differential(i));
        }
    }
    BoundedComplex::from_parts(alg, n, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;
    use crate::module::{hom_dim, tensor_over};

    #[test]
    fn tensor_with_regular_bimodule() {
        let alg = nakayama(false, &[3, 2, 1]);
        let reg = Bimodule::<Q>::regular(alg.clone());
        for m in crate::decomp::enumerate_indecomposables::<Q>(&alg).unwrap() {
            let t = derived_tensor(&BoundedComplex::stalk(&m, 0), &reg, 8).unwrap();
            assert_eq!(t.cohomology_support(), Some((0, 0)));
            assert_eq!(t.cohomology(0).dims(), m.dims());
        }
        let d = dual_numbers();
        let s = BoundedComplex::stalk(&Module::<Q>::simple(d.clone(), 0), 0);
        let t = derived_tensor_truncated(&s, &Bimodule::regular(d.clone()), 4).unwrap();
        assert!(!t.complete);
        for i in t.reliable_from..=0 {
            assert_eq!(t.complex.cohomology_dim(i), if i == 0 { 1 } else { 0 });
        }
        assert!(matches!(derived_tensor(&s, &Bimodule::regular(d), 4), Err(Error::DepthLimitExceeded { .. })));
    }

    #[test]
    fn tensor_h0_is_underived_tensor() {
        let alg = nakayama(false, &[2, 2, 1]);
        let y = Bimodule::<Q>::corner(&alg, alg.clone(), &[0, 1, 2], &[0, 1], field_alg(), &[1], &[], &[]);
        for m in crate::decomp::enumerate_indecomposables::<Q>(&alg).unwrap() {
            let t = derived_tensor(&BoundedComplex::stalk(&m, 0), &y, 8).unwrap();
            assert_eq!(t.cohomology(0).dims(), tensor_over(&m, &y).unwrap().dims());
        }
    }

    #[test]
    fn derived_hom_examples() {
        let alg = a2();
        let reg = Bimodule::<Q>::regular(alg.clone());
        let n = Module::simple(alg.clone(), 0);
        let h = derived_hom(&reg, &n, 8).unwrap();
        assert_eq!(h.cohomology_support(), Some((0, 0)));
        assert_eq!(h.cohomology(0).dims(), n.dims());
        assert!(derived_hom(&reg, &Module::zero(alg.clone()), 8).unwrap().cohomology_support().is_none());
        let s2 = Module::simple(alg.clone(), 1);
        let h = derived_hom(&reg, &s2, 8).unwrap();
        assert_eq!(h.cohomology(0).total_dim(), hom_dim(&Module::regular(alg.clone()), &s2));
    }

    #[test]
    fn tor_bounded_tensor_folds_infinite_resolutions() {
        let d = dual_numbers();
        let reg = Bimodule::<Q>::regular(d.clone());
        let s = BoundedComplex::stalk(&Module::<Q>::simple(d.clone(), 0), 0);
        let t = derived_tensor_tor_bounded(&s, &reg, 0).unwrap();
        assert_eq!(t.range(), Some((0, 0)));
        assert_eq!(t.cohomology(0).dims(), &[1]);

        let alg = nakayama(true, &[3, 2]);
        let reg = Bimodule::<Q>::regular(alg.clone());
        for m in crate::decomp::enumerate_indecomposables::<Q>(&alg).unwrap() {
            let h = derived_hom_pd_bounded(&reg, &m, 0).unwrap();
            assert_eq!(h.cohomology_support(), Some((0, 0)));
            assert_eq!(h.cohomology(0).dims(), m.dims());
        }
    }

    #[test]
    fn tor_bounded_agrees_with_full_resolution() {
        let alg = nakayama(false, &[3, 2, 2, 1]);
        let y = Bimodule::<Q>::corner(&alg, alg.clone(), &[0, 1, 2, 3], &[0, 1, 2], field_alg(), &[2], &[], &[]);
        for m in crate::decomp::enumerate_indecomposables::<Q>(&alg).unwrap() {
            let full = derived_tensor(&BoundedComplex::stalk(&m, 0), &y, 8).unwrap();
            let cut = derived_tensor_tor_bounded(&BoundedComplex::stalk(&m, 0), &y, 3).unwrap();
            for i in -5..=1 {
                assert_eq!(full.cohomology_dim(i), cut.cohomology_dim(i));
            }
        }
    }
}
