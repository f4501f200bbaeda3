//! Recollement data `(A, B, C, Y, Y*, X, X*)` and their construction from
//! triangular matrix algebras.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Algebra, Gluing, IdempotentSplit};
use crate::decomp::is_isomorphic;
use crate::error::{Error, Result};
use crate::linalg::{Scalar, Subspace};
use crate::module::{same_algebra, triangular, Bimodule, Module, ProjectiveLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Triangular,
    User,
}

/// The corner data of `A = [B 0; M C]`.
#[derive(Clone, Debug)]
pub struct TriangularParts<S> {
    pub split: IdempotentSplit,
    /// `M = e_2 A e_1` as a `(C, B)`-bimodule.
    pub m: Bimodule<S>,
}

/// A standard recollement of `D A` by `D B` and `D C`, given by stalk
/// bimodules `Y` (an `(A, B)`-bimodule), `Y*` (`(B, A)`), `X` (`(C, A)`)
/// and `X*` (`(A, C)`).
#[derive(Clone, Debug)]
pub struct RecollementDatum<S> {
    pub a: Arc<Algebra>,
    pub b: Arc<Algebra>,
    pub c: Arc<Algebra>,
    pub y: Bimodule<S>,
    pub y_star: Bimodule<S>,
    pub x: Bimodule<S>,
    pub x_star: Bimodule<S>,
    pub provenance: Provenance,
    pub triangular: Option<TriangularParts<S>>,
}

impl<S: Scalar> RecollementDatum<S> {
    /// A datum from user-supplied bimodules; only the sides are validated.
    pub fn new(
        a: Arc<Algebra>,
        b: Arc<Algebra>,
        c: Arc<Algebra>,
        y: Bimodule<S>,
        y_star: Bimodule<S>,
        x: Bimodule<S>,
        x_star: Bimodule<S>,
    ) -> Result<Self> {
        let sides = [
            (&y, &a, &b, "Y"),
            (&y_star, &b, &a, "Y*"),
            (&x, &c, &a, "X"),
            (&x_star, &a, &c, "X*"),
        ];
        for (bm, l, r, name) in sides {
            if !same_algebra(bm.left_algebra(), l) || !same_algebra(bm.right_algebra(), r) {
                return Err(Error::InvalidInput(format!("{name} is defined over the wrong algebras")));
            }
        }
        Ok(RecollementDatum { a, b, c, y, y_star, x, x_star, provenance: Provenance::User, triangular: None })
    }

    /// The regular right module of `A`.
    pub fn regular_a(&self) -> Module<S> {
        Module::regular(self.a.clone())
    }
}

/// The recollement of `A = [B 0; M C]` for a `(C, B)`-bimodule `M`:
/// `Y = Y* = A/Ae_2A`, `X = e_2A` and `X* = Ae_2`.
pub fn triangular_recollement<S: Scalar>(
    b: &Arc<Algebra>,
    c: &Arc<Algebra>,
    m: &Bimodule<S>,
) -> Result<RecollementDatum<S>> {
    let (a, split) = triangular(b, c, m)?;
    Ok(from_split(Arc::new(a), b.clone(), c.clone(), split))
}

/// As [`triangular_recollement`], with `M` presented by connecting arrows and
/// relations.
pub fn triangular_recollement_glued<S: Scalar>(
    b: &Arc<Algebra>,
    c: &Arc<Algebra>,
    gluing: &Gluing,
) -> Result<RecollementDatum<S>> {
    let (a, split) = Algebra::triangular_glue(b, c, gluing)?;
    Ok(from_split(Arc::new(a), b.clone(), c.clone(), split))
}

fn from_split<S: Scalar>(a: Arc<Algebra>, b: Arc<Algebra>, c: Arc<Algebra>, split: IdempotentSplit) -> RecollementDatum<S> {
    let all_v: Vec<usize> = (0..a.num_vertices()).collect();
    let all_a: Vec<usize> = (0..a.num_arrows()).collect();
    let bv = split.part1.clone();
    let cv = split.part2.clone();
    let ba: Vec<usize> = (0..b.num_arrows()).collect();
    let ca: Vec<usize> = (b.num_arrows()..b.num_arrows() + c.num_arrows()).collect();
    let y = Bimodule::corner(&a, a.clone(), &all_v, &all_a, b.clone(), &bv, &ba, &cv);
    let y_star = Bimodule::corner(&a, b.clone(), &bv, &ba, a.clone(), &all_v, &all_a, &cv);
    let x = Bimodule::corner(&a, c.clone(), &cv, &ca, a.clone(), &all_v, &all_a, &[]);
    let x_star = Bimodule::corner(&a, a.clone(), &all_v, &all_a, c.clone(), &cv, &ca, &[]);
    let m = Bimodule::corner(&a, c.clone(), &cv, &ca, b.clone(), &bv, &ba, &[]);
    RecollementDatum {
        a,
        b,
        c,
        y,
        y_star,
        x,
        x_star,
        provenance: Provenance::Triangular,
        triangular: Some(TriangularParts { split, m }),
    }
}

/// The two-sided ideal generated by the given vertices, as a right
/// submodule of the regular module, and the quotient by it.
pub fn idempotent_ideal<S: Scalar>(a: &Arc<Algebra>, vertices: &[usize]) -> (Module<S>, Module<S>) {
    let through: BTreeSet<usize> = vertices.iter().copied().collect();
    let visits = |p: usize| {
        let path = a.path(p);
        through.contains(&path.source) || path.arrows.iter().any(|&x| through.contains(&a.arrow(x).to))
    };
    let gens: Vec<usize> = (0..a.num_vertices()).collect();
    let layout = ProjectiveLayout::new(a, &gens);
    let spaces: Vec<Subspace<S>> = (0..a.num_vertices())
        .map(|x| {
            let d = layout.dims[x];
            let rows = layout.entries[x]
                .iter()
                .enumerate()
                .filter(|(_, &(_, p))| visits(p))
                .map(|(i, _)| (0..d).map(|j| if i == j { S::one() } else { S::zero() }).collect())
                .collect();
            Subspace::span(rows, d)
        })
        .collect();
    let reg = Module::<S>::regular(a.clone());
    let (ideal, _) = reg.submodule(&spaces);
    let (quot, _) = reg.quotient(&spaces);
    (ideal, quot)
}

/// Structural facts of a triangular datum: `e_2A ≅ Ae_2A` and
/// `A/Ae_2A ≅ e_1A ≅ Y*_A` as right `A`-modules.
pub fn triangular_isomorphisms<S: Scalar>(d: &RecollementDatum<S>) -> Result<Option<(bool, bool)>> {
    let Some(t) = &d.triangular else {
        return Ok(None);
    };
    let (ideal, quot) = idempotent_ideal::<S>(&d.a, &t.split.part2);
    let e1a = Module::projective_sum(d.a.clone(), &t.split.part1);
    let first = is_isomorphic(&d.x.right_module(), &ideal)?;
    let second = is_isomorphic(&quot, &e1a)? && is_isomorphic(&d.y_star.right_module(), &e1a)?;
    Ok(Some((first, second)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::testing::*;

    fn a2_datum() -> RecollementDatum<Q> {
        let k = field_alg();
        let m = Bimodule::regular(k.clone());
        triangular_recollement(&k, &k, &m).unwrap()
    }

    #[test]
    fn a2_datum_shape() {
        let d = a2_datum();
        assert_eq!(d.a.num_vertices(), 2);
        assert_eq!(d.a.dim(), 3);
        assert_eq!(d.y.right_module().dims(), &[1]);
        assert_eq!(d.y.left_module().dims(), &[1, 0]);
        assert_eq!(d.x.right_module().dims(), &[1, 1]);
        assert_eq!(d.x_star.right_module().dims(), &[1]);
        assert_eq!(d.x_star.left_module().total_dim(), 1);
        assert_eq!(d.triangular.as_ref().unwrap().m.total_dim(), 1);
        assert_eq!(triangular_isomorphisms(&d).unwrap(), Some((true, true)));
    }

    #[test]
    fn glued_dual_numbers_datum() {
        let b = dual_numbers();
        let k = field_alg();
        let m = Bimodule::<Q>::corner(&b, k.clone(), &[0], &[], b.clone(), &[0], &[0], &[]);
        let d = triangular_recollement(&b, &k, &m).unwrap();
        assert_eq!(d.a.dim(), 2 + 2 + 1);
        assert_eq!(triangular_isomorphisms(&d).unwrap(), Some((true, true)));
        assert_eq!(d.y.right_module().dims(), &[2]);
        assert_eq!(d.x.right_module().dims(), &[2, 1]);
    }
}
