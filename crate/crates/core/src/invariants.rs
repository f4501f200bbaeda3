//! Algebra-level homological invariants: global and finitistic dimension,
//! selfinjectivity and the Gorenstein profile.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::decomp::enumerate_indecomposables;
use crate::error::Result;
use crate::igusa_todorov::corpus_modules;
use crate::linalg::Scalar;
use crate::module::Module;
use crate::session::{HomDim, Session};

/// Global dimension as the largest projective dimension of a simple module.
pub fn global_dimension<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>) -> Result<HomDim> {
    let mut out = HomDim::Finite(0);
    for v in 0..alg.num_vertices() {
        out = out.max(session.pd(&Module::simple(alg.clone(), v))?);
    }
    Ok(out)
}

/// Where the modules for the finitistic dimension come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FdMode {
    RepFinite,
    Corpus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FinitisticDimension {
    pub value: usize,
    /// False for corpus mode and whenever some projective dimension was
    /// undetermined.
    pub exact: bool,
    pub mode: FdMode,
}

/// The largest finite projective dimension among the enumerated modules.
pub fn finitistic_dimension<S: Scalar>(
    session: &Session<S>,
    alg: &Arc<Algebra>,
    mode: FdMode,
) -> Result<FinitisticDimension> {
    let modules = match mode {
        FdMode::RepFinite => enumerate_indecomposables::<S>(alg)?,
        FdMode::Corpus => corpus_modules::<S>(alg),
    };
    let mut value = 0;
    let mut exact = mode == FdMode::RepFinite;
    for m in &modules {
        match session.pd(m)? {
            HomDim::Finite(d) => value = value.max(d),
            HomDim::Unknown { .. } => exact = false,
            HomDim::Zero | HomDim::Infinite { .. } => {}
        }
    }
    Ok(FinitisticDimension { value, exact, mode })
}

/// Whether the regular module is injective.
pub fn is_selfinjective<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>) -> Result<bool> {
    Ok(session.id(&Module::regular(alg.clone()))? == HomDim::Finite(0))
}

/// Injective dimensions of the regular module on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinProfile {
    /// `id(A_A)`.
    pub id_right: HomDim,
    /// `id(_A A)`.
    pub id_left: HomDim,
    pub gorenstein: bool,
    /// Least `n` with `id(_A A) < n`, so that `A` is `m`-Gorenstein exactly
    /// for `m >= n`.
    pub min_level: Option<usize>,
}

impl GorensteinProfile {
    /// `id(_A A) < n`.
    pub fn is_n_gorenstein(&self, n: usize) -> Option<bool> {
        match self.id_left {
            HomDim::Finite(d) => Some(d < n),
            HomDim::Infinite { .. } => Some(false),
            _ => None,
        }
    }
}

pub fn gorenstein_profile<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>) -> Result<GorensteinProfile> {
    let id_right = session.id(&Module::regular(alg.clone()))?;
    let id_left = session.id(&Module::regular(alg.opposite_arc()))?;
    let gorenstein = id_right.finite().is_some() && id_left.finite().is_some();
    let min_level = id_left.finite().map(|d| d + 1);
    Ok(GorensteinProfile { id_right, id_left, gorenstein, min_level })
}
