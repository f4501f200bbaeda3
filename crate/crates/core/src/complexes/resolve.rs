//! Projective resolutions of bounded complexes and what is read off them.
//!
//! A resolution `f: P -> X` is built from the top degree down by making the
//! mapping cone exact: in degree `n` the new generators cover the cycles of
//! `P^{n+1} ⊕ X^n` modulo boundaries coming from `X^{n-1}` and the radical.

use std::fmt;

use serde::{Serialize, Serializer};

use super::projective::GeneratorImages;
use super::{BoundedComplex, ChainMap, Elem, ProjectiveComplex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::module::{Module, ModuleMap, ProjectiveLayout};
use crate::session::{HomDim, Session};

/// A projective complex with a chain map to the complex it resolves.
#[derive(Clone, Debug)]
pub struct Resolution<S> {
    pub complex: ProjectiveComplex<S>,
    pub(crate) images: GeneratorImages<S>,
    /// Whether the resolution terminated within the depth limit.
    pub complete: bool,
    /// When incomplete, the kernel of the lowest differential, whose
    /// projective resolution continues the complex.
    pub bottom_kernel: Option<Module<S>>,
}

impl<S: Scalar> Resolution<S> {
    pub fn chain_map(&self, x: &BoundedComplex<S>) -> ChainMap<S> {
        self.complex.chain_map_from_images(&self.images, x)
    }

    /// Checks that the chain map induces isomorphisms on cohomology, in
    /// every degree when complete and above the lowest term otherwise.
    pub fn certify(&self, x: &BoundedComplex<S>) -> bool {
        let p = self.complex.to_bounded();
        let from = if self.complete { i64::MIN } else { self.complex.low + 1 };
        self.chain_map(x).is_quasi_iso_from(&p, x, from)
    }

    /// Splits off contractible summands, keeping the chain map.
    pub fn minimize(&mut self, x: &BoundedComplex<S>) {
        self.complex.minimize_tracking(Some((&mut self.images, x)));
        if self.complete {
            self.trim();
        }
    }

    fn trim(&mut self) {
        let Some((lo, hi)) = self.complex.support() else {
            self.complex = ProjectiveComplex::zero(self.complex.alg.clone());
            self.images.clear();
            return;
        };
        let (a, b) = ((lo - self.complex.low) as usize, (hi - self.complex.low) as usize);
        self.images = self.images[a..=b].to_vec();
        self.complex = self.complex.trimmed();
    }
}

/// Resolves `x` down to `limit` degrees below its lowest term.
pub fn resolve<S: Scalar>(x: &BoundedComplex<S>, limit: usize) -> Result<Resolution<S>> {
    let alg = x.algebra().clone();
    let nv = alg.num_vertices();
    if x.is_zero() {
        return Ok(Resolution {
            complex: ProjectiveComplex::zero(alg),
            images: Vec::new(),
            complete: true,
            bottom_kernel: None,
        });
    }
    let (a, b) = x.range().expect("nonzero complex has a range");
    let floor = a - limit as i64;

    let mut cur_gens: Vec<usize> = Vec::new();
    let mut cur_mod = Module::<S>::zero(alg.clone());
    let mut cur_d = ModuleMap::<S> { blocks: vec![Matrix::zeros(0, 0); nv] };
    let mut cur_f = ModuleMap::<S> { blocks: vec![Matrix::zeros(0, 0); nv] };

    let mut terms_rev: Vec<Vec<usize>> = Vec::new();
    let mut diffs_rev: Vec<Vec<Vec<Elem<S>>>> = Vec::new();
    let mut images_rev: GeneratorImages<S> = Vec::new();
    let mut complete = true;
    let mut bottom_kernel = None;

    let mut n = b;
    loop {
        if n < a && cur_gens.is_empty() {
            break;
        }
        let xn = x.term(n);
        let dx = x.differential(n);
        let dx_prev = x.differential(n - 1);
        let mut kernels = Vec::with_capacity(nv);
        for v in 0..nv {
            let (pd, xd) = (cur_mod.dim_at(v), xn.dim_at(v));
            let next_p = cur_d.blocks[v].cols();
            let next_x = dx.blocks[v].cols();
            let mut m = Matrix::zeros(pd + xd, next_p + next_x);
            for r in 0..pd {
                for c in 0..next_p {
                    m[(r, c)] = S::zero() - cur_d.blocks[v][(r, c)].clone();
                }
                for c in 0..next_x {
                    m[(r, next_p + c)] = cur_f.blocks[v][(r, c)].clone();
                }
            }
            for r in 0..xd {
                for c in 0..next_x {
                    m[(pd + r, next_p + c)] = dx.blocks[v][(r, c)].clone();
                }
            }
            kernels.push(Subspace::span(m.kernel_basis(), pd + xd));
        }

        if n < floor {
            complete = false;
            let (z, _) = cur_mod.submodule(&kernels);
            bottom_kernel = Some(z);
            break;
        }

        let cone_action = |ai: usize| cur_mod.action(ai).direct_sum(xn.action(ai));
        let mut new_gens: Vec<(usize, Vec<S>)> = Vec::new();
        for v in 0..nv {
            let pd = cur_mod.dim_at(v);
            let amb = pd + xn.dim_at(v);
            let mut rows: Vec<Vec<S>> = dx_prev
                .blocks
                .get(v)
                .map(|bl| {
                    bl.row_vecs()
                        .into_iter()
                        .map(|r| {
                            let mut full = vec![S::zero(); pd];
                            full.extend(r);
                            full
                        })
                        .collect()
                })
                .unwrap_or_default();
            for (ai, arr) in alg.quiver().arrows.iter().enumerate() {
                if arr.to != v {
                    continue;
                }
                let act = cone_action(ai);
                for k in kernels[arr.from].basis() {
                    rows.push(act.apply(k));
                }
            }
            let radical = Subspace::span(rows, amb);
            for g in radical.extend_greedy(kernels[v].basis()) {
                new_gens.push((v, g));
            }
        }

        let cur_layout = ProjectiveLayout::new(&alg, &cur_gens);
        let gens: Vec<usize> = new_gens.iter().map(|(v, _)| *v).collect();
        let drows: Vec<Vec<Elem<S>>> = new_gens
            .iter()
            .map(|(v, vec)| {
                let mut row = vec![Elem::new(); cur_gens.len()];
                for (pos, &(j, p)) in cur_layout.entries[*v].iter().enumerate() {
                    if !vec[pos].is_zero() {
                        row[j].insert(p, S::zero() - vec[pos].clone());
                    }
                }
                row
            })
            .collect();
        let imgs: Vec<Vec<S>> = new_gens.iter().map(|(v, vec)| vec[cur_mod.dim_at(*v)..].to_vec()).collect();

        let new_mod = Module::projective_sum(alg.clone(), &gens);
        let new_d = ProjectiveComplex::element_map(&alg, &gens, &cur_gens, &drows);
        let one_term = ProjectiveComplex { alg: alg.clone(), low: n, terms: vec![gens.clone()], diffs: Vec::new() };
        let new_f = one_term.chain_map_from_images(&vec![imgs.clone()], x).maps.remove(0);

        terms_rev.push(gens.clone());
        if n < b {
            diffs_rev.push(drows);
        }
        images_rev.push(imgs);
        cur_gens = gens;
        cur_mod = new_mod;
        cur_d = new_d;
        cur_f = new_f;
        n -= 1;
    }

    let low = b - terms_rev.len() as i64 + 1;
    terms_rev.reverse();
    diffs_rev.reverse();
    images_rev.reverse();
    let complex = ProjectiveComplex { alg, low, terms: terms_rev, diffs: diffs_rev };
    Ok(Resolution { complex, images: images_rev, complete, bottom_kernel })
}

/// The minimal projective resolution, with a certified quasi-isomorphism.
pub fn minimal_projective_resolution<S: Scalar>(x: &BoundedComplex<S>, limit: usize) -> Result<Resolution<S>> {
    let mut r = resolve(x, limit)?;
    if !r.complete {
        return Err(Error::DepthLimitExceeded { limit });
    }
    r.minimize(x);
    if !r.certify(x) {
        return Err(Error::InvalidInput("resolution failed its quasi-isomorphism check".into()));
    }
    Ok(r)
}

/// Whether a complex lies in `K^b(proj)` up to quasi-isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perfection {
    /// The minimal resolution has terms in degrees `[lo, hi]`.
    Yes { lo: i64, hi: i64 },
    /// The resolution continues with a module of infinite projective
    /// dimension, certified periodic.
    No { period: usize },
    Unknown { limit: usize },
    /// The zero complex.
    Zero,
}

impl Perfection {
    pub fn is_yes(&self) -> bool {
        matches!(self, Perfection::Yes { .. } | Perfection::Zero)
    }
}

/// Decides perfection: the part of the resolution below the complex is a
/// projective resolution of the bottom kernel, whose projective dimension
/// comes from the syzygy graph.
pub fn is_perfect<S: Scalar>(x: &BoundedComplex<S>, session: &Session<S>) -> Result<Perfection> {
    let r = resolve(x, 0)?;
    if r.complete {
        let mut r = r;
        r.minimize(x);
        return Ok(match r.complex.support() {
            Some((lo, hi)) => Perfection::Yes { lo, hi },
            None => Perfection::Zero,
        });
    }
    let z = r.bottom_kernel.expect("incomplete resolution records its bottom kernel");
    match session.pd(&z)? {
        HomDim::Zero | HomDim::Finite(_) => {
            let full = minimal_projective_resolution(x, session.limit().max(z.total_dim() + 2))?;
            Ok(match full.complex.support() {
                Some((lo, hi)) => Perfection::Yes { lo, hi },
                None => Perfection::Zero,
            })
        }
        HomDim::Infinite { period } => Ok(Perfection::No { period }),
        HomDim::Unknown { limit } => Ok(Perfection::Unknown { limit }),
    }
}

/// An integer-valued invariant that may be infinite or undetermined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite(i64),
    Infinite,
    Unknown,
}

impl Extent {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Extent::Finite(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(n) => write!(f, "{n}"),
            Extent::Infinite => write!(f, "infinite"),
            Extent::Unknown => write!(f, "unknown"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        match self {
            Extent::Finite(n) => s.serialize_i64(*n),
            Extent::Infinite => s.serialize_str("infinite"),
            Extent::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// `sup`, `pd` and the homological width `w = -sup + pd` of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexInvariants {
    pub sup: i64,
    pub pd: Extent,
    pub width: Extent,
    /// `sup = -max{i : H^i != 0}`.
    pub sup_matches_cohomology: bool,
}

pub fn complex_invariants<S: Scalar>(x: &BoundedComplex<S>, session: &Session<S>) -> Result<ComplexInvariants> {
    let Some((_, top_h)) = x.cohomology_support() else {
        return Err(Error::ZeroComplex);
    };
    let perf = is_perfect(x, session)?;
    let (sup, pd) = match perf {
        Perfection::Yes { lo, hi } => (-hi, Extent::Finite(-lo)),
        Perfection::Zero => return Err(Error::ZeroComplex),
        other => {
            let mut r = resolve(x, 2)?;
            r.minimize(x);
            let hi = (r.complex.low..r.complex.low + r.complex.terms.len() as i64)
                .rev()
                .find(|&i| !r.complex.term(i).is_empty())
                .expect("a complex with cohomology has a nonzero resolution");
            let pd = if matches!(other, Perfection::No { .. }) { Extent::Infinite } else { Extent::Unknown };
            (-hi, pd)
        }
    };
    let width = match pd {
        Extent::Finite(p) => Extent::Finite(-sup + p),
        e => e,
    };
    Ok(ComplexInvariants { sup, pd, width, sup_matches_cohomology: sup == -top_h })
}

/// `Hom(-, A)` of the minimal resolution of a perfect complex: a minimal
/// projective complex over the opposite algebra.
pub fn dual_perfect<S: Scalar>(x: &BoundedComplex<S>, session: &Session<S>) -> Result<ProjectiveComplex<S>> {
    match is_perfect(x, session)? {
        Perfection::Yes { lo, .. } => {
            let depth = (x.support().map_or(0, |s| s.0) - lo).max(0) as usize;
            let r = minimal_projective_resolution(x, depth + 1)?;
            Ok(r.complex.dual())
        }
        Perfection::Zero => Ok(ProjectiveComplex::zero(x.algebra().opposite_arc())),
        _ => Err(Error::NotPerfect),
    }
}

/// A complex quasi-isomorphic to `X`, certified by a zigzag of chain maps
/// through `middle`.
#[derive(Clone, Debug)]
pub struct Truncation<S> {
    pub complex: BoundedComplex<S>,
    pub middle: BoundedComplex<S>,
    /// Whether the maps go out of `middle` (projective case) or into it.
    pub maps_out_of_middle: bool,
    pub original_map: ChainMap<S>,
    pub truncated_map: ChainMap<S>,
    window: (i64, i64),
}

impl<S: Scalar> Truncation<S> {
    /// Checks both maps induce isomorphisms on cohomology in the window
    /// outside of which `X` and the truncation vanish.
    pub fn certify(&self, x: &BoundedComplex<S>) -> bool {
        let (lo, hi) = self.window;
        let check = |f: &ChainMap<S>, y: &BoundedComplex<S>| {
            if self.maps_out_of_middle {
                f.is_quasi_iso_from(&self.middle, y, lo)
            } else {
                let dy = y.dual();
                let dm = self.middle.dual();
                f.dual().is_quasi_iso_from(&dm, &dy, -hi)
            }
        };
        let in_window = |c: &BoundedComplex<S>| c.support().is_none_or(|(a, b)| a >= lo && b <= hi);
        in_window(&self.complex) && check(&self.original_map, x) && check(&self.truncated_map, &self.complex)
    }
}

/// A complex in the same degrees as `X` with projective terms above the
/// lowest degree, obtained by folding the resolution at the bottom.
pub fn proj_truncate<S: Scalar>(x: &BoundedComplex<S>) -> Result<Truncation<S>> {
    let alg = x.algebra().clone();
    let Some((a, b)) = x.range() else {
        return Err(Error::ZeroComplex);
    };
    let mut r = resolve(x, 1)?;
    if r.complex.low > a - 1 {
        let pad = (r.complex.low - (a - 1)) as usize;
        let mut terms = vec![Vec::new(); pad];
        terms.extend(r.complex.terms.clone());
        let mut diffs: Vec<Vec<Vec<Elem<S>>>> = vec![Vec::new(); pad];
        diffs.extend(r.complex.diffs.clone());
        let mut images = vec![Vec::new(); pad];
        images.extend(r.images.clone());
        r.complex = ProjectiveComplex { alg: alg.clone(), low: a - 1, terms, diffs };
        r.images = images;
    }
    let full = r.complex.to_bounded();
    let f = r.chain_map(x);
    if a == b {
        return Ok(Truncation {
            complex: x.clone(),
            middle: full,
            maps_out_of_middle: true,
            original_map: f.clone(),
            truncated_map: f,
            window: (a, b),
        });
    }
    let pa = full.term(a);
    let da = full.differential(a);
    let (cok, pi) = pa.quotient(&full.differential(a - 1).image_spaces());
    let sections: Vec<Matrix<S>> = pi
        .blocks
        .iter()
        .map(|q| q.solve_left_rows(&Matrix::identity(q.cols())).expect("quotient map is onto"))
        .collect();
    let d_cok = ModuleMap { blocks: sections.iter().zip(&da.blocks).map(|(s, d)| s * d).collect() };
    let mut terms = vec![cok.clone()];
    let mut diffs = vec![d_cok];
    for i in a + 1..=b {
        terms.push(full.term(i));
        if i < b {
            diffs.push(full.differential(i));
        }
    }
    let u = BoundedComplex::new(alg.clone(), a, terms, diffs)?;
    let mut maps = vec![ModuleMap::zero(&full.term(a - 1), &u.term(a - 1)), pi];
    for i in a + 1..=b {
        maps.push(ModuleMap::identity(&full.term(i)));
    }
    let to_u = ChainMap { low: a - 1, maps };
    Ok(Truncation { complex: u, middle: full, maps_out_of_middle: true, original_map: f, truncated_map: to_u, window: (a, b) })
}

/// A complex in the same degrees as `X` with injective terms below the
/// highest degree: the dual of the projective truncation of `DX`.
pub fn inj_truncate<S: Scalar>(x: &BoundedComplex<S>) -> Result<Truncation<S>> {
    let Some((a, b)) = x.range() else {
        return Err(Error::ZeroComplex);
    };
    let t = proj_truncate(&x.dual())?;
    Ok(Truncation {
        complex: t.complex.dual(),
        middle: t.middle.dual(),
        maps_out_of_middle: false,
        original_map: t.original_map.dual(),
        truncated_map: t.truncated_map.dual(),
        window: (a, b),
    })
}
