//! The quantities entering the recollement bounds, the hypotheses of the
//! bounds, and the checks themselves.

use std::sync::Arc;

use serde::Serialize;

use super::datum::{triangular_isomorphisms, RecollementDatum};
use super::verdict::{Check, Hypothesis, Interval, Verdict, XInt};
use crate::algebra::Algebra;
use crate::complexes::{
    complex_invariants, derived_hom, derived_hom_pd_bounded, derived_tensor, derived_tensor_tor_bounded, is_perfect,
    BoundedComplex, Perfection,
};
use crate::error::{Error, Result};
use crate::igusa_todorov::{phi_dim, PhiDimMode};
use crate::invariants::{finitistic_dimension, global_dimension, gorenstein_profile, FdMode, GorensteinProfile};
use crate::linalg::Scalar;
use crate::module::{Bimodule, Module};
use crate::session::{HomDim, Session};

/// Turns a depth-limit failure into `None`.
fn soft<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::DepthLimitExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// An algebra invariant that is either exact or only bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Estimate {
    /// The lower bound; the value itself when `exact`.
    pub value: XInt,
    pub exact: bool,
    pub upper: XInt,
    pub mode: &'static str,
}

impl Estimate {
    pub fn interval(&self) -> Interval {
        Interval { lo: self.value, hi: self.upper }
    }

    fn from_interval(i: Interval, mode: &'static str) -> Self {
        Estimate { value: i.lo, exact: i.is_exact(), upper: i.hi, mode }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Triple<T> {
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "B")]
    pub b: T,
    #[serde(rename = "C")]
    pub c: T,
}

/// Every numerical ingredient of the bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantities {
    #[serde(rename = "pd_AY")]
    pub pd_ay: Interval,
    #[serde(rename = "pd_YstarA")]
    pub pd_ystar_a: Interval,
    #[serde(rename = "w_YstarA")]
    pub w_ystar_a: Interval,
    #[serde(rename = "w_CX")]
    pub w_cx: Interval,
    #[serde(rename = "w_XA")]
    pub w_xa: Interval,
    #[serde(rename = "w_YB")]
    pub w_yb: Interval,
    #[serde(rename = "id_A")]
    pub id_a: Interval,
    #[serde(rename = "id_B")]
    pub id_b: Interval,
    #[serde(rename = "id_C")]
    pub id_c: Interval,
    #[serde(rename = "id_left_A")]
    pub id_left_a: Interval,
    #[serde(rename = "id_left_B")]
    pub id_left_b: Interval,
    #[serde(rename = "id_left_C")]
    pub id_left_c: Interval,
    pub gldim: Triple<Interval>,
    pub phi_dim: Triple<Estimate>,
    pub fin_dim: Triple<Estimate>,
    /// `pd(M_B)` for a triangular datum.
    #[serde(rename = "pd_MB", skip_serializing_if = "Option::is_none")]
    pub pd_mb: Option<Interval>,
    /// `pd(_C M)` for a triangular datum.
    #[serde(rename = "pd_CM", skip_serializing_if = "Option::is_none")]
    pub pd_cm: Option<Interval>,
}

/// The membership hypotheses of the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// `i_* B ∈ K^b(proj A)`.
    pub b: Hypothesis,
    /// `i^! A ∈ K^b(proj B)`.
    pub c: Hypothesis,
    /// `j_! DC ∈ K^b(inj A)`.
    pub a_prime: Hypothesis,
    /// `i_* DB ∈ K^b(inj A)`.
    pub b_prime: Hypothesis,
    /// `i^* DA ∈ K^b(inj B)`.
    pub c_prime: Hypothesis,
}

/// Quantities and hypotheses of one datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub quantities: Quantities,
    pub hypotheses: Hypotheses,
    /// `e_2A ≅ Ae_2A` and `A/Ae_2A ≅ e_1A ≅ Y*_A`, for triangular data.
    #[serde(skip)]
    pub triangular_isos: Option<(bool, bool)>,
}

/// `pd` and `w` of a module viewed as a complex in degree zero.
fn stalk_dims<S: Scalar>(session: &Session<S>, m: &Module<S>) -> Result<(Interval, Interval)> {
    if m.is_zero() {
        return Ok((Interval::neg_infinite(), Interval::neg_infinite()));
    }
    let inv = complex_invariants(&BoundedComplex::stalk(m, 0), session)?;
    Ok((Interval::from_extent(inv.pd, 0), Interval::from_extent(inv.width, 0)))
}

fn perfection_bool(p: Perfection) -> Option<bool> {
    match p {
        Perfection::Yes { .. } | Perfection::Zero => Some(true),
        Perfection::No { .. } => Some(false),
        Perfection::Unknown { .. } => None,
    }
}

/// `M ⊗^L Y`, using a bound on the flat dimension of `Y` when one is known.
fn tensor_stalk<S: Scalar>(m: &Module<S>, y: &Bimodule<S>, bound: Interval, limit: usize) -> Result<Option<BoundedComplex<S>>> {
    let x = BoundedComplex::stalk(m, 0);
    match bound.hi {
        XInt::NegInf => Ok(Some(BoundedComplex::zero(y.right_algebra().clone()))),
        XInt::Fin(p) => Ok(Some(derived_tensor_tor_bounded(&x, y, p.max(0) as usize)?)),
        XInt::PosInf => soft(derived_tensor(&x, y, limit)),
    }
}

/// Whether a complex lies in `K^b(inj)`: its dual is perfect.
fn injectively_perfect<S: Scalar>(session: &Session<S>, z: Option<BoundedComplex<S>>) -> Result<Hypothesis> {
    let Some(z) = z else {
        return Ok(Hypothesis::Unknown);
    };
    Ok(Hypothesis::from_bool(perfection_bool(is_perfect(&z.dual(), session)?)))
}

fn projectively_perfect<S: Scalar>(session: &Session<S>, z: Option<BoundedComplex<S>>) -> Result<Hypothesis> {
    let Some(z) = z else {
        return Ok(Hypothesis::Unknown);
    };
    Ok(Hypothesis::from_bool(perfection_bool(is_perfect(&z, session)?)))
}

fn gldim_interval(h: HomDim) -> Interval {
    match h {
        HomDim::Zero => Interval::exact(0),
        other => Interval::from_homdim(other),
    }
}

fn is_nakayama(alg: &Algebra) -> bool {
    alg.nakayama_shape().is_some()
}

/// `phi dim` exactly for Nakayama algebras and finite global dimension,
/// otherwise bounded below by the corpus and above by the global dimension.
fn phi_estimate<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>, gl: Interval) -> Result<Estimate> {
    if let Some(v) = gl.value() {
        return Ok(Estimate::from_interval(Interval::exact(v), "gldim-finite"));
    }
    if is_nakayama(alg) {
        if let Ok(p) = phi_dim(session, alg, PhiDimMode::RepFinite) {
            return Ok(Estimate::from_interval(Interval::exact(p.value as i64), "rep-finite"));
        }
    }
    let lo = match phi_dim(session, alg, PhiDimMode::Corpus) {
        Ok(p) => p.value as i64,
        Err(Error::DepthLimitExceeded { .. }) | Err(Error::InvalidInput(_)) => 0,
        Err(e) => return Err(e),
    };
    let iv = Interval { lo: XInt::Fin(lo), hi: gl.hi }.clamped();
    Ok(Estimate::from_interval(iv, "corpus"))
}

fn fd_estimate<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>, gl: Interval, phi: Interval) -> Result<Estimate> {
    if let Some(v) = gl.value() {
        return Ok(Estimate::from_interval(Interval::exact(v), "gldim-finite"));
    }
    if is_nakayama(alg) {
        let f = finitistic_dimension(session, alg, FdMode::RepFinite)?;
        if f.exact {
            return Ok(Estimate::from_interval(Interval::exact(f.value as i64), "rep-finite"));
        }
    }
    let f = finitistic_dimension(session, alg, FdMode::Corpus)?;
    let iv = Interval { lo: XInt::Fin(f.value as i64), hi: phi.hi }.clamped();
    Ok(Estimate::from_interval(iv, "corpus"))
}

fn left_and_right_id<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>) -> Result<(Interval, Interval)> {
    let p: GorensteinProfile = gorenstein_profile(session, alg)?;
    Ok((Interval::from_homdim(p.id_right), Interval::from_homdim(p.id_left)))
}

/// Computes every quantity and hypothesis of a datum.
pub fn evaluate<S: Scalar>(session: &Session<S>, d: &RecollementDatum<S>) -> Result<Evaluation> {
    let limit = session.limit();
    let (pd_ay, _) = stalk_dims(session, &d.y.left_module())?;
    let (pd_ystar_a, w_ystar_a) = stalk_dims(session, &d.y_star.right_module())?;
    let (_, w_cx) = stalk_dims(session, &d.x.left_module())?;
    let (_, w_xa) = stalk_dims(session, &d.x.right_module())?;
    let (_, w_yb) = stalk_dims(session, &d.y.right_module())?;
    let (pd_ystar_left, _) = stalk_dims(session, &d.y_star.left_module())?;

    let (id_a, id_left_a) = left_and_right_id(session, &d.a)?;
    let (id_b, id_left_b) = left_and_right_id(session, &d.b)?;
    let (id_c, id_left_c) = left_and_right_id(session, &d.c)?;

    let gldim = Triple {
        a: gldim_interval(global_dimension(session, &d.a)?),
        b: gldim_interval(global_dimension(session, &d.b)?),
        c: gldim_interval(global_dimension(session, &d.c)?),
    };
    let phi = Triple {
        a: phi_estimate(session, &d.a, gldim.a)?,
        b: phi_estimate(session, &d.b, gldim.b)?,
        c: phi_estimate(session, &d.c, gldim.c)?,
    };
    let fin_dim = Triple {
        a: fd_estimate(session, &d.a, gldim.a, phi.a.interval())?,
        b: fd_estimate(session, &d.b, gldim.b, phi.b.interval())?,
        c: fd_estimate(session, &d.c, gldim.c, phi.c.interval())?,
    };

    let (pd_mb, pd_cm) = match &d.triangular {
        Some(t) => (
            Some(Interval::from_homdim(session.pd(&t.m.right_module())?)),
            Some(Interval::from_homdim(session.pd(&t.m.left_module())?)),
        ),
        None => (None, None),
    };

    let hyp_b = projectively_perfect(session, Some(BoundedComplex::stalk(&d.y_star.right_module(), 0)))?;
    let regular_a = d.regular_a();
    let upper_shriek = match pd_ystar_a.hi {
        XInt::Fin(p) => Some(derived_hom_pd_bounded(&d.y_star, &regular_a, p.max(0) as usize)?),
        XInt::NegInf => Some(BoundedComplex::zero(d.b.clone())),
        XInt::PosInf => soft(derived_hom(&d.y_star, &regular_a, limit))?,
    };
    let hyp_c = projectively_perfect(session, upper_shriek)?;
    let a_prime = tensor_stalk(&Module::injective_cogenerator(d.c.clone()), &d.x, w_cx, limit)?;
    let b_prime = tensor_stalk(&Module::injective_cogenerator(d.b.clone()), &d.y_star, pd_ystar_left, limit)?;
    let c_prime = tensor_stalk(&Module::injective_cogenerator(d.a.clone()), &d.y, pd_ay, limit)?;
    let hypotheses = Hypotheses {
        b: hyp_b,
        c: hyp_c,
        a_prime: injectively_perfect(session, a_prime)?,
        b_prime: injectively_perfect(session, b_prime)?,
        c_prime: injectively_perfect(session, c_prime)?,
    };

    Ok(Evaluation {
        quantities: Quantities {
            pd_ay,
            pd_ystar_a,
            w_ystar_a,
            w_cx,
            w_xa,
            w_yb,
            id_a,
            id_b,
            id_c,
            id_left_a,
            id_left_b,
            id_left_c,
            gldim,
            phi_dim: phi,
            fin_dim,
            pd_mb,
            pd_cm,
        },
        hypotheses,
        triangular_isos: triangular_isomorphisms(d)?,
    })
}

/// `x - w` for a width `w`; an infinite width makes the term vacuous.
fn minus_width(x: Interval, w: Interval) -> Interval {
    if w.lo == XInt::PosInf {
        Interval::neg_infinite()
    } else {
        x - w
    }
}

/// `pd(M) + 1` with the convention `pd(0) + 1 = 0`.
fn pd_plus_one(pd: Interval) -> Interval {
    if pd == Interval::neg_infinite() {
        Interval::exact(0)
    } else {
        pd + Interval::exact(1)
    }
}

/// Theorem I: bounds on right and left selfinjective dimensions.
pub fn theorem_i_checks(ev: &Evaluation) -> Vec<Check> {
    let q = &ev.quantities;
    let h = &ev.hypotheses;
    vec![
        Check::le("Thm1a", Hypothesis::None, q.id_c, q.id_a + q.w_cx),
        Check::le("Thm1b", h.b, q.id_b, q.id_a + q.w_yb),
        Check::le("Thm1c", h.c, q.id_a, (q.id_b + q.pd_ay + q.pd_ystar_a).max(q.id_c + q.w_xa)),
        Check::le("Thm1a'", h.a_prime, q.id_left_c, q.id_left_a + q.w_cx),
        Check::le("Thm1b'", h.b_prime, q.id_left_b, q.id_left_a + q.w_yb),
        Check::le(
            "Thm1c'",
            h.c_prime,
            q.id_left_a,
            (q.id_left_b + q.pd_ay + q.w_ystar_a).max(q.id_left_c + q.w_xa),
        ),
    ]
}

/// Theorem II: bounds on `phi`-dimension. Part (c) is evaluated both as an
/// unconditional statement and under the hypothesis of Theorem I(c).
pub fn theorem_ii_checks(ev: &Evaluation) -> Vec<Check> {
    let q = &ev.quantities;
    let h = &ev.hypotheses;
    let phi = |e: &Estimate| e.interval();
    let (pa, pb, pc) = (phi(&q.phi_dim.a), phi(&q.phi_dim.b), phi(&q.phi_dim.c));
    let rhs_c = (pb + q.pd_ay + q.pd_ystar_a).max(pc + q.w_xa);
    vec![
        Check::le("Thm2a", Hypothesis::None, pc, pa + q.w_cx),
        Check::le("Thm2b", h.b, pb, pa + q.w_yb),
        Check::le("Thm2c", Hypothesis::None, pa, rhs_c),
        Check::le("Thm2c|hyp", h.c, pa, rhs_c),
    ]
}

/// The global dimension chain and the finitistic dimension bounds.
pub fn gldim_findim_checks(ev: &Evaluation) -> Vec<Check> {
    let q = &ev.quantities;
    let h = &ev.hypotheses;
    let g = &q.gldim;
    let fd = |e: &Estimate| e.interval();
    let (fa, fb, fc) = (fd(&q.fin_dim.a), fd(&q.fin_dim.b), fd(&q.fin_dim.c));
    vec![
        Check::le("Thm4.lower", Hypothesis::None, minus_width(g.b, q.w_yb).max(minus_width(g.c, q.w_cx)), g.a),
        Check::le("Thm4.upper", Hypothesis::None, g.a, (g.b + q.pd_ay + q.pd_ystar_a).max(g.c + q.w_xa)),
        Check::le("Thm5a", Hypothesis::None, fc, fa + q.w_cx),
        Check::le("Thm5b", h.b, fb, fa + q.w_yb),
        Check::le("Thm5c", Hypothesis::None, fa, (fb + q.pd_ay + q.pd_ystar_a).max(fc + q.w_xa)),
    ]
}

fn finiteness(i: Interval) -> Hypothesis {
    Hypothesis::from_bool(i.is_finite())
}

/// The triangular-matrix corollary; empty for non-triangular data.
pub fn corollary_2_checks(ev: &Evaluation) -> Vec<Check> {
    let q = &ev.quantities;
    let (Some(pd_mb), Some(pd_cm)) = (q.pd_mb, q.pd_cm) else {
        return Vec::new();
    };
    vec![
        Check::le("Cor2i.right", Hypothesis::None, q.id_b, q.id_a),
        Check::le("Cor2i.left", Hypothesis::None, q.id_left_c, q.id_left_a),
        Check::le("Cor2ii", finiteness(pd_mb), q.id_a, (q.id_b + pd_plus_one(pd_cm)).max(q.id_c)),
        Check::le("Cor2iii", finiteness(pd_cm), q.id_left_a, (q.id_left_c + pd_plus_one(pd_mb)).max(q.id_left_b)),
    ]
}

/// Structural facts that hold for every triangular datum.
pub fn sanity_checks(ev: &Evaluation) -> Vec<Check> {
    let q = &ev.quantities;
    let mut out = vec![
        Check::eq("sanity.w_XA", Hypothesis::None, q.w_xa, Interval::exact(0)),
        Check::eq("sanity.w_YB", Hypothesis::None, q.w_yb, Interval::exact(0)),
        Check::claim("sanity.i_*B_perfect", Hypothesis::None, Some(ev.hypotheses.b == Hypothesis::Holds), Some(true)),
    ];
    if let Some((ideal, quotient)) = ev.triangular_isos {
        out.push(Check::claim("sanity.e2A=Ae2A", Hypothesis::None, Some(ideal), Some(true)));
        out.push(Check::claim("sanity.A/Ae2A=e1A", Hypothesis::None, Some(quotient), Some(true)));
    }
    if let (Some(pd_mb), Some(pd_cm)) = (q.pd_mb, q.pd_cm) {
        out.push(Check::eq("sanity.pd_AY", Hypothesis::None, q.pd_ay, pd_plus_one(pd_cm)));
        let hyp_c = match ev.hypotheses.c {
            Hypothesis::Holds => Some(true),
            Hypothesis::Fails => Some(false),
            _ => None,
        };
        out.push(Check::claim("sanity.hyp_c", Hypothesis::None, hyp_c, pd_mb.is_finite()));
    }
    out
}

/// All checks on one datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub instance: String,
    pub quantities: Quantities,
    pub hypotheses: Hypotheses,
    pub checks: Vec<Check>,
}

impl BoundReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn violations(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Violation).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates a datum and runs Theorems I, II, 4, 5, Corollary 2 and the
/// structural checks.
pub fn bound_report<S: Scalar>(session: &Session<S>, d: &RecollementDatum<S>, instance: &str) -> Result<BoundReport> {
    let ev = evaluate(session, d)?;
    let mut checks = theorem_i_checks(&ev);
    checks.extend(theorem_ii_checks(&ev));
    checks.extend(gldim_findim_checks(&ev));
    checks.extend(corollary_2_checks(&ev));
    if d.triangular.is_some() {
        checks.extend(sanity_checks(&ev));
    }
    Ok(BoundReport { instance: instance.to_string(), quantities: ev.quantities, hypotheses: ev.hypotheses, checks })
}

/// The trivial recollement given by the two-sided tilting complex `P = A`:
/// both sides of the selfinjective-dimension and `phi`-dimension bounds
/// coincide.
pub fn trivial_tilting_checks<S: Scalar>(session: &Session<S>, alg: &Arc<Algebra>) -> Result<Vec<Check>> {
    let (_, w) = stalk_dims(session, &Module::regular(alg.clone()))?;
    let (id_r, id_l) = left_and_right_id(session, alg)?;
    let gl = gldim_interval(global_dimension(session, alg)?);
    let phi = phi_estimate(session, alg, gl)?.interval();
    Ok(vec![
        Check::offset("Cor1.right.lower", Hypothesis::None, id_r, w, true),
        Check::offset("Cor1.right.upper", Hypothesis::None, id_r, w, false),
        Check::offset("Cor1.left.lower", Hypothesis::None, id_l, w, true),
        Check::offset("Cor1.left.upper", Hypothesis::None, id_l, w, false),
        Check::eq("Cor1.width", Hypothesis::None, w, Interval::exact(0)),
        Check::offset("Cor4.lower", Hypothesis::None, phi, w, true),
        Check::offset("Cor4.upper", Hypothesis::None, phi, w, false),
    ])
}

/// `A` is `m`-Gorenstein: both selfinjective dimensions are finite and
/// `id(_A A) < m`.
pub fn is_m_gorenstein(p: &GorensteinProfile, m: usize) -> Option<bool> {
    match (p.id_right, p.id_left) {
        (HomDim::Infinite { .. }, _) | (_, HomDim::Infinite { .. }) => Some(false),
        (HomDim::Unknown { .. }, _) | (_, HomDim::Unknown { .. }) => None,
        (_, left) => Some(left.finite().unwrap_or(0) < m),
    }
}

/// `T_n(A)` is `(m+1)`-Gorenstein if and only if `A` is `m`-Gorenstein, for
/// each `m` in `ms`.
pub fn corollary_3_checks<S: Scalar>(
    session: &Session<S>,
    alg: &Arc<Algebra>,
    n: usize,
    ms: impl IntoIterator<Item = usize>,
) -> Result<Vec<Check>> {
    let t = Arc::new(Algebra::t_n(alg, n)?);
    let pa = gorenstein_profile(session, alg)?;
    let pt = gorenstein_profile(session, &t)?;
    Ok(ms
        .into_iter()
        .map(|m| {
            Check::claim(
                format!("Cor3[n={n},m={m}]"),
                Hypothesis::None,
                is_m_gorenstein(&pt, m + 1),
                is_m_gorenstein(&pa, m),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::datum::triangular_recollement;
    use super::*;
    use crate::module::testing::*;

    fn report(b: Arc<Algebra>, c: Arc<Algebra>, m: Bimodule<Q>) -> BoundReport {
        let d = triangular_recollement(&b, &c, &m).unwrap();
        bound_report(&Session::default(), &d, "t").unwrap()
    }

    #[test]
    fn a2_datum_is_tight() {
        let k = field_alg();
        let r = report(k.clone(), k.clone(), Bimodule::regular(k));
        let q = &r.quantities;
        assert_eq!(q.pd_ay, Interval::exact(1));
        assert_eq!(q.pd_ystar_a, Interval::exact(0));
        assert_eq!((q.w_cx, q.w_xa, q.w_yb), (Interval::exact(0), Interval::exact(0), Interval::exact(0)));
        assert_eq!(q.id_a, Interval::exact(1));
        let c = r.check("Thm1c").unwrap();
        assert_eq!((c.hypothesis, c.lhs, c.rhs), (Hypothesis::Holds, Interval::exact(1), Interval::exact(1)));
        assert!(c.tight);
        let c = r.check("Thm2c").unwrap();
        assert_eq!((c.lhs, c.rhs, c.verdict), (Interval::exact(1), Interval::exact(1), Verdict::Verified));
        assert!(q.phi_dim.a.exact && q.phi_dim.b.exact && q.phi_dim.c.exact);
        let lower = r.check("Thm4.lower").unwrap();
        let upper = r.check("Thm4.upper").unwrap();
        assert_eq!((lower.lhs, upper.lhs, upper.rhs), (Interval::exact(0), Interval::exact(1), Interval::exact(1)));
        assert_eq!(r.check("Cor2i.right").unwrap().rhs, Interval::exact(1));
        assert_eq!(r.check("Cor2i.left").unwrap().lhs, Interval::exact(0));
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::Verified), "{:#?}", r.checks);
    }

    #[test]
    fn zero_bimodule_degenerates() {
        let b = nakayama(false, &[2, 1]);
        let c = field_alg();
        let m = Bimodule::<Q>::corner(&b, c.clone(), &[0], &[], b.clone(), &[0, 1], &[0], &[0, 1]);
        assert!(m.is_zero());
        let r = report(b, c, m);
        let q = &r.quantities;
        assert_eq!((q.w_cx, q.w_xa, q.w_yb), (Interval::exact(0), Interval::exact(0), Interval::exact(0)));
        assert_eq!(q.gldim.a, q.gldim.b.max(q.gldim.c));
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::Verified), "{:#?}", r.checks);
    }

    #[test]
    fn dual_numbers_corner() {
        let b = dual_numbers();
        let k = field_alg();
        let m = Bimodule::<Q>::corner(&b, k.clone(), &[0], &[], b.clone(), &[0], &[0], &[]);
        let r = report(b, k, m);
        let q = &r.quantities;
        assert_eq!(q.id_c, Interval::exact(0));
        assert_eq!(r.check("Thm1a").unwrap().verdict, Verdict::Verified);
        assert_eq!(q.pd_mb, Some(Interval::exact(0)));
        assert_eq!(r.hypotheses.c, Hypothesis::Holds);
        assert!(r.violations().is_empty(), "{:#?}", r.checks);
    }

    #[test]
    fn corollary_3_small_cases() {
        let s: Session<Q> = Session::default();
        for alg in [field_alg(), dual_numbers(), a2()] {
            for n in [2, 3] {
                for c in corollary_3_checks(&s, &alg, n, 0..4).unwrap() {
                    assert_eq!(c.verdict, Verdict::Verified, "{}", c.name);
                }
            }
        }
        let t2 = Arc::new(Algebra::t_n(&field_alg(), 2).unwrap());
        assert_eq!(gorenstein_profile(&s, &t2).unwrap().id_right, HomDim::Finite(1));
    }

    #[test]
    fn trivial_tilting_collapses() {
        let s: Session<Q> = Session::default();
        for alg in [a2(), dual_numbers(), nakayama(false, &[3, 2, 1])] {
            for c in trivial_tilting_checks(&s, &alg).unwrap() {
                assert!(c.tight, "{}", c.name);
            }
        }
    }
}
