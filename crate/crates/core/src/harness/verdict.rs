//! Interval-valued quantities and the verdicts of inequality checks.
//!
//! Every ingredient is an interval `[lo, hi]` over the extended integers
//! that is known to contain the true value. An inequality `lhs <= rhs` is
//! verified when `lhs.hi <= rhs.lo` and violated when `lhs.lo > rhs.hi`.

use std::fmt;
use std::ops::{Add, Sub};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::complexes::Extent;
use crate::session::HomDim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl XInt {
    fn add_lo(self, o: XInt) -> XInt {
        use XInt::*;
        match (self, o) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Fin(a), Fin(b)) => Fin(a + b),
        }
    }

    fn add_hi(self, o: XInt) -> XInt {
        use XInt::*;
        match (self, o) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Fin(a), Fin(b)) => Fin(a + b),
        }
    }

    fn neg(self) -> XInt {
        match self {
            XInt::NegInf => XInt::PosInf,
            XInt::PosInf => XInt::NegInf,
            XInt::Fin(a) => XInt::Fin(-a),
        }
    }
}

impl fmt::Display for XInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XInt::NegInf => write!(f, "-inf"),
            XInt::PosInf => write!(f, "inf"),
            XInt::Fin(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for XInt {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        match self {
            XInt::Fin(a) => s.serialize_i64(*a),
            XInt::PosInf => s.serialize_str("infinite"),
            XInt::NegInf => s.serialize_str("-infinite"),
        }
    }
}

/// A closed interval containing an unknown extended integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: XInt,
    pub hi: XInt,
}

impl Interval {
    pub fn exact(v: i64) -> Self {
        Interval { lo: XInt::Fin(v), hi: XInt::Fin(v) }
    }

    pub fn infinite() -> Self {
        Interval { lo: XInt::PosInf, hi: XInt::PosInf }
    }

    pub fn neg_infinite() -> Self {
        Interval { lo: XInt::NegInf, hi: XInt::NegInf }
    }

    pub fn at_least(v: i64) -> Self {
        Interval { lo: XInt::Fin(v), hi: XInt::PosInf }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The value, when the interval is a single finite point.
    pub fn value(&self) -> Option<i64> {
        match (self.lo, self.hi) {
            (XInt::Fin(a), XInt::Fin(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> Option<bool> {
        if self.hi < XInt::PosInf {
            Some(true)
        } else if self.lo == XInt::PosInf {
            Some(false)
        } else {
            None
        }
    }

    /// Raises `hi` to `lo` if an upper bound fell below a lower bound.
    pub fn clamped(self) -> Interval {
        Interval { lo: self.lo, hi: self.hi.max(self.lo) }
    }

    pub fn max(self, o: Interval) -> Interval {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    /// Projective or injective dimension; an undetermined value is only
    /// known to be non-negative.
    pub fn from_homdim(d: HomDim) -> Self {
        match d {
            HomDim::Zero => Interval::neg_infinite(),
            HomDim::Finite(n) => Interval::exact(n as i64),
            HomDim::Infinite { .. } => Interval::infinite(),
            HomDim::Unknown { .. } => Interval::at_least(0),
        }
    }

    /// An invariant of a complex with known lower bound `floor` when it is
    /// undetermined.
    pub fn from_extent(e: Extent, floor: i64) -> Self {
        match e {
            Extent::Finite(n) => Interval::exact(n),
            Extent::Infinite => Interval::infinite(),
            Extent::Unknown => Interval::at_least(floor),
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: self.lo.add_lo(o.lo), hi: self.hi.add_hi(o.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: self.lo.add_lo(o.hi.neg()), hi: self.hi.add_hi(o.lo.neg()) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl Serialize for Interval {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        if self.is_exact() {
            return self.lo.serialize(s);
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("lo", &self.lo)?;
        m.serialize_entry("hi", &self.hi)?;
        m.end()
    }
}

/// Status of a theorem's hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    /// The statement is unconditional.
    None,
    Holds,
    Fails,
    Unknown,
}

impl Hypothesis {
    pub fn from_bool(b: Option<bool>) -> Self {
        match b {
            Some(true) => Hypothesis::Holds,
            Some(false) => Hypothesis::Fails,
            None => Hypothesis::Unknown,
        }
    }

    pub fn and(self, o: Hypothesis) -> Hypothesis {
        use Hypothesis::*;
        match (self, o) {
            (Fails, _) | (_, Fails) => Fails,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Holds, _) | (_, Holds) => Holds,
            (None, None) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "inconclusive")]
    Inconclusive,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Violation => "VIOLATION",
        })
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub hypothesis: Hypothesis,
    pub lhs: Interval,
    pub rhs: Interval,
    pub verdict: Verdict,
    /// Whether both sides are exact and equal.
    pub tight: bool,
}

impl Check {
    pub fn le(name: impl Into<String>, hypothesis: Hypothesis, lhs: Interval, rhs: Interval) -> Self {
        let verdict = if lhs.hi <= rhs.lo {
            Verdict::Verified
        } else if lhs.lo > rhs.hi && matches!(hypothesis, Hypothesis::None | Hypothesis::Holds) {
            Verdict::Violation
        } else {
            Verdict::Inconclusive
        };
        let tight = lhs.is_exact() && rhs.is_exact() && lhs == rhs;
        Check { name: name.into(), hypothesis, lhs, rhs, verdict, tight }
    }

    /// An equality `lhs = rhs` between two quantities.
    pub fn eq(name: impl Into<String>, hypothesis: Hypothesis, lhs: Interval, rhs: Interval) -> Self {
        let disjoint = lhs.lo > rhs.hi || rhs.lo > lhs.hi;
        let verdict = if lhs.is_exact() && lhs == rhs {
            Verdict::Verified
        } else if disjoint && matches!(hypothesis, Hypothesis::None | Hypothesis::Holds) {
            Verdict::Violation
        } else {
            Verdict::Inconclusive
        };
        Check { name: name.into(), hypothesis, lhs, rhs, verdict, tight: verdict == Verdict::Verified }
    }

    /// `x - w <= x` (when `lower`) or `x <= x + w` for a single quantity
    /// `x`. Both sides move together, so only the sign of `w` matters and
    /// the sides coincide exactly when `w = 0`.
    pub fn offset(name: impl Into<String>, hypothesis: Hypothesis, x: Interval, w: Interval, lower: bool) -> Self {
        let (lhs, rhs) = if lower { (x - w, x) } else { (x, x + w) };
        let zero = XInt::Fin(0);
        let verdict = if w.lo >= zero {
            Verdict::Verified
        } else if w.hi < zero && matches!(hypothesis, Hypothesis::None | Hypothesis::Holds) {
            Verdict::Violation
        } else {
            Verdict::Inconclusive
        };
        let tight = w == Interval::exact(0);
        Check { name: name.into(), hypothesis, lhs, rhs, verdict, tight }
    }

    /// A boolean claim, such as an equivalence or a structural fact.
    pub fn claim(name: impl Into<String>, hypothesis: Hypothesis, lhs: Option<bool>, rhs: Option<bool>) -> Self {
        let as_interval = |b: Option<bool>| match b {
            Some(v) => Interval::exact(v as i64),
            None => Interval { lo: XInt::Fin(0), hi: XInt::Fin(1) },
        };
        let verdict = match (lhs, rhs) {
            (Some(a), Some(b)) if a == b => Verdict::Verified,
            (Some(_), Some(_)) if matches!(hypothesis, Hypothesis::None | Hypothesis::Holds) => Verdict::Violation,
            _ => Verdict::Inconclusive,
        };
        Check {
            name: name.into(),
            hypothesis,
            lhs: as_interval(lhs),
            rhs: as_interval(rhs),
            verdict,
            tight: verdict == Verdict::Verified,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_ignore_the_width_of_the_shifted_quantity() {
        let phi = Interval::at_least(1);
        let c = Check::offset("o", Hypothesis::None, phi, Interval::exact(0), true);
        assert_eq!((c.verdict, c.tight), (Verdict::Verified, true));
        assert_eq!(Check::le("l", Hypothesis::None, phi - Interval::exact(0), phi).verdict, Verdict::Inconclusive);
        let c = Check::offset("o", Hypothesis::None, phi, Interval::exact(2), false);
        assert_eq!((c.verdict, c.tight), (Verdict::Verified, false));
        assert_eq!(Check::offset("o", Hypothesis::None, phi, Interval::exact(-1), true).verdict, Verdict::Violation);
    }

    #[test]
    fn interval_arithmetic() {
        let a = Interval::exact(2);
        let b = Interval::at_least(1);
        assert_eq!(a + b, Interval::at_least(3));
        assert_eq!((a - b).hi, XInt::Fin(1));
        assert_eq!((a - b).lo, XInt::NegInf);
        assert_eq!(Interval::infinite() + a, Interval::infinite());
        assert_eq!(a.max(Interval::neg_infinite()), a);
        assert_eq!(Interval::neg_infinite() + Interval::exact(1), Interval::neg_infinite());
    }

    #[test]
    fn verdicts_are_sound() {
        let v = |l, r| Check::le("t", Hypothesis::None, l, r).verdict;
        assert_eq!(v(Interval::exact(1), Interval::exact(1)), Verdict::Verified);
        assert_eq!(v(Interval::exact(2), Interval::exact(1)), Verdict::Violation);
        assert_eq!(v(Interval::at_least(2), Interval::exact(1)), Verdict::Violation);
        assert_eq!(v(Interval::exact(1), Interval::at_least(0)), Verdict::Inconclusive);
        assert_eq!(v(Interval::infinite(), Interval::infinite()), Verdict::Verified);
        let h = Check::le("t", Hypothesis::Fails, Interval::exact(2), Interval::exact(1));
        assert_eq!(h.verdict, Verdict::Inconclusive);
        assert_eq!(Check::claim("c", Hypothesis::None, Some(true), Some(false)).verdict, Verdict::Violation);
    }
}
