//! Exact scalar fields.
//!
//! Everything above this layer is generic over [`Scalar`]. Two families are
//! provided: the rationals ([`Rational`], backed by arbitrary precision
//! integers) and prime fields [`Fp<P>`] with a compile-time modulus.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field of rational numbers, always kept in lowest terms.
pub type Rational = BigRational;

/// Which ground field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime { p } => *p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime { p } if is_prime(*p) => Ok(()),
            FieldSpec::Prime { p } => Err(Error::FieldUnsupported(format!("{p} is not prime"))),
        }
    }

    /// Trace-form radicals and characteristic polynomials are only sound when
    /// the characteristic is zero or exceeds the dimension being processed.
    pub fn check_floor(&self, dim: usize) -> Result<()> {
        match self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime { p } if *p > dim as u64 => Ok(()),
            FieldSpec::Prime { p } => Err(Error::FieldUnsupported(format!(
                "characteristic {p} does not exceed dimension {dim}"
            ))),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn field_spec() -> FieldSpec;

    fn from_i64(n: i64) -> Self;

    /// Parses the canonical string form (`"3"`, `"-1/2"`, or a residue).
    fn parse(s: &str) -> Result<Self>;

    /// Multiplicative inverse; panics on zero like integer division does.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Roots lying in the field of the polynomial with coefficients listed
    /// from the constant term upwards. May be incomplete when the search
    /// space is too large; callers only use it to find splitting elements.
    fn roots_in_field(poly: &[Self]) -> Vec<Self>;
}

impl Scalar for Rational {
    fn field_spec() -> FieldSpec {
        FieldSpec::Rational
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational scalar {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }

    fn roots_in_field(poly: &[Self]) -> Vec<Self> {
        rational_roots(poly)
    }
}

const DIVISOR_SEARCH_CAP: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > DIVISOR_SEARCH_CAP {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = poly.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..lead_zeros);
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let denom_lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let eval = |x: &Rational| {
        coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    };
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let cand = Rational::new(p * BigInt::from(sign), q.clone());
                if !roots.contains(&cand) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Element of the prime field of order `P`, stored as its least residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i128) -> Self {
        Fp(v.rem_euclid(P as i128) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in F_{P}");
        self * o.pow(P - 2)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

/// Exhaustive root search is only attempted for fields at most this large.
const FP_ROOT_SEARCH_CAP: u64 = 1 << 17;

impl<const P: u64> Scalar for Fp<P> {
    fn field_spec() -> FieldSpec {
        FieldSpec::Prime { p: P }
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n as i128)
    }

    fn parse(s: &str) -> Result<Self> {
        let v: i128 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
        Ok(Fp::new(v))
    }

    fn roots_in_field(poly: &[Self]) -> Vec<Self> {
        if P > FP_ROOT_SEARCH_CAP {
            return [Self::zero(), Self::one()]
                .into_iter()
                .filter(|x| poly.iter().rev().fold(Self::zero(), |acc, c| acc * *x + *c).is_zero())
                .collect();
        }
        (0..P)
            .map(|v| Fp(v))
            .filter(|x| poly.iter().rev().fold(Self::zero(), |acc, c| acc * *x + *c).is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_print() {
        let x = Rational::parse("-2/4").unwrap();
        assert_eq!(x.to_string(), "-1/2");
        assert_eq!(Rational::parse("3").unwrap().to_string(), "3");
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn fp_arithmetic() {
        type F = Fp<101>;
        let a = F::from_i64(-1);
        assert_eq!(a.value(), 100);
        assert_eq!((a * a).value(), 1);
        assert_eq!((F::from_i64(3) / F::from_i64(3)), F::one());
        assert_eq!(F::parse("205").unwrap().value(), 3);
    }

    #[test]
    fn rational_root_search() {
        // (t - 1)(t + 1/2) t = t^3 - 1/2 t^2 - 1/2 t
        let p: Vec<Rational> = ["0", "-1/2", "-1/2", "1"]
            .iter()
            .map(|s| Rational::parse(s).unwrap())
            .collect();
        let roots = Rational::roots_in_field(&p);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&Rational::parse("-1/2").unwrap()));
        // t^2 + 1 has no rational roots
        let q: Vec<Rational> = ["1", "0", "1"].iter().map(|s| Rational::parse(s).unwrap()).collect();
        assert!(Rational::roots_in_field(&q).is_empty());
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::Prime { p: 101 }.validate().is_ok());
        assert!(FieldSpec::Prime { p: 100 }.validate().is_err());
        assert!(FieldSpec::Prime { p: 7 }.check_floor(7).is_err());
        assert!(FieldSpec::Rational.check_floor(1000).is_ok());
    }
}
