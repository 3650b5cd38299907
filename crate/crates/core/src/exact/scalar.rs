//! Rational and Gaussian-rational scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficient ring of a truncated series: a commutative Q-algebra.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Q) -> Self;

    /// Multiplicative inverse, when the element is a unit of the ring.
    fn try_inv(&self) -> Option<Self>;

    fn scale(&self, q: &Q) -> Self {
        self.clone() * Self::from_rational(q)
    }
}

impl Coeff for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn scale(&self, q: &Q) -> Self {
        self * q
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, `-p/q` (whitespace tolerated).
pub fn parse_q(s: &str) -> Result<Q, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Rational to f64 without overflow for large numerators and denominators.
pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 1000 && db < 1000 {
        let (nf, df) = (big_to_f64(n), big_to_f64(d));
        if nf.is_finite() && df.is_finite() && df != 0.0 {
            return nf / df;
        }
    }
    // Shift both to ~60 significant bits and compensate with a power of two.
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let nf = big_to_f64(&(n >> shift_n as usize));
    let df = big_to_f64(&(d >> shift_d as usize));
    nf / df * 2f64.powi((shift_n - shift_d) as i32)
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gauss {
    pub re: Q,
    pub im: Q,
}

impl Gauss {
    pub fn new(re: Q, im: Q) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: Q) -> Self {
        Gauss { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        Gauss {
            re: Q::zero(),
            im: Q::one(),
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Gauss::one(),
            1 => Gauss::i(),
            2 => -Gauss::one(),
            _ => -Gauss::i(),
        }
    }

    pub fn conj(&self) -> Self {
        Gauss {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Gauss::one();
        for _ in 0..k {
            r = r * self.clone();
        }
        r
    }
}

impl Zero for Gauss {
    fn zero() -> Self {
        Gauss {
            re: Q::zero(),
            im: Q::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gauss {
    fn one() -> Self {
        Gauss {
            re: Q::one(),
            im: Q::zero(),
        }
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(self.re * o.re);
        }
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Coeff for Gauss {
    fn from_rational(q: &Q) -> Self {
        Gauss::real(q.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Gauss {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn scale(&self, q: &Q) -> Self {
        Gauss {
            re: &self.re * q,
            im: &self.im * q,
        }
    }
}

impl From<Q> for Gauss {
    fn from(q: Q) -> Self {
        Gauss::real(q)
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = if self.im.is_negative() {
            format!("-{}", fmt_q(&-self.im.clone()))
        } else {
            format!("+{}", fmt_q(&self.im))
        };
        write!(f, "{}{}*i", fmt_q(&self.re), im)
    }
}

impl FromStr for Gauss {
    type Err = ExactError;

    /// Accepts `p/q`, `p/q*i`, `p/q+r/s*i`, `p/q-r/s*i`.
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("*i") else {
            return Ok(Gauss::real(parse_q(&t)?));
        };
        // Split at the last sign that is not the leading one.
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match cut {
            Some(k) => {
                let re = parse_q(&body[..k])?;
                let im_s = body[k..].strip_prefix('+').unwrap_or(&body[k..]);
                Ok(Gauss::new(re, parse_q(im_s)?))
            }
            None => Ok(Gauss::new(Q::zero(), parse_q(body)?)),
        }
    }
}

/// A scalar tagged with the ring it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExactScalar {
    Rational(Q),
    Gaussian(Gauss),
}

impl ExactScalar {
    pub fn to_gauss(&self) -> Gauss {
        match self {
            ExactScalar::Rational(x) => Gauss::real(x.clone()),
            ExactScalar::Gaussian(z) => z.clone(),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(x) => f.write_str(&fmt_q(x)),
            ExactScalar::Gaussian(z) => write!(f, "{z}"),
        }
    }
}

impl FromStr for ExactScalar {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, ExactError> {
        if s.trim_end().ends_with("*i") {
            Ok(ExactScalar::Gaussian(s.parse()?))
        } else {
            Ok(ExactScalar::Rational(parse_q(s)?))
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// String form used in JSON output for a coefficient ring.
pub trait ExactFmt {
    fn exact_string(&self) -> String;
    fn parse_exact(s: &str) -> Result<Self, ExactError>
    where
        Self: Sized;
}

impl ExactFmt for Q {
    fn exact_string(&self) -> String {
        fmt_q(self)
    }
    fn parse_exact(s: &str) -> Result<Self, ExactError> {
        parse_q(s)
    }
}

impl ExactFmt for Gauss {
    fn exact_string(&self) -> String {
        self.to_string()
    }
    fn parse_exact(s: &str) -> Result<Self, ExactError> {
        s.parse()
    }
}

/// Generalized binomial coefficient `binom(a, n)` for rational `a`.
pub fn binom_q(a: &Q, n: u32) -> Q {
    let mut r = Q::one();
    for j in 0..n {
        r = r * (a - qi(j as i64)) / qi(j as i64 + 1);
    }
    r
}

/// Integer binomial coefficient as a rational.
pub fn binom(n: u64, k: u64) -> Q {
    if k > n {
        return Q::zero();
    }
    binom_q(&qi(n as i64), k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_format_round_trip() {
        for (x, s) in [
            (q(5, 72), "5/72"),
            (q(-3, 4), "-3/4"),
            (qi(7), "7"),
            (q(6, 4), "3/2"),
        ] {
            assert_eq!(fmt_q(&x), s);
            assert_eq!(parse_q(s).unwrap(), x);
        }
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn gauss_format_round_trip() {
        let z = Gauss::new(q(1, 2), q(-3, 4));
        assert_eq!(z.to_string(), "1/2-3/4*i");
        assert_eq!("1/2-3/4*i".parse::<Gauss>().unwrap(), z);
        assert_eq!(
            "-1/2+3/4*i".parse::<Gauss>().unwrap(),
            Gauss::new(q(-1, 2), q(3, 4))
        );
        assert_eq!("2*i".parse::<Gauss>().unwrap(), Gauss::new(qi(0), qi(2)));
        assert_eq!("-5".parse::<Gauss>().unwrap(), Gauss::real(qi(-5)));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(Gauss::i() * Gauss::i(), -Gauss::one());
        assert_eq!(Gauss::i_pow(-1), -Gauss::i());
        let z = Gauss::new(q(2, 3), q(1, 5));
        assert_eq!(z.clone() * z.try_inv().unwrap(), Gauss::one());
    }

    #[test]
    fn representation_is_reduced() {
        let x = Q::new(BigInt::from(10), BigInt::from(-4));
        assert_eq!(x.numer(), &BigInt::from(-5));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn exact_scalar_tags() {
        let a: ExactScalar = "3/4".parse().unwrap();
        let b: ExactScalar = "3/4+0*i".parse().unwrap();
        assert!(matches!(a, ExactScalar::Rational(_)));
        assert!(matches!(b, ExactScalar::Gaussian(_)));
        assert_eq!(serde_json::to_string(&b).unwrap(), "\"3/4+0*i\"");
    }

    #[test]
    fn big_rational_to_float() {
        let mut x = qi(1);
        for k in 1..200 {
            x *= qi(k);
        }
        let y = &x / (&x * qi(3));
        assert!((q_to_f64(&y) - 1.0 / 3.0).abs() < 1e-15);
        let z = (&x + qi(1)) / (&x * qi(2));
        assert!((q_to_f64(&z) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_q(&q(3, 2), 2), q(3, 8));
        assert_eq!(binom(5, 2), qi(10));
        assert_eq!(binom(2, 3), qi(0));
    }
}
