//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Scalar`], which is implemented
//! for the rationals and for the Gaussian rationals `Q(i)` only. There is no
//! floating point path.

use std::fmt::{self, Debug};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Echelon};

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

/// Which exact field a table or matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Qi")]
    Qi,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => f.write_str("Q"),
            FieldTag::Qi => f.write_str("Qi"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("empty scalar literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("imaginary part in `{0}` is not allowed over Q")]
    NotReal(String),
}

/// An exact field usable by the linear algebra and Lie table code.
pub trait Scalar: Clone + Debug + PartialEq + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static {
    const FIELD: FieldTag;

    fn from_rational(q: Rational) -> Self;

    /// `None` when the value is not representable (imaginary part over Q).
    fn from_parts(re: Rational, im: Rational) -> Option<Self>;

    fn re(&self) -> Rational;
    fn im(&self) -> Rational;
    fn conj(&self) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// Row reduction to reduced row echelon form. Fields may override this
    /// with a faster exact strategy; the result must be identical.
    fn echelon(rows: Vec<Vec<Self>>, ncols: usize) -> Echelon<Self> {
        linalg::gauss_jordan(rows, ncols)
    }

    fn to_exact_string(&self) -> String;

    fn parse_exact(s: &str) -> Result<Self, ParseScalarError>;
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// `p/q` (or `p` when integral).
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| ParseScalarError::Malformed(s.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| ParseScalarError::Malformed(s.to_string()))?;
    if den.is_zero() {
        return Err(ParseScalarError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im_abs = z.im.abs();
    let im_str = if im_abs.is_one() { String::new() } else { format_rational(&im_abs) };
    let sign = if z.im.is_negative() { "-" } else { "+" };
    if z.re.is_zero() {
        let lead = if z.im.is_negative() { "-" } else { "" };
        format!("{lead}{im_str}i")
    } else {
        format!("{}{sign}{im_str}i", format_rational(&z.re))
    }
}

pub fn parse_gaussian(s: &str) -> Result<GaussianRational, ParseScalarError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&t)?, Rational::zero()));
    };
    // Split real and imaginary parts at the last sign that is not leading.
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
    };
    let re = if re.is_empty() { Rational::zero() } else { parse_rational(re)? };
    Ok(Complex::new(re, im))
}

impl Scalar for Rational {
    const FIELD: FieldTag = FieldTag::Q;

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        im.is_zero().then_some(re)
    }

    fn re(&self) -> Rational {
        self.clone()
    }

    fn im(&self) -> Rational {
        Rational::zero()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn echelon(rows: Vec<Vec<Self>>, ncols: usize) -> Echelon<Self> {
        linalg::fraction_free_echelon(rows, ncols)
    }

    fn to_exact_string(&self) -> String {
        format_rational(self)
    }

    fn parse_exact(s: &str) -> Result<Self, ParseScalarError> {
        let z = parse_gaussian(s)?;
        if !z.im.is_zero() {
            return Err(ParseScalarError::NotReal(s.to_string()));
        }
        Ok(z.re)
    }
}

impl Scalar for GaussianRational {
    const FIELD: FieldTag = FieldTag::Qi;

    fn from_rational(q: Rational) -> Self {
        Complex::new(q, Rational::zero())
    }

    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        Some(Complex::new(re, im))
    }

    fn re(&self) -> Rational {
        self.re.clone()
    }

    fn im(&self) -> Rational {
        self.im.clone()
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn to_exact_string(&self) -> String {
        format_gaussian(self)
    }

    fn parse_exact(s: &str) -> Result<Self, ParseScalarError> {
        parse_gaussian(s)
    }
}

/// A scalar whose field is only known at run time (e.g. while reading JSON).
///
/// A Gaussian rational with zero imaginary part compares equal to the
/// corresponding rational.
#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(Rational),
    Gaussian(GaussianRational),
}

impl ExactScalar {
    pub fn to_gaussian(&self) -> GaussianRational {
        match self {
            ExactScalar::Rational(q) => Complex::new(q.clone(), Rational::zero()),
            ExactScalar::Gaussian(z) => z.clone(),
        }
    }

    /// The rational value, when the imaginary part vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            ExactScalar::Rational(q) => Some(q.clone()),
            ExactScalar::Gaussian(z) => z.im.is_zero().then(|| z.re.clone()),
        }
    }

    pub fn field(&self) -> FieldTag {
        match self {
            ExactScalar::Rational(_) => FieldTag::Q,
            ExactScalar::Gaussian(_) => FieldTag::Qi,
        }
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.to_gaussian() == other.to_gaussian()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => f.write_str(&format_rational(q)),
            ExactScalar::Gaussian(z) => f.write_str(&format_gaussian(z)),
        }
    }
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let z = parse_gaussian(s)?;
        Ok(if z.im.is_zero() { ExactScalar::Rational(z.re) } else { ExactScalar::Gaussian(z) })
    }
}

/// Least common multiple of the denominators of a rational slice.
pub fn common_denominator(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-5/3"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(parse_rational("1/0"), Err(ParseScalarError::ZeroDenominator("1/0".into())));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_strings_round_trip() {
        for s in ["i", "-i", "2i", "-1/3i", "1+i", "1/2-3/4i", "5"] {
            let z = parse_gaussian(s).unwrap();
            assert_eq!(format_gaussian(&z), s, "literal {s}");
        }
        assert_eq!(parse_gaussian("1/3i").unwrap(), gauss(int(0), rat(1, 3)));
    }

    #[test]
    fn zero_imaginary_part_equals_rational() {
        let a: ExactScalar = "3/4".parse().unwrap();
        let b = ExactScalar::Gaussian(gauss(rat(3, 4), int(0)));
        assert_eq!(a, b);
        assert_ne!(a, ExactScalar::Gaussian(gauss(rat(3, 4), int(1))));
        assert!(Rational::parse_exact("2i").is_err());
    }

    #[test]
    fn denominators_normalised() {
        let q = rat(4, -6);
        assert_eq!(q.denom(), &BigInt::from(3));
        assert_eq!(q.numer(), &BigInt::from(-2));
    }
}
