use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{parse_rational, Rational};
use super::{Field, FieldTag, OrderedField, Ring};
use crate::error::{Error, Result};

/// An element `rational + surd·√radicand` of the real quadratic field ℚ(√d).
///
/// The radicand is a squarefree integer `d ≥ 2`. Arithmetic through the
/// operator traits panics on mismatched radicands; the `try_*` methods
/// return [`Error::RadicandMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rational,
    surd: Rational,
    radicand: u64,
}

fn is_squarefree(d: u64) -> bool {
    let mut f = 2u64;
    while f * f <= d {
        if d.is_multiple_of(f * f) {
            return false;
        }
        f += 1;
    }
    true
}

impl QuadExt {
    pub fn new(rational: Rational, surd: Rational, radicand: u64) -> Result<Self> {
        if radicand < 2 || !is_squarefree(radicand) {
            return Err(Error::malformed(format!(
                "radicand {radicand} is not a squarefree integer >= 2"
            )));
        }
        Ok(Self {
            rational,
            surd,
            radicand,
        })
    }

    pub fn from_rational(value: Rational, radicand: u64) -> Result<Self> {
        Self::new(value, Rational::zero(), radicand)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// The Galois conjugate `r − s√d`.
    pub fn conjugate(&self) -> Self {
        Self {
            rational: self.rational.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand,
        }
    }

    /// The field norm `r² − s²d`, nonzero for every nonzero element.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.surd * &self.surd * Rational::from(self.d())
    }

    fn d(&self) -> num_bigint::BigInt {
        num_bigint::BigInt::from(self.radicand)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.radicand == other.radicand {
            Ok(())
        } else {
            Err(Error::RadicandMismatch {
                left: self.radicand,
                right: other.radicand,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            rational: &self.rational + &other.rational,
            surd: &self.surd + &other.surd,
            radicand: self.radicand,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = Rational::from(self.d());
        Ok(Self {
            rational: &self.rational * &other.rational + &self.surd * &other.surd * d,
            surd: &self.rational * &other.surd + &self.surd * &other.rational,
            radicand: self.radicand,
        })
    }

    /// Parses `"p/q+r/s*sqrt(d)"`; either term may be absent, `"sqrt(d)"` and
    /// `"-sqrt(d)"` are accepted for unit coefficients. A string without a
    /// surd term needs `default_radicand`.
    pub fn parse(s: &str, default_radicand: Option<u64>) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse("quadratic element", s));
        }
        let mut rational_part: Option<Rational> = None;
        let mut surd_part: Option<(Rational, u64)> = None;
        for term in split_terms(&compact) {
            if let Some(idx) = term.find("sqrt(") {
                let inner = term[idx + 5..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse("quadratic element", s))?;
                let d: u64 = inner.parse().map_err(|_| Error::parse("quadratic element", s))?;
                let coef = match &term[..idx] {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    c => parse_rational(
                        c.strip_suffix('*')
                            .ok_or_else(|| Error::parse("quadratic element", s))?,
                    )?,
                };
                if surd_part.replace((coef, d)).is_some() {
                    return Err(Error::parse("quadratic element", s));
                }
            } else if rational_part.replace(parse_rational(term)?).is_some() {
                return Err(Error::parse("quadratic element", s));
            }
        }
        let rational_part = rational_part.unwrap_or_else(Rational::zero);
        match surd_part {
            Some((coef, d)) => Self::new(rational_part, coef, d),
            None => match default_radicand {
                Some(d) => Self::new(rational_part, Rational::zero(), d),
                None => Err(Error::parse("quadratic element (no radicand)", s)),
            },
        }
    }
}

/// Splits at `+`/`-` signs that start a new term (not at position 0 and not
/// directly after `/`, `*` or `(`).
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'*' | b'(') {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r_zero = Zero::is_zero(&self.rational);
        let s_zero = Zero::is_zero(&self.surd);
        if s_zero {
            return write!(f, "{}", self.rational);
        }
        if !r_zero {
            write!(f, "{}", self.rational)?;
            if self.surd.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.surd.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if (-self.surd.clone()).is_one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.surd, self.radicand)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self.try_add(&rhs).expect("radicand mismatch")
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self.try_sub(&rhs).expect("radicand mismatch")
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self.try_mul(&rhs).expect("radicand mismatch")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rational: -self.rational,
            surd: -self.surd,
            radicand: self.radicand,
        }
    }
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        Self {
            rational: Rational::zero(),
            surd: Rational::zero(),
            radicand: self.radicand,
        }
    }

    fn one_like(&self) -> Self {
        Self {
            rational: Rational::one(),
            surd: Rational::zero(),
            radicand: self.radicand,
        }
    }

    fn from_i64_like(&self, value: i64) -> Self {
        Self {
            rational: Rational::from_integer(value.into()),
            surd: Rational::zero(),
            radicand: self.radicand,
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.rational) && Zero::is_zero(&self.surd)
    }
}

impl Field for QuadExt {
    fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let norm = self.norm();
        let conj = self.conjugate();
        Some(Self {
            rational: conj.rational / &norm,
            surd: conj.surd / &norm,
            radicand: self.radicand,
        })
    }

    fn tag(&self) -> FieldTag {
        FieldTag::Quadratic(self.radicand)
    }
}

impl OrderedField for QuadExt {
    /// Sign of `r + s√d` by case analysis: equal signs decide directly,
    /// opposite signs compare `r²` against `s²d`.
    fn signum(&self) -> Ordering {
        let sr = self.rational.numer().sign();
        let ss = self.surd.numer().sign();
        use num_bigint::Sign::*;
        match (sr, ss) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            (Plus, Minus) | (Minus, Plus) => {
                let r2 = &self.rational * &self.rational;
                let s2d = &self.surd * &self.surd * Rational::from(self.d());
                // r² ≠ s²d because d is not a perfect square
                let rational_dominates = r2 > s2d;
                match (sr, rational_dominates) {
                    (Plus, true) | (Minus, false) => Ordering::Greater,
                    _ => Ordering::Less,
                }
            }
        }
    }

    fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.surd.to_f64() * (self.radicand as f64).sqrt()
    }

    fn to_rational(&self) -> Option<Rational> {
        Zero::is_zero(&self.surd).then(|| self.rational.clone())
    }
}
