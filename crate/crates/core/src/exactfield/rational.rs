use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::{Field, FieldTag, OrderedField, Ring};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `num/den` as a [`Rational`]. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.is_empty() {
        return Err(Error::parse("rational", s));
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| Error::parse("rational", s))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| Error::parse("rational", s))?;
            if d.is_zero() {
                return Err(Error::parse("rational", s));
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| Error::parse("rational", s)),
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn from_i64_like(&self, value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        let mut rows = integer_rows(m, None);
        bareiss_echelon(&mut rows, m.cols()).len()
    }

    fn matrix_solve(m: &Matrix<Self>, rhs: &Matrix<Self>) -> Result<Matrix<Self>> {
        bareiss_solve(m, rhs)
    }
}

impl OrderedField for Rational {
    fn signum(&self) -> Ordering {
        self.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Scales each row (optionally with an appended right-hand-side block) by the
/// lcm of its denominators, giving an integer matrix with the same row space.
fn integer_rows(m: &Matrix<Rational>, rhs: Option<&Matrix<Rational>>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let mut entries: Vec<&Rational> = m.row(r).iter().collect();
            if let Some(b) = rhs {
                entries.extend(b.row(r).iter());
            }
            let lcm = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            entries.into_iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free row echelon form over ℤ, eliminating only within the first
/// `pivot_cols` columns. Returns the pivot columns; after the call the first
/// `pivots.len()` rows are the echelon rows.
///
/// Every division by the previous pivot is exact (entries stay minors of the input).
fn bareiss_echelon(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..pivot_cols {
        if k == rows {
            break;
        }
        let Some(pr) = (k..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(k, pr);
        for i in k + 1..rows {
            for j in c + 1..width {
                let t = &a[i][j] * &a[k][c] - &a[i][c] * &a[k][j];
                debug_assert!((&t % &prev).is_zero(), "inexact Bareiss division");
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    pivots
}

fn bareiss_solve(m: &Matrix<Rational>, rhs: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::malformed(format!(
            "solve needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if rhs.rows() != n {
        return Err(Error::malformed(format!(
            "right-hand side has {} rows, matrix has {}",
            rhs.rows(),
            n
        )));
    }
    let mut a = integer_rows(m, Some(rhs));
    let pivots = bareiss_echelon(&mut a, n);
    if pivots.len() < n {
        return Err(Error::Singular {
            rank: pivots.len(),
            size: n,
        });
    }
    let k = rhs.cols();
    let mut out = vec![Rational::zero(); n * k];
    for col in 0..k {
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n + col].clone());
            for j in i + 1..n {
                if !a[i][j].is_zero() {
                    acc -= Rational::from_integer(a[i][j].clone()) * &out[j * k + col];
                }
            }
            out[i * k + col] = acc / Rational::from_integer(a[i][i].clone());
        }
    }
    Matrix::from_vec(n, k, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert_eq!(parse_rational("-2/4").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational(" 6/-4 ").unwrap(), rational(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert_eq!(rational(-1, 4).to_string(), "-1/4");
        assert_eq!(rational(4, 2).to_string(), "2");
        assert_eq!(rational(0, 5).to_string(), "0");
    }

    #[test]
    fn sign_is_exact() {
        assert_eq!(rational(-1, 3).signum(), Ordering::Less);
        assert_eq!(rational(0, 3).signum(), Ordering::Equal);
        assert_eq!(rational(1, 3).signum(), Ordering::Greater);
    }
}
