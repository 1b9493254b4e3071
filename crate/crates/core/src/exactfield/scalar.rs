use std::fmt;

use super::{parse_rational, Fp, PrimeFieldCtx, QuadExt, Rational};
use crate::error::{Error, Result};

/// A scalar from any of the supported fields, as read from or written to JSON.
///
/// Text syntax: rationals `"p/q"` (or `"p"`), quadratic elements
/// `"p/q+r/s*sqrt(d)"`, residues as decimal integers in `[0, p-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactScalar {
    Rational(Rational),
    Quadratic(QuadExt),
    Modular(Fp),
}

impl ExactScalar {
    /// Parses a rational or quadratic element; the presence of `sqrt(` selects ℚ(√d).
    pub fn parse_real(s: &str) -> Result<Self> {
        if s.contains("sqrt(") {
            QuadExt::parse(s, None).map(ExactScalar::Quadratic)
        } else {
            parse_rational(s).map(ExactScalar::Rational)
        }
    }

    /// Parses a residue in `[0, p-1]`.
    pub fn parse_modular(s: &str, field: &PrimeFieldCtx) -> Result<Self> {
        let v: u64 = s.trim().parse().map_err(|_| Error::parse("residue", s))?;
        if v >= field.modulus() {
            return Err(Error::malformed(format!(
                "residue {v} outside [0, {}]",
                field.modulus() - 1
            )));
        }
        Ok(ExactScalar::Modular(field.from_u64(v)))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(x) => write!(f, "{x}"),
            ExactScalar::Quadratic(x) => write!(f, "{x}"),
            ExactScalar::Modular(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_selects_field() {
        assert!(matches!(
            ExactScalar::parse_real("1/4").unwrap(),
            ExactScalar::Rational(_)
        ));
        assert!(matches!(
            ExactScalar::parse_real("1/4*sqrt(5)").unwrap(),
            ExactScalar::Quadratic(_)
        ));
        let f5 = PrimeFieldCtx::new(5).unwrap();
        assert_eq!(ExactScalar::parse_modular("3", &f5).unwrap().to_string(), "3");
        assert!(ExactScalar::parse_modular("5", &f5).is_err());
        assert!(ExactScalar::parse_modular("-1", &f5).is_err());
    }
}
