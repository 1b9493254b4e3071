use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::{Field, FieldTag, Ring};
use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeFieldCtx`]; products fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldCtx {
    p: u64,
}

impl PrimeFieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::hypothesis(format!(
                "modulus {p} exceeds the supported bound 2^31"
            )));
        }
        if !is_prime(p) {
            return Err(Error::hypothesis(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: i64) -> Fp {
        let p = self.p as i64;
        Fp {
            value: value.rem_euclid(p) as u64,
            modulus: self.p,
        }
    }

    pub fn from_u64(&self, value: u64) -> Fp {
        Fp {
            value: value % self.p,
            modulus: self.p,
        }
    }

    pub fn zero(&self) -> Fp {
        self.from_u64(0)
    }

    pub fn one(&self) -> Fp {
        self.from_u64(1)
    }
}

/// A residue modulo a prime. Combining residues of different moduli panics;
/// matrices reject such mixtures at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(&self, mut exp: u64) -> Fp {
        let mut base = *self;
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in prime-field arithmetic");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: (self.value * rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }

    fn one_like(&self) -> Self {
        Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        }
    }

    fn from_i64_like(&self, value: i64) -> Self {
        Fp {
            value: value.rem_euclid(self.modulus as i64) as u64,
            modulus: self.modulus,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Field for Fp {
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.modulus)
    }
}
