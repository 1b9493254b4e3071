use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::Ring;

/// A monomial as the sorted multiset of its 0-based variable indices;
/// the empty multiset is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Self(vec![i])
    }

    pub fn from_vars(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        Self(vars)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    /// Exponent of variable `i`.
    pub fn exponent(&self, i: usize) -> usize {
        self.0.iter().filter(|&&v| v == i).count()
    }

    fn times(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::from_vars(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let e = self.exponent(v);
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", v + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            i += e;
        }
        Ok(())
    }
}

/// A polynomial in `n` variables with sparse coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    n: usize,
    zero: T,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Ring> Poly<T> {
    pub fn zero(n: usize, zero: T) -> Self {
        Self {
            n,
            zero,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: T) -> Self {
        let mut p = Self::zero(n, c.zero_like());
        p.add_term(Monomial::one(), c);
        p
    }

    /// `Σ coeffs[i]·x_i + constant`.
    pub fn linear(coeffs: &[T], constant: T) -> Self {
        let mut p = Self::constant(coeffs.len(), constant);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        debug_assert!(m.vars().iter().all(|&v| v < self.n));
        let entry = self.terms.entry(m).or_insert_with(|| self.zero.clone());
        *entry = entry.clone() + c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.n, self.zero.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n.max(other.n), self.zero.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn eval(&self, x: &[T]) -> T {
        self.terms.iter().fold(self.zero.clone(), |acc, (m, c)| {
            acc + m.vars().iter().fold(c.clone(), |prod, &v| prod * x[v].clone())
        })
    }

    pub fn map<U: Ring>(&self, zero: U, f: impl Fn(&T) -> U) -> Poly<U> {
        let mut out = Poly::zero(self.n, zero);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

/// A polynomial supported on the monomials of degree at most 2 that have
/// degree at most 1 in `x₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedPoly<T>(Poly<T>);

impl<T: Ring> ReducedPoly<T> {
    pub fn as_poly(&self) -> &Poly<T> {
        &self.0
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.0.coefficient(m)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self(self.0.scale(s))
    }
}

/// The `n(n+3)/2` monomials a [`ReducedPoly`] may use, in monomial order.
pub fn reduced_monomials(n: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    out.extend((0..n).map(Monomial::var));
    for i in 0..n {
        for j in i..n {
            if (i, j) != (0, 0) {
                out.push(Monomial::from_vars(vec![i, j]));
            }
        }
    }
    out.sort();
    out
}

/// Rewrites `x₁²` as `1 - x₂² - … - x_n²`, which leaves the values on the
/// unit sphere unchanged.
pub fn sphere_reduce<T: Ring>(p: &Poly<T>) -> Result<ReducedPoly<T>> {
    let degree = p.degree();
    if degree > 2 {
        return Err(Error::UnsupportedDegree(degree as u32));
    }
    let square = Monomial::from_vars(vec![0, 0]);
    let mut out = Poly::zero(p.n, p.zero.clone());
    for (m, c) in &p.terms {
        if *m == square {
            out.add_term(Monomial::one(), c.clone());
            for i in 1..p.n {
                out.add_term(Monomial::from_vars(vec![i, i]), -c.clone());
            }
        } else {
            out.add_term(m.clone(), c.clone());
        }
    }
    debug_assert!(out.terms.keys().all(|m| m.degree() <= 2 && m.exponent(0) <= 1));
    Ok(ReducedPoly(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rational, Rational};

    fn r(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn reduced_monomial_count() {
        for n in 1..10 {
            assert_eq!(reduced_monomials(n).len(), n * (n + 3) / 2);
        }
    }

    #[test]
    fn reduce_square_of_first_variable() {
        let mut p = Poly::zero(3, r(0));
        p.add_term(Monomial::from_vars(vec![0, 0]), r(1));
        let q = sphere_reduce(&p).unwrap();
        assert_eq!(q.coefficient(&Monomial::one()), r(1));
        assert_eq!(q.coefficient(&Monomial::from_vars(vec![1, 1])), r(-1));
        assert_eq!(q.coefficient(&Monomial::from_vars(vec![2, 2])), r(-1));
        assert_eq!(q.coefficient(&Monomial::from_vars(vec![0, 0])), r(0));
    }

    #[test]
    fn reduce_constant_and_binomial_square() {
        let c = Poly::constant(2, r(3));
        assert_eq!(sphere_reduce(&c).unwrap().as_poly(), &c);
        let l = Poly::linear(&[r(1), r(1)], r(0));
        let q = sphere_reduce(&l.mul(&l)).unwrap();
        assert_eq!(q.coefficient(&Monomial::one()), r(1));
        assert_eq!(q.coefficient(&Monomial::from_vars(vec![0, 1])), r(2));
        assert_eq!(q.coefficient(&Monomial::from_vars(vec![1, 1])), r(0));
    }

    #[test]
    fn rejects_cubic() {
        let l = Poly::linear(&[r(1)], r(0));
        assert_eq!(sphere_reduce(&l.mul(&l).mul(&l)), Err(Error::UnsupportedDegree(3)));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::from_vars(vec![1, 0]).to_string(), "x1*x2");
        assert_eq!(Monomial::from_vars(vec![2, 2]).to_string(), "x3^2");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
