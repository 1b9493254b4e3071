//! Closed-form size bounds and the hypothesis checker for the modular
//! constant-distance bound.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::is_prime;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Σ_{i=0}^{s} C(n,i)(q-1)^i`: the largest possible q-ary code of length n
/// with at most `s` distinct pairwise distances.
pub fn delsarte_bound(n: u64, q: u64, s: u64) -> Result<BigUint> {
    if s == 0 || s > n {
        return Err(Error::hypothesis(format!("need 0 < s <= n, got s = {s}, n = {n}")));
    }
    if q < 2 {
        return Err(Error::hypothesis(format!("need q > 1, got {q}")));
    }
    let base = BigUint::from(q - 1);
    Ok((0..=s).map(|i| binomial(n, i) * base.pow(i as u32)).sum())
}

/// `M(n,s) = C(n+s-1, s) + C(n+s-2, s-1)`, the spherical s-distance bound in ℝ^n.
pub fn msd_bound(n: u64, s: u64) -> Result<BigUint> {
    if n == 0 || s == 0 {
        return Err(Error::hypothesis(format!("need n, s >= 1, got n = {n}, s = {s}")));
    }
    Ok(binomial(n + s - 1, s) + binomial(n + s - 2, s - 1))
}

/// `n(n+3)/2`, the two-distance bound on the sphere in ℝ^n.
pub fn two_distance_max(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::hypothesis("need n >= 1"));
    }
    let v = BigUint::from(n) * BigUint::from(n + 3) / 2u32;
    debug_assert_eq!(Some(&v), msd_bound(n, 2).ok().as_ref());
    Ok(v)
}

/// `C(n-w+2, 2)`, the conjectured maximum of a w-uniform family on [n]
/// with two intersection sizes.
pub fn uniform_two_intersection_conjecture(n: u64, w: u64) -> Result<BigUint> {
    if w < 2 || w > n {
        return Err(Error::hypothesis(format!("need 2 <= w <= n, got w = {w}, n = {n}")));
    }
    Ok(binomial(n - w + 2, 2))
}

/// Clause-by-clause verdict for the modular constant-distance bound
/// `|H| <= n(q-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Thm3Hypotheses {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub lambda: u64,
    pub p_prime: bool,
    pub p_geq_q: bool,
    pub n_nonzero_mod_p: bool,
    pub lambda_nonzero_mod_p: bool,
    pub q_lambda_clause: bool,
    /// `n(q-1)` when every clause holds.
    pub bound: Option<u64>,
}

impl Thm3Hypotheses {
    pub fn holds(&self) -> bool {
        self.p_prime && self.p_geq_q && self.n_nonzero_mod_p && self.lambda_nonzero_mod_p && self.q_lambda_clause
    }

    /// `(clause name, holds)` in a fixed order.
    pub fn clauses(&self) -> [(&'static str, bool); 5] {
        [
            ("pPrime", self.p_prime),
            ("pGeqQ", self.p_geq_q),
            ("nNonzeroModP", self.n_nonzero_mod_p),
            ("lambdaNonzeroModP", self.lambda_nonzero_mod_p),
            ("qLambdaClause", self.q_lambda_clause),
        ]
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.clauses()
            .into_iter()
            .find(|(_, holds)| !holds)
            .map(|(name, _)| name)
    }
}

pub fn check_thm3_hypotheses(n: u64, q: u64, p: u64, lambda: u64) -> Result<Thm3Hypotheses> {
    if q < 2 || lambda == 0 || n == 0 {
        return Err(Error::hypothesis(format!(
            "need n >= 1, q > 1 and lambda > 0, got n = {n}, q = {q}, lambda = {lambda}"
        )));
    }
    let p_prime = is_prime(p);
    let nonzero = |x: u64| p == 0 || !x.is_multiple_of(p);
    // q·λ ≢ n(q−1)+1 (mod p), evaluated with both sides reduced
    let q_lambda_clause = p != 0 && (q * lambda) % p != (n * (q - 1) + 1) % p;
    let mut h = Thm3Hypotheses {
        n,
        q,
        p,
        lambda,
        p_prime,
        p_geq_q: p >= q,
        n_nonzero_mod_p: nonzero(n),
        lambda_nonzero_mod_p: nonzero(lambda),
        q_lambda_clause,
        bound: None,
    };
    if h.holds() {
        h.bound = Some(n * (q - 1));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn delsarte_examples() {
        assert_eq!(delsarte_bound(4, 2, 4).unwrap(), u(16));
        assert_eq!(delsarte_bound(3, 2, 1).unwrap(), u(4));
        assert_eq!(delsarte_bound(2, 3, 2).unwrap(), u(9));
        assert!(matches!(delsarte_bound(3, 2, 0), Err(Error::HypothesisViolation(_))));
        assert!(matches!(delsarte_bound(3, 2, 4), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn delsarte_full_range_is_whole_space() {
        for n in 1..=6u64 {
            for q in 2..=4u64 {
                assert_eq!(delsarte_bound(n, q, n).unwrap(), BigUint::from(q).pow(n as u32));
            }
        }
    }

    #[test]
    fn msd_examples() {
        assert_eq!(msd_bound(2, 2).unwrap(), u(5));
        assert_eq!(msd_bound(6, 2).unwrap(), u(27));
        for n in 1..20 {
            assert_eq!(msd_bound(n, 1).unwrap(), u(n + 1));
        }
    }

    #[test]
    fn two_distance_examples() {
        assert_eq!(two_distance_max(2).unwrap(), u(5));
        assert_eq!(two_distance_max(6).unwrap(), u(27));
        assert_eq!(two_distance_max(22).unwrap(), u(275));
        for n in 1..=50 {
            assert_eq!(two_distance_max(n).unwrap(), msd_bound(n, 2).unwrap());
        }
    }

    #[test]
    fn conjecture_examples() {
        for n in 2..10 {
            assert_eq!(uniform_two_intersection_conjecture(n, n).unwrap(), u(1));
        }
        assert_eq!(uniform_two_intersection_conjecture(6, 3).unwrap(), u(10));
        assert_eq!(uniform_two_intersection_conjecture(5, 2).unwrap(), u(10));
        assert!(uniform_two_intersection_conjecture(5, 1).is_err());
        assert!(uniform_two_intersection_conjecture(5, 6).is_err());
    }

    #[test]
    fn thm3_clauses() {
        let h = check_thm3_hypotheses(4, 2, 3, 2).unwrap();
        assert!(h.holds());
        assert_eq!(h.bound, Some(4));

        let h = check_thm3_hypotheses(3, 2, 5, 2).unwrap();
        assert!(!h.q_lambda_clause);
        assert_eq!(h.first_failure(), Some("qLambdaClause"));
        assert_eq!(h.bound, None);

        let h = check_thm3_hypotheses(3, 2, 3, 1).unwrap();
        assert!(!h.n_nonzero_mod_p);
        assert_eq!(h.first_failure(), Some("nNonzeroModP"));

        let h = check_thm3_hypotheses(4, 3, 2, 1).unwrap();
        assert!(!h.p_geq_q);
        let h = check_thm3_hypotheses(4, 2, 9, 1).unwrap();
        assert_eq!(h.first_failure(), Some("pPrime"));
    }
}
