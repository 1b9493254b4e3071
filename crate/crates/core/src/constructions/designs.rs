use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::is_prime;
use crate::families::{distance_set, intersection_profile, PointSet, SetFamily};

/// Largest prime order accepted by [`projective_plane`].
pub const MAX_PLANE_ORDER: u64 = 31;

/// Parameters `(n, k', λ')` of a symmetric design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymmetricDesignParams {
    pub n: u64,
    pub k_prime: u64,
    pub lambda_prime: u64,
}

impl SymmetricDesignParams {
    /// Checks `λ'(n-1) = k'(k'-1)`.
    pub fn new(n: u64, k_prime: u64, lambda_prime: u64) -> Result<Self> {
        if n == 0 || lambda_prime * (n - 1) != k_prime * k_prime.saturating_sub(1) {
            return Err(Error::hypothesis(format!(
                "({n}, {k_prime}, {lambda_prime}) violates lambda'(n-1) = k'(k'-1)"
            )));
        }
        Ok(Self {
            n,
            k_prime,
            lambda_prime,
        })
    }
}

/// Reads off `(n, k', λ')` after checking that `d` has as many blocks as
/// points, uniform block size and constant pairwise intersection.
pub fn symmetric_design_params(d: &SetFamily) -> Result<SymmetricDesignParams> {
    if d.len() != d.n() {
        return Err(Error::hypothesis(format!(
            "{} blocks on {} points is not a symmetric design",
            d.len(),
            d.n()
        )));
    }
    let sizes = d.sizes();
    let Some(&k) = sizes.first() else {
        return Err(Error::hypothesis("empty design"));
    };
    if let Some(i) = sizes.iter().position(|&s| s != k) {
        return Err(Error::hypothesis(format!(
            "block {} has size {}, block 1 has size {k}",
            i + 1,
            sizes[i]
        )));
    }
    let lambda = if d.len() < 2 {
        // a single block on one point: k'(k'-1) = 0 forces nothing on λ'
        0
    } else {
        intersection_profile(d)?
            .lambda_if_constant
            .ok_or_else(|| Error::hypothesis("block intersections are not constant"))?
    };
    SymmetricDesignParams::new(d.n() as u64, k as u64, lambda as u64)
}

/// PG(2, r) for a prime r: points and lines are the normalised nonzero
/// vectors of 𝔽_r³ (first nonzero coordinate 1) in lexicographic order, and
/// line ℓ contains point P iff ℓ·P = 0.
pub fn projective_plane(r: u64) -> Result<SetFamily> {
    if !is_prime(r) {
        return Err(Error::hypothesis(format!("plane order {r} is not prime")));
    }
    if r > MAX_PLANE_ORDER {
        return Err(Error::hypothesis(format!("plane order {r} exceeds {MAX_PLANE_ORDER}")));
    }
    let mut normalised = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    normalised.push(v);
                }
            }
        }
    }
    let n = normalised.len();
    let lines = normalised
        .iter()
        .map(|l| {
            normalised
                .iter()
                .enumerate()
                .filter(|(_, p)| (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]) % r == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let plane = SetFamily::new(n, lines)?;
    let params =
        symmetric_design_params(&plane).map_err(|e| Error::internal(format!("PG(2,{r}) failed its own check: {e}")))?;
    if params.n != r * r + r + 1 || params.k_prime != r + 1 || params.lambda_prime != 1 {
        return Err(Error::internal(format!("PG(2,{r}) produced parameters {params:?}")));
    }
    Ok(plane)
}

/// The Fano plane PG(2, 2).
pub fn fano() -> SetFamily {
    projective_plane(2).expect("PG(2,2) is valid")
}

/// The Paley `(4v-1, 2v-1, v-1)` design: translates of the nonzero squares
/// modulo the prime `4v-1`. Point `x` of ℤ/(4v−1) is ground-set element `x`.
pub fn hadamard_design(v: u64) -> Result<SetFamily> {
    if v == 0 {
        return Err(Error::hypothesis("v must be positive"));
    }
    let m = 4 * v - 1;
    if !is_prime(m) {
        return Err(Error::UnsupportedOrder(m));
    }
    let mut residues: Vec<u64> = (1..m).map(|x| x * x % m).collect();
    residues.sort_unstable();
    residues.dedup();
    let blocks = (0..m)
        .map(|t| residues.iter().map(|&x| ((x + t) % m) as usize).collect())
        .collect();
    let design = SetFamily::new(m as usize, blocks)?;
    let params = symmetric_design_params(&design)
        .map_err(|e| Error::internal(format!("Paley design v = {v} failed its own check: {e}")))?;
    if params.k_prime != 2 * v - 1 || params.lambda_prime != v - 1 {
        return Err(Error::internal(format!(
            "Paley design v = {v} produced parameters {params:?}"
        )));
    }
    Ok(design)
}

/// The Paley design together with the full ground set: `4v` sets on `[4v-1]`
/// whose characteristic vectors are pairwise at Hamming distance exactly `2v`.
pub fn hadamard_plus_full(v: u64) -> Result<SetFamily> {
    let design = hadamard_design(v)?;
    let n = design.n();
    let mut sets = design.sets().to_vec();
    sets.push(PointSet::full(n));
    let family = SetFamily::from_point_sets(n, sets)?;
    let profile = distance_set(&family.characteristic_vectors()?)?;
    if profile.common_value != Some(2 * v as usize) {
        return Err(Error::internal(format!(
            "design plus full set has distances {:?}, expected {{{}}}",
            profile.distance_set,
            2 * v
        )));
    }
    Ok(family)
}

/// Type-1 λ-design: keep block `block_index` of a symmetric design and
/// replace every other block by its symmetric difference with it.
///
/// The output has sizes in `{k', 2(k'-λ')}` and constant intersection `k'-λ'`.
pub fn lambda_design_type1(d: &SetFamily, block_index: usize) -> Result<SetFamily> {
    if block_index >= d.len() {
        return Err(Error::malformed(format!(
            "block index {block_index} out of range for {} blocks",
            d.len()
        )));
    }
    let params = symmetric_design_params(d)?;
    if d.len() == 1 {
        return Ok(d.clone());
    }
    let base = d.set(block_index);
    let sets = d
        .sets()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == block_index {
                c.clone()
            } else {
                c.symmetric_difference(base)
            }
        })
        .collect();
    let out = SetFamily::from_point_sets(d.n(), sets)?;

    let k = params.k_prime as usize;
    let diff = (params.k_prime - params.lambda_prime) as usize;
    if let Some(s) = out.sizes().into_iter().find(|&s| s != k && s != 2 * diff) {
        return Err(Error::internal(format!(
            "type-1 design has a block of size {s}, expected {k} or {}",
            2 * diff
        )));
    }
    let lambda = intersection_profile(&out)?.lambda_if_constant;
    if lambda != Some(diff) {
        return Err(Error::internal(format!(
            "type-1 design intersections {lambda:?}, expected {diff}"
        )));
    }
    Ok(out)
}

/// The λ-design obtained from PG(2, r) for a prime `r ≡ 1 (mod p)`.
///
/// Requests with `p = 3` are refused: then `n = r²+r+1 ≡ 0 (mod 3)` and the
/// modular design congruences no longer apply.
pub fn projective_lambda_design(p: u64, r: u64) -> Result<SetFamily> {
    if !is_prime(p) {
        return Err(Error::hypothesis(format!("{p} is not prime")));
    }
    if p == 3 {
        return Err(Error::hypothesis(
            "p = 3 gives n = r^2+r+1 divisible by 3; only p >= 5 is supported",
        ));
    }
    if p < 3 {
        return Err(Error::hypothesis(format!("p = {p} must be an odd prime")));
    }
    if r % p != 1 {
        return Err(Error::hypothesis(format!("r = {r} is not 1 mod {p}")));
    }
    lambda_design_type1(&projective_plane(r)?, 0)
}

/// `{1, x}` for `x = 2..n` together with `{2, …, n}` (1-based): a
/// non-uniform family with all pairwise intersections 1.
pub fn near_pencil(n: usize) -> Result<SetFamily> {
    if n < 3 {
        return Err(Error::hypothesis(format!("near-pencil needs n >= 3, got {n}")));
    }
    let mut sets: Vec<Vec<usize>> = (1..n).map(|x| vec![0, x]).collect();
    sets.push((1..n).collect());
    SetFamily::new(n, sets)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::families::{degrees, intersection_profile};

    #[test]
    fn fano_plane() {
        let f = fano();
        assert_eq!(f.n(), 7);
        assert_eq!(f.len(), 7);
        assert!(f.sizes().iter().all(|&s| s == 3));
        assert_eq!(intersection_profile(&f).unwrap().lambda_if_constant, Some(1));
    }

    #[test]
    fn larger_planes() {
        let p3 = projective_plane(3).unwrap();
        assert_eq!(p3.n(), 13);
        assert!(p3.sizes().iter().all(|&s| s == 4));
        let p11 = projective_plane(11).unwrap();
        assert_eq!(p11.n(), 133);
        assert!(p11.sizes().iter().all(|&s| s == 12));
        assert!(matches!(projective_plane(4), Err(Error::HypothesisViolation(_))));
        assert!(projective_plane(37).is_err());
    }

    #[test]
    fn paley_designs() {
        let d1 = hadamard_design(1).unwrap();
        let blocks: BTreeSet<Vec<usize>> = d1.to_point_lists().into_iter().collect();
        assert_eq!(blocks, BTreeSet::from([vec![0], vec![1], vec![2]]));

        let d2 = hadamard_design(2).unwrap();
        assert_eq!(d2.to_point_lists()[0], vec![1, 2, 4]);
        assert_eq!(
            symmetric_design_params(&d2).unwrap(),
            SymmetricDesignParams::new(7, 3, 1).unwrap()
        );

        let d3 = hadamard_design(3).unwrap();
        assert_eq!(d3.to_point_lists()[0], vec![1, 3, 4, 5, 9]);
        assert_eq!(intersection_profile(&d3).unwrap().lambda_if_constant, Some(2));

        assert_eq!(hadamard_design(4), Err(Error::UnsupportedOrder(15)));
    }

    #[test]
    fn paley_plus_full() {
        let f1 = hadamard_plus_full(1).unwrap();
        let lists: BTreeSet<Vec<usize>> = f1.to_point_lists().into_iter().collect();
        assert_eq!(lists, BTreeSet::from([vec![0], vec![1], vec![2], vec![0, 1, 2]]));
        for v in 1..=3 {
            let f = hadamard_plus_full(v).unwrap();
            assert_eq!(f.len() as u64, 4 * v);
            assert_eq!(f.n() as u64, 4 * v - 1);
            let prof = distance_set(&f.characteristic_vectors().unwrap()).unwrap();
            assert_eq!(prof.common_value, Some(2 * v as usize));
        }
    }

    #[test]
    fn fano_lambda_design() {
        let f = fano();
        for b in 0..7 {
            let l = lambda_design_type1(&f, b).unwrap();
            let sizes: BTreeSet<usize> = l.sizes().into_iter().collect();
            assert_eq!(sizes, BTreeSet::from([3, 4]));
            assert_eq!(intersection_profile(&l).unwrap().lambda_if_constant, Some(2));
            assert_eq!(l.len(), 7);
        }
    }

    #[test]
    fn pg11_lambda_design() {
        let l = projective_lambda_design(5, 11).unwrap();
        let sizes: BTreeSet<usize> = l.sizes().into_iter().collect();
        assert_eq!(sizes, BTreeSet::from([12, 22]));
        assert_eq!(intersection_profile(&l).unwrap().lambda_if_constant, Some(11));
        assert_eq!(l.n(), 133);
        assert!(degrees(&l).iter().all(|d| d % 5 == 2));
    }

    #[test]
    fn remark_instances_refuse_p3() {
        assert!(matches!(
            projective_lambda_design(3, 7),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(projective_lambda_design(5, 7).is_err());
    }

    #[test]
    fn single_block_design_is_unchanged() {
        let d = SetFamily::new(1, vec![vec![0]]).unwrap();
        assert_eq!(lambda_design_type1(&d, 0).unwrap(), d);
    }

    #[test]
    fn non_symmetric_design_rejected() {
        let f = near_pencil(4).unwrap();
        assert!(matches!(lambda_design_type1(&f, 0), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn eq_two_check() {
        assert!(SymmetricDesignParams::new(7, 3, 1).is_ok());
        assert!(SymmetricDesignParams::new(7, 3, 2).is_err());
    }
}
