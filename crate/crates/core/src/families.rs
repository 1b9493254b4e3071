//! q-ary vector systems and set families: Hamming distances, intersection
//! sizes, point degrees and modular profiles.
//!
//! Points of the ground set are 0-based here; the JSON layer in [`crate::io`]
//! converts to the 1-based `[n]` used at the boundary.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{Fp, PrimeFieldCtx};

/// Largest ground set a [`SetFamily`] accepts.
pub const MAX_GROUND_SET: usize = 1024;

/// Number of coordinates where `u` and `v` differ.
pub fn hamming_distance(u: &[u8], v: &[u8]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::malformed(format!(
            "tuples of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(distance_unchecked(u, v))
}

#[inline]
pub(crate) fn distance_unchecked(u: &[u8], v: &[u8]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}

/// A set of distinct tuples in `[0, q-1]^n`; the index of a vector is its identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorSystem {
    n: usize,
    q: u8,
    vectors: Vec<Vec<u8>>,
}

impl VectorSystem {
    pub fn new(n: usize, q: u8, vectors: Vec<Vec<u8>>) -> Result<Self> {
        if q < 2 {
            return Err(Error::malformed(format!("alphabet size {q} < 2")));
        }
        let mut seen = BTreeSet::new();
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::malformed(format!(
                    "vector {i} has length {}, expected {n}",
                    v.len()
                )));
            }
            if let Some(x) = v.iter().find(|&&x| x >= q) {
                return Err(Error::malformed(format!(
                    "vector {i} has entry {x} outside [0, {}]",
                    q - 1
                )));
            }
            if !seen.insert(v.as_slice()) {
                return Err(Error::malformed(format!("vector {i} is a duplicate")));
            }
        }
        Ok(Self { n, q, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<u8>] {
        &self.vectors
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.vectors[i]
    }
}

/// The set `D(H)` of pairwise distances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistanceProfile {
    pub distance_set: BTreeSet<usize>,
    pub is_constant: bool,
    pub common_value: Option<usize>,
}

pub fn distance_set(h: &VectorSystem) -> Result<DistanceProfile> {
    if h.len() < 2 {
        return Err(Error::InsufficientInput(format!(
            "distance set needs at least 2 vectors, got {}",
            h.len()
        )));
    }
    let mut set = BTreeSet::new();
    for (i, u) in h.vectors.iter().enumerate() {
        for v in &h.vectors[i + 1..] {
            set.insert(distance_unchecked(u, v));
        }
    }
    let common_value = (set.len() == 1).then(|| *set.first().expect("nonempty"));
    Ok(DistanceProfile {
        is_constant: common_value.is_some(),
        common_value,
        distance_set: set,
    })
}

/// A subset of `{0, …, n-1}` packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_points(n: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for p in points {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection_size(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// Points in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// An ordered list of subsets of the ground set `{0, …, n-1}`.
///
/// Repeated sets are allowed; operations that need distinct members say so.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    sets: Vec<PointSet>,
}

impl SetFamily {
    /// Builds a family from 0-based point lists.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::malformed(format!(
                "ground set of size {n} exceeds {MAX_GROUND_SET}"
            )));
        }
        let mut packed = Vec::with_capacity(sets.len());
        for (i, s) in sets.into_iter().enumerate() {
            if let Some(&x) = s.iter().find(|&&x| x >= n) {
                return Err(Error::malformed(format!(
                    "set {i} contains point {} outside [{n}]",
                    x + 1
                )));
            }
            packed.push(PointSet::from_points(n, s));
        }
        Ok(Self { n, sets: packed })
    }

    pub fn from_point_sets(n: usize, sets: Vec<PointSet>) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::malformed(format!(
                "ground set of size {n} exceeds {MAX_GROUND_SET}"
            )));
        }
        let words = n.div_ceil(64);
        if let Some(i) = sets
            .iter()
            .position(|s| s.words.len() != words || s.iter().any(|x| x >= n))
        {
            return Err(Error::malformed(format!("set {i} does not fit the ground set [{n}]")));
        }
        Ok(Self { n, sets })
    }

    /// Reads a 0/1 vector system as characteristic vectors.
    pub fn from_vector_system(h: &VectorSystem) -> Result<Self> {
        if h.q() != 2 {
            return Err(Error::malformed(format!(
                "characteristic vectors need q = 2, got q = {}",
                h.q()
            )));
        }
        Self::new(
            h.n(),
            h.vectors()
                .iter()
                .map(|v| v.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| i).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &PointSet {
        &self.sets[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(PointSet::len).collect()
    }

    /// Sets as sorted 0-based point lists, in input order.
    pub fn to_point_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|s| s.iter().collect()).collect()
    }

    /// The characteristic vectors; fails when two sets coincide.
    pub fn characteristic_vectors(&self) -> Result<VectorSystem> {
        let vectors = self
            .sets
            .iter()
            .map(|s| (0..self.n).map(|i| u8::from(s.contains(i))).collect())
            .collect();
        VectorSystem::new(self.n, 2, vectors)
    }

    pub fn has_distinct_sets(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.sets.iter().all(|s| seen.insert(s))
    }
}

/// Pairwise intersection sizes in `(i, j)`, `i < j` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntersectionProfile {
    pub sizes: Vec<usize>,
    pub lambda_if_constant: Option<usize>,
}

impl IntersectionProfile {
    pub fn distinct_sizes(&self) -> BTreeSet<usize> {
        self.sizes.iter().copied().collect()
    }
}

pub fn intersection_profile(f: &SetFamily) -> Result<IntersectionProfile> {
    if f.len() < 2 {
        return Err(Error::InsufficientInput(format!(
            "intersection profile needs at least 2 sets, got {}",
            f.len()
        )));
    }
    let mut sizes = Vec::with_capacity(f.len() * (f.len() - 1) / 2);
    for (i, a) in f.sets.iter().enumerate() {
        for b in &f.sets[i + 1..] {
            sizes.push(a.intersection_size(b));
        }
    }
    let first = sizes[0];
    let lambda_if_constant = sizes.iter().all(|&s| s == first).then_some(first);
    Ok(IntersectionProfile {
        sizes,
        lambda_if_constant,
    })
}

/// `d_i = |{j : i ∈ F_j}|` for every point `i`.
pub fn degrees(f: &SetFamily) -> Vec<usize> {
    let mut d = vec![0; f.n];
    for s in &f.sets {
        for i in s.iter() {
            d[i] += 1;
        }
    }
    d
}

/// `Σ_{j=0}^{q-1} d_H(f, (j,…,j))` reduced mod p; always equals `n(q-1)` mod p.
pub fn constant_vector_distance_sum(f: &[u8], q: u8, field: &PrimeFieldCtx) -> Result<Fp> {
    if field.modulus() < u64::from(q) {
        return Err(Error::hypothesis(format!(
            "p = {} is smaller than q = {q}",
            field.modulus()
        )));
    }
    if let Some(x) = f.iter().find(|&&x| x >= q) {
        return Err(Error::malformed(format!("entry {x} outside [0, {}]", q - 1)));
    }
    let total: usize = (0..q).map(|j| f.iter().filter(|&&x| x != j).count()).sum();
    Ok(field.from_u64(total as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> SetFamily {
        SetFamily::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_distance(&[0, 0, 0], &[0, 0, 0]).unwrap(), 0);
        assert_eq!(hamming_distance(&[1, 0, 0], &[1, 1, 1]).unwrap(), 2);
        // characteristic vectors of {1} and [3]
        assert_eq!(hamming_distance(&[1, 0, 0], &[1, 1, 1]).unwrap(), 2);
        assert!(matches!(hamming_distance(&[0, 1], &[0]), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn distance_set_examples() {
        let h = VectorSystem::new(3, 2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        let d = distance_set(&h).unwrap();
        assert_eq!(d.distance_set, BTreeSet::from([2]));
        assert!(d.is_constant);
        assert_eq!(d.common_value, Some(2));

        let h = VectorSystem::new(3, 2, vec![vec![0, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(distance_set(&h).unwrap().distance_set, BTreeSet::from([1]));

        let h = VectorSystem::new(
            4,
            2,
            vec![vec![0, 0, 0, 0], vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 1, 0]],
        )
        .unwrap();
        assert_eq!(distance_set(&h).unwrap().common_value, Some(2));

        let single = VectorSystem::new(3, 2, vec![vec![0, 0, 0]]).unwrap();
        assert!(matches!(distance_set(&single), Err(Error::InsufficientInput(_))));
    }

    #[test]
    fn vector_system_validation() {
        assert!(VectorSystem::new(2, 2, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(VectorSystem::new(2, 2, vec![vec![0, 2]]).is_err());
        assert!(VectorSystem::new(2, 2, vec![vec![0]]).is_err());
        assert!(VectorSystem::new(2, 1, vec![]).is_err());
    }

    #[test]
    fn fano_profile_and_degrees() {
        let f = fano();
        let prof = intersection_profile(&f).unwrap();
        assert_eq!(prof.sizes.len(), 21);
        assert_eq!(prof.lambda_if_constant, Some(1));
        assert_eq!(degrees(&f), vec![3; 7]);
    }

    #[test]
    fn disjoint_pair_has_lambda_zero() {
        let f = SetFamily::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(intersection_profile(&f).unwrap().lambda_if_constant, Some(0));
    }

    #[test]
    fn near_pencil_degrees() {
        let f = SetFamily::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(degrees(&f), vec![3, 2, 2, 2]);
        let empty = SetFamily::new(5, vec![]).unwrap();
        assert_eq!(degrees(&empty), vec![0; 5]);
    }

    #[test]
    fn out_of_range_point_rejected() {
        assert!(SetFamily::new(3, vec![vec![0, 3]]).is_err());
        assert!(SetFamily::new(MAX_GROUND_SET + 1, vec![]).is_err());
    }

    #[test]
    fn point_set_ops() {
        let a = PointSet::from_points(130, [0, 64, 129]);
        let b = PointSet::from_points(130, [64, 100]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.intersection_size(&b), 1);
        assert_eq!(a.symmetric_difference(&b).iter().collect::<Vec<_>>(), vec![0, 100, 129]);
        assert!(!a.contains(1));
        assert!(a.contains(129));
    }

    #[test]
    fn constant_vector_sums() {
        let f5 = PrimeFieldCtx::new(5).unwrap();
        assert_eq!(constant_vector_distance_sum(&[0; 6], 2, &f5).unwrap().value(), 1);
        assert_eq!(constant_vector_distance_sum(&[0, 1, 2], 3, &f5).unwrap().value(), 1);
        let f2 = PrimeFieldCtx::new(2).unwrap();
        assert!(matches!(
            constant_vector_distance_sum(&[0, 1, 2], 3, &f2),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn constant_vector_sum_exhaustive_n4_q3_p3() {
        let f3 = PrimeFieldCtx::new(3).unwrap();
        for code in 0..81u32 {
            let f: Vec<u8> = (0..4).map(|i| (code / 3u32.pow(i) % 3) as u8).collect();
            assert_eq!(constant_vector_distance_sum(&f, 3, &f3).unwrap().value(), 2);
        }
    }
}
