//! Exact maximum-family search in `[0, q-1]^n` under pairwise predicates.
//!
//! The compatibility graph has one vertex per tuple and an edge between two
//! tuples that satisfy the predicate. A maximum clique is found by
//! depth-first extension in lexicographic order: each new vertex comes after
//! the previous one, candidates are intersected with the new vertex's
//! neighbourhood, and a branch is cut when it cannot beat the best clique.
//! The first two vertices of a clique partition the work across threads.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{check_thm3_hypotheses, delsarte_bound};
use crate::error::{Error, Result};
use crate::exactfield::is_prime;
use crate::families::{distance_set, distance_unchecked, intersection_profile, SetFamily, VectorSystem};

/// Default limit on `q^n`.
pub const DEFAULT_MAX_SPACE: u64 = 1 << 20;

/// Spaces up to this many tuples get a precomputed adjacency bitset.
const ADJACENCY_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Predicate {
    /// Every pairwise distance lies in the set.
    DistanceSetWithin {
        distances: BTreeSet<usize>,
    },
    /// Every pairwise distance is `≡ lambda (mod p)`.
    DistanceCongruent {
        lambda: u64,
        p: u64,
    },
    ConstantDistance {
        lambda: usize,
    },
    /// Binary tuples read as sets; every pairwise intersection has size `lambda`.
    IntersectionConstant {
        lambda: usize,
    },
}

impl Predicate {
    fn holds(&self, u: &[u8], v: &[u8]) -> bool {
        match self {
            Predicate::DistanceSetWithin { distances } => distances.contains(&distance_unchecked(u, v)),
            Predicate::DistanceCongruent { lambda, p } => distance_unchecked(u, v) as u64 % p == lambda % p,
            Predicate::ConstantDistance { lambda } => distance_unchecked(u, v) == *lambda,
            Predicate::IntersectionConstant { lambda } => {
                u.iter().zip(v).filter(|&(&a, &b)| a == 1 && b == 1).count() == *lambda
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchProblem {
    n: usize,
    q: u8,
    predicate: Predicate,
    target_size: Option<usize>,
}

impl SearchProblem {
    pub fn new(n: usize, q: u8, predicate: Predicate) -> Result<Self> {
        if n == 0 {
            return Err(Error::malformed("n must be positive"));
        }
        if q < 2 {
            return Err(Error::malformed(format!("q must be at least 2, got {q}")));
        }
        match &predicate {
            Predicate::DistanceSetWithin { distances } => {
                if distances.is_empty() || distances.iter().any(|&d| d == 0 || d > n) {
                    return Err(Error::malformed(format!(
                        "distance set must be a nonempty subset of [1, {n}]"
                    )));
                }
            }
            Predicate::DistanceCongruent { lambda, p } => {
                if !is_prime(*p) {
                    return Err(Error::malformed(format!("modulus {p} is not prime")));
                }
                if *lambda == 0 {
                    return Err(Error::malformed("lambda must be positive"));
                }
            }
            Predicate::ConstantDistance { lambda } => {
                if *lambda == 0 || *lambda > n {
                    return Err(Error::malformed(format!("lambda must lie in [1, {n}], got {lambda}")));
                }
            }
            Predicate::IntersectionConstant { lambda } => {
                if q != 2 {
                    return Err(Error::malformed("intersection predicates need q = 2"));
                }
                if *lambda == 0 || *lambda > n {
                    return Err(Error::malformed(format!("lambda must lie in [1, {n}], got {lambda}")));
                }
            }
        }
        Ok(Self {
            n,
            q,
            predicate,
            target_size: None,
        })
    }

    /// Stops as soon as a family of this size is found. The search then
    /// runs on one thread so the reported family stays deterministic.
    pub fn with_target(mut self, target: usize) -> Self {
        self.target_size = Some(target);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    pub fn target_size(&self) -> Option<usize> {
        self.target_size
    }

    /// `q^n`, saturating.
    pub fn space_size(&self) -> u128 {
        u128::from(self.q).checked_pow(self.n as u32).unwrap_or(u128::MAX)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_space: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_space: DEFAULT_MAX_SPACE,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResult {
    pub max_size: usize,
    pub witness: VectorSystem,
    /// Informational; varies with scheduling.
    pub nodes_explored: u64,
}

/// Maximum family satisfying the predicate pairwise; the witness is the
/// lexicographically least maximum family.
pub fn search_max(problem: &SearchProblem, options: &SearchOptions) -> Result<SearchResult> {
    let size = guard(problem, options)?;
    let order: Vec<u32> = (0..size as u32).collect();
    run(problem, options, &order)
}

/// [`search_max`] with the tuples enumerated in a caller-chosen order; the
/// maximum size does not depend on it.
pub fn search_max_with_order(problem: &SearchProblem, options: &SearchOptions, order: &[u32]) -> Result<SearchResult> {
    let size = guard(problem, options)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted.len() != size || sorted.iter().enumerate().any(|(i, &v)| v as usize != i) {
        return Err(Error::malformed("order must be a permutation of the tuple indices"));
    }
    run(problem, options, order)
}

fn guard(problem: &SearchProblem, options: &SearchOptions) -> Result<usize> {
    let size = problem.space_size();
    if size > u128::from(options.max_space) {
        return Err(Error::ResourceGuard {
            size,
            limit: u128::from(options.max_space),
        });
    }
    usize::try_from(size).map_err(|_| Error::ResourceGuard {
        size,
        limit: usize::MAX as u128,
    })
}

/// The tuple with index `id`, most significant coordinate first.
pub fn decode_tuple(mut id: usize, n: usize, q: u8) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for slot in v.iter_mut().rev() {
        *slot = (id % usize::from(q)) as u8;
        id /= usize::from(q);
    }
    v
}

struct Graph {
    tuples: Vec<Vec<u8>>,
    adjacency: Option<Vec<Vec<u64>>>,
    predicate: Predicate,
}

impl Graph {
    fn new(problem: &SearchProblem, size: usize) -> Self {
        let tuples: Vec<Vec<u8>> = (0..size).map(|i| decode_tuple(i, problem.n, problem.q)).collect();
        let adjacency = (size <= ADJACENCY_LIMIT).then(|| {
            let words = size.div_ceil(64);
            (0..size)
                .map(|i| {
                    let mut row = vec![0u64; words];
                    for j in (0..size).filter(|&j| j != i) {
                        if problem.predicate.holds(&tuples[i], &tuples[j]) {
                            row[j / 64] |= 1 << (j % 64);
                        }
                    }
                    row
                })
                .collect()
        });
        Self {
            tuples,
            adjacency,
            predicate: problem.predicate.clone(),
        }
    }

    fn adjacent(&self, i: u32, j: u32) -> bool {
        let (i, j) = (i as usize, j as usize);
        match &self.adjacency {
            Some(adj) => adj[i][j / 64] >> (j % 64) & 1 == 1,
            None => i != j && self.predicate.holds(&self.tuples[i], &self.tuples[j]),
        }
    }
}

struct Shared {
    global_best: AtomicUsize,
    nodes: AtomicU64,
    stop: AtomicBool,
    target: Option<usize>,
}

/// Clique of tuple indices with their enumeration positions.
#[derive(Clone, Default)]
struct Best {
    positions: Vec<u32>,
}

struct Searcher<'a> {
    graph: &'a Graph,
    order: &'a [u32],
    shared: &'a Shared,
}

impl Searcher<'_> {
    fn extend(&self, clique: &mut Vec<u32>, cand: &[u32], best: &mut Best) {
        self.shared.nodes.fetch_add(1, Ordering::Relaxed);
        if clique.len() > best.positions.len() {
            best.positions = clique.clone();
            self.shared.global_best.fetch_max(clique.len(), Ordering::Relaxed);
            if self.shared.target.is_some_and(|t| clique.len() >= t) {
                self.shared.stop.store(true, Ordering::Relaxed);
            }
        }
        for (idx, &pos) in cand.iter().enumerate() {
            if self.shared.stop.load(Ordering::Relaxed) {
                return;
            }
            let reach = clique.len() + cand.len() - idx;
            // strict against the global best so equal-size cliques in other
            // subtrees stay visible to the lexicographic merge
            if reach <= best.positions.len() || reach < self.shared.global_best.load(Ordering::Relaxed) {
                return;
            }
            let v = self.order[pos as usize];
            let next: Vec<u32> = cand[idx + 1..]
                .iter()
                .copied()
                .filter(|&w| self.graph.adjacent(v, self.order[w as usize]))
                .collect();
            clique.push(pos);
            self.extend(clique, &next, best);
            clique.pop();
        }
    }

    /// Best clique whose first two positions are `first` and `second`.
    fn subtree(&self, first: u32, second: u32) -> Best {
        let (a, b) = (self.order[first as usize], self.order[second as usize]);
        let cand: Vec<u32> = (second + 1..self.order.len() as u32)
            .filter(|&w| {
                let x = self.order[w as usize];
                self.graph.adjacent(a, x) && self.graph.adjacent(b, x)
            })
            .collect();
        let mut best = Best::default();
        let mut clique = vec![first, second];
        self.extend(&mut clique, &cand, &mut best);
        best
    }
}

fn run(problem: &SearchProblem, options: &SearchOptions, order: &[u32]) -> Result<SearchResult> {
    let size = order.len();
    let graph = Graph::new(problem, size);
    let shared = Shared {
        global_best: AtomicUsize::new(usize::from(size > 0)),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        target: problem.target_size,
    };
    let searcher = Searcher {
        graph: &graph,
        order,
        shared: &shared,
    };
    let seeds: Vec<(u32, u32)> = (0..size as u32)
        .flat_map(|i| (i + 1..size as u32).map(move |j| (i, j)))
        .filter(|&(i, j)| graph.adjacent(order[i as usize], order[j as usize]))
        .collect();

    let sequential = problem.target_size.is_some() || options.jobs == Some(1);
    let results: Vec<Best> = if sequential {
        let mut out = Vec::new();
        for &(i, j) in &seeds {
            if shared.stop.load(Ordering::Relaxed) {
                break;
            }
            out.push(searcher.subtree(i, j));
        }
        out
    } else {
        let work = || seeds.par_iter().map(|&(i, j)| searcher.subtree(i, j)).collect();
        match options.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::internal(format!("thread pool: {e}")))?
                .install(work),
            None => work(),
        }
    };

    // seeds are in position order, so the first maximum is the least one
    let mut best = Best::default();
    for r in results {
        if r.positions.len() > best.positions.len() {
            best = r;
        }
    }
    if best.positions.is_empty() && size > 0 {
        best.positions = vec![0];
    }
    let mut vectors: Vec<Vec<u8>> = best
        .positions
        .iter()
        .map(|&p| graph.tuples[order[p as usize] as usize].clone())
        .collect();
    vectors.sort();
    let witness = VectorSystem::new(problem.n, problem.q, vectors)?;
    verify_witness(problem, &witness)?;
    Ok(SearchResult {
        max_size: witness.len(),
        witness,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
    })
}

/// Re-checks a witness with the distance and intersection profiles.
pub fn verify_witness(problem: &SearchProblem, witness: &VectorSystem) -> Result<()> {
    if witness.len() < 2 {
        return Ok(());
    }
    let ok = match &problem.predicate {
        Predicate::IntersectionConstant { lambda } => {
            let f = SetFamily::from_vector_system(witness)?;
            intersection_profile(&f)?.sizes.iter().all(|s| s == lambda)
        }
        other => {
            let d = distance_set(witness)?;
            d.distance_set.iter().all(|&x| match other {
                Predicate::DistanceSetWithin { distances } => distances.contains(&x),
                Predicate::DistanceCongruent { lambda, p } => x as u64 % p == lambda % p,
                Predicate::ConstantDistance { lambda } => x == *lambda,
                Predicate::IntersectionConstant { .. } => unreachable!("handled above"),
            })
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::internal("search witness fails its predicate"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    pub n_max: usize,
    pub q_values: Vec<u8>,
    pub p_values: Vec<u64>,
    pub s_values: Vec<usize>,
}

/// One `(n, q, p, λ)` row of the modular constant-distance sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModularRow {
    pub n: usize,
    pub q: u8,
    pub p: u64,
    pub lambda: u64,
    /// `checked` or `excluded(<clause>)`.
    pub status: String,
    pub bound: Option<u64>,
    pub max_size: Option<usize>,
    pub tight: bool,
    pub violation: bool,
}

/// One `(n, q, s)` row of the few-distances sweep; the maximum is taken
/// over every distance set of size `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistanceCountRow {
    pub n: usize,
    pub q: u8,
    pub s: usize,
    pub bound: String,
    pub max_size: usize,
    pub best_distances: Vec<usize>,
    pub tight: bool,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub modular_rows: Vec<ModularRow>,
    pub distance_count_rows: Vec<DistanceCountRow>,
    pub violations: usize,
}

fn subsets_of_size(n: usize, s: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(start: usize, n: usize, s: usize, current: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if current.len() == s {
            out.push(current.iter().copied().collect());
            return;
        }
        for x in start..=n {
            current.push(x);
            go(x + 1, n, s, current, out);
            current.pop();
        }
    }
    go(1, n, s, &mut current, &mut out);
    out
}

/// Compares exhaustive maxima with the closed-form bounds over a grid.
pub fn sweep_bound_grid(config: &SweepConfig, options: &SearchOptions) -> Result<SweepReport> {
    let mut modular_rows = Vec::new();
    let mut distance_count_rows = Vec::new();
    for n in 1..=config.n_max {
        for &q in &config.q_values {
            for &p in &config.p_values {
                for lambda in 1..p {
                    let h = check_thm3_hypotheses(n as u64, u64::from(q), p, lambda)?;
                    let mut row = ModularRow {
                        n,
                        q,
                        p,
                        lambda,
                        status: "checked".into(),
                        bound: h.bound,
                        max_size: None,
                        tight: false,
                        violation: false,
                    };
                    match (h.first_failure(), h.bound) {
                        (None, Some(bound)) => {
                            let problem = SearchProblem::new(n, q, Predicate::DistanceCongruent { lambda, p })?;
                            let max = search_max(&problem, options)?.max_size;
                            row.max_size = Some(max);
                            row.tight = max as u64 == bound;
                            row.violation = max as u64 > bound;
                        }
                        (failure, _) => {
                            row.status = format!("excluded({})", failure.unwrap_or("bound"));
                        }
                    }
                    modular_rows.push(row);
                }
            }
            for &s in &config.s_values {
                if s == 0 || s > n {
                    continue;
                }
                let bound = delsarte_bound(n as u64, u64::from(q), s as u64)?;
                let mut best = (0, Vec::new());
                for l in subsets_of_size(n, s) {
                    let problem = SearchProblem::new(n, q, Predicate::DistanceSetWithin { distances: l.clone() })?;
                    let max = search_max(&problem, options)?.max_size;
                    if max > best.0 {
                        best = (max, l.into_iter().collect());
                    }
                }
                distance_count_rows.push(DistanceCountRow {
                    n,
                    q,
                    s,
                    tight: BigUint::from(best.0) == bound,
                    violation: BigUint::from(best.0) > bound,
                    bound: bound.to_string(),
                    max_size: best.0,
                    best_distances: best.1,
                });
            }
        }
    }
    let violations = modular_rows.iter().filter(|r| r.violation).count()
        + distance_count_rows.iter().filter(|r| r.violation).count();
    Ok(SweepReport {
        modular_rows,
        distance_count_rows,
        violations,
    })
}
