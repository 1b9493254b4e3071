//! The end-to-end verification suite behind `extremal verify-paper`.
//!
//! Every criterion recomputes its objects from scratch and reports one
//! note per check, so a failing run says exactly which comparison broke.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certifier::{
    brute_force_independent, certify_independence, hamming_tight_certificate, mod_design_certificate,
    neumaier_from_gram, ryser_decompose, two_distance_certificate, Certificate, Verdict,
};
use crate::constructions::{
    fano, hadamard_plus_full, johnson_pairs, lambda_design_type1, near_pencil, pentagon, projective_plane,
    schlafli_with_values,
};
use crate::error::Result;
use crate::exactfield::{inertia_psd_rank, rational, Matrix, PrimeFieldCtx, Rational};
use crate::families::{constant_vector_distance_sum, degrees, distance_set};
use crate::search::{decode_tuple, search_max, sweep_bound_grid, Predicate, SearchOptions, SearchProblem, SweepConfig};

/// Seed for the random matrices of the independence oracle check.
pub const ORACLE_SEED: u64 = 0x005e_ed0f_1dea;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Case-insensitive substring matched against criterion names and tags.
    pub filter: Option<String>,
    /// Replaces the skew-line value 1/4 of the 27-line Gram matrix.
    pub schlafli_skew: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    run: fn(&SuiteOptions, &mut Checks) -> Result<()>,
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_ascii_lowercase();
        self.name.contains(&f) || self.tags.iter().any(|t| t.contains(&f))
    }

    pub fn run(&self, options: &SuiteOptions) -> CriterionReport {
        let mut checks = Checks::default();
        if let Err(e) = (self.run)(options, &mut checks) {
            checks.check(false, format!("error: {e}"));
        }
        CriterionReport {
            id: self.id,
            name: self.name,
            passed: checks.all_ok && !checks.notes.is_empty(),
            notes: checks.notes,
        }
    }
}

/// Collects pass/fail notes.
pub struct Checks {
    all_ok: bool,
    notes: Vec<String>,
}

impl Default for Checks {
    fn default() -> Self {
        Self {
            all_ok: true,
            notes: Vec::new(),
        }
    }
}

impl Checks {
    fn check(&mut self, ok: bool, note: impl Into<String>) {
        self.all_ok &= ok;
        self.notes
            .push(format!("[{}] {}", if ok { "ok" } else { "FAIL" }, note.into()));
    }

    fn certificate(&mut self, label: &str, c: &Certificate, want: Verdict) {
        let failed: Vec<&str> = c.failed_identities().map(|i| i.name.as_str()).collect();
        self.check(
            c.verdict == want,
            format!(
                "{label}: verdict {:?} (expected {want:?}), failed identities {failed:?}",
                c.verdict
            ),
        );
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "hadamard-counterexample",
            tags: &["constant-distance", "hadamard", "search"],
            run: hadamard_counterexample,
        },
        Criterion {
            id: 2,
            name: "modular-distance-sweep",
            tags: &["modular", "search", "sweep"],
            run: modular_sweep,
        },
        Criterion {
            id: 3,
            name: "few-distances-sweep",
            tags: &["delsarte", "search", "sweep"],
            run: few_distances_sweep,
        },
        Criterion {
            id: 4,
            name: "constant-vector-distance-sum",
            tags: &["modular", "sum"],
            run: constant_vector_sums,
        },
        Criterion {
            id: 5,
            name: "hamming-tight-certificate",
            tags: &["modular", "certificate"],
            run: hamming_tight,
        },
        Criterion {
            id: 6,
            name: "two-distance-identity",
            tags: &["sphere", "certificate", "schlafli"],
            run: two_distance_identity,
        },
        Criterion {
            id: 7,
            name: "neumaier-ratio",
            tags: &["sphere", "certificate"],
            run: neumaier,
        },
        Criterion {
            id: 8,
            name: "mod-design-congruence",
            tags: &["design", "modular", "certificate"],
            run: mod_design,
        },
        Criterion {
            id: 9,
            name: "ryser-dichotomy",
            tags: &["design", "ryser", "certificate"],
            run: ryser,
        },
        Criterion {
            id: 10,
            name: "independence-oracle",
            tags: &["independence", "oracle"],
            run: independence_oracle,
        },
    ]
}

pub fn verify_paper_suite(options: &SuiteOptions) -> SuiteReport {
    let criteria: Vec<CriterionReport> = criteria()
        .iter()
        .filter(|c| options.filter.as_deref().is_none_or(|f| c.matches(f)))
        .map(|c| c.run(options))
        .collect();
    let passed = criteria.iter().all(|c| c.passed);
    SuiteReport { criteria, passed }
}

fn hadamard_counterexample(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    for v in 1..=3u64 {
        let f = hadamard_plus_full(v)?;
        let d = distance_set(&f.characteristic_vectors()?)?;
        c.check(
            f.len() as u64 == 4 * v && f.n() as u64 + 1 == 4 * v,
            format!("v = {v}: {} sets on {} points", f.len(), f.n()),
        );
        c.check(
            d.common_value == Some(2 * v as usize),
            format!("v = {v}: distances {:?}, expected only {}", d.distance_set, 2 * v),
        );
    }
    let r = search_max(
        &SearchProblem::new(3, 2, Predicate::ConstantDistance { lambda: 2 })?,
        &SearchOptions::default(),
    )?;
    c.check(
        r.max_size == 4,
        format!("n = 3, constant distance 2: maximum {}", r.max_size),
    );
    Ok(())
}

fn modular_sweep(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let report = sweep_bound_grid(
        &SweepConfig {
            n_max: 4,
            q_values: vec![2, 3],
            p_values: vec![3, 5, 7],
            s_values: vec![],
        },
        &SearchOptions::default(),
    )?;
    let checked: Vec<_> = report.modular_rows.iter().filter(|r| r.max_size.is_some()).collect();
    c.check(
        !checked.is_empty(),
        format!("{} rows with all hypotheses", checked.len()),
    );
    c.check(
        report.violations == 0,
        format!("{} rows exceed n(q-1)", report.violations),
    );
    let tight = checked.iter().filter(|r| r.tight).count();
    c.check(tight > 0, format!("{tight} tight rows"));
    let row = checked.iter().find(|r| (r.n, r.q, r.p, r.lambda) == (4, 2, 3, 2));
    c.check(
        row.is_some_and(|r| r.max_size == Some(4) && r.tight),
        format!("(n, q, p, lambda) = (4, 2, 3, 2): {:?}", row.map(|r| r.max_size)),
    );
    Ok(())
}

fn few_distances_sweep(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let report = sweep_bound_grid(
        &SweepConfig {
            n_max: 4,
            q_values: vec![2, 3],
            p_values: vec![],
            s_values: vec![1, 2],
        },
        &SearchOptions::default(),
    )?;
    for r in &report.distance_count_rows {
        c.check(
            !r.violation,
            format!(
                "(n, q, s) = ({}, {}, {}): maximum {} <= bound {}",
                r.n, r.q, r.s, r.max_size, r.bound
            ),
        );
    }
    c.check(!report.distance_count_rows.is_empty(), "grid is nonempty");
    Ok(())
}

fn constant_vector_sums(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    for (n, q, p) in [(3usize, 2u8, 5u64), (3, 3, 5), (4, 3, 5)] {
        let field = PrimeFieldCtx::new(p)?;
        let want = field.from_u64((n * usize::from(q - 1)) as u64);
        let total = u64::from(q).pow(n as u32) as usize;
        let mut bad = 0;
        for id in 0..total {
            if constant_vector_distance_sum(&decode_tuple(id, n, q), q, &field)? != want {
                bad += 1;
            }
        }
        c.check(
            bad == 0,
            format!("(n, q, p) = ({n}, {q}, {p}): {bad} of {total} tuples off"),
        );
    }
    Ok(())
}

fn hamming_tight(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    for (v, p, lambda) in [(1u64, 5u64, 2u64), (2, 7, 4)] {
        let h = hadamard_plus_full(v)?.characteristic_vectors()?;
        let cert = hamming_tight_certificate(&h, p, lambda)?;
        c.certificate(&format!("v = {v}, p = {p}, lambda = {lambda}"), &cert, Verdict::Pass);
        let field = PrimeFieldCtx::new(p)?;
        let expected = (-field.from_u64(lambda)).pow(p - 2).to_string();
        c.check(
            !cert.extracted_coefficients.is_empty() && cert.extracted_coefficients.iter().all(|a| *a == expected),
            format!(
                "coefficients {:?} all equal -1/lambda = {expected}",
                cert.extracted_coefficients
            ),
        );
        let congruence = cert.identity_named("tightCongruence");
        c.check(
            congruence.is_some_and(|i| i.holds),
            format!(
                "q*lambda = n(q-1)+1 mod p: {:?}",
                congruence.map(|i| (&i.left_side, &i.right_side))
            ),
        );
    }
    Ok(())
}

fn two_distance_identity(options: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let cert = two_distance_certificate(&pentagon())?;
    c.certificate("pentagon", &cert, Verdict::Pass);
    let id = cert.identity_named("sizeIdentity");
    c.check(
        id.is_some_and(|i| i.left_side == "5/4" && i.right_side == "5/4"),
        format!("pentagon sides {:?}", id.map(|i| (&i.left_side, &i.right_side))),
    );
    for name in ["columnSums", "sizeFromCoordinates"] {
        c.check(
            cert.identity_named(name).is_some_and(|i| i.holds),
            format!("pentagon coordinate check {name}"),
        );
    }
    let skew = options.schlafli_skew.clone().unwrap_or_else(|| rational(1, 4));
    let schlafli = schlafli_with_values(rational(-1, 2), skew.clone())?;
    let cert = two_distance_certificate(&schlafli)?;
    c.certificate(&format!("27 lines with skew value {skew}"), &cert, Verdict::Pass);
    let id = cert.identity_named("sizeIdentity");
    c.check(
        id.is_some_and(|i| i.left_side == "9/8" && i.right_side == "9/8"),
        format!("27-line sides {:?}", id.map(|i| (&i.left_side, &i.right_side))),
    );
    let inertia = inertia_psd_rank(schlafli.gram())?;
    c.check(
        inertia.is_psd && inertia.rank == 6,
        format!("27-line Gram: psd = {}, rank = {}", inertia.is_psd, inertia.rank),
    );
    Ok(())
}

fn neumaier(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let cert = neumaier_from_gram(&johnson_pairs(6)?)?;
    c.certificate("pairs of [6]", &cert, Verdict::Pass);
    c.check(
        cert.details.get("m").is_some_and(|m| m == "2"),
        format!("m = {:?}", cert.details.get("m")),
    );
    let cert = neumaier_from_gram(&pentagon())?;
    c.certificate("pentagon", &cert, Verdict::NotApplicable);
    Ok(())
}

fn mod_design(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let cert = mod_design_certificate(&fano(), 5)?;
    c.certificate("Fano plane, p = 5", &cert, Verdict::Pass);
    let design = lambda_design_type1(&projective_plane(11)?, 0)?;
    let cert = mod_design_certificate(&design, 5)?;
    c.certificate("type-1 design from the plane of order 11, p = 5", &cert, Verdict::Pass);
    let residues = &cert.details.get("residues");
    let got = residues.map(|r| (r["n"].as_u64(), r["k"].as_u64(), r["lambda"].as_u64()));
    c.check(
        got == Some((Some(3), Some(2), Some(1))),
        format!("residues (n, k, lambda) = {got:?}"),
    );
    let off = degrees(&design).iter().filter(|&&d| d % 5 != 2).count();
    c.check(off == 0, format!("{off} degrees not = 2 mod 5"));
    Ok(())
}

fn ryser_common(c: &mut Checks, label: &str, cert: &Certificate) {
    for prefix in ["memberReciprocalSum", "totalReciprocalSum"] {
        let count = cert.identities_with_prefix(prefix).count();
        let all = count > 0 && cert.identities_with_prefix(prefix).all(|i| i.holds);
        c.check(all, format!("{label}: {count} {prefix} identities"));
    }
    let distinct = cert
        .details
        .get("kappaMultiset")
        .and_then(|m| m.as_object())
        .map(|m| m.len());
    c.check(
        distinct.is_some_and(|d| d <= 2),
        format!("{label}: distinct kappa values {distinct:?}"),
    );
}

fn ryser(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let cert = ryser_decompose(&fano(), 1)?;
    c.certificate("Fano plane", &cert, Verdict::Pass);
    ryser_common(c, "Fano plane", &cert);
    c.check(
        cert.details.get("alternative").is_some_and(|a| a == "A")
            && cert.details.get("r").is_some_and(|r| r == 3)
            && cert.extracted_coefficients.iter().all(|k| k == "1/3"),
        "Fano plane: alternative A, r = 3, every kappa = 1/3",
    );
    for n in 4..=8usize {
        let cert = ryser_decompose(&near_pencil(n)?, 1)?;
        let label = format!("near-pencil on {n} points");
        c.certificate(&label, &cert, Verdict::Pass);
        ryser_common(c, &label, &cert);
        let r = cert.details.get("r").and_then(|v| v.as_u64());
        let rp = cert.details.get("rPrime").and_then(|v| v.as_u64());
        c.check(
            cert.details.get("alternative").is_some_and(|a| a == "B")
                && r.zip(rp).is_some_and(|(r, rp)| r + rp == n as u64 + 1),
            format!(
                "{label}: alternative B with r + r' = {:?}",
                r.zip(rp).map(|(a, b)| a + b)
            ),
        );
    }
    Ok(())
}

fn independence_oracle(_: &SuiteOptions, c: &mut Checks) -> Result<()> {
    let f2 = PrimeFieldCtx::new(2)?;
    let mut disagreements = 0;
    for mask in 0u32..512 {
        let m = Matrix::from_fn(3, 3, |i, j| f2.from_u64(u64::from(mask >> (3 * i + j) & 1)))?;
        if certify_independence(&m)?.passed() != brute_force_independent(&m, &f2)? {
            disagreements += 1;
        }
    }
    c.check(
        disagreements == 0,
        format!("all 512 3x3 matrices over F_2: {disagreements} disagreements"),
    );
    let f5 = PrimeFieldCtx::new(5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut disagreements = 0;
    let mut singular = 0;
    for _ in 0..200 {
        let m = Matrix::from_fn(4, 4, |_, _| f5.from_u64(rng.gen_range(0..5)))?;
        let brute = brute_force_independent(&m, &f5)?;
        singular += usize::from(!brute);
        if certify_independence(&m)?.passed() != brute {
            disagreements += 1;
        }
    }
    c.check(
        disagreements == 0,
        format!("200 random 4x4 matrices over F_5 ({singular} singular): {disagreements} disagreements"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_ryser_only() {
        let r = verify_paper_suite(&SuiteOptions {
            filter: Some("ryser".into()),
            ..Default::default()
        });
        assert_eq!(r.criteria.len(), 1);
        assert_eq!(r.criteria[0].name, "ryser-dichotomy");
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn mutation_fails_the_sphere_criterion() {
        let r = verify_paper_suite(&SuiteOptions {
            filter: Some("two-distance".into()),
            schlafli_skew: Some(rational(1, 3)),
        });
        assert!(!r.passed);
    }
}
