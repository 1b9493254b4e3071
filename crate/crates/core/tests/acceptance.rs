//! Acceptance suite: ten end-to-end criteria, each recomputed here with
//! independent arithmetic where practical. Runs without the libtest
//! harness so every criterion prints one line.

use std::collections::BTreeSet;
use std::process::ExitCode;

use extremal::bounds::{check_thm3_hypotheses, delsarte_bound};
use extremal::certifier::{
    brute_force_independent, certify_independence, hamming_tight_certificate, mod_design_certificate, neumaier_check,
    neumaier_from_gram, ryser_decompose, two_distance_certificate, Certificate, Verdict,
};
use extremal::constructions::{
    fano, hadamard_plus_full, johnson_pairs, near_pencil, pentagon, projective_lambda_design, schlafli27,
};
use extremal::exactfield::{gauss_rank, inertia_psd_rank, rank, Matrix, PrimeFieldCtx};
use extremal::families::{constant_vector_distance_sum, degrees, SetFamily};
use extremal::search::{decode_tuple, search_max, Predicate, SearchOptions, SearchProblem};
use extremal::suite::{verify_paper_suite, SuiteOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn search(n: usize, q: u8, predicate: Predicate) -> std::result::Result<usize, String> {
    let problem = lift(SearchProblem::new(n, q, predicate))?;
    Ok(lift(search_max(&problem, &SearchOptions::default()))?.max_size)
}

fn all_identities_hold(c: &Certificate) -> Check {
    let failed: Vec<_> = c.failed_identities().map(|i| i.name.clone()).collect();
    ensure(failed.is_empty(), || format!("identities failed: {failed:?}"))
}

fn hadamard_counterexample() -> Check {
    for v in 1..=3u64 {
        let f = lift(hadamard_plus_full(v))?;
        let n = 4 * v as usize - 1;
        ensure(f.n() == n && f.len() == 4 * v as usize, || {
            format!("v={v}: shape {}x{}", f.len(), f.n())
        })?;
        let sets: Vec<BTreeSet<usize>> = f
            .to_point_lists()
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                let d = a.symmetric_difference(b).count();
                ensure(d == 2 * v as usize, || format!("v={v}: distance {d}"))?;
            }
        }
    }
    let max = search(3, 2, Predicate::ConstantDistance { lambda: 2 })?;
    ensure(max == 4, || format!("search max {max}, expected 4"))
}

fn modular_distance_sweep() -> Check {
    let mut tight = false;
    let mut checked = 0;
    for n in 1..=4u64 {
        for q in [2u64, 3] {
            for p in [3u64, 5, 7] {
                for lambda in 1..p {
                    if !lift(check_thm3_hypotheses(n, q, p, lambda))?.holds() {
                        continue;
                    }
                    checked += 1;
                    let max = search(n as usize, q as u8, Predicate::DistanceCongruent { lambda, p })?;
                    let bound = (n * (q - 1)) as usize;
                    ensure(max <= bound, || {
                        format!("n={n} q={q} p={p} λ={lambda}: {max} > {bound}")
                    })?;
                    if (n, q, p, lambda) == (4, 2, 3, 2) {
                        ensure(max == 4, || format!("tight row gave {max}"))?;
                        tight = true;
                    }
                }
            }
        }
    }
    ensure(checked > 0 && tight, || "tight row (4,2,3,2) was not reached".into())
}

fn few_distances_sweep() -> Check {
    for n in 1..=4usize {
        for q in [2u8, 3] {
            for s in 1..=2usize {
                let independent: u64 = (0..=s as u64)
                    .map(|i| binom(n as u64, i) * (q as u64 - 1).pow(i as u32))
                    .sum();
                // s > n leaves every family admissible, and the sum is q^n
                if s <= n {
                    let bound = lift(delsarte_bound(n as u64, q as u64, s as u64))?;
                    ensure(bound == independent.into(), || {
                        format!("bound mismatch at n={n} q={q} s={s}")
                    })?;
                }
                let ds: Vec<usize> = (1..=n).collect();
                let mut best = 0;
                for mask in 1u32..(1 << n) {
                    if mask.count_ones() as usize > s {
                        continue;
                    }
                    let distances = ds.iter().filter(|&&d| mask >> (d - 1) & 1 == 1).copied().collect();
                    best = best.max(search(n, q, Predicate::DistanceSetWithin { distances })?);
                }
                ensure(best as u64 <= independent, || {
                    format!("n={n} q={q} s={s}: {best} > {independent}")
                })?;
            }
        }
    }
    Ok(())
}

fn constant_vector_distance_sum_check() -> Check {
    for (n, q, p) in [(3usize, 2u8, 5u64), (3, 3, 5), (4, 3, 5)] {
        let field = lift(PrimeFieldCtx::new(p))?;
        let expected = (n as u64 * (q as u64 - 1)) % p;
        for id in 0..(q as usize).pow(n as u32) {
            let f = decode_tuple(id, n, q);
            let direct: usize = (0..q).map(|j| f.iter().filter(|&&x| x != j).count()).sum();
            ensure(direct as u64 % p == expected, || format!("{f:?}: direct sum {direct}"))?;
            let lib = lift(constant_vector_distance_sum(&f, q, &field))?;
            ensure(lib.value() == expected, || {
                format!("{f:?}: library sum {}", lib.value())
            })?;
        }
    }
    Ok(())
}

fn hamming_tight() -> Check {
    for (v, p, lambda) in [(1u64, 5u64, 2u64), (2, 7, 4)] {
        let h = lift(lift(hadamard_plus_full(v))?.characteristic_vectors())?;
        let cert = lift(hamming_tight_certificate(&h, p, lambda))?;
        ensure(cert.verdict == Verdict::Pass, || {
            format!("v={v}: verdict {:?}", cert.verdict)
        })?;
        all_identities_hold(&cert)?;
        let alpha = (p - pow_mod(lambda, p - 2, p)) % p;
        ensure(
            cert.extracted_coefficients.len() == h.len()
                && cert.extracted_coefficients.iter().all(|c| *c == alpha.to_string()),
            || {
                format!(
                    "v={v}: coefficients {:?}, expected all {alpha}",
                    cert.extracted_coefficients
                )
            },
        )?;
        let n = h.n() as u64;
        ensure((2 * lambda) % p == (n + 1) % p, || format!("v={v}: qλ ≢ n(q-1)+1"))?;
        ensure(cert.identity_named("tightCongruence").is_some_and(|i| i.holds), || {
            "tightCongruence missing".into()
        })?;
    }
    Ok(())
}

fn two_distance_identity() -> Check {
    let pent = lift(two_distance_certificate(&pentagon()))?;
    ensure(pent.verdict == Verdict::Pass, || {
        format!("pentagon verdict {:?}", pent.verdict)
    })?;
    all_identities_hold(&pent)?;
    let size = pent
        .identity_named("sizeIdentity")
        .ok_or("pentagon sizeIdentity missing")?;
    ensure(size.left_side == "5/4" && size.right_side == "5/4", || {
        format!("pentagon sides {size:?}")
    })?;
    for name in ["coordinatesMatchGram", "reducedExpansionOfOne", "sizeFromCoordinates"] {
        ensure(pent.identity_named(name).is_some_and(|i| i.holds), || {
            format!("pentagon {name} missing")
        })?;
    }
    // independent float check: every vertex pair sits at one of the two inner products
    let g = pentagon();
    let coords = g.coords().ok_or("pentagon coordinates missing")?;
    let a = 0.25 * (5f64.sqrt() - 1.0);
    let b = -0.25 * (5f64.sqrt() + 1.0);
    for i in 0..5 {
        for j in 0..5 {
            let dot: f64 = coords[i].iter().zip(&coords[j]).map(|(x, y)| x * y).sum();
            let want = if i == j {
                1.0
            } else if (i + 5 - j) % 5 == 1 || (j + 5 - i) % 5 == 1 {
                a
            } else {
                b
            };
            ensure((dot - want).abs() <= 1e-9 * want.abs().max(1.0), || {
                format!("pentagon dot ({i},{j})")
            })?;
        }
    }

    let s = schlafli27();
    let cert = lift(two_distance_certificate(&s))?;
    ensure(cert.verdict == Verdict::Pass, || {
        format!("schlafli verdict {:?}", cert.verdict)
    })?;
    all_identities_hold(&cert)?;
    let size = cert
        .identity_named("sizeIdentity")
        .ok_or("schlafli sizeIdentity missing")?;
    ensure(size.left_side == "9/8" && size.right_side == "9/8", || {
        format!("schlafli sides {size:?}")
    })?;
    let (bareiss, gauss) = (rank(s.gram()), gauss_rank(s.gram()));
    ensure(bareiss == 6 && gauss == 6, || {
        format!("schlafli rank {bareiss}/{gauss}")
    })?;
    let inertia = lift(inertia_psd_rank(s.gram()))?;
    ensure(inertia.is_psd && inertia.rank == 6, || {
        "schlafli Gram not PSD of rank 6".into()
    })
}

fn neumaier_ratio() -> Check {
    let j = lift(johnson_pairs(6))?;
    ensure(j.effective_dim() == 5 && j.point_count() == 15, || {
        "johnson(6) shape".into()
    })?;
    let cert = lift(neumaier_from_gram(&j))?;
    ensure(cert.verdict == Verdict::Pass, || {
        format!("johnson verdict {:?}", cert.verdict)
    })?;
    ensure(cert.details.get("m").and_then(|m| m.as_str()) == Some("2"), || {
        format!("m = {:?}", cert.details.get("m"))
    })?;
    // squared distances are 1 and 2 for pairs sharing / not sharing an index
    let direct = lift(neumaier_check(
        5,
        15,
        &extremal::exactfield::rational(1, 1),
        &extremal::exactfield::rational(2, 1),
    ))?;
    ensure(direct.details.get("m") == cert.details.get("m"), || {
        "direct ratio disagrees".into()
    })?;
    let pent = lift(neumaier_from_gram(&pentagon()))?;
    ensure(pent.verdict == Verdict::NotApplicable, || {
        format!("pentagon verdict {:?}", pent.verdict)
    })
}

fn mod_design_congruence() -> Check {
    let f = fano();
    let cert = lift(mod_design_certificate(&f, 5))?;
    ensure(cert.verdict == Verdict::Pass, || {
        format!("fano verdict {:?}", cert.verdict)
    })?;
    all_identities_hold(&cert)?;
    ensure(degrees(&f).iter().all(|&d| d % 5 == 3), || "fano degrees".into())?;

    let d = lift(projective_lambda_design(5, 11))?;
    let cert = lift(mod_design_certificate(&d, 5))?;
    ensure(cert.verdict == Verdict::Pass, || {
        format!("PG(2,11) verdict {:?}", cert.verdict)
    })?;
    all_identities_hold(&cert)?;
    // sizes and intersections only agree modulo 5
    let sizes: BTreeSet<u64> = d.sizes().into_iter().map(|k| k as u64 % 5).collect();
    let mut lambdas = BTreeSet::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            lambdas.insert(d.set(i).intersection_size(d.set(j)) as u64 % 5);
        }
    }
    ensure(d.len() == d.n() && sizes.len() == 1 && lambdas.len() == 1, || {
        "not a mod-5 design".into()
    })?;
    let (n, k, lambda) = (
        d.n() as u64 % 5,
        sizes.into_iter().next().unwrap(),
        lambdas.into_iter().next().unwrap(),
    );
    ensure((n, k, lambda) == (3, 2, 1), || format!("residues {:?}", (n, k, lambda)))?;
    ensure((k * (k + 4)) % 5 == (lambda * (n + 4)) % 5, || "double count".into())?;
    ensure(degrees(&d).iter().all(|&x| x % 5 == 2), || "PG(2,11) degrees".into())
}

fn kappa_values(c: &Certificate) -> std::result::Result<BTreeSet<String>, String> {
    let m = c
        .details
        .get("kappaMultiset")
        .and_then(|m| m.as_object())
        .ok_or("kappaMultiset missing")?;
    Ok(m.keys().cloned().collect())
}

fn ryser_dichotomy() -> Check {
    let cert = lift(ryser_decompose(&fano(), 1))?;
    ensure(cert.verdict == Verdict::Pass, || {
        format!("fano verdict {:?}", cert.verdict)
    })?;
    all_identities_hold(&cert)?;
    ensure(cert.details["alternative"] == "A" && cert.details["r"] == 3, || {
        "fano not alternative A, r=3".into()
    })?;
    ensure(kappa_values(&cert)? == BTreeSet::from(["1/3".to_string()]), || {
        "fano kappa".into()
    })?;
    for n in 4..=8usize {
        let f: SetFamily = lift(near_pencil(n))?;
        let cert = lift(ryser_decompose(&f, 1))?;
        ensure(cert.verdict == Verdict::Pass, || {
            format!("near-pencil {n}: verdict {:?}", cert.verdict)
        })?;
        all_identities_hold(&cert)?;
        let r = cert.details["r"].as_u64().unwrap_or(0);
        let r2 = cert.details["rPrime"].as_u64().unwrap_or(0);
        ensure(cert.details["alternative"] == "B" && r + r2 == n as u64 + 1, || {
            format!("near-pencil {n}: r={r} r'={r2}")
        })?;
        ensure(kappa_values(&cert)?.len() <= 2, || {
            format!("near-pencil {n}: too many kappa values")
        })?;
        for name in ["resubstitution", "thetaFormula"] {
            ensure(cert.identity_named(name).is_some_and(|i| i.holds), || {
                format!("near-pencil {n}: {name}")
            })?;
        }
        ensure(cert.identities_with_prefix("totalReciprocalSum").count() == n, || {
            "per-point sums".into()
        })?;
    }
    Ok(())
}

/// Tries every nonzero coefficient vector.
fn rows_independent(rows: &[Vec<u64>], p: u64) -> bool {
    let k = rows.len();
    let width = rows[0].len();
    (1..p.pow(k as u32)).all(|mut code| {
        let mut acc = vec![0u64; width];
        for row in rows {
            let c = code % p;
            code /= p;
            for (a, x) in acc.iter_mut().zip(row) {
                *a = (*a + c * x) % p;
            }
        }
        acc.iter().any(|&x| x != 0)
    })
}

fn agrees(rows: Vec<Vec<u64>>, p: u64, field: &PrimeFieldCtx) -> Check {
    let m = lift(Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| field.from_u64(x)).collect())
            .collect(),
    ))?;
    let cert = lift(certify_independence(&m))?;
    let certified = cert.verdict == Verdict::Pass;
    let library = lift(brute_force_independent(&m, field))?;
    let here = rows_independent(&rows, p);
    ensure(certified == here && library == here, || {
        format!("disagreement on {rows:?} mod {p}")
    })
}

fn independence_oracle() -> Check {
    let f2 = lift(PrimeFieldCtx::new(2))?;
    for bits in 0u32..512 {
        let rows = (0..3)
            .map(|i| (0..3).map(|j| (bits >> (3 * i + j) & 1) as u64).collect())
            .collect();
        agrees(rows, 2, &f2)?;
    }
    let f5 = lift(PrimeFieldCtx::new(5))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..200 {
        let rows = (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..5)).collect()).collect();
        agrees(rows, 5, &f5)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hadamard counterexample", hadamard_counterexample),
        ("modular distance bound sweep", modular_distance_sweep),
        ("few-distances bound sweep", few_distances_sweep),
        ("constant-vector distance sum", constant_vector_distance_sum_check),
        ("hamming tight certificate", hamming_tight),
        ("two-distance size identity", two_distance_identity),
        ("neumaier ratio", neumaier_ratio),
        ("mod-p design congruence", mod_design_congruence),
        ("ryser dichotomy", ryser_dichotomy),
        ("independence oracle", independence_oracle),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {:>2} {name}: pass", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    let suite = verify_paper_suite(&SuiteOptions::default());
    let built_in = suite.criteria.iter().filter(|c| c.passed).count();
    println!("built-in suite: {built_in}/{} criteria pass", suite.criteria.len());
    if !suite.passed {
        failures += 1;
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
