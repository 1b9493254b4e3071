use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{certify_independence, join, Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::exactfield::{rational, solve_linear, Field, Fp, Matrix, PrimeFieldCtx, Rational};
use crate::families::{degrees, SetFamily};

/// Largest family for which the coefficient system is solved by elimination
/// in addition to substitution.
const MOD_DESIGN_SOLVE_LIMIT: usize = 256;

/// Largest family whose θ matrix is copied into the certificate details.
const THETA_DETAIL_LIMIT: usize = 32;

/// Basis-property certificate for `n` sets on `n` points with sizes `≡ k`
/// and pairwise intersections `≡ λ (mod p)`.
///
/// For a point `t`, the polynomials `g_i(x) = ⟨x, v_i⟩ - λ` of sets missing
/// `t`, and the same polynomials with `x_t` replaced by `k - Σ_{l≠t} x_l` for
/// sets containing `t`, form a basis of the linear polynomials in the other
/// variables. Expanding `k - λ` in it yields the congruences
/// `d_i ≡ k` and `k(k-1) ≡ λ(n-1) (mod p)`.
pub fn mod_design_certificate(f: &SetFamily, p: u64) -> Result<Certificate> {
    let mut cert = Certificate::new(CertificateKind::ModDesign);
    let field = PrimeFieldCtx::new(p).ok();
    cert.clause(
        "pPrime",
        field.is_some(),
        field.is_none().then(|| format!("{p} is not a prime below 2^31")),
    );
    let Some(field) = field else {
        return Ok(cert.finish());
    };
    let n = f.n();
    let sizes = f.sizes();
    cert.clause(
        "squareFamily",
        f.len() == n && n >= 2,
        Some(format!("{} sets on {n} points", f.len())),
    );
    if f.len() != n || n < 2 {
        return Ok(cert.finish());
    }
    let k = sizes[0] as u64 % p;
    let bad_size = sizes.iter().position(|&s| s as u64 % p != k);
    cert.clause(
        "commonK",
        bad_size.is_none(),
        Some(match bad_size {
            Some(i) => format!(
                "set {} has size {} but set 1 has size {} (mod {p})",
                i + 1,
                sizes[i],
                sizes[0]
            ),
            None => format!("k = {k} mod {p}"),
        }),
    );
    let lambda = f.set(0).intersection_size(f.set(1)) as u64 % p;
    let bad_pair = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| f.set(i).intersection_size(f.set(j)) as u64 % p != lambda);
    cert.clause(
        "commonLambda",
        bad_pair.is_none(),
        Some(match bad_pair {
            Some((i, j)) => format!(
                "sets {} and {} meet in {} points, sets 1 and 2 in {} (mod {p})",
                i + 1,
                j + 1,
                f.set(i).intersection_size(f.set(j)),
                f.set(0).intersection_size(f.set(1))
            ),
            None => format!("lambda = {lambda} mod {p}"),
        }),
    );
    cert.clause(
        "nNonzero",
        !(n as u64).is_multiple_of(p),
        Some(format!("n = {} mod {p}", n as u64 % p)),
    );
    cert.clause("kNonzero", k != 0, Some(format!("k = {k} mod {p}")));
    cert.clause(
        "kMinusLambdaNonzero",
        k != lambda,
        Some(format!("k - lambda = {} mod {p}", (k + p - lambda) % p)),
    );
    cert.detail(
        "residues",
        BTreeMap::from([("n", n as u64 % p), ("k", k), ("lambda", lambda)]),
    );
    if !cert.all_clauses_hold() {
        return Ok(cert.finish());
    }

    let k_f = field.from_u64(k);
    let lam = field.from_u64(lambda);
    let k_minus_lam = k_f - lam;
    let t = 0;
    let col = |l: usize| 1 + if l < t { l } else { l - 1 };
    let coeff_rows: Vec<Vec<Fp>> = f
        .sets()
        .iter()
        .map(|s| {
            let mut c = vec![field.zero(); n];
            let through_t = s.contains(t);
            c[0] = if through_t { k_minus_lam } else { -lam };
            for l in (0..n).filter(|&l| l != t) {
                let v = u64::from(s.contains(l));
                c[col(l)] = if through_t {
                    field.from_u64(v) - field.one()
                } else {
                    field.from_u64(v)
                };
            }
            c
        })
        .collect();
    let eval = |c: &[Fp], j: usize| {
        (0..n)
            .filter(|&l| l != t)
            .fold(c[0], |acc, l| if f.set(j).contains(l) { acc + c[col(l)] } else { acc })
    };
    let e = Matrix::from_fn(n, n, |i, j| eval(&coeff_rows[i], j))?;
    let diag: BTreeSet<u64> = (0..n).map(|i| e.get(i, i).value()).collect();
    let off_ok = (0..n).all(|i| (0..n).all(|j| i == j || e.get(i, j).value() == 0));
    cert.identity(
        "evaluationDiagonal",
        join(&diag),
        k_minus_lam,
        (0..n).all(|i| *e.get(i, i) == k_minus_lam),
    );
    cert.identity(
        "evaluationOffDiagonal",
        if off_ok { "0" } else { "nonzero" },
        "0",
        off_ok,
    );
    let rank = certify_independence(&e)?.details["rank"].as_u64().unwrap_or(0) as usize;
    cert.identity_eq("evaluationRank", &rank, &n);
    if rank < n {
        return Ok(cert.finish());
    }

    // k - λ = Σ α_i (h_i or g_i); substituting v_j isolates α_j
    let alpha: Vec<Fp> = (0..n)
        .map(|j| {
            e.get(j, j)
                .inverse()
                .map(|inv| k_minus_lam * inv)
                .ok_or_else(|| Error::internal("zero diagonal in a full-rank evaluation matrix"))
        })
        .collect::<Result<_>>()?;
    if n <= MOD_DESIGN_SOLVE_LIMIT {
        let mut target = vec![field.zero(); n];
        target[0] = k_minus_lam;
        let solved = solve_linear(&Matrix::from_rows(coeff_rows.clone())?.transpose(), &target)?;
        cert.identity(
            "alphaBySolveMatchesSubstitution",
            join(&solved),
            join(&alpha),
            solved == alpha,
        );
    }
    cert.coefficients(&alpha);
    cert.identity(
        "alphaAllOne",
        join(alpha.iter().map(Fp::value).collect::<BTreeSet<_>>()),
        1,
        alpha.iter().all(|a| a.value() == 1),
    );
    let recombined: Vec<Fp> = (0..n)
        .map(|c| {
            alpha
                .iter()
                .zip(&coeff_rows)
                .fold(field.zero(), |acc, (a, row)| acc + *a * row[c])
        })
        .collect();
    cert.identity_eq("recombinedConstantTerm", &recombined[0], &k_minus_lam);
    let linear_ok = recombined[1..].iter().all(|c| c.value() == 0);
    cert.identity(
        "recombinedLinearTerms",
        join(recombined[1..].iter().map(Fp::value).collect::<BTreeSet<_>>()),
        "0",
        linear_ok || n == 1,
    );

    let deg = degrees(f);
    let n_f = field.from_u64(n as u64);
    let per_point: BTreeSet<u64> = deg
        .iter()
        .map(|&d| (-(lam * n_f) + k_f * field.from_u64(d as u64)).value())
        .collect();
    cert.identity(
        "constantTermAtEveryPoint",
        k_minus_lam,
        join(&per_point),
        per_point.len() == 1 && per_point.first() == Some(&k_minus_lam.value()),
    );
    let deg_res: BTreeSet<u64> = deg.iter().map(|&d| d as u64 % p).collect();
    cert.identity(
        "degreesCongruentToK",
        join(&deg_res),
        k,
        deg_res.len() == 1 && deg_res.first() == Some(&k),
    );
    let incidences: usize = deg.iter().sum();
    let by_sets: usize = sizes.iter().sum();
    cert.identity_eq("doubleCount", &incidences, &by_sets);
    let left = k_f * (k_f - field.one());
    let right = lam * (n_f - field.one());
    cert.identity_eq("designCongruence", &left, &right);
    cert.detail("degrees", &deg);
    Ok(cert.finish())
}

/// Expands each monomial `x_i` in the basis `{1} ∪ {⟨x, v_j⟩ - λ}` of a
/// family of `n` sets on `n` points with constant pairwise intersection λ,
/// and derives the two-alternative structure from the constant terms `κ_i`.
pub fn ryser_decompose(f: &SetFamily, lambda: u64) -> Result<Certificate> {
    let mut cert = Certificate::new(CertificateKind::Ryser);
    let n = f.n();
    cert.clause("atLeastTwoSets", f.len() >= 2, Some(format!("{} sets", f.len())));
    cert.clause(
        "squareFamily",
        f.len() == n,
        Some(format!("{} sets on {n} points", f.len())),
    );
    cert.clause("lambdaPositive", lambda > 0, None);
    let bad_pair = (0..f.len())
        .flat_map(|i| (i + 1..f.len()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, f.set(i).intersection_size(f.set(j))))
        .find(|&(_, _, s)| s as u64 != lambda);
    cert.clause(
        "constantIntersection",
        bad_pair.is_none(),
        bad_pair.map(|(i, j, s)| format!("sets {} and {} meet in {s} points, not {lambda}", i + 1, j + 1)),
    );
    let sizes = f.sizes();
    let small = sizes.iter().position(|&s| s as u64 <= lambda);
    cert.clause(
        "sizesExceedLambda",
        small.is_none(),
        small.map(|i| format!("set {} has size {} <= {lambda}", i + 1, sizes[i])),
    );
    if !cert.all_clauses_hold() {
        return Ok(cert.finish());
    }

    let zero = rational(0, 1);
    let one = rational(1, 1);
    let lam = Rational::from_integer(lambda.into());
    let a = Matrix::from_fn(n, n, |j, l| {
        if f.set(j).contains(l) {
            one.clone()
        } else {
            zero.clone()
        }
    })?;
    // column i of (Aᵀ)⁻¹ is θ_i
    let inv = a
        .transpose()
        .solve_many(&Matrix::identity(n, &one))
        .map_err(|e| Error::internal(format!("incidence matrix singular under the hypotheses: {e}")))?;
    let theta: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| inv.get(j, i).clone()).collect())
        .collect();
    let kappa: Vec<Rational> = theta
        .iter()
        .map(|row| lam.clone() * row.iter().fold(zero.clone(), |acc, x| acc + x))
        .collect();
    cert.coefficients(&kappa);

    // x_i = Σ_j θ_ij (⟨x, v_j⟩ - λ) + κ_i, compared coefficient by coefficient
    let resub_ok = (0..n).all(|i| {
        let linear_ok = (0..n).all(|l| {
            let c = (0..n).fold(zero.clone(), |acc, j| acc + theta[i][j].clone() * a.get(j, l).clone());
            c == if l == i { one.clone() } else { zero.clone() }
        });
        let constant = kappa[i].clone() - lam.clone() * theta[i].iter().fold(zero.clone(), |acc, x| acc + x);
        linear_ok && constant.is_zero()
    });
    cert.identity(
        "resubstitution",
        if resub_ok { "x_i" } else { "mismatch" },
        "x_i",
        resub_ok,
    );

    let gap: Vec<Rational> = sizes
        .iter()
        .map(|&s| Rational::from_integer(s.into()) - lam.clone())
        .collect();
    let theta_ok = (0..n).all(|i| {
        (0..n).all(|j| {
            let num = if f.set(j).contains(i) {
                one.clone() - kappa[i].clone()
            } else {
                -kappa[i].clone()
            };
            theta[i][j] == num / gap[j].clone()
        })
    });
    cert.identity(
        "thetaFormula",
        if theta_ok { "theta" } else { "mismatch" },
        "theta",
        theta_ok,
    );

    let deg = degrees(f);
    let recip = |x: &Rational| (!x.is_zero()).then(|| x.recip());
    let show = |x: Option<Rational>| x.map_or_else(|| "undefined".to_string(), |v| v.to_string());
    let inv_lam = lam.recip();
    let total: Rational = gap.iter().map(|g| g.recip()).sum();
    for i in 0..n {
        let k = &kappa[i];
        let member: Rational = (0..n).filter(|&j| f.set(j).contains(i)).map(|j| gap[j].recip()).sum();
        let non_member: Rational = (0..n).filter(|&j| !f.set(j).contains(i)).map(|j| gap[j].recip()).sum();
        let r_expected = k.clone() * Rational::from_integer((n as i64 - 1).into()) + one.clone();
        cert.identity_eq(
            format!("degreeFromKappa[{}]", i + 1),
            &Rational::from_integer(deg[i].into()),
            &r_expected,
        );
        let rhs = recip(&(one.clone() - k));
        cert.identity(
            format!("memberReciprocalSum[{}]", i + 1),
            &member,
            show(rhs.clone()),
            rhs.as_ref() == Some(&member),
        );
        let rhs = recip(k).map(|x| x - inv_lam.clone());
        cert.identity(
            format!("nonMemberReciprocalSum[{}]", i + 1),
            &non_member,
            show(rhs.clone()),
            rhs.as_ref() == Some(&non_member),
        );
        let rhs = recip(k)
            .zip(recip(&(one.clone() - k)))
            .map(|(x, y)| x + y - inv_lam.clone());
        cert.identity(
            format!("totalReciprocalSum[{}]", i + 1),
            &total,
            show(rhs.clone()),
            rhs.as_ref() == Some(&total),
        );
    }

    let mut classes: BTreeMap<Rational, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..n {
        classes.entry(kappa[i].clone()).or_default().insert(deg[i]);
    }
    let distinct = classes.len();
    cert.identity("kappaDistinctValuesAtMostTwo", distinct, 2, distinct <= 2);
    let class_degrees_ok = classes.values().all(|d| d.len() == 1);
    cert.identity(
        "degreeConstantPerKappa",
        if class_degrees_ok { "constant" } else { "varies" },
        "constant",
        class_degrees_ok,
    );
    let degree_of = |k: &Rational| classes[k].first().copied().unwrap_or(0);
    match distinct {
        1 => {
            let k = classes.keys().next().expect("one class").clone();
            let r = degree_of(&k);
            let uniform: BTreeSet<usize> = sizes.iter().copied().collect();
            cert.identity(
                "uniformSizesEqualDegree",
                join(&uniform),
                r,
                uniform.len() == 1 && uniform.contains(&r),
            );
            cert.detail("alternative", "A");
            cert.detail("r", r);
        }
        2 => {
            let mut ks: Vec<Rational> = classes.keys().cloned().collect();
            ks.reverse();
            let (r, r_prime) = (degree_of(&ks[0]), degree_of(&ks[1]));
            cert.identity_eq("kappaSum", &(ks[0].clone() + ks[1].clone()), &one);
            cert.identity_eq("degreeSum", &(r + r_prime), &(n + 1));
            cert.detail("alternative", "B");
            cert.detail("r", r);
            cert.detail("rPrime", r_prime);
        }
        _ => cert.detail("alternative", "none"),
    }
    let multiset: BTreeMap<String, usize> = kappa.iter().fold(BTreeMap::new(), |mut acc, k| {
        *acc.entry(k.to_string()).or_default() += 1;
        acc
    });
    cert.detail("kappaMultiset", multiset);
    cert.detail("degrees", &deg);
    if n <= THETA_DETAIL_LIMIT {
        let rows: Vec<Vec<String>> = theta
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        cert.detail("theta", rows);
    }
    Ok(cert.finish())
}
