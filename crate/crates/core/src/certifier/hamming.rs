use std::collections::BTreeSet;

use super::{certify_independence, join, Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::exactfield::{solve_linear, Field, Fp, Matrix, PrimeFieldCtx, Ring};
use crate::families::{constant_vector_distance_sum, distance_unchecked, VectorSystem};

/// Coefficients (constant term first) of the polynomial `l_a` of degree at
/// most `q-1` over 𝔽_p with `l_a(a) = 0` and `l_a(b) = 1` for every other
/// symbol `b`.
pub fn indicator_poly(a: u8, q: u8, field: &PrimeFieldCtx) -> Result<Vec<Fp>> {
    if field.modulus() < u64::from(q) {
        return Err(Error::hypothesis(format!(
            "p = {} is smaller than q = {q}",
            field.modulus()
        )));
    }
    if a >= q {
        return Err(Error::malformed(format!(
            "symbol {a} outside [0, {}]",
            q.saturating_sub(1)
        )));
    }
    // l_a = 1 - Π_{b≠a} (x-b)/(a-b)
    let mut prod = vec![field.one()];
    for b in (0..q).filter(|&b| b != a) {
        let inv = field
            .elem(i64::from(a) - i64::from(b))
            .inverse()
            .ok_or_else(|| Error::internal("distinct symbols collide mod p"))?;
        let shift = -field.from_u64(u64::from(b)) * inv;
        let mut next = vec![field.zero(); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = next[k + 1] + *c * inv;
            next[k] = next[k] + *c * shift;
        }
        prod = next;
    }
    let mut coeffs: Vec<Fp> = prod.into_iter().map(|c| -c).collect();
    coeffs[0] = coeffs[0] + field.one();
    coeffs.resize(usize::from(q), field.zero());
    for x in 0..q {
        let want = if x == a { field.zero() } else { field.one() };
        if eval_univariate(&coeffs, &field.from_u64(u64::from(x))) != want {
            return Err(Error::internal(format!(
                "indicator polynomial l_{a} misses its value at {x}"
            )));
        }
    }
    Ok(coeffs)
}

fn eval_univariate(coeffs: &[Fp], x: &Fp) -> Fp {
    coeffs.iter().rev().fold(x.zero_like(), |acc, c| acc * *x + *c)
}

/// Values of the monomials `1, x_i^j (1 <= j < q)` at `x`, in basis order.
fn basis_values(x: &[u8], q: u8, field: &PrimeFieldCtx) -> Vec<Fp> {
    let mut out = Vec::with_capacity(1 + x.len() * usize::from(q - 1));
    out.push(field.one());
    for &xi in x {
        let v = field.from_u64(u64::from(xi));
        let mut power = field.one();
        for _ in 1..q {
            power = power * v;
            out.push(power);
        }
    }
    out
}

fn dot(a: &[Fp], b: &[Fp]) -> Fp {
    a.iter().zip(b).fold(a[0].zero_like(), |acc, (x, y)| acc + *x * *y)
}

/// Basis-property certificate for a tight family under a modular distance
/// condition.
///
/// With `f_a(x) = Σ_i l_{a_i}(x_i) - λ`, a family of size `n(q-1)+1` whose
/// distances are all `≡ λ (mod p)` gives a basis of the polynomials spanned
/// by `1` and `x_i^j`. The certificate extracts the coefficients of `1` in
/// that basis, sums the polynomials over the `q` constant vectors, and
/// checks the congruence `qλ ≡ n(q-1)+1 (mod p)` this forces.
pub fn hamming_tight_certificate(h: &VectorSystem, p: u64, lambda: u64) -> Result<Certificate> {
    let mut cert = Certificate::new(CertificateKind::HammingTight);
    let n = h.n();
    let q = h.q();
    let field = PrimeFieldCtx::new(p).ok();
    cert.clause(
        "pPrime",
        field.is_some(),
        field.is_none().then(|| format!("{p} is not a prime below 2^31")),
    );
    let Some(field) = field else {
        return Ok(cert.finish());
    };
    cert.clause("pGeqQ", p >= u64::from(q), Some(format!("p = {p}, q = {q}")));
    cert.clause(
        "lambdaNonzero",
        !lambda.is_multiple_of(p),
        Some(format!("lambda = {lambda} = {} mod {p}", lambda % p)),
    );
    let offending = (0..h.len())
        .flat_map(|i| (i + 1..h.len()).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, distance_unchecked(h.get(i), h.get(j))))
        .find(|&(_, _, d)| d as u64 % p != lambda % p);
    cert.clause(
        "distancesCongruent",
        offending.is_none(),
        offending.map(|(i, j, d)| {
            format!(
                "vectors {} and {} are at distance {d}, not {lambda} mod {p}",
                i + 1,
                j + 1
            )
        }),
    );
    if !cert.all_clauses_hold() {
        return Ok(cert.finish());
    }

    let m = n * usize::from(q - 1);
    let size = h.len();
    cert.detail("size", size);
    cert.detail("tightSize", m + 1);
    cert.detail("nTimesQMinusOneNonzeroModP", !(m as u64).is_multiple_of(p));
    if size != m + 1 {
        return Ok(cert.not_applicable(format!(
            "family has {size} members; the basis argument needs exactly n(q-1)+1 = {}",
            m + 1
        )));
    }

    let lam = field.from_u64(lambda % p);
    let indicators = (0..q)
        .map(|a| indicator_poly(a, q, &field))
        .collect::<Result<Vec<_>>>()?;
    let coeff_rows: Vec<Vec<Fp>> = h
        .vectors()
        .iter()
        .map(|a| {
            let mut c = vec![field.zero(); m + 1];
            c[0] = -lam;
            for (i, &ai) in a.iter().enumerate() {
                let l = &indicators[usize::from(ai)];
                c[0] = c[0] + l[0];
                for (j, &lj) in l.iter().enumerate().skip(1) {
                    let k = i * usize::from(q - 1) + j;
                    c[k] = c[k] + lj;
                }
            }
            c
        })
        .collect();
    let eval = |c: &[Fp], x: &[u8]| dot(c, &basis_values(x, q, &field));

    // f_a(v_b) from the polynomials, compared against d_H(a, b) - λ
    let b = Matrix::from_fn(size, size, |a, b| eval(&coeff_rows[a], h.get(b)))?;
    let mut diag = BTreeSet::new();
    let mut off = BTreeSet::new();
    let mut entries_match = true;
    for i in 0..size {
        for j in 0..size {
            let want = field.from_u64(distance_unchecked(h.get(i), h.get(j)) as u64) - lam;
            entries_match &= *b.get(i, j) == want;
            if i == j {
                diag.insert(b.get(i, j).value());
            } else {
                off.insert(b.get(i, j).value());
            }
        }
    }
    cert.identity(
        "evaluationMatchesDistances",
        "f_a(v_b)",
        "d(a,b) - lambda",
        entries_match,
    );
    cert.identity(
        "evaluationDiagonal",
        join(&diag),
        -lam,
        diag.len() == 1 && diag.first() == Some(&(-lam).value()),
    );
    if size > 1 {
        cert.identity(
            "evaluationOffDiagonal",
            join(&off),
            0,
            off.len() == 1 && off.first() == Some(&0),
        );
    }
    let independence = certify_independence(&b)?;
    let rank = independence.details["rank"].as_u64().unwrap_or(0) as usize;
    cert.identity_eq("evaluationRank", &rank, &size);
    if rank < size {
        return Ok(cert.finish());
    }

    // 1 = Σ α_a f_a, solved on coefficient vectors
    let c = Matrix::from_rows(coeff_rows.clone())?.transpose();
    let mut target = vec![field.zero(); m + 1];
    target[0] = field.one();
    let alpha = solve_linear(&c, &target)
        .map_err(|e| Error::internal(format!("coefficient matrix singular despite full-rank evaluation: {e}")))?;
    cert.coefficients(&alpha);
    let expected = lam
        .inverse()
        .map(|x| -x)
        .ok_or_else(|| Error::internal("lambda vanished mod p"))?;
    let distinct: BTreeSet<u64> = alpha.iter().map(Fp::value).collect();
    cert.identity(
        "alphaEqualsMinusInverseLambda",
        join(&distinct),
        expected,
        alpha.iter().all(|a| *a == expected),
    );
    let recombined: Vec<Fp> = (0..=m)
        .map(|k| {
            alpha
                .iter()
                .zip(&coeff_rows)
                .fold(field.zero(), |acc, (a, row)| acc + *a * row[k])
        })
        .collect();
    cert.identity(
        "coefficientResubstitution",
        join(&recombined),
        join(&target),
        recombined == target,
    );

    // Σ_a f_a at each constant vector (j, …, j)
    let mut total = field.zero();
    for j in 0..q {
        let point = vec![j; n];
        let s = coeff_rows.iter().fold(field.zero(), |acc, row| acc + eval(row, &point));
        cert.identity_eq(format!("constantVectorSum[{j}]"), &s, &-lam);
        total = total + s;
    }
    let member_sums = h
        .vectors()
        .iter()
        .map(|a| constant_vector_distance_sum(a, q, &field))
        .collect::<Result<Vec<_>>>()?;
    let m_mod = field.from_u64(m as u64);
    let distinct_sums: BTreeSet<u64> = member_sums.iter().map(Fp::value).collect();
    cert.identity(
        "memberConstantDistanceSums",
        join(&distinct_sums),
        m_mod,
        member_sums.iter().all(|s| *s == m_mod),
    );
    let q_f = field.from_u64(u64::from(q));
    let counted = member_sums.iter().fold(field.zero(), |acc, s| acc + *s - q_f * lam);
    cert.identity_eq("summedConstantVectors", &total, &(-(q_f * lam)));
    cert.identity_eq("countedConstantVectors", &total, &counted);
    let left = q_f * lam;
    let right = m_mod + field.one();
    cert.identity_eq("tightCongruence", &left, &right);
    Ok(cert.finish())
}
