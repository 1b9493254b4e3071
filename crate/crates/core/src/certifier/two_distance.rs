use std::collections::BTreeSet;

use super::{certify_independence, join, sphere_reduce, Certificate, CertificateKind, Monomial, Poly};
use crate::constructions::GramTwoDistance;
use crate::error::{Error, Result};
use crate::exactfield::{solve_linear, Matrix, OrderedField, Rational};

/// Relative tolerance for coordinate-level checks.
pub const COORD_TOLERANCE: f64 = 1e-9;

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= COORD_TOLERANCE * 1f64.max(x.abs()).max(y.abs())
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.12}")
}

/// Basis-property certificate for a maximal spherical two-distance set.
///
/// With `P_m(x) = (⟨x, v_m⟩ - a)(⟨x, v_m⟩ - b)`, the evaluation matrix
/// `P_m(v_s)` is computed from the Gram matrix alone. For a set of size
/// `n(n+3)/2` the reduced polynomials form a basis, `1 = Σ α_m Q_m`, and
/// the certificate checks `N(ab + 1/n) = (1-a)(1-b)` exactly. Attached
/// coordinates enable the coordinate-level consequences in floating point.
pub fn two_distance_certificate<T: OrderedField>(g: &GramTwoDistance<T>) -> Result<Certificate> {
    let mut cert = Certificate::new(CertificateKind::TwoDistance);
    let a = g.value_a().clone();
    let b = g.value_b().clone();
    let one = a.one_like();
    cert.clause("aNotOne", a != one, Some(format!("a = {a}")));
    cert.clause("bNotOne", b != one, Some(format!("b = {b}")));
    if !cert.all_clauses_hold() {
        return Ok(cert.finish());
    }
    let n = g.effective_dim();
    let count = g.point_count();
    let maximal = n * (n + 3) / 2;
    cert.detail("dimension", n);
    cert.detail("pointCount", count);
    cert.detail("maximalCount", maximal);
    if count != maximal {
        return Ok(cert.not_applicable(format!(
            "{count} points in dimension {n}; the identity is derived only for n(n+3)/2 = {maximal}"
        )));
    }

    let gram = g.gram();
    let eval = Matrix::from_fn(count, count, |m, s| {
        let x = gram.get(m, s).clone();
        (x.clone() - a.clone()) * (x - b.clone())
    })?;
    let diag_value = (one.clone() - a.clone()) * (one.clone() - b.clone());
    let zero = a.zero_like();
    let diagonal: BTreeSet<String> = (0..count).map(|i| eval.get(i, i).to_string()).collect();
    let off_ok = (0..count).all(|i| (0..count).all(|j| i == j || eval.get(i, j).is_zero()));
    cert.identity(
        "evaluationDiagonal",
        join(&diagonal),
        &diag_value,
        (0..count).all(|i| *eval.get(i, i) == diag_value),
    );
    cert.identity(
        "evaluationOffDiagonal",
        if off_ok { "0" } else { "nonzero" },
        &zero,
        off_ok,
    );
    let independence = certify_independence(&eval)?;
    let rank = independence.details["rank"].as_u64().unwrap_or(0) as usize;
    cert.identity_eq("evaluationRank", &rank, &count);
    if rank < count {
        return Ok(cert.finish());
    }

    // 1 = Σ α_m P_m on the point set
    let alpha = solve_linear(&eval.transpose(), &vec![one.clone(); count])?;
    cert.coefficients(&alpha);
    let expected_alpha = diag_value
        .inverse()
        .ok_or_else(|| Error::internal("(1-a)(1-b) vanished"))?;
    let distinct: BTreeSet<String> = alpha.iter().map(ToString::to_string).collect();
    cert.identity(
        "alphaEqualsInverseProduct",
        join(&distinct),
        &expected_alpha,
        alpha.iter().all(|x| *x == expected_alpha),
    );

    let n_t = one.from_i64_like(n as i64);
    let count_t = one.from_i64_like(count as i64);
    let inv_n = n_t.inverse().ok_or_else(|| Error::internal("dimension vanished"))?;
    let left = count_t.clone() * (a.clone() * b.clone() + inv_n);
    cert.identity_eq("sizeIdentity", &left, &diag_value);
    let size_from_sums = n_t.clone() * diag_value.clone() - n_t * count_t.clone() * a.clone() * b.clone();
    cert.identity_eq("sizeFromSquareSums", &count_t, &size_from_sums);

    match g.coords() {
        Some(coords) if g.affine_dim().is_none() => {
            coordinate_checks(&mut cert, g, coords, &alpha);
        }
        Some(_) => cert.detail("coordinateChecks", "skipped: coordinates span a proper affine subspace"),
        None => cert.detail("coordinateChecks", "skipped: no coordinates attached"),
    }
    Ok(cert.finish())
}

fn coordinate_checks<T: OrderedField>(
    cert: &mut Certificate,
    g: &GramTwoDistance<T>,
    coords: &[Vec<f64>],
    alpha: &[T],
) {
    let n = g.ambient_dim();
    let count = coords.len();
    let a = g.value_a().to_f64();
    let b = g.value_b().to_f64();
    let alpha: Vec<f64> = alpha.iter().map(OrderedField::to_f64).collect();

    let mut worst = 0f64;
    let mut gram_ok = true;
    for s in 0..count {
        for t in 0..count {
            let dot: f64 = coords[s].iter().zip(&coords[t]).map(|(x, y)| x * y).sum();
            let want = g.gram().get(s, t).to_f64();
            worst = worst.max((dot - want).abs());
            gram_ok &= close(dot, want);
        }
    }
    cert.identity("coordinatesMatchGram", fmt_f64(worst), fmt_f64(0.0), gram_ok);

    // Σ α_m Q_m = 1 as reduced polynomials
    let polys: Vec<Poly<f64>> = coords
        .iter()
        .map(|v| {
            let pa = Poly::linear(v, -a);
            let pb = Poly::linear(v, -b);
            pa.mul(&pb)
        })
        .collect();
    let mut total = Poly::zero(n, 0.0);
    let mut reduced_ok = true;
    for (p, &al) in polys.iter().zip(&alpha) {
        match sphere_reduce(p) {
            Ok(q) => total = total.add(&q.as_poly().scale(&al)),
            Err(_) => reduced_ok = false,
        }
    }
    let mut deviation = 0f64;
    for (m, c) in total.terms() {
        let want = if *m == Monomial::one() { 1.0 } else { 0.0 };
        deviation = deviation.max((c - want).abs());
    }
    let constant = total.coefficient(&Monomial::one());
    deviation = deviation.max((constant - 1.0).abs());
    cert.identity(
        "reducedExpansionOfOne",
        fmt_f64(deviation),
        fmt_f64(0.0),
        reduced_ok && deviation <= COORD_TOLERANCE,
    );

    // P_m(±e_i): Σ α_m P_m(±e_i) = 1, whose difference and sum give the
    // column-sum and square-sum identities
    let mut plus_minus_ok = true;
    let mut columns_ok = true;
    let mut squares_ok = true;
    let mut worst_column = 0f64;
    let mut worst_square = 0f64;
    let ab = a * b;
    let square_target = (1.0 - a) * (1.0 - b) - count as f64 * ab;
    for i in 0..n {
        let mut e = vec![0.0; n];
        for sign in [1.0, -1.0] {
            e[i] = sign;
            let s: f64 = polys.iter().zip(&alpha).map(|(p, al)| al * p.eval(&e)).sum();
            plus_minus_ok &= close(s, 1.0);
        }
        let column: f64 = coords.iter().map(|v| v[i]).sum();
        let lhs = (a + b) * column;
        worst_column = worst_column.max(lhs.abs());
        columns_ok &= close(lhs, 0.0);
        let squares: f64 = coords.iter().map(|v| v[i] * v[i]).sum();
        worst_square = worst_square.max((squares - square_target).abs());
        squares_ok &= close(squares, square_target);
    }
    cert.identity(
        "unitVectorEvaluations",
        if plus_minus_ok { "1" } else { "off" },
        "1",
        plus_minus_ok,
    );
    cert.identity("columnSums", fmt_f64(worst_column), fmt_f64(0.0), columns_ok);
    cert.identity("squareSums", fmt_f64(worst_square), fmt_f64(0.0), squares_ok);

    let norms: f64 = coords.iter().flatten().map(|x| x * x).sum();
    let rhs = n as f64 * (1.0 - a) * (1.0 - b) - (n * count) as f64 * ab;
    cert.identity(
        "sizeFromCoordinates",
        fmt_f64(norms),
        fmt_f64(rhs),
        close(norms, rhs) && close(norms, count as f64),
    );
}

/// Checks whether the squared-distance ratio of a two-distance set has the
/// form `(m-1)/m` for an integer `m >= 2`.
///
/// Applies only when `N > max(2n+1, 5)`.
pub fn neumaier_check<T: OrderedField>(n: usize, count: usize, d1sq: &T, d2sq: &T) -> Result<Certificate> {
    if d1sq.signum() != std::cmp::Ordering::Greater || d1sq.exact_cmp(d2sq) != std::cmp::Ordering::Less {
        return Err(Error::malformed(format!(
            "need 0 < d1sq < d2sq, got d1sq = {d1sq}, d2sq = {d2sq}"
        )));
    }
    let mut cert = Certificate::new(CertificateKind::Neumaier);
    let threshold = (2 * n + 1).max(5);
    cert.detail("dimension", n);
    cert.detail("pointCount", count);
    cert.detail("threshold", threshold);
    if count <= threshold {
        return Ok(cert.not_applicable(format!("{count} points do not exceed max(2n+1, 5) = {threshold}")));
    }
    let ratio = d1sq
        .checked_div(d2sq)
        .ok_or_else(|| Error::internal("zero squared distance"))?;
    cert.detail("ratio", ratio.to_string());
    let one = ratio.one_like();
    let m = (one.clone() - ratio.clone())
        .inverse()
        .and_then(|x| x.to_rational())
        .filter(|x| x.is_integer())
        .map(|x| x.to_integer());
    let two = num_bigint::BigInt::from(2);
    match m {
        Some(m) if m >= two => {
            let m_t = Rational::from_integer(m.clone());
            let expected = (m_t.clone() - Rational::from_integer(1.into())) / m_t;
            let ratio_q = ratio.to_rational();
            cert.detail("m", m.to_string());
            cert.coefficients(std::slice::from_ref(&m));
            cert.identity(
                "ratioIsMMinusOneOverM",
                &ratio,
                &expected,
                ratio_q.as_ref() == Some(&expected),
            );
        }
        _ => {
            cert.identity("ratioIsMMinusOneOverM", &ratio, "no integer m >= 2", false);
        }
    }
    Ok(cert.finish())
}

/// [`neumaier_check`] with squared distances `2 - 2a` and `2 - 2b` read off a Gram matrix.
pub fn neumaier_from_gram<T: OrderedField>(g: &GramTwoDistance<T>) -> Result<Certificate> {
    let two = g.value_a().from_i64_like(2);
    let da = two.clone() - two.clone() * g.value_a().clone();
    let db = two.clone() - two * g.value_b().clone();
    let (d1, d2) = if da.exact_cmp(&db) == std::cmp::Ordering::Less {
        (da, db)
    } else {
        (db, da)
    };
    neumaier_check(g.effective_dim(), g.point_count(), &d1, &d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::Verdict;
    use crate::constructions::{johnson_pairs, pentagon, schlafli27, schlafli_with_values};
    use crate::exactfield::rational;

    #[test]
    fn pentagon_passes_exactly() {
        let c = two_distance_certificate(&pentagon()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{c:#?}");
        let id = c.identity_named("sizeIdentity").unwrap();
        assert_eq!(id.left_side, "5/4");
        assert_eq!(id.right_side, "5/4");
        for name in [
            "columnSums",
            "sizeFromCoordinates",
            "reducedExpansionOfOne",
            "squareSums",
        ] {
            assert!(c.identity_named(name).unwrap().holds, "{name}");
        }
    }

    #[test]
    fn schlafli_passes_and_mutation_fails() {
        let c = two_distance_certificate(&schlafli27()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let id = c.identity_named("sizeIdentity").unwrap();
        assert_eq!((id.left_side.as_str(), id.right_side.as_str()), ("9/8", "9/8"));
        assert!(c.extracted_coefficients.iter().all(|a| a == "8/9"));

        let bad = schlafli_with_values(rational(-1, 2), rational(1, 3)).unwrap();
        let c = two_distance_certificate(&bad).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(!c.identity_named("sizeIdentity").unwrap().holds);
    }

    #[test]
    fn johnson_not_maximal() {
        let c = two_distance_certificate(&johnson_pairs(6).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn neumaier_examples() {
        let c = neumaier_from_gram(&johnson_pairs(6).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.details["m"], "2");
        assert_eq!(neumaier_from_gram(&pentagon()).unwrap().verdict, Verdict::NotApplicable);
        let c = neumaier_check(5, 12, &rational(3, 1), &rational(4, 1)).unwrap();
        assert_eq!(c.details["m"], "4");
        assert_eq!(c.verdict, Verdict::Pass);
        let c = neumaier_check(5, 12, &rational(2, 1), &rational(5, 1)).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(matches!(
            neumaier_check(5, 12, &rational(4, 1), &rational(3, 1)),
            Err(Error::MalformedInput(_))
        ));
    }
}
