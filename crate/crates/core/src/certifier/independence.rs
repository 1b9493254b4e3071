use super::{Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::exactfield::{Field, Fp, Matrix, PrimeFieldCtx, Ring};

/// Certifies that the functions behind an evaluation matrix
/// `B[i][j] = f_i(v_j)` are linearly independent: they are whenever `B`
/// is nonsingular.
pub fn certify_independence<T: Field>(b: &Matrix<T>) -> Result<Certificate> {
    if !b.is_square() {
        return Err(Error::malformed(format!(
            "evaluation matrix must be square, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let mut cert = Certificate::new(CertificateKind::Independence);
    let size = b.rows();
    let rank = b.rank();
    cert.clause("square", true, Some(format!("{size}x{size}")));
    cert.identity_eq("rankEqualsSize", &rank, &size);
    cert.detail("rank", rank);
    cert.detail("size", size);
    cert.detail("rankDeficit", size - rank);
    if size > 0 {
        cert.detail("field", b.get(0, 0).tag().to_string());
    }
    Ok(cert.finish())
}

/// Whether the rows of `m` are independent, decided by trying every nonzero
/// coefficient vector over 𝔽_p. Exponential; meant as a test oracle.
pub fn brute_force_independent(m: &Matrix<Fp>, field: &PrimeFieldCtx) -> Result<bool> {
    let p = field.modulus();
    let rows = m.rows();
    let combos = u128::from(p).checked_pow(rows as u32).unwrap_or(u128::MAX);
    let limit = 1u128 << 24;
    if combos > limit {
        return Err(Error::ResourceGuard { size: combos, limit });
    }
    let mut coeffs = vec![0u64; rows];
    'outer: loop {
        let mut i = 0;
        loop {
            if i == rows {
                break 'outer;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        let zero = (0..m.cols()).all(|j| {
            (0..rows)
                .fold(field.zero(), |acc, i| acc + field.from_u64(coeffs[i]) * *m.get(i, j))
                .is_zero()
        });
        if zero {
            return Ok(false);
        }
    }
    Ok(true)
}
