//! Independence certificates checked against brute-force enumeration.

use extremal::certifier::{brute_force_independent, certify_independence};
use extremal::exactfield::{Matrix, PrimeFieldCtx};

fn main() -> extremal::Result<()> {
    let f = PrimeFieldCtx::new(5)?;
    for rows in [[[1, 2, 0], [0, 1, 4], [3, 0, 2]], [[1, 2, 3], [2, 4, 1], [3, 1, 4]]] {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.elem(x)).collect()).collect())?;
        let cert = certify_independence(&m)?;
        println!(
            "rank {} verdict {:?} brute force {}",
            cert.details["rank"],
            cert.verdict,
            brute_force_independent(&m, &f)?
        );
    }
    Ok(())
}
