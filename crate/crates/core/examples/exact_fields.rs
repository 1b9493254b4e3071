//! Exact arithmetic over ℚ, ℚ(√5) and 𝔽_p, plus rank and PSD checks.

use extremal::exactfield::{inertia_psd_rank, rank, rational, ExactScalar, Field, Matrix, PrimeFieldCtx, QuadExt};

fn main() -> extremal::Result<()> {
    let golden = QuadExt::parse("1/2+1/2*sqrt(5)", None)?;
    let product = golden.clone() * golden.conjugate();
    println!("φ = {golden}, φ·φ̄ = {product}, 1/φ = {}", golden.inverse().unwrap());

    let f7 = PrimeFieldCtx::new(7)?;
    let x = f7.elem(3);
    println!("3⁻¹ in F_7 = {}", x.inverse().unwrap());
    println!("parsed scalar: {}", ExactScalar::parse_real("-3/4")?);

    let m = Matrix::from_rows(vec![
        vec![rational(2, 1), rational(1, 2), rational(0, 1)],
        vec![rational(1, 2), rational(2, 1), rational(1, 2)],
        vec![rational(0, 1), rational(1, 2), rational(2, 1)],
    ])?;
    let inertia = inertia_psd_rank(&m)?;
    println!("rank {} psd {}", rank(&m), inertia.is_psd);
    Ok(())
}
