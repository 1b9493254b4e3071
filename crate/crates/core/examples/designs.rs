//! Designs modulo p and the two alternatives for λ-designs.

use extremal::certifier::{mod_design_certificate, ryser_decompose};
use extremal::constructions::{fano, near_pencil, projective_lambda_design};

fn main() -> extremal::Result<()> {
    let cert = mod_design_certificate(&fano(), 5)?;
    println!("fano mod 5: {:?}", cert.verdict);
    let d = projective_lambda_design(5, 11)?;
    let cert = mod_design_certificate(&d, 5)?;
    println!(
        "PG(2,11) type-1 design mod 5: {:?}, residues {}",
        cert.verdict, cert.details["residues"]
    );

    let fano_split = ryser_decompose(&fano(), 1)?;
    println!(
        "fano: alternative {} r {}",
        fano_split.details["alternative"], fano_split.details["r"]
    );
    for n in 4..=6 {
        let c = ryser_decompose(&near_pencil(n)?, 1)?;
        println!(
            "near-pencil on {n}: alternative {} r {} r' {} kappa {}",
            c.details["alternative"], c.details["r"], c.details["rPrime"], c.details["kappaMultiset"]
        );
    }
    Ok(())
}
