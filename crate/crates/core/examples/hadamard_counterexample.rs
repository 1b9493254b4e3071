//! A Hadamard design plus the full set has n+1 members at constant distance.

use extremal::certifier::hamming_tight_certificate;
use extremal::constructions::hadamard_plus_full;
use extremal::families::distance_set;

fn main() -> extremal::Result<()> {
    for (v, p, lambda) in [(1, 5, 2), (2, 7, 4), (3, 11, 6)] {
        let h = hadamard_plus_full(v)?.characteristic_vectors()?;
        let profile = distance_set(&h)?;
        let cert = hamming_tight_certificate(&h, p, lambda)?;
        println!(
            "v={v}: {} vectors in length {}, distances {:?}, certificate {:?}",
            h.len(),
            h.n(),
            profile.distance_set,
            cert.verdict
        );
    }
    Ok(())
}
