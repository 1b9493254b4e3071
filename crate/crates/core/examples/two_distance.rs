//! Two-distance sets: the size identity and the Neumaier ratio.

use extremal::certifier::{neumaier_from_gram, two_distance_certificate};
use extremal::constructions::{johnson_pairs, pentagon, schlafli27};

fn main() -> extremal::Result<()> {
    let pent = two_distance_certificate(&pentagon())?;
    let size = pent.identity_named("sizeIdentity").expect("recorded");
    println!("pentagon: {:?}, {} = {}", pent.verdict, size.left_side, size.right_side);

    let lines = two_distance_certificate(&schlafli27())?;
    let size = lines.identity_named("sizeIdentity").expect("recorded");
    println!(
        "27 lines: {:?}, {} = {}",
        lines.verdict, size.left_side, size.right_side
    );

    let johnson = neumaier_from_gram(&johnson_pairs(6)?)?;
    println!("johnson(6): {:?}, m = {}", johnson.verdict, johnson.details["m"]);
    println!("pentagon ratio check: {:?}", neumaier_from_gram(&pentagon())?.verdict);
    Ok(())
}
