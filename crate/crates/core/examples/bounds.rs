//! Closed-form bounds and the clause check for the modular distance bound.

use extremal::bounds::{check_thm3_hypotheses, delsarte_bound, msd_bound, two_distance_max};

fn main() -> extremal::Result<()> {
    for (n, q, s) in [(3, 2, 1), (4, 3, 2), (10, 2, 3)] {
        println!("delsarte(n={n}, q={q}, s={s}) = {}", delsarte_bound(n, q, s)?);
    }
    println!("spherical 2-distance bound in R^6 = {}", msd_bound(6, 2)?);
    println!("two-distance maximum in R^6 = {}", two_distance_max(6)?);
    for (n, q, p, lambda) in [(4, 2, 3, 2), (3, 2, 5, 2)] {
        let h = check_thm3_hypotheses(n, q, p, lambda)?;
        match h.first_failure() {
            None => println!("(n={n}, q={q}, p={p}, λ={lambda}): bound {:?}", h.bound),
            Some(clause) => println!("(n={n}, q={q}, p={p}, λ={lambda}): clause {clause} fails"),
        }
    }
    Ok(())
}
