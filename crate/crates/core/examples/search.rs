//! Exhaustive maximum-family search and the bound sweep.

use extremal::families::VectorSystem;
use extremal::search::{search_max, sweep_bound_grid, Predicate, SearchOptions, SearchProblem, SweepConfig};

fn show(h: &VectorSystem) -> Vec<String> {
    h.vectors()
        .iter()
        .map(|v| v.iter().map(u8::to_string).collect())
        .collect()
}

fn main() -> extremal::Result<()> {
    let opts = SearchOptions::default();
    let problem = SearchProblem::new(4, 2, Predicate::DistanceCongruent { lambda: 2, p: 3 })?;
    let best = search_max(&problem, &opts)?;
    println!(
        "distances ≡ 2 mod 3 in {{0,1}}^4: {} {:?}",
        best.max_size,
        show(&best.witness)
    );

    let config = SweepConfig {
        n_max: 3,
        q_values: vec![2, 3],
        p_values: vec![3, 5],
        s_values: vec![1, 2],
    };
    let report = sweep_bound_grid(&config, &opts)?;
    for row in report.distance_count_rows {
        println!(
            "n={} q={} s={}: max {} bound {}",
            row.n, row.q, row.s, row.max_size, row.bound
        );
    }
    println!("violations: {}", report.violations);
    Ok(())
}
