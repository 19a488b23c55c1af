//! The one-ended-forest construction: doubly-exponential settling on a
//! random 3-regular graph, and coding-radius quantiles.
//!
//!     cargo run --example one_ended_forest

use treelcl::forest::{coding_radius_profile, one_ended_forest, ForestInstance};
use treelcl::instance::gen_config_model;

fn main() -> treelcl::Result<()> {
    // A random 3-regular graph on 10^4 vertices.
    let graph = gen_config_model(10_000, 3, 12)?;
    let inst = ForestInstance::from_graph(&graph, 3)?;

    let state = one_ended_forest(&inst, 4, 99)?;
    println!("round   d      unsettled  hubs   settled");
    for r in &state.rounds {
        println!(
            "{:>5} {:>4} {:>11} {:>6}   {:.4}",
            r.round, r.d, r.unsettled, r.hubs, r.settled_fraction
        );
    }
    println!(
        "finalization handled {} residual vertices; {} tagged as line vertices",
        state.finalized_vertex.iter().filter(|&&b| b).count(),
        state.line_vertex.iter().filter(|&&b| b).count()
    );

    // Every settled vertex's oriented below-tree is determined by a
    // finite-radius view; the quantiles grow polylogarithmically in 1/ε.
    let eps = [0.1, 0.01, 0.001];
    let profile = coding_radius_profile(&state, &inst, &eps)?;
    for (e, q) in profile.eps.iter().zip(&profile.quantiles) {
        println!("coding radius at the (1 - {e}) quantile: {q}");
    }
    Ok(())
}
