//! Simulate local and uniform algorithms: Linial's coloring, a
//! Luby-style MIS, failure-rate estimation, and the sequential
//! composition bound for coding radii.
//!
//!     cargo run --example simulate_local

use treelcl::instance::{gen_tree, TreeKind};
use treelcl::sim::{
    compose_tail_bound, estimate_failure, linial_coloring, luby_mis, mis_ok, run_local,
    run_uniform, Ids,
};

fn main() -> treelcl::Result<()> {
    let tree = gen_tree(TreeKind::Random { n: 500 }, 3, 42)?;

    // Linial's color reduction: an O(log* n)-radius deterministic
    // algorithm producing an O(Δ²)-coloring from unique identifiers.
    let alg = linial_coloring(3);
    let (labeling, stats) = run_local(
        &alg,
        None,
        &tree.ports,
        &Ids::Seeded {
            seed: 7,
            exponent: 3,
        },
        None,
    )?;
    let palette: std::collections::BTreeSet<u8> =
        labeling.labels.iter().map(|row| row[0]).collect();
    println!(
        "linial on n = {}: radius {}, {} colors used",
        stats.n,
        stats.radius,
        palette.len()
    );
    let proper = tree.edges().iter().all(|&(u, pu, v, pv, _)| {
        labeling.get(u, pu) != labeling.get(v, pv)
    });
    println!("coloring proper: {proper}");

    // A uniform MIS: each vertex reads random bits until its membership
    // is decided; the radius needed varies per vertex.
    let mis = luby_mis(3);
    let (mis_labeling, mis_stats) = run_uniform(&mis, None, &tree.ports, 3, 40)?;
    let radii = mis_stats.coding_radii.as_ref().unwrap();
    println!(
        "luby mis: max coding radius {}, independent+maximal = {}",
        radii.iter().max().unwrap(),
        mis_ok(&tree.ports, &mis_labeling)
    );

    // Failure-rate estimation with Clopper-Pearson intervals: how often
    // does the MIS fail to terminate within a small radius cap?
    let est = estimate_failure(60, |trial| {
        let (_, s) = run_uniform(&mis, None, &tree.ports, 1000 + trial as u64, 6)?;
        Ok(!s.non_terminated.is_empty())
    })?;
    println!(
        "P(some vertex needs radius > 6) ≈ {:.3} (95% CI [{:.3}, {:.3}])",
        est.rate, est.lo, est.hi
    );

    // Sequential composition: running algorithm B on the output of A
    // needs radius t_A(ε') + t_B(ε/2) with ε' shrunk by the ball volume.
    let t1 = |eps: f64| (1.0 / eps).ln();
    let t2 = |eps: f64| (1.0 / eps).ln().sqrt();
    for eps in [0.1, 0.01] {
        println!(
            "composed tail bound at eps = {eps}: {:.2}",
            compose_tail_bound(&t1, &t2, 3, eps)
        );
    }
    Ok(())
}
