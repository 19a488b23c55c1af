//! Two applications of the one-ended forest: a perfect matching in the
//! distance-2 power graph and a proper 4-edge-coloring for Δ = 3.
//!
//!     cargo run --example matching_and_edge_coloring

use treelcl::forest::{
    encode_pm2, one_ended_forest, pm2_from_forest, vizing3_edge_color, ForestInstance, Partner,
};
use treelcl::instance::{gen_tree, TreeKind};
use treelcl::labeling::validate_labeling;
use treelcl::problem::{add_paths, pm_power2};

fn main() -> treelcl::Result<()> {
    let tree = gen_tree(TreeKind::Random { n: 10_000 }, 3, 31)?;
    let inst = ForestInstance::from_tree(&tree)?;
    let state = one_ended_forest(&inst, 6, 17)?;

    // Matching: pair vertices by induction over the orientation's
    // below-trees; partners sit at distance <= 2.
    let matching = pm2_from_forest(&state, &inst)?;
    let direct = matching
        .partner
        .iter()
        .filter(|p| matches!(p, Partner::Matched(_, treelcl::forest::Pairing::Direct)))
        .count();
    let relayed = matching
        .partner
        .iter()
        .filter(|p| matches!(p, Partner::Matched(_, treelcl::forest::Pairing::Relay(_))))
        .count();
    println!(
        "matching on n = {}: {direct} direct, {relayed} relayed, {} residual",
        inst.n,
        matching.residue_count()
    );

    // The matching encodes as a half-edge labeling of the power-2
    // matching LCL (line-extended); violations only at residual vertices.
    let labeling = encode_pm2(&matching, &inst)?;
    let problem = add_paths(&pm_power2()?)?;
    let report = validate_labeling(&problem, &inst.ports(), &labeling)?;
    println!(
        "encoded labeling: {} vertex violations (residue bound {})",
        report.vertex_violations.len(),
        matching.residue_count()
    );

    // Edge coloring: edges grabbed by the orientation form a forest, the
    // rest form paths/cycles; both parts fit in 4 colors.
    let coloring = vizing3_edge_color(&state, &inst)?;
    let mut used = [0usize; 5];
    for &c in &coloring.colors {
        used[c as usize] += 1;
    }
    println!(
        "edge coloring proper: {}; color histogram {:?}",
        coloring.is_proper(&inst),
        &used[1..]
    );
    Ok(())
}
