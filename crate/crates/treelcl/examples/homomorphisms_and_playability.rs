//! Homomorphism problems as LCLs, the playability decision, and the
//! special target graph H_3.
//!
//!     cargo run --example homomorphisms_and_playability

use treelcl::homlcl::{
    build_h_delta, chromatic_number, has_delta_star, has_homomorphism, make_homomorphism_problem,
    theta_map, TargetGraph,
};
use treelcl::playability::{decide_playability, PlayabilityVerdict};

fn main() -> treelcl::Result<()> {
    // Hom(·, G) as an LCL: labels are vertices of G, every vertex is
    // monochromatic, and each edge must map to an edge of G.
    for k in [3, 4] {
        let g = TargetGraph::complete(k);
        let problem = make_homomorphism_problem(&g, 3)?;
        let res = decide_playability(&problem)?;
        let verdict = match res.verdict {
            PlayabilityVerdict::Playable(_) => "playable",
            PlayabilityVerdict::NotPlayable(_) => "not playable",
        };
        println!("hom(·, K_{k}) on Δ = 3 trees: {verdict}");
    }

    // H_3: the 9-vertex target graph characterizing which Δ-coloring-like
    // problems stay hard. Its own homomorphism problem is not playable,
    // and its chromatic number is Δ + 1 = 4.
    let h3 = build_h_delta(3)?;
    println!(
        "H_3: {} vertices, {} edges, chromatic number {}",
        h3.n(),
        h3.edge_count(),
        chromatic_number(&h3)?
    );
    let problem = decide_playability(&make_homomorphism_problem(&h3, 3)?)?;
    println!(
        "hom(·, H_3): {}",
        match problem.verdict {
            PlayabilityVerdict::Playable(_) => "playable",
            PlayabilityVerdict::NotPlayable(_) => "not playable",
        }
    );

    // The Δ-(*) condition: a pair of vertex sets witnessing hardness.
    // A graph satisfies it iff it maps homomorphically into H_Δ, and the
    // witness induces the map θ explicitly.
    let c5 = TargetGraph::cycle(5);
    match has_delta_star(&c5, 3)? {
        Some(w) => {
            let theta = theta_map(&c5, &w, 3)?;
            println!("C_5 satisfies the 3-(*) condition; θ = {theta:?}");
            println!(
                "direct homomorphism search agrees: {}",
                has_homomorphism(&c5, &h3)?.is_some()
            );
        }
        None => println!("C_5 does not satisfy the 3-(*) condition"),
    }
    match has_delta_star(&TargetGraph::complete(4), 3)? {
        Some(_) => println!("K_4 satisfies the 3-(*) condition"),
        None => println!(
            "K_4 does not satisfy the 3-(*) condition (its problem is playable)"
        ),
    }
    Ok(())
}
