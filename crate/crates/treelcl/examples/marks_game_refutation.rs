//! Refute local algorithms with marks games over an ID graph: build the
//! gadget, solve games, and assemble replayed counterexamples.
//!
//!     cargo run --example marks_game_refutation

use std::collections::HashMap;

use treelcl::homlcl::{make_homomorphism_problem, TargetGraph};
use treelcl::marksgame::{
    build_cycle_id_graph, refute_algorithm, solve_game_with_labels, GameSpec, Player, Refutation,
};
use treelcl::sim::LookupTable;

fn main() -> treelcl::Result<()> {
    // An ID graph: identifiers as vertices, Δ edge colors, high girth,
    // small independent sets. Any assignment of these identifiers to a
    // tree meets many monochromatic ID-graph edges, which is what the
    // pigeonhole step of the refutation pipeline exploits.
    let h = build_cycle_id_graph(15, 3, 1)?;
    println!(
        "ID graph: n = {}, girth = {}, per-color independence numbers = {:?}",
        h.n, h.girth, h.mis
    );

    // A radius-1 algorithm as a lookup table: here the constant that
    // always answers color 0 on every port.
    let constant = LookupTable {
        radius: 1,
        table: HashMap::new(),
        default: Some(vec![0, 0, 0]),
    }
    .into_algorithm("constant-0");

    // One marks game, solved exactly: Alice claims the algorithm avoids
    // the target set S at the root, Bob claims it hits S.
    let spec = GameSpec {
        algorithm: &constant,
        id_graph: &h,
        alpha: 0,
        sigma: 0,
        s: 0b001, // S = {0}
        t: 1,
    };
    let outcome = solve_game_with_labels(&spec, 3)?;
    println!(
        "game (alpha 0, sigma 0, S = {{0}}): winner = {:?}, strategy covers {} positions",
        outcome.winner,
        outcome.strategy.len()
    );
    assert!(matches!(outcome.winner, Player::Bob));

    // Full pipeline against 3-coloring: solve all games, check the
    // playability clauses on the winning-set profiles, and glue winning
    // strategies into a concrete instance where the algorithm fails.
    // Every refutation is replayed before being returned.
    let coloring = make_homomorphism_problem(&TargetGraph::complete(3), 3)?;
    match refute_algorithm(&constant, &coloring, &h, 1)? {
        Refutation::EdgeFail {
            edge,
            color,
            outputs,
            ..
        } => println!(
            "constant-0 refuted: edge {edge:?} (color {color}) gets outputs {outputs:?}"
        ),
        Refutation::VertexFail { root, outputs, .. } => {
            println!("constant-0 refuted: vertex {root} sees config {outputs:?}")
        }
        Refutation::Inconclusive { reason } => println!("inconclusive: {reason}"),
    }

    // A non-constant algorithm: color by identifier rank mod 3 among the
    // ball. Still radius-1, still refutable in principle; the pipeline
    // either finds a violation or reports exactly why it could not.
    let id_rank = treelcl::sim::LocalAlgorithm {
        name: "id-mod-3".into(),
        radius: Box::new(|_| 1),
        eval: Box::new(|ball| {
            let c = (ball.center().id % 3) as u8;
            vec![c; ball.delta]
        }),
    };
    match refute_algorithm(&id_rank, &coloring, &h, 1)? {
        Refutation::EdgeFail { outputs, color, .. } => {
            println!("id-mod-3 refuted on a color-{color} edge with outputs {outputs:?}")
        }
        Refutation::VertexFail { outputs, .. } => {
            println!("id-mod-3 refuted at a vertex with outputs {outputs:?}")
        }
        Refutation::Inconclusive { reason } => println!("id-mod-3: inconclusive ({reason})"),
    }
    Ok(())
}
