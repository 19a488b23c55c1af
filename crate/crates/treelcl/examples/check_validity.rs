//! Define an LCL problem, build a small tree, and check labelings.
//!
//!     cargo run --example check_validity

use treelcl::instance::{gen_tree, TreeKind};
use treelcl::labeling::{validate_labeling, HalfEdgeLabeling};
use treelcl::problem::{perfect_matching, proper_coloring};

fn main() -> treelcl::Result<()> {
    // A 3-coloring problem on Δ = 3 trees: every vertex commits to one
    // color on all of its half-edges, adjacent vertices differ.
    let coloring = proper_coloring(3, 3)?;
    let path = gen_tree(TreeKind::Path { n: 4 }, 3, 0)?;

    let good = HalfEdgeLabeling::new(vec![
        vec![0, 0, 0],
        vec![1, 1, 1],
        vec![0, 0, 0],
        vec![2, 2, 2],
    ]);
    let report = validate_labeling(&coloring, &path.ports, &good)?;
    println!("alternating colors on a path: ok = {}", report.ok);

    let bad = HalfEdgeLabeling::new(vec![
        vec![0, 0, 0],
        vec![0, 0, 0],
        vec![1, 1, 1],
        vec![2, 2, 2],
    ]);
    let report = validate_labeling(&coloring, &path.ports, &bad)?;
    println!(
        "repeated color: ok = {}, violated edges = {:?}",
        report.ok, report.edge_violations
    );

    // Perfect matching: exactly one matched half-edge per vertex, and
    // both sides of an edge must agree. Virtual half-edges count toward
    // the vertex constraint, so leaves can "match into the void" — but a
    // real edge labeled M on one side only is rejected.
    let matching = perfect_matching(3)?;
    let m = matching.label_index("M")?;
    let u = matching.label_index("U")?;
    let labeling = HalfEdgeLabeling::new(vec![
        vec![m, u, u], // matched with vertex 1
        vec![m, u, u],
        vec![u, m, u], // matched with vertex 3 through its second port
        vec![m, u, u],
    ]);
    let report = validate_labeling(&matching, &path.ports, &labeling)?;
    println!("perfect matching on the 4-path: ok = {}", report.ok);
    Ok(())
}
