//! Decide the ℓ-full-set condition exactly and use the certificate to
//! solve a problem on a large tree in O(log n) rake/compress layers.
//!
//!     cargo run --example ell_full_and_solve

use treelcl::ellfull::find_ell_full;
use treelcl::instance::{gen_tree, TreeKind};
use treelcl::labeling::validate_labeling;
use treelcl::problem::{perfect_matching, proper_coloring};
use treelcl::rcsolver::{decompose, solve_from_ell_full, verify_decomposition};

fn main() -> treelcl::Result<()> {
    // A problem is O(log n)-solvable on trees iff some subset of its
    // vertex configurations is ℓ-full: every pair of configurations can
    // anchor both ends of every length-ℓ' path, ℓ' >= ell.
    let coloring = proper_coloring(3, 3)?;
    match find_ell_full(&coloring, 8)? {
        Some(cert) => println!(
            "3-coloring: full subset of {} configs at ell = {}",
            cert.subset.len(),
            cert.ell
        ),
        None => println!("3-coloring: no full subset found"),
    }

    // 2-coloring admits no full subset at any ell: odd and even path
    // lengths alternate between the two parity classes forever.
    let two = proper_coloring(3, 2)?;
    println!("2-coloring full subset: {:?}", find_ell_full(&two, 16)?.is_none());

    // Perfect matching is also not solvable this way.
    let pm = perfect_matching(3)?;
    println!("perfect matching full subset: {:?}", find_ell_full(&pm, 12)?.is_none());

    // Solve on a 50k-vertex tree: rake-and-compress decomposes the tree
    // into O(log n) layers; labels fill in reverse layer order, path
    // interiors via the certificate's pumping structure.
    let n = 50_000;
    let tree = gen_tree(TreeKind::Random { n }, 3, 11)?;
    let cert = find_ell_full(&coloring, 8)?.expect("3-coloring is full");
    let d = decompose(&tree, 1.max(cert.ell.saturating_sub(2)))?;
    verify_decomposition(&tree, &d)?;
    println!(
        "decomposition: {} layers on n = {} ({}·log2 n = {:.0})",
        d.levels,
        n,
        6,
        6.0 * (n as f64).log2()
    );
    let labeling = solve_from_ell_full(&coloring, &cert, &tree)?;
    let report = validate_labeling(&coloring, &tree.ports, &labeling)?;
    println!("solved labeling valid: {}", report.ok);
    Ok(())
}
