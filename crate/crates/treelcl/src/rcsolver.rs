//! Rake-and-compress decomposition of trees and the O(log n)-layer
//! solver that labels layers in reverse using an ℓ-full certificate.
//!
//! A round alternately removes all vertices of current degree ≤ 1
//! (rake) and carves maximal degree-2 chains into segments of ℓ' to 2ℓ'
//! vertices (compress), leaving single separator vertices between
//! consecutive segments so every segment's two attachment neighbors
//! survive into later layers.

use serde::{Deserialize, Serialize};

use crate::ellfull::{EllFullCertificate, PathAutomaton, Verdict};
use crate::instance::RegularTree;
use crate::labeling::HalfEdgeLabeling;
use crate::problem::{Config, Label, LclProblem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LayerTag {
    Rake(usize),
    Compress(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompressPath {
    pub layer: usize,
    /// Chain order; both ends attach to surviving vertices.
    pub vertices: Vec<usize>,
    /// The surviving neighbors of the first and last chain vertex.
    pub anchors: (usize, usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    pub ell_prime: usize,
    /// Number of rake layers.
    pub levels: usize,
    pub tags: Vec<LayerTag>,
    /// rake_layers[i] = vertices raked in round i+1.
    pub rake_layers: Vec<Vec<usize>>,
    pub paths: Vec<CompressPath>,
}

impl Decomposition {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// DOT rendering with one rank per layer.
    pub fn to_dot(&self, tree: &RegularTree) -> String {
        let mut out = String::from("graph decomposition {\n");
        for (i, layer) in self.rake_layers.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_r{} {{ label=\"rake {}\";", i + 1, i + 1));
            for v in layer {
                out.push_str(&format!(" v{v};"));
            }
            out.push_str(" }\n");
        }
        for (pi, p) in self.paths.iter().enumerate() {
            out.push_str(&format!(
                "  subgraph cluster_c{}_{} {{ label=\"compress {}\";",
                p.layer, pi, p.layer
            ));
            for v in &p.vertices {
                out.push_str(&format!(" v{v};"));
            }
            out.push_str(" }\n");
        }
        for (u, _, v, _, _) in tree.edges() {
            out.push_str(&format!("  v{u} -- v{v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Compute the alternating rake/compress decomposition.
pub fn decompose(tree: &RegularTree, ell_prime: usize) -> Result<Decomposition> {
    if ell_prime < 1 {
        return Err(Error::invalid("ell_prime must be >= 1"));
    }
    let n = tree.n();
    let adj = tree.adjacency();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| adj[v].len()).collect();
    let mut removed = 0usize;
    let mut tags = vec![LayerTag::Rake(0); n];
    let mut rake_layers: Vec<Vec<usize>> = Vec::new();
    let mut paths: Vec<CompressPath> = Vec::new();
    let mut round = 0usize;
    while removed < n {
        round += 1;
        // rake
        let rake: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] <= 1).collect();
        for &v in &rake {
            alive[v] = false;
            tags[v] = LayerTag::Rake(round);
            removed += 1;
            for &u in &adj[v] {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        rake_layers.push(rake);
        if removed == n {
            break;
        }
        // compress: maximal chains of degree-2 vertices
        let mut in_chain = vec![false; n];
        for start in 0..n {
            if !alive[start] || deg[start] != 2 || in_chain[start] {
                continue;
            }
            // walk to one end of the chain
            let mut end = start;
            let mut prev = usize::MAX;
            loop {
                let next = adj[end]
                    .iter()
                    .copied()
                    .find(|&u| alive[u] && u != prev && deg[u] == 2);
                match next {
                    Some(u) if u != start => {
                        prev = end;
                        end = u;
                    }
                    _ => break,
                }
            }
            // collect the chain from `end`
            let mut chain = vec![end];
            in_chain[end] = true;
            let mut prev = usize::MAX;
            let mut cur = end;
            loop {
                let next = adj[cur]
                    .iter()
                    .copied()
                    .find(|&u| alive[u] && u != prev && deg[u] == 2 && !in_chain[u]);
                match next {
                    Some(u) => {
                        in_chain[u] = true;
                        chain.push(u);
                        prev = cur;
                        cur = u;
                    }
                    None => break,
                }
            }
            // deterministic orientation: smaller end id first
            if chain.last().unwrap() < chain.first().unwrap() {
                chain.reverse();
            }
            // greedy segments of length in [ell_prime, 2*ell_prime] with
            // single separators between consecutive segments
            let m = chain.len();
            let mut pos = 0usize;
            while m - pos >= ell_prime {
                let rem = m - pos;
                let take = if rem <= 2 * ell_prime {
                    rem
                } else if rem >= 3 * ell_prime + 1 {
                    2 * ell_prime
                } else {
                    // leave a separator plus a final segment of ell_prime
                    rem - 1 - ell_prime
                };
                let seg: Vec<usize> = chain[pos..pos + take].to_vec();
                let outer = |v: usize, inner: usize| -> usize {
                    adj[v]
                        .iter()
                        .copied()
                        .find(|&u| alive[u] && u != inner)
                        .expect("chain end has a surviving outer neighbor")
                };
                let first = seg[0];
                let last = *seg.last().unwrap();
                let a_left = outer(first, if seg.len() > 1 { seg[1] } else { usize::MAX });
                let a_right = if seg.len() > 1 {
                    outer(last, seg[seg.len() - 2])
                } else {
                    // single vertex: the two anchors are its two neighbors
                    adj[last]
                        .iter()
                        .copied()
                        .filter(|&u| alive[u] && u != a_left)
                        .next()
                        .expect("degree-2 vertex has a second neighbor")
                };
                paths.push(CompressPath {
                    layer: round,
                    vertices: seg,
                    anchors: (a_left, a_right),
                });
                pos += take;
                if rem > 2 * ell_prime {
                    pos += 1; // separator survives this layer
                }
            }
        }
        // remove the carved segments
        let seg_vertices: Vec<usize> = paths
            .iter()
            .filter(|p| p.layer == round)
            .flat_map(|p| p.vertices.iter().copied())
            .collect();
        for &v in &seg_vertices {
            alive[v] = false;
            tags[v] = LayerTag::Compress(round);
            removed += 1;
        }
        for &v in &seg_vertices {
            for &u in &adj[v] {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
    }
    let d = Decomposition {
        ell_prime,
        levels: round,
        tags,
        rake_layers,
        paths,
    };
    verify_decomposition(tree, &d)?;
    Ok(d)
}

/// Replay the decomposition and check its invariants: layers partition
/// V, rake vertices have degree ≤ 1 at removal time, compress segments
/// are degree-2 chains within the length window with surviving anchors.
pub fn verify_decomposition(tree: &RegularTree, d: &Decomposition) -> Result<()> {
    let n = tree.n();
    let adj = tree.adjacency();
    let mut alive = vec![true; n];
    let mut seen = vec![false; n];
    let fail = |msg: String| Err(Error::invalid(format!("decomposition invalid: {msg}")));
    for round in 1..=d.levels {
        let deg = |v: usize, alive: &[bool]| adj[v].iter().filter(|&&u| alive[u]).count();
        let rake = d.rake_layers.get(round - 1).cloned().unwrap_or_default();
        for &v in &rake {
            if !alive[v] || seen[v] {
                return fail(format!("vertex {v} raked twice"));
            }
            if deg(v, &alive) > 1 {
                return fail(format!("vertex {v} raked with degree > 1"));
            }
            if d.tags[v] != LayerTag::Rake(round) {
                return fail(format!("tag mismatch at {v}"));
            }
            seen[v] = true;
        }
        for &v in &rake {
            alive[v] = false;
        }
        let round_paths: Vec<&CompressPath> =
            d.paths.iter().filter(|p| p.layer == round).collect();
        for p in &round_paths {
            let s = p.vertices.len();
            if s < d.ell_prime || s > 2 * d.ell_prime {
                return fail(format!("segment length {s} outside window"));
            }
            for (i, &v) in p.vertices.iter().enumerate() {
                if !alive[v] || seen[v] {
                    return fail(format!("vertex {v} compressed twice"));
                }
                if deg(v, &alive) != 2 {
                    return fail(format!("compress vertex {v} has degree != 2"));
                }
                if i + 1 < s && !adj[v].contains(&p.vertices[i + 1]) {
                    return fail("segment is not a chain".into());
                }
                if d.tags[v] != LayerTag::Compress(round) {
                    return fail(format!("tag mismatch at {v}"));
                }
                seen[v] = true;
            }
        }
        for p in &round_paths {
            for &v in &p.vertices {
                alive[v] = false;
            }
        }
        for p in &round_paths {
            let (a, b) = p.anchors;
            if !alive[a] || !alive[b] {
                return fail("anchor does not survive its layer".into());
            }
            if !adj[p.vertices[0]].contains(&a) || !adj[*p.vertices.last().unwrap()].contains(&b) {
                return fail("anchor not adjacent to segment end".into());
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return fail("layers do not partition the vertex set".into());
    }
    Ok(())
}

fn edge_ok(problem: &LclProblem, a: Label, b: Label) -> bool {
    problem
        .uncolored_edges()
        .map(|e| e.contains(&crate::problem::canonical_edge(a, b)))
        .unwrap_or(false)
}

/// Labels a vertex: `toward` maps port → forced label (from an already
/// labeled neighbor's port facing us, or a chosen chain label); the
/// remaining members of `config` fill the other ports in sorted order.
fn place_config(
    labels: &mut [Vec<Option<Label>>],
    v: usize,
    delta: usize,
    config: &Config,
    forced: &[(usize, Label)],
) {
    let mut rest = config.clone();
    for &(_, l) in forced {
        let p = rest.iter().position(|&x| x == l).expect("forced label in config");
        rest.remove(p);
    }
    let mut ri = 0;
    for port in 0..delta {
        if let Some(&(_, l)) = forced.iter().find(|&&(p, _)| p == port) {
            labels[v][port] = Some(l);
        } else {
            labels[v][port] = Some(rest[ri]);
            ri += 1;
        }
    }
}

/// Solve the problem on a tree from a Full ℓ-full certificate: decompose
/// with ℓ' = max(1, ℓ−2) and label layers in reverse removal order.
pub fn solve_from_ell_full(
    problem: &LclProblem,
    cert: &EllFullCertificate,
    tree: &RegularTree,
) -> Result<HalfEdgeLabeling> {
    if cert.verdict != Verdict::Full {
        return Err(Error::invalid("certificate is not Full"));
    }
    let subset = &cert.subset;
    let ell_prime = 1.max(cert.ell.saturating_sub(2));
    let d = decompose(tree, ell_prime)?;
    let n = tree.n();
    let delta = tree.delta;
    let aut = PathAutomaton::new(problem, subset)?;
    let mut labels: Vec<Vec<Option<Label>>> = vec![vec![None; delta]; n];

    let port_toward = |v: usize, u: usize| -> usize {
        tree.neighbors(v)
            .find(|&(_, w, _, _)| w == u)
            .map(|(p, _, _, _)| p)
            .expect("neighbor port")
    };

    // a rake vertex adapts to its at most one labeled neighbor
    let label_rake = |labels: &mut Vec<Vec<Option<Label>>>, v: usize| {
        let labeled_nbrs: Vec<(usize, usize, Label)> = tree
            .neighbors(v)
            .filter_map(|(p, u, bp, _)| labels[u][bp].map(|l| (p, u, l)))
            .collect();
        assert!(
            labeled_nbrs.len() <= 1,
            "rake vertex {v} has {} labeled neighbors",
            labeled_nbrs.len()
        );
        match labeled_nbrs.first() {
            None => {
                let c = subset.first().expect("nonempty subset");
                place_config(labels, v, delta, c, &[]);
            }
            Some(&(p, _, a)) => {
                let choice = subset.iter().find_map(|c| {
                    let mut ds = c.clone();
                    ds.dedup();
                    ds.into_iter()
                        .find(|&a2| edge_ok(problem, a, a2))
                        .map(|a2| (c.clone(), a2))
                });
                let (c, a2) = choice.expect("ℓ-full certificate broken: no rake extension");
                place_config(labels, v, delta, &c, &[(p, a2)]);
            }
        }
    };

    // fill a compress chain between two labeled anchors with the automaton
    let label_chain = |labels: &mut Vec<Vec<Option<Label>>>, p: &CompressPath| {
        let (ua, ub) = p.anchors;
        let s = p.vertices.len();
        let a_left = labels[ua][port_toward(ua, p.vertices[0])]
            .expect("left anchor labeled before chain");
        let a_right = labels[ub][port_toward(ub, p.vertices[s - 1])]
            .expect("right anchor labeled before chain");
        // forward reachable state sets
        let ns = aut.states.len();
        let mut fwd: Vec<u128> = Vec::with_capacity(s);
        let mut cur = 0u128;
        for (i, (_, a)) in aut.states.iter().enumerate() {
            if edge_ok(problem, a_left, *a) {
                cur |= 1 << i;
            }
        }
        fwd.push(cur);
        for _ in 1..s {
            let mut next = 0u128;
            let mut bits = cur;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= aut.trans[i];
            }
            fwd.push(next);
            cur = next;
        }
        // pick the final state that can close on a_right, then walk back
        let closes = |i: usize| -> bool {
            let (c, a) = &aut.states[i];
            distinct(c).any(|b| usable(c, *a, b) && edge_ok(problem, b, a_right))
        };
        let last = (0..ns)
            .find(|&i| fwd[s - 1] >> i & 1 == 1 && closes(i))
            .expect("ℓ-full certificate broken: chain not fillable");
        let mut chosen = vec![last; s];
        for j in (0..s - 1).rev() {
            let nxt = chosen[j + 1];
            chosen[j] = (0..ns)
                .find(|&i| fwd[j] >> i & 1 == 1 && aut.trans[i] >> nxt & 1 == 1)
                .expect("forward set inconsistent");
        }
        // realize labels: incoming faces the previous vertex
        for j in 0..s {
            let (c, a_in) = aut.states[chosen[j]].clone();
            let v = p.vertices[j];
            let prev = if j == 0 { ua } else { p.vertices[j - 1] };
            let next = if j == s - 1 { ub } else { p.vertices[j + 1] };
            let a_next = if j == s - 1 {
                a_right
            } else {
                aut.states[chosen[j + 1]].1
            };
            let b_out = distinct(&c)
                .find(|&b| usable(&c, a_in, b) && edge_ok(problem, b, a_next) && {
                    // out and in must fit simultaneously in the multiset
                    b != a_in || count(&c, b) >= 2
                })
                .expect("transition witness");
            place_config(
                labels,
                v,
                delta,
                &c,
                &[(port_toward(v, prev), a_in), (port_toward(v, next), b_out)],
            );
        }
    };

    // reverse removal order: R_L, C_{L-1}, R_{L-1}, ..., C_1, R_1
    for round in (1..=d.levels).rev() {
        for &v in d.rake_layers.get(round - 1).map(|r| r.as_slice()).unwrap_or(&[]) {
            label_rake(&mut labels, v);
        }
        if round >= 2 {
            for p in d.paths.iter().filter(|p| p.layer == round - 1) {
                label_chain(&mut labels, p);
            }
        }
    }
    let out: Vec<Vec<Label>> = labels
        .into_iter()
        .map(|row| row.into_iter().map(|l| l.expect("all ports labeled")).collect())
        .collect();
    Ok(HalfEdgeLabeling::new(out))
}

fn distinct(c: &Config) -> impl Iterator<Item = Label> + '_ {
    let mut seen: Vec<Label> = Vec::new();
    c.iter().copied().filter(move |&b| {
        if seen.contains(&b) {
            false
        } else {
            seen.push(b);
            true
        }
    })
}

fn count(c: &Config, l: Label) -> usize {
    c.iter().filter(|&&x| x == l).count()
}

fn usable(c: &Config, used: Label, b: Label) -> bool {
    b != used || count(c, used) >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellfull::find_ell_full;
    use crate::instance::{gen_tree, TreeKind};
    use crate::labeling::validate_labeling;
    use crate::problem::{canonical_config, edge_grabbing, perfect_matching, proper_coloring};

    #[test]
    fn star_decomposition() {
        let t = RegularTree::from_edges(3, 4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = decompose(&t, 1).unwrap();
        assert_eq!(d.levels, 2);
        assert_eq!(d.rake_layers[0], vec![1, 2, 3]);
        assert_eq!(d.rake_layers[1], vec![0]);
        assert!(d.paths.is_empty());
    }

    #[test]
    fn path12_compress_window() {
        let t = gen_tree(TreeKind::Path { n: 12 }, 3, 0).unwrap();
        let d = decompose(&t, 2).unwrap();
        // endpoints raked in round 1
        let ends: Vec<usize> = (0..12).filter(|&v| t.real_degree(v) == 1).collect();
        for e in ends {
            assert_eq!(d.tags[e], LayerTag::Rake(1));
        }
        assert!(!d.paths.is_empty());
        for p in &d.paths {
            assert!(p.vertices.len() >= 2 && p.vertices.len() <= 4);
        }
    }

    #[test]
    fn layer_count_logarithmic() {
        let mut worst = 0.0f64;
        for &n in &[1000usize, 10_000, 100_000] {
            for seed in 0..(if n == 100_000 { 20 } else { 5 }) {
                let t = gen_tree(TreeKind::Random { n }, 3, seed).unwrap();
                let d = decompose(&t, 2).unwrap();
                let ratio = d.levels as f64 / (n as f64).log2();
                worst = worst.max(ratio);
            }
        }
        assert!(worst <= 6.0, "L/log2(n) fitted constant {worst}");
    }

    #[test]
    fn solver_three_coloring_complete_tree() {
        let p = proper_coloring(3, 3).unwrap();
        let cert = find_ell_full(&p, 8).unwrap().unwrap();
        assert_eq!(cert.ell, 3);
        let t = gen_tree(TreeKind::Complete { depth: 6 }, 3, 0).unwrap();
        let l = solve_from_ell_full(&p, &cert, &t).unwrap();
        assert!(validate_labeling(&p, &t.ports, &l).unwrap().ok);
    }

    #[test]
    fn solver_perfect_matching_random_trees() {
        let p = perfect_matching(3).unwrap();
        let cert = find_ell_full(&p, 8).unwrap().unwrap();
        assert_eq!(cert.ell, 4);
        let subset_set: Vec<Config> = cert.subset.clone();
        for seed in 0..20 {
            let t = gen_tree(TreeKind::Random { n: 10_000 }, 3, seed).unwrap();
            let l = solve_from_ell_full(&p, &cert, &t).unwrap();
            assert!(validate_labeling(&p, &t.ports, &l).unwrap().ok, "seed {seed}");
            // solver never leaves the certificate subset
            for row in &l.labels {
                assert!(subset_set.contains(&canonical_config(row)));
            }
        }
    }

    #[test]
    fn solver_single_vertex() {
        let p = proper_coloring(3, 3).unwrap();
        let cert = find_ell_full(&p, 8).unwrap().unwrap();
        let t = RegularTree::from_edges(3, 1, &[]).unwrap();
        let l = solve_from_ell_full(&p, &cert, &t).unwrap();
        assert!(cert.subset.contains(&canonical_config(&l.labels[0])));
    }

    #[test]
    fn end_to_end_builtins() {
        let builtins = [
            proper_coloring(3, 3).unwrap(),
            perfect_matching(3).unwrap(),
            edge_grabbing(3).unwrap(),
        ];
        for p in &builtins {
            let Some(cert) = find_ell_full(p, 10).unwrap() else {
                panic!("{} should have a certificate", p.name);
            };
            for seed in 0..3 {
                let t = gen_tree(TreeKind::Random { n: 500 }, 3, seed).unwrap();
                let l = solve_from_ell_full(p, &cert, &t).unwrap();
                let rep = validate_labeling(p, &t.ports, &l).unwrap();
                assert!(rep.ok, "{} seed {seed}: {rep:?}", p.name);
            }
        }
    }

    #[test]
    fn decomposition_json_roundtrip() {
        let t = gen_tree(TreeKind::Random { n: 50 }, 3, 1).unwrap();
        let d = decompose(&t, 2).unwrap();
        let back = Decomposition::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(d.tags, back.tags);
        verify_decomposition(&t, &back).unwrap();
        assert!(d.to_dot(&t).contains("v0"));
    }
}
