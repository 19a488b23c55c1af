//! Homomorphism problems Π_G on edge-colored trees, exact chromatic
//! numbers, the Δ-(\*) property with verified witnesses, the maximal
//! target graph H_Δ, and the explicit homomorphism Θ into it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::problem::{EdgeMode, Label, LclProblem};
use crate::{Error, Result};

/// Cap for the exact chromatic-number branch and bound.
pub const CHROMATIC_CAP: usize = 40;
/// Cap for the Δ-(\*) witness search (subset enumeration).
pub const DELTA_STAR_CAP: usize = 20;
/// Cap on |V(G)|·|V(H)| for homomorphism search.
pub const HOM_CAP: usize = 10_000;

/// A simple undirected graph with named vertices and no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetGraph {
    pub names: Vec<String>,
    pub adj: Vec<BTreeSet<usize>>,
}

impl TargetGraph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::invalid("self-loops are not allowed"));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(TargetGraph { names, adj })
    }

    pub fn complete(k: usize) -> Self {
        let names = (0..k).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> =
            (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        TargetGraph::new(names, &edges).unwrap()
    }

    pub fn cycle(k: usize) -> Self {
        let names = (0..k).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        TargetGraph::new(names, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Blob<'a> {
            vertices: &'a [String],
            edges: Vec<[&'a str; 2]>,
        }
        let edges = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| {
                nbrs.iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| [self.names[u].as_str(), self.names[v].as_str()])
            })
            .collect();
        Ok(serde_json::to_string_pretty(&Blob {
            vertices: &self.names,
            edges,
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Blob {
            vertices: Vec<String>,
            edges: Vec<[String; 2]>,
        }
        let blob: Blob = serde_json::from_str(text)?;
        let index = |name: &str| -> Result<usize> {
            blob.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownLabel(name.to_string()))
        };
        let mut edges = Vec::new();
        for [a, b] in &blob.edges {
            edges.push((index(a)?, index(b)?));
        }
        TargetGraph::new(blob.vertices, &edges)
    }
}

/// The edge-colored LCL asking for a homomorphism from the tree to G:
/// vertices are monochromatic Δ-multisets, every color's edge set is
/// E(G).
pub fn make_homomorphism_problem(g: &TargetGraph, delta: usize) -> Result<LclProblem> {
    if g.n() == 0 {
        return Err(Error::invalid("target graph is empty"));
    }
    let configs = (0..g.n()).map(|a| vec![a as Label; delta]);
    let per_color: Vec<BTreeSet<[Label; 2]>> = (0..delta)
        .map(|_| {
            g.adj
                .iter()
                .enumerate()
                .flat_map(|(u, nbrs)| {
                    nbrs.iter()
                        .filter(move |&&v| v >= u)
                        .map(move |&v| [u as Label, v as Label])
                })
                .collect()
        })
        .collect();
    LclProblem::new(
        format!("hom_{}", g.n()),
        delta,
        g.names.clone(),
        configs,
        EdgeMode::EdgeColored(per_color),
    )
}

/// Exact k-colorability by backtracking over vertices in decreasing
/// degree order; symmetry broken by allowing color i only after colors
/// < i have appeared.
fn colorable(g: &TargetGraph, k: usize, coloring: &mut Vec<usize>) -> bool {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.adj[v].len()));
    let mut assign = vec![usize::MAX; n];
    fn rec(
        g: &TargetGraph,
        order: &[usize],
        pos: usize,
        k: usize,
        used: usize,
        assign: &mut Vec<usize>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let cap = k.min(used + 1);
        for c in 0..cap {
            if g.adj[v].iter().all(|&u| assign[u] != c) {
                assign[v] = c;
                if rec(g, order, pos + 1, k, used.max(c + 1), assign) {
                    return true;
                }
                assign[v] = usize::MAX;
            }
        }
        false
    }
    if rec(g, &order, 0, k, 0, &mut assign) {
        *coloring = assign;
        true
    } else {
        false
    }
}

/// Exact chromatic number (cap [`CHROMATIC_CAP`] vertices).
pub fn chromatic_number(g: &TargetGraph) -> Result<usize> {
    if g.n() > CHROMATIC_CAP {
        return Err(Error::cap(format!(
            "{} vertices exceeds the chromatic cap {CHROMATIC_CAP}",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let mut scratch = Vec::new();
    for k in 1..=g.n() {
        if colorable(g, k, &mut scratch) {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colorable")
}

/// Witness for the Δ-(\*) property: S0, S1 with no edge between them and
/// both complements (Δ−1)-colorable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaStarWitness {
    pub s0: Vec<usize>,
    pub s1: Vec<usize>,
    /// Proper (Δ−1)-coloring of V∖S0 (usize::MAX on S0).
    pub c0: Vec<usize>,
    /// Proper (Δ−1)-coloring of V∖S1 (usize::MAX on S1).
    pub c1: Vec<usize>,
}

/// Independent re-validation of a witness.
pub fn validate_delta_star(g: &TargetGraph, delta: usize, w: &DeltaStarWitness) -> bool {
    let n = g.n();
    let in0 = |v: usize| w.s0.contains(&v);
    let in1 = |v: usize| w.s1.contains(&v);
    for u in 0..n {
        for &v in &g.adj[u] {
            if (in0(u) && in1(v)) || (in1(u) && in0(v)) {
                return false;
            }
            if !in0(u) && !in0(v) && w.c0[u] == w.c0[v] {
                return false;
            }
            if !in1(u) && !in1(v) && w.c1[u] == w.c1[v] {
                return false;
            }
        }
    }
    (0..n).all(|v| {
        (in0(v) || w.c0[v] < delta - 1) && (in1(v) || w.c1[v] < delta - 1)
    })
}

fn subgraph_coloring(g: &TargetGraph, excluded: &[bool], k: usize) -> Option<Vec<usize>> {
    // color V ∖ excluded with ≤ k colors via the exact solver on the
    // induced subgraph
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !excluded[v]).collect();
    let index: Vec<usize> = {
        let mut idx = vec![usize::MAX; g.n()];
        for (i, &v) in keep.iter().enumerate() {
            idx[v] = i;
        }
        idx
    };
    let names = keep.iter().map(|&v| g.names[v].clone()).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &u in &keep {
        for &v in &g.adj[u] {
            if !excluded[v] && v > u {
                edges.push((index[u], index[v]));
            }
        }
    }
    let sub = TargetGraph::new(names, &edges).ok()?;
    let mut coloring = Vec::new();
    if sub.n() == 0 || colorable(&sub, k.max(1), &mut coloring) {
        let mut out = vec![usize::MAX; g.n()];
        for (i, &v) in keep.iter().enumerate() {
            out[v] = *coloring.get(i).unwrap_or(&0);
        }
        Some(out)
    } else {
        None
    }
}

/// Search for a Δ-(\*) witness. S0 ranges over all subsets in binary
/// order; S1 is taken maximal (all non-neighbors of S0), which is
/// lossless because shrinking S1 only shrinks the colored complement's
/// complement — i.e. growing S1 never hurts.
pub fn has_delta_star(g: &TargetGraph, delta: usize) -> Result<Option<DeltaStarWitness>> {
    if g.n() > DELTA_STAR_CAP {
        return Err(Error::cap(format!(
            "{} vertices exceeds the witness-search cap {DELTA_STAR_CAP}",
            g.n()
        )));
    }
    if delta < 2 {
        return Err(Error::invalid("delta must be >= 2"));
    }
    let n = g.n();
    for mask in 0u64..(1u64 << n) {
        let in0: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let Some(c0) = subgraph_coloring(g, &in0, delta - 1) else {
            continue;
        };
        // maximal S1: vertices with no neighbor in S0
        let in1: Vec<bool> = (0..n)
            .map(|v| g.adj[v].iter().all(|&u| !in0[u]))
            .collect();
        let Some(c1) = subgraph_coloring(g, &in1, delta - 1) else {
            continue;
        };
        let w = DeltaStarWitness {
            s0: (0..n).filter(|&v| in0[v]).collect(),
            s1: (0..n).filter(|&v| in1[v]).collect(),
            c0,
            c1,
        };
        debug_assert!(validate_delta_star(g, delta, &w));
        return Ok(Some(w));
    }
    Ok(None)
}

/// The maximal Δ-(\*) graph: P = K_{Δ−1} × K_{Δ−1} (categorical
/// product), two cliques V0, V1, and a vertex † adjacent to all of P.
/// V0's label i meets (i', j) for all i' ≠ i; V1's label j meets (i, j')
/// for all j' ≠ j.
pub fn build_h_delta(delta: usize) -> Result<TargetGraph> {
    if delta < 3 {
        return Err(Error::invalid("H_delta needs delta >= 3"));
    }
    let d = delta - 1;
    let mut names = Vec::new();
    // P vertices: index i*d + j
    for i in 0..d {
        for j in 0..d {
            names.push(format!("p{i}{j}"));
        }
    }
    let v0_base = d * d;
    for i in 0..d {
        names.push(format!("a{i}")); // V0
    }
    let v1_base = v0_base + d;
    for j in 0..d {
        names.push(format!("b{j}")); // V1
    }
    let dagger = v1_base + d;
    names.push("dagger".to_string());
    let p = |i: usize, j: usize| i * d + j;
    let mut edges = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for i2 in 0..d {
                for j2 in 0..d {
                    if i != i2 && j != j2 && p(i, j) < p(i2, j2) {
                        edges.push((p(i, j), p(i2, j2)));
                    }
                }
            }
            edges.push((dagger, p(i, j)));
        }
    }
    for i in 0..d {
        for i2 in i + 1..d {
            edges.push((v0_base + i, v0_base + i2));
            edges.push((v1_base + i, v1_base + i2));
        }
    }
    for i in 0..d {
        for i2 in 0..d {
            for j in 0..d {
                if i2 != i {
                    edges.push((v0_base + i, p(i2, j)));
                    edges.push((v1_base + i, p(j, i2)));
                }
            }
        }
    }
    TargetGraph::new(names, &edges)
}

/// Index of H_Δ's vertex (i,j) ∈ P; of V0's label i; of V1's label j;
/// of †.
pub fn h_delta_index(delta: usize, part: HPart) -> usize {
    let d = delta - 1;
    match part {
        HPart::P(i, j) => i * d + j,
        HPart::V0(i) => d * d + i,
        HPart::V1(j) => d * d + d + j,
        HPart::Dagger => d * d + 2 * d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HPart {
    P(usize, usize),
    V0(usize),
    V1(usize),
    Dagger,
}

/// The explicit homomorphism Θ: G → H_Δ from a Δ-(\*) witness:
/// S0∩S1 → †, S1∖S0 → V0 by c0, S0∖S1 → V1 by c1, the rest → P by
/// (c0, c1). Output re-validated as a homomorphism.
pub fn theta_map(g: &TargetGraph, w: &DeltaStarWitness, delta: usize) -> Result<Vec<usize>> {
    if !validate_delta_star(g, delta, w) {
        return Err(Error::invalid("witness does not validate"));
    }
    let in0 = |v: usize| w.s0.contains(&v);
    let in1 = |v: usize| w.s1.contains(&v);
    let map: Vec<usize> = (0..g.n())
        .map(|v| {
            let part = match (in0(v), in1(v)) {
                (true, true) => HPart::Dagger,
                (false, true) => HPart::V0(w.c0[v]),
                (true, false) => HPart::V1(w.c1[v]),
                (false, false) => HPart::P(w.c0[v], w.c1[v]),
            };
            h_delta_index(delta, part)
        })
        .collect();
    let h = build_h_delta(delta)?;
    for u in 0..g.n() {
        for &v in &g.adj[u] {
            if !h.has_edge(map[u], map[v]) {
                return Err(Error::invalid(format!(
                    "theta image breaks edge ({u},{v})"
                )));
            }
        }
    }
    Ok(map)
}

/// Backtracking homomorphism search with arc-consistency pruning;
/// vertices assigned in decreasing degree order. Returns a verified map.
pub fn has_homomorphism(g: &TargetGraph, h: &TargetGraph) -> Result<Option<Vec<usize>>> {
    if g.n() * h.n() > HOM_CAP {
        return Err(Error::cap(format!(
            "{}x{} exceeds the homomorphism cap {HOM_CAP}",
            g.n(),
            h.n()
        )));
    }
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.adj[v].len()));
    let full: u64 = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
    let h_nbr: Vec<u64> = (0..h.n())
        .map(|x| h.adj[x].iter().fold(0u64, |m, &y| m | 1 << y))
        .collect();

    fn propagate(g: &TargetGraph, h_nbr: &[u64], dom: &mut Vec<u64>) -> bool {
        loop {
            let mut changed = false;
            for u in 0..g.n() {
                for &v in &g.adj[u] {
                    // u's images must have a neighbor among v's domain
                    let mut allowed = 0u64;
                    let mut bits = dom[v];
                    while bits != 0 {
                        let y = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        allowed |= h_nbr[y];
                    }
                    let new = dom[u] & allowed;
                    if new != dom[u] {
                        dom[u] = new;
                        changed = true;
                        if new == 0 {
                            return false;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn rec(
        g: &TargetGraph,
        h_nbr: &[u64],
        order: &[usize],
        pos: usize,
        dom: &Vec<u64>,
        out: &mut Vec<usize>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let mut bits = dom[v];
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut next = dom.clone();
            next[v] = 1 << x;
            if propagate(g, h_nbr, &mut next) && rec(g, h_nbr, order, pos + 1, &next, out) {
                out[v] = x;
                return true;
            }
        }
        false
    }

    let mut dom = vec![full; n];
    if !propagate(g, &h_nbr, &mut dom) {
        return Ok(None);
    }
    let mut out = vec![usize::MAX; n];
    if rec(g, &h_nbr, &order, 0, &dom, &mut out) {
        for u in 0..n {
            for &v in &g.adj[u] {
                debug_assert!(h.has_edge(out[u], out[v]));
            }
        }
        Ok(Some(out))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> TargetGraph {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        TargetGraph::new(names, &edges).unwrap()
    }

    #[test]
    fn homomorphism_problem_shapes() {
        let p = make_homomorphism_problem(&TargetGraph::complete(3), 3).unwrap();
        assert_eq!(p.label_count(), 3);
        assert_eq!(p.vertex_configs.len(), 3);
        assert!(p.is_edge_colored());
        let c5 = make_homomorphism_problem(&TargetGraph::cycle(5), 3).unwrap();
        assert_eq!(c5.label_count(), 5);
        if let EdgeMode::EdgeColored(per_color) = &c5.edges {
            assert_eq!(per_color.len(), 3);
            for e in per_color {
                assert_eq!(e.len(), 5);
            }
        } else {
            panic!("expected edge-colored");
        }
        let h3 = make_homomorphism_problem(&build_h_delta(3).unwrap(), 3).unwrap();
        assert_eq!(h3.label_count(), 9);
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&TargetGraph::complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&TargetGraph::cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&build_h_delta(3).unwrap()).unwrap(), 4);
    }

    #[test]
    fn h_delta_structure() {
        let h = build_h_delta(3).unwrap();
        assert_eq!(h.n(), 9);
        let dagger = h_delta_index(3, HPart::Dagger);
        assert_eq!(h.adj[dagger].len(), 4);
        // dagger meets exactly P
        for i in 0..2 {
            for j in 0..2 {
                assert!(h.has_edge(dagger, h_delta_index(3, HPart::P(i, j))));
            }
        }
    }

    #[test]
    fn delta_star_examples() {
        let k3 = TargetGraph::complete(3);
        let w = has_delta_star(&k3, 3).unwrap().unwrap();
        assert!(validate_delta_star(&k3, 3, &w));

        let h3 = build_h_delta(3).unwrap();
        let w = has_delta_star(&h3, 3).unwrap().unwrap();
        assert!(validate_delta_star(&h3, 3, &w));
        // the canonical witness works too: S0 = V0 ∪ {†}, S1 = V1 ∪ {†}
        let v0: Vec<usize> = (0..2).map(|i| h_delta_index(3, HPart::V0(i))).collect();
        let v1: Vec<usize> = (0..2).map(|j| h_delta_index(3, HPart::V1(j))).collect();
        let dagger = h_delta_index(3, HPart::Dagger);
        let mut c0 = vec![usize::MAX; 9];
        let mut c1 = vec![usize::MAX; 9];
        for i in 0..2 {
            for j in 0..2 {
                // V∖S0 = P ∪ V1: V1(j) meets P(·,j') for j' ≠ j, so P
                // must be colored by its second coordinate; symmetric
                // for V∖S1
                c0[h_delta_index(3, HPart::P(i, j))] = j;
                c1[h_delta_index(3, HPart::P(i, j))] = i;
            }
        }
        c0[v1[0]] = 0;
        c0[v1[1]] = 1;
        c1[v0[0]] = 0;
        c1[v0[1]] = 1;
        let canonical = DeltaStarWitness {
            s0: {
                let mut s = v0.clone();
                s.push(dagger);
                s
            },
            s1: {
                let mut s = v1.clone();
                s.push(dagger);
                s
            },
            c0,
            c1,
        };
        assert!(validate_delta_star(&h3, 3, &canonical));
        let map = theta_map(&h3, &canonical, 3).unwrap();
        assert_eq!(map[dagger], dagger);

        assert!(has_delta_star(&TargetGraph::complete(5), 3)
            .unwrap()
            .is_none());
    }

    #[test]
    fn theta_on_k3() {
        let k3 = TargetGraph::complete(3);
        let w = has_delta_star(&k3, 3).unwrap().unwrap();
        let map = theta_map(&k3, &w, 3).unwrap();
        // members of S0∩S1 land on dagger
        let dagger = h_delta_index(3, HPart::Dagger);
        for &v in &w.s0 {
            if w.s1.contains(&v) {
                assert_eq!(map[v], dagger);
            }
        }
    }

    #[test]
    fn hom_to_clique_is_coloring() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(&mut rng, n, 0.5);
            let chi = chromatic_number(&g).unwrap();
            for k in 1..=n {
                let hom = has_homomorphism(&g, &TargetGraph::complete(k)).unwrap();
                assert_eq!(hom.is_some(), chi <= k, "n={n} k={k}");
            }
        }
        assert!(has_homomorphism(&TargetGraph::cycle(5), &TargetGraph::complete(2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn delta_star_implies_chromatic_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut hits = 0;
        for _ in 0..40 {
            let n = rng.gen_range(4..=10);
            let g = random_graph(&mut rng, n, 0.35);
            if let Some(w) = has_delta_star(&g, 3).unwrap() {
                assert!(validate_delta_star(&g, 3, &w));
                assert!(chromatic_number(&g).unwrap() <= 4); // 2Δ−2
                hits += 1;
            }
        }
        assert!(hits >= 5);
    }

    #[test]
    fn small_chromatic_implies_delta_star() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut hits = 0;
        for _ in 0..40 {
            let n = rng.gen_range(4..=9);
            let g = random_graph(&mut rng, n, 0.3);
            if chromatic_number(&g).unwrap() <= 3 {
                assert!(has_delta_star(&g, 3).unwrap().is_some());
                hits += 1;
            }
        }
        assert!(hits >= 5);
    }

    #[test]
    fn delta_star_iff_hom_to_h3() {
        let h3 = build_h_delta(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut some = 0;
        let mut none = 0;
        for trial in 0..40 {
            let n = rng.gen_range(5..=10);
            // mix sparse and dense so both outcomes occur
            let g = random_graph(&mut rng, n, if trial % 2 == 0 { 0.45 } else { 0.8 });
            let star = has_delta_star(&g, 3).unwrap();
            let hom = has_homomorphism(&g, &h3).unwrap();
            assert_eq!(star.is_some(), hom.is_some());
            if let Some(w) = star {
                // theta gives an independent homomorphism
                theta_map(&g, &w, 3).unwrap();
                some += 1;
            } else {
                none += 1;
            }
        }
        assert!(some >= 3 && none >= 3, "some={some} none={none}");
    }

    #[test]
    fn target_graph_json_roundtrip() {
        let g = build_h_delta(3).unwrap();
        let back = TargetGraph::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(g, back);
    }
}
