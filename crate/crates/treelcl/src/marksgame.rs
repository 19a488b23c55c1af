//! ID graphs and finite two-player labeling games, with the refutation
//! pipeline that turns a fast local algorithm into a concrete instance
//! on which it fails.
//!
//! An ID graph is a Δ-edge-colored multigraph H whose vertices serve as
//! identifiers. In the game 𝔾[α, σ, S], a depth-t Δ-regular ball rooted
//! at a σ-labeled vertex is labeled layer by layer: Alice labels the
//! layer inside the α-subtree, then Bob labels the rest, every move an
//! edge-color-preserving homomorphism into H. Alice wins when the
//! algorithm's output on the root's α-port avoids S. Gluing winning
//! strategies produces instances that defeat the algorithm.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::instance::{gen_config_model, girth, MultiGraph, Port};
use crate::playability::{config_graphs, tuple_has_config, Mask};
use crate::problem::{Label, LclProblem};
use crate::sim::{run_local, BallPort, BallVertex, BallView, Ids, LocalAlgorithm};
use crate::{Error, Result};

/// Default cap on explored game positions.
pub const NODE_CAP: usize = 10_000_000;
/// Vertex cap for exact maximum-independent-set certification.
pub const MIS_CAP: usize = 120;
/// Resampling cap for randomized ID-graph construction.
pub const RETRY_CAP: usize = 50;
/// Label-alphabet cap: winner sets range over all 2^Σ subsets packed
/// into a 64-bit mask.
pub const GAME_SIGMA_CAP: usize = 6;

// ---------------------------------------------------------------------
// ID graphs
// ---------------------------------------------------------------------

/// A certified identifier graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdGraph {
    pub n: usize,
    pub delta: usize,
    /// Intended ball depth: the girth certificate covers 2t+2.
    pub t: usize,
    /// Certified bound on every color's independence ratio.
    pub r: f64,
    /// Edges (u, v, color).
    pub edges: Vec<(usize, usize, u8)>,
    /// Measured girth (`usize::MAX` when acyclic).
    pub girth: usize,
    /// Exact maximum independent set size of each color's subgraph.
    pub mis: Vec<usize>,
}

impl IdGraph {
    pub fn to_multigraph(&self) -> MultiGraph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let colors: Vec<u8> = self.edges.iter().map(|&(_, _, c)| c).collect();
        MultiGraph::new(self.n, edges)
            .and_then(|g| g.with_colors(colors))
            .expect("stored edges are in range")
    }

    /// `out[color][v]` = sorted neighbors of v through color edges.
    pub fn neighbors_by_color(&self) -> Vec<Vec<Vec<u32>>> {
        let mut nbr = vec![vec![Vec::new(); self.n]; self.delta];
        for &(u, v, c) in &self.edges {
            nbr[c as usize][u].push(v as u32);
            nbr[c as usize][v].push(u as u32);
        }
        for per_color in &mut nbr {
            for l in per_color.iter_mut() {
                l.sort_unstable();
            }
        }
        nbr
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Exact maximum independent set by branch and bound (branch on a
/// maximum-degree vertex: either exclude it or take it and drop its
/// closed neighborhood).
pub fn max_independent_set(n: usize, edges: &[(usize, usize)]) -> Result<usize> {
    if n > MIS_CAP {
        return Err(Error::cap(format!(
            "exact independent set needs |V| ≤ {MIS_CAP}, got {n}"
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    fn go(alive: &mut Vec<bool>, adj: &[Vec<usize>], cur: usize, best: &mut usize) {
        let remaining = alive.iter().filter(|&&a| a).count();
        if cur + remaining <= *best {
            return;
        }
        let pick = (0..alive.len())
            .filter(|&v| alive[v])
            .max_by_key(|&v| adj[v].iter().filter(|&&w| alive[w]).count());
        let Some(v) = pick else {
            *best = (*best).max(cur);
            return;
        };
        let live_deg = adj[v].iter().filter(|&&w| alive[w]).count();
        if live_deg == 0 {
            // isolated vertices are always taken
            alive[v] = false;
            go(alive, adj, cur + 1, best);
            alive[v] = true;
            return;
        }
        // take v
        let dropped: Vec<usize> = std::iter::once(v)
            .chain(adj[v].iter().copied().filter(|&w| alive[w]))
            .collect();
        for &w in &dropped {
            alive[w] = false;
        }
        go(alive, adj, cur + 1, best);
        for &w in &dropped {
            alive[w] = true;
        }
        // exclude v
        alive[v] = false;
        go(alive, adj, cur, best);
        alive[v] = true;
    }
    let mut best = 0;
    go(&mut vec![true; n], &adj, 0, &mut best);
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Condition {
    Girth,
    Coverage,
    MisRatio,
}

fn check_conditions(
    n: usize,
    delta: usize,
    edges: &[(usize, usize, u8)],
    t: usize,
    r: f64,
) -> std::result::Result<(usize, Vec<usize>), (Condition, String)> {
    let mg = MultiGraph::new(n, edges.iter().map(|&(u, v, _)| (u, v)).collect())
        .expect("edges in range");
    let g = girth(&mg).unwrap_or(usize::MAX);
    if g < 2 * t + 2 {
        return Err((Condition::Girth, format!("girth {g} < {}", 2 * t + 2)));
    }
    let mut seen = vec![vec![false; delta]; n];
    for &(u, v, c) in edges {
        seen[u][c as usize] = true;
        seen[v][c as usize] = true;
    }
    if let Some(v) = (0..n).find(|&v| seen[v].iter().any(|&s| !s)) {
        return Err((
            Condition::Coverage,
            format!("vertex {v} misses a color"),
        ));
    }
    let mut mis = Vec::with_capacity(delta);
    for c in 0..delta {
        let ce: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(_, _, ec)| ec as usize == c)
            .map(|&(u, v, _)| (u, v))
            .collect();
        let m = match max_independent_set(n, &ce) {
            Ok(m) => m,
            Err(e) => return Err((Condition::MisRatio, e.to_string())),
        };
        if m as f64 > r * n as f64 {
            return Err((
                Condition::MisRatio,
                format!("color {c}: independence ratio {}/{n} > {r}", m),
            ));
        }
        mis.push(m);
    }
    Ok((g, mis))
}

/// Certify an externally supplied colored multigraph as an ID graph.
pub fn certify_id_graph(
    n: usize,
    delta: usize,
    edges: Vec<(usize, usize, u8)>,
    t: usize,
    r: f64,
) -> Result<IdGraph> {
    match check_conditions(n, delta, &edges, t, r) {
        Ok((girth, mis)) => Ok(IdGraph {
            n,
            delta,
            t,
            r,
            edges,
            girth,
            mis,
        }),
        Err((_, msg)) => Err(Error::invalid(msg)),
    }
}

/// The degree of the random construction: smallest d ≥ 3 whose expected
/// independence ratio bound 3·ln(d)/d beats r, capped at 8.
pub fn config_model_degree(r: f64) -> usize {
    (3..8)
        .find(|&d| 3.0 * (d as f64).ln() / (d as f64) < r)
        .unwrap_or(8)
}

/// Randomized ID-graph construction: Δ independent d-regular
/// configuration-model samples on one vertex set, the α-th sample
/// colored α, validated exactly and resampled on failure.
pub fn build_id_graph(n: usize, t: usize, r: f64, delta: usize, seed: u64) -> Result<IdGraph> {
    if n % 2 != 0 {
        return Err(Error::invalid("ID-graph construction needs even n"));
    }
    if r <= 0.0 {
        return Err(Error::invalid("r must be positive"));
    }
    let d = config_model_degree(r);
    let mut failures: HashMap<Condition, usize> = HashMap::new();
    for attempt in 0..RETRY_CAP as u64 {
        let mut edges = Vec::new();
        for color in 0..delta {
            let sub = seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(attempt * delta as u64 + color as u64);
            let sample = gen_config_model(n, d, sub)?;
            for &(u, v) in &sample.edges {
                edges.push((u, v, color as u8));
            }
        }
        match check_conditions(n, delta, &edges, t, r) {
            Ok((girth, mis)) => {
                return Ok(IdGraph {
                    n,
                    delta,
                    t,
                    r,
                    edges,
                    girth,
                    mis,
                })
            }
            Err((cond, _)) => *failures.entry(cond).or_insert(0) += 1,
        }
    }
    let worst = failures
        .iter()
        .max_by_key(|(_, &c)| c)
        .map(|(c, n)| format!("{c:?} failed {n} times"))
        .unwrap_or_default();
    Err(Error::RetryExhausted(format!(
        "no valid ID graph in {RETRY_CAP} attempts (most frequent: {worst})"
    )))
}

/// K4 with its proper 3-edge-coloring: the smallest ID graph
/// (parameters t=0, r=1/2 — each color class is a perfect matching).
pub fn k4_id_graph() -> IdGraph {
    let edges = vec![
        (0, 1, 0),
        (2, 3, 0),
        (0, 2, 1),
        (1, 3, 1),
        (0, 3, 2),
        (1, 2, 2),
    ];
    certify_id_graph(4, 3, edges, 0, 0.5).expect("K4 certifies")
}

/// Deterministic-ratio construction for depth-1 games: each color class
/// is a partition of the vertices into 5-cycles (exact independence
/// ratio 2/5), resampled until the union is simple and triangle-free
/// (girth ≥ 4 = 2t+2 for t = 1). n must be a multiple of 5.
pub fn build_cycle_id_graph(n: usize, delta: usize, seed: u64) -> Result<IdGraph> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    if n % 5 != 0 || n < 10 {
        return Err(Error::invalid("cycle construction needs n ≥ 10 divisible by 5"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // Random placement almost never avoids triangles, so grow each
    // 5-cycle greedily: a new edge must be absent from the union so far
    // and its endpoints must share no neighbor.
    'attempt: for _ in 0..2000 {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let ok_edge = |adj: &[Vec<usize>], u: usize, v: usize| {
            u != v
                && !adj[u].contains(&v)
                && !adj[u].iter().any(|w| adj[v].contains(w))
        };
        let mut edges: Vec<(usize, usize, u8)> = Vec::new();
        for color in 0..delta {
            let mut unused: Vec<usize> = (0..n).collect();
            unused.shuffle(&mut rng);
            while let Some(start) = unused.pop() {
                let mut cyc = vec![start];
                for step in 1..5 {
                    let last = *cyc.last().unwrap();
                    let pick = (0..unused.len()).find(|&i| {
                        let cand = unused[i];
                        ok_edge(&adj, last, cand)
                            && (step < 4
                                || (ok_edge(&adj, cand, start)
                                    && !adj[start].contains(&last)))
                    });
                    match pick {
                        Some(i) => {
                            let cand = unused.swap_remove(i);
                            adj[last].push(cand);
                            adj[cand].push(last);
                            edges.push((last, cand, color as u8));
                            cyc.push(cand);
                        }
                        None => continue 'attempt,
                    }
                }
                let (u, v) = (cyc[4], start);
                debug_assert!(ok_edge(&adj, u, v));
                adj[u].push(v);
                adj[v].push(u);
                edges.push((u, v, color as u8));
            }
        }
        return certify_id_graph(n, delta, edges, 1, 0.4);
    }
    Err(Error::RetryExhausted(
        "no simple triangle-free 5-cycle union found".into(),
    ))
}

// ---------------------------------------------------------------------
// The layer-labeling game
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    Alice,
    Bob,
}

/// One game: algorithm, ID graph, edge color, root identifier, target
/// output set (bitmask over Σ), depth.
pub struct GameSpec<'a> {
    pub algorithm: &'a LocalAlgorithm,
    pub id_graph: &'a IdGraph,
    pub alpha: usize,
    pub sigma: usize,
    pub s: Mask,
    pub t: usize,
}

/// Winner plus a full winning strategy: positions (ball labelings with
/// `u32::MAX` on unlabeled vertices) mapped to the mover's layer labels.
pub struct GameOutcome {
    pub winner: Player,
    pub strategy: HashMap<Vec<u32>, Vec<u32>>,
}

/// The depth-t Δ-regular ball: vertex 0 is the root, children ordered
/// by edge color, every non-root vertex stores its parent edge color.
struct Ball {
    t: usize,
    delta: usize,
    parent: Vec<usize>,
    parent_color: Vec<u8>,
    depth: Vec<usize>,
    children: Vec<Vec<(usize, u8)>>,
    /// Color of the subtree each vertex hangs under (root: u8::MAX).
    side: Vec<u8>,
    /// Edge colors along the root-to-vertex path.
    path: Vec<Vec<u8>>,
}

fn make_ball(delta: usize, t: usize) -> Ball {
    let mut b = Ball {
        t,
        delta,
        parent: vec![usize::MAX],
        parent_color: vec![u8::MAX],
        depth: vec![0],
        children: vec![Vec::new()],
        side: vec![u8::MAX],
        path: vec![Vec::new()],
    };
    let mut head = 0;
    while head < b.parent.len() {
        let v = head;
        head += 1;
        if b.depth[v] == t {
            continue;
        }
        for c in 0..delta as u8 {
            if v != 0 && c == b.parent_color[v] {
                continue;
            }
            let w = b.parent.len();
            b.parent.push(v);
            b.parent_color.push(c);
            b.depth.push(b.depth[v] + 1);
            b.children.push(Vec::new());
            b.side.push(if v == 0 { c } else { b.side[v] });
            let mut p = b.path[v].clone();
            p.push(c);
            b.path.push(p);
            b.children[v].push((w, c));
        }
    }
    b
}

impl Ball {
    /// Move schedule of the game with Alice on color `alpha`: step 2k−2
    /// is Alice labeling depth-k vertices of the α-subtree, step 2k−1 is
    /// Bob labeling the rest of depth k.
    fn steps(&self, alpha: usize) -> Vec<Vec<usize>> {
        let mut steps = Vec::with_capacity(2 * self.t);
        for k in 1..=self.t {
            for alice in [true, false] {
                let verts: Vec<usize> = (0..self.parent.len())
                    .filter(|&v| {
                        self.depth[v] == k && (self.side[v] == alpha as u8) == alice
                    })
                    .collect();
                // simultaneity within a move is sound: same-depth
                // vertices are never adjacent in a tree ball
                debug_assert!(verts
                    .iter()
                    .all(|&v| !verts.contains(&self.parent[v])));
                steps.push(verts);
            }
        }
        steps
    }
}

struct Engine<'a> {
    alg: &'a LocalAlgorithm,
    h: &'a IdGraph,
    nbr: Vec<Vec<Vec<u32>>>,
    ball: Ball,
    steps: Vec<Vec<usize>>,
    alpha: usize,
    nlabels: usize,
    nodes: usize,
    node_cap: usize,
}

impl<'a> Engine<'a> {
    fn new(alg: &'a LocalAlgorithm, h: &'a IdGraph, alpha: usize, t: usize, nlabels: usize) -> Result<Self> {
        if t < 1 {
            return Err(Error::invalid("games need depth t ≥ 1"));
        }
        if nlabels > GAME_SIGMA_CAP {
            return Err(Error::cap(format!(
                "winner-set masks need |Σ| ≤ {GAME_SIGMA_CAP}"
            )));
        }
        if (alg.radius)(h.n) != t {
            return Err(Error::invalid(format!(
                "algorithm `{}` has radius {} ≠ t = {t}",
                alg.name,
                (alg.radius)(h.n)
            )));
        }
        let ball = make_ball(h.delta, t);
        let steps = ball.steps(alpha);
        Ok(Engine {
            alg,
            h,
            nbr: h.neighbors_by_color(),
            ball,
            steps,
            alpha,
            nlabels,
            nodes: 0,
            node_cap: NODE_CAP,
        })
    }

    fn full_view(&self, labels: &[u32]) -> BallView {
        let b = &self.ball;
        let t = b.t;
        let vertices: Vec<BallVertex> = (0..b.parent.len())
            .map(|v| {
                let ports: Vec<BallPort> = (0..b.delta as u8)
                    .map(|c| {
                        if v != 0 && c == b.parent_color[v] {
                            BallPort::Internal {
                                index: b.parent[v],
                                color: Some(c),
                            }
                        } else if let Some(&(w, _)) =
                            b.children[v].iter().find(|&&(_, cc)| cc == c)
                        {
                            BallPort::Internal {
                                index: w,
                                color: Some(c),
                            }
                        } else {
                            BallPort::Cut { color: Some(c) }
                        }
                    })
                    .collect();
                BallVertex {
                    id: labels[v] as u64,
                    dist: b.depth[v],
                    global: v,
                    ports,
                }
            })
            .collect();
        BallView {
            delta: b.delta,
            radius: t,
            n: self.h.n,
            rand: vec![Vec::new(); vertices.len()],
            vertices,
        }
    }

    /// Algorithm output at the fully labeled root, all ports.
    fn terminal_all(&self, labels: &[u32]) -> Result<Vec<Label>> {
        let view = self.full_view(labels);
        let out = (self.alg.eval)(&view);
        if out.len() != self.ball.delta {
            return Err(Error::ArityMismatch(format!(
                "algorithm `{}` returned {} labels",
                self.alg.name,
                out.len()
            )));
        }
        Ok(out)
    }

    /// Bitmask (one bit per subset S of Σ) of the S for which Alice wins
    /// from this position; exact minimax in one traversal.
    fn alice_mask(&mut self, step: usize, labels: &mut Vec<u32>) -> Result<u64> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::cap(format!(
                "game exceeded {} positions",
                self.node_cap
            )));
        }
        let n_sets = 1u32 << self.nlabels;
        if step == self.steps.len() {
            let out = self.terminal_all(labels)?[self.alpha];
            let mut m = 0u64;
            for s in 0..n_sets as u64 {
                if s >> out & 1 == 0 {
                    m |= 1 << s;
                }
            }
            return Ok(m);
        }
        let alice = step % 2 == 0;
        let full: u64 = if n_sets == 64 {
            u64::MAX
        } else {
            (1u64 << n_sets) - 1
        };
        let mut acc = if alice { 0u64 } else { full };
        let verts = self.steps[step].clone();
        let cands: Vec<&Vec<u32>> = verts
            .iter()
            .map(|&v| {
                &self.nbr[self.ball.parent_color[v] as usize][labels[self.ball.parent[v]] as usize]
            })
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            return Err(Error::invalid(
                "stuck position: ID graph misses a color at a reachable vertex",
            ));
        }
        let cands: Vec<Vec<u32>> = cands.into_iter().cloned().collect();
        let mut odo = vec![0usize; verts.len()];
        loop {
            for (i, &v) in verts.iter().enumerate() {
                labels[v] = cands[i][odo[i]];
            }
            let sub = self.alice_mask(step + 1, labels)?;
            if alice {
                acc |= sub;
                if acc == full {
                    break;
                }
            } else {
                acc &= sub;
                if acc == 0 {
                    break;
                }
            }
            let mut i = 0;
            loop {
                odo[i] += 1;
                if odo[i] < cands[i].len() {
                    break;
                }
                odo[i] = 0;
                i += 1;
                if i == verts.len() {
                    for &v in &verts {
                        labels[v] = u32::MAX;
                    }
                    return Ok(acc);
                }
            }
        }
        for &v in &verts {
            labels[v] = u32::MAX;
        }
        Ok(acc)
    }

    fn root_position(&self, sigma: usize) -> Vec<u32> {
        let mut labels = vec![u32::MAX; self.ball.parent.len()];
        labels[0] = sigma as u32;
        labels
    }

    /// All legal moves at a step: each move lists labels for the step's
    /// vertices in ball order.
    fn moves(&self, step: usize, labels: &[u32]) -> Vec<Vec<u32>> {
        let verts = &self.steps[step];
        let cands: Vec<&Vec<u32>> = verts
            .iter()
            .map(|&v| {
                &self.nbr[self.ball.parent_color[v] as usize][labels[self.ball.parent[v]] as usize]
            })
            .collect();
        let mut out = Vec::new();
        let mut odo = vec![0usize; verts.len()];
        loop {
            out.push(odo.iter().enumerate().map(|(i, &j)| cands[i][j]).collect());
            let mut i = 0;
            loop {
                odo[i] += 1;
                if odo[i] < cands[i].len() {
                    break;
                }
                odo[i] = 0;
                i += 1;
                if i == verts.len() {
                    return out;
                }
            }
        }
    }

    fn apply(&self, labels: &mut [u32], step: usize, mv: &[u32]) {
        for (i, &v) in self.steps[step].iter().enumerate() {
            labels[v] = mv[i];
        }
    }

    fn unapply(&self, labels: &mut [u32], step: usize) {
        for &v in &self.steps[step] {
            labels[v] = u32::MAX;
        }
    }

    /// Record the winner's choices on every position reachable while the
    /// winner follows them (opponent unconstrained).
    fn collect_strategy(
        &mut self,
        step: usize,
        labels: &mut Vec<u32>,
        s: Mask,
        winner: Player,
        map: &mut HashMap<Vec<u32>, Vec<u32>>,
    ) -> Result<()> {
        if step == self.steps.len() {
            return Ok(());
        }
        let mover = if step % 2 == 0 { Player::Alice } else { Player::Bob };
        let moves = self.moves(step, labels);
        if mover == winner {
            for mv in &moves {
                self.apply(labels, step, mv);
                let a = self.alice_mask(step + 1, labels)?;
                let wins = match winner {
                    Player::Alice => a >> s & 1 == 1,
                    Player::Bob => a >> s & 1 == 0,
                };
                if wins {
                    map.insert(
                        {
                            let mut key = labels.clone();
                            for &v in &self.steps[step] {
                                key[v] = u32::MAX;
                            }
                            key
                        },
                        mv.clone(),
                    );
                    self.collect_strategy(step + 1, labels, s, winner, map)?;
                    self.unapply(labels, step);
                    return Ok(());
                }
                self.unapply(labels, step);
            }
            return Err(Error::invalid("declared winner has no winning move"));
        }
        for mv in &moves {
            self.apply(labels, step, mv);
            self.collect_strategy(step + 1, labels, s, winner, map)?;
            self.unapply(labels, step);
        }
        Ok(())
    }
}

/// Exact minimax solution of one game, tracking the largest supported
/// subset lattice. Callers that know the output alphabet should prefer
/// `solve_game_with_labels`.
pub fn solve_game(spec: &GameSpec) -> Result<GameOutcome> {
    solve_game_with_labels(spec, GAME_SIGMA_CAP)
}

/// Exact minimax with the output alphabet size given explicitly.
pub fn solve_game_with_labels(spec: &GameSpec, nlabels: usize) -> Result<GameOutcome> {
    let mut eng = Engine::new(spec.algorithm, spec.id_graph, spec.alpha, spec.t, nlabels)?;
    let mut labels = eng.root_position(spec.sigma);
    let a = eng.alice_mask(0, &mut labels)?;
    let winner = if a >> spec.s & 1 == 1 {
        Player::Alice
    } else {
        Player::Bob
    };
    let mut map = HashMap::new();
    eng.collect_strategy(0, &mut labels, spec.s, winner, &mut map)?;
    Ok(GameOutcome {
        winner,
        strategy: map,
    })
}

/// Replay a solved game `trials` times against uniformly random
/// opposing play; returns false if the declared winner ever loses.
pub fn audit_strategy(
    spec: &GameSpec,
    outcome: &GameOutcome,
    nlabels: usize,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    use rand::Rng;
    use rand::SeedableRng;
    let eng = Engine::new(spec.algorithm, spec.id_graph, spec.alpha, spec.t, nlabels)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut labels = eng.root_position(spec.sigma);
        for step in 0..eng.steps.len() {
            let mover = if step % 2 == 0 { Player::Alice } else { Player::Bob };
            let mv = if mover == outcome.winner {
                outcome
                    .strategy
                    .get(&labels)
                    .ok_or_else(|| Error::invalid("strategy has no move for a reachable position"))?
                    .clone()
            } else {
                let moves = eng.moves(step, &labels);
                moves[rng.gen_range(0..moves.len())].clone()
            };
            eng.apply(&mut labels, step, &mv);
        }
        let out = eng.terminal_all(&labels)?[spec.alpha];
        let alice_won = spec.s >> out & 1 == 0;
        let declared_alice = outcome.winner == Player::Alice;
        if alice_won != declared_alice {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------
// Λ profiles and refutation
// ---------------------------------------------------------------------

/// `profiles[σ][α]` = bitmask over subsets S of Σ with bit S set when
/// Alice wins 𝔾[α, σ, S]. Asserts payoff monotonicity (Alice's winning
/// family is downward closed) and that Σ itself is always Bob's.
pub fn compute_lambda_profiles(
    alg: &LocalAlgorithm,
    h: &IdGraph,
    t: usize,
    nlabels: usize,
) -> Result<Vec<Vec<u64>>> {
    let n_sets = 1u32 << nlabels;
    let mut profiles = Vec::with_capacity(h.n);
    for sigma in 0..h.n {
        let mut per_color = Vec::with_capacity(h.delta);
        for alpha in 0..h.delta {
            let mut eng = Engine::new(alg, h, alpha, t, nlabels)?;
            let mut labels = eng.root_position(sigma);
            let a = eng.alice_mask(0, &mut labels)?;
            // forcing the output outside a superset is harder
            for s in 0..n_sets as u64 {
                for b in 0..nlabels {
                    let sup = s | 1 << b;
                    if a >> sup & 1 == 1 {
                        assert!(a >> s & 1 == 1, "winner monotonicity violated");
                    }
                }
            }
            assert!(
                a >> (n_sets as u64 - 1) & 1 == 0,
                "Alice cannot avoid the full alphabet"
            );
            per_color.push(a);
        }
        profiles.push(per_color);
    }
    Ok(profiles)
}

/// A finite labeled instance: explicitly colored tree edges plus one
/// identifier per vertex (reloadable as a port table).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssembledInstance {
    pub delta: usize,
    pub edges: Vec<(usize, usize, u8)>,
    pub ids: Vec<u64>,
}

impl AssembledInstance {
    pub fn ports(&self) -> Result<Vec<Vec<Port>>> {
        let n = self.ids.len();
        let mut ports = vec![vec![Port::Virtual; self.delta]; n];
        for &(u, v, c) in &self.edges {
            let c = c as usize;
            if c >= self.delta || u >= n || v >= n {
                return Err(Error::invalid("instance edge out of range"));
            }
            ports[u][c] = Port::Real {
                neighbor: v,
                back_port: c,
                color: Some(c as u8),
            };
            ports[v][c] = Port::Real {
                neighbor: u,
                back_port: c,
                color: Some(c as u8),
            };
        }
        Ok(ports)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Refutation {
    /// The algorithm's root outputs form an illegal vertex config.
    VertexFail {
        instance: AssembledInstance,
        root: usize,
        outputs: Vec<Label>,
        /// The Alice-winning sets whose tuple admits no config.
        sets: Vec<Mask>,
        sigma: usize,
    },
    /// The outputs across one edge form an illegal pair for its color.
    EdgeFail {
        instance: AssembledInstance,
        edge: (usize, usize),
        color: u8,
        outputs: (Label, Label),
        sets: (Mask, Mask),
        sigmas: (usize, usize),
    },
    Inconclusive { reason: String },
}

impl Refutation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// ⊆-maximal members of a downward-closed subset family given as a
/// bitmask over 2^Σ.
fn maximal_sets(nlabels: usize, family: u64) -> Vec<Mask> {
    let n_sets = 1u32 << nlabels;
    (0..n_sets as u64)
        .filter(|&s| {
            family >> s & 1 == 1
                && (0..nlabels).all(|b| s >> b & 1 == 1 || family >> (s | 1 << b) & 1 == 0)
        })
        .map(|s| s as Mask)
        .collect()
}

/// Depth-(t+1) tree extending a game ball: the extra ring gives depth-t
/// vertices their real degree so a radius-t view cuts exactly where the
/// game's did; ring identifiers are fresh (≥ |V(H)|).
fn ball_instance(h: &IdGraph, ball: &Ball, labels: &[u32]) -> AssembledInstance {
    let mut edges = Vec::new();
    let mut ids: Vec<u64> = labels.iter().map(|&l| l as u64).collect();
    for v in 1..ball.parent.len() {
        edges.push((ball.parent[v], v, ball.parent_color[v]));
    }
    let mut fresh = h.n as u64;
    for v in 0..ball.parent.len() {
        if ball.depth[v] < ball.t {
            continue;
        }
        for c in 0..ball.delta as u8 {
            if v != 0 && c == ball.parent_color[v] {
                continue;
            }
            let w = ids.len();
            ids.push(fresh);
            fresh += 1;
            edges.push((v, w, c));
        }
    }
    AssembledInstance {
        delta: ball.delta,
        edges,
        ids,
    }
}

/// Run the algorithm on an assembled instance and return the labeling
/// plus validity against the problem; identifier injectivity is checked
/// by the runner.
fn replay(
    alg: &LocalAlgorithm,
    problem: &LclProblem,
    instance: &AssembledInstance,
    t: usize,
) -> Result<(crate::labeling::HalfEdgeLabeling, crate::labeling::ValidityReport)> {
    let ports = instance.ports()?;
    if (alg.radius)(ports.len()) != t {
        return Err(Error::invalid("algorithm radius varies with n; replay needs radius t"));
    }
    let (labeling, stats) = run_local(
        alg,
        Some(problem),
        &ports,
        &Ids::Explicit(instance.ids.clone()),
        None,
    )?;
    Ok((labeling, stats.validity.expect("problem supplied")))
}

/// The end-to-end pipeline: compute Λ profiles for every identifier;
/// on a clause-(A) violation glue Δ Alice strategies into a vertex
/// failure; otherwise pigeonhole profiles over a class of relative size
/// > r and, on a clause-(B) violation, glue two Bob strategies across
/// an α-edge of the class. Every returned refutation has passed an
/// actual replay of the algorithm on the assembled instance.
pub fn refute_algorithm(
    alg: &LocalAlgorithm,
    problem: &LclProblem,
    h: &IdGraph,
    t: usize,
) -> Result<Refutation> {
    if problem.delta != h.delta {
        return Err(Error::invalid("problem and ID graph disagree on Δ"));
    }
    let nlabels = problem.label_count();
    let cg = config_graphs(problem)?;
    let profiles = compute_lambda_profiles(alg, h, t, nlabels)?;

    // (i) clause (A) per identifier, on maximal Alice sets only
    for sigma in 0..h.n {
        let maxi: Vec<Vec<Mask>> = (0..h.delta)
            .map(|a| maximal_sets(nlabels, profiles[sigma][a]))
            .collect();
        if maxi.iter().any(|m| m.is_empty()) {
            continue;
        }
        let mut cursor = vec![0usize; h.delta];
        let bad_tuple: Option<Vec<Mask>> = 'tuples: loop {
            let tuple: Vec<Mask> = (0..h.delta).map(|c| maxi[c][cursor[c]]).collect();
            if !tuple_has_config(problem, &tuple) {
                break Some(tuple);
            }
            for c in 0..h.delta {
                cursor[c] += 1;
                if cursor[c] < maxi[c].len() {
                    continue 'tuples;
                }
                cursor[c] = 0;
            }
            break None;
        };
        if let Some(sets) = bad_tuple {
            return glue_vertex_fail(alg, problem, h, t, nlabels, sigma, &sets);
        }
    }

    // (ii) pigeonhole over realized profiles
    let mut classes: HashMap<&Vec<u64>, Vec<usize>> = HashMap::new();
    for (sigma, p) in profiles.iter().enumerate() {
        classes.entry(p).or_default().push(sigma);
    }
    let mut by_size: Vec<(&Vec<u64>, Vec<usize>)> = classes.into_iter().collect();
    by_size.sort_by_key(|(_, v)| (std::cmp::Reverse(v.len()), v[0]));
    let (profile, class) = &by_size[0];
    if class.len() as f64 <= h.r * h.n as f64 {
        return Ok(Refutation::Inconclusive {
            reason: format!(
                "largest profile class has {} of {} identifiers, not above r = {}",
                class.len(),
                h.n,
                h.r
            ),
        });
    }
    let n_sets = 1u32 << nlabels;
    for alpha in 0..h.delta {
        let a = profile[alpha];
        for s in 0..n_sets as u64 {
            for tt in s..n_sets as u64 {
                let bob_s = a >> s & 1 == 0;
                let bob_t = a >> tt & 1 == 0;
                if bob_s && bob_t && !cg.adjacent(alpha, s as Mask, tt as Mask) {
                    // an α-edge inside the class exists because the class
                    // is larger than the color's independence number
                    let in_class = |v: usize| class.contains(&v);
                    let edge = h
                        .edges
                        .iter()
                        .find(|&&(u, v, c)| c as usize == alpha && in_class(u) && in_class(v) && u != v);
                    let Some(&(s0, s1, _)) = edge else {
                        return Ok(Refutation::Inconclusive {
                            reason: "profile class is independent despite MIS certificate".into(),
                        });
                    };
                    return glue_edge_fail(
                        alg, problem, h, t, nlabels, alpha, (s0, s1), (s as Mask, tt as Mask),
                    );
                }
            }
        }
    }
    Ok(Refutation::Inconclusive {
        reason: "dominant profile satisfies both playability clauses".into(),
    })
}

/// Glue Δ Alice winning strategies around one root: strategy α dictates
/// the α-subtree layers, the other strategies supply its opponent's
/// moves. Output on each port α then avoids S_α, so the root config is
/// illegal.
fn glue_vertex_fail(
    alg: &LocalAlgorithm,
    problem: &LclProblem,
    h: &IdGraph,
    t: usize,
    nlabels: usize,
    sigma: usize,
    sets: &[Mask],
) -> Result<Refutation> {
    let mut outcomes = Vec::with_capacity(h.delta);
    for alpha in 0..h.delta {
        let spec = GameSpec {
            algorithm: alg,
            id_graph: h,
            alpha,
            sigma,
            s: sets[alpha],
            t,
        };
        let oc = solve_game_with_labels(&spec, nlabels)?;
        if oc.winner != Player::Alice {
            return Err(Error::invalid("Alice set chosen from a non-Alice game"));
        }
        outcomes.push(oc);
    }
    let ball = make_ball(h.delta, t);
    let mut labels = vec![u32::MAX; ball.parent.len()];
    labels[0] = sigma as u32;
    for k in 1..=t {
        // all games see the same position: layers < k labeled
        let pos = labels.clone();
        let mut moves = Vec::new();
        for alpha in 0..h.delta {
            let mv = outcomes[alpha]
                .strategy
                .get(&pos)
                .ok_or_else(|| Error::invalid("gluing reached an unmapped position"))?;
            let verts: Vec<usize> = (0..ball.parent.len())
                .filter(|&v| ball.depth[v] == k && ball.side[v] == alpha as u8)
                .collect();
            moves.push((verts, mv.clone()));
        }
        for (verts, mv) in moves {
            for (i, v) in verts.into_iter().enumerate() {
                labels[v] = mv[i];
            }
        }
    }
    let eng = Engine::new(alg, h, 0, t, nlabels)?;
    let outputs = eng.terminal_all(&labels)?;
    for alpha in 0..h.delta {
        assert!(
            sets[alpha] >> outputs[alpha] & 1 == 0,
            "Alice strategy failed to avoid its set"
        );
    }
    assert!(
        !problem.vertex_ok(&outputs),
        "glued outputs unexpectedly form a legal config"
    );
    let instance = ball_instance(h, &ball, &labels);
    let (labeling, report) = replay(alg, problem, &instance, t)?;
    if labeling.labels[0] != outputs || !report.vertex_violations.contains(&0) {
        return Err(Error::invalid(
            "replay gate: assembled instance does not reproduce the vertex violation",
        ));
    }
    Ok(Refutation::VertexFail {
        instance,
        root: 0,
        outputs,
        sets: sets.to_vec(),
        sigma,
    })
}

/// Glue two Bob winning strategies across an α-edge (σ0, σ1): Bob at σ0
/// forces the σ0-output into S, Bob at σ1 forces the σ1-output into T,
/// and (S, T) has no legal α-pair, so the shared edge is illegal.
fn glue_edge_fail(
    alg: &LocalAlgorithm,
    problem: &LclProblem,
    h: &IdGraph,
    t: usize,
    nlabels: usize,
    alpha: usize,
    sigmas: (usize, usize),
    sets: (Mask, Mask),
) -> Result<Refutation> {
    let mut outcomes = Vec::new();
    for (sigma, s) in [(sigmas.0, sets.0), (sigmas.1, sets.1)] {
        let spec = GameSpec {
            algorithm: alg,
            id_graph: h,
            alpha,
            sigma,
            s,
            t,
        };
        let oc = solve_game_with_labels(&spec, nlabels)?;
        if oc.winner != Player::Bob {
            return Err(Error::invalid("Bob set chosen from a non-Bob game"));
        }
        outcomes.push(oc);
    }
    let ball = make_ball(h.delta, t);
    // joint instance: roots 0 and 1 joined by an α-edge; each side keeps
    // its non-α subtrees to depth t plus a fresh ring at t+1.
    let mut parent = vec![usize::MAX, usize::MAX];
    let mut parent_color = vec![u8::MAX, u8::MAX];
    let mut depth = vec![0usize, 0];
    let mut side_of = vec![0usize, 1];
    let mut path: Vec<Vec<u8>> = vec![Vec::new(), Vec::new()];
    let mut lookup: HashMap<(usize, Vec<u8>), usize> = HashMap::new();
    lookup.insert((0, Vec::new()), 0);
    lookup.insert((1, Vec::new()), 1);
    let mut head = 0;
    while head < parent.len() {
        let v = head;
        head += 1;
        if depth[v] == t + 1 {
            continue;
        }
        for c in 0..h.delta as u8 {
            if depth[v] == 0 && c as usize == alpha {
                continue; // the joint edge occupies the roots' α-ports
            }
            if depth[v] > 0 && c == parent_color[v] {
                continue;
            }
            let w = parent.len();
            parent.push(v);
            parent_color.push(c);
            depth.push(depth[v] + 1);
            side_of.push(side_of[v]);
            let mut p = path[v].clone();
            p.push(c);
            lookup.insert((side_of[v], p.clone()), w);
            path.push(p);
        }
    }
    // joint index of a game-ball vertex as seen from root `side`
    let joint_of = |side: usize, bpath: &[u8]| -> usize {
        if bpath.is_empty() {
            side
        } else if bpath[0] as usize == alpha {
            let rest = bpath[1..].to_vec();
            lookup[&(1 - side, rest)]
        } else {
            lookup[&(side, bpath.to_vec())]
        }
    };
    let mut joint_labels = vec![u32::MAX; parent.len()];
    joint_labels[0] = sigmas.0 as u32;
    joint_labels[1] = sigmas.1 as u32;
    for k in 1..=t {
        for side in 0..2 {
            // Bob's position at layer k: everything within k−1 of the
            // root plus Alice's layer-k move (the opposite side)
            let mut pos = vec![u32::MAX; ball.parent.len()];
            for b in 0..ball.parent.len() {
                let labeled = ball.depth[b] < k
                    || (ball.depth[b] == k && ball.side[b] == alpha as u8);
                if labeled {
                    pos[b] = joint_labels[joint_of(side, &ball.path[b])];
                    assert!(pos[b] != u32::MAX, "gluing schedule out of order");
                }
            }
            let mv = outcomes[side]
                .strategy
                .get(&pos)
                .ok_or_else(|| Error::invalid("gluing reached an unmapped position"))?;
            let verts: Vec<usize> = (0..ball.parent.len())
                .filter(|&b| ball.depth[b] == k && ball.side[b] != alpha as u8)
                .collect();
            for (i, &b) in verts.iter().enumerate() {
                joint_labels[joint_of(side, &ball.path[b])] = mv[i];
            }
        }
    }
    // assemble: labeled joint vertices keep their identifiers, the ring
    // at depth t+1 gets fresh ones
    let mut fresh = h.n as u64;
    let ids: Vec<u64> = joint_labels
        .iter()
        .map(|&l| {
            if l == u32::MAX {
                fresh += 1;
                fresh - 1
            } else {
                l as u64
            }
        })
        .collect();
    let mut edges = vec![(0usize, 1usize, alpha as u8)];
    for v in 2..parent.len() {
        edges.push((parent[v], v, parent_color[v]));
    }
    let instance = AssembledInstance {
        delta: h.delta,
        edges,
        ids,
    };
    let (labeling, report) = replay(alg, problem, &instance, t)?;
    let o0 = labeling.labels[0][alpha];
    let o1 = labeling.labels[1][alpha];
    assert!(sets.0 >> o0 & 1 == 1, "Bob failed to force the σ0 output into S");
    assert!(sets.1 >> o1 & 1 == 1, "Bob failed to force the σ1 output into T");
    assert!(
        !problem.edge_ok(o0, o1, Some(alpha))?,
        "glued outputs unexpectedly form a legal edge"
    );
    let recorded = report
        .edge_violations
        .iter()
        .any(|&(u, pu, v, pv)| (u, v) == (0, 1) && pu == alpha && pv == alpha);
    if !recorded {
        return Err(Error::invalid(
            "replay gate: assembled instance does not reproduce the edge violation",
        ));
    }
    Ok(Refutation::EdgeFail {
        instance,
        edge: (0, 1),
        color: alpha as u8,
        outputs: (o0, o1),
        sets,
        sigmas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlcl::{make_homomorphism_problem, TargetGraph};
    use crate::sim::LookupTable;

    fn k3_problem() -> LclProblem {
        make_homomorphism_problem(&TargetGraph::complete(3), 3).unwrap()
    }

    /// Radius-t algorithm computed by an arbitrary closure over the ball.
    fn closure_alg(
        name: &str,
        t: usize,
        f: impl Fn(&BallView) -> Vec<Label> + Send + Sync + 'static,
    ) -> LocalAlgorithm {
        LocalAlgorithm {
            name: name.into(),
            radius: Box::new(move |_| t),
            eval: Box::new(f),
        }
    }

    fn constant_alg(out: [Label; 3], t: usize) -> LocalAlgorithm {
        closure_alg("constant", t, move |_| out.to_vec())
    }

    #[test]
    fn k4_id_graph_certifies() {
        let h = k4_id_graph();
        assert_eq!(h.girth, 3);
        assert_eq!(h.mis, vec![2, 2, 2]);
        let nbr = h.neighbors_by_color();
        for v in 0..4 {
            for c in 0..3 {
                assert_eq!(nbr[c][v].len(), 1);
            }
        }
    }

    #[test]
    fn cycle_id_graph_certifies() {
        let h = build_cycle_id_graph(30, 3, 7).unwrap();
        assert!(h.girth >= 4);
        assert_eq!(h.mis, vec![12, 12, 12]); // exactly 2n/5 per color
        assert_eq!(h.edges.len(), 90);
        let round = IdGraph::from_json(&h.to_json()).unwrap();
        assert_eq!(round.edges, h.edges);
    }

    #[test]
    fn config_model_construction_small() {
        // loose parameters where the random route succeeds: t=0 only
        // needs girth ≥ 2 (no self-loops), r=1 is vacuous
        let h = build_id_graph(20, 0, 1.0, 3, 3).unwrap();
        assert!(h.girth >= 2);
        assert_eq!(h.delta, 3);
    }

    #[test]
    fn exact_mis_on_known_graphs() {
        // 5-cycle: 2; two disjoint 5-cycles: 4; K4: 1
        assert_eq!(
            max_independent_set(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
            2
        );
        let mut two = Vec::new();
        for k in [0, 5] {
            for i in 0..5 {
                two.push((k + i, k + (i + 1) % 5));
            }
        }
        assert_eq!(max_independent_set(10, &two).unwrap(), 4);
        assert_eq!(
            max_independent_set(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            1
        );
    }

    #[test]
    fn constant_games_and_profiles() {
        let h = build_cycle_id_graph(15, 3, 1).unwrap();
        let alg = constant_alg([2, 2, 2], 1);
        // Bob wins iff 2 ∈ S; S = ∅ is Alice's
        for (s, expect) in [
            (0b000, Player::Alice),
            (0b100, Player::Bob),
            (0b011, Player::Alice),
            (0b111, Player::Bob),
        ] {
            let spec = GameSpec {
                algorithm: &alg,
                id_graph: &h,
                alpha: 1,
                sigma: 4,
                s,
                t: 1,
            };
            let oc = solve_game_with_labels(&spec, 3).unwrap();
            assert_eq!(oc.winner, expect, "S = {s:#05b}");
            assert!(audit_strategy(&spec, &oc, 3, 100, 99).unwrap());
        }
        let profiles = compute_lambda_profiles(&alg, &h, 1, 3).unwrap();
        let expected: u64 = (0..8).filter(|s| s >> 2 & 1 == 0).map(|s| 1 << s).sum();
        for p in &profiles {
            for alpha in 0..3 {
                assert_eq!(p[alpha], expected);
            }
        }
    }

    #[test]
    fn nontrivial_game_strategy_audit() {
        let h = build_cycle_id_graph(15, 3, 2).unwrap();
        // root output depends on the whole ball: sum of ids mod 3 on
        // every port
        let alg = closure_alg("id-sum", 1, |ball| {
            let s: u64 = ball.vertices.iter().map(|v| v.id).sum();
            vec![(s % 3) as Label; ball.delta]
        });
        for (alpha, sigma, s) in [(0, 0, 0b001), (1, 7, 0b011), (2, 14, 0b101)] {
            let spec = GameSpec {
                algorithm: &alg,
                id_graph: &h,
                alpha,
                sigma,
                s,
                t: 1,
            };
            let oc = solve_game_with_labels(&spec, 3).unwrap();
            assert!(audit_strategy(&spec, &oc, 3, 100, 5).unwrap());
        }
    }

    #[test]
    fn constant_monochromatic_gives_edge_fail() {
        let h = build_cycle_id_graph(15, 3, 3).unwrap();
        let alg = constant_alg([0, 0, 0], 1);
        let refutation = refute_algorithm(&alg, &k3_problem(), &h, 1).unwrap();
        match refutation {
            Refutation::EdgeFail {
                outputs, sets, ..
            } => {
                assert_eq!(outputs, (0, 0));
                assert!(sets.0 & 0b001 != 0 && sets.1 & 0b001 != 0);
            }
            other => panic!("expected EdgeFail, got {other:?}"),
        }
    }

    #[test]
    fn constant_rainbow_gives_vertex_fail() {
        let h = build_cycle_id_graph(15, 3, 4).unwrap();
        let alg = constant_alg([0, 1, 2], 1);
        let refutation = refute_algorithm(&alg, &k3_problem(), &h, 1).unwrap();
        match refutation {
            Refutation::VertexFail { outputs, .. } => {
                assert_eq!(outputs, vec![0, 1, 2]);
            }
            other => panic!("expected VertexFail, got {other:?}"),
        }
    }

    #[test]
    fn greedy_by_id_is_refuted_or_inconclusive_with_replay() {
        let h = build_cycle_id_graph(30, 3, 5).unwrap();
        // color by the rank of the root id among ball ids, mod 3
        let alg = closure_alg("id-rank", 1, |ball| {
            let me = ball.center().id;
            let rank = ball.vertices.iter().filter(|v| v.id < me).count();
            vec![(rank % 3) as Label; ball.delta]
        });
        let refutation = refute_algorithm(&alg, &k3_problem(), &h, 1).unwrap();
        // the replay gate inside refute_algorithm already validated any
        // returned failure; just require a definite outcome here
        match &refutation {
            Refutation::VertexFail { instance, .. } | Refutation::EdgeFail { instance, .. } => {
                let json = refutation.to_json();
                let _round = Refutation::from_json(&json).unwrap();
                assert!(instance.ids.len() > 4);
            }
            Refutation::Inconclusive { .. } => {}
        }
    }

    #[test]
    fn lookup_table_algorithm_plays_games() {
        // a lookup table with a default output behaves like a constant
        // algorithm in every game
        let h = k4_id_graph();
        let table = LookupTable {
            radius: 1,
            table: HashMap::new(),
            default: Some(vec![1, 1, 1]),
        };
        let alg = table.into_algorithm("default-only");
        let spec = GameSpec {
            algorithm: &alg,
            id_graph: &h,
            alpha: 0,
            sigma: 0,
            s: 0b010,
            t: 1,
        };
        let oc = solve_game_with_labels(&spec, 3).unwrap();
        assert_eq!(oc.winner, Player::Bob);
    }
}
