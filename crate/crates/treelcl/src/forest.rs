//! One-ended spanning forest construction on trees and bounded-degree
//! graphs, with coding-radius instrumentation and two applications:
//! distance-2 perfect matching and 4-edge-coloring for Δ = 3.
//!
//! The construction runs in rounds with a doubly-exponentially growing
//! distance schedule d_i = 2^(2^i). Each round keeps a maximal
//! independent set of "hub" vertices (no two within d_i in the unsettled
//! subgraph), clusters every unsettled vertex to its closest hub, retains
//! one random hub-to-hub path per hub and direction, and orients every
//! newly settled vertex toward the retained structure. On finite
//! instances a finalization pass orients whatever is left.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{MultiGraph, Port, RegularTree};
use crate::labeling::HalfEdgeLabeling;
use crate::problem::{pm2_label, Label};
use crate::{Error, Result};

/// Uniform view of a forest-construction input: a connected graph with
/// degrees ≤ Δ (trees) or = Δ (regular multigraphs), no self-loops.
#[derive(Debug, Clone)]
pub struct ForestInstance {
    pub n: usize,
    pub delta: usize,
    /// Edge list; parallel edges allowed, self-loops rejected.
    pub edges: Vec<(usize, usize)>,
    /// `inc[v]` lists (edge id, other endpoint) in port order.
    pub inc: Vec<Vec<(usize, usize)>>,
    pub is_tree: bool,
}

impl ForestInstance {
    fn build(
        n: usize,
        delta: usize,
        edges: Vec<(usize, usize)>,
        is_tree: bool,
    ) -> Result<Self> {
        if delta < 3 {
            return Err(Error::invalid("forest construction needs delta >= 3"));
        }
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::invalid("self-loops are not supported"));
            }
            inc[u].push((i, v));
            inc[v].push((i, u));
        }
        for (v, row) in inc.iter().enumerate() {
            if row.len() > delta {
                return Err(Error::invalid(format!(
                    "vertex {v} has degree {} > delta {delta}",
                    row.len()
                )));
            }
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &inc[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(Error::invalid("instance is disconnected"));
        }
        Ok(ForestInstance {
            n,
            delta,
            edges,
            inc,
            is_tree,
        })
    }

    pub fn from_tree(tree: &RegularTree) -> Result<Self> {
        let edges: Vec<(usize, usize)> = tree
            .edges()
            .into_iter()
            .map(|(u, _, v, _, _)| (u, v))
            .collect();
        Self::build(tree.n(), tree.delta, edges, true)
    }

    pub fn from_graph(graph: &MultiGraph, delta: usize) -> Result<Self> {
        for v in 0..graph.n {
            if graph.degree(v) != delta {
                return Err(Error::invalid(format!(
                    "vertex {v} has degree {} in a supposedly {delta}-regular graph",
                    graph.degree(v)
                )));
            }
        }
        Self::build(graph.n, delta, graph.edges.clone(), false)
    }

    /// Port table matching `inc` order, padded with virtual ports.
    pub fn ports(&self) -> Vec<Vec<Port>> {
        let mut ports: Vec<Vec<Port>> = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            let pu = ports[u].len();
            let pv = ports[v].len();
            ports[u].push(Port::Real {
                neighbor: v,
                back_port: pv,
                color: None,
            });
            ports[v].push(Port::Real {
                neighbor: u,
                back_port: pu,
                color: None,
            });
        }
        for p in &mut ports {
            p.resize(self.delta, Port::Virtual);
        }
        ports
    }

    fn port_of(&self, v: usize, edge: usize) -> usize {
        self.inc[v]
            .iter()
            .position(|&(e, _)| e == edge)
            .expect("edge incident to vertex")
    }
}

/// Where a vertex's single out-edge points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutEdge {
    /// Index into the vertex's port list (its `inc` row).
    Port(usize),
    /// Finalized root of a residual tree component: no out-edge.
    Sink,
    /// Residual cycle vertex, handled by the line rule downstream.
    Line,
}

/// One row of the per-round census.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundStats {
    pub round: usize,
    pub d: usize,
    pub unsettled: usize,
    pub hubs: usize,
    pub max_cluster_radius: usize,
    pub settled_fraction: f64,
}

/// Full state of a forest-construction run.
#[derive(Debug, Clone)]
pub struct ForestState {
    pub n: usize,
    pub delta: usize,
    /// Rounds actually executed.
    pub round: usize,
    pub unsettled: Vec<bool>,
    pub hubs: Vec<bool>,
    /// One out-edge per settled/finalized vertex; None while unsettled.
    pub out: Vec<Option<OutEdge>>,
    /// Round in which a vertex settled; None for unsettled vertices and
    /// for vertices handled by the finalization pass.
    pub settled_round: Vec<Option<usize>>,
    /// Vertices handled by the finalization pass (finite-instance
    /// extension of the infinite construction).
    pub finalized_vertex: Vec<bool>,
    pub line_vertex: Vec<bool>,
    pub rounds: Vec<RoundStats>,
    pub d_schedule: Vec<usize>,
    /// Cluster-region ambiguities observed on non-tree inputs (shortest
    /// paths to a hub disagreeing on the hub's direction).
    pub girth_violations: usize,
    pub finalized: bool,
    /// Measured per-vertex dependency radius: how far a vertex had to
    /// look to fix its own settling decisions.
    pub info_radius: Vec<usize>,
}

impl ForestState {
    fn fresh(n: usize, delta: usize) -> Self {
        ForestState {
            n,
            delta,
            round: 0,
            unsettled: vec![true; n],
            hubs: vec![true; n],
            out: vec![None; n],
            settled_round: vec![None; n],
            finalized_vertex: vec![false; n],
            line_vertex: vec![false; n],
            rounds: Vec::new(),
            d_schedule: Vec::new(),
            girth_violations: 0,
            finalized: false,
            info_radius: vec![0; n],
        }
    }

    pub fn settled_count(&self) -> usize {
        self.unsettled.iter().filter(|&&u| !u).count()
    }
}

fn d_of_round(i: usize, cap: usize) -> usize {
    let exp = 1usize << i.min(6);
    let d = if exp >= usize::BITS as usize - 1 {
        usize::MAX / 4
    } else {
        1usize << exp
    };
    d.min(cap)
}

/// Randomized maximal independent set with per-vertex decision rounds.
/// Returns (in_mis, iteration at which each vertex was decided).
fn luby_mis(adj: &[Vec<usize>], rng: &mut ChaCha8Rng) -> (Vec<bool>, Vec<usize>) {
    let n = adj.len();
    let mut in_mis = vec![false; n];
    let mut decided = vec![0usize; n];
    let mut undecided: Vec<bool> = vec![true; n];
    let mut remaining = n;
    let mut iter = 0usize;
    while remaining > 0 {
        iter += 1;
        let pri: Vec<u64> = (0..n)
            .map(|v| if undecided[v] { rng.gen::<u64>() } else { 0 })
            .collect();
        let mut joins = Vec::new();
        for v in 0..n {
            if !undecided[v] {
                continue;
            }
            let me = (pri[v], v);
            if adj[v]
                .iter()
                .all(|&u| !undecided[u] || me < (pri[u], u))
            {
                joins.push(v);
            }
        }
        for &v in &joins {
            if !undecided[v] {
                continue; // knocked out by an earlier join this iteration
            }
            in_mis[v] = true;
            undecided[v] = false;
            decided[v] = iter;
            remaining -= 1;
            for &u in &adj[v] {
                if undecided[u] {
                    undecided[u] = false;
                    decided[u] = iter;
                    remaining -= 1;
                }
            }
        }
    }
    (in_mis, decided)
}

/// Run the round-based construction, then (for max_rounds > 0) finalize
/// whatever is left unsettled. With max_rounds = 0 the initial state is
/// returned untouched: every vertex unsettled and a hub, no orientation.
pub fn one_ended_forest(
    inst: &ForestInstance,
    max_rounds: usize,
    seed: u64,
) -> Result<ForestState> {
    let n = inst.n;
    let mut st = ForestState::fresh(n, inst.delta);
    if max_rounds == 0 {
        return Ok(st);
    }
    // Cap the schedule at n: distances live in induced subgraphs whose
    // diameter can approach n, and once d_i covers a whole component the
    // round collapses it to a single cluster and finalizes it.
    let diam_cap = n.max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum_d = 0usize;

    for i in 1..=max_rounds {
        if !st.unsettled.iter().any(|&u| u) {
            break;
        }
        let d_i = d_of_round(i, diam_cap);
        sum_d = sum_d.saturating_add(d_i);
        st.d_schedule.push(d_i);
        st.round = i;
        run_round(inst, &mut st, i, d_i, sum_d, &mut rng)?;
    }
    finalize(inst, &mut st, sum_d);
    if inst.is_tree {
        assert_acyclic(&st, inst);
    }
    Ok(st)
}

/// One round: hub MIS, clustering, path retention, orientation.
fn run_round(
    inst: &ForestInstance,
    st: &mut ForestState,
    round: usize,
    d_i: usize,
    sum_d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let n = inst.n;
    let active: Vec<bool> = st.unsettled.clone();
    let hubs_prev: Vec<usize> = (0..n).filter(|&v| st.hubs[v] && active[v]).collect();

    // --- Step 1: MIS of the distance-<=d_i hub graph inside the active
    // subgraph.
    let hub_index: Vec<Option<usize>> = {
        let mut idx = vec![None; n];
        for (k, &h) in hubs_prev.iter().enumerate() {
            idx[h] = Some(k);
        }
        idx
    };
    let mut power_adj: Vec<Vec<usize>> = vec![Vec::new(); hubs_prev.len()];
    {
        let mut dist = vec![usize::MAX; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        for (k, &h) in hubs_prev.iter().enumerate() {
            dist[h] = 0;
            touched.push(h);
            queue.clear();
            queue.push(h);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                if dist[v] == d_i {
                    continue;
                }
                for &(_, w) in &inst.inc[v] {
                    if active[w] && dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        touched.push(w);
                        queue.push(w);
                        if let Some(j) = hub_index[w] {
                            if j != k {
                                power_adj[k].push(j);
                            }
                        }
                    }
                }
            }
            for &t in &touched {
                dist[t] = usize::MAX;
            }
            touched.clear();
        }
    }
    let (in_mis, mis_iter) = luby_mis(&power_adj, rng);
    let new_hubs: Vec<usize> = hubs_prev
        .iter()
        .enumerate()
        .filter(|&(k, _)| in_mis[k])
        .map(|(_, &h)| h)
        .collect();
    let mis_iter_of = |h: usize| mis_iter[hub_index[h].unwrap()];

    // --- Step 2: cluster every active vertex to its closest new hub,
    // ties broken by ascending hub id, recording the hub-side direction.
    let mut dist = vec![usize::MAX; n];
    let mut hub_of = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut dir = vec![usize::MAX; n];
    let mut order: Vec<usize> = Vec::new();
    {
        let mut queue: Vec<usize> = new_hubs.clone();
        for &h in &new_hubs {
            dist[h] = 0;
            hub_of[h] = h;
        }
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            order.push(v);
            for &(_, w) in &inst.inc[v] {
                if active[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
            }
        }
    }
    let mut max_radius = 0usize;
    for &v in &order {
        if dist[v] == 0 {
            continue;
        }
        max_radius = max_radius.max(dist[v]);
        // best parent by (hub id, parent id, edge id)
        let mut best: Option<(usize, usize, usize)> = None;
        let mut ambiguous = false;
        for &(e, w) in &inst.inc[v] {
            if active[w] && dist[w] + 1 == dist[v] && hub_of[w] != usize::MAX {
                let key = (hub_of[w], w, e);
                match best {
                    None => best = Some(key),
                    Some(b) => {
                        if key.0 == b.0 && (key.1 != b.1 || dir[key.1] != dir[b.1]) {
                            ambiguous = true;
                        }
                        if key < b {
                            best = Some(key);
                        }
                    }
                }
            }
        }
        let (h, p, e) = best.expect("BFS parent exists");
        hub_of[v] = h;
        parent_edge[v] = e;
        dir[v] = if dist[v] == 1 {
            inst.port_of(h, e)
        } else {
            dir[p]
        };
        if ambiguous {
            if inst.is_tree {
                panic!("ambiguous cluster parent on a tree");
            }
            st.girth_violations += 1;
        }
    }

    // --- Step 3: per hub and direction, draw one boundary edge
    // uniformly and retain the hub-to-hub path through it.
    let mut boundary: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (e, &(a, b)) in inst.edges.iter().enumerate() {
        if !active[a] || !active[b] {
            continue;
        }
        let (ha, hb) = (hub_of[a], hub_of[b]);
        if ha == usize::MAX || hb == usize::MAX || ha == hb {
            continue;
        }
        let da = if a == ha { inst.port_of(a, e) } else { dir[a] };
        let db = if b == hb { inst.port_of(b, e) } else { dir[b] };
        boundary.entry((ha, da)).or_default().push(e);
        boundary.entry((hb, db)).or_default().push(e);
    }
    let mut retained = vec![false; n];
    let mut hub_has_boundary = vec![false; n];
    for (&(h, _), _) in &boundary {
        hub_has_boundary[h] = true;
    }
    for (&(h, _), list) in &boundary {
        let e = list[rng.gen_range(0..list.len())];
        let (a, b) = inst.edges[e];
        for mut x in [a, b] {
            while !retained[x] {
                retained[x] = true;
                if dist[x] == 0 {
                    break;
                }
                let pe = parent_edge[x];
                let (u, v) = inst.edges[pe];
                x = if u == x { v } else { u };
            }
        }
        let _ = h;
    }

    // Hubs with no boundary edge own their whole component: the round
    // cannot shrink them further, so finalize those clusters now.
    let mut closed: Vec<usize> = Vec::new();
    for &h in &new_hubs {
        if !hub_has_boundary[h] {
            let members: Vec<usize> = (0..n)
                .filter(|&v| active[v] && hub_of[v] == h)
                .collect();
            closed.extend(members.iter().copied());
            finalize_component(inst, st, &members, sum_d);
        }
    }
    let closed_set: Vec<bool> = {
        let mut s = vec![false; n];
        for &v in &closed {
            s[v] = true;
        }
        s
    };

    // --- Orientation: every newly settled vertex points one step toward
    // the retained structure.
    let mut dist2 = vec![usize::MAX; n];
    {
        let mut queue: Vec<usize> = (0..n).filter(|&v| retained[v]).collect();
        for &v in &queue {
            dist2[v] = 0;
        }
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &(_, w) in &inst.inc[v] {
                if active[w] && !closed_set[w] && dist2[w] == usize::MAX {
                    dist2[w] = dist2[v] + 1;
                    queue.push(w);
                }
            }
        }
    }
    for v in 0..n {
        if !active[v] || retained[v] || closed_set[v] {
            continue;
        }
        assert!(
            dist2[v] != usize::MAX,
            "settled vertex must reach the retained structure"
        );
        let mut best: Option<(usize, usize)> = None;
        for &(e, w) in &inst.inc[v] {
            if active[w] && !closed_set[w] && dist2[w] + 1 == dist2[v] {
                let key = (w, e);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, e) = best.expect("orientation parent exists");
        st.out[v] = Some(OutEdge::Port(inst.port_of(v, e)));
        st.settled_round[v] = Some(round);
        st.unsettled[v] = false;
    }
    for v in 0..n {
        st.hubs[v] = false;
    }
    for &h in &new_hubs {
        if retained[h] {
            st.hubs[h] = true;
        }
    }

    // --- Dependency-radius bookkeeping: every cluster member looked at
    // its whole cluster, the hub's MIS decision chain, and (if settled)
    // its path to the retained structure.
    let mut cluster_carry: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cluster_radius: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        if active[v] && hub_of[v] != usize::MAX {
            let h = hub_of[v];
            let c = cluster_carry.entry(h).or_insert(0);
            *c = (*c).max(st.info_radius[v]);
            let r = cluster_radius.entry(h).or_insert(0);
            *r = (*r).max(dist[v]);
        }
    }
    for v in 0..n {
        if active[v] && hub_of[v] != usize::MAX {
            let h = hub_of[v];
            let local = (mis_iter_of(h) + 1).saturating_mul(d_i) + cluster_radius[&h];
            let extra = if dist2[v] != usize::MAX { dist2[v] } else { 0 };
            st.info_radius[v] = cluster_carry[&h] + local + extra;
        }
    }

    // --- Invariants (asserted on trees, where the construction's
    // guarantees are exact).
    if inst.is_tree {
        for v in 0..n {
            if st.unsettled[v] && !st.hubs[v] {
                let deg = inst.inc[v]
                    .iter()
                    .filter(|&&(_, w)| st.unsettled[w])
                    .count();
                assert!(deg >= 2, "retained non-hub vertex must be path-internal");
            }
        }
        assert!(max_radius <= sum_d, "cluster radius bound");
        // every retained vertex is close to a hub inside the retained
        // subgraph
        let mut hd = vec![usize::MAX; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| st.hubs[v]).collect();
        for &v in &queue {
            hd[v] = 0;
        }
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &(_, w) in &inst.inc[v] {
                if st.unsettled[w] && hd[w] == usize::MAX {
                    hd[w] = hd[v] + 1;
                    queue.push(w);
                }
            }
        }
        for v in 0..n {
            if st.unsettled[v] {
                assert!(hd[v] <= sum_d, "hub distance bound in retained subgraph");
            }
        }
    }

    let unsettled = st.unsettled.iter().filter(|&&u| u).count();
    let hubs = st.hubs.iter().filter(|&&h| h).count();
    st.rounds.push(RoundStats {
        round,
        d: d_i,
        unsettled,
        hubs,
        max_cluster_radius: max_radius,
        settled_fraction: (n - unsettled) as f64 / n as f64,
    });
    Ok(())
}

/// Orient one residual component: trees toward a minimum-id endpoint
/// (which becomes a sink), components with cycles toward their 2-core,
/// whose vertices are tagged as line vertices.
fn finalize_component(
    inst: &ForestInstance,
    st: &mut ForestState,
    members: &[usize],
    sum_d: usize,
) {
    if members.is_empty() {
        return;
    }
    let in_comp: Vec<bool> = {
        let mut s = vec![false; inst.n];
        for &v in members {
            s[v] = true;
        }
        s
    };
    let deg = |v: usize, alive: &[bool]| -> usize {
        inst.inc[v]
            .iter()
            .filter(|&&(_, w)| alive[w] && in_comp[w])
            .count()
    };
    // A component that is one simple cycle cannot carry an acyclic
    // out-degree-1 orientation: its vertices become line vertices.
    // Everything else is oriented along a BFS tree toward a single root.
    let edge_count: usize = members.iter().map(|&v| deg(v, &in_comp)).sum::<usize>() / 2;
    let pure_cycle =
        edge_count == members.len() && members.iter().all(|&v| deg(v, &in_comp) == 2);
    let roots: Vec<usize> = if pure_cycle {
        for &v in members {
            st.out[v] = Some(OutEdge::Line);
            st.line_vertex[v] = true;
        }
        members.to_vec()
    } else {
        // root at the minimum-id vertex of minimum degree (an endpoint,
        // when the component is a path)
        let root = *members
            .iter()
            .min_by_key(|&&v| (deg(v, &in_comp), v))
            .unwrap();
        vec![root]
    };
    // BFS from roots/core, orienting everything else toward them
    let mut d = vec![usize::MAX; inst.n];
    let mut queue = roots.clone();
    for &v in &queue {
        d[v] = 0;
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &(_, w) in &inst.inc[v] {
            if in_comp[w] && d[w] == usize::MAX {
                d[w] = d[v] + 1;
                queue.push(w);
            }
        }
    }
    for &v in members {
        if d[v] == 0 {
            if !pure_cycle {
                st.out[v] = Some(OutEdge::Sink);
            }
        } else {
            let mut best: Option<(usize, usize)> = None;
            for &(e, w) in &inst.inc[v] {
                if in_comp[w] && d[w] + 1 == d[v] {
                    let key = (w, e);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let (_, e) = best.expect("finalization parent exists");
            st.out[v] = Some(OutEdge::Port(inst.port_of(v, e)));
        }
        st.unsettled[v] = false;
        st.finalized_vertex[v] = true;
        st.hubs[v] = false;
        st.info_radius[v] = st.info_radius[v].max(sum_d).saturating_add(d[v]);
    }
}

fn finalize(inst: &ForestInstance, st: &mut ForestState, sum_d: usize) {
    // components of the remaining unsettled subgraph
    let n = inst.n;
    let mut seen = vec![false; n];
    for s in 0..n {
        if !st.unsettled[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &(_, w) in &inst.inc[v] {
                if st.unsettled[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        finalize_component(inst, st, &comp, sum_d);
    }
    st.finalized = true;
}

/// Follow out-edges from every vertex and check that no directed cycle
/// exists outside the tagged line vertices.
fn assert_acyclic(st: &ForestState, inst: &ForestInstance) {
    let n = st.n;
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut mark = vec![0u8; n];
    for s in 0..n {
        let mut v = s;
        let mut path = Vec::new();
        while mark[v] == 0 {
            mark[v] = 1;
            path.push(v);
            match st.out[v] {
                Some(OutEdge::Port(p)) => {
                    let (e, w) = inst.inc[v][p];
                    let _ = e;
                    v = w;
                }
                Some(OutEdge::Sink) | Some(OutEdge::Line) | None => break,
            }
            assert!(mark[v] != 1, "orientation cycle outside line vertices");
        }
        for p in path {
            mark[p] = 2;
        }
    }
}

// ---------------------------------------------------------------------
// Coding-radius instrumentation
// ---------------------------------------------------------------------

/// Per-vertex radius of information that fixes the vertex's oriented
/// below-tree, with quantiles at 1 - eps for each requested eps.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusProfile {
    pub eps: Vec<f64>,
    pub quantiles: Vec<usize>,
    pub radii: Vec<usize>,
}

/// The below-tree of v is fixed once every vertex in it, and every
/// neighbor of such a vertex, has committed its own decision. We fold
/// the measured per-vertex dependency radii over the in-trees:
/// R(v) = max(r'(v), 1 + R(child)) over all children pointing into v,
/// where r'(v) also accounts for v's immediate neighbors.
pub fn coding_radius_profile(
    state: &ForestState,
    inst: &ForestInstance,
    eps_grid: &[f64],
) -> Result<RadiusProfile> {
    if !state.finalized {
        return Err(Error::invalid(
            "coding-radius profile needs a finalized run",
        ));
    }
    let n = state.n;
    let mut r1 = vec![0usize; n];
    for v in 0..n {
        let mut r = state.info_radius[v];
        for &(_, w) in &inst.inc[v] {
            r = r.max(1 + state.info_radius[w]);
        }
        r1[v] = r;
    }
    // fold over the orientation forest: children point into their target
    let target = |v: usize| -> Option<usize> {
        match state.out[v] {
            Some(OutEdge::Port(p)) => Some(inst.inc[v][p].1),
            _ => None,
        }
    };
    let mut pending = vec![0usize; n];
    for v in 0..n {
        if let Some(w) = target(v) {
            pending[w] += 1;
        }
    }
    let mut radii = r1.clone();
    let mut queue: Vec<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
    let mut head = 0;
    let mut processed = 0usize;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        processed += 1;
        if let Some(w) = target(v) {
            radii[w] = radii[w].max(1 + radii[v]);
            pending[w] -= 1;
            if pending[w] == 0 {
                queue.push(w);
            }
        }
    }
    if processed != n {
        return Err(Error::invalid("orientation contains a cycle of out-edges"));
    }
    let mut sorted = radii.clone();
    sorted.sort_unstable();
    let quantiles = eps_grid
        .iter()
        .map(|&eps| {
            let rank = ((1.0 - eps) * n as f64).ceil() as usize;
            sorted[rank.clamp(1, n) - 1]
        })
        .collect();
    Ok(RadiusProfile {
        eps: eps_grid.to_vec(),
        quantiles,
        radii,
    })
}

// ---------------------------------------------------------------------
// Application 1: perfect matching in the square graph
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Partners share an edge.
    Direct,
    /// Partners sit at distance two through the given middle vertex.
    Relay(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    Matched(usize, Pairing),
    Unmatched,
    LineVertex,
}

/// Distance-2 matching extracted from a finalized orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching2 {
    pub partner: Vec<Partner>,
}

impl Matching2 {
    pub fn residue_count(&self) -> usize {
        self.partner
            .iter()
            .filter(|p| !matches!(p, Partner::Matched(..)))
            .count()
    }
}

/// Pair vertices by induction on the height of their oriented below-tree:
/// at each vertex, unmatched children are paired ascending-id adjacent
/// through the vertex; an odd leftover child pairs with the vertex itself.
pub fn pm2_from_forest(state: &ForestState, inst: &ForestInstance) -> Result<Matching2> {
    if !state.finalized {
        return Err(Error::invalid("matching extraction needs a finalized run"));
    }
    let n = state.n;
    let target = |v: usize| -> Option<usize> {
        match state.out[v] {
            Some(OutEdge::Port(p)) => Some(inst.inc[v][p].1),
            _ => None,
        }
    };
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(w) = target(v) {
            children[w].push(v);
        }
    }
    // height order via Kahn over the in-trees
    let mut pending: Vec<usize> = children.iter().map(|c| c.len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
    let mut head = 0;
    let mut partner = vec![Partner::Unmatched; n];
    for v in 0..n {
        if state.line_vertex[v] {
            partner[v] = Partner::LineVertex;
        }
    }
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        if !state.line_vertex[v] {
            let mut open: Vec<usize> = children[v]
                .iter()
                .copied()
                .filter(|&c| matches!(partner[c], Partner::Unmatched))
                .collect();
            open.sort_unstable();
            if open.len() % 2 == 1 {
                let c = open.remove(0);
                partner[v] = Partner::Matched(c, Pairing::Direct);
                partner[c] = Partner::Matched(v, Pairing::Direct);
            }
            for pair in open.chunks_exact(2) {
                partner[pair[0]] = Partner::Matched(pair[1], Pairing::Relay(v));
                partner[pair[1]] = Partner::Matched(pair[0], Pairing::Relay(v));
            }
        }
        if let Some(w) = target(v) {
            pending[w] -= 1;
            if pending[w] == 0 {
                queue.push(w);
            }
        }
    }
    if head != n {
        return Err(Error::invalid("orientation contains a cycle of out-edges"));
    }
    let m = Matching2 { partner };
    validate_matching2(&m, inst)?;
    Ok(m)
}

/// Structural checks: partner is an involution, matched pairs are at
/// distance <= 2 with a correct middle vertex, line vertices induce
/// paths/cycles.
pub fn validate_matching2(m: &Matching2, inst: &ForestInstance) -> Result<()> {
    let adjacent = |a: usize, b: usize| inst.inc[a].iter().any(|&(_, w)| w == b);
    for v in 0..inst.n {
        match m.partner[v] {
            Partner::Matched(w, via) => {
                let back = match m.partner[w] {
                    Partner::Matched(x, via2) => x == v && via2 == via,
                    _ => false,
                };
                if !back {
                    return Err(Error::invalid(format!(
                        "matching is not an involution at {v}"
                    )));
                }
                match via {
                    Pairing::Direct => {
                        if !adjacent(v, w) {
                            return Err(Error::invalid(format!(
                                "direct partners {v},{w} are not adjacent"
                            )));
                        }
                    }
                    Pairing::Relay(mid) => {
                        if !adjacent(v, mid) || !adjacent(w, mid) {
                            return Err(Error::invalid(format!(
                                "relay {mid} is not adjacent to both {v} and {w}"
                            )));
                        }
                    }
                }
            }
            Partner::Unmatched => {}
            Partner::LineVertex => {
                let line_deg = inst.inc[v]
                    .iter()
                    .filter(|&&(_, w)| matches!(m.partner[w], Partner::LineVertex))
                    .count();
                if line_deg > 2 {
                    return Err(Error::invalid(format!(
                        "line vertex {v} has {line_deg} line neighbors"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Encode a distance-2 matching as a half-edge labeling over the
/// line-extended power-2 matching alphabet (labels 0..5 carry the
/// (own, relay) encoding, label 6 is the line label). Unmatched vertices
/// encode as all-(0,0) rows and surface as vertex violations downstream.
pub fn encode_pm2(m: &Matching2, inst: &ForestInstance) -> Result<HalfEdgeLabeling> {
    if inst.delta != 3 {
        return Err(Error::invalid("power-2 matching encoding is Δ = 3 only"));
    }
    let line: Label = 6;
    let mut labels: Vec<Vec<Label>> = vec![vec![pm2_label(0, 0); inst.delta]; inst.n];
    let port_toward = |v: usize, w: usize| -> Result<usize> {
        inst.inc[v]
            .iter()
            .position(|&(_, x)| x == w)
            .ok_or_else(|| Error::invalid(format!("{w} is not adjacent to {v}")))
    };
    for v in 0..inst.n {
        match m.partner[v] {
            Partner::Matched(w, Pairing::Direct) => {
                let p = port_toward(v, w)?;
                labels[v][p] = pm2_label(1, 0);
            }
            Partner::Matched(_, Pairing::Relay(mid)) => {
                let p = port_toward(v, mid)?;
                labels[v][p] = pm2_label(2, 0);
            }
            Partner::Unmatched => {}
            Partner::LineVertex => {
                let mut marked = 0;
                for (p, &(_, w)) in inst.inc[v].iter().enumerate() {
                    if matches!(m.partner[w], Partner::LineVertex) && marked < 2 {
                        labels[v][p] = line;
                        marked += 1;
                    }
                }
            }
        }
    }
    // relay marks on the middle vertices
    for v in 0..inst.n {
        if let Partner::Matched(w, Pairing::Relay(mid)) = m.partner[v] {
            if v < w {
                for end in [v, w] {
                    let p = port_toward(mid, end)?;
                    let l = labels[mid][p];
                    labels[mid][p] = pm2_label(l / 2, 1);
                }
            }
        }
    }
    Ok(HalfEdgeLabeling::new(labels))
}

// ---------------------------------------------------------------------
// Application 2: 4-edge-coloring for Δ = 3
// ---------------------------------------------------------------------

/// Proper edge coloring with colors 1..=4, one entry per edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeColoring4 {
    pub colors: Vec<u8>,
}

impl EdgeColoring4 {
    pub fn is_proper(&self, inst: &ForestInstance) -> bool {
        for v in 0..inst.n {
            let mut seen = [false; 5];
            for &(e, _) in &inst.inc[v] {
                let c = self.colors[e] as usize;
                if c == 0 || c > 4 || seen[c] {
                    return false;
                }
                seen[c] = true;
            }
        }
        true
    }
}

fn missing_at(inst: &ForestInstance, colors: &[u8], x: usize, skip: usize) -> Vec<u8> {
    let mut used = [false; 5];
    for &(f, _) in &inst.inc[x] {
        if f != skip && colors[f] != 0 {
            used[colors[f] as usize] = true;
        }
    }
    (1..=4u8).filter(|&c| !used[c as usize]).collect()
}

/// Maximal alternating a/b chain starting at `start` with an edge of
/// color `first`. The two-colored subgraph has max degree 2, so this is
/// a path walk (with a cycle guard).
fn chain_from(
    inst: &ForestInstance,
    colors: &[u8],
    start: usize,
    first: u8,
    second: u8,
) -> Vec<usize> {
    let mut chain = Vec::new();
    let mut x = start;
    let mut want = first;
    let mut prev = usize::MAX;
    loop {
        let step = inst.inc[x]
            .iter()
            .find(|&&(f, _)| f != prev && colors[f] == want);
        match step {
            Some(&(f, w)) => {
                chain.push(f);
                prev = f;
                x = w;
                want = if want == first { second } else { first };
                if x == start {
                    break;
                }
            }
            None => break,
        }
    }
    chain
}

/// Assign a color in 1..=4 to edge `e`, repairing with Kempe-chain flips
/// and fan shifts when both endpoints are saturated. Returns false only
/// if the bounded repair search is exhausted.
fn color_edge(inst: &ForestInstance, colors: &mut [u8], e: usize, depth: usize) -> bool {
    let (u, v) = inst.edges[e];
    let mu = missing_at(inst, colors, u, e);
    let mv = missing_at(inst, colors, v, e);
    if let Some(&c) = mu.iter().find(|c| mv.contains(c)) {
        colors[e] = c;
        return true;
    }
    if depth == 0 {
        return false;
    }
    // Kempe: flip an alternating chain from one endpoint and retry.
    for (x, ma, mb) in [(u, &mu, &mv), (v, &mv, &mu)] {
        for &a in ma.iter() {
            for &b in mb.iter() {
                // x misses a and (being saturated on the other side) has
                // a b-edge; swap a and b along x's chain.
                let chain = chain_from(inst, colors, x, b, a);
                if chain.is_empty() {
                    continue;
                }
                let flip = |colors: &mut [u8]| {
                    for &f in &chain {
                        colors[f] = if colors[f] == a { b } else { a };
                    }
                };
                flip(colors);
                let mu2 = missing_at(inst, colors, u, e);
                let mv2 = missing_at(inst, colors, v, e);
                if let Some(&c) = mu2.iter().find(|c| mv2.contains(c)) {
                    colors[e] = c;
                    return true;
                }
                flip(colors);
            }
        }
    }
    // Fan shift: hand one incident edge's color to e and recurse.
    for (x, other) in [(u, v), (v, u)] {
        let m_other = missing_at(inst, colors, other, e);
        for pi in 0..inst.inc[x].len() {
            let (f, _) = inst.inc[x][pi];
            if f == e || colors[f] == 0 || !m_other.contains(&colors[f]) {
                continue;
            }
            let c = colors[f];
            colors[f] = 0;
            colors[e] = c;
            if color_edge(inst, colors, f, depth - 1) {
                return true;
            }
            colors[e] = 0;
            colors[f] = c;
        }
    }
    false
}

/// Color the edges not grabbed by the orientation (a max-degree-2
/// subgraph wherever every vertex has an out-edge) by walking its paths
/// and cycles, then the grabbed edges greedily in increasing height of
/// the grabbing vertex's below-tree, with a one-step local repair for
/// the rare saturated case.
pub fn vizing3_edge_color(state: &ForestState, inst: &ForestInstance) -> Result<EdgeColoring4> {
    if inst.delta != 3 {
        return Err(Error::invalid("this edge coloring is Δ = 3 only"));
    }
    if !state.finalized {
        return Err(Error::invalid("edge coloring needs a finalized run"));
    }
    let n = inst.n;
    let m = inst.edges.len();
    let mut grabbed = vec![false; m];
    let target = |v: usize| -> Option<(usize, usize)> {
        match state.out[v] {
            Some(OutEdge::Port(p)) => Some(inst.inc[v][p]),
            _ => None,
        }
    };
    for v in 0..n {
        if let Some((e, _)) = target(v) {
            grabbed[e] = true;
        }
    }
    let mut colors = vec![0u8; m];
    let free_color = |e: usize, colors: &[u8]| -> Option<u8> {
        let (u, v) = inst.edges[e];
        let mut used = [false; 5];
        for x in [u, v] {
            for &(f, _) in &inst.inc[x] {
                if f != e && colors[f] != 0 {
                    used[colors[f] as usize] = true;
                }
            }
        }
        (1..=4u8).find(|&c| !used[c as usize])
    };

    // Phase 1: non-grabbed edges, walking each path/cycle component.
    let mut visited = vec![false; m];
    let free_deg = |v: usize| {
        inst.inc[v]
            .iter()
            .filter(|&&(e, _)| !grabbed[e])
            .count()
    };
    for start in 0..n {
        // walk from endpoints first so paths alternate cleanly
        if free_deg(start) != 1 {
            continue;
        }
        let first = inst.inc[start]
            .iter()
            .find(|&&(e, _)| !grabbed[e] && !visited[e]);
        let Some(&(mut e, mut next)) = first else {
            continue;
        };
        loop {
            visited[e] = true;
            colors[e] = free_color(e, &colors).ok_or_else(|| {
                Error::invalid("non-grabbed path edge with all four colors blocked")
            })?;
            let step = inst.inc[next]
                .iter()
                .find(|&&(f, _)| !grabbed[f] && !visited[f]);
            match step {
                Some(&(f, w)) => {
                    e = f;
                    next = w;
                }
                None => break,
            }
        }
    }
    // remaining non-grabbed components are cycles (or were consumed)
    for e0 in 0..m {
        if grabbed[e0] || visited[e0] {
            continue;
        }
        let mut e = e0;
        let mut next = inst.edges[e0].1;
        loop {
            visited[e] = true;
            colors[e] = free_color(e, &colors).ok_or_else(|| {
                Error::invalid("non-grabbed subgraph is not degree <= 2 where expected")
            })?;
            let step = inst.inc[next]
                .iter()
                .find(|&&(f, _)| !grabbed[f] && !visited[f]);
            match step {
                Some(&(f, w)) => {
                    e = f;
                    next = w;
                }
                None => break,
            }
        }
    }

    // Phase 2: grabbed edges in increasing height of the grabbing
    // vertex's below-tree.
    let mut children_count = vec![0usize; n];
    for v in 0..n {
        if let Some((_, w)) = target(v) {
            children_count[w] += 1;
        }
    }
    let mut height = vec![0usize; n];
    let mut pending = children_count;
    let mut queue: Vec<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        if let Some((_, w)) = target(v) {
            height[w] = height[w].max(height[v] + 1);
            pending[w] -= 1;
            if pending[w] == 0 {
                queue.push(w);
            }
        }
    }
    let mut grab_order: Vec<(usize, usize, usize)> = (0..n)
        .filter_map(|v| target(v).map(|(e, _)| (height[v], v, e)))
        .collect();
    grab_order.sort_unstable();
    for &(_, _, e) in &grab_order {
        if colors[e] != 0 {
            continue; // both endpoints grabbed the same edge
        }
        if !color_edge(inst, &mut colors, e, 32) {
            return Err(Error::invalid(format!(
                "could not 4-color edge {e} even after Kempe repairs"
            )));
        }
    }
    let coloring = EdgeColoring4 { colors };
    if !coloring.is_proper(inst) {
        return Err(Error::invalid("edge coloring failed the properness check"));
    }
    Ok(coloring)
}

// ---------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------

pub fn orientation_json(state: &ForestState) -> String {
    let out: Vec<serde_json::Value> = state
        .out
        .iter()
        .map(|o| match o {
            Some(OutEdge::Port(p)) => serde_json::json!({ "port": p }),
            Some(OutEdge::Sink) => serde_json::json!("sink"),
            Some(OutEdge::Line) => serde_json::json!("line"),
            None => serde_json::Value::Null,
        })
        .collect();
    serde_json::json!({
        "n": state.n,
        "delta": state.delta,
        "rounds_run": state.round,
        "finalized": state.finalized,
        "finalization_note": "finite-instance extension: residual components oriented toward an endpoint or their 2-core",
        "d_schedule": state.d_schedule,
        "girth_violations": state.girth_violations,
        "out": out,
        "settled_round": state.settled_round,
        "line_vertex": state.line_vertex,
    })
    .to_string()
}

pub fn orientation_dot(state: &ForestState, inst: &ForestInstance) -> String {
    let mut s = String::from("digraph forest {\n");
    for v in 0..state.n {
        if state.line_vertex[v] {
            s.push_str(&format!("  {v} [shape=diamond];\n"));
        }
        if let Some(OutEdge::Port(p)) = state.out[v] {
            let (_, w) = inst.inc[v][p];
            s.push_str(&format!("  {v} -> {w};\n"));
        }
    }
    s.push_str("}\n");
    s
}

pub fn stats_csv(state: &ForestState) -> String {
    let mut s = String::from("round,d,unsettled,hubs,max_cluster_radius,settled_fraction\n");
    for r in &state.rounds {
        s.push_str(&format!(
            "{},{},{},{},{},{:.6}\n",
            r.round, r.d, r.unsettled, r.hubs, r.max_cluster_radius, r.settled_fraction
        ));
    }
    s
}

pub fn profile_csv(profile: &RadiusProfile) -> String {
    let mut s = String::from("eps,quantile\n");
    for (e, q) in profile.eps.iter().zip(&profile.quantiles) {
        s.push_str(&format!("{e},{q}\n"));
    }
    s
}

pub fn matching_json(m: &Matching2) -> String {
    let rows: Vec<serde_json::Value> = m
        .partner
        .iter()
        .map(|p| match p {
            Partner::Matched(w, Pairing::Direct) => {
                serde_json::json!({ "partner": w, "via": "direct" })
            }
            Partner::Matched(w, Pairing::Relay(mid)) => {
                serde_json::json!({ "partner": w, "via": { "relay": mid } })
            }
            Partner::Unmatched => serde_json::json!("unmatched"),
            Partner::LineVertex => serde_json::json!("line"),
        })
        .collect();
    serde_json::json!({ "n": m.partner.len(), "partner": rows }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_config_model, gen_tree, TreeKind};
    use crate::labeling::validate_labeling;
    use crate::problem::{add_paths, pm_power2};

    fn tree_instance(kind: TreeKind, seed: u64) -> ForestInstance {
        let t = gen_tree(kind, 3, seed).unwrap();
        ForestInstance::from_tree(&t).unwrap()
    }

    #[test]
    fn zero_rounds_is_the_initial_state() {
        let inst = tree_instance(TreeKind::Random { n: 50 }, 3);
        let st = one_ended_forest(&inst, 0, 1).unwrap();
        assert!(st.unsettled.iter().all(|&u| u));
        assert!(st.hubs.iter().all(|&h| h));
        assert!(st.out.iter().all(|o| o.is_none()));
        assert!(!st.finalized);
    }

    #[test]
    fn trees_get_a_full_acyclic_orientation() {
        for (kind, seed) in [
            (TreeKind::Random { n: 2000 }, 11u64),
            (TreeKind::Complete { depth: 5 }, 0),
            (TreeKind::Path { n: 101 }, 0),
        ] {
            let inst = tree_instance(kind, seed);
            let st = one_ended_forest(&inst, 6, 7).unwrap();
            assert!(st.finalized);
            assert!(st.unsettled.iter().all(|&u| !u));
            assert!(st.out.iter().all(|o| o.is_some()));
            assert!(st.line_vertex.iter().all(|&l| !l), "no cycles on trees");
            assert!(st
                .out
                .iter()
                .any(|o| matches!(o, Some(OutEdge::Sink))));
            // settling monotone
            for w in st.rounds.windows(2) {
                assert!(w[1].unsettled <= w[0].unsettled);
            }
        }
    }

    #[test]
    fn regular_graph_settles_quickly() {
        let g = gen_config_model(2000, 3, 9).unwrap();
        let inst = ForestInstance::from_graph(&g, 3).unwrap();
        let st = one_ended_forest(&inst, 3, 5).unwrap();
        assert!(st.finalized);
        let last = st.rounds.last().unwrap();
        assert!(
            last.settled_fraction >= 0.9,
            "settled only {:.3} after round {}",
            last.settled_fraction,
            last.round
        );
        for w in st.rounds.windows(2) {
            assert!(w[1].unsettled <= w[0].unsettled);
        }
    }

    #[test]
    fn three_vertex_path_matching_has_one_residual() {
        let t = crate::instance::RegularTree::from_edges(3, 3, &[(0, 1), (1, 2)]).unwrap();
        let inst = ForestInstance::from_tree(&t).unwrap();
        let st = one_ended_forest(&inst, 4, 2).unwrap();
        let m = pm2_from_forest(&st, &inst).unwrap();
        assert_eq!(m.residue_count(), 1, "odd n forces exactly one residual");
        let matched: Vec<usize> = (0..3)
            .filter(|&v| matches!(m.partner[v], Partner::Matched(..)))
            .collect();
        assert_eq!(matched.len(), 2);
    }

    #[test]
    fn four_vertex_path_matches_everyone() {
        let t =
            crate::instance::RegularTree::from_edges(3, 4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = ForestInstance::from_tree(&t).unwrap();
        let st = one_ended_forest(&inst, 4, 2).unwrap();
        let m = pm2_from_forest(&st, &inst).unwrap();
        assert_eq!(m.residue_count(), 0);
        // encodes as a valid power-2 matching labeling (no line label used)
        let labeling = encode_pm2(&m, &inst).unwrap();
        let p = pm_power2().unwrap();
        let rep = validate_labeling(&p, &inst.ports(), &labeling).unwrap();
        assert!(rep.ok, "{rep:?}");
    }

    #[test]
    fn random_tree_residue_is_small() {
        let inst = tree_instance(TreeKind::Random { n: 2000 }, 21);
        let st = one_ended_forest(&inst, 6, 13).unwrap();
        let m = pm2_from_forest(&st, &inst).unwrap();
        assert!(
            m.residue_count() * 50 <= inst.n,
            "residue {} of {}",
            m.residue_count(),
            inst.n
        );
        // the line-extended encoding validates away from the residue
        let labeling = encode_pm2(&m, &inst).unwrap();
        let p = add_paths(&pm_power2().unwrap()).unwrap();
        let rep = validate_labeling(&p, &inst.ports(), &labeling).unwrap();
        let residual: Vec<usize> = (0..inst.n)
            .filter(|&v| !matches!(m.partner[v], Partner::Matched(..)))
            .collect();
        for v in &rep.vertex_violations {
            assert!(residual.contains(v), "violation at matched vertex {v}");
        }
    }

    #[test]
    fn edge_coloring_on_trees() {
        let t = crate::instance::RegularTree::from_edges(3, 2, &[(0, 1)]).unwrap();
        let inst = ForestInstance::from_tree(&t).unwrap();
        let st = one_ended_forest(&inst, 3, 1).unwrap();
        let c = vizing3_edge_color(&st, &inst).unwrap();
        assert_eq!(c.colors.len(), 1);
        assert!(c.colors[0] >= 1 && c.colors[0] <= 4);

        for (kind, seed) in [
            (TreeKind::Complete { depth: 5 }, 0u64),
            (TreeKind::Random { n: 1500 }, 4),
        ] {
            let inst = tree_instance(kind, seed);
            let st = one_ended_forest(&inst, 6, 3).unwrap();
            let c = vizing3_edge_color(&st, &inst).unwrap();
            assert!(c.is_proper(&inst));
        }
    }

    #[test]
    fn edge_coloring_on_regular_graphs() {
        for seed in [1u64, 2, 3] {
            let g = gen_config_model(500, 3, seed).unwrap();
            let Ok(inst) = ForestInstance::from_graph(&g, 3) else {
                continue; // disconnected sample
            };
            let st = one_ended_forest(&inst, 5, seed).unwrap();
            let c = vizing3_edge_color(&st, &inst).unwrap();
            assert!(c.is_proper(&inst));
        }
    }

    #[test]
    fn coding_radius_profile_is_deterministic_and_monotone() {
        let inst = tree_instance(TreeKind::Random { n: 1000 }, 8);
        let st1 = one_ended_forest(&inst, 6, 42).unwrap();
        let st2 = one_ended_forest(&inst, 6, 42).unwrap();
        let eps = [0.1, 0.01, 0.001];
        let p1 = coding_radius_profile(&st1, &inst, &eps).unwrap();
        let p2 = coding_radius_profile(&st2, &inst, &eps).unwrap();
        assert_eq!(p1, p2, "same seed, same profile");
        for w in p1.quantiles.windows(2) {
            assert!(w[1] >= w[0], "quantiles nondecreasing in 1 - eps");
        }
        // unfinalized state is rejected
        let st0 = one_ended_forest(&inst, 0, 42).unwrap();
        assert!(coding_radius_profile(&st0, &inst, &eps).is_err());
    }

    #[test]
    fn exports_are_well_formed() {
        let inst = tree_instance(TreeKind::Random { n: 60 }, 5);
        let st = one_ended_forest(&inst, 4, 6).unwrap();
        let j: serde_json::Value = serde_json::from_str(&orientation_json(&st)).unwrap();
        assert_eq!(j["n"], 60);
        assert!(orientation_dot(&st, &inst).starts_with("digraph"));
        assert!(stats_csv(&st).lines().count() >= 2);
        let m = pm2_from_forest(&st, &inst).unwrap();
        let mj: serde_json::Value = serde_json::from_str(&matching_json(&m)).unwrap();
        assert_eq!(mj["n"], 60);
    }
}
