//! Instances: finite Δ-regular trees with virtual half-edges, and
//! bounded-degree multigraphs (configuration-model samples).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// One port (half-edge slot) of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    Real {
        neighbor: usize,
        back_port: usize,
        /// Edge color in 0..Δ when the instance carries a proper edge
        /// coloring.
        color: Option<u8>,
    },
    Virtual,
}

/// A finite tree whose vertices are padded with virtual half-edges up to
/// degree Δ. Always carries a proper Δ-edge-coloring on its real edges.
#[derive(Debug, Clone)]
pub struct RegularTree {
    pub delta: usize,
    /// `ports[v]` has exactly Δ entries.
    pub ports: Vec<Vec<Port>>,
}

/// Tree shapes understood by [`gen_tree`].
#[derive(Debug, Clone, Copy)]
pub enum TreeKind {
    /// Fully branching rooted tree: root degree Δ, internal degree Δ.
    Complete { depth: usize },
    /// Random attachment tree with max degree Δ: each new vertex picks a
    /// uniform parent among vertices with a spare port.
    Random { n: usize },
    Path { n: usize },
}

impl RegularTree {
    /// Build a tree from an explicit edge list, checking connectivity and
    /// acyclicity, and attach a greedy proper edge coloring.
    pub fn from_edges(delta: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("tree must have at least one vertex"));
        }
        if edges.len() != n - 1 {
            return Err(Error::invalid(format!(
                "a tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut ports: Vec<Vec<Port>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::invalid(format!("bad edge ({u}, {v})")));
            }
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
            if ports[u].len() > delta || ports[v].len() > delta {
                return Err(Error::invalid(format!(
                    "vertex degree exceeds delta = {delta}"
                )));
            }
        }
        for p in &mut ports {
            p.resize(delta, Port::Virtual);
        }
        let mut tree = RegularTree { delta, ports };
        tree.check_connected_acyclic()?;
        tree.color_edges_greedy();
        debug_assert!(tree.edge_coloring_proper());
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.ports.len()
    }

    pub fn real_degree(&self, v: usize) -> usize {
        self.ports[v]
            .iter()
            .filter(|p| matches!(p, Port::Real { .. }))
            .count()
    }

    /// Real neighbors of `v` with the connecting port indices and colors:
    /// (port at v, neighbor, port at neighbor, color).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize, usize, Option<u8>)> + '_ {
        self.ports[v].iter().enumerate().filter_map(|(p, port)| {
            if let Port::Real {
                neighbor,
                back_port,
                color,
            } = port
            {
                Some((p, *neighbor, *back_port, *color))
            } else {
                None
            }
        })
    }

    /// All real edges, one entry per edge: (u, port_u, v, port_v, color)
    /// with (u, port_u) < (v, port_v).
    pub fn edges(&self) -> Vec<(usize, usize, usize, usize, Option<u8>)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for (pu, v, pv, color) in self.neighbors(u) {
                if (u, pu) < (v, pv) {
                    out.push((u, pu, v, pv, color));
                }
            }
        }
        out
    }

    fn check_connected_acyclic(&self) -> Result<()> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![(0usize, usize::MAX)];
        seen[0] = true;
        let mut count = 1;
        while let Some((v, from_port)) = stack.pop() {
            for (p, w, bp, _) in self.neighbors(v) {
                if p == from_port {
                    continue;
                }
                if seen[w] {
                    return Err(Error::invalid("edge list contains a cycle"));
                }
                seen[w] = true;
                count += 1;
                stack.push((w, bp));
            }
        }
        if count != n {
            return Err(Error::invalid("tree is not connected"));
        }
        Ok(())
    }

    /// Greedy proper edge coloring from vertex 0: each vertex assigns its
    /// child edges the colors not used by its parent edge.
    fn color_edges_greedy(&mut self) {
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(0usize, usize::MAX)];
        let mut from_port = vec![usize::MAX; n];
        while let Some((v, fp)) = stack.pop() {
            order.push(v);
            from_port[v] = fp;
            for (p, w, bp, _) in self.neighbors(v) {
                if p != fp {
                    stack.push((w, bp));
                }
            }
        }
        // BFS-ish assignment: process in discovery order so parents come
        // first along every root-to-leaf path.
        let mut assigned: Vec<Vec<Option<u8>>> = (0..n)
            .map(|v| vec![None; self.ports[v].len()])
            .collect();
        for &v in &order {
            let fp = from_port[v];
            let skip = if fp == usize::MAX { None } else { assigned[v][fp] };
            let mut next: u8 = 0;
            let child_ports: Vec<(usize, usize, usize)> = self
                .neighbors(v)
                .filter(|&(p, _, _, _)| p != fp)
                .map(|(p, w, bp, _)| (p, w, bp))
                .collect();
            for (p, w, bp) in child_ports {
                while Some(next) == skip {
                    next += 1;
                }
                assigned[v][p] = Some(next);
                assigned[w][bp] = Some(next);
                next += 1;
            }
        }
        for v in 0..n {
            for p in 0..self.ports[v].len() {
                if let Port::Real { color, .. } = &mut self.ports[v][p] {
                    *color = assigned[v][p];
                }
            }
        }
    }

    pub fn edge_coloring_proper(&self) -> bool {
        for v in 0..self.n() {
            let mut seen = Vec::new();
            for (_, _, _, color) in self.neighbors(v) {
                match color {
                    None => return false,
                    Some(c) => {
                        if c as usize >= self.delta || seen.contains(&c) {
                            return false;
                        }
                        seen.push(c);
                    }
                }
            }
        }
        // consistency across both endpoints
        for (u, pu, v, pv, color) in self.edges() {
            let back = match self.ports[v][pv] {
                Port::Real {
                    neighbor, color, ..
                } => {
                    if neighbor != u {
                        return false;
                    }
                    color
                }
                Port::Virtual => return false,
            };
            let _ = pu;
            if back != color {
                return false;
            }
        }
        true
    }

    /// Plain adjacency list of the real edges.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for u in 0..self.n() {
            for (_, v, _, _) in self.neighbors(u) {
                adj[u].push(v);
            }
        }
        adj
    }
}

/// Generate a tree of the requested shape. The seed matters only for
/// `Random`.
pub fn gen_tree(kind: TreeKind, delta: usize, seed: u64) -> Result<RegularTree> {
    if delta < 2 {
        return Err(Error::invalid("delta must be at least 2"));
    }
    match kind {
        TreeKind::Complete { depth } => {
            let mut edges = Vec::new();
            let mut frontier = vec![0usize];
            let mut next_id = 1usize;
            for level in 0..depth {
                let mut new_frontier = Vec::new();
                for &v in &frontier {
                    let children = if level == 0 { delta } else { delta - 1 };
                    for _ in 0..children {
                        edges.push((v, next_id));
                        new_frontier.push(next_id);
                        next_id += 1;
                    }
                }
                frontier = new_frontier;
            }
            RegularTree::from_edges(delta, next_id, &edges)
        }
        TreeKind::Path { n } => {
            if n == 0 {
                return Err(Error::invalid("path needs n >= 1"));
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            RegularTree::from_edges(delta, n, &edges)
        }
        TreeKind::Random { n } => {
            if n == 0 {
                return Err(Error::invalid("random tree needs n >= 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut degree = vec![0usize; n];
            let mut open: Vec<usize> = vec![0];
            let mut edges = Vec::with_capacity(n - 1);
            for v in 1..n {
                let idx = rng.gen_range(0..open.len());
                let parent = open[idx];
                edges.push((parent, v));
                degree[parent] += 1;
                degree[v] += 1;
                if degree[parent] >= delta {
                    open.swap_remove(idx);
                }
                if degree[v] < delta {
                    open.push(v);
                }
                if open.is_empty() && v + 1 < n {
                    return Err(Error::invalid("ran out of spare ports"));
                }
            }
            RegularTree::from_edges(delta, n, &edges)
        }
    }
}

/// A multigraph given by an edge list; parallel edges and self-loops are
/// permitted.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Per-edge color in 0..Δ, when present.
    pub colors: Option<Vec<u8>>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range")));
            }
        }
        Ok(MultiGraph {
            n,
            edges,
            colors: None,
        })
    }

    pub fn with_colors(mut self, colors: Vec<u8>) -> Result<Self> {
        if colors.len() != self.edges.len() {
            return Err(Error::ArityMismatch(
                "color array must cover every edge".into(),
            ));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    /// Adjacency list with edge ids: `adj[v]` lists (neighbor, edge id).
    /// Self-loops contribute two entries at their vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Port table for half-edge labelings: real ports in edge-list order,
    /// padded with virtual ports up to Δ.
    pub fn ports(&self, delta: usize) -> Result<Vec<Vec<Port>>> {
        let mut ports: Vec<Vec<Port>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let color = self.colors.as_ref().map(|c| c[i]);
            let pu = ports[u].len();
            if u == v {
                ports[u].push(Port::Real {
                    neighbor: v,
                    back_port: pu + 1,
                    color,
                });
                ports[u].push(Port::Real {
                    neighbor: v,
                    back_port: pu,
                    color,
                });
            } else {
                let pv = ports[v].len();
                ports[u].push(Port::Real {
                    neighbor: v,
                    back_port: pv,
                    color,
                });
                ports[v].push(Port::Real {
                    neighbor: u,
                    back_port: pu,
                    color,
                });
            }
        }
        for (v, p) in ports.iter_mut().enumerate() {
            if p.len() > delta {
                return Err(Error::invalid(format!(
                    "vertex {v} has degree {} > delta = {delta}",
                    p.len()
                )));
            }
            p.resize(delta, Port::Virtual);
        }
        Ok(ports)
    }
}

/// Sample a d-regular multigraph as the union of d independent uniform
/// random perfect matchings on [n].
pub fn gen_config_model(n: usize, d: usize, seed: u64) -> Result<MultiGraph> {
    if n % 2 != 0 {
        return Err(Error::invalid("configuration model needs even n"));
    }
    if d < 1 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n / 2 * d);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..d {
        perm.shuffle(&mut rng);
        for pair in perm.chunks_exact(2) {
            edges.push((pair[0], pair[1]));
        }
    }
    MultiGraph::new(n, edges)
}

/// Length of the shortest cycle: self-loops count 1, parallel edges 2,
/// `None` for forests (infinite girth).
pub fn girth(graph: &MultiGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut sorted: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .map(|&(u, v)| if u <= v { (u, v) } else { (v, u) })
        .collect();
    for &(u, v) in &sorted {
        if u == v {
            return Some(1);
        }
    }
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        best = Some(2);
    }
    // BFS from every vertex on the underlying simple graph.
    let adj = graph.adjacency();
    let n = graph.n;
    let mut dist = vec![usize::MAX; n];
    let mut stamp = vec![usize::MAX; n];
    for s in 0..n {
        let cutoff = best.map(|b| b / 2).unwrap_or(usize::MAX);
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        stamp[s] = s;
        queue.push_back((s, usize::MAX));
        while let Some((v, via_edge)) = queue.pop_front() {
            if dist[v] > cutoff {
                break;
            }
            for &(w, eid) in &adj[v] {
                if eid == via_edge || w == v {
                    continue;
                }
                if stamp[w] != s {
                    stamp[w] = s;
                    dist[w] = dist[v] + 1;
                    queue.push_back((w, eid));
                } else if dist[w] >= dist[v] {
                    let len = dist[v] + dist[w] + 1;
                    if best.map(|b| len < b).unwrap_or(true) {
                        best = Some(len);
                    }
                }
            }
        }
        // reset stamps lazily via the stamp array
    }
    best
}

/// Multi-source BFS distances over an adjacency list; unreachable =
/// usize::MAX.
pub fn bfs_dist(adj: &[Vec<usize>], sources: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Crude diameter estimate by double BFS (exact on trees).
pub fn diameter_estimate(adj: &[Vec<usize>]) -> usize {
    if adj.is_empty() {
        return 0;
    }
    let d0 = bfs_dist(adj, &[0]);
    let u = (0..adj.len())
        .filter(|&v| d0[v] != usize::MAX)
        .max_by_key(|&v| d0[v])
        .unwrap_or(0);
    let d1 = bfs_dist(adj, &[u]);
    d1.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0)
}
