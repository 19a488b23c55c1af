//! LCL problem definitions: alphabets, vertex/edge configurations, builtin
//! problem constructors, and the line transform.

use std::collections::BTreeSet;

use crate::{Error, Result};

/// A label is an index into the problem alphabet.
pub type Label = u8;

/// A vertex configuration: a size-Δ multiset of labels in canonical
/// (sorted) form.
pub type Config = Vec<Label>;

/// An edge configuration: a size-2 multiset in canonical (sorted) form.
pub type EdgeConfig = [Label; 2];

/// Edge constraints, either one shared set or one set per edge color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeMode {
    Uncolored(BTreeSet<EdgeConfig>),
    /// `per_color[alpha]` is the constraint set for edges of color `alpha`
    /// (colors are 0-based here, 1..=Δ in display form).
    EdgeColored(Vec<BTreeSet<EdgeConfig>>),
}

/// An LCL problem Π = (Σ, 𝒱, ℰ) on Δ-regular trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LclProblem {
    pub name: String,
    pub delta: usize,
    /// Display names of the labels; `Label` values index this list.
    pub alphabet: Vec<String>,
    pub vertex_configs: BTreeSet<Config>,
    pub edges: EdgeMode,
}

/// Sort a multiset into canonical form.
pub fn canonical_config(labels: &[Label]) -> Config {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v
}

/// Canonical form of an edge pair.
pub fn canonical_edge(a: Label, b: Label) -> EdgeConfig {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

impl LclProblem {
    pub fn new(
        name: impl Into<String>,
        delta: usize,
        alphabet: Vec<String>,
        vertex_configs: impl IntoIterator<Item = Config>,
        edges: EdgeMode,
    ) -> Result<Self> {
        let name = name.into();
        if delta < 2 {
            return Err(Error::invalid("delta must be at least 2"));
        }
        if alphabet.is_empty() || alphabet.len() > Label::MAX as usize {
            return Err(Error::invalid("alphabet size out of range"));
        }
        let mut seen = BTreeSet::new();
        for n in &alphabet {
            if !seen.insert(n.clone()) {
                return Err(Error::invalid(format!("duplicate label name `{n}`")));
            }
        }
        let sigma = alphabet.len() as Label;
        let mut vcs = BTreeSet::new();
        for c in vertex_configs {
            if c.len() != delta {
                return Err(Error::ArityMismatch(format!(
                    "vertex config {c:?} has size {} but delta = {delta}",
                    c.len()
                )));
            }
            if c.iter().any(|&l| l >= sigma) {
                return Err(Error::UnknownLabel(format!("{c:?}")));
            }
            vcs.insert(canonical_config(&c));
        }
        let check_edges = |set: &BTreeSet<EdgeConfig>| -> Result<()> {
            for e in set {
                if e[0] > e[1] || e[1] >= sigma {
                    return Err(Error::UnknownLabel(format!("{e:?}")));
                }
            }
            Ok(())
        };
        match &edges {
            EdgeMode::Uncolored(set) => check_edges(set)?,
            EdgeMode::EdgeColored(per_color) => {
                if per_color.len() != delta {
                    return Err(Error::ArityMismatch(format!(
                        "expected {delta} per-color edge sets, got {}",
                        per_color.len()
                    )));
                }
                for set in per_color {
                    check_edges(set)?;
                }
            }
        }
        Ok(LclProblem {
            name,
            delta,
            alphabet,
            vertex_configs: vcs,
            edges,
        })
    }

    pub fn label_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn label_index(&self, name: &str) -> Result<Label> {
        self.alphabet
            .iter()
            .position(|n| n == name)
            .map(|i| i as Label)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn label_name(&self, l: Label) -> &str {
        &self.alphabet[l as usize]
    }

    pub fn is_edge_colored(&self) -> bool {
        matches!(self.edges, EdgeMode::EdgeColored(_))
    }

    /// Is the (already canonical or not) port multiset an allowed vertex
    /// configuration?
    pub fn vertex_ok(&self, ports: &[Label]) -> bool {
        self.vertex_configs.contains(&canonical_config(ports))
    }

    /// Is `{a, b}` allowed across an edge? `color` is required iff the
    /// problem is edge-colored.
    pub fn edge_ok(&self, a: Label, b: Label, color: Option<usize>) -> Result<bool> {
        let pair = canonical_edge(a, b);
        match (&self.edges, color) {
            (EdgeMode::Uncolored(set), _) => Ok(set.contains(&pair)),
            (EdgeMode::EdgeColored(per_color), Some(c)) => {
                let set = per_color
                    .get(c)
                    .ok_or_else(|| Error::invalid(format!("edge color {c} out of range")))?;
                Ok(set.contains(&pair))
            }
            (EdgeMode::EdgeColored(_), None) => Err(Error::invalid(
                "edge-colored problem requires a per-edge color",
            )),
        }
    }

    /// The uncolored edge set, or an error for edge-colored problems.
    pub fn uncolored_edges(&self) -> Result<&BTreeSet<EdgeConfig>> {
        match &self.edges {
            EdgeMode::Uncolored(set) => Ok(set),
            EdgeMode::EdgeColored(_) => {
                Err(Error::invalid("problem is edge-colored, expected uncolored"))
            }
        }
    }

    /// All size-`delta` multisets over the alphabet, in canonical order.
    pub fn all_configs(delta: usize, sigma: usize) -> Vec<Config> {
        let mut out = Vec::new();
        let mut cur = vec![0 as Label; delta];
        fn rec(out: &mut Vec<Config>, cur: &mut Vec<Label>, pos: usize, lo: Label, sigma: Label) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for l in lo..sigma {
                cur[pos] = l;
                rec(out, cur, pos + 1, l, sigma);
            }
        }
        rec(&mut out, &mut cur, 0, 0, sigma as Label);
        out
    }
}

/// Builtin problem constructors.
///
/// `proper_coloring` and `edge_coloring` take the palette size `k`;
/// the others are parameterless.
pub fn make_builtin(name: &str, delta: usize, k: Option<usize>) -> Result<LclProblem> {
    match name {
        "proper_coloring" => {
            let k = k.ok_or_else(|| Error::invalid("proper_coloring requires k"))?;
            proper_coloring(delta, k)
        }
        "edge_coloring" => {
            let k = k.ok_or_else(|| Error::invalid("edge_coloring requires k"))?;
            edge_coloring(delta, k)
        }
        "perfect_matching" => perfect_matching(delta),
        "edge_grabbing" => edge_grabbing(delta),
        "pm_power2" => pm_power2(),
        other => Err(Error::invalid(format!("unknown builtin `{other}`"))),
    }
}

/// Proper vertex k-coloring: every vertex commits to one color on all its
/// half-edges; adjacent vertices must differ.
pub fn proper_coloring(delta: usize, k: usize) -> Result<LclProblem> {
    if k < 1 || k > Label::MAX as usize {
        return Err(Error::invalid("palette size out of range"));
    }
    let alphabet: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    let vertex_configs = (0..k as Label).map(|a| vec![a; delta]);
    let mut edges = BTreeSet::new();
    for a in 0..k as Label {
        for b in a + 1..k as Label {
            edges.insert([a, b]);
        }
    }
    LclProblem::new(
        format!("proper_coloring_{k}"),
        delta,
        alphabet,
        vertex_configs,
        EdgeMode::Uncolored(edges),
    )
}

/// Perfect matching: around each vertex exactly one half-edge is picked
/// (M), and both endpoints of each edge are either picked or not picked.
pub fn perfect_matching(delta: usize) -> Result<LclProblem> {
    let alphabet = vec!["M".to_string(), "U".to_string()];
    let (m, u) = (0 as Label, 1 as Label);
    let mut config = vec![u; delta];
    config[0] = m;
    let edges = BTreeSet::from([[m, m], [u, u]]);
    LclProblem::new(
        "perfect_matching",
        delta,
        alphabet,
        [config],
        EdgeMode::Uncolored(edges),
    )
}

/// Edge grabbing: every vertex grabs exactly one of its half-edges and no
/// edge is grabbed from both sides.
pub fn edge_grabbing(delta: usize) -> Result<LclProblem> {
    let alphabet = vec!["g".to_string(), "n".to_string()];
    let (g, n) = (0 as Label, 1 as Label);
    let mut config = vec![n; delta];
    config[0] = g;
    let edges = BTreeSet::from([canonical_edge(g, n), [n, n]]);
    LclProblem::new(
        "edge_grabbing",
        delta,
        alphabet,
        [config],
        EdgeMode::Uncolored(edges),
    )
}

/// Proper k-edge-coloring: both half-edges of an edge carry the same
/// color, and the colors around a vertex are pairwise distinct.
pub fn edge_coloring(delta: usize, k: usize) -> Result<LclProblem> {
    if k < delta {
        return Err(Error::invalid("edge_coloring needs k >= delta"));
    }
    if k > Label::MAX as usize {
        return Err(Error::invalid("palette size out of range"));
    }
    let alphabet: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    let mut vertex_configs = Vec::new();
    // all size-delta subsets of [k] (distinct colors around a vertex)
    let mut cur: Vec<Label> = Vec::new();
    fn subsets(k: Label, delta: usize, lo: Label, cur: &mut Vec<Label>, out: &mut Vec<Config>) {
        if cur.len() == delta {
            out.push(cur.clone());
            return;
        }
        for l in lo..k {
            cur.push(l);
            subsets(k, delta, l + 1, cur, out);
            cur.pop();
        }
    }
    subsets(k as Label, delta, 0, &mut cur, &mut vertex_configs);
    let edges: BTreeSet<EdgeConfig> = (0..k as Label).map(|a| [a, a]).collect();
    LclProblem::new(
        format!("edge_coloring_{k}"),
        delta,
        alphabet,
        vertex_configs,
        EdgeMode::Uncolored(edges),
    )
}

/// Components of a `pm_power2` label.
///
/// `own` describes this vertex's own match through the port: 0 = not via
/// this port, 1 = matched to the neighbor across the edge, 2 = matched at
/// distance 2 through this edge. `relay` marks that a matched pair of
/// other vertices is routed through this port.
pub fn pm2_label(own: u8, relay: u8) -> Label {
    debug_assert!(own < 3 && relay < 2);
    own * 2 + relay
}

pub fn pm2_own(l: Label) -> u8 {
    l / 2
}

pub fn pm2_relay(l: Label) -> u8 {
    l % 2
}

/// Perfect matching in the square graph (partners at distance ≤ 2),
/// encoded as a Δ=3 LCL with the (own, relay) product alphabet.
pub fn pm_power2() -> Result<LclProblem> {
    let delta = 3;
    let alphabet: Vec<String> = (0..3)
        .flat_map(|own| (0..2).map(move |relay| format!("o{own}r{relay}")))
        .collect();
    let mut vertex_configs = Vec::new();
    for c in LclProblem::all_configs(delta, 6) {
        let own_count = c.iter().filter(|&&l| pm2_own(l) >= 1).count();
        let relay_count = c.iter().filter(|&&l| pm2_relay(l) == 1).count();
        if own_count == 1 && relay_count % 2 == 0 {
            vertex_configs.push(c);
        }
    }
    let mut edges = BTreeSet::new();
    for a in 0..6 as Label {
        for b in a..6 as Label {
            let (o1, r1) = (pm2_own(a), pm2_relay(a));
            let (o2, r2) = (pm2_own(b), pm2_relay(b));
            let ok = ((o1 == 1) == (o2 == 1))
                && ((o1 == 2) == (r2 == 1))
                && ((o2 == 2) == (r1 == 1));
            if ok {
                edges.insert([a, b]);
            }
        }
    }
    LclProblem::new(
        "pm_power2",
        delta,
        alphabet,
        vertex_configs,
        EdgeMode::Uncolored(edges),
    )
}

/// The line transform Π̄: adds a `line` label, all vertex configurations
/// with line-multiplicity exactly two, and the edge pair {line, line}.
pub fn add_paths(problem: &LclProblem) -> Result<LclProblem> {
    let base_edges = problem.uncolored_edges()?.clone();
    let mut alphabet = problem.alphabet.clone();
    let line = alphabet.len() as Label;
    alphabet.push("line".to_string());
    let mut vertex_configs: Vec<Config> = problem.vertex_configs.iter().cloned().collect();
    for c in LclProblem::all_configs(problem.delta, alphabet.len()) {
        if c.iter().filter(|&&l| l == line).count() == 2 {
            vertex_configs.push(c);
        }
    }
    let mut edges = base_edges;
    edges.insert([line, line]);
    LclProblem::new(
        format!("{}_lines", problem.name),
        problem.delta,
        alphabet,
        vertex_configs,
        EdgeMode::Uncolored(edges),
    )
}
