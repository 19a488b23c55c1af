//! Configuration graphs over label subsets and the exact playability
//! decision.
//!
//! For an edge-colored problem, each color α induces a graph ℙ_α on the
//! subsets of Σ: S ~ T when some a ∈ S, b ∈ T form a legal α-edge
//! (loops allowed). The problem is playable when every color admits a
//! two-coloring Λ_α of the subsets by {Alice, Bob} such that
//! (A) every tuple of Alice sets leaves room for a legal vertex config
//!     chosen outside the sets coordinatewise, and
//! (B) any two Bob sets of one color (including a set with itself) are
//!     adjacent in ℙ_α.

use serde::{Deserialize, Serialize};

use crate::problem::{Label, LclProblem};
use crate::{Error, Result};

/// Subset-enumeration cap on |Σ|. Ten suffices for the 9-label maximal
/// homomorphism target at Δ=3 while keeping 2^Σ tables tiny.
pub const SIGMA_CAP: usize = 10;

pub type Mask = u16;

/// Per color, `reach[S]` = union of neighborhoods (in the edge relation
/// of that color) of the labels in S. S ~ T iff reach[S] ∩ T ≠ ∅.
#[derive(Debug, Clone)]
pub struct ConfigGraph {
    pub sigma: usize,
    pub reach: Vec<Vec<Mask>>,
}

impl ConfigGraph {
    pub fn adjacent(&self, color: usize, s: Mask, t: Mask) -> bool {
        self.reach[color][s as usize] & t != 0
    }

    pub fn has_loop(&self, color: usize, s: Mask) -> bool {
        self.adjacent(color, s, s)
    }

    /// DOT rendering of one color's graph (singletons through Σ).
    pub fn to_dot(&self, color: usize) -> String {
        let n = 1usize << self.sigma;
        let mut out = String::from("graph config {\n");
        for s in 0..n as Mask {
            for t in s..n as Mask {
                if self.adjacent(color, s, t) {
                    out.push_str(&format!("  s{s} -- s{t};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Build the per-color configuration graphs of an edge-colored problem.
pub fn config_graphs(problem: &LclProblem) -> Result<ConfigGraph> {
    if !problem.is_edge_colored() {
        return Err(Error::invalid("playability needs an edge-colored problem"));
    }
    let sigma = problem.label_count();
    if sigma > SIGMA_CAP {
        return Err(Error::cap(format!(
            "{sigma} labels exceeds the subset cap {SIGMA_CAP}"
        )));
    }
    let delta = problem.delta;
    let full = 1usize << sigma;
    let mut reach = Vec::with_capacity(delta);
    for color in 0..delta {
        // neighborhood masks of single labels
        let mut nbr = vec![0 as Mask; sigma];
        for a in 0..sigma as Label {
            for b in 0..sigma as Label {
                if problem.edge_ok(a, b, Some(color))? {
                    nbr[a as usize] |= 1 << b;
                }
            }
        }
        let mut r = vec![0 as Mask; full];
        for s in 1..full {
            let low = s.trailing_zeros() as usize;
            r[s] = r[s & (s - 1)] | nbr[low];
        }
        reach.push(r);
    }
    Ok(ConfigGraph { sigma, reach })
}

/// One candidate Λ family that failed, with the violated clause.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceEntry {
    /// Per color, the index into that color's maximal-clique list.
    pub clique_idx: Vec<usize>,
    /// The maximal Alice tuple with no legal vertex config.
    pub alice_tuple: Vec<Mask>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum PlayabilityVerdict {
    /// Per color, Bob's subset family as a bitmap over 2^Σ.
    Playable(Vec<Vec<bool>>),
    NotPlayable(Vec<TraceEntry>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlayabilityResult {
    pub verdict: PlayabilityVerdict,
    /// Per color, the enumerated maximal cliques-with-loops (each a list
    /// of subset masks), for trace interpretation.
    pub cliques: Vec<Vec<Vec<Mask>>>,
}

/// Does some vertex config place a label outside every set of the
/// tuple, one coordinate per color? Evaluated over ordered assignments
/// of the config's multiset entries to colors.
pub fn tuple_has_config(problem: &LclProblem, tuple: &[Mask]) -> bool {
    fn assign(c: &[Label], used: &mut [bool], tuple: &[Mask], color: usize) -> bool {
        if color == tuple.len() {
            return true;
        }
        for i in 0..c.len() {
            if used[i] || (i > 0 && c[i] == c[i - 1] && !used[i - 1]) {
                continue;
            }
            if tuple[color] >> c[i] & 1 == 1 {
                continue; // a_color must avoid S_color
            }
            used[i] = true;
            if assign(c, used, tuple, color + 1) {
                used[i] = false;
                return true;
            }
            used[i] = false;
        }
        false
    }
    problem
        .vertex_configs
        .iter()
        .any(|c| assign(c, &mut vec![false; c.len()], tuple, 0))
}

/// Maximal cliques (with loops required on every member) of one color's
/// configuration graph, via Bron–Kerbosch with pivoting. Deterministic
/// order.
fn maximal_cliques(cg: &ConfigGraph, color: usize) -> Vec<Vec<Mask>> {
    let full = 1usize << cg.sigma;
    let verts: Vec<Mask> = (0..full as Mask)
        .filter(|&s| cg.has_loop(color, s))
        .collect();
    let nv = verts.len();
    let adj: Vec<Vec<bool>> = (0..nv)
        .map(|i| {
            (0..nv)
                .map(|j| i != j && cg.adjacent(color, verts[i], verts[j]))
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Mask>> = Vec::new();
    // bitsets over verts as Vec<u64>
    let words = nv.div_ceil(64);
    let adj_mask: Vec<Vec<u64>> = (0..nv)
        .map(|i| {
            let mut m = vec![0u64; words];
            for (j, row) in adj[i].iter().enumerate() {
                if *row {
                    m[j / 64] |= 1 << (j % 64);
                }
            }
            m
        })
        .collect();
    fn bk(
        r: &mut Vec<usize>,
        mut p: Vec<u64>,
        mut x: Vec<u64>,
        adj_mask: &[Vec<u64>],
        out: &mut Vec<Vec<usize>>,
        words: usize,
    ) {
        if p.iter().all(|&w| w == 0) && x.iter().all(|&w| w == 0) {
            out.push(r.clone());
            return;
        }
        // pivot with most neighbors in P
        let mut pivot = usize::MAX;
        let mut fewest = usize::MAX;
        for w in 0..words {
            let mut bits = p[w] | x[w];
            while bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let cnt: usize = (0..words)
                    .map(|k| (p[k] & !adj_mask[i][k]).count_ones() as usize)
                    .sum();
                if cnt < fewest {
                    fewest = cnt;
                    pivot = i;
                }
            }
        }
        let candidates: Vec<usize> = (0..words)
            .flat_map(|w| {
                let mut v = Vec::new();
                let mut bits = p[w] & !adj_mask[pivot][w];
                while bits != 0 {
                    v.push(w * 64 + bits.trailing_zeros() as usize);
                    bits &= bits - 1;
                }
                v
            })
            .collect();
        for i in candidates {
            let np: Vec<u64> = (0..words).map(|k| p[k] & adj_mask[i][k]).collect();
            let nx: Vec<u64> = (0..words).map(|k| x[k] & adj_mask[i][k]).collect();
            r.push(i);
            bk(r, np, nx, adj_mask, out, words);
            r.pop();
            p[i / 64] &= !(1 << (i % 64));
            x[i / 64] |= 1 << (i % 64);
        }
    }
    if nv > 0 {
        let mut p = vec![0u64; words];
        for i in 0..nv {
            p[i / 64] |= 1 << (i % 64);
        }
        let mut idxs = Vec::new();
        bk(&mut Vec::new(), p, vec![0u64; words], &adj_mask, &mut idxs, words);
        for clique in idxs {
            let mut masks: Vec<Mask> = clique.into_iter().map(|i| verts[i]).collect();
            masks.sort_unstable();
            out.push(masks);
        }
    }
    out.sort();
    out
}

/// Maximal elements (under ⊆) of the complement of a clique.
fn maximal_alice(sigma: usize, clique: &[Mask]) -> Vec<Mask> {
    let full = 1usize << sigma;
    let in_clique: Vec<bool> = {
        let mut v = vec![false; full];
        for &s in clique {
            v[s as usize] = true;
        }
        v
    };
    let mut maxi = Vec::new();
    'outer: for s in (0..full as Mask).rev() {
        if in_clique[s as usize] {
            continue;
        }
        // is any strict superset also Alice? supersets enumerated by
        // flipping absent bits (Alice family is downward closed, so a
        // one-bit extension suffices)
        for b in 0..sigma {
            if s >> b & 1 == 0 && !in_clique[(s | 1 << b) as usize] {
                continue 'outer;
            }
        }
        maxi.push(s);
    }
    maxi.sort_unstable();
    maxi
}

/// Exact playability decision by enumerating, per color, the maximal
/// cliques-with-loops as candidate Bob families (growing a Bob family
/// keeps (B) and only shrinks the Alice side, so maximal cliques are
/// lossless), then testing (A) on ⊆-maximal Alice tuples only (avoiding
/// a set is harder for supersets, so maximal tuples are the worst case).
pub fn decide_playability(problem: &LclProblem) -> Result<PlayabilityResult> {
    let cg = config_graphs(problem)?;
    let delta = problem.delta;
    let cliques: Vec<Vec<Vec<Mask>>> =
        (0..delta).map(|c| maximal_cliques(&cg, c)).collect();
    for c in &cliques {
        if c.is_empty() {
            // a color with no loops at all: Bob family must be empty
        }
    }
    // candidate lists include the empty Bob family (always (B)-legal)
    let candidates: Vec<Vec<Vec<Mask>>> = cliques
        .iter()
        .map(|list| {
            let mut l = vec![Vec::new()];
            l.extend(list.iter().cloned());
            l
        })
        .collect();
    let alice_cache: Vec<Vec<Vec<Mask>>> = candidates
        .iter()
        .map(|list| {
            list.iter()
                .map(|clique| maximal_alice(cg.sigma, clique))
                .collect()
        })
        .collect();

    let mut trace = Vec::new();
    let mut idx = vec![0usize; delta];
    'combos: loop {
        let tuples: Vec<&Vec<Mask>> = (0..delta).map(|c| &alice_cache[c][idx[c]]).collect();
        // (A) over the product of maximal Alice sets
        let mut cursor = vec![0usize; delta];
        let failing: Option<Vec<Mask>> = 'tuples: loop {
            let tuple: Vec<Mask> = (0..delta).map(|c| tuples[c][cursor[c]]).collect();
            if !tuple_has_config(problem, &tuple) {
                break 'tuples Some(tuple);
            }
            for c in 0..delta {
                cursor[c] += 1;
                if cursor[c] < tuples[c].len() {
                    continue 'tuples;
                }
                cursor[c] = 0;
            }
            break None;
        };
        match failing {
            None => {
                let full = 1usize << cg.sigma;
                let bob: Vec<Vec<bool>> = (0..delta)
                    .map(|c| {
                        let mut v = vec![false; full];
                        for &s in &candidates[c][idx[c]] {
                            v[s as usize] = true;
                        }
                        v
                    })
                    .collect();
                debug_assert!(validate_lambda(problem, &cg, &bob));
                return Ok(PlayabilityResult {
                    verdict: PlayabilityVerdict::Playable(bob),
                    cliques,
                });
            }
            Some(tuple) => {
                trace.push(TraceEntry {
                    clique_idx: idx.clone(),
                    alice_tuple: tuple,
                });
            }
        }
        for c in 0..delta {
            idx[c] += 1;
            if idx[c] < candidates[c].len() {
                continue 'combos;
            }
            idx[c] = 0;
        }
        break;
    }
    Ok(PlayabilityResult {
        verdict: PlayabilityVerdict::NotPlayable(trace),
        cliques,
    })
}

/// Independent witness validation: (B) on every Bob pair of every color
/// (loops included), (A) on every ⊆-maximal Alice tuple.
pub fn validate_lambda(problem: &LclProblem, cg: &ConfigGraph, bob: &[Vec<bool>]) -> bool {
    let delta = problem.delta;
    let full = 1usize << cg.sigma;
    for color in 0..delta {
        for s in 0..full {
            if !bob[color][s] {
                continue;
            }
            for t in 0..full {
                if bob[color][t] && !cg.adjacent(color, s as Mask, t as Mask) {
                    return false;
                }
            }
        }
    }
    let alice_max: Vec<Vec<Mask>> = (0..delta)
        .map(|c| {
            let clique: Vec<Mask> = (0..full as Mask).filter(|&s| bob[c][s as usize]).collect();
            maximal_alice(cg.sigma, &clique)
        })
        .collect();
    let mut cursor = vec![0usize; delta];
    loop {
        let tuple: Vec<Mask> = (0..delta).map(|c| alice_max[c][cursor[c]]).collect();
        if !tuple_has_config(problem, &tuple) {
            return false;
        }
        let mut c = 0;
        loop {
            cursor[c] += 1;
            if cursor[c] < alice_max[c].len() {
                break;
            }
            cursor[c] = 0;
            c += 1;
            if c == delta {
                return true;
            }
        }
    }
}

/// The Δ-(\*) non-playability pattern for a homomorphism problem Π_G:
/// the Δ−1 color classes of each complement coloring are loopless
/// (Alice-forced), the tuple (classes, S_i) admits no config (so S_i is
/// Bob-forced), and (S0, S1) are non-adjacent — contradicting (B).
pub struct Prop47Pattern {
    pub classes0: Vec<Mask>,
    pub classes1: Vec<Mask>,
    pub s0: Mask,
    pub s1: Mask,
}

pub fn delta_star_pattern(
    problem: &LclProblem,
    delta: usize,
    witness: &crate::homlcl::DeltaStarWitness,
) -> Result<Prop47Pattern> {
    let cg = config_graphs(problem)?;
    let to_mask = |vs: &[usize]| -> Mask { vs.iter().fold(0, |m, &v| m | 1 << v) };
    let s0 = to_mask(&witness.s0);
    let s1 = to_mask(&witness.s1);
    let classes = |c: &[usize], s: Mask| -> Vec<Mask> {
        (0..delta - 1)
            .map(|k| {
                (0..problem.label_count())
                    .filter(|&v| s >> v & 1 == 0 && c[v] == k)
                    .fold(0 as Mask, |m, v| m | 1 << v)
            })
            .collect()
    };
    let classes0 = classes(&witness.c0, s0);
    let classes1 = classes(&witness.c1, s1);
    for color in 0..problem.delta {
        for a in classes0.iter().chain(classes1.iter()) {
            if cg.has_loop(color, *a) {
                return Err(Error::invalid("independent class has a loop"));
            }
        }
        if cg.adjacent(color, s0, s1) {
            return Err(Error::invalid("(S0,S1) adjacent; pattern broken"));
        }
    }
    // Alice-forced classes + S_i admit no config: S_i is Bob-forced
    let mut t0 = classes0.clone();
    t0.push(s0);
    let mut t1 = classes1.clone();
    t1.push(s1);
    if tuple_has_config(problem, &t0) || tuple_has_config(problem, &t1) {
        return Err(Error::invalid("forcing tuple admits a config"));
    }
    Ok(Prop47Pattern {
        classes0,
        classes1,
        s0,
        s1,
    })
}
