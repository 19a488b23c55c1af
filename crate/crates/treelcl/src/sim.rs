//! Execution engines for local and uniform algorithms.
//!
//! A local algorithm is a pure function from a radius-t ball view to the
//! Δ port labels of the ball's center. A uniform algorithm maps a ball
//! view to either an output or a request for a larger ball; the smallest
//! radius at which it outputs is its coding radius at that vertex.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::Port;
use crate::labeling::{validate_labeling, HalfEdgeLabeling, ValidityReport};
use crate::problem::{Label, LclProblem};
use crate::{Error, Result};

/// One vertex of a ball view.
#[derive(Debug, Clone)]
pub struct BallVertex {
    pub id: u64,
    pub dist: usize,
    /// Index of this vertex in the host instance. Engine bookkeeping:
    /// algorithms must not depend on it (checked by locality fuzzing).
    pub global: usize,
    pub ports: Vec<BallPort>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallPort {
    /// Edge to another ball vertex (index into `BallView::vertices`).
    Internal { index: usize, color: Option<u8> },
    Virtual,
    /// Real edge truncated at the ball boundary.
    Cut { color: Option<u8> },
}

/// The radius-t view around a center vertex. `vertices[0]` is the center.
#[derive(Debug, Clone)]
pub struct BallView {
    pub delta: usize,
    pub radius: usize,
    /// Instance size as announced to the algorithm (honors n_override).
    pub n: usize,
    pub vertices: Vec<BallVertex>,
    /// Per ball vertex, `radius + 1` random chunks (uniform runs only;
    /// empty otherwise). Chunk r becomes available at ball radius ≥ r.
    pub rand: Vec<Vec<u64>>,
}

impl BallView {
    pub fn center(&self) -> &BallVertex {
        &self.vertices[0]
    }

    /// Internal neighbors of a ball vertex.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices[i].ports.iter().filter_map(|p| match p {
            BallPort::Internal { index, .. } => Some(*index),
            _ => None,
        })
    }

    /// Canonical serialization of the ball as a rooted tree: children
    /// ordered by edge color when present, else by port index. Used as
    /// the key format for lookup-table algorithms.
    pub fn canonical_key(&self) -> String {
        let mut out = String::new();
        self.ser(0, usize::MAX, self.radius, &mut out);
        out
    }

    /// The center's port indices in canonical (color-first) order.
    pub fn canonical_center_order(&self) -> Vec<usize> {
        let c = &self.vertices[0];
        let mut order: Vec<usize> = (0..c.ports.len()).collect();
        order.sort_by_key(|&p| Self::port_key(&c.ports[p], p));
        order
    }

    fn port_key(port: &BallPort, index: usize) -> (u8, usize) {
        match port {
            BallPort::Internal { color: Some(c), .. } | BallPort::Cut { color: Some(c) } => {
                (*c, 0)
            }
            _ => (u8::MAX, index),
        }
    }

    fn ser(&self, i: usize, from_port: usize, depth_left: usize, out: &mut String) {
        let v = &self.vertices[i];
        out.push('[');
        out.push_str(&v.id.to_string());
        let mut order: Vec<usize> = (0..v.ports.len()).filter(|&p| p != from_port).collect();
        order.sort_by_key(|&p| Self::port_key(&v.ports[p], p));
        for p in order {
            out.push('|');
            match v.ports[p] {
                BallPort::Virtual => out.push('-'),
                BallPort::Cut { .. } => out.push('?'),
                BallPort::Internal { index, color } => {
                    if let Some(c) = color {
                        out.push_str(&c.to_string());
                        out.push(':');
                    }
                    if depth_left == 0 {
                        out.push('?');
                    } else {
                        // find the port of `index` that points back to v
                        let back = self.vertices[index]
                            .ports
                            .iter()
                            .position(|q| matches!(q, BallPort::Internal { index: j, .. } if *j == i))
                            .unwrap_or(usize::MAX);
                        self.ser(index, back, depth_left - 1, out);
                    }
                }
            }
        }
        out.push(']');
    }
}

/// Build the radius-t ball around `center` from a port table.
pub fn build_ball(
    ports: &[Vec<Port>],
    center: usize,
    radius: usize,
    ids: &[u64],
    n_announced: usize,
) -> BallView {
    let delta = ports[center].len();
    let mut index_of: HashMap<usize, usize> = HashMap::new();
    let mut vertices: Vec<BallVertex> = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    index_of.insert(center, 0);
    order.push(center);
    vertices.push(BallVertex {
        id: ids[center],
        dist: 0,
        global: center,
        ports: Vec::new(),
    });
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        let dv = vertices[head].dist;
        head += 1;
        if dv == radius {
            continue;
        }
        for port in &ports[v] {
            if let Port::Real { neighbor, .. } = *port {
                if !index_of.contains_key(&neighbor) {
                    index_of.insert(neighbor, vertices.len());
                    order.push(neighbor);
                    vertices.push(BallVertex {
                        id: ids[neighbor],
                        dist: dv + 1,
                        global: neighbor,
                        ports: Vec::new(),
                    });
                }
            }
        }
    }
    for (bi, &v) in order.iter().enumerate() {
        let mut bports = Vec::with_capacity(delta);
        for port in &ports[v] {
            bports.push(match *port {
                Port::Virtual => BallPort::Virtual,
                Port::Real {
                    neighbor, color, ..
                } => match index_of.get(&neighbor) {
                    Some(&j) => BallPort::Internal { index: j, color },
                    None => BallPort::Cut { color },
                },
            });
        }
        vertices[bi].ports = bports;
    }
    BallView {
        delta,
        radius,
        n: n_announced,
        vertices,
        rand: Vec::new(),
    }
}

/// A deterministic local algorithm with identifiers.
pub struct LocalAlgorithm {
    pub name: String,
    /// Ball radius as a function of (announced) n.
    pub radius: Box<dyn Fn(usize) -> usize + Send + Sync>,
    /// Output: Δ labels in the center's port order.
    pub eval: Box<dyn Fn(&BallView) -> Vec<Label> + Send + Sync>,
}

/// One evaluation step of a uniform algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniformStep {
    Output(Vec<Label>),
    NeedMore,
}

/// A uniform (coding-radius) algorithm.
pub struct UniformAlgorithm {
    pub name: String,
    pub eval: Box<dyn Fn(&BallView) -> UniformStep + Send + Sync>,
}

/// Identifier source for deterministic runs.
pub enum Ids {
    Explicit(Vec<u64>),
    /// Injective uniform sample from [n^exponent].
    Seeded { seed: u64, exponent: u32 },
}

/// Execution record: radius used, coding radii (uniform), failures.
#[derive(Debug, Clone)]
pub struct RunStats {
    pub n: usize,
    pub radius: usize,
    pub coding_radii: Option<Vec<usize>>,
    /// Vertices that never produced output under the radius cap.
    pub non_terminated: Vec<usize>,
    pub validity: Option<ValidityReport>,
    pub wall_ms: f64,
    pub seed: Option<u64>,
}

/// Draw injective identifiers for `n` vertices.
pub fn make_ids(n: usize, ids: &Ids) -> Result<Vec<u64>> {
    match ids {
        Ids::Explicit(v) => {
            if v.len() != n {
                return Err(Error::ArityMismatch(format!(
                    "{} ids for {n} vertices",
                    v.len()
                )));
            }
            let mut sorted = v.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("identifiers must be injective"));
            }
            Ok(v.clone())
        }
        Ids::Seeded { seed, exponent } => {
            let space = (n as u128).saturating_pow(*exponent).max(n as u128);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut used = std::collections::HashSet::new();
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let x = (rng.gen::<u128>() % space) as u64;
                if used.insert(x) {
                    out.push(x);
                }
            }
            Ok(out)
        }
    }
}

/// Run a local algorithm on every vertex of an instance.
pub fn run_local(
    alg: &LocalAlgorithm,
    problem: Option<&LclProblem>,
    ports: &[Vec<Port>],
    ids: &Ids,
    n_override: Option<usize>,
) -> Result<(HalfEdgeLabeling, RunStats)> {
    let start = Instant::now();
    let n = ports.len();
    let n_announced = n_override.unwrap_or(n);
    let id_vec = make_ids(n, ids)?;
    let radius = (alg.radius)(n_announced);
    let mut labels = Vec::with_capacity(n);
    for v in 0..n {
        let ball = build_ball(ports, v, radius, &id_vec, n_announced);
        let out = (alg.eval)(&ball);
        if out.len() != ports[v].len() {
            return Err(Error::ArityMismatch(format!(
                "algorithm `{}` returned {} labels at vertex {v}",
                alg.name,
                out.len()
            )));
        }
        labels.push(out);
    }
    let labeling = HalfEdgeLabeling::new(labels);
    let validity = match problem {
        Some(p) => Some(validate_labeling(p, ports, &labeling)?),
        None => None,
    };
    let seed = match ids {
        Ids::Seeded { seed, .. } => Some(*seed),
        _ => None,
    };
    Ok((
        labeling,
        RunStats {
            n,
            radius,
            coding_radii: None,
            non_terminated: Vec::new(),
            validity,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            seed,
        },
    ))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The r-th random chunk of vertex v under a run seed: a documented
/// splittable scheme, so that streams extend consistently with radius.
pub fn rand_chunk(seed: u64, vertex: usize, r: usize) -> u64 {
    splitmix64(seed ^ splitmix64(vertex as u64 ^ splitmix64(r as u64 ^ 0xa5a5_5a5a_dead_beef)))
}

/// Run a uniform algorithm: grow each vertex's ball until it outputs or
/// the radius cap is hit.
pub fn run_uniform(
    alg: &UniformAlgorithm,
    problem: Option<&LclProblem>,
    ports: &[Vec<Port>],
    seed: u64,
    radius_cap: usize,
) -> Result<(HalfEdgeLabeling, RunStats)> {
    let start = Instant::now();
    let n = ports.len();
    let delta = ports.first().map(|p| p.len()).unwrap_or(0);
    // uniform algorithms see random strings, not ids; id field carries the
    // vertex index for engine traceability
    let id_vec: Vec<u64> = (0..n as u64).collect();
    let mut labels = vec![vec![0 as Label; delta]; n];
    let mut coding_radii = vec![0usize; n];
    let mut non_terminated = Vec::new();
    for v in 0..n {
        let mut done = false;
        for r in 0..=radius_cap {
            let mut ball = build_ball(ports, v, r, &id_vec, n);
            ball.rand = ball
                .vertices
                .iter()
                .map(|bv| (0..=r).map(|ch| rand_chunk(seed, bv.global, ch)).collect())
                .collect();
            match (alg.eval)(&ball) {
                UniformStep::Output(out) => {
                    if out.len() != delta {
                        return Err(Error::ArityMismatch(format!(
                            "algorithm `{}` returned {} labels at vertex {v}",
                            alg.name,
                            out.len()
                        )));
                    }
                    labels[v] = out;
                    coding_radii[v] = r;
                    done = true;
                    break;
                }
                UniformStep::NeedMore => {}
            }
        }
        if !done {
            non_terminated.push(v);
            coding_radii[v] = radius_cap + 1;
        }
    }
    let labeling = HalfEdgeLabeling::new(labels);
    let validity = match problem {
        Some(p) if non_terminated.is_empty() => Some(validate_labeling(p, ports, &labeling)?),
        _ => None,
    };
    Ok((
        labeling,
        RunStats {
            n,
            radius: radius_cap,
            coding_radii: Some(coding_radii),
            non_terminated,
            validity,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            seed: Some(seed),
        },
    ))
}

/// Failure-rate estimate with a Clopper–Pearson 95% interval.
#[derive(Debug, Clone, Copy)]
pub struct FailureEstimate {
    pub trials: usize,
    pub failures: usize,
    pub rate: f64,
    pub lo: f64,
    pub hi: f64,
}

fn binom_cdf(k: usize, n: usize, p: f64) -> f64 {
    // P(X <= k); stable enough at desk scale via log terms
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if k >= n { 1.0 } else { 0.0 };
    }
    let mut log_c = 0.0f64; // log C(n, i), i = 0
    let mut total = 0.0f64;
    for i in 0..=k {
        let log_term = log_c + (i as f64) * p.ln() + ((n - i) as f64) * (1.0 - p).ln();
        total += log_term.exp();
        log_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    total.min(1.0)
}

/// 95% Clopper–Pearson bounds for `failures` out of `trials`.
pub fn clopper_pearson(failures: usize, trials: usize) -> (f64, f64) {
    let alpha = 0.05;
    let lo = if failures == 0 {
        0.0
    } else {
        bisect(|p| 1.0 - binom_cdf(failures - 1, trials, p) - alpha / 2.0)
    };
    let hi = if failures == trials {
        1.0
    } else {
        bisect(|p| alpha / 2.0 - binom_cdf(failures, trials, p))
    };
    (lo, hi)
}

fn bisect(f: impl Fn(f64) -> f64) -> f64 {
    // f is increasing in p; find the zero in [0, 1]
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Run `trials` labeling attempts and estimate the failure probability.
/// `attempt(trial_index)` returns whether the produced labeling FAILED.
pub fn estimate_failure(
    trials: usize,
    mut attempt: impl FnMut(usize) -> Result<bool>,
) -> Result<FailureEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let mut failures = 0;
    for t in 0..trials {
        if attempt(t)? {
            failures += 1;
        }
    }
    let (lo, hi) = clopper_pearson(failures, trials);
    Ok(FailureEstimate {
        trials,
        failures,
        rate: failures as f64 / trials as f64,
        lo,
        hi,
    })
}

/// Radius bound for running algorithm 2 on the output of algorithm 1:
/// t1((ε/2) / Δ^{t2(ε/2)+1}) + t2(ε/2).
pub fn compose_tail_bound(
    t1: &dyn Fn(f64) -> f64,
    t2: &dyn Fn(f64) -> f64,
    delta: usize,
    eps: f64,
) -> f64 {
    let half = eps / 2.0;
    let r2 = t2(half);
    t1(half / (delta as f64).powf(r2 + 1.0)) + r2
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(mut x: u64) -> u64 {
    while !is_prime(x) {
        x += 1;
    }
    x
}

/// Palette-reduction schedule for Linial coloring, from an id space of
/// size `m0` down to at most `3Δ²`: polynomial steps (d, q) while they
/// shrink the palette, then one class-removal round per excess color.
fn linial_schedule(delta: usize, m0: u128) -> (Vec<(usize, u64)>, usize, u128) {
    let target = 3 * (delta as u128) * (delta as u128);
    let mut m = m0;
    let mut steps = Vec::new();
    loop {
        let mut best: Option<(usize, u64)> = None;
        for d in 1..=64usize {
            let mut q = next_prime((delta * d + 1) as u64);
            while (q as u128).checked_pow(d as u32 + 1).map(|v| v < m).unwrap_or(false) {
                q = next_prime(q + 1);
            }
            let new_m = (q as u128) * (q as u128);
            if new_m < m && best.map(|(_, bq)| q < bq).unwrap_or(true) {
                best = Some((d, q));
            }
        }
        match best {
            Some((d, q)) => {
                steps.push((d, q));
                m = (q as u128) * (q as u128);
            }
            None => break,
        }
        if m <= target {
            break;
        }
    }
    let class_rounds = if m > target { (m - target) as usize } else { 0 };
    (steps, class_rounds, m)
}

/// Linial-style deterministic proper coloring with at most 3Δ² colors in
/// log*-scale rounds: iterated polynomial palette reduction followed by
/// one-class-per-round cleanup. Requires ids < n³ (the default id space).
pub fn linial_coloring(delta: usize) -> LocalAlgorithm {
    let radius = move |n: usize| {
        let (steps, class_rounds, _) = linial_schedule(delta, (n as u128).pow(3).max(2));
        steps.len() + class_rounds
    };
    let eval = move |ball: &BallView| -> Vec<Label> {
        let n = ball.n;
        let (steps, class_rounds, mut m) = linial_schedule(delta, (n as u128).pow(3).max(2));
        let total = steps.len() + class_rounds;
        let mut color: Vec<u128> = ball.vertices.iter().map(|v| v.id as u128).collect();
        let mut round = 0usize;
        for &(d, q) in &steps {
            round += 1;
            let qq = q as u128;
            let eval_poly = |c: u128, x: u64| -> u64 {
                let mut acc: u64 = 0;
                let mut c = c;
                let mut xp: u64 = 1;
                for _ in 0..=d {
                    let coef = (c % qq) as u64;
                    acc = (acc + coef % q * (xp % q)) % q;
                    c /= qq;
                    xp = xp * (x % q) % q;
                }
                acc
            };
            let mut next = color.clone();
            for (i, v) in ball.vertices.iter().enumerate() {
                if v.dist + round > ball.radius {
                    continue;
                }
                let nbr_colors: Vec<u128> = ball.neighbors(i).map(|j| color[j]).collect();
                let mut chosen = None;
                for x in 0..q {
                    let own = eval_poly(color[i], x);
                    if nbr_colors.iter().all(|&c| eval_poly(c, x) != own) {
                        chosen = Some((x as u128) * qq + own as u128);
                        break;
                    }
                }
                next[i] = chosen.expect("q > delta * d guarantees a good point");
            }
            color = next;
            m = qq * qq;
        }
        for j in 0..class_rounds {
            round += 1;
            let class = m - 1 - j as u128;
            let mut next = color.clone();
            for (i, v) in ball.vertices.iter().enumerate() {
                if v.dist + round > ball.radius || color[i] != class {
                    continue;
                }
                let nbr_colors: Vec<u128> = ball.neighbors(i).map(|j| color[j]).collect();
                let c = (0..=delta as u128)
                    .find(|c| !nbr_colors.contains(c))
                    .expect("at most delta neighbors");
                next[i] = c;
            }
            color = next;
        }
        debug_assert_eq!(round, total);
        let c = color[0];
        debug_assert!(c < 3 * (delta as u128) * (delta as u128));
        vec![c as Label; ball.delta]
    };
    LocalAlgorithm {
        name: format!("linial_coloring_d{delta}"),
        radius: Box::new(radius),
        eval: Box::new(eval),
    }
}

/// Labels used by [`luby_mis`] outputs: every port of an MIS vertex gets
/// `MIS_IN`, every other vertex `MIS_OUT`.
pub const MIS_IN: Label = 0;
pub const MIS_OUT: Label = 1;

/// Luby's maximal independent set as a uniform algorithm: in each round
/// the local maxima (by fresh random priority) join, neighbors drop out.
/// A vertex outputs once its own status is decided within the ball.
pub fn luby_mis(_delta: usize) -> UniformAlgorithm {
    let eval = move |ball: &BallView| -> UniformStep {
        let nv = ball.vertices.len();
        #[derive(Clone, Copy, PartialEq)]
        enum St {
            Undecided,
            In,
            Out,
        }
        // None = this vertex's status can no longer be derived from the
        // visible ball; the known zone shrinks toward the center each
        // round. Self-loops are ignored throughout.
        let mut st: Vec<Option<St>> = vec![Some(St::Undecided); nv];
        let radius = ball.radius;
        let nbrs =
            |i: usize| ball.neighbors(i).filter(move |&j| j != i);
        for r in 1..=radius {
            let prio = |i: usize| -> (u64, u64) {
                (ball.rand[i].get(r - 1).copied().unwrap_or(0), ball.vertices[i].id)
            };
            // joined[i]: Some(true/false) when decidable from the ball
            let mut joined: Vec<Option<bool>> = vec![None; nv];
            for i in 0..nv {
                match st[i] {
                    Some(St::In) | Some(St::Out) => joined[i] = Some(false),
                    Some(St::Undecided) => {
                        if ball.vertices[i].dist < radius
                            && nbrs(i).all(|j| st[j].is_some())
                        {
                            let mine = prio(i);
                            joined[i] = Some(
                                nbrs(i)
                                    .filter(|&j| st[j] == Some(St::Undecided))
                                    .all(|j| prio(j) < mine),
                            );
                        }
                    }
                    None => {}
                }
            }
            let mut next = st.clone();
            for i in 0..nv {
                if st[i] != Some(St::Undecided) {
                    continue;
                }
                next[i] = match joined[i] {
                    Some(true) => Some(St::In),
                    Some(false) => {
                        if ball.vertices[i].dist < radius
                            && nbrs(i).all(|j| joined[j].is_some())
                        {
                            if nbrs(i).any(|j| joined[j] == Some(true)) {
                                Some(St::Out)
                            } else {
                                Some(St::Undecided)
                            }
                        } else if nbrs(i).any(|j| joined[j] == Some(true)) {
                            Some(St::Out)
                        } else {
                            None
                        }
                    }
                    None => None,
                };
            }
            st = next;
            match st[0] {
                Some(St::In) => return UniformStep::Output(vec![MIS_IN; ball.delta]),
                Some(St::Out) => return UniformStep::Output(vec![MIS_OUT; ball.delta]),
                _ => {}
            }
            if st[0].is_none() {
                break;
            }
        }
        UniformStep::NeedMore
    };
    UniformAlgorithm {
        name: "luby_mis".to_string(),
        eval: Box::new(eval),
    }
}

/// Check that a labeling produced by [`luby_mis`] is an independent and
/// maximal set (direct semantic check, not an LCL).
pub fn mis_ok(ports: &[Vec<Port>], labeling: &HalfEdgeLabeling) -> bool {
    let is_in = |v: usize| labeling.labels[v][0] == MIS_IN;
    for (u, uports) in ports.iter().enumerate() {
        let mut has_in_neighbor = false;
        for port in uports {
            if let Port::Real { neighbor, .. } = *port {
                if is_in(neighbor) {
                    has_in_neighbor = true;
                }
                if is_in(u) && is_in(neighbor) && neighbor != u {
                    return false; // not independent
                }
            }
        }
        if !is_in(u) && !has_in_neighbor {
            return false; // not maximal
        }
    }
    true
}

/// A local algorithm given by a table from canonical ball keys to labels
/// in canonical center-port order. Missing keys fall back to `default`
/// when present, else panic (tables must be total for their use).
pub struct LookupTable {
    pub radius: usize,
    pub table: HashMap<String, Vec<Label>>,
    pub default: Option<Vec<Label>>,
}

impl LookupTable {
    pub fn into_algorithm(self, name: impl Into<String>) -> LocalAlgorithm {
        let name = name.into();
        let radius = self.radius;
        let table = self.table;
        let default = self.default;
        let eval = move |ball: &BallView| -> Vec<Label> {
            let key = ball.canonical_key();
            let canon = table
                .get(&key)
                .cloned()
                .or_else(|| default.clone())
                .unwrap_or_else(|| panic!("lookup table has no entry for ball {key}"));
            // map canonical-order outputs back to the center's port order
            let order = ball.canonical_center_order();
            let mut out = vec![0 as Label; canon.len()];
            for (canon_pos, &port) in order.iter().enumerate() {
                out[port] = canon[canon_pos];
            }
            out
        };
        LocalAlgorithm {
            name,
            radius: Box::new(move |_| radius),
            eval: Box::new(eval),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let blob = serde_json::json!({
            "radius": self.radius,
            "default": self.default,
            "table": self.table.iter().collect::<std::collections::BTreeMap<_, _>>(),
        });
        Ok(serde_json::to_string_pretty(&blob)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Blob {
            radius: usize,
            default: Option<Vec<Label>>,
            table: HashMap<String, Vec<Label>>,
        }
        let blob: Blob = serde_json::from_str(text)?;
        Ok(LookupTable {
            radius: blob.radius,
            table: blob.table,
            default: blob.default,
        })
    }
}

/// q-quantile (0 ≤ q ≤ 1) of a slice, by sorting a copy.
pub fn quantile(values: &[usize], q: f64) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let idx = ((v.len() as f64 - 1.0) * q).ceil() as usize;
    v[idx.min(v.len() - 1)]
}
