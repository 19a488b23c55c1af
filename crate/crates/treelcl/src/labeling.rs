//! Half-edge labelings and validity checking.

use crate::instance::Port;
use crate::problem::{Label, LclProblem};
use crate::{Error, Result};

/// A total labeling: one label per port (real and virtual) per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdgeLabeling {
    /// `labels[v][p]` is the label on port `p` of vertex `v`.
    pub labels: Vec<Vec<Label>>,
}

impl HalfEdgeLabeling {
    pub fn new(labels: Vec<Vec<Label>>) -> Self {
        HalfEdgeLabeling { labels }
    }

    pub fn get(&self, v: usize, p: usize) -> Label {
        self.labels[v][p]
    }
}

/// Outcome of validity checking: every violated vertex and edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub ok: bool,
    /// Vertices whose port multiset is not an allowed configuration.
    pub vertex_violations: Vec<usize>,
    /// Real edges (u, port_u, v, port_v) whose label pair is not allowed.
    pub edge_violations: Vec<(usize, usize, usize, usize)>,
}

impl ValidityReport {
    fn from_lists(
        vertex_violations: Vec<usize>,
        edge_violations: Vec<(usize, usize, usize, usize)>,
    ) -> Self {
        ValidityReport {
            ok: vertex_violations.is_empty() && edge_violations.is_empty(),
            vertex_violations,
            edge_violations,
        }
    }
}

/// Check a labeling against a problem on any instance given by its port
/// table. Virtual ports participate in vertex constraints only.
pub fn validate_labeling(
    problem: &LclProblem,
    ports: &[Vec<Port>],
    labeling: &HalfEdgeLabeling,
) -> Result<ValidityReport> {
    if labeling.labels.len() != ports.len() {
        return Err(Error::ArityMismatch(format!(
            "labeling covers {} vertices, instance has {}",
            labeling.labels.len(),
            ports.len()
        )));
    }
    let sigma = problem.label_count() as Label;
    for (v, row) in labeling.labels.iter().enumerate() {
        if row.len() != problem.delta || ports[v].len() != problem.delta {
            return Err(Error::ArityMismatch(format!(
                "vertex {v}: expected {} ports",
                problem.delta
            )));
        }
        if let Some(&l) = row.iter().find(|&&l| l >= sigma) {
            return Err(Error::UnknownLabel(format!("label id {l} at vertex {v}")));
        }
    }
    let mut vertex_violations = Vec::new();
    for (v, row) in labeling.labels.iter().enumerate() {
        if !problem.vertex_ok(row) {
            vertex_violations.push(v);
        }
    }
    let mut edge_violations = Vec::new();
    for (u, uports) in ports.iter().enumerate() {
        for (pu, port) in uports.iter().enumerate() {
            if let Port::Real {
                neighbor: v,
                back_port: pv,
                color,
            } = *port
            {
                if (u, pu) >= (v, pv) {
                    continue; // each edge once
                }
                if problem.is_edge_colored() && color.is_none() {
                    return Err(Error::invalid(
                        "edge-colored problem on an instance without edge colors",
                    ));
                }
                let a = labeling.get(u, pu);
                let b = labeling.get(v, pv);
                if !problem.edge_ok(a, b, color.map(|c| c as usize))? {
                    edge_violations.push((u, pu, v, pv));
                }
            }
        }
    }
    Ok(ValidityReport::from_lists(vertex_violations, edge_violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_tree, RegularTree, TreeKind};
    use crate::problem::{perfect_matching, proper_coloring};

    #[test]
    fn two_vertex_coloring() {
        let p = proper_coloring(3, 3).unwrap();
        let t = gen_tree(TreeKind::Path { n: 2 }, 3, 0).unwrap();
        let good = HalfEdgeLabeling::new(vec![vec![0, 0, 0], vec![1, 1, 1]]);
        let rep = validate_labeling(&p, &t.ports, &good).unwrap();
        assert!(rep.ok);
        let bad = HalfEdgeLabeling::new(vec![vec![0, 0, 0], vec![0, 0, 0]]);
        let rep = validate_labeling(&p, &t.ports, &bad).unwrap();
        assert!(!rep.ok);
        assert!(rep.vertex_violations.is_empty());
        assert_eq!(rep.edge_violations.len(), 1);
    }

    #[test]
    fn matching_on_star() {
        let p = perfect_matching(3).unwrap();
        let t = RegularTree::from_edges(3, 4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let m = p.label_index("M").unwrap();
        let u = p.label_index("U").unwrap();
        // center matches child 1 (its port 0); children 2 and 3 put M on a
        // virtual port (their real port is port 0, so M goes on port 1)
        let good = HalfEdgeLabeling::new(vec![
            vec![m, u, u],
            vec![m, u, u],
            vec![u, m, u],
            vec![u, m, u],
        ]);
        assert!(validate_labeling(&p, &t.ports, &good).unwrap().ok);
        // center matching nobody is a vertex violation (config all-U)
        let bad = HalfEdgeLabeling::new(vec![
            vec![u, u, u],
            vec![m, u, u],
            vec![u, m, u],
            vec![u, m, u],
        ]);
        let rep = validate_labeling(&p, &t.ports, &bad).unwrap();
        assert!(!rep.ok);
        assert!(rep.vertex_violations.contains(&0));
    }

    #[test]
    fn arity_and_label_errors() {
        let p = proper_coloring(3, 3).unwrap();
        let t = gen_tree(TreeKind::Path { n: 2 }, 3, 0).unwrap();
        let short = HalfEdgeLabeling::new(vec![vec![0, 0], vec![0, 0, 0]]);
        assert!(validate_labeling(&p, &t.ports, &short).is_err());
        let bad_label = HalfEdgeLabeling::new(vec![vec![0, 0, 9], vec![0, 0, 0]]);
        assert!(validate_labeling(&p, &t.ports, &bad_label).is_err());
    }
}
