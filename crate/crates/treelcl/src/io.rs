//! JSON file formats for problems, instances, and labelings, plus DOT
//! export.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::instance::{MultiGraph, Port, RegularTree};
use crate::labeling::HalfEdgeLabeling;
use crate::problem::{EdgeConfig, EdgeMode, LclProblem};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ProblemFile {
    delta: usize,
    alphabet: Vec<String>,
    vertex_configs: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_configs: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_configs_by_color: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

pub fn problem_to_json(problem: &LclProblem) -> Result<String> {
    let names = |cfg: &[u8]| -> Vec<String> {
        cfg.iter().map(|&l| problem.label_name(l).to_string()).collect()
    };
    let edge_names = |set: &BTreeSet<EdgeConfig>| -> Vec<Vec<String>> {
        set.iter().map(|e| names(&e[..])).collect()
    };
    let file = ProblemFile {
        delta: problem.delta,
        alphabet: problem.alphabet.clone(),
        vertex_configs: problem.vertex_configs.iter().map(|c| names(c)).collect(),
        edge_configs: match &problem.edges {
            EdgeMode::Uncolored(set) => Some(edge_names(set)),
            EdgeMode::EdgeColored(_) => None,
        },
        edge_configs_by_color: match &problem.edges {
            EdgeMode::Uncolored(_) => None,
            EdgeMode::EdgeColored(per) => Some(per.iter().map(edge_names).collect()),
        },
        name: Some(problem.name.clone()),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn problem_from_json(text: &str) -> Result<LclProblem> {
    let file: ProblemFile = serde_json::from_str(text)?;
    let index = |name: &str| -> Result<u8> {
        file.alphabet
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    };
    let parse_edges = |list: &[Vec<String>]| -> Result<BTreeSet<EdgeConfig>> {
        let mut set = BTreeSet::new();
        for pair in list {
            if pair.len() != 2 {
                return Err(Error::ArityMismatch(format!("edge config {pair:?}")));
            }
            let a = index(&pair[0])?;
            let b = index(&pair[1])?;
            set.insert(crate::problem::canonical_edge(a, b));
        }
        Ok(set)
    };
    let edges = match (&file.edge_configs, &file.edge_configs_by_color) {
        (Some(list), None) => EdgeMode::Uncolored(parse_edges(list)?),
        (None, Some(per)) => {
            let mut sets = Vec::new();
            for list in per {
                sets.push(parse_edges(list)?);
            }
            EdgeMode::EdgeColored(sets)
        }
        _ => {
            return Err(Error::invalid(
                "exactly one of edge_configs / edge_configs_by_color required",
            ))
        }
    };
    let mut vertex_configs = Vec::new();
    for cfg in &file.vertex_configs {
        let mut c = Vec::with_capacity(cfg.len());
        for name in cfg {
            c.push(index(name)?);
        }
        vertex_configs.push(c);
    }
    LclProblem::new(
        file.name.unwrap_or_else(|| "problem".to_string()),
        file.delta,
        file.alphabet,
        vertex_configs,
        edges,
    )
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    delta: usize,
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_colors: Option<Vec<u8>>,
}

pub fn tree_to_json(tree: &RegularTree) -> Result<String> {
    let edges = tree.edges();
    let file = GraphFile {
        delta: tree.delta,
        vertices: tree.n(),
        edges: edges.iter().map(|&(u, _, v, _, _)| (u, v)).collect(),
        edge_colors: Some(
            edges
                .iter()
                .map(|&(_, _, _, _, c)| c.unwrap_or(0))
                .collect(),
        ),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn tree_from_json(text: &str) -> Result<RegularTree> {
    let file: GraphFile = serde_json::from_str(text)?;
    RegularTree::from_edges(file.delta, file.vertices, &file.edges)
}

pub fn graph_to_json(delta: usize, graph: &MultiGraph) -> Result<String> {
    let file = GraphFile {
        delta,
        vertices: graph.n,
        edges: graph.edges.clone(),
        edge_colors: graph.colors.clone(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Returns (delta, graph).
pub fn graph_from_json(text: &str) -> Result<(usize, MultiGraph)> {
    let file: GraphFile = serde_json::from_str(text)?;
    let mut g = MultiGraph::new(file.vertices, file.edges)?;
    if let Some(colors) = file.edge_colors {
        g = g.with_colors(colors)?;
    }
    Ok((file.delta, g))
}

#[derive(Serialize, Deserialize)]
struct LabelingFile {
    labels: Vec<Vec<String>>,
}

pub fn labeling_to_json(problem: &LclProblem, labeling: &HalfEdgeLabeling) -> Result<String> {
    let file = LabelingFile {
        labels: labeling
            .labels
            .iter()
            .map(|row| row.iter().map(|&l| problem.label_name(l).to_string()).collect())
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn labeling_from_json(problem: &LclProblem, text: &str) -> Result<HalfEdgeLabeling> {
    let file: LabelingFile = serde_json::from_str(text)?;
    let mut labels = Vec::with_capacity(file.labels.len());
    for row in &file.labels {
        let mut out = Vec::with_capacity(row.len());
        for name in row {
            out.push(problem.label_index(name)?);
        }
        labels.push(out);
    }
    Ok(HalfEdgeLabeling::new(labels))
}

const DOT_COLORS: [&str; 6] = ["red", "blue", "green", "orange", "purple", "brown"];

/// DOT export for any instance given by its port table; edge colors show
/// up as DOT colors.
pub fn ports_to_dot(ports: &[Vec<Port>]) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..ports.len() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, uports) in ports.iter().enumerate() {
        for (pu, port) in uports.iter().enumerate() {
            if let Port::Real {
                neighbor: v,
                back_port: pv,
                color,
            } = *port
            {
                if (u, pu) < (v, pv) {
                    match color {
                        Some(c) => out.push_str(&format!(
                            "  {u} -- {v} [color={}];\n",
                            DOT_COLORS[c as usize % DOT_COLORS.len()]
                        )),
                        None => out.push_str(&format!("  {u} -- {v};\n")),
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_tree, TreeKind};
    use crate::problem::{perfect_matching, proper_coloring};

    #[test]
    fn problem_roundtrip() {
        for p in [proper_coloring(3, 3).unwrap(), perfect_matching(3).unwrap()] {
            let text = problem_to_json(&p).unwrap();
            let q = problem_from_json(&text).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn tree_roundtrip() {
        let t = gen_tree(TreeKind::Random { n: 50 }, 3, 3).unwrap();
        let text = tree_to_json(&t).unwrap();
        let u = tree_from_json(&text).unwrap();
        assert_eq!(t.n(), u.n());
        assert_eq!(
            t.edges()
                .iter()
                .map(|&(a, _, b, _, _)| (a, b))
                .collect::<Vec<_>>(),
            u.edges()
                .iter()
                .map(|&(a, _, b, _, _)| (a, b))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn labeling_roundtrip() {
        let p = proper_coloring(3, 3).unwrap();
        let l = HalfEdgeLabeling::new(vec![vec![0, 0, 0], vec![2, 2, 2]]);
        let text = labeling_to_json(&p, &l).unwrap();
        let m = labeling_from_json(&p, &text).unwrap();
        assert_eq!(l, m);
    }

    #[test]
    fn dot_output_mentions_edges() {
        let t = gen_tree(TreeKind::Path { n: 3 }, 3, 0).unwrap();
        let dot = ports_to_dot(&t.ports);
        assert!(dot.contains("0 -- 1"));
        assert!(dot.contains("graph G {"));
    }
}
