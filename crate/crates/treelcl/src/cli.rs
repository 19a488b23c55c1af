//! Command-line surface: one subcommand per capability, with stable
//! exit codes.
//!
//! * 0 — affirmative result (valid, Full, decided, refutation found,
//!   run completed),
//! * 1 — negative result (invalid labeling, not Full, inconclusive,
//!   improper output), with a JSON report on stdout,
//! * 2 — usage or input error,
//! * 3 — a resource cap rejected the request.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ellfull::find_ell_full;
use crate::forest::{
    coding_radius_profile, matching_json, one_ended_forest, orientation_dot, orientation_json,
    pm2_from_forest, profile_csv, stats_csv, vizing3_edge_color, ForestInstance,
};
use crate::instance::{gen_config_model, gen_tree, MultiGraph, Port, RegularTree, TreeKind};
use crate::io;
use crate::labeling::validate_labeling;
use crate::marksgame::{
    build_cycle_id_graph, build_id_graph, k4_id_graph, refute_algorithm, solve_game_with_labels,
    GameSpec, IdGraph, Player, Refutation,
};
use crate::playability::{decide_playability, PlayabilityVerdict};
use crate::problem::make_builtin;
use crate::rcsolver::solve_from_ell_full;
use crate::sim::LookupTable;
use crate::{Error, Result};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "treelcl", version = SCHEMA_VERSION, about = "LCL problems on Δ-regular trees")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenWhat {
    Tree,
    Graph,
    Problem,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeShape {
    Random,
    Complete,
    Path,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    Random,
    Cycle,
    K4,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance or a builtin problem as JSON.
    Gen {
        #[arg(long, value_enum)]
        what: GenWhat,
        #[arg(long, value_enum, default_value = "random")]
        shape: TreeShape,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value = "3")]
        delta: usize,
        /// Required whenever the generator is randomized.
        #[arg(long)]
        seed: Option<u64>,
        /// Builtin problem name (what = problem).
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a labeling against a problem on an instance.
    Check {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Find the smallest full subset certificate up to --max-ell.
    Ellfull {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value = "8")]
        max_ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a problem on a tree via its full-subset certificate.
    Solve {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "8")]
        max_ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a problem is playable.
    Playability {
        #[arg(long)]
        problem: PathBuf,
        /// Reject alphabets larger than this (subset masks are 2^Σ wide).
        #[arg(long, default_value = "10")]
        cap_sigma: usize,
    },
    /// Build a certified ID graph.
    Idgraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "3")]
        delta: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        gadget: Gadget,
        /// Reject exact independence-number computations above this size.
        #[arg(long, default_value = "120")]
        cap_mis: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one marks game exactly.
    Game {
        /// Lookup-table algorithm (JSON).
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        idgraph: PathBuf,
        #[arg(long)]
        alpha: usize,
        /// Root identifier.
        #[arg(long)]
        sigma: usize,
        /// Target output set as a bitmask over the labels.
        #[arg(long)]
        set: u16,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "6")]
        labels: usize,
    },
    /// Refute a radius-t algorithm against a problem over an ID graph.
    Refute {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        idgraph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the one-ended-forest construction.
    Forest {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "6")]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Distance-2 perfect matching from the forest orientation.
    Pm2 {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "6")]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Proper 4-edge-coloring for Δ = 3 from the forest orientation.
    Vizing3 {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "6")]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coding-radius quantiles of a forest run.
    UniformStats {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "6")]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        /// Comma-separated list of eps values.
        #[arg(long, default_value = "0.1,0.01,0.001")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An instance file is either a tree or a Δ-regular graph.
enum Inst {
    Tree(RegularTree),
    Graph(usize, MultiGraph),
}

impl Inst {
    fn load(path: &PathBuf) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        if let Ok(t) = io::tree_from_json(&text) {
            return Ok(Inst::Tree(t));
        }
        let (delta, g) = io::graph_from_json(&text)?;
        Ok(Inst::Graph(delta, g))
    }

    fn ports(&self) -> Result<Vec<Vec<Port>>> {
        match self {
            Inst::Tree(t) => Ok(t.ports.clone()),
            Inst::Graph(delta, g) => g.ports(*delta),
        }
    }

    fn forest_instance(&self) -> Result<ForestInstance> {
        match self {
            Inst::Tree(t) => ForestInstance::from_tree(t),
            Inst::Graph(delta, g) => ForestInstance::from_graph(g, *delta),
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn load_problem(path: &PathBuf) -> Result<crate::problem::LclProblem> {
    io::problem_from_json(&fs::read_to_string(path)?)
}

/// Parse argv and execute; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded(_) => 3,
                _ => 2,
            }
        }
    }
}

fn execute(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Gen {
            what,
            shape,
            n,
            depth,
            delta,
            seed,
            builtin,
            k,
            out,
        } => {
            let text = match what {
                GenWhat::Tree => {
                    let kind = match shape {
                        TreeShape::Random => TreeKind::Random {
                            n: n.ok_or_else(|| Error::invalid("--n required"))?,
                        },
                        TreeShape::Complete => TreeKind::Complete {
                            depth: depth.ok_or_else(|| Error::invalid("--depth required"))?,
                        },
                        TreeShape::Path => TreeKind::Path {
                            n: n.ok_or_else(|| Error::invalid("--n required"))?,
                        },
                    };
                    let seed = match shape {
                        TreeShape::Random => {
                            seed.ok_or_else(|| Error::invalid("--seed required for random trees"))?
                        }
                        _ => 0,
                    };
                    io::tree_to_json(&gen_tree(kind, delta, seed)?)?
                }
                GenWhat::Graph => {
                    let n = n.ok_or_else(|| Error::invalid("--n required"))?;
                    let seed =
                        seed.ok_or_else(|| Error::invalid("--seed required for random graphs"))?;
                    io::graph_to_json(delta, &gen_config_model(n, delta, seed)?)?
                }
                GenWhat::Problem => {
                    let name = builtin.ok_or_else(|| Error::invalid("--builtin required"))?;
                    let problem = if name == "hom_complete" {
                        // edge-colored homomorphism problem into K_k
                        let k = k.ok_or_else(|| Error::invalid("hom_complete requires --k"))?;
                        crate::homlcl::make_homomorphism_problem(
                            &crate::homlcl::TargetGraph::complete(k),
                            delta,
                        )?
                    } else {
                        make_builtin(&name, delta, k)?
                    };
                    io::problem_to_json(&problem)?
                }
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Cmd::Check {
            problem,
            instance,
            labeling,
        } => {
            let p = load_problem(&problem)?;
            let inst = Inst::load(&instance)?;
            let l = io::labeling_from_json(&p, &fs::read_to_string(labeling)?)?;
            let rep = validate_labeling(&p, &inst.ports()?, &l)?;
            println!(
                "{}",
                serde_json::json!({
                    "ok": rep.ok,
                    "vertex_violations": rep.vertex_violations,
                    "edge_violations": rep.edge_violations,
                })
            );
            Ok(if rep.ok { 0 } else { 1 })
        }
        Cmd::Ellfull {
            problem,
            max_ell,
            out,
        } => {
            let p = load_problem(&problem)?;
            match find_ell_full(&p, max_ell)? {
                Some(cert) => {
                    emit(&out, &serde_json::to_string_pretty(&cert)?)?;
                    Ok(0)
                }
                None => {
                    println!(
                        "{}",
                        serde_json::json!({ "verdict": "not_full", "max_ell": max_ell })
                    );
                    Ok(1)
                }
            }
        }
        Cmd::Solve {
            problem,
            instance,
            max_ell,
            out,
        } => {
            let p = load_problem(&problem)?;
            let Inst::Tree(tree) = Inst::load(&instance)? else {
                return Err(Error::invalid("solve needs a tree instance"));
            };
            match find_ell_full(&p, max_ell)? {
                Some(cert) => {
                    let labeling = solve_from_ell_full(&p, &cert, &tree)?;
                    let rep = validate_labeling(&p, &tree.ports, &labeling)?;
                    if !rep.ok {
                        return Err(Error::invalid("solver produced an invalid labeling"));
                    }
                    emit(&out, &io::labeling_to_json(&p, &labeling)?)?;
                    Ok(0)
                }
                None => {
                    println!(
                        "{}",
                        serde_json::json!({ "verdict": "not_full", "max_ell": max_ell })
                    );
                    Ok(1)
                }
            }
        }
        Cmd::Playability { problem, cap_sigma } => {
            let p = load_problem(&problem)?;
            if p.label_count() > cap_sigma {
                return Err(Error::cap(format!(
                    "alphabet size {} exceeds --cap-sigma {}",
                    p.label_count(),
                    cap_sigma
                )));
            }
            let res = decide_playability(&p)?;
            match &res.verdict {
                PlayabilityVerdict::Playable(bob) => {
                    let sets: Vec<Vec<u16>> = bob
                        .iter()
                        .map(|bm| {
                            bm.iter()
                                .enumerate()
                                .filter(|&(_, &b)| b)
                                .map(|(s, _)| s as u16)
                                .collect()
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({ "verdict": "playable", "bob_sets": sets })
                    );
                    Ok(0)
                }
                PlayabilityVerdict::NotPlayable(trace) => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "verdict": "not_playable",
                            "failing_tuples": trace.len(),
                        })
                    );
                    Ok(1)
                }
            }
        }
        Cmd::Idgraph {
            n,
            t,
            r,
            delta,
            seed,
            gadget,
            cap_mis,
            out,
        } => {
            if n > cap_mis && !matches!(gadget, Gadget::K4) {
                return Err(Error::cap(format!(
                    "exact independence number on n = {n} exceeds --cap-mis {cap_mis}"
                )));
            }
            let result = match gadget {
                Gadget::Random => build_id_graph(n, t, r, delta, seed),
                Gadget::Cycle => build_cycle_id_graph(n, delta, seed),
                Gadget::K4 => Ok(k4_id_graph()),
            };
            match result {
                Ok(h) => {
                    emit(&out, &h.to_json())?;
                    Ok(0)
                }
                Err(Error::RetryExhausted(msg)) => {
                    println!(
                        "{}",
                        serde_json::json!({ "verdict": "retry_exhausted", "detail": msg })
                    );
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Cmd::Game {
            alg,
            idgraph,
            alpha,
            sigma,
            set,
            t,
            labels,
        } => {
            let table = LookupTable::from_json(&fs::read_to_string(alg)?)?;
            let algorithm = table.into_algorithm("lookup");
            let h = IdGraph::from_json(&fs::read_to_string(idgraph)?)?;
            let spec = GameSpec {
                algorithm: &algorithm,
                id_graph: &h,
                alpha,
                sigma,
                s: set,
                t,
            };
            let outcome = solve_game_with_labels(&spec, labels)?;
            println!(
                "{}",
                serde_json::json!({
                    "winner": match outcome.winner {
                        Player::Alice => "alice",
                        Player::Bob => "bob",
                    },
                    "strategy_positions": outcome.strategy.len(),
                })
            );
            Ok(0)
        }
        Cmd::Refute {
            alg,
            problem,
            idgraph,
            t,
            out,
        } => {
            let table = LookupTable::from_json(&fs::read_to_string(alg)?)?;
            let algorithm = table.into_algorithm("lookup");
            let p = load_problem(&problem)?;
            let h = IdGraph::from_json(&fs::read_to_string(idgraph)?)?;
            let refutation = refute_algorithm(&algorithm, &p, &h, t)?;
            let inconclusive = matches!(refutation, Refutation::Inconclusive { .. });
            emit(&out, &refutation.to_json())?;
            Ok(if inconclusive { 1 } else { 0 })
        }
        Cmd::Forest {
            instance,
            rounds,
            seed,
            out,
            stats,
            dot,
        } => {
            let inst = Inst::load(&instance)?.forest_instance()?;
            let st = one_ended_forest(&inst, rounds, seed)?;
            if let Some(path) = stats {
                fs::write(path, stats_csv(&st))?;
            }
            if let Some(path) = dot {
                fs::write(path, orientation_dot(&st, &inst))?;
            }
            emit(&out, &orientation_json(&st))?;
            Ok(0)
        }
        Cmd::Pm2 {
            instance,
            rounds,
            seed,
            out,
        } => {
            let inst = Inst::load(&instance)?.forest_instance()?;
            let st = one_ended_forest(&inst, rounds, seed)?;
            let m = pm2_from_forest(&st, &inst)?;
            emit(&out, &matching_json(&m))?;
            eprintln!(
                "residue: {} of {} vertices",
                m.residue_count(),
                inst.n
            );
            Ok(0)
        }
        Cmd::Vizing3 {
            instance,
            rounds,
            seed,
            out,
        } => {
            let inst = Inst::load(&instance)?.forest_instance()?;
            let st = one_ended_forest(&inst, rounds, seed)?;
            match vizing3_edge_color(&st, &inst) {
                Ok(c) => {
                    emit(&out, &serde_json::json!({ "colors": c.colors }).to_string())?;
                    Ok(0)
                }
                Err(e) => {
                    println!(
                        "{}",
                        serde_json::json!({ "verdict": "failed", "detail": e.to_string() })
                    );
                    Ok(1)
                }
            }
        }
        Cmd::UniformStats {
            instance,
            rounds,
            seed,
            eps,
            out,
        } => {
            let inst = Inst::load(&instance)?.forest_instance()?;
            let st = one_ended_forest(&inst, rounds, seed)?;
            let eps: std::result::Result<Vec<f64>, _> =
                eps.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let eps = eps.map_err(|_| Error::invalid("bad --eps list"))?;
            let profile = coding_radius_profile(&st, &inst, &eps)?;
            emit(&out, &profile_csv(&profile))?;
            Ok(0)
        }
    }
}
