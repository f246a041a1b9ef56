//! Batch front door: parse group/graph/datum documents, run checks and
//! constructions, emit JSON verdicts and DOT drawings.
//!
//! Exit codes: 0 = check passed / construction succeeded, 1 = check
//! definitively failed, 2 = unknown (possible infinite triangle group),
//! 3 = validation error, 4 = resource cap exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use starret::construct::{
    amalgamify, harbater_paste, realize, realize_full_aut, subdivide_segment,
};
use starret::gog::{End, GraphOfGroups, Signature};
use starret::group::{
    alternating_group, cyclic_group, dihedral_group, direct_product, quaternion_group,
    symmetric_group,
};
use starret::io::{
    cover_spec_from_json, cover_spec_to_json, datum_from_json, graph_from_json, graph_to_dot,
    graph_to_json, group_from_json, virtual_report_to_json, witness_to_json,
};
use starret::ret::{
    exists_genus_g_system, hm_condition, mumford_schwarz_check, mumford_type_witness,
    virtual_mumford_type, TriangleStatus, DEFAULT_SEARCH_CAP,
};
use starret::{Error, FiniteGroup, Perm};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "starret", version, about = "Graph-of-groups cover calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON/DOT result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EndArg {
    Origin,
    Terminal,
}

#[derive(Subcommand)]
enum Command {
    /// Check the HM condition on a ramification datum document.
    CheckHm { datum: PathBuf },
    /// Search for a Mumford-type witness for a datum.
    CheckMumfordType {
        datum: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Search for a virtual Mumford-type certificate for a datum.
    CheckVirtual {
        datum: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Search for a genus-g generating system drawn from a datum.
    CheckGenusSystem {
        datum: PathBuf,
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Classify the product-one triple of a 3-class datum against
    /// PGL2 at the prime p.
    CheckMumfordSchwarz {
        datum: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Evaluate the branch point counting formula on a graph.
    BranchCount {
        graph: PathBuf,
        /// Stabilize the graph first.
        #[arg(long)]
        stabilize: bool,
    },
    /// Solve Riemann-Hurwitz for the cover genus.
    RhGenus {
        #[arg(long)]
        order: u64,
        #[arg(long, default_value_t = 0)]
        base_genus: u64,
        /// Comma-separated ramification orders, e.g. 2,2,3,3.
        #[arg(long, default_value = "")]
        signature: String,
    },
    /// The Hurwitz space dimension 3g - 3 + n.
    HurwitzDim {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        cusps: u64,
    },
    /// Contract admissible edges until the graph is stable.
    Stabilize { graph: PathBuf },
    /// Contract one edge (admissibly).
    Contract {
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
    },
    /// Slide one edge end by a conjugator from its vertex group.
    Slide {
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, value_enum)]
        end: EndArg,
        /// Conjugator in cycle notation, e.g. "(0 1 2)".
        #[arg(long)]
        conjugator: String,
    },
    /// Rewrite until the non-trivially labelled edges are acyclic.
    Amalgamify { graph: PathBuf },
    /// Build the subdivision chain for a segment of two cyclic groups.
    Subdivide {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        e_prime: u64,
        #[arg(long)]
        p: u64,
    },
    /// Realize a group as the deck group of a genus >= 2 cover.
    Realize {
        /// Built-in name (C6, D4, S3, A4, Q8, V4) or a group JSON path.
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Realize a group as the full automorphism group of a cover.
    RealizeFullAut {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        /// Raise genus by 2 instead of targeting genus 3.
        #[arg(long)]
        alternative: bool,
    },
    /// Paste two cover specs over a common deck group.
    Paste {
        spec1: PathBuf,
        spec2: PathBuf,
        #[arg(long)]
        group: String,
    },
    /// Render a graph (or a cover spec's graph) as DOT.
    ExportDot { input: PathBuf },
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn require_prime(p: u64) -> Result<(), Error> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Validation(format!("{} is not prime", p)))
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Validation(format!("{} is not valid JSON: {}", path.display(), e)))
}

/// Resolves a built-in group name or a path to a group document.
fn resolve_group(spec: &str) -> Result<FiniteGroup, Error> {
    let parse_n = |s: &str| -> Result<u64, Error> {
        s.parse()
            .map_err(|_| Error::Validation(format!("bad group name {:?}", s)))
    };
    let named = match spec {
        "Q8" => Some(quaternion_group()),
        "V4" => Some(direct_product(&cyclic_group(2), &cyclic_group(2))),
        _ => match spec.split_at(1.min(spec.len())) {
            ("C", n) if !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()) => {
                Some(cyclic_group(parse_n(n)?))
            }
            ("D", n) if !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()) => {
                Some(dihedral_group(parse_n(n)?))
            }
            ("S", n) if !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()) => {
                Some(symmetric_group(parse_n(n)?))
            }
            ("A", n) if !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()) => {
                Some(alternating_group(parse_n(n)?))
            }
            _ => None,
        },
    };
    match named {
        Some(g) => Ok(g),
        None => group_from_json(&read_json(&PathBuf::from(spec))?),
    }
}

fn read_graph(path: &PathBuf) -> Result<GraphOfGroups, Error> {
    graph_from_json(&read_json(path)?)
}

enum Outcome {
    Json(Value, u8),
    Text(String, u8),
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::CheckHm { datum } => {
            let d = datum_from_json(&read_json(datum)?)?;
            let verdict = hm_condition(&d)?;
            Ok(Outcome::Json(
                json!({ "hm": verdict }),
                if verdict { 0 } else { 1 },
            ))
        }
        Command::CheckMumfordType { datum, cap } => {
            let d = datum_from_json(&read_json(datum)?)?;
            match mumford_type_witness(&d, *cap)? {
                Some(w) => Ok(Outcome::Json(
                    json!({ "mumford_type": true, "witness": witness_to_json(&w) }),
                    0,
                )),
                None => Ok(Outcome::Json(json!({ "mumford_type": false }), 1)),
            }
        }
        Command::CheckVirtual { datum, cap } => {
            let d = datum_from_json(&read_json(datum)?)?;
            match virtual_mumford_type(&d, *cap)? {
                Some(r) => Ok(Outcome::Json(
                    json!({ "virtual_mumford_type": true, "report": virtual_report_to_json(&r) }),
                    0,
                )),
                None => Ok(Outcome::Json(json!({ "virtual_mumford_type": false }), 1)),
            }
        }
        Command::CheckGenusSystem { datum, genus, cap } => {
            let d = datum_from_json(&read_json(datum)?)?;
            let group = d.group().clone();
            match exists_genus_g_system(&group, *genus, &d, *cap)? {
                Some(tuple) => Ok(Outcome::Json(
                    json!({
                        "exists": true,
                        "tuple": tuple.iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>(),
                    }),
                    0,
                )),
                None => Ok(Outcome::Json(json!({ "exists": false }), 1)),
            }
        }
        Command::CheckMumfordSchwarz { datum, p } => {
            require_prime(*p)?;
            let d = datum_from_json(&read_json(datum)?)?;
            if d.len() != 3 {
                return Err(Error::Validation(format!(
                    "expected a 3-class datum, got {} classes",
                    d.len()
                )));
            }
            let triple: Vec<Perm> = d
                .classes()
                .iter()
                .map(|c| c.representative.clone())
                .collect();
            let flag = mumford_schwarz_check(d.group(), &triple, *p)?;
            let code = match flag.status {
                TriangleStatus::FinitePgl2 => 0,
                TriangleStatus::PossibleInfiniteTriangle => 2,
                TriangleStatus::Excluded => 1,
            };
            Ok(Outcome::Json(json!({ "p": flag.p, "status": flag.status }), code))
        }
        Command::BranchCount { graph, stabilize } => {
            let mut g = read_graph(graph)?;
            if *stabilize {
                g = g.stabilize()?;
            }
            let count = starret::branch::branch_count(&g)?;
            Ok(Outcome::Json(serde_json::to_value(&count).unwrap(), 0))
        }
        Command::RhGenus {
            order,
            base_genus,
            signature,
        } => {
            let orders: Vec<u64> = signature
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Validation(format!("bad signature entry {:?}", s)))
                })
                .collect::<Result<_, _>>()?;
            let sig = Signature::new(orders)?;
            let h = starret::branch::riemann_hurwitz_genus(*order, *base_genus, &sig)?;
            Ok(Outcome::Json(json!({ "genus": h }), 0))
        }
        Command::HurwitzDim { genus, cusps } => {
            let dim = starret::branch::hurwitz_dimension(*genus, *cusps)?;
            Ok(Outcome::Json(json!({ "dimension": dim }), 0))
        }
        Command::Stabilize { graph } => {
            let g = read_graph(graph)?.stabilize()?;
            Ok(Outcome::Json(graph_to_json(&g), 0))
        }
        Command::Contract { graph, edge } => {
            let g = read_graph(graph)?.contract(*edge)?;
            Ok(Outcome::Json(graph_to_json(&g), 0))
        }
        Command::Slide {
            graph,
            edge,
            end,
            conjugator,
        } => {
            let g = read_graph(graph)?;
            let end = match end {
                EndArg::Origin => End::Origin,
                EndArg::Terminal => End::Terminal,
            };
            let e = g
                .edge(*edge)
                .ok_or_else(|| Error::Validation(format!("no edge {}", edge)))?;
            let vid = match end {
                End::Origin => e.from,
                End::Terminal => e.to,
            };
            let degree = g
                .vertex(vid)
                .ok_or_else(|| Error::Validation(format!("no vertex {}", vid)))?
                .group
                .degree();
            let c = Perm::parse_cycles(conjugator, degree)?;
            let slid = g.slide(*edge, end, &c)?;
            Ok(Outcome::Json(graph_to_json(&slid), 0))
        }
        Command::Amalgamify { graph } => {
            let res = amalgamify(&read_graph(graph)?)?;
            Ok(Outcome::Json(
                json!({
                    "graph": graph_to_json(&res.result),
                    "s": res.s,
                    "t": res.t,
                    "relations": res.relations.iter().map(|r| json!({
                        "edge": r.edge,
                        "old_vertex": r.old_vertex,
                        "new_vertex": r.new_vertex,
                    })).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Command::Subdivide { e, e_prime, p } => {
            require_prime(*p)?;
            let g = subdivide_segment(*e, *e_prime, *p)?;
            Ok(Outcome::Json(graph_to_json(&g), 0))
        }
        Command::Realize { group, p } => {
            require_prime(*p)?;
            let g = resolve_group(group)?;
            let spec = realize(&g, *p)?;
            Ok(Outcome::Json(cover_spec_to_json(&spec), 0))
        }
        Command::RealizeFullAut {
            group,
            p,
            alternative,
        } => {
            require_prime(*p)?;
            let g = resolve_group(group)?;
            let spec = realize_full_aut(&g, *p, *alternative)?;
            Ok(Outcome::Json(cover_spec_to_json(&spec), 0))
        }
        Command::Paste {
            spec1,
            spec2,
            group,
        } => {
            let s1 = cover_spec_from_json(&read_json(spec1)?)?;
            let s2 = cover_spec_from_json(&read_json(spec2)?)?;
            let g = resolve_group(group)?;
            let pasted = harbater_paste(&s1, &s2, &g)?;
            let code = if pasted.delta_connected { 0 } else { 1 };
            Ok(Outcome::Json(cover_spec_to_json(&pasted), code))
        }
        Command::ExportDot { input } => {
            let doc = read_json(input)?;
            let graph = if doc.get("graph").is_some() {
                graph_from_json(doc.get("graph").unwrap())?
            } else {
                graph_from_json(&doc)?
            };
            Ok(Outcome::Text(graph_to_dot(&graph), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let (text, code) = match outcome {
                Outcome::Json(v, c) => (format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), c),
                Outcome::Text(t, c) => (t, c),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("cannot write {}: {}", path.display(), e);
                        return ExitCode::from(3);
                    }
                }
                None => print!("{}", text),
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{}", e);
            let code = match e {
                Error::Resource(_) => 4,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}
