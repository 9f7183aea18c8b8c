//! The `auter` command-line driver: thin subcommand dispatch over the
//! library.  Exit codes: 0 success, 1 verification failure, 2 usage or
//! runtime error.

use crate::cache::cached_complex;
use crate::complex::QuotientComplex;
use crate::config::Config;
use crate::enumerate::{enumerate_graphs, Pointing};
use crate::farrell;
use crate::homology::{homology, Coefficients};
use crate::symmetry::{self, GroupKind};
use crate::{io, nielsen, singular, verify, zoo};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "auter",
    version,
    about = "Exact workbench for moduli of pointed graphs"
)]
struct Cli {
    /// Configuration file (plain `key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache directory; overrides the config file and AUTER_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore and do not touch the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointingArg {
    Single,
    Double,
}

impl From<PointingArg> for Pointing {
    fn from(p: PointingArg) -> Pointing {
        match p {
            PointingArg::Single => Pointing::Single,
            PointingArg::Double => Pointing::Double,
        }
    }
}

#[derive(Args)]
struct ComplexArgs {
    /// Rank (first Betti number) of the graphs.
    #[arg(long)]
    rank: u32,
    /// Single- or double-pointed graphs.
    #[arg(long, value_enum, default_value = "single")]
    pointing: PointingArg,
    /// Cap on the degree of the top graph of every cell.
    #[arg(long)]
    deg_max: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// List isomorphism classes of admissible pointed graphs.
    Enumerate {
        #[command(flatten)]
        complex: ComplexArgs,
        /// Keep only classes whose automorphism order this prime divides.
        #[arg(long)]
        p_symmetric: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Build (and cache) a quotient complex and print its cell counts.
    Build {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers and torsion of a quotient complex.
    Homology {
        #[command(flatten)]
        complex: ComplexArgs,
        /// Coefficients F_p.
        #[arg(long = "mod")]
        mod_p: Option<u64>,
        /// Rational coefficients only.
        #[arg(long)]
        rational: bool,
        #[arg(long)]
        json: bool,
    },
    /// Group-graph classes, subgroup families, and singular-vertex tags.
    Symmetry {
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        p: u32,
        /// Use the bicyclic group instead of the cyclic one.
        #[arg(long)]
        bicyclic: bool,
        /// Keep only reduced classes.
        #[arg(long)]
        reduced: bool,
        /// Run the subgroup-family classification at rank 2(p-1).
        #[arg(long)]
        classify: bool,
        /// Tag the singular vertex classes of rank 2p-1.
        #[arg(long)]
        singular: bool,
        #[arg(long)]
        json: bool,
    },
    /// Nielsen closure of a named reduced seed.
    Nielsen {
        /// Seed graph: rose, theta, psi, omega, or b<k>.
        #[arg(long)]
        seed: String,
        #[arg(long)]
        p: u32,
        /// Rank for the rose seed (defaults to 2(p-1)).
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite (or all of them).
    Verify {
        /// Suite name, or "all".
        suite: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Graded cohomology table over a degree window.
    Table {
        #[arg(long)]
        p: u32,
        /// Degree window, two values: min max.
        #[arg(long, num_args = 2, allow_negative_numbers = true)]
        range: Vec<i64>,
        /// Quotient dimension vectors as JSON (required for p > 3).
        #[arg(long)]
        inputs: Option<PathBuf>,
        /// Emit the table as CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Export a complex or a named graph.
    Export {
        /// Complex spec like rank2-double or rank2-double-deg2.
        #[arg(long)]
        complex: Option<String>,
        /// Named graph like rose4, theta3, psi3, omega3, phi3, dumbbell.
        #[arg(long)]
        graph: Option<String>,
        /// Output format: dot, json, csv, or triplets.
        #[arg(long)]
        format: String,
        /// Boundary dimension for the triplets format.
        #[arg(long)]
        dim: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point used by the binary.
pub fn main_entry() {
    // Die quietly on closed pipes (e.g. `auter table ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let config = Config::load(cli.config.as_deref());
    let cache = config.cache_dir(cli.cache_dir.as_deref());
    let code = match run(cli, &config, &cache) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli, _config: &Config, cache: &std::path::Path) -> crate::Result<i32> {
    match cli.command {
        Command::Enumerate {
            complex,
            p_symmetric,
            json,
        } => {
            let mut classes =
                enumerate_graphs(complex.rank, complex.pointing.into(), complex.deg_max);
            if let Some(p) = p_symmetric {
                classes.retain(|c| c.aut_order % p as u128 == 0);
            }
            if json {
                let rows: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "graph": c.graph,
                            "rank": c.graph.rank(),
                            "degree": c.degree,
                            "aut_order": c.aut_order.to_string(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                println!("class\tvertices\tedges\tdegree\t|Aut|");
                for (i, c) in classes.iter().enumerate() {
                    println!(
                        "{i}\t{}\t{}\t{}\t{}",
                        c.graph.n_vertices,
                        c.graph.n_edges(),
                        c.degree,
                        c.aut_order
                    );
                }
                println!("total: {} classes", classes.len());
            }
            Ok(0)
        }
        Command::Build { complex, json } => {
            let cx = cached_complex(
                cache,
                complex.rank,
                complex.pointing.into(),
                complex.deg_max,
                cli.no_cache,
            );
            if json {
                println!("{}", serde_json::to_string_pretty(&cx.to_json())?);
            } else {
                print!("{}", io::csv_cell_counts(&cx));
                println!(
                    "dimension {}, Euler characteristic {}",
                    cx.dimension(),
                    cx.euler_characteristic()
                );
            }
            Ok(0)
        }
        Command::Homology {
            complex,
            mod_p,
            rational,
            json,
        } => {
            let cx = cached_complex(
                cache,
                complex.rank,
                complex.pointing.into(),
                complex.deg_max,
                cli.no_cache,
            );
            let coefficients = match (mod_p, rational) {
                (Some(p), _) => Coefficients::ModP(p),
                (None, true) => Coefficients::Rational,
                (None, false) => Coefficients::Integral,
            };
            let summary = homology(&cx, coefficients)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            } else {
                print!("{}", io::csv_homology(&summary));
            }
            Ok(0)
        }
        Command::Symmetry {
            rank,
            p,
            bicyclic,
            reduced,
            classify,
            singular,
            json,
        } => {
            if singular {
                let classes = singular::classify_singular_vertices(p);
                if json {
                    let rows: Vec<serde_json::Value> = classes
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "graph": c.graph,
                                "aut_order": c.aut_order.to_string(),
                                "p_rank": c.p_rank,
                                "family": c.family.to_string(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                } else {
                    println!("class\tvertices\tedges\t|Aut|\tfamily");
                    for (i, c) in classes.iter().enumerate() {
                        println!(
                            "{i}\t{}\t{}\t{}\t{}",
                            c.graph.n_vertices,
                            c.graph.n_edges(),
                            c.aut_order,
                            c.family
                        );
                    }
                    println!("total: {} classes", classes.len());
                }
                return Ok(0);
            }
            if classify {
                let classification = nielsen::classify_subgroup_classes(2 * (p - 1), p)?;
                if json {
                    let rows = serde_json::json!({
                        "families": classification.families.iter().map(|f| {
                            serde_json::json!({
                                "name": f.name,
                                "group": f.kind.json_tag(),
                                "members": f.members.len(),
                            })
                        }).collect::<Vec<_>>(),
                        "containments": classification.containments,
                    });
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                } else {
                    for f in &classification.families {
                        println!(
                            "family {} ({}): {} reduced class(es)",
                            f.name,
                            f.kind.json_tag(),
                            f.members.len()
                        );
                    }
                    for (sub, sup) in &classification.containments {
                        println!("containment: {sub} < {sup}");
                    }
                }
                return Ok(0);
            }
            let rank = rank.unwrap_or(2 * (p - 1));
            let kind = if bicyclic {
                GroupKind::Bicyclic { p }
            } else {
                GroupKind::Cyclic { p }
            };
            let classes = symmetry::enumerate_group_graphs(rank, kind, reduced);
            if json {
                let rows: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "group_graph": c.gg.to_json(),
                            "reduced": c.gg.is_reduced(),
                            "essential": c.gg.is_essential(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                println!("class\tvertices\tedges\treduced\tessential");
                for (i, c) in classes.iter().enumerate() {
                    println!(
                        "{i}\t{}\t{}\t{}\t{}",
                        c.gg.graph.n_vertices,
                        c.gg.graph.n_edges(),
                        c.gg.is_reduced(),
                        c.gg.is_essential()
                    );
                }
                println!("total: {} classes", classes.len());
            }
            Ok(0)
        }
        Command::Nielsen {
            seed,
            p,
            rank,
            json,
        } => {
            let gg = match seed.as_str() {
                "rose" => symmetry::rose_rotation(rank.unwrap_or(2 * (p - 1)), p),
                "theta" => symmetry::theta_rotation(p),
                "psi" => symmetry::psi_diagonal(p),
                "omega" => symmetry::omega_diagonal(p),
                other => {
                    if let Some(k) = other.strip_prefix('b').and_then(|s| s.parse::<u32>().ok()) {
                        symmetry::b_graph_action(p, k)
                    } else {
                        return Err(crate::Error::Other(format!("unknown seed {other}")));
                    }
                }
            };
            let closure = nielsen::nielsen_closure(&gg)?;
            if json {
                let rows: Vec<serde_json::Value> = closure
                    .iter()
                    .map(|g| serde_json::json!(g.to_json()))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                println!(
                    "closure of {seed} under admissible Nielsen transformations: {} class(es)",
                    closure.len()
                );
                for (i, g) in closure.iter().enumerate() {
                    println!(
                        "class {i}: {} vertices, {} edges",
                        g.graph.n_vertices,
                        g.graph.n_edges()
                    );
                }
            }
            Ok(0)
        }
        Command::Verify { suite, json } => {
            let suite = suite.unwrap_or_else(|| "all".to_string());
            let outcomes = if suite == "all" {
                verify::run_all()
            } else {
                vec![verify::run_suite(&suite)?]
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&outcomes)?);
            } else {
                for o in &outcomes {
                    println!(
                        "criterion {:>2} [{}]: {} ({} ms) — {}",
                        o.criterion,
                        o.name,
                        if o.passed { "PASS" } else { "FAIL" },
                        o.millis,
                        o.details
                    );
                }
            }
            Ok(if outcomes.iter().all(|o| o.passed) {
                0
            } else {
                1
            })
        }
        Command::Table {
            p,
            range,
            inputs,
            csv,
            json,
        } => {
            let (t_min, t_max) = (range[0], range[1]);
            if t_min > t_max {
                return Err(crate::Error::Other("empty degree window".into()));
            }
            let input_data = match inputs {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    serde_json::from_str(&text)?
                }
                None if p == 3 => verify::computed_quotient_inputs()?,
                None => {
                    return Err(crate::Error::MissingInput(
                        "p > 3 needs --inputs with quotient dimension vectors".into(),
                    ))
                }
            };
            let rows = farrell::table(p, t_min, t_max, &input_data)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else if csv {
                print!("{}", farrell::table_csv(&rows));
            } else {
                let width = rows.iter().map(|r| r.value.len()).max().unwrap_or(1);
                for row in &rows {
                    println!(
                        "t = {:>4}  {:<width$}  [{}]",
                        row.t,
                        row.value,
                        row.branch,
                        width = width
                    );
                }
            }
            Ok(0)
        }
        Command::Export {
            complex,
            graph,
            format,
            dim,
            out,
        } => {
            let text = match (&complex, &graph) {
                (Some(spec), None) => {
                    let cx = parse_complex_spec(spec, cache, cli.no_cache)?;
                    match format.as_str() {
                        "dot" => io::dot_complex(&cx),
                        "json" => serde_json::to_string_pretty(&cx.to_json())?,
                        "csv" => io::csv_cell_counts(&cx),
                        "triplets" => {
                            let d = dim.ok_or_else(|| {
                                crate::Error::Other("triplets needs --dim".into())
                            })?;
                            io::sparse_triplets(&cx.boundary_matrix(d)?)
                        }
                        other => {
                            return Err(crate::Error::Other(format!("unknown format {other}")))
                        }
                    }
                }
                (None, Some(name)) => {
                    let g = parse_graph_name(name)?;
                    match format.as_str() {
                        "dot" => io::dot_graph(name, &g),
                        "json" => serde_json::to_string_pretty(&g)?,
                        other => {
                            return Err(crate::Error::Other(format!("unknown format {other}")))
                        }
                    }
                }
                _ => {
                    return Err(crate::Error::Other(
                        "export needs exactly one of --complex or --graph".into(),
                    ))
                }
            };
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn parse_complex_spec(
    spec: &str,
    cache: &std::path::Path,
    no_cache: bool,
) -> crate::Result<QuotientComplex> {
    // rank<k>-<pointing>[-deg<d>]
    let parts: Vec<&str> = spec.split('-').collect();
    let usage =
        || crate::Error::Other(format!("bad complex spec {spec}, want rank2-double[-deg2]"));
    if parts.len() < 2 || !parts[0].starts_with("rank") {
        return Err(usage());
    }
    let rank: u32 = parts[0][4..].parse().map_err(|_| usage())?;
    let pointing = match parts[1] {
        "single" => Pointing::Single,
        "double" => Pointing::Double,
        _ => return Err(usage()),
    };
    let deg_max = match parts.get(2) {
        Some(part) if part.starts_with("deg") => Some(part[3..].parse().map_err(|_| usage())?),
        Some(_) => return Err(usage()),
        None => None,
    };
    Ok(cached_complex(cache, rank, pointing, deg_max, no_cache))
}

fn parse_graph_name(name: &str) -> crate::Result<crate::graph::PointedGraph> {
    let split =
        |prefix: &str| -> Option<u32> { name.strip_prefix(prefix).and_then(|s| s.parse().ok()) };
    if name == "dumbbell" {
        return Ok(zoo::dumbbell());
    }
    if let Some(n) = split("rose") {
        return Ok(zoo::rose(n));
    }
    if let Some(k) = split("theta") {
        return Ok(zoo::theta(k));
    }
    if let Some(p) = split("phi") {
        return Ok(zoo::phi(p));
    }
    if let Some(p) = split("psi") {
        return Ok(zoo::psi(p));
    }
    if let Some(p) = split("omega") {
        return Ok(zoo::omega(p));
    }
    if let Some(p) = split("xi") {
        return Ok(zoo::xi(p));
    }
    if let Some(p) = split("upsilon") {
        return Ok(zoo::upsilon(p));
    }
    Err(crate::Error::Other(format!("unknown graph name {name}")))
}
