//! Command-line front end.
//!
//! Exit status: 0 on success (a recognition rejection is a successful
//! answer), 1 on data errors, 2 on usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use netkg::derive::{eval_expression, relation_env};
use netkg::keds::parse_keds;
use netkg::pajek::{export_pajek, import_pajek};
use netkg::rdf::{
    parse_partitioned_graph, parse_triples, project_to_network, recognize, RdfNetwork,
    RecognitionResult,
};
use netkg::{Network, Semiring};

#[derive(Parser)]
#[command(
    name = "netkg",
    version,
    about = "Multi-relational temporal networks: triple encodings, derived \
             relations, event data, and Pajek-style interchange"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a triple file and print its distinct statements.
    ParseTriples {
        /// Triple file, one statement per line.
        file: PathBuf,
    },
    /// Encode a triple file as a node-and-arc graph and print its size.
    Build {
        /// Triple file, one statement per line.
        file: PathBuf,
    },
    /// Decide whether a partitioned graph is such an encoding.
    Recognize {
        /// Graph file: `S n` and `T n` class sizes, then one arc per line.
        file: PathBuf,
    },
    /// Project a triple file onto a network, folding chosen predicates
    /// into node properties.
    Project {
        /// Triple file, one statement per line.
        file: PathBuf,
        /// Comma-separated attribute predicates, by full IRI or local name.
        #[arg(long, value_delimiter = ',')]
        attrs: Vec<String>,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a matrix expression over a network's relations.
    Derive {
        /// Network file (.paj/.net, .tab/.dat/.txt, or .nt).
        file: PathBuf,
        /// Expression over relation names, combined with `*` and `^T`.
        #[arg(long)]
        expr: String,
        /// Value algebra: real, bool, or count.
        #[arg(long, default_value = "real")]
        semiring: Semiring,
    },
    /// Read dated event lines into a temporal network.
    KedsImport {
        /// Event file: `YYMMDD SOURCE TARGET CODE (LABEL) tail` lines.
        file: PathBuf,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Keep the nodes and links active at one time point.
    Slice {
        /// Network file (.paj/.net, .tab/.dat/.txt, or .nt).
        file: PathBuf,
        /// Time point.
        #[arg(long)]
        t: i64,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a network file to the Pajek dialect.
    Export {
        /// Network file (.paj/.net, .tab/.dat/.txt, or .nt).
        file: PathBuf,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print node, link, mode, and relation counts.
    Stats {
        /// Network file (.paj/.net, .tab/.dat/.txt, or .nt).
        file: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Loads a network, picking the reader by file extension.
fn load_network(path: &Path) -> Result<Network> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let src = read(path)?;
    match ext.as_str() {
        "paj" | "net" => Ok(import_pajek(&src)?),
        "tab" | "dat" | "txt" => Ok(parse_keds(&src)?),
        "nt" => {
            let triples = parse_triples(&src)?;
            let rdf = RdfNetwork::from_triples(&triples);
            Ok(project_to_network(&rdf, &BTreeSet::new())?)
        }
        other => bail!(
            "cannot tell the format of {} from its extension {other:?}; \
             expected .paj/.net, .tab/.dat/.txt, or .nt",
            path.display()
        ),
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::ParseTriples { file } => {
            for triple in parse_triples(&read(&file)?)? {
                println!("{triple} .");
            }
            Ok(())
        }
        Command::Build { file } => {
            let triples = parse_triples(&read(&file)?)?;
            let rdf = RdfNetwork::from_triples(&triples);
            println!(
                "n_S={} n_T={} m={}",
                rdf.n_simple(),
                rdf.n_triple(),
                rdf.arc_count()
            );
            Ok(())
        }
        Command::Recognize { file } => {
            let graph = parse_partitioned_graph(&read(&file)?)?;
            match recognize(&graph) {
                RecognitionResult::Accepted(seq) => {
                    println!("accepted: {} steps", seq.steps.len());
                    for step in &seq.steps {
                        println!("{step}");
                    }
                }
                RecognitionResult::Rejected(witness) => println!("rejected: {witness}"),
            }
            Ok(())
        }
        Command::Project {
            file,
            attrs,
            output,
        } => {
            let triples = parse_triples(&read(&file)?)?;
            let rdf = RdfNetwork::from_triples(&triples);
            let attrs: BTreeSet<String> = attrs.into_iter().collect();
            let net = project_to_network(&rdf, &attrs)?;
            emit(output.as_deref(), &export_pajek(&net))
        }
        Command::Derive {
            file,
            expr,
            semiring,
        } => {
            let net = load_network(&file)?;
            let env = relation_env(&net, &semiring)?;
            let matrix = eval_expression(&expr, &env, &semiring)?;
            print!("{}", matrix.dump());
            Ok(())
        }
        Command::KedsImport { file, output } => {
            let net = parse_keds(&read(&file)?)?;
            emit(output.as_deref(), &export_pajek(&net))
        }
        Command::Slice { file, t, output } => {
            let net = load_network(&file)?;
            let sliced = net.time_slice(t)?;
            emit(output.as_deref(), &export_pajek(&sliced))
        }
        Command::Export { file, output } => {
            let net = load_network(&file)?;
            emit(output.as_deref(), &export_pajek(&net))
        }
        Command::Stats { file } => {
            let net = load_network(&file)?;
            println!("n={} m={}", net.node_count(), net.link_count());
            for mode in net.modes() {
                println!("mode {mode}: {}", net.nodes_in_mode(mode).len());
            }
            for rel in net.relations() {
                println!("relation {}: {} links", rel.name(), rel.link_count());
            }
            Ok(())
        }
    }
}
