use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k3niem::cases::{footnote_corrections, verify_all};
use k3niem::catalog::niemeier;
use k3niem::embed::{
    embeds_in_niemeier, exists_primitive_embedding_unimodular, is_k3_picard_hyperbolic, is_k3_picard_negdef,
    is_k3_picard_semidef,
};
use k3niem::groups::coinvariant_lattice;
use k3niem::linalg::{smith_normal_form, Rat, RatMatrix};
use k3niem::padic::{det_k_q_p, jordan_decompose, splits_q_theta_2};
use k3niem::{EmbeddingVerdict, Error, IntMatrix, Lattice, PermAction, TargetSignature};

#[derive(Parser)]
#[command(name = "k3niem", version, about = "Exact lattice computations for Niemeier lattices and K3 Picard lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Worked case records.
    Cases {
        #[command(subcommand)]
        action: CasesAction,
    },
    /// The Niemeier catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Invariants of a lattice read from JSON.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Primitive closure of vectors inside a Niemeier lattice.
    Primclose {
        #[arg(long)]
        niemeier: usize,
        /// JSON array of column vectors in simple-root coordinates.
        #[arg(long)]
        gens: PathBuf,
    },
    /// Root permutations of a Niemeier lattice.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Primitive embedding criteria.
    Embed {
        #[command(subcommand)]
        target: EmbedTarget,
    },
}

#[derive(Subcommand)]
enum CasesAction {
    /// Recompute every record and compare with the stated values.
    Verify {
        /// Glob over record labels, e.g. `Case13/*`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute the footnoted discriminant group corrections.
    Footnotes {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Show { index: usize },
}

#[derive(Subcommand)]
enum LatticeAction {
    Snf {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Disc {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Roots {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Padic {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, visible_alias = "p")]
        prime: u64,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Coinvariant lattice of the group generated by the given permutations.
    Coinv {
        #[arg(long)]
        niemeier: usize,
        /// Cycle notation, e.g. "(a1_1 a1_2)(a2_1 a2_2)"; repeat for more generators.
        #[arg(long, required = true)]
        perm: Vec<String>,
    },
}

#[derive(Subcommand)]
enum EmbedTarget {
    Niemeier {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Negdef {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Semidef {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Hyperbolic {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Unimodular {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        plus: usize,
        #[arg(long)]
        minus: usize,
    },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Input(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Cases { action: CasesAction::Verify { filter, format } } => {
            let report = verify_all(filter.as_deref())?;
            if report.records.is_empty() {
                return Err(Failure::Input(format!("no record matches {:?}", filter.unwrap_or_default())));
            }
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{report}"),
            }
            if report.summary.gate_passed {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Cases { action: CasesAction::Footnotes { format } } => {
            let rows = footnote_corrections();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
                Format::Text => {
                    for r in &rows {
                        let verdict = if r.matches { "match" } else { "mismatch" };
                        let got = r.computed.as_deref().unwrap_or("?");
                        println!("{verdict:<9} {:<10} {:<24} {got}", r.name, r.record);
                    }
                }
            }
            if rows.iter().all(|r| r.matches) {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Catalog { action: CatalogAction::Show { index } } => {
            let n = niemeier(index)?;
            let roots = n.lattice.root_components()?;
            let out = json!({
                "index": index,
                "root_system": n.spec.label(),
                "components": n.spec.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "glue": n.spec.glue.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "rank": n.lattice.rank(),
                "det": n.lattice.det().to_string(),
                "even": n.lattice.is_even(),
                "roots_found": roots.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(())
        }
        Command::Lattice { action } => lattice_command(action),
        Command::Primclose { niemeier: index, gens } => {
            let n = niemeier(index)?;
            let cols = read_vectors(&gens, n.spec.dimension())?;
            let m = RatMatrix::from_columns(n.spec.dimension(), &cols);
            let closure = n.lattice.primitive_closure(&m)?;
            let spanned = Lattice::generated_by(n.ambient_gram().clone(), &m)?;
            let index_in_closure = if spanned.rank() == 0 {
                Rat::from_integer(1.into())
            } else {
                let q = spanned.det() / closure.det();
                if q < Rat::from_integer(0.into()) {
                    -q
                } else {
                    q
                }
            };
            let disc = if closure.rank() == 0 { "0".to_string() } else { closure.discriminant_group()?.to_string() };
            let out = json!({
                "rank": closure.rank(),
                "disc": disc,
                "index_squared": index_in_closure.to_string(),
                "lattice": closure.to_json(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(())
        }
        Command::Group { action: GroupAction::Coinv { niemeier: index, perm } } => {
            let n = niemeier(index)?;
            let gens: Vec<PermAction> = perm.iter().map(|p| PermAction::parse(p, &n.spec)).collect::<Result<_, _>>()?;
            for g in &gens {
                if let Err(d) = k3niem::groups::check_action(n, g) {
                    let at = d.offending_cycle.map(|c| format!(" (offending cycle {c})")).unwrap_or_default();
                    return Err(Failure::Input(format!(
                        "{} is not a lattice automorphism: {}{at}",
                        g.source(),
                        d.reason
                    )));
                }
            }
            let c = coinvariant_lattice(n, &gens)?;
            let kahk3 = c.rank == 0 || is_k3_picard_negdef(&c.lattice)?.exists;
            let out = json!({
                "rank": c.rank,
                "disc": c.disc.to_string(),
                "orbits": c.orbit_count,
                "kahk3": kahk3,
                "lattice": c.lattice.to_json(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(())
        }
        Command::Embed { target } => {
            let verdict: EmbeddingVerdict = match target {
                EmbedTarget::Niemeier { input } => embeds_in_niemeier(&read_lattice(&input)?)?,
                EmbedTarget::Negdef { input } => is_k3_picard_negdef(&read_lattice(&input)?)?,
                EmbedTarget::Semidef { input } => is_k3_picard_semidef(&read_lattice(&input)?)?,
                EmbedTarget::Hyperbolic { input } => is_k3_picard_hyperbolic(&read_lattice(&input)?)?,
                EmbedTarget::Unimodular { input, plus, minus } => {
                    exists_primitive_embedding_unimodular(&read_lattice(&input)?, TargetSignature::new(plus, minus))?
                }
            };
            print!("{verdict}");
            Ok(())
        }
    }
}

fn lattice_command(action: LatticeAction) -> Outcome {
    let out = match action {
        LatticeAction::Snf { input } => {
            let l = read_lattice(&input)?;
            let g = l.int_gram().ok_or(Error::Dimension("lattice is not integral".into()))?;
            let snf = smith_normal_form(&g);
            json!({ "divisors": snf.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>() })
        }
        LatticeAction::Disc { input } => {
            let l = read_lattice(&input)?;
            let d = l.discriminant_group()?;
            json!({
                "group": d.to_string(),
                "invariants": d.elementary_divisors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "order": d.order().to_string(),
                "length": d.min_generators(),
            })
        }
        LatticeAction::Roots { input } => {
            let l = read_lattice(&input)?;
            let rs = l.root_components()?;
            json!({ "root_system": rs.to_string(), "root_count": l.enumerate_roots()?.len() })
        }
        LatticeAction::Padic { input, prime } => {
            let l = read_lattice(&input)?;
            let g = l.int_gram().ok_or(Error::Dimension("lattice is not integral".into()))?;
            let jf = jordan_decompose(&g, prime)?;
            let dk = det_k_q_p(&l, prime)?;
            let mut v = json!({
                "jordan": serde_json::to_value(&jf).expect("serializable"),
                "det_k": dk.class.to_string(),
            });
            if prime == 2 {
                v["splits_q_theta"] = Value::Bool(splits_q_theta_2(&l)?);
            }
            v
        }
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Either the full lattice form or a bare Gram matrix (`{"gram": ...}` or a nested array).
fn read_lattice(path: &Path) -> Result<Lattice, Failure> {
    let v = read_json(path)?;
    if v.get("ambient_gram").is_some() {
        let j = serde_json::from_value(v).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok(Lattice::from_json(&j)?);
    }
    let rows = v.get("gram").cloned().unwrap_or(v);
    let rows = int_rows(&rows)?;
    Ok(Lattice::from_gram(IntMatrix::from_rows_vec(&rows))?)
}

fn int_rows(v: &Value) -> Result<Vec<Vec<k3niem::linalg::Int>>, Failure> {
    let bad = || Failure::Input("expected a nested array of integers".into());
    let rows = v.as_array().ok_or_else(bad)?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.to_string().trim_matches('"').parse().map_err(|_| bad()))
                .collect()
        })
        .collect()
}

fn read_vectors(path: &Path, dim: usize) -> Result<Vec<Vec<Rat>>, Failure> {
    let v = read_json(path)?;
    let bad = |m: &str| Failure::Input(format!("{}: {m}", path.display()));
    let cols = v.as_array().ok_or_else(|| bad("expected an array of vectors"))?;
    cols.iter()
        .map(|c| {
            let entries = c.as_array().ok_or_else(|| bad("expected an array of vectors"))?;
            if entries.len() != dim {
                return Err(bad(&format!("vector of length {}, expected {dim}", entries.len())));
            }
            entries
                .iter()
                .map(|x| x.to_string().trim_matches('"').parse::<Rat>().map_err(|_| bad(&format!("bad entry {x}"))))
                .collect()
        })
        .collect()
}
