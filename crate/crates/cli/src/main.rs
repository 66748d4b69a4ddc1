//! Command-line front end: file I/O, subcommand dispatch and
//! machine-readable reports. One JSON document goes to stdout; human
//! summaries go to stderr. Exit codes: 0 success, 1 validation failure,
//! 2 contract violation, 3 I/O or input error.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use wdlc::colorers::{
    color_bounded_treewidth_opts, color_with_torso_oracle_opts, BipartiteApexTorsoOracle,
    BruteForceTorsoOracle, ColoringOutcome,
};
use wdlc::decomposition::{
    validate_construction, validate_tree_decomposition, ConstructionParams,
};
use wdlc::error::Error;
use wdlc::generators::{
    build_bipartite_gadget, cycle_graph, hypercube, petersen, triangular_grid,
};
use wdlc::graph::{coloring_weak_diameter, girth, Coloring, Distance, Graph};
use wdlc::io::{
    distance_value, witnesses_from_doc, ColoringDoc, GadgetDoc, GraphDoc, ListAssignmentDoc,
    TreeDecompositionDoc, WitnessesDoc,
};
use wdlc::legitimacy::{
    bound_add_centered, bound_all_centered, bound_fstar, bound_small_extension, bound_torso,
    bound_tw, check_legitimate, BoundParams, LegitimacyParams, ListAssignment,
};
use wdlc::oracle::{brute_force_min_weak_diameter, gadget_weak_diameter_claim, BruteForceOutcome, GadgetClaim};

#[derive(Parser)]
#[command(name = "wdlc", about = "Weak-diameter list-coloring toolkit", version)]
struct Cli {
    /// Build the full per-subset gadget count instead of the reduced one.
    #[arg(long, global = true)]
    strict_paper: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate decompositions, constructions, legitimacy and colorings.
    Validate(ValidateArgs),
    /// Extend a precoloring over a bounded-width decomposition.
    ColorTw(ColorTwArgs),
    /// Color through a torso oracle over a bounded-adhesion decomposition.
    ColorTorso(ColorTorsoArgs),
    /// Exhaustive minimum weak diameter over all list colorings.
    Brute(BruteArgs),
    /// Build the bipartite lower-bound gadget from a regular host.
    Gadget(GadgetArgs),
    /// Emit an n-by-n triangular grid.
    Grid(GridArgs),
    /// Evaluate a bound formula.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    td: Option<PathBuf>,
    /// Check the construction conditions at this eta (requires --theta).
    #[arg(long)]
    eta: Option<usize>,
    #[arg(long)]
    theta: Option<usize>,
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Legitimacy parameters m,s,r,k (requires --lists and --td).
    #[arg(long, value_delimiter = ',', num_args = 4)]
    legitimacy: Option<Vec<usize>>,
    #[arg(long)]
    witnesses: Option<PathBuf>,
    /// Re-verify a coloring: list respect plus measured weak diameter.
    #[arg(long)]
    coloring: Option<PathBuf>,
}

#[derive(Args)]
struct ColorTwArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    td: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long)]
    precoloring: Option<PathBuf>,
    /// Weak-diameter budget of the precoloring.
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Brute,
    BipartiteApex,
}

#[derive(Args)]
struct ColorTorsoArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    td: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long, value_enum)]
    oracle: OracleKind,
    /// Apex vertices per tree node, JSON {"<node>": [v, ...]}.
    #[arg(long)]
    apex_sets: Option<PathBuf>,
    /// Enumeration cap for the brute-force oracle.
    #[arg(long, default_value_t = 1 << 24)]
    cap: u64,
}

#[derive(Args)]
struct BruteArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long, default_value_t = 1 << 24)]
    cap: u64,
}

#[derive(Args)]
struct GadgetArgs {
    /// petersen, c6, c8, cube, or a path to a graph JSON file.
    #[arg(long)]
    host: String,
    #[arg(long)]
    k: usize,
    /// Also run the exhaustive weak-diameter claim check.
    #[arg(long)]
    claim: bool,
    #[arg(long, default_value_t = 1 << 24)]
    cap: u64,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    AllCentered,
    AddCentered,
    Fstar,
    Tw,
    SmallExt,
    Torso,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    theta: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    eta: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion
            {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(Outcome { document, ok }) => {
            println!("{}", serde_json::to_string_pretty(&document).unwrap_or_default());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let code = exit_code(&err);
            let doc = json!({ "error": err.to_string() });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            eprintln!("error: {err}");
            ExitCode::from(code)
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ContractViolation { .. } | Error::Invariant(_) => 2,
        Error::Rejected(_) | Error::PrecoloringTooSpread { .. } => 1,
        _ => 3,
    }
}

struct Outcome {
    document: Value,
    ok: bool,
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Validate(args) => validate(args),
        Command::ColorTw(args) => color_tw(args, cli.strict_paper),
        Command::ColorTorso(args) => color_torso(args, cli.strict_paper),
        Command::Brute(args) => brute(args),
        Command::Gadget(args) => gadget(args),
        Command::Grid(args) => {
            let g = triangular_grid(args.n)?;
            eprintln!("grid: {} vertices, {} edges", g.vertex_count(), g.edge_count());
            Ok(Outcome {
                document: serde_json::to_value(GraphDoc::from_graph(&g)).unwrap(),
                ok: true,
            })
        }
        Command::Bounds(args) => bounds(args),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!(
            "malformed JSON in {} at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    read_json::<GraphDoc>(path)?.to_graph()
}

fn read_lists(path: &Path, n: usize) -> Result<ListAssignment, Error> {
    read_json::<ListAssignmentDoc>(path)?.to_lists(n)
}

fn validate(args: ValidateArgs) -> Result<Outcome, Error> {
    let g = read_graph(&args.graph)?;
    let mut checks = serde_json::Map::new();
    let mut ok = true;

    let td = match &args.td {
        Some(path) => {
            let td = read_json::<TreeDecompositionDoc>(path)?.to_decomposition()?;
            let report = validate_tree_decomposition(&g, &td);
            ok &= report.ok;
            checks.insert(
                "tree_decomposition".into(),
                serde_json::to_value(&report).unwrap(),
            );
            Some(td)
        }
        None => None,
    };

    if let (Some(eta), Some(theta)) = (args.eta, args.theta) {
        let td = td
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("--eta/--theta need --td".into()))?;
        let params = ConstructionParams::new(eta, theta)?;
        let report = validate_construction(&g, td, params);
        ok &= report.ok;
        checks.insert("construction".into(), serde_json::to_value(&report).unwrap());
    }

    let lists = match &args.lists {
        Some(path) => Some(read_lists(path, g.vertex_count())?),
        None => None,
    };

    if let Some(values) = &args.legitimacy {
        let lists = lists
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("--legitimacy needs --lists".into()))?;
        let td = td
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("--legitimacy needs --td".into()))?;
        let params = LegitimacyParams::new(values[0], values[1], values[2], values[3])?;
        let witnesses = match &args.witnesses {
            Some(path) => witnesses_from_doc(&read_json::<WitnessesDoc>(path)?)?,
            None => BTreeMap::new(),
        };
        let report = check_legitimate(&g, td, lists, params, &witnesses)?;
        ok &= report.ok;
        checks.insert("legitimacy".into(), serde_json::to_value(&report).unwrap());
    }

    if let Some(path) = &args.coloring {
        let coloring = read_json::<ColoringDoc>(path)?.to_coloring()?;
        for (v, _) in coloring.iter() {
            g.check_vertex(v)?;
        }
        let respects = match &lists {
            Some(l) => Some(l.respected_by(&coloring)),
            None => None,
        };
        if respects == Some(false) {
            ok = false;
        }
        let total = coloring.len() == g.vertex_count();
        let diameter = coloring_weak_diameter(&g, &coloring)?;
        checks.insert(
            "coloring".into(),
            json!({
                "total": total,
                "respects_lists": respects,
                "weak_diameter": distance_value(diameter),
            }),
        );
    }

    eprintln!("validate: {}", if ok { "ok" } else { "violations found" });
    Ok(Outcome {
        document: json!({ "ok": ok, "checks": Value::Object(checks) }),
        ok,
    })
}

fn coloring_report(outcome: &ColoringOutcome) -> Value {
    json!({
        "coloring": serde_json::to_value(ColoringDoc::from_coloring(&outcome.coloring)).unwrap(),
        "weak_diameter": distance_value(outcome.weak_diameter),
        "bound": outcome.bound.to_string(),
        "self_checks": {
            "levels": outcome.stats.levels,
            "max_depth": outcome.stats.max_depth,
            "local_colorings": outcome.stats.local_colorings,
            "gadget_soundness_checks": outcome.stats.gadget_soundness_checks,
            "level_validations": outcome.stats.level_validations,
            "measure_checks": outcome.stats.measure_checks,
            "bound_checks": outcome.stats.bound_checks,
        },
    })
}

fn color_tw(args: ColorTwArgs, strict: bool) -> Result<Outcome, Error> {
    let g = read_graph(&args.graph)?;
    let td = read_json::<TreeDecompositionDoc>(&args.td)?.to_decomposition()?;
    let lists = read_lists(&args.lists, g.vertex_count())?;
    let precoloring = match &args.precoloring {
        Some(path) => read_json::<ColoringDoc>(path)?.to_coloring()?,
        None => Coloring::new(),
    };
    let outcome = color_bounded_treewidth_opts(&g, &td, &lists, &precoloring, args.k, strict)?;
    eprintln!(
        "color-tw: weak diameter {} within bound {}",
        outcome.weak_diameter, outcome.bound
    );
    Ok(Outcome {
        document: coloring_report(&outcome),
        ok: true,
    })
}

fn color_torso(args: ColorTorsoArgs, strict: bool) -> Result<Outcome, Error> {
    let g = read_graph(&args.graph)?;
    let td = read_json::<TreeDecompositionDoc>(&args.td)?.to_decomposition()?;
    let lists = read_lists(&args.lists, g.vertex_count())?;
    let outcome = match args.oracle {
        OracleKind::Brute => {
            let size_limit = td
                .nodes()
                .map(|t| td.bag(t).len())
                .max()
                .unwrap_or(1)
                .max(2);
            let oracle = BruteForceTorsoOracle {
                size_limit,
                cap: args.cap,
            };
            color_with_torso_oracle_opts(&g, &td, &lists, &oracle, strict)?
        }
        OracleKind::BipartiteApex => {
            let apexes: BTreeSet<usize> = match &args.apex_sets {
                Some(path) => {
                    let doc: BTreeMap<String, Vec<usize>> = read_json(path)?;
                    doc.values().flatten().copied().collect()
                }
                None => BTreeSet::new(),
            };
            let common: Vec<u32> = lists
                .palette()
                .iter()
                .copied()
                .filter(|c| (0..g.vertex_count()).all(|v| lists.list(v).contains(c)))
                .take(3)
                .collect();
            if common.len() < 3 {
                return Err(Error::rejected(
                    "bipartite-apex oracle needs three colors common to every list",
                ));
            }
            let oracle = BipartiteApexTorsoOracle {
                apexes,
                palette: [common[0], common[1], common[2]],
            };
            color_with_torso_oracle_opts(&g, &td, &lists, &oracle, strict)?
        }
    };
    eprintln!(
        "color-torso: weak diameter {} within bound {}",
        outcome.weak_diameter, outcome.bound
    );
    Ok(Outcome {
        document: coloring_report(&outcome),
        ok: true,
    })
}

fn brute(args: BruteArgs) -> Result<Outcome, Error> {
    let g = read_graph(&args.graph)?;
    let lists = read_lists(&args.lists, g.vertex_count())?;
    let document = match brute_force_min_weak_diameter(&g, &lists, args.cap)? {
        BruteForceOutcome::Found { minimum, witness } => {
            eprintln!("brute: minimum weak diameter {minimum}");
            json!({
                "min_weak_diameter": distance_value(minimum),
                "witness": serde_json::to_value(ColoringDoc::from_coloring(&witness)).unwrap(),
            })
        }
        BruteForceOutcome::TooLarge { product } => {
            eprintln!("brute: too large ({product} colorings)");
            json!({ "too_large": { "product": product.to_string(), "cap": args.cap } })
        }
    };
    Ok(Outcome { document, ok: true })
}

fn gadget(args: GadgetArgs) -> Result<Outcome, Error> {
    let host = match args.host.as_str() {
        "petersen" => petersen(),
        "c6" => cycle_graph(6)?,
        "c8" => cycle_graph(8)?,
        "cube" => hypercube(3),
        path => read_graph(Path::new(path))?,
    };
    let out = build_bipartite_gadget(&host, args.k)?;
    let mut document = serde_json::to_value(GadgetDoc::from_output(&out)).unwrap();
    if args.claim {
        let host_girth = match girth(&host) {
            Distance::Finite(gv) => gv,
            Distance::Infinite => {
                return Err(Error::rejected("host graph is acyclic; the claim needs a girth"))
            }
        };
        let claim = match gadget_weak_diameter_claim(&out, host_girth, args.cap)? {
            GadgetClaim::Verdict { threshold, verdict } => {
                json!({ "threshold": threshold, "verdict": verdict })
            }
            GadgetClaim::TooLarge { product } => {
                json!({ "too_large": { "product": product.to_string() } })
            }
        };
        document["claim"] = claim;
    }
    eprintln!(
        "gadget: {} vertices, {} edges",
        out.graph.vertex_count(),
        out.graph.edge_count()
    );
    Ok(Outcome {
        document,
        ok: true,
    })
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::InvalidInput(format!("missing --{flag}")))
}

fn bounds(args: BoundsArgs) -> Result<Outcome, Error> {
    let (name, value): (&str, BigUint) = match args.formula {
        Formula::AllCentered => (
            "all-centered",
            bound_all_centered(need(args.k, "k")?, need(args.r, "r")?),
        ),
        Formula::AddCentered => (
            "add-centered",
            bound_add_centered(
                need(args.k, "k")?,
                need(args.r, "r")?,
                need(args.n, "n")? as usize,
            ),
        ),
        Formula::Fstar => {
            let bp = BoundParams::new(
                need(args.theta, "theta")?,
                need(args.s, "s")?,
                need(args.r, "r")?,
                need(args.k, "k")?,
            )?;
            (
                "fstar",
                bound_fstar(&bp, need(args.eta, "eta")?, &BigUint::from(need(args.n, "n")?))?,
            )
        }
        Formula::Tw => ("tw", bound_tw(need(args.w, "w")?, need(args.k, "k")?)?),
        Formula::SmallExt => (
            "small-ext",
            bound_small_extension(need(args.d, "d")?, need(args.n, "n")? as usize),
        ),
        Formula::Torso => (
            "torso",
            bound_torso(need(args.p, "p")?, need(args.n, "n")? as usize)?,
        ),
    };
    eprintln!("bounds: {name} = {value}");
    Ok(Outcome {
        document: json!({ "formula": name, "value": value.to_string() }),
        ok: true,
    })
}
