mod labeling;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use romdom::circle::parse_rational;
use romdom::experiments::{self, ExperimentRecord, SweepKind};
use romdom::finite::{self, block_witness};
use romdom::graphing::{le, rdm_lower_bound};
use romdom::{
    Alpha, AlphaNum, CirclePoint, Error, FiniteGraph, Labeling, PathOrCycle, Result,
    RotationGraphing, Scheme, SchemeParams, BRUTE_FORCE_CAP, DEFAULT_PRECISION_BITS,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "romdom",
    version,
    about = "Exact Roman domination on rotation graphings and finite graphs"
)]
struct Cli {
    /// Rotation angle: golden, sqrt2m1, or cf:0,a1,a2,... (decimals rejected)
    #[arg(long, global = true, default_value = "golden")]
    alpha: String,

    /// Precision ceiling, in bits, for the first rung of ordering decisions
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    precision: u32,

    /// Output format; csv applies to experiments only
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve Roman domination exactly on a finite graph
    Solve {
        /// Edge-list file: header `n m`, then one `u v` pair per line
        graph: PathBuf,
    },
    /// Build the windowed dominating labeling on the rotation graphing
    Scheme {
        /// Window width as a rational p/q in (0, 1)
        #[arg(long, default_value = "1/100")]
        epsilon: String,
        /// Number of pull-back levels; multiple of 3, default 3*ceil(10/epsilon)
        #[arg(long)]
        depth: Option<u32>,
        /// Also list the arcs of the 2-labeled set
        #[arg(long)]
        emit_arcs: bool,
    },
    /// Check a labeling file: partition, domination, exact measures
    Verify {
        /// Arc-list file with l0:/l1:/l2: sections
        labeling: PathBuf,
        /// Rotation step of the graphing, in endpoint grammar
        #[arg(long, default_value = "a")]
        beta: String,
    },
    /// Run a deterministic experiment batch
    Experiments {
        /// convergence, parsprototo, edge_measure, or scheme_audit
        kind: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest cycle order for the convergence run
        #[arg(long, default_value_t = 1000)]
        max_denominator: u64,
        /// Write records here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the degree-based lower bound min(1, 2/(delta+1)) for the RDM
    LowerBound {
        /// Maximum degree of the graphing
        #[arg(long)]
        delta: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    };
    std::process::exit(code);
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::GraphParse { .. } => 2,
        Error::InstanceTooLarge { .. } => 3,
        Error::PrecisionExhausted { .. } => 4,
        Error::PartitionViolation(_) => 5,
        Error::DominationFailure(_) => 6,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let alpha = alpha_from(cli)?;
    match &cli.command {
        Command::Solve { graph } => cmd_solve(cli, graph),
        Command::Scheme {
            epsilon,
            depth,
            emit_arcs,
        } => cmd_scheme(cli, &alpha, epsilon, *depth, *emit_arcs),
        Command::Verify { labeling, beta } => cmd_verify(cli, alpha, labeling, beta),
        Command::Experiments {
            kind,
            trials,
            seed,
            max_denominator,
            out,
        } => cmd_experiments(cli, &alpha, kind, *trials, *seed, *max_denominator, out.as_ref()),
        Command::LowerBound { delta } => cmd_lower_bound(cli, *delta),
    }
}

fn alpha_from(cli: &Cli) -> Result<Alpha> {
    let parsed = Alpha::parse(&cli.alpha)?;
    Alpha::with_precision(parsed.kind().clone(), cli.precision)
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn no_csv(cli: &Cli) -> Result<()> {
    if cli.format == Format::Csv {
        return Err(Error::InvalidParameter(
            "csv output applies to experiments only".into(),
        ));
    }
    Ok(())
}

fn print_json(map: Map<String, Value>) {
    println!("{}", serde_json::to_string_pretty(&Value::Object(map)).expect("json encode"));
}

fn exact_pair(map: &mut Map<String, Value>, key: &str, v: &AlphaNum, alpha: &Alpha) {
    map.insert(format!("{key}_exact"), Value::String(v.exact_string()));
    map.insert(format!("{key}_dec"), Value::String(v.decimal_string(alpha)));
}

fn measure_line(key: &str, v: &AlphaNum, alpha: &Alpha) {
    println!("{key}: {} ({})", v.exact_string(), v.decimal_string(alpha));
}

fn cmd_solve(cli: &Cli, path: &PathBuf) -> Result<i32> {
    no_csv(cli)?;
    let g = FiniteGraph::parse(&read(path)?)?;
    let shape = g.classify_path_or_cycle();
    let (value, witness, domination, roman) = if g.n() <= BRUTE_FORCE_CAP {
        let (value, witness) = finite::brute_force_rdn(&g)?;
        let domination = finite::domination_number(&g)?;
        let roman = finite::is_roman_graph(&g)?;
        (value, witness, Some(domination), Some(roman))
    } else if let Some(kind) = shape {
        let value = finite::cycle_path_rdn(kind, g.n())?;
        let witness = block_witness(kind, g.n())?;
        if !g.is_valid_rdf(&witness)? || witness.value() != value {
            return Err(Error::DominationFailure(
                "constructed witness disagrees with the computed optimum".into(),
            ));
        }
        (value, witness, None, None)
    } else {
        return Err(Error::InstanceTooLarge {
            n: g.n(),
            cap: BRUTE_FORCE_CAP,
        });
    };
    let nrdn = BigRational::new(value.into(), (g.n() as i64).into());
    let shape_name = match shape {
        Some(PathOrCycle::Path) => "path",
        Some(PathOrCycle::Cycle) => "cycle",
        None => "general",
    };
    match cli.format {
        Format::Text => {
            println!("graph: {shape_name}, n={}, m={}", g.n(), g.edges().len());
            println!("rdn: {value}");
            println!("nrdn: {nrdn}");
            println!(
                "witness: {}",
                witness
                    .labels()
                    .iter()
                    .map(u8::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            match domination {
                Some(d) => println!("domination_number: {d}"),
                None => println!("domination_number: n/a (instance exceeds exhaustive cap)"),
            }
            match roman {
                Some(r) => println!("roman: {r}"),
                None => println!("roman: n/a (instance exceeds exhaustive cap)"),
            }
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("graph".into(), json!(shape_name));
            map.insert("n".into(), json!(g.n()));
            map.insert("m".into(), json!(g.edges().len()));
            map.insert("rdn".into(), json!(value));
            map.insert("nrdn".into(), json!(nrdn.to_string()));
            map.insert("witness".into(), json!(witness.labels()));
            map.insert("domination_number".into(), json!(domination));
            map.insert("roman".into(), json!(roman));
            print_json(map);
        }
        Format::Csv => unreachable!(),
    }
    Ok(0)
}

fn cmd_scheme(
    cli: &Cli,
    alpha: &Alpha,
    epsilon: &str,
    depth: Option<u32>,
    emit_arcs: bool,
) -> Result<i32> {
    no_csv(cli)?;
    let eps = parse_rational(epsilon)?;
    let depth = match depth {
        Some(k) => k,
        None => SchemeParams::default_depth(&eps)?,
    };
    let params = SchemeParams::new(alpha.clone(), eps.clone(), depth)?;
    let scheme = Scheme::build(params)?;
    let r = &scheme.report;
    let bound_satisfied = le(&r.x_measure, &r.x_bound, alpha)?;
    let l2 = scheme.labeling.l2();
    match cli.format {
        Format::Text => {
            println!("alpha: {alpha}");
            println!("epsilon: {eps}");
            println!("depth: {depth}");
            println!("domination_valid: {}", r.domination_valid);
            measure_line("x_measure", &r.x_measure, alpha);
            measure_line("x_bound", &r.x_bound, alpha);
            println!("bound_satisfied: {bound_satisfied}");
            measure_line("uncovered_measure", &r.uncovered_measure, alpha);
            measure_line("completed_value", &r.completed_value, alpha);
            println!("l2_arcs: {}", l2.num_arcs());
            if emit_arcs {
                for arc in l2.arcs() {
                    println!("[{}, {})", arc.start(), arc.end());
                }
            }
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("alpha".into(), json!(alpha.to_string()));
            map.insert("epsilon".into(), json!(eps.to_string()));
            map.insert("depth".into(), json!(depth));
            map.insert("domination_valid".into(), json!(r.domination_valid));
            exact_pair(&mut map, "x_measure", &r.x_measure, alpha);
            exact_pair(&mut map, "x_bound", &r.x_bound, alpha);
            map.insert("bound_satisfied".into(), json!(bound_satisfied));
            exact_pair(&mut map, "uncovered_measure", &r.uncovered_measure, alpha);
            exact_pair(&mut map, "completed_value", &r.completed_value, alpha);
            map.insert("l2_arcs".into(), json!(l2.num_arcs()));
            if emit_arcs {
                let arcs: Vec<Value> = l2
                    .arcs()
                    .iter()
                    .map(|a| json!([a.start().to_string(), a.end().to_string()]))
                    .collect();
                map.insert("arcs".into(), Value::Array(arcs));
            }
            print_json(map);
        }
        Format::Csv => unreachable!(),
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, alpha: Alpha, path: &PathBuf, beta: &str) -> Result<i32> {
    no_csv(cli)?;
    let beta = CirclePoint::parse(beta, &alpha)?;
    let (l0, l1, l2) = labeling::parse_file(&read(path)?, &alpha)?;
    let f = Labeling::new(l0, l1, l2, &alpha)?;
    let g = RotationGraphing::new(beta.clone(), alpha.clone())?;
    let report = g.is_rdf(&f)?;
    let violating = report.violating_set.measure(&alpha)?;
    match cli.format {
        Format::Text => {
            println!("beta: {beta}");
            println!("partition: ok");
            println!("valid: {}", report.valid);
            measure_line("measured_value", &report.measured_value, &alpha);
            measure_line("social_measure", &report.social_measure, &alpha);
            measure_line("needy_measure", &report.needy_measure, &alpha);
            if !report.valid {
                measure_line("violating_measure", &violating, &alpha);
            }
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("beta".into(), json!(beta.to_string()));
            map.insert("partition".into(), json!("ok"));
            map.insert("valid".into(), json!(report.valid));
            exact_pair(&mut map, "measured_value", &report.measured_value, &alpha);
            exact_pair(&mut map, "social_measure", &report.social_measure, &alpha);
            exact_pair(&mut map, "needy_measure", &report.needy_measure, &alpha);
            exact_pair(&mut map, "violating_measure", &violating, &alpha);
            print_json(map);
        }
        Format::Csv => unreachable!(),
    }
    Ok(if report.valid { 0 } else { 6 })
}

fn cmd_experiments(
    cli: &Cli,
    alpha: &Alpha,
    kind: &str,
    trials: u64,
    seed: u64,
    max_denominator: u64,
    out: Option<&PathBuf>,
) -> Result<i32> {
    let records = match kind.replace('-', "_").as_str() {
        "convergence" => experiments::convergence_run(alpha, max_denominator)?,
        "parsprototo" => experiments::property_sweep(alpha, SweepKind::Parsprototo, trials, seed)?,
        "edge_measure" => experiments::property_sweep(alpha, SweepKind::EdgeMeasure, trials, seed)?,
        "scheme_audit" => experiments::property_sweep(alpha, SweepKind::SchemeAudit, trials, seed)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown experiment kind {other:?}; expected convergence, parsprototo, edge_measure, or scheme_audit"
            )))
        }
    };
    let payload = match cli.format {
        Format::Json => experiments::to_json(&records),
        Format::Csv | Format::Text => experiments::to_csv(&records),
    };
    match out {
        Some(path) => {
            fs::write(path, &payload).map_err(|e| {
                Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
            })?;
            println!("wrote {} records to {}", records.len(), path.display());
        }
        None => print!("{payload}"),
    }
    if experiments::all_pass(&records) {
        Ok(0)
    } else {
        if let Some(bad) = records.iter().find(|r| !r.passed()) {
            eprintln!("property failure: {}", reproducer(bad));
        }
        Ok(6)
    }
}

fn reproducer(rec: &ExperimentRecord) -> String {
    ["experiment", "alpha", "seed", "trial", "index", "q"]
        .iter()
        .filter_map(|k| rec.get(k).map(|v| format!("{k}={v}")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_lower_bound(cli: &Cli, delta: u64) -> Result<i32> {
    no_csv(cli)?;
    let bound = rdm_lower_bound(delta);
    match cli.format {
        Format::Text => println!("{bound}"),
        Format::Json => {
            let mut map = Map::new();
            map.insert("delta".into(), json!(delta));
            map.insert("lower_bound".into(), json!(bound.to_string()));
            print_json(map);
        }
        Format::Csv => unreachable!(),
    }
    Ok(0)
}
