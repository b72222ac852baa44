use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sumdist::construct::{leaf_stat, repair_labeler, s_star_bounds, tree_labeler};
use sumdist::exact::{exact_irr_with, exact_s_star_with, exact_s_with, SolveOptions, DEFAULT_NODE_BUDGET};
use sumdist::format::{parse_graph, parse_hypergraph, serialize_hypergraph, LabelingReport};
use sumdist::genx::{gen_runiform, lower_bound_instance, run_experiment, ExperimentConfig, LowerBoundOptions};
use sumdist::hypercore::{dual, first_collision, is_vertex_sum_distinguishing};
use sumdist::prob::{point_margin, sum_pmf};
use sumdist::randlabel::{
    parse_constant, quadratic_random_labeling, two_step_labeling, TwoStepConfig, DEFAULT_K, DEFAULT_P,
    DEFAULT_SEED,
};
use sumdist::{Error, Graph, Hypergraph, Labeling};

#[derive(Parser)]
#[command(name = "sumdist", version, about = "Sum-distinguishing labelings of hypergraphs and graphs")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimum maximum label.
    Solve {
        #[arg(value_enum)]
        problem: Problem,
        /// A .hg file (`s`, `irr`) or a .g file (`sstar`).
        file: PathBuf,
        /// Search node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Construct a labeling.
    #[command(subcommand)]
    Label(LabelCommand),
    /// Degree bounds on s* for a graph.
    Bounds { file: PathBuf },
    /// The dual hypergraph.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a hypergraph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Distribution of a sum of l uniforms on [N].
    Pmf {
        l: usize,
        n: u64,
        /// Also report Pr[lo <= sum <= hi].
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
        /// Also report the point-probability margin for a 2l-fold sum at this C.
        #[arg(long)]
        margin: Option<f64>,
    },
    /// Run an experiment described by a JSON config.
    Experiment { config: PathBuf },
    /// Check a labeling against a hypergraph (edge sums) or graph (closed sums).
    Verify {
        file: PathBuf,
        /// Whitespace-separated labels, or a JSON object with a "labels" array.
        labels: PathBuf,
        /// Read `file` as a graph and check closed-neighborhood sums.
        #[arg(long)]
        graph: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    S,
    Sstar,
    Irr,
}

#[derive(Args)]
struct SeedArg {
    /// Random seed; a fixed default is used and reported when omitted.
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
}

impl SeedArg {
    fn resolve(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            eprintln!("no --seed given, using the default seed {DEFAULT_SEED:#X}");
            DEFAULT_SEED
        })
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum LabelCommand {
    /// Uniform labels in [m²], retried until distinguishing.
    Quadratic {
        file: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
    /// Two-step labeler with labels in [⌈m²/C⌉].
    TwoStep {
        file: PathBuf,
        #[arg(long = "C", default_value = "4")]
        c: String,
        #[arg(long = "K", default_value_t = DEFAULT_K)]
        k: u64,
        #[arg(long = "P", default_value_t = DEFAULT_P)]
        p: u64,
        #[command(flatten)]
        seed: SeedArg,
        /// Default for both step budgets.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long)]
        step1_budget: Option<u64>,
        #[arg(long)]
        step2_budget: Option<u64>,
    },
    /// Bad-pair repair for closed-neighborhood sums on a graph.
    Repair { file: PathBuf },
    /// Leaf-peeling labeler for closed-neighborhood sums on a tree.
    Tree { file: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Every r-subset of [n] independently with probability p.
    Runiform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// n vertices, m edges: a random r-uniform core padded with isolated vertices.
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Report {
    json: Value,
    text: String,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    Ok(parse_hypergraph(&read(path)?)?)
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn load_labels(path: &Path) -> Result<Labeling, Failure> {
    let text = read(path)?;
    let bad = |msg: String| Failure::Usage(format!("{}: {msg}", path.display()));
    let values: Vec<u64> = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        serde_json::from_value(v.get("labels").cloned().unwrap_or(Value::Null))
            .map_err(|_| bad("expected a \"labels\" array of positive integers".into()))?
    } else {
        text.split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("`{t}` is not a label"))))
            .collect::<Result<_, _>>()?
    };
    Ok(Labeling::new(values)?)
}

fn labels_text(f: &Labeling) -> String {
    f.values().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Verifies `f` on `h` and refuses to print an unverified labeling.
fn checked_hypergraph_labeling(h: &Hypergraph, f: &Labeling) -> Result<Value, Failure> {
    if let Some((i, j)) = first_collision(h, f)? {
        return Err(Error::Invariant(format!("produced labeling collides on edges {i} and {j}")).into());
    }
    Ok(json!(LabelingReport::new(f, true)))
}

fn checked_graph_labeling(g: &Graph, f: &Labeling) -> Result<Value, Failure> {
    if !is_vertex_sum_distinguishing(g, f)? {
        return Err(Error::Invariant("produced labeling has a bad pair".into()).into());
    }
    Ok(json!(LabelingReport::new(f, true)))
}

fn solve(problem: Problem, file: &Path, budget: u64) -> Result<Report, Failure> {
    let opts = SolveOptions {
        node_budget: budget,
        ..SolveOptions::default()
    };
    let (result, labeling) = match problem {
        Problem::S => {
            let h = load_hypergraph(file)?;
            let r = exact_s_with(&h, &opts)?;
            let report = checked_hypergraph_labeling(&h, &r.witness)?;
            (r, report)
        }
        Problem::Sstar => {
            let g = load_graph(file)?;
            let r = exact_s_star_with(&g, &opts)?;
            let report = checked_graph_labeling(&g, &r.witness)?;
            (r, report)
        }
        Problem::Irr => {
            let h = load_hypergraph(file)?;
            let r = exact_irr_with(&h, &opts)?;
            let d = dual(&h)?;
            let report = checked_hypergraph_labeling(&d.hypergraph, &r.witness)?;
            (r, report)
        }
    };
    Ok(Report {
        text: format!(
            "optimum: {}\nwitness: {}\nnodes: {}\n",
            result.optimum,
            labels_text(&result.witness),
            result.nodes_expanded
        ),
        json: json!({
            "optimum": result.optimum,
            "witness": result.witness.values(),
            "nodes": result.nodes_expanded,
            "verified": labeling["verified"],
            "elapsed_ms": result.elapsed.as_secs_f64() * 1e3,
        }),
    })
}

fn label(cmd: &LabelCommand) -> Result<Report, Failure> {
    match cmd {
        LabelCommand::Quadratic { file, seed, budget } => {
            let h = load_hypergraph(file)?;
            let seed = seed.resolve();
            let out = quadratic_random_labeling(&h, seed, *budget)?;
            let mut json = checked_hypergraph_labeling(&h, &out.labeling)?;
            json["seed"] = json!(seed);
            json["attempts"] = json!(out.attempts);
            Ok(Report {
                text: format!(
                    "labels: {}\nmax label: {}\nattempts: {}\nseed: {seed}\n",
                    labels_text(&out.labeling),
                    out.labeling.max_label(),
                    out.attempts
                ),
                json,
            })
        }
        LabelCommand::TwoStep {
            file,
            c,
            k,
            p,
            seed,
            budget,
            step1_budget,
            step2_budget,
        } => {
            let h = load_hypergraph(file)?;
            let cfg = TwoStepConfig {
                c: parse_constant(c).map_err(|e| Failure::Usage(e.to_string()))?,
                k: *k,
                p: *p,
                seed: seed.resolve(),
                step1_budget: step1_budget.unwrap_or(*budget),
                step2_budget: step2_budget.unwrap_or(*budget),
            };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let out = two_step_labeling(&h, &cfg)?;
            let mut json = checked_hypergraph_labeling(&h, &out.labeling)?;
            json["seed"] = json!(cfg.seed);
            json["stats"] = json!(out.stats);
            let s = &out.stats;
            Ok(Report {
                text: format!(
                    "labels: {}\nmax label: {} (bound {})\npopular vertices: {}\nstep 1 attempts: {}\nstep 2 attempts: {}\nseed: {}\n",
                    labels_text(&out.labeling),
                    out.labeling.max_label(),
                    s.label_bound,
                    s.popular_vertices,
                    s.step1_attempts,
                    s.step2_attempts,
                    cfg.seed
                ),
                json,
            })
        }
        LabelCommand::Repair { file } => {
            let g = load_graph(file)?;
            let out = repair_labeler(&g)?;
            let mut json = checked_graph_labeling(&g, &out.labeling)?;
            json["xi"] = json!(out.xi);
            json["steps"] = json!(out.steps);
            Ok(Report {
                text: format!(
                    "labels: {}\nmax label: {} (xi {})\nrepair steps: {}\n",
                    labels_text(&out.labeling),
                    out.labeling.max_label(),
                    out.xi,
                    out.steps.len()
                ),
                json,
            })
        }
        LabelCommand::Tree { file } => {
            let g = load_graph(file)?;
            let f = tree_labeler(&g)?;
            let leaves = leaf_stat(&g)?;
            let bound = 2 * g.vertex_count() - 2 - leaves.max_leaves;
            let mut json = checked_graph_labeling(&g, &f)?;
            json["bound"] = json!(bound);
            json["max_leaves"] = json!(leaves.max_leaves);
            Ok(Report {
                text: format!(
                    "labels: {}\nmax label: {} (bound 2n-2-L = {bound})\n",
                    labels_text(&f),
                    f.max_label()
                ),
                json,
            })
        }
    }
}

fn bounds(file: &Path) -> Result<Report, Failure> {
    let g = load_graph(file)?;
    let b = s_star_bounds(&g);
    Ok(Report {
        text: format!(
            "distinct closed neighborhoods: {}\nmin degree: {}\nmax degree: {}\nlower: {}\nxi: {}\n(max degree + 1) n: {}\n",
            b.distinct_neighborhoods, b.min_degree, b.max_degree, b.lower, b.xi, b.upper_loose
        ),
        json: json!(b),
    })
}

fn hypergraph_output(h: &Hypergraph, out: Option<&Path>, mut json: Value) -> Result<Report, Failure> {
    let text = serialize_hypergraph(h);
    json["vertices"] = json!(h.vertex_count());
    json["edge_count"] = json!(h.edge_count());
    match out {
        Some(path) => {
            write(path, &text)?;
            json["out"] = json!(path.display().to_string());
            Ok(Report {
                text: format!("wrote {} ({} vertices, {} edges)\n", path.display(), h.vertex_count(), h.edge_count()),
                json,
            })
        }
        None => {
            json["edges"] = json!(h.edges());
            Ok(Report { text, json })
        }
    }
}

fn dual_command(file: &Path, out: Option<&Path>) -> Result<Report, Failure> {
    let h = load_hypergraph(file)?;
    let d = dual(&h)?;
    hypergraph_output(
        &d.hypergraph,
        out,
        json!({"skipped": d.skipped, "source_vertex": d.source_vertex}),
    )
}

fn gen(cmd: &GenCommand) -> Result<Report, Failure> {
    match cmd {
        GenCommand::Runiform { n, r, p, seed, out } => {
            let seed = seed.resolve();
            let h = gen_runiform(*n, *r, *p, seed)?;
            hypergraph_output(&h, out.as_deref(), json!({"seed": seed}))
        }
        GenCommand::Lowerbound {
            n,
            m,
            epsilon,
            delta,
            seed,
            out,
        } => {
            let seed = seed.resolve();
            let opts = LowerBoundOptions {
                delta: *delta,
                ..LowerBoundOptions::default()
            };
            let inst = lower_bound_instance(*n, *m, *epsilon, seed, &opts)?;
            let meta = json!({
                "seed": seed,
                "r": inst.r,
                "core_vertices": inst.core_vertices,
                "p": inst.p,
                "sampled_edges": inst.sampled_edges,
            });
            hypergraph_output(&inst.hypergraph, out.as_deref(), meta)
        }
    }
}

fn pmf(l: usize, n: u64, window: Option<&[i64]>, margin: Option<f64>) -> Result<Report, Failure> {
    let pmf = sum_pmf(l, n)?;
    let probabilities = pmf.probabilities();
    let mut json = json!({
        "l": l,
        "N": n,
        "support_min": pmf.support_min(),
        "probabilities": probabilities,
    });
    let mut text: String = probabilities
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{}\t{p:.6e}\n", pmf.support_min() + i as u64))
        .collect();
    if let Some(&[lo, hi]) = window {
        let exact = pmf.window(lo, hi);
        let value = sumdist::prob::ratio_to_f64(&exact);
        json["window"] = json!({"lo": lo, "hi": hi, "probability": value, "exact": exact.to_string()});
        text.push_str(&format!("Pr[{lo} <= sum <= {hi}] = {value:.6e}\n"));
    }
    if let Some(c) = margin {
        let m = point_margin(l, n, c)?;
        json["margin"] = json!({
            "C": c,
            "margin": m.margin,
            "max_probability": m.max_probability,
            "argmax": m.argmax,
            "mean": m.mean,
        });
        text.push_str(&format!("margin at C={c}: {:.6} (max at {}, mean {})\n", m.margin, m.argmax, m.mean));
    }
    Ok(Report { json, text })
}

fn experiment(path: &Path) -> Result<Report, Failure> {
    let config: ExperimentConfig =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let report = run_experiment(&config)?;
    let mut text = String::from("index\tvertices\tedges\tvalue\treference\n");
    for r in &report.records {
        let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.index,
            r.vertices,
            r.edges,
            r.error.clone().unwrap_or_else(|| show(r.value)),
            show(r.reference)
        ));
    }
    if let Some(s) = &report.values {
        text.push_str(&format!("min {} median {} max {}\n", s.min, s.median, s.max));
    }
    Ok(Report {
        json: json!(report),
        text,
    })
}

fn verify(file: &Path, labels: &Path, graph: bool) -> Result<(Report, bool), Failure> {
    let f = load_labels(labels)?;
    let (ok, detail) = if graph {
        let g = load_graph(file)?;
        let ok = is_vertex_sum_distinguishing(&g, &f)?;
        (ok, Value::Null)
    } else {
        let h = load_hypergraph(file)?;
        let hit = first_collision(&h, &f)?;
        (hit.is_none(), json!(hit))
    };
    let mut json = json!(LabelingReport::new(&f, ok));
    if !graph {
        json["collision"] = detail.clone();
    }
    let text = match detail.as_array() {
        Some(pair) => format!("not distinguishing: edges {} and {} share a sum\n", pair[0], pair[1]),
        None if ok => format!("verified, max label {}\n", f.max_label()),
        None => "not vertex-sum-distinguishing\n".to_string(),
    };
    Ok((Report { json, text }, ok))
}

fn run(cli: &Cli) -> Result<(Report, bool), Failure> {
    let report = match &cli.command {
        Command::Solve { problem, file, budget } => solve(*problem, file, *budget)?,
        Command::Label(cmd) => label(cmd)?,
        Command::Bounds { file } => bounds(file)?,
        Command::Dual { file, out } => dual_command(file, out.as_deref())?,
        Command::Gen(cmd) => gen(cmd)?,
        Command::Pmf { l, n, window, margin } => pmf(*l, *n, window.as_deref(), *margin)?,
        Command::Experiment { config } => experiment(config)?,
        Command::Verify { file, labels, graph } => return verify(file, labels, *graph),
    };
    Ok((report, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            match cli.output {
                Output::Json => println!("{}", report.json),
                Output::Text => print!("{}", report.text),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_infeasibility() || matches!(e, Error::Invariant(_)) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
