use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use score_core::bench::{run_suite, BenchOptions, Suite};
use score_core::datasets::{default_data_dir, read_graph};
use score_core::dcbm::{parse_p_matrix, simulate, DegreeScale, Experiment};
use score_core::diagnostics::{error_rate, scree_and_rq_report, LabelVector};
use score_core::manifest::{sha256_hex, RunManifest};
use score_core::pipeline::{DEFAULT_DELTA, DEFAULT_RESTARTS, DEFAULT_T};
use score_core::{run_pipeline, Error, Graph, Method, PipelineConfig};

#[derive(Parser)]
#[command(name = "score", version, about = "Spectral community detection with SCORE and SCORE+")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect communities in a graph.
    Detect(DetectArgs),
    /// Sample a graph from the degree-corrected block model.
    Simulate(SimulateArgs),
    /// Rerun the published experiments and grade the results.
    Bench(BenchArgs),
    /// Scree and Rayleigh-quotient plot data for a labeled graph.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Score,
    #[value(name = "score+")]
    ScorePlus,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Literal,
    Calibrated,
}

impl From<ScaleArg> for DegreeScale {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Literal => DegreeScale::Literal,
            ScaleArg::Calibrated => DegreeScale::Calibrated,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Edge list or GML file.
    graph: PathBuf,
    /// `node<TAB>label` ground truth.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Drop nodes carrying this label (repeatable).
    #[arg(long = "exclude-label")]
    exclude: Vec<String>,
    /// Keep only the largest connected component.
    #[arg(long)]
    largest_component: bool,
}

impl GraphInput {
    fn load(&self) -> Result<Graph, Error> {
        let mut g = read_graph(&self.graph, self.labels.as_deref())?;
        if !self.exclude.is_empty() {
            g = g.filter_by_label(&self.exclude)?;
        }
        if self.largest_component {
            g = g.largest_connected_component()?;
        }
        Ok(g)
    }
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum, default_value = "score+")]
    method: MethodArg,
    /// Number of communities; defaults to the number of label classes.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = DEFAULT_T)]
    t: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    /// Override: decompose the regularized Laplacian instead of the adjacency matrix.
    #[arg(long)]
    pre_pca: Option<bool>,
    /// Override: weight eigenvectors by their eigenvalues.
    #[arg(long)]
    weighted: Option<bool>,
    /// Override: admit eigenvector K+1 when the gap is at most t.
    #[arg(long)]
    extra_vector: Option<bool>,
    /// Override: clip ratios to [-ln n, ln n].
    #[arg(long)]
    threshold_ratios: Option<bool>,
    /// Override: divide by the leading eigenvector.
    #[arg(long)]
    post_pca: Option<bool>,
    /// Write labels to this file and the manifest to `<out>.manifest`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    /// Number of communities; must match the block matrix when given.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), conflicts_with = "p_matrix")]
    experiment: Option<u8>,
    /// Block matrix file, one row per line.
    #[arg(long)]
    p_matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "calibrated")]
    theta_scale: ScaleArg,
    /// Output prefix: writes `<out>.edges`, `<out>.labels`, `<out>.manifest`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Suites to run (repeatable); all when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Dataset directory; defaults to $SCORE_DATA_DIR or the workspace data/ directory.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Replicates per simulation cell.
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long, value_delimiter = ',', default_value = "1000,2000")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    experiments: Vec<u8>,
    #[arg(long, value_enum, default_value = "calibrated")]
    theta_scale: ScaleArg,
    /// Directory for `<suite>.tsv` tables.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Eigenvectors per matrix.
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn resolve_k(k: Option<usize>, g: &Graph) -> Result<usize, Error> {
    match k {
        Some(k) => Ok(k),
        None if g.labels().is_some() => Ok(g.class_count()),
        None => Err(Error::InvalidArgument("--k is required for unlabeled graphs".into())),
    }
}

fn input_manifest(m: &mut RunManifest, input: &GraphInput) -> Result<(), Error> {
    m.record_input("graph", &input.graph)?;
    if let Some(l) = &input.labels {
        m.record_input("labels", l)?;
    }
    Ok(())
}

fn detect(args: DetectArgs) -> Result<bool, Error> {
    let started = Instant::now();
    let g = args.input.load()?;
    let k = resolve_k(args.k, &g)?;
    let method = match args.method {
        MethodArg::Score => Method::Score,
        MethodArg::ScorePlus => Method::ScorePlus,
    };
    let mut cfg = PipelineConfig::for_method(method, k)
        .with_delta(args.delta)
        .with_t(args.t)
        .with_seed(args.seed)
        .with_restarts(args.restarts);
    let overrides = [
        (args.pre_pca, &mut cfg.pre_pca),
        (args.weighted, &mut cfg.weight_by_eigenvalue),
        (args.extra_vector, &mut cfg.extra_vector),
        (args.threshold_ratios, &mut cfg.threshold_ratios),
        (args.post_pca, &mut cfg.post_pca),
    ];
    for (value, slot) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    let result = run_pipeline(&g, &cfg).map_err(|e| match e {
        Error::Disconnected { components } => Error::InvalidArgument(format!(
            "graph has {components} connected components; pass --largest-component"
        )),
        other => other,
    })?;

    let mut m = RunManifest::new();
    m.set("command", command_line()).set("method", cfg.describe());
    input_manifest(&mut m, &args.input)?;
    m.set("k", k)
        .set("delta", cfg.delta)
        .set("t", cfg.t)
        .set("pre_pca", cfg.pre_pca)
        .set("weight_by_eigenvalue", cfg.weight_by_eigenvalue)
        .set("extra_vector", cfg.extra_vector)
        .set("threshold_ratios", cfg.threshold_ratios)
        .set("post_pca", cfg.post_pca)
        .set("restarts", cfg.kmeans_restarts)
        .set("seed", cfg.seed)
        .set("n", g.node_count())
        .set("edges", g.edge_count())
        .set("m_used", result.m_used)
        .set("gap", result.gap)
        .set("signal", format!("{:?}", result.signal).to_lowercase())
        .set("kmeans_objective", result.kmeans_objective);
    let mut summary = format!(
        "n={} k={k} method={} m_used={} gap={:.4}",
        g.node_count(),
        cfg.describe(),
        result.m_used,
        result.gap
    );
    if g.labels().is_some() {
        let truth = LabelVector::from_graph(&g)?;
        let est = LabelVector::with_alphabet(result.labels.clone(), k)?;
        let err = error_rate(&est, &truth)?;
        m.set("errors", err.count).set("error_rate", err.rate);
        summary.push_str(&format!(" errors={}/{} rate={:.4}", err.count, g.node_count(), err.rate));
    }
    m.set("labels_sha256", sha256_hex(format!("{:?}", result.labels).as_bytes()));
    m.set_duration(started.elapsed());

    let mut labels = String::new();
    for (name, l) in g.node_names().iter().zip(&result.labels) {
        labels.push_str(&format!("{name}\t{l}\n"));
    }
    match &args.out {
        Some(out) => {
            fs::write(out, labels)?;
            fs::write(with_suffix(out, "manifest"), m.to_text())?;
        }
        None => print!("{labels}"),
    }
    eprintln!("{summary}");
    Ok(true)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn simulate_cmd(args: SimulateArgs) -> Result<bool, Error> {
    let started = Instant::now();
    let (p, source) = match (&args.p_matrix, args.experiment) {
        (Some(path), _) => (parse_p_matrix(&fs::read_to_string(path)?)?, path.display().to_string()),
        (None, Some(1)) => (Experiment::One.p_matrix(), "experiment 1".into()),
        (None, Some(_)) => (Experiment::Two.p_matrix(), "experiment 2".into()),
        (None, None) => {
            return Err(Error::InvalidArgument("pass --experiment or --p-matrix".into()))
        }
    };
    if let Some(k) = args.k {
        if k != p.len() {
            return Err(Error::InvalidArgument(format!(
                "--k {k} does not match the {0}x{0} block matrix",
                p.len()
            )));
        }
    }
    let scale = DegreeScale::from(args.theta_scale);
    let sample = simulate(p.clone(), args.n, scale, args.seed)?;
    let g = &sample.graph;
    let edges_path = with_suffix(&args.out, "edges");
    let labels_path = with_suffix(&args.out, "labels");
    fs::write(&edges_path, g.to_edge_list())?;
    fs::write(&labels_path, g.to_label_list().expect("simulated graphs are labeled"))?;

    let info = g.degree_info();
    let mut m = RunManifest::new();
    m.set("command", command_line())
        .set("block_matrix", source)
        .set("p", format!("{p:?}"))
        .set("n", args.n)
        .set("k", p.len())
        .set("theta_scale", scale.as_str())
        .set("seed", args.seed)
        .set("edges", g.edge_count())
        .set("mean_degree", info.d_bar())
        .set("isolated_nodes", info.degrees.iter().filter(|&&d| d == 0).count())
        .set("components", g.components().len())
        .set("clamped_pairs", sample.clamped);
    m.record_input("edges_file", &edges_path)?;
    m.record_input("labels_file", &labels_path)?;
    m.set_duration(started.elapsed());
    fs::write(with_suffix(&args.out, "manifest"), m.to_text())?;
    eprintln!(
        "n={} edges={} mean_degree={:.2} components={}",
        args.n,
        g.edge_count(),
        info.d_bar(),
        g.components().len()
    );
    Ok(true)
}

fn bench(args: BenchArgs) -> Result<bool, Error> {
    let suites = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites.iter().map(|s| Suite::parse(s)).collect::<Result<_, _>>()?
    };
    let experiments = args
        .experiments
        .iter()
        .map(|&e| match e {
            1 => Ok(Experiment::One),
            2 => Ok(Experiment::Two),
            _ => Err(Error::InvalidArgument(format!("unknown experiment {e}"))),
        })
        .collect::<Result<_, _>>()?;
    let opts = BenchOptions {
        data_dir: args.data_dir.unwrap_or_else(default_data_dir),
        seeds: args.seeds,
        seed: args.seed,
        restarts: args.restarts,
        sizes: args.sizes,
        experiments,
        scale: args.theta_scale.into(),
    };
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
    }
    let mut all_passed = true;
    for suite in suites {
        let started = Instant::now();
        let table = run_suite(suite, &opts)?;
        let tsv = table.to_tsv();
        print!("{tsv}");
        for m in &table.missing {
            eprintln!("{}: skipped missing dataset {m}", suite.as_str());
        }
        eprintln!(
            "{}: {} rows, {} failed, {:.1}s",
            suite.as_str(),
            table.rows.len(),
            table.failures(),
            started.elapsed().as_secs_f64()
        );
        if let Some(dir) = &args.out {
            fs::write(dir.join(format!("{}.tsv", suite.as_str())), &tsv)?;
        }
        all_passed &= table.passed();
    }
    Ok(all_passed)
}

fn report(args: ReportArgs) -> Result<bool, Error> {
    let g = args.input.load()?;
    let k = resolve_k(args.k, &g)?;
    let r = scree_and_rq_report(&g, k, args.delta, args.depth)?;
    match &args.out {
        Some(out) => fs::write(out, r.to_tsv())?,
        None => print!("{}", r.to_tsv()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Detect(a) => detect(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Bench(a) => bench(a),
        Command::Report(a) => report(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
