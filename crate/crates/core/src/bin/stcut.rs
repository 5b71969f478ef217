//! Command line front end: instance generation, the full pipeline, exact
//! solvers and verifiers, and a sweep benchmark. Vertices are 1-indexed on
//! the command line and in graph files. Exit status is 0 only when the
//! requested postcondition held.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use stcut::error::Result;
use stcut::exact::{brute_force_min_st_cut, BRUTE_FORCE_LIMIT};
use stcut::format::{emit_graph, parse_graph, GraphFile};
use stcut::graph::cut_weight;
use stcut::instances::{
    gen_lower_bound, gen_random, positive_kinds, verify_family_counting, LowerBoundKind,
};
use stcut::oracle::{GraphOracle, ListOracle, MatrixOracle, OracleKind};
use stcut::pipeline::{learn_cut_edges, st_min_cut, PipelineConfig};
use stcut::report::{emit_report, InstanceInfo, RunReport};
use stcut::sparsify::{build_sparsifier, verify_sparsifier, SparsifyConfig};
use stcut::CostLedger;

#[derive(Parser)]
#[command(name = "stcut", version, about = "s-t minimum cut with oracle access")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate instance files
    Gen(GenArgs),
    /// Run the full pipeline on a graph file
    Solve(SolveArgs),
    /// Exhaustive minimum s-t cut (small n)
    Exact(ExactArgs),
    /// Build a sparsifier and check every cut of the graph against it
    VerifySparsifier(VerifySparsifierArgs),
    /// Exhaustive counting checks for the query lower-bound family
    VerifyFamily(VerifyFamilyArgs),
    /// Pipeline sweep over n and W; CSV on stdout or to a file
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    what: GenCmd,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Erdős–Rényi-style weighted graph
    Random {
        #[arg(long)]
        n: usize,
        /// Per-pair edge probability
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        max_w: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Lower-bound family member: index 0 is the disconnected negative
    /// instance, 1..=count the positives in canonical label order
    Family {
        /// Even n >= 6
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleArg {
    List,
    Matrix,
}

#[derive(Args)]
struct ConfigFlags {
    /// TOML file with the same keys as the flags below; flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cut-approximation parameter override, in (0, 1/3)
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    c_t: Option<f64>,
    #[arg(long)]
    retries: Option<u32>,
    #[arg(long)]
    c_rho: Option<f64>,
    #[arg(long)]
    c_size: Option<f64>,
    #[arg(long)]
    c_w: Option<f64>,
    #[arg(long)]
    c_dh: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    eps: Option<f64>,
    c_t: Option<f64>,
    retries: Option<u32>,
    c_rho: Option<f64>,
    c_size: Option<f64>,
    c_w: Option<f64>,
    c_dh: Option<f64>,
    seed: Option<u64>,
}

impl ConfigFlags {
    /// flags > config file > defaults
    fn resolve(&self) -> Result<PipelineConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(io_err(path))?;
                toml::from_str::<FileConfig>(&text).map_err(|e| {
                    stcut::Error::Parameter(format!("{}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };
        let mut cfg = PipelineConfig::default();
        let pick_f = |flag: Option<f64>, file: Option<f64>, dflt: f64| flag.or(file).unwrap_or(dflt);
        cfg.eps_override = self.eps.or(file.eps);
        cfg.c_t = pick_f(self.c_t, file.c_t, cfg.c_t);
        cfg.retries = self.retries.or(file.retries).unwrap_or(cfg.retries);
        cfg.sparsify = SparsifyConfig {
            c_rho: pick_f(self.c_rho, file.c_rho, cfg.sparsify.c_rho),
            c_size: pick_f(self.c_size, file.c_size, cfg.sparsify.c_size),
            c_w: pick_f(self.c_w, file.c_w, cfg.sparsify.c_w),
            ..cfg.sparsify
        };
        cfg.c_dh = pick_f(self.c_dh, file.c_dh, cfg.c_dh);
        cfg.seed = self.seed.or(file.seed).unwrap_or(cfg.seed);
        Ok(cfg)
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    /// Source vertex, 1-indexed
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Sink vertex, 1-indexed
    #[arg(long)]
    t: u32,
    #[arg(long, value_enum, default_value_t = OracleArg::List)]
    oracle: OracleArg,
    #[command(flatten)]
    config: ConfigFlags,
    /// Write a TOML run report here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Cross-check λ and the shore against the exhaustive solver (small n)
    #[arg(long)]
    exact_check: bool,
    /// Also learn and print the edges crossing the returned cut
    #[arg(long)]
    cut_edges: bool,
}

#[derive(Args)]
struct ExactArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    t: u32,
}

#[derive(Args)]
struct VerifySparsifierArgs {
    file: PathBuf,
    /// Independent builds to verify; all must pass. `--eps` defaults to 1/4
    /// here; `--seed` picks the first trial's seed.
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[command(flatten)]
    config: ConfigFlags,
}

#[derive(Args)]
struct VerifyFamilyArgs {
    /// Even n >= 6 (exhaustive, so small)
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,300,400,500")]
    n: Vec<usize>,
    /// Comma-separated maximum weights
    #[arg(long, value_delimiter = ',', default_value = "1,4,16")]
    w: Vec<u64>,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs per (n, W) cell, seeds seed..seed+runs
    #[arg(long, default_value_t = 1)]
    runs: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Directory for per-run TOML reports
    #[arg(long)]
    report_dir: Option<PathBuf>,
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> stcut::Error + '_ {
    move |e| stcut::Error::Parameter(format!("{}: {e}", path.display()))
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<GraphFile> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_graph(&text)
}

fn make_oracle(file: &GraphFile, kind: OracleArg) -> Result<Box<dyn GraphOracle>> {
    Ok(match kind {
        OracleArg::List => match &file.order {
            Some(order) => Box::new(ListOracle::with_order(file.graph.clone(), order)?),
            None => Box::new(ListOracle::new(file.graph.clone())),
        },
        OracleArg::Matrix => Box::new(MatrixOracle::new(file.graph.clone())),
    })
}

fn vertex_arg(v: u32, n: usize, name: &str) -> Result<u32> {
    if v < 1 || v as usize > n {
        return Err(stcut::Error::Parameter(format!(
            "{name} = {v} outside 1..={n}"
        )));
    }
    Ok(v - 1)
}

fn shore_display(shore: &[u32]) -> String {
    shore
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_gen(args: GenArgs) -> Result<()> {
    let (file, out) = match args.what {
        GenCmd::Random { n, p, max_w, seed, out } => {
            let graph = gen_random(n, p, max_w, seed)?;
            (GraphFile { graph, order: None }, out)
        }
        GenCmd::Family { n, index, out } => {
            let kind = if index == 0 {
                LowerBoundKind::Negative
            } else {
                let kinds = positive_kinds(n)?;
                *kinds.get(index - 1).ok_or_else(|| {
                    stcut::Error::Parameter(format!(
                        "index {index} outside 0..={}",
                        kinds.len()
                    ))
                })?
            };
            let inst = gen_lower_bound(n, kind)?;
            (
                GraphFile {
                    graph: inst.graph,
                    order: Some(inst.order),
                },
                out,
            )
        }
    };
    write_or_print(out.as_ref(), &emit_graph(&file))
}

fn run_solve(args: SolveArgs) -> Result<bool> {
    let file = load(&args.file)?;
    let g = &file.graph;
    let s = vertex_arg(args.s, g.n(), "s")?;
    let t = vertex_arg(args.t, g.n(), "t")?;
    let config = args.config.resolve()?;
    let oracle = make_oracle(&file, args.oracle)?;
    let started = Instant::now();
    let run = st_min_cut(oracle.as_ref(), s, t, &config)?;
    let wall_ms = started.elapsed().as_millis() as u64;

    let mut ok = true;
    let mut verified = None;
    if args.exact_check {
        if g.n() > BRUTE_FORCE_LIMIT {
            return Err(stcut::Error::OracleBound {
                n: g.n(),
                limit: BRUTE_FORCE_LIMIT,
            });
        }
        let cert = brute_force_min_st_cut(g, s, t)?;
        let shore_weight = if run.shore.is_non_trivial() {
            cut_weight(g, &run.shore)?
        } else {
            u64::MAX
        };
        let good = cert.value == run.lambda && shore_weight == run.lambda;
        verified = Some(good);
        ok &= good;
    }

    println!("lambda {}", run.lambda);
    println!("shore {}", shore_display(&run.shore.vertices()));
    println!(
        "queries modeled {} classical {}",
        run.ledger.modeled_total(),
        oracle.classical_queries()
    );
    if let Some(v) = verified {
        println!("exact-check {}", if v { "pass" } else { "FAIL" });
    }

    if args.cut_edges && run.shore.is_non_trivial() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
        let mut ledger = run.ledger.clone();
        let edges = learn_cut_edges(
            oracle.as_ref(),
            &run.shore,
            run.stats.max_weight,
            &mut rng,
            &mut ledger,
        )?;
        for (u, v, w) in edges {
            println!("cut-edge {} {} {}", u + 1, v + 1, w);
        }
    }

    if let Some(path) = &args.report {
        let report = RunReport::new(
            InstanceInfo {
                n: g.n(),
                m: g.m(),
                oracle: oracle.kind(),
                s,
                t,
            },
            &config,
            &run,
            verified,
            wall_ms,
        );
        fs::write(path, emit_report(&report)?).map_err(io_err(path))?;
    }
    Ok(ok)
}

fn run_exact(args: ExactArgs) -> Result<()> {
    let file = load(&args.file)?;
    let g = &file.graph;
    let s = vertex_arg(args.s, g.n(), "s")?;
    let t = vertex_arg(args.t, g.n(), "t")?;
    let cert = brute_force_min_st_cut(g, s, t)?;
    println!("lambda {}", cert.value);
    println!("shore {}", shore_display(&cert.shore.vertices()));
    Ok(())
}

fn run_verify_sparsifier(args: VerifySparsifierArgs) -> Result<bool> {
    let file = load(&args.file)?;
    let g = &file.graph;
    let config = args.config.resolve()?;
    let eps = config.eps_override.unwrap_or(0.25);
    let oracle = ListOracle::new(g.clone());
    let mut all_pass = true;
    for trial in 0..args.trials {
        let mut ledger = CostLedger::new();
        let sp = build_sparsifier(
            &oracle,
            eps,
            config.seed.wrapping_add(trial),
            &config.sparsify,
            &mut ledger,
        )?;
        let check = verify_sparsifier(g, &sp.graph, eps)?;
        println!(
            "trial {trial} {} worst-ratio {:.6} edges {} attempts {}",
            if check.pass { "pass" } else { "FAIL" },
            check.worst_ratio,
            sp.graph.m(),
            sp.attempts
        );
        all_pass &= check.pass;
    }
    Ok(all_pass)
}

fn run_verify_family(args: VerifyFamilyArgs) -> Result<()> {
    let rep = verify_family_counting(args.n)?;
    println!("n {}", rep.n);
    println!("positive-instances {}", rep.positive_instances);
    println!("max-per-position {}", rep.max_count);
    println!("min-differing-positions {}", rep.min_diff_positions);
    println!("adversary-ratio {}", rep.adversary_ratio);
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let mut csv = String::from(
        "n,max_w,p,seed,eps,lambda,modeled_queries,classical_queries,contracted_edges,contracted_ratio,flow_weight_ratio,retries_used,wall_ms\n",
    );
    if let Some(dir) = &args.report_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    for &n in &args.n {
        for &max_w in &args.w {
            for run_idx in 0..args.runs {
                let seed = args.seed + run_idx;
                let graph = gen_random(n, args.p, max_w, seed ^ (n as u64) << 20 ^ max_w << 8)?;
                if graph.m() == 0 {
                    continue;
                }
                let oracle = ListOracle::new(graph.clone());
                let config = PipelineConfig {
                    seed,
                    ..PipelineConfig::default()
                };
                let (s, t) = (0u32, n as u32 - 1);
                let started = Instant::now();
                let run = st_min_cut(&oracle, s, t, &config)?;
                let wall_ms = started.elapsed().as_millis() as u64;
                csv.push_str(&format!(
                    "{n},{max_w},{},{seed},{:.6},{},{},{},{},{:.6},{:.6},{},{wall_ms}\n",
                    args.p,
                    run.stats.eps,
                    run.lambda,
                    run.ledger.modeled_total(),
                    oracle.classical_queries(),
                    run.stats.contracted_edges,
                    run.stats.contracted_ratio,
                    run.stats.flow_weight_ratio,
                    run.stats.retries_used,
                ));
                if let Some(dir) = &args.report_dir {
                    let report = RunReport::new(
                        InstanceInfo {
                            n,
                            m: graph.m(),
                            oracle: OracleKind::List,
                            s,
                            t,
                        },
                        &config,
                        &run,
                        None,
                        wall_ms,
                    );
                    let path = dir.join(format!("run-n{n}-w{max_w}-s{seed}.toml"));
                    fs::write(&path, emit_report(&report)?).map_err(io_err(&path))?;
                }
            }
        }
    }
    write_or_print(args.out.as_ref(), &csv)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<bool> = match cli.cmd {
        Cmd::Gen(args) => run_gen(args).map(|_| true),
        Cmd::Solve(args) => run_solve(args),
        Cmd::Exact(args) => run_exact(args).map(|_| true),
        Cmd::VerifySparsifier(args) => run_verify_sparsifier(args),
        Cmd::VerifyFamily(args) => run_verify_family(args).map(|_| true),
        Cmd::Bench(args) => run_bench(args).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
