//! `pma`: generate instances, recover matrices from principal minors, and
//! compare the results.
//!
//! Exit codes: 0 success, 1 usage or other error, 2 infeasible generator
//! parameters, 3 genericity failure, 4 ambiguous sign, 5 verification failure.
//! Output on stdout is one `key=value` per line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pma_core::equivalence::{compare_classes, rho};
use pma_core::io::{self, NoiseKind, NoiseSpec, RecoveryStats};
use pma_core::minors::{
    check_condition1_with, compare_minors, random_instance, ExactOracle, GeneratorConfig, MinorOracle, TableOracle,
};
use pma_core::noisy::{example_instance, recover_approx_with, NoiseMode, NoisyConfig, PerturbedOracle};
use pma_core::recovery::{recover_with, RecoverOptions, RecoveryResult, ZeroPolicy};
use pma_core::{subset, Error, Tolerances};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_GENERICITY: u8 = 3;
const EXIT_AMBIGUOUS: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(name = "pma", version, about = "Principal minor assignment for magnitude-symmetric matrices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Draw a random instance, or the lower-bound example pair
    Generate(GenerateArgs),
    /// Recover a matrix from (possibly perturbed) principal minors
    Recover(RecoverArgs),
    /// Compare two matrices
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// edge probability of a random graph
    #[arg(long, conflicts_with = "graph")]
    density: Option<f64>,
    /// fixed charged graph file
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.02)]
    beta: f64,
    #[arg(long, default_value_t = 0.001)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// the N-cycle with crossing chords and its one-entry sign flip
    #[arg(long, conflicts_with_all = ["density", "graph"])]
    example54: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Abort,
    PreferPositive,
}

#[derive(Args)]
struct RecoverArgs {
    /// matrix file backing an exact oracle
    #[arg(long = "in", conflicts_with = "minors", required_unless_present = "minors")]
    input: Option<PathBuf>,
    /// minor table file
    #[arg(long)]
    minors: Option<PathBuf>,
    /// error level of the minors; selects the noisy path
    #[arg(long, requires_all = ["alpha", "beta", "gamma"])]
    delta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// seed of uniform noise added to each minor
    #[arg(long, requires = "delta", conflicts_with = "noise")]
    noise_seed: Option<u64>,
    /// noise specification file (its delta must not exceed --delta)
    #[arg(long, requires = "delta")]
    noise: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "abort")]
    zero_policy: PolicyArg,
    /// worker threads for per-block recovery (0 = all cores)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Minors,
    Class,
    Rho,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_enum, default_value = "minors")]
    mode: VerifyMode,
    /// largest subset size compared in minors mode (default n)
    #[arg(long)]
    max_order: Option<usize>,
    /// relative tolerance in minors mode
    #[arg(long, default_value_t = 1e-8)]
    rtol: f64,
    /// absolute tolerance in minors mode
    #[arg(long, default_value_t = 1e-15)]
    atol: f64,
    /// in rho mode, fail when rho exceeds this
    #[arg(long)]
    rho_max: Option<f64>,
}

/// `k.json` -> `k.<tag>.json`
fn sibling(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{tag}.json"))
}

fn argv() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn write_manifest(out: &Path, manifest: serde_json::Value) -> anyhow::Result<PathBuf> {
    let path = sibling(out, "manifest");
    io::write_file(&path, &serde_json::to_string_pretty(&manifest)?)?;
    Ok(path)
}

fn generate(a: &GenerateArgs) -> anyhow::Result<()> {
    let matrix_out = a.out.display().to_string();
    let graph_out = sibling(&a.out, "graph");
    let mut outputs = vec![matrix_out.clone(), graph_out.display().to_string()];
    let config;
    if a.example54 {
        let ex = example_instance(a.n, a.alpha)?;
        let hat = sibling(&a.out, "hat");
        io::write_matrix(&a.out, &ex.k)?;
        io::write_matrix(&hat, &ex.k_hat)?;
        io::write_file(&graph_out, &io::graph_to_json(&ex.graph))?;
        outputs.push(hat.display().to_string());
        println!("k_hat={}", hat.display());
        config = json!({ "example54": true, "n": a.n, "alpha": a.alpha });
    } else {
        let cfg = match (&a.graph, a.density) {
            (Some(p), _) => {
                let g = io::read_graph(p)?;
                if g.n() != a.n {
                    anyhow::bail!("graph has {} vertices, --n is {}", g.n(), a.n);
                }
                GeneratorConfig::with_graph(g, a.alpha, a.beta, a.gamma, a.seed)
            }
            (None, Some(d)) => GeneratorConfig::with_density(a.n, d, a.alpha, a.beta, a.gamma, a.seed),
            (None, None) => anyhow::bail!("one of --density, --graph or --example54 is required"),
        };
        let inst = random_instance(&cfg)?;
        io::write_matrix(&a.out, &inst.matrix)?;
        io::write_file(&graph_out, &io::graph_to_json(&inst.graph))?;
        println!("attempts={}", inst.attempts);
        println!("scale={:e}", inst.scale);
        println!("alpha_achieved={:e}", inst.achieved.alpha);
        println!("beta_achieved={:e}", inst.achieved.beta);
        println!("gamma_achieved={:e}", inst.achieved.gamma);
        config = json!({
            "n": a.n,
            "density": a.density,
            "graph": a.graph.as_ref().map(|p| p.display().to_string()),
            "alpha": a.alpha,
            "beta": a.beta,
            "gamma": a.gamma,
            "achieved": inst.achieved,
            "scale": inst.scale,
            "attempts": inst.attempts,
        });
    }
    let manifest = write_manifest(
        &a.out,
        json!({
            "command": "generate",
            "argv": argv(),
            "seed": a.seed,
            "config": config,
            "outputs": outputs,
        }),
    )?;
    println!("matrix={matrix_out}");
    println!("graph={}", graph_out.display());
    println!("manifest={}", manifest.display());
    Ok(())
}

fn recover(a: &RecoverArgs) -> anyhow::Result<()> {
    let tol = Tolerances::from_env()?;
    let opts = RecoverOptions { tol, jobs: a.jobs };
    let source: Box<dyn MinorOracle> = match (&a.input, &a.minors) {
        (Some(p), _) => {
            let k = io::read_matrix(p)?;
            let rep = check_condition1_with(&k, &tol);
            if !rep.condition1_ok {
                let w = rep.witnesses.first();
                return Err(Error::Genericity {
                    site: "input matrix".into(),
                    detail: match w {
                        Some(w) => format!("{:?} at {{{}}} (value {:e})", w.clause, subset::key(&w.vertices), w.value),
                        None => "condition 1 fails".into(),
                    },
                }
                .into());
            }
            Box::new(ExactOracle::new(k))
        }
        (None, Some(p)) => {
            let (n, table) = io::minor_table_from_json(&io::read_file(p)?)?;
            Box::new(TableOracle::new(n, table)?)
        }
        (None, None) => unreachable!("clap enforces an input"),
    };
    let started = Instant::now();
    let mut noise_echo = serde_json::Value::Null;
    let (result, rho_bound) = match a.delta {
        None => (recover_with(source.as_ref(), &opts)?, None),
        Some(delta) => {
            let mut config = NoisyConfig::new(delta, a.alpha.unwrap(), a.beta.unwrap(), a.gamma.unwrap())?;
            config.policy = match a.zero_policy {
                PolicyArg::Abort => ZeroPolicy::Abort,
                PolicyArg::PreferPositive => ZeroPolicy::PreferPositive,
            };
            let (noise_delta, mode) = match (&a.noise, a.noise_seed) {
                (Some(p), _) => {
                    let spec = NoiseSpec::from_json(&io::read_file(p)?)?;
                    if spec.delta > delta {
                        anyhow::bail!("noise file delta {} exceeds --delta {delta}", spec.delta);
                    }
                    noise_echo = serde_json::to_value(&spec)?;
                    (spec.delta, spec.noise_mode()?)
                }
                (None, seed) => {
                    let seed = seed.unwrap_or(0);
                    noise_echo = serde_json::to_value(NoiseSpec {
                        delta,
                        mode: NoiseKind::Random,
                        seed,
                        offsets: Default::default(),
                    })?;
                    (delta, NoiseMode::Random { seed })
                }
            };
            let oracle = PerturbedOracle::new(source, noise_delta, mode, true)?;
            let r = recover_approx_with(&oracle, &config, &opts)?;
            println!("threshold={:e}", config.threshold(r.phi));
            (r, Some(config.rho_bound()))
        }
    };
    let elapsed = started.elapsed();
    report_recovery(&result, rho_bound);
    io::write_matrix(&a.out, &result.matrix)?;
    let stats_path = sibling(&a.out, "stats");
    let stats = RecoveryStats::from(&result);
    io::write_file(&stats_path, &serde_json::to_string_pretty(&stats)?)?;
    let manifest = write_manifest(
        &a.out,
        json!({
            "command": "recover",
            "argv": argv(),
            "inputs": [a.input.as_ref().or(a.minors.as_ref()).map(|p| p.display().to_string())],
            "seed": a.noise_seed,
            "config": {
                "delta": a.delta, "alpha": a.alpha, "beta": a.beta, "gamma": a.gamma,
                "noise": noise_echo, "jobs": a.jobs,
                "tol": { "sign": tol.sign, "zero": tol.zero },
            },
            "outputs": [a.out.display().to_string(), stats_path.display().to_string()],
            "stats": {
                "queries": stats.queries, "max_order": stats.max_order, "phi": stats.phi,
                "blocks": stats.blocks, "elapsed_ms": elapsed.as_secs_f64() * 1e3,
                "warnings": result.warnings,
            },
        }),
    )?;
    println!("matrix={}", a.out.display());
    println!("stats={}", stats_path.display());
    println!("manifest={}", manifest.display());
    Ok(())
}

fn report_recovery(r: &RecoveryResult, rho_bound: Option<f64>) {
    println!("query_count={}", r.queries);
    println!("max_order={}", r.max_order);
    println!("phi={}", r.phi);
    println!("blocks={}", r.blocks);
    println!("max_order_within_3phi={}", r.max_order <= 3 * r.phi.max(1));
    if let Some(b) = rho_bound {
        println!("rho_bound={b:e}");
    }
    println!("warnings={}", r.warnings.len());
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
}

/// Returns whether verification passed.
fn verify(a: &VerifyArgs) -> anyhow::Result<bool> {
    let ka = io::read_matrix(&a.a).with_context(|| format!("reading {}", a.a.display()))?;
    let kb = io::read_matrix(&a.b).with_context(|| format!("reading {}", a.b.display()))?;
    match a.mode {
        VerifyMode::Minors => {
            let order = a.max_order.unwrap_or(ka.n());
            let c = compare_minors(&ka, &kb, order, a.rtol, a.atol)?;
            println!("mode=minors");
            println!("subsets_checked={}", c.checked);
            match c.mismatch {
                None => {
                    println!("verdict=PASS");
                    Ok(true)
                }
                Some(m) => {
                    println!("verdict=FAIL");
                    println!("first_diff={{{}}}", subset::key(&m.subset));
                    println!("first_diff_order={}", m.subset.len());
                    println!("minor_a={:e}", m.a);
                    println!("minor_b={:e}", m.b);
                    Ok(false)
                }
            }
        }
        VerifyMode::Class => {
            let c = compare_classes(&ka, &kb)?;
            println!("mode=class");
            if let Some(d) = c.max_diff {
                println!("max_diff={d:e}");
            }
            if let Some(r) = &c.reason {
                println!("reason={r}");
            }
            println!("verdict={}", if c.same { "PASS" } else { "FAIL" });
            Ok(c.same)
        }
        VerifyMode::Rho => {
            let r = rho(&ka, &kb)?;
            let pass = a.rho_max.map_or(true, |m| r <= m);
            println!("mode=rho");
            println!("rho={r:e}");
            println!("verdict={}", if pass { "PASS" } else { "FAIL" });
            Ok(pass)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Infeasible { .. }) => EXIT_INFEASIBLE,
        Some(Error::Genericity { .. }) => EXIT_GENERICITY,
        Some(Error::AmbiguousSign { .. }) => EXIT_AMBIGUOUS,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.cmd {
        Cmd::Generate(a) => generate(a).map(|_| true),
        Cmd::Recover(a) => recover(a).map(|_| true),
        Cmd::Verify(a) => verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
