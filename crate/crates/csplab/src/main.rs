//! Command-line front end; every subcommand is a thin wrapper over the
//! library. Exit codes: 0 success, 1 error, 2 assertion-style violation
//! (a breached scattering bound or an exhausted solver budget).

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use csplab::instance::{Assignment, Instance};
use csplab::lab::{
    self, exact_exceedance, learner_by_name, run_experiment, scatter_check_fixed,
    DistinguishBudget, EnsembleKind, EnsembleSpec, ExperimentConfig, Hypothesis, Pipeline,
};
use csplab::pred::{uval, Predicate};
use csplab::reductions::{
    dnf_sample, dnf_to_automaton, halfspace_sample, inter4_sample, inter4_witness, parity_sample,
    phi_u_formula, Halfspace, LabeledSample,
};
use csplab::refute::{check_trace, dpll_refute, expansion_check, BranchRule, DpllOutcome};
use csplab::Rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "csplab",
    version,
    about = "CSP refutation and reduction workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predicate parameters: table stats, lval, var0, uval (exact LP).
    Predicate {
        #[command(subcommand)]
        cmd: PredicateCmd,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        cmd: GenCmd,
    },
    /// Turn an instance into a learning sample (plus witness for plants).
    Reduce(ReduceArgs),
    /// Scattering checks for sample ensembles.
    Scatter {
        #[command(subcommand)]
        cmd: ScatterCmd,
    },
    /// Run the learner-wrapping distinguisher.
    Distinguish(DistinguishArgs),
    /// DPLL refutation with trace extraction.
    Refute {
        #[command(subcommand)]
        cmd: RefuteCmd,
    },
    /// Expansion check behind the width lower bound.
    Expansion(ExpansionArgs),
}

#[derive(Subcommand)]
enum PredicateCmd {
    /// Print exact parameters of a named predicate (e.g. `maj:5`).
    Info {
        spec: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Uniformly random instance.
    Random(GenArgs),
    /// Planted-satisfiable instance (the plant is drawn from the seed).
    Planted {
        #[command(flatten)]
        args: GenArgs,
        /// Write the plant (JSON array of +-1) here.
        #[arg(long)]
        plant_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Predicate spec, e.g. `sat:3`, `maj:5`, `parity:3`, `pk8:3`.
    spec: String,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    m: usize,
    #[arg(long)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Emit the DIMACS-like text form (SAT families only) instead of JSON.
    #[arg(long)]
    dimacs: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// One of: dnf, halfspace, parity, inter4, automaton.
    kind: String,
    /// Instance file (JSON); `-` or omitted reads stdin.
    input: Option<PathBuf>,
    /// Plant file (JSON array); enables the witness output.
    #[arg(long)]
    plant: Option<PathBuf>,
    /// Sample output; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Witness output (requires --plant).
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Write the binary sample form instead of text.
    #[arg(long)]
    binary: bool,
}

#[derive(Subcommand)]
enum ScatterCmd {
    /// Monte-Carlo exceedance of a fixed hypothesis against a declared
    /// ensemble target, with the exact-enumeration cross-check when small.
    Check {
        /// `uniform-pairs:n=13,m=40` | `alternating:n=13,m=100` |
        /// `alternating-signed:n=10,k=3,m=40`
        ensemble: String,
        /// `const1` | `const0` | `majority` | `random-table:<seed>`
        hypothesis: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Args)]
struct DistinguishArgs {
    /// Pipeline (`parity`, `halfspace`, `dnf`) for the experiment mode;
    /// omit to judge a single sample from stdin/--sample.
    pipeline: Option<String>,
    #[arg(long)]
    learner: String,
    #[arg(long, default_value = "1/10")]
    beta: String,
    /// Approximation ratio; switches to the agnostic threshold.
    #[arg(long)]
    alpha: Option<String>,
    /// Sample file for the single-shot mode.
    #[arg(long)]
    sample: Option<PathBuf>,
    #[arg(long)]
    predicate: Option<String>,
    #[arg(short)]
    n: Option<usize>,
    #[arg(short)]
    m: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial-loop parallelism; defaults to CSPLAB_JOBS or the rayon default.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the per-trial CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Load the whole experiment config from JSON (other flags ignored).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RefuteCmd {
    Dpll {
        /// Instance file (JSON or DIMACS-like); `-` reads stdin.
        input: Option<PathBuf>,
        #[arg(long, default_value = "first")]
        rule: String,
        #[arg(long, default_value_t = 1 << 22)]
        budget: u64,
        /// Write the refutation trace here on UNSAT.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExpansionArgs {
    input: Option<PathBuf>,
    #[arg(short)]
    l: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.to_str() != Some("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, contents: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, contents).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(contents)
                .context("writing stdout")
        }
    }
}

fn load_instance(path: &Option<PathBuf>) -> Result<Instance> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('p') {
        return Ok(Instance::from_dimacs(&text)?);
    }
    serde_json::from_str(&text).context("parsing instance JSON")
}

fn load_plant(path: &PathBuf) -> Result<Assignment> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let values: Vec<i8> = serde_json::from_str(&text).context("parsing plant JSON")?;
    Ok(Assignment(values))
}

fn parse_kv_spec(spec: &str) -> Result<(String, std::collections::HashMap<String, usize>)> {
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("expected name:key=value,... in {spec:?}"))?;
    let mut map = std::collections::HashMap::new();
    for part in rest.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value in {part:?}"))?;
        map.insert(k.trim().to_string(), v.trim().parse::<usize>()?);
    }
    Ok((name.to_string(), map))
}

fn parse_ensemble(spec: &str) -> Result<EnsembleSpec> {
    let (name, kv) = parse_kv_spec(spec)?;
    let get = |k: &str| {
        kv.get(k)
            .copied()
            .ok_or_else(|| anyhow!("ensemble {name:?} needs {k}="))
    };
    let m = get("m")?;
    let kind = match name.as_str() {
        "uniform-pairs" => EnsembleKind::UniformPairs { n: get("n")? },
        "alternating" => EnsembleKind::AlternatingUniform { n: get("n")? },
        "alternating-signed" => EnsembleKind::AlternatingSigned {
            n: get("n")?,
            k: get("k")?,
        },
        _ => bail!("unknown ensemble {name:?}"),
    };
    Ok(EnsembleSpec { kind, m })
}

fn parse_hypothesis(spec: &str, dim: usize) -> Result<Hypothesis> {
    match spec {
        "const1" => Ok(Hypothesis::Const(true)),
        "const0" => Ok(Hypothesis::Const(false)),
        "majority" => Ok(Hypothesis::MajorityOfCoords),
        _ => match spec.strip_prefix("random-table:") {
            Some(seed) => {
                let seed: u64 = seed.parse().context("random-table seed")?;
                if dim > 24 {
                    bail!("random-table needs dimension <= 24, got {dim}");
                }
                use rand::Rng;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let map = (0..(1u64 << dim))
                    .map(|code| (code, rng.gen::<bool>()))
                    .collect();
                Ok(Hypothesis::Lookup {
                    dim,
                    map,
                    default: false,
                })
            }
            None => bail!("unknown hypothesis {spec:?}"),
        },
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn run() -> Result<i32> {
    match Cli::parse().command {
        Command::Predicate { cmd } => predicate_info(cmd),
        Command::Gen { cmd } => gen(cmd),
        Command::Reduce(args) => reduce(args),
        Command::Scatter { cmd } => scatter(cmd),
        Command::Distinguish(args) => distinguish(args),
        Command::Refute { cmd } => refute(cmd),
        Command::Expansion(args) => expansion(args),
    }
}

fn predicate_info(cmd: PredicateCmd) -> Result<i32> {
    let PredicateCmd::Info { spec, format } = cmd;
    let p = Predicate::parse(&spec)?;
    let arity = p.arity();
    let (ones, lval, var0_size, uval_str) = if p.is_lazy() {
        (None, None, None, "unavailable (lazy predicate)".to_string())
    } else {
        let ones = p.satisfying_count()?;
        let lv = p.lval()?;
        let v0 = p.var0().map(|w| w.size).ok();
        let uv = match uval(&p) {
            Ok((v, _)) => v.to_string(),
            Err(e) => format!("unavailable ({e})"),
        };
        (Some(ones), Some(lv), v0, uv)
    };
    if format == "json" {
        let out = serde_json::json!({
            "family": spec,
            "arity": arity,
            "points": (arity <= 63).then(|| 1u64 << arity),
            "satisfying": ones,
            "lval": lval.as_ref().map(|v| v.to_string()),
            "var0": var0_size,
            "uval": uval_str,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("family = {spec}");
        println!("arity  = {arity}");
        match ones {
            Some(o) => println!("ones   = {o} of {}", 1u64 << arity),
            None => println!("ones   = unavailable (lazy predicate)"),
        }
        match lval {
            Some(v) => println!("lval   = {v}"),
            None => println!("lval   = unavailable (lazy predicate)"),
        }
        match var0_size {
            Some(v) => println!("var0   = {v}"),
            None => println!("var0   = unavailable"),
        }
        println!("uval   = {uval_str}");
    }
    Ok(0)
}

fn gen(cmd: GenCmd) -> Result<i32> {
    let (args, plant_out, planted) = match cmd {
        GenCmd::Random(args) => (args, None, false),
        GenCmd::Planted { args, plant_out } => (args, plant_out, true),
    };
    let p = Predicate::parse(&args.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let j = if planted {
        let plant = Assignment::random(args.n, &mut rng);
        let j = Instance::planted(p, args.n, args.m, &plant, &mut rng)?;
        if let Some(path) = &plant_out {
            std::fs::write(path, serde_json::to_string(&plant.0)?)?;
        }
        j
    } else {
        Instance::random(p, args.n, args.m, &mut rng)?
    };
    let payload = if args.dimacs {
        j.to_dimacs()?
    } else {
        let mut s = serde_json::to_string(&j)?;
        s.push('\n');
        s
    };
    write_output(&args.out, payload.as_bytes())?;
    Ok(0)
}

fn reduce(args: ReduceArgs) -> Result<i32> {
    let j = load_instance(&args.input)?;
    let plant = args.plant.as_ref().map(load_plant).transpose()?;
    let mut witness_json: Option<String> = None;
    let sample: LabeledSample = match args.kind.as_str() {
        "dnf" => {
            let s = dnf_sample(&j)?;
            if let Some(u) = &plant {
                let phi = phi_u_formula(u, j.predicate(), j.n())?;
                witness_json = Some(serde_json::to_string(&phi)?);
            }
            s
        }
        "automaton" => {
            let s = dnf_sample(&j)?;
            let u = plant
                .as_ref()
                .ok_or_else(|| anyhow!("reduce automaton needs --plant"))?;
            let phi = phi_u_formula(u, j.predicate(), j.n())?;
            let auto = dnf_to_automaton(&phi)?;
            witness_json = Some(serde_json::to_string(&auto)?);
            s
        }
        "halfspace" => {
            let s = halfspace_sample(&j)?;
            if let Some(u) = &plant {
                let w: Vec<i64> = u.values().iter().map(|&v| v as i64).collect();
                witness_json = Some(serde_json::to_string(&Halfspace::signs(w)?)?);
            }
            s
        }
        "parity" => {
            let s = parity_sample(&j)?;
            if let Some(u) = &plant {
                let chi = csplab::reductions::ParityHypothesis::from_assignment(u);
                witness_json = Some(serde_json::to_string(&chi)?);
            }
            s
        }
        "inter4" => {
            let s = inter4_sample(&j)?;
            if let Some(u) = &plant {
                witness_json = Some(serde_json::to_string(&inter4_witness(u))?);
            }
            s
        }
        other => bail!("unknown reduction {other:?}"),
    };
    if args.binary {
        write_output(&args.out, &sample.to_binary())?;
    } else {
        write_output(&args.out, sample.to_text().as_bytes())?;
    }
    if let (Some(path), Some(json)) = (&args.witness_out, &witness_json) {
        std::fs::write(path, json)?;
    }
    Ok(0)
}

fn scatter(cmd: ScatterCmd) -> Result<i32> {
    let ScatterCmd::Check {
        ensemble,
        hypothesis,
        trials,
        seed,
        format,
    } = cmd;
    let spec = parse_ensemble(&ensemble)?;
    let h = parse_hypothesis(&hypothesis, spec.domain().dim())?;
    let report = scatter_check_fixed(&h, &spec, trials, seed)?;
    let exact = exact_exceedance(&h, &spec, &report.epsilon).ok();
    if format == "csv" {
        println!(
            "ensemble,hypothesis,trials,hits,frequency,wilson_low,wilson_high,epsilon,p_target,bound,strict_pass,refuted,bound_within_resolution,exact"
        );
        println!(
            "{ensemble},{hypothesis},{},{},{},{},{},{},{},{},{},{},{},{}",
            report.trials,
            report.hits,
            report.frequency,
            report.wilson_low,
            report.wilson_high,
            report.epsilon,
            report.p_target,
            report.bound,
            report.strict_pass,
            report.refuted,
            report.bound_within_resolution,
            exact.as_ref().map(|e| e.to_string()).unwrap_or_default(),
        );
    } else if format == "json" {
        let out = serde_json::json!({
            "ensemble": ensemble,
            "hypothesis": hypothesis,
            "trials": report.trials,
            "hits": report.hits,
            "frequency": report.frequency,
            "wilson_low": report.wilson_low,
            "wilson_high": report.wilson_high,
            "epsilon": report.epsilon.to_string(),
            "p_target": report.p_target,
            "bound": report.bound,
            "strict_pass": report.strict_pass,
            "refuted": report.refuted,
            "bound_within_resolution": report.bound_within_resolution,
            "exact": exact.as_ref().map(|e| e.to_string()),
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!(
            "exceedance Pr(Err <= {}) over {} trials: {} hits, freq {:.3e}, 95% CI [{:.3e}, {:.3e}]",
            report.epsilon, report.trials, report.hits, report.frequency,
            report.wilson_low, report.wilson_high
        );
        println!(
            "target 2^-{:.2} = {:.3e}; strict upper-CI pass: {}{}",
            report.p_target,
            report.bound,
            report.strict_pass,
            if report.bound_within_resolution {
                ""
            } else {
                " (bound below Monte-Carlo resolution)"
            }
        );
        if let Some(e) = &exact {
            println!("exact enumeration: {e}");
        }
        if report.refuted {
            println!("VIOLATION: observed frequency is statistically above the bound");
        }
    }
    Ok(if report.refuted { 2 } else { 0 })
}

fn distinguish(args: DistinguishArgs) -> Result<i32> {
    // single-shot mode: judge one sample
    if args.pipeline.is_none() {
        let text = read_input(&args.sample)?;
        let sample = LabeledSample::from_text(&text)?;
        let learner = learner_by_name(&args.learner)?;
        let beta = Rat::from_str(&args.beta).map_err(|e| anyhow!("bad beta: {e}"))?;
        let n = sample.domain().dim();
        let outcome = match &args.alpha {
            Some(a) => {
                let alpha = Rat::from_str(a).map_err(|e| anyhow!("bad alpha: {e}"))?;
                lab::distinguisher_agnostic(
                    learner.as_ref(),
                    &sample,
                    &alpha,
                    &beta,
                    n,
                    args.seed,
                    DistinguishBudget::default(),
                )
            }
            None => lab::distinguisher_realizable(
                learner.as_ref(),
                &sample,
                &beta,
                n,
                args.seed,
                DistinguishBudget::default(),
            ),
        };
        println!(
            "verdict {}{}",
            outcome.verdict,
            outcome
                .error
                .as_ref()
                .map(|e| format!(" (empirical error {e})"))
                .unwrap_or_default()
        );
        return Ok(0);
    }

    let cfg = match &args.config {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => {
            let pipeline: Pipeline = args.pipeline.as_deref().unwrap().parse()?;
            let predicate = args.predicate.clone().unwrap_or_else(|| match pipeline {
                Pipeline::Parity => "parity:3".into(),
                Pipeline::Halfspace => "maj:3".into(),
                Pipeline::Dnf => "and:3".into(),
            });
            ExperimentConfig {
                pipeline,
                predicate,
                n: args.n.ok_or_else(|| anyhow!("experiment mode needs -n"))?,
                m: args.m.ok_or_else(|| anyhow!("experiment mode needs -m"))?,
                trials: args.trials,
                seed: args.seed,
                beta: args.beta.clone(),
                alpha: args.alpha.clone(),
                learner: args.learner.clone(),
                jobs: args.jobs.or_else(|| {
                    std::env::var("CSPLAB_JOBS")
                        .ok()
                        .and_then(|v| v.parse().ok())
                }),
            }
        }
    };
    let report = run_experiment(&cfg)?;
    let (pa, pt, plo, phi) = report.planted_accept;
    let (ra, rt, rlo, rhi) = report.random_reject;
    println!("planted accepted: {pa}/{pt} (Wilson 95% [{plo:.3}, {phi:.3}])");
    println!("random rejected:  {ra}/{rt} (Wilson 95% [{rlo:.3}, {rhi:.3}])");
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv())?;
    } else {
        print!("{}", report.to_csv());
    }
    Ok(0)
}

fn refute(cmd: RefuteCmd) -> Result<i32> {
    let RefuteCmd::Dpll {
        input,
        rule,
        budget,
        trace_out,
    } = cmd;
    let j = load_instance(&input)?;
    let rule = BranchRule::from_str(&rule).map_err(|e| anyhow!(e))?;
    match dpll_refute(&j, rule, budget) {
        DpllOutcome::Sat { witness, stats } => {
            println!("verdict SAT (tree_size {})", stats.tree_size);
            println!(
                "witness {}",
                serde_json::to_string(&witness.0).unwrap_or_default()
            );
            Ok(0)
        }
        DpllOutcome::Unsat { trace, stats } => {
            check_trace(&j, &trace).map_err(|e| anyhow!("extracted trace failed: {e}"))?;
            println!(
                "verdict UNSAT (tree_size {}, trace length {}, width {})",
                stats.tree_size,
                trace.len(),
                trace.width()
            );
            if let Some(path) = &trace_out {
                std::fs::write(path, trace.to_text())?;
            }
            Ok(0)
        }
        DpllOutcome::BudgetExceeded { stats } => {
            println!(
                "verdict UNKNOWN: node budget exceeded (tree_size {}, propagations {})",
                stats.tree_size, stats.propagations
            );
            Ok(2)
        }
    }
}

fn expansion(args: ExpansionArgs) -> Result<i32> {
    let j = load_instance(&args.input)?;
    let report = expansion_check(&j, args.l, args.trials, args.seed)?;
    use csplab::refute::{bw_length_exponent, ExpansionOutcome};
    match &report.outcome {
        ExpansionOutcome::VerifiedExhaustive => println!(
            "verified (exhaustive): width(J) >= {} ; length exponent scale {:.3} (constant-free)",
            report.width_bound,
            bw_length_exponent(&report.width_bound, j.n())
        ),
        ExpansionOutcome::VerifiedSampled { trials } => println!(
            "verified (sampled, {trials} subsets): width(J) >= {} ; length exponent scale {:.3} (constant-free)",
            report.width_bound,
            bw_length_exponent(&report.width_bound, j.n())
        ),
        ExpansionOutcome::Violated { subset } => {
            println!("violated by constraint subset {subset:?}");
        }
    }
    println!(
        "private variables required per expanding constraint: {}",
        report.private_needed
    );
    Ok(0)
}
