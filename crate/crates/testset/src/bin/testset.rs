use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use testset::analysis::{
    self, bounds, check_claims, check_counting_lemmas, distribution, phase_schedule, ratio_report,
    trace_phases, DEFAULT_ANALYSIS_LIMIT,
};
use testset::error::{Error, Result};
use testset::generators::{
    atom, compact, complete, level, random, sc_adversarial, GenParams, LabeledInstance,
    DEFAULT_ITEM_CAP,
};
use testset::instance::Instance;
use testset::io::{
    read_matrix, to_report_json, trace_csv, InstanceFile, RunManifest, SolveReport,
};
use testset::setcover::{greedy_setcover, transform, DEFAULT_TRANSFORM_LIMIT};
use testset::solvers::{exact, ich, sga, Algorithm, SolveResult, TieBreak};

#[derive(Parser)]
#[command(name = "testset", version, about = "Minimum test set solvers, adversarial generators, and greedy-run analysis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance family into a JSON instance file.
    Gen(GenArgs),
    /// Run a solver on an instance file and emit a JSON report.
    Solve(SolveArgs),
    /// Audit instances and runs: distributions, lemma checks, claims, ratios, bounds.
    Analyze {
        #[command(subcommand)]
        cmd: AnalyzeCmd,
    },
    /// Run SGA and emit the phase/potential trace.
    Trace(TraceArgs),
    /// Run a suite of generated instances through solvers into an aggregate CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TieBreakArg {
    /// Lowest test index first.
    LowestIndex,
    /// Generator natural order (falls back to lowest index without labels).
    Natural,
}

impl TieBreakArg {
    fn to_tiebreak(self) -> TieBreak {
        match self {
            TieBreakArg::LowestIndex => TieBreak::LowestIndex,
            // generated instances list 𝒯′ then 𝒯* in natural order, so
            // index order realizes natural order
            TieBreakArg::Natural => TieBreak::NaturalOrder,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TieBreakArg::LowestIndex => "lowest-index",
            TieBreakArg::Natural => "natural",
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Compact test set over [2^q]: q tests, n = 2^q.
    Compact {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Atom instance: n = 2^{qt+q-2}, planted optimum of size t·2^q.
    Atom {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Level-t instance: N = J!·2^{q(J+1)} points.
    Level {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Complete instance: embedded set cover plus levels 1..J.
    Complete {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        j: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Adversarial set cover embedded as 2-item groups {e_p, f_p}.
    ScAdv {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m_star: u64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Seeded Bernoulli(density) random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args)]
struct GenOut {
    /// Output instance file (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Build past the default item cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (JSON, or 0/1 matrix with --matrix).
    #[arg(long, value_name = "PATH")]
    r#in: PathBuf,
    /// Read the input as a matrix file.
    #[arg(long)]
    matrix: bool,
    #[arg(long, value_enum)]
    alg: AlgArg,
    #[arg(long, value_enum, default_value_t = TieBreakArg::Natural)]
    tie_break: TieBreakArg,
    /// Node budget for the exact solver.
    #[arg(long)]
    budget: Option<usize>,
    /// Write the per-step CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    Sga,
    Ich,
    Exact,
    ScGreedy,
}

impl AlgArg {
    fn name(self) -> &'static str {
        match self {
            AlgArg::Sga => "sga",
            AlgArg::Ich => "ich",
            AlgArg::Exact => "exact",
            AlgArg::ScGreedy => "sc-greedy",
        }
    }
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    /// Differentiation distribution of a test subset.
    Distribution {
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        /// "all", "planted", or a comma-separated index list.
        #[arg(long, default_value = "all")]
        testset: String,
        /// Lift the quadratic-scan size guard.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counting-bound checks of an optimal test set's distribution.
    Lemmas {
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        /// Optimal size; solved exactly when omitted.
        #[arg(long)]
        m_star: Option<usize>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-step claims audit of an SGA run on a labeled instance.
    Claims {
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximation ratio of a run against the optimum.
    Ratio {
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgArg::Sga)]
        alg: AlgArg,
        /// Optimal size; planted or exact when omitted.
        #[arg(long)]
        m_star: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form bound coefficients from scalars alone.
    Bounds {
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m_star: usize,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, value_name = "PATH")]
    r#in: PathBuf,
    /// Assumed optimal size for the phase schedule.
    #[arg(long)]
    m_star: usize,
    /// CSV path; stdout when omitted (summary then goes to stderr).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite file (JSON).
    #[arg(long)]
    suite: PathBuf,
    /// Output directory for aggregate.csv.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Analyze { cmd } => cmd_analyze(cmd),
        Cmd::Trace(args) => cmd_trace(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

/// Predicted sizes written next to every generated instance.
#[derive(Serialize)]
struct SizeReport {
    predicted_n: u128,
    predicted_tests: Option<u64>,
    item_cap: usize,
    within_cap: bool,
    forced: bool,
}

fn factorial(j: u32) -> u128 {
    (1..=j as u128).product::<u128>().max(1)
}

fn predict(family: &GenFamily) -> (u128, Option<u64>) {
    match family {
        GenFamily::Compact { q, .. } => (1u128 << q.min(&127), Some(*q as u64)),
        GenFamily::Atom { q, t, .. } => {
            let bits = (*q as u128) * (*t as u128) + *q as u128 - 2;
            let n = if bits >= 127 { u128::MAX } else { 1u128 << bits };
            let m = (*t as u64) * (1 << q) + (*q as u64) * (*t as u64) * (1 << q) / 4;
            (n, Some(m))
        }
        GenFamily::Level { q, j, .. } => {
            let bits = (*q as u128) * (*j as u128 + 1);
            let n = if bits >= 100 {
                u128::MAX
            } else {
                factorial(*j) << bits
            };
            let m_star = (factorial(*j) as u64) << q;
            (n, Some(m_star + *q as u64 * m_star / 4))
        }
        GenFamily::Complete { q, j, .. } => {
            let bits = (*q as u128) * (*j as u128 + 1);
            let n_level = if bits >= 100 {
                u128::MAX
            } else {
                factorial(*j) << bits
            };
            (n_level.saturating_mul(*j as u128 + 2), None)
        }
        GenFamily::ScAdv { n, .. } => (2 * *n as u128, None),
        GenFamily::Random { n, m, .. } => (*n as u128, Some(*m as u64)),
    }
}

fn gen_out(family: &GenFamily) -> &GenOut {
    match family {
        GenFamily::Compact { out, .. }
        | GenFamily::Atom { out, .. }
        | GenFamily::Level { out, .. }
        | GenFamily::Complete { out, .. }
        | GenFamily::ScAdv { out, .. }
        | GenFamily::Random { out, .. } => out,
    }
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let out = gen_out(&args.family);
    let (predicted_n, predicted_tests) = predict(&args.family);
    let within_cap = predicted_n <= DEFAULT_ITEM_CAP as u128;
    let size = SizeReport {
        predicted_n,
        predicted_tests,
        item_cap: DEFAULT_ITEM_CAP,
        within_cap,
        forced: out.force,
    };
    let sidecar = out.out.with_extension("size.json");
    std::fs::write(&sidecar, to_report_json(&size))?;
    if !within_cap && !out.force {
        return Err(Error::TooLarge(format!(
            "predicted n = {predicted_n} exceeds the item cap {DEFAULT_ITEM_CAP}; pass --force to build anyway"
        )));
    }
    let cap = if out.force { usize::MAX } else { DEFAULT_ITEM_CAP };
    let file = match &args.family {
        GenFamily::Compact { q, .. } => InstanceFile::from_labeled(&compact(*q)?),
        GenFamily::Atom { q, t, .. } => InstanceFile::from_labeled(&atom(*q, *t, cap)?),
        GenFamily::Level { q, j, t, .. } => InstanceFile::from_labeled(&level(*q, *j, *t, cap)?),
        GenFamily::Complete { q, j, .. } => InstanceFile::from_labeled(&complete(*q, *j, cap)?),
        GenFamily::ScAdv { n, m_star, .. } => {
            let sc = sc_adversarial(*n, *m_star)?;
            // S₀ embedding: groups {e_p, f_p} = {2p, 2p+1}, tests on e items
            let n_items = 2 * sc.n_elements;
            let groups = (0..sc.n_elements).map(|p| vec![2 * p, 2 * p + 1]).collect();
            let tests = sc
                .subsets
                .iter()
                .map(|s| s.iter().map(|p| 2 * p).collect())
                .collect();
            let instance = Instance::with_groups(n_items, groups, tests)?;
            let mut file = InstanceFile::from_instance(&instance);
            file.planted_optimal = sc.planted_cover.clone();
            file.params = Some(GenParams::ScAdversarial {
                n: *n,
                m_star: *m_star,
            });
            file
        }
        GenFamily::Random {
            n,
            m,
            density,
            seed,
            ..
        } => {
            let instance = random(*n, *m, *density, *seed)?;
            let mut file = InstanceFile::from_instance(&instance);
            file.params = Some(GenParams::Random {
                n: *n,
                m: *m,
                density: *density,
                seed: *seed,
            });
            file
        }
    };
    file.write(&out.out)?;
    Ok(ExitCode::SUCCESS)
}

struct LoadedInstance {
    instance: Instance,
    file: Option<InstanceFile>,
}

impl LoadedInstance {
    fn labeled(&self) -> Option<LabeledInstance> {
        let file = self.file.as_ref()?;
        Some(LabeledInstance {
            instance: self.instance.clone(),
            planted_optimal: file.planted_optimal.clone()?,
            adversarial: file.adversarial.clone()?,
            labels: file.labels.clone()?,
            params: file.params.clone()?,
        })
    }
}

fn load(path: &Path, matrix: bool) -> Result<LoadedInstance> {
    if matrix {
        Ok(LoadedInstance {
            instance: read_matrix(path)?,
            file: None,
        })
    } else {
        let file = InstanceFile::read(path)?;
        Ok(LoadedInstance {
            instance: file.to_instance()?,
            file: Some(file),
        })
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run_alg(
    instance: &Instance,
    alg: AlgArg,
    tiebreak: &TieBreak,
    budget: Option<usize>,
) -> Result<SolveResult> {
    match alg {
        AlgArg::Sga => sga(instance, tiebreak),
        AlgArg::Ich => ich(instance, tiebreak),
        AlgArg::Exact => exact(instance, budget)?.ok_or_else(|| Error::Infeasible {
            group: 0,
            i: 0,
            j: 0,
        }),
        AlgArg::ScGreedy => {
            let sc = transform(instance, DEFAULT_TRANSFORM_LIMIT)?;
            greedy_setcover(&sc, tiebreak)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let loaded = load(&args.r#in, args.matrix)?;
    let tiebreak = args.tie_break.to_tiebreak();
    let result = match args.alg {
        AlgArg::Exact => match exact(&loaded.instance, args.budget)? {
            Some(r) => r,
            None => {
                return Err(Error::invalid(format!(
                    "exact: no test set within budget {:?}",
                    args.budget
                )))
            }
        },
        other => run_alg(&loaded.instance, other, &tiebreak, None)?,
    };
    if let Some(trace) = &args.trace {
        std::fs::write(trace, trace_csv(&result, None))?;
    }
    let report = SolveReport {
        manifest: RunManifest::new(
            "solve",
            json!({
                "in": args.r#in.display().to_string(),
                "alg": args.alg.name(),
                "matrix": args.matrix,
                "budget": args.budget,
            }),
            None,
            args.tie_break.name(),
        ),
        n: loaded.instance.n(),
        num_tests: loaded.instance.num_tests(),
        result,
    };
    emit(args.out.as_deref(), &to_report_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_testset(spec: &str, loaded: &LoadedInstance) -> Result<Vec<usize>> {
    match spec {
        "all" => Ok((0..loaded.instance.num_tests()).collect()),
        "planted" => loaded
            .file
            .as_ref()
            .and_then(|f| f.planted_optimal.clone())
            .ok_or_else(|| Error::invalid("instance file has no planted_optimal")),
        list => list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad test index {s:?}")))
            })
            .collect(),
    }
}

fn analysis_limit(force: bool) -> usize {
    if force {
        usize::MAX
    } else {
        DEFAULT_ANALYSIS_LIMIT
    }
}

fn cmd_analyze(cmd: AnalyzeCmd) -> Result<ExitCode> {
    match cmd {
        AnalyzeCmd::Distribution {
            r#in,
            testset,
            force,
            out,
        } => {
            let loaded = load(&r#in, false)?;
            let tests = parse_testset(&testset, &loaded)?;
            let hist = distribution(&loaded.instance, &tests, analysis_limit(force))?;
            #[derive(Serialize)]
            struct Report {
                manifest: RunManifest,
                histogram: analysis::DistributionHistogram,
            }
            let report = Report {
                manifest: RunManifest::new(
                    "analyze distribution",
                    json!({"in": r#in.display().to_string(), "testset": testset, "force": force}),
                    None,
                    "n/a",
                ),
                histogram: hist,
            };
            emit(out.as_deref(), &to_report_json(&report))?;
        }
        AnalyzeCmd::Lemmas {
            r#in,
            m_star,
            force,
            out,
        } => {
            let loaded = load(&r#in, false)?;
            let (m_star, optimal) = match m_star {
                Some(m) => (m, None),
                None => {
                    let res = exact(&loaded.instance, None)?
                        .ok_or_else(|| Error::invalid("exact solver found no test set"))?;
                    (res.size(), Some(res.selected))
                }
            };
            let tests: Vec<usize> = match (&optimal, &loaded.file) {
                (Some(sel), _) => sel.clone(),
                (None, Some(f)) if f.planted_optimal.is_some() => {
                    f.planted_optimal.clone().unwrap()
                }
                _ => (0..loaded.instance.num_tests()).collect(),
            };
            let hist = distribution(&loaded.instance, &tests, analysis_limit(force))?;
            let counting = check_counting_lemmas(&hist, loaded.instance.n(), m_star);
            #[derive(Serialize)]
            struct Report {
                manifest: RunManifest,
                m_star: usize,
                testset: Vec<usize>,
                histogram: analysis::DistributionHistogram,
                counting: analysis::CountingLemmaReport,
            }
            let report = Report {
                manifest: RunManifest::new(
                    "analyze lemmas",
                    json!({"in": r#in.display().to_string(), "force": force}),
                    None,
                    "n/a",
                ),
                m_star,
                testset: tests,
                histogram: hist,
                counting,
            };
            emit(out.as_deref(), &to_report_json(&report))?;
        }
        AnalyzeCmd::Claims { r#in, out } => {
            let loaded = load(&r#in, false)?;
            let labeled = loaded
                .labeled()
                .ok_or_else(|| Error::invalid("claims audit needs a fully labeled instance"))?;
            let result = sga(&labeled.instance, &TieBreak::NaturalOrder)?;
            let claims = check_claims(&labeled, &result)?;
            #[derive(Serialize)]
            struct Report {
                manifest: RunManifest,
                selected: Vec<usize>,
                claims: analysis::ClaimsReport,
            }
            let report = Report {
                manifest: RunManifest::new(
                    "analyze claims",
                    json!({"in": r#in.display().to_string()}),
                    None,
                    "natural",
                ),
                selected: result.selected,
                claims,
            };
            emit(out.as_deref(), &to_report_json(&report))?;
        }
        AnalyzeCmd::Ratio {
            r#in,
            alg,
            m_star,
            out,
        } => {
            let loaded = load(&r#in, false)?;
            let result = run_alg(&loaded.instance, alg, &TieBreak::NaturalOrder, None)?;
            let m_star = match m_star {
                Some(m) => m,
                None => match loaded.file.as_ref().and_then(|f| f.planted_optimal.as_ref()) {
                    Some(p) => p.len(),
                    None => exact(&loaded.instance, None)?
                        .ok_or_else(|| Error::invalid("exact solver found no test set"))?
                        .size(),
                },
            };
            let ratio = ratio_report(&result, m_star, loaded.instance.n())?;
            #[derive(Serialize)]
            struct Report {
                manifest: RunManifest,
                ratio: analysis::RatioReport,
            }
            let report = Report {
                manifest: RunManifest::new(
                    "analyze ratio",
                    json!({"in": r#in.display().to_string(), "alg": alg.name()}),
                    None,
                    "natural",
                ),
                ratio,
            };
            emit(out.as_deref(), &to_report_json(&report))?;
        }
        AnalyzeCmd::Bounds { n, m_star, j, out } => {
            let report = bounds(n, m_star, j)?;
            #[derive(Serialize)]
            struct Report {
                manifest: RunManifest,
                bounds: analysis::BoundReport,
            }
            let report = Report {
                manifest: RunManifest::new(
                    "analyze bounds",
                    json!({"n": n, "m_star": m_star, "j": j}),
                    None,
                    "n/a",
                ),
                bounds: report,
            };
            emit(out.as_deref(), &to_report_json(&report))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_trace(args: TraceArgs) -> Result<ExitCode> {
    if args.m_star < 2 {
        return Err(Error::invalid("trace: m-star must be >= 2"));
    }
    let loaded = load(&args.r#in, false)?;
    let result = sga(&loaded.instance, &TieBreak::NaturalOrder)?;
    let schedule = phase_schedule(loaded.instance.n(), args.m_star)?;
    let trace = trace_phases(&result, &schedule)?;
    let csv = trace_csv(&result, Some(&trace.step_phase));
    #[derive(Serialize)]
    struct Summary {
        manifest: RunManifest,
        schedule: analysis::PhaseSchedule,
        phases: Vec<analysis::PhaseSummary>,
        potential_monotone: bool,
    }
    let summary = Summary {
        manifest: RunManifest::new(
            "trace",
            json!({"in": args.r#in.display().to_string(), "m_star": args.m_star}),
            None,
            "natural",
        ),
        schedule,
        phases: trace.phases,
        potential_monotone: trace.potential_monotone,
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, csv)?;
            print!("{}", to_report_json(&summary));
        }
        None => {
            print!("{csv}");
            eprint!("{}", to_report_json(&summary));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One suite entry: a generated instance run through one or more solvers.
#[derive(Deserialize)]
struct SuiteRun {
    params: GenParams,
    algs: Vec<Algorithm>,
}

#[derive(Deserialize)]
struct Suite {
    runs: Vec<SuiteRun>,
    /// Extra seeds applied to each random-family entry.
    #[serde(default)]
    seeds: Vec<u64>,
}

fn generate(params: &GenParams) -> Result<(Instance, Option<usize>)> {
    Ok(match params {
        GenParams::Compact { q } => {
            let g = compact(*q)?;
            let m = g.planted_optimal.len();
            (g.instance, Some(m))
        }
        GenParams::Atom { q, t } => {
            let g = atom(*q, *t, DEFAULT_ITEM_CAP)?;
            let m = g.planted_optimal.len();
            (g.instance, Some(m))
        }
        GenParams::Level { q, j, t } => {
            let g = level(*q, *j, *t, DEFAULT_ITEM_CAP)?;
            let m = g.planted_optimal.len();
            (g.instance, Some(m))
        }
        GenParams::Complete { q, j } => {
            let g = complete(*q, *j, DEFAULT_ITEM_CAP)?;
            let m = g.planted_optimal.len();
            (g.instance, Some(m))
        }
        GenParams::ScAdversarial { .. } => {
            return Err(Error::invalid(
                "bench: use the complete family for set-cover rows",
            ))
        }
        GenParams::Random {
            n,
            m,
            density,
            seed,
        } => (random(*n, *m, *density, *seed)?, None),
    })
}

fn params_field(params: &GenParams) -> String {
    serde_json::to_string(params)
        .expect("params serialization")
        .replace(',', ";")
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.suite)?;
    let suite: Suite =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("suite: {e}")))?;
    std::fs::create_dir_all(&args.out)?;
    let mut rows =
        String::from("family,params,seed,alg,n,size,m_star,ratio,wall_ms,status\n");
    let mut failed = false;
    for run in &suite.runs {
        let mut variants: Vec<GenParams> = vec![run.params.clone()];
        if let GenParams::Random { n, m, density, .. } = &run.params {
            for &s in &suite.seeds {
                variants.push(GenParams::Random {
                    n: *n,
                    m: *m,
                    density: *density,
                    seed: s,
                });
            }
        }
        for params in &variants {
            let seed = match params {
                GenParams::Random { seed, .. } => seed.to_string(),
                _ => String::new(),
            };
            let family = match params {
                GenParams::Compact { .. } => "compact",
                GenParams::Atom { .. } => "atom",
                GenParams::Level { .. } => "level",
                GenParams::Complete { .. } => "complete",
                GenParams::ScAdversarial { .. } => "sc-adversarial",
                GenParams::Random { .. } => "random",
            };
            for alg in &run.algs {
                let alg_arg = match alg {
                    Algorithm::Sga => AlgArg::Sga,
                    Algorithm::Ich => AlgArg::Ich,
                    Algorithm::Exact => AlgArg::Exact,
                    Algorithm::ScGreedy => AlgArg::ScGreedy,
                };
                let start = Instant::now();
                let outcome = generate(params).and_then(|(instance, m_star)| {
                    run_alg(&instance, alg_arg, &TieBreak::NaturalOrder, None)
                        .map(|r| (instance, m_star, r))
                });
                let wall_ms = start.elapsed().as_millis();
                match outcome {
                    Ok((instance, m_star, result)) => {
                        let ratio = m_star
                            .map(|m| format!("{:.6}", result.size() as f64 / m as f64))
                            .unwrap_or_default();
                        let m_star = m_star.map(|m| m.to_string()).unwrap_or_default();
                        rows.push_str(&format!(
                            "{family},{},{seed},{alg},{},{},{m_star},{ratio},{wall_ms},ok\n",
                            params_field(params),
                            instance.n(),
                            result.size(),
                        ));
                    }
                    Err(e) => {
                        failed = true;
                        rows.push_str(&format!(
                            "{family},{},{seed},{alg},,,,,{wall_ms},error: {}\n",
                            params_field(params),
                            e.to_string().replace(',', ";"),
                        ));
                    }
                }
            }
        }
    }
    std::fs::write(args.out.join("aggregate.csv"), rows)?;
    if failed {
        eprintln!("bench: one or more rows failed");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
