//! Batch front end: every subcommand runs one computation and emits
//! reproducible, file-oriented tables (CSV or JSON lines). Data goes to
//! stdout or --output; diagnostics go to stderr. Exit codes: 0 success,
//! 1 verification failure, 2 usage error, 3 resource budget exceeded.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};
use clap::parser::ValueSource;

use sigmak_core::arith::{ell, mertens_report, theta_check};
use sigmak_core::classifiers::{
    annotate_solutions, is_k_layered, ClassifierVerdict, DEFAULT_PARTITION_BUDGET,
};
use sigmak_core::prob::{
    levy_concentration, model_sum_pmf_exact, model_sum_pmf_mc, period_model_equivalence,
    petrov_eval, zero_cluster_concentration_check, ModelError, Pmf, WMethod, DEFAULT_MC_SAMPLES,
};
use sigmak_core::schinzel::{family_forms, family_search, fixed_divisor_check};
use sigmak_core::solutions::{count_series, schedule, search, SearchError};
use sigmak_core::truncation::{error_sets, verify_inclusion, TruncationError, TruncationParams};

use output::{Field, OutputFormat, Writer};

#[derive(Parser, Debug)]
#[command(name = "sigmak", version, about = "Toolkit for the equation sigma(n+1) = k*sigma(n)")]
struct Cli {
    /// RNG seed recorded in the metadata header and used by sampling paths.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads: a number or 'auto' for machine parallelism.
    #[arg(long, global = true, default_value = "auto")]
    threads: String,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    output_format: OutputFormat,

    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Flat key=value config file; explicit flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Stamp the metadata line with the wall-clock time.
    #[arg(long, global = true)]
    timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All solutions n <= limit of sigma(n+1) = k*sigma(n).
    Search {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        limit: u64,
        /// Attach divisor-partition classifier flags for each n+1.
        #[arg(long)]
        annotate: bool,
    },
    /// Counting function A_k(x) against the triple-log comparator (shape only).
    Density {
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<u64>,
    },
    /// Exact enumeration of the error sets over [1, x].
    ErrorSets {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        k: u64,
        /// Also check that every solution lies in one of the four sets.
        #[arg(long)]
        verify_inclusion: bool,
    },
    /// Distribution of the model sum: pmf atoms, concentration table,
    /// single-prime grid, and the anti-concentration report.
    Model {
        #[arg(long)]
        y: u64,
        #[arg(long)]
        r: u32,
        /// Force the exact convolution (budget error if too large).
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        /// Force Monte Carlo with this many samples.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        k: Option<u64>,
        /// Concentration scales for the Q_L table.
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.1")]
        l_grid: Vec<f64>,
    },
    /// Compare the full-period difference distribution with the convolution
    /// model, atom for atom.
    PeriodCheck {
        #[arg(long)]
        y: u64,
        #[arg(long)]
        r: u32,
    },
    /// Divisor-partition classifier verdict for one n.
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// Step allowance for the partition searches.
        #[arg(long, default_value_t = DEFAULT_PARTITION_BUDGET)]
        budget: u64,
    },
    /// Prime quadruples of the k = 2 family plus the fixed-divisor analysis.
    Schinzel {
        #[arg(long)]
        x_limit: u64,
    },
    /// Truncation parameters as functions of x (clamped at desk scale).
    Schedule {
        #[arg(long)]
        x: u64,
    },
    /// Prime-sum reports.
    Primes {
        /// Chebyshev theta against 1.02x.
        #[arg(long)]
        theta_check: Option<u64>,
        /// Prime reciprocal sum against log log x.
        #[arg(long)]
        mertens: Option<u64>,
    },
}

enum CliError {
    Verification(String),
    Usage(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Usage(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::LimitBudget { .. } => CliError::Budget(e.to_string()),
            SearchError::VerificationMismatch { .. } => CliError::Verification(e.to_string()),
            SearchError::Arith(inner) => CliError::Budget(inner.to_string()),
        }
    }
}

impl From<TruncationError> for CliError {
    fn from(e: TruncationError) -> Self {
        match e {
            TruncationError::EnumerationBudget { .. } => CliError::Budget(e.to_string()),
            TruncationError::Search(inner) => inner.into(),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::ExactBudget { .. }
            | ModelError::PeriodBudget { .. }
            | ModelError::TupleWidth { .. } => CliError::Budget(e.to_string()),
            ModelError::NoEffectivePrimes | ModelError::ScaleTooLarge { .. } => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let mut cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };

    if let Some(path) = &cli.config {
        match config::load(path) {
            Ok(file_cfg) => {
                let defaulted =
                    |key: &str| matches.value_source(key) != Some(ValueSource::CommandLine);
                if defaulted("seed") {
                    if let Some(seed) = file_cfg.seed {
                        cli.seed = seed;
                    }
                }
                if defaulted("threads") {
                    if let Some(threads) = file_cfg.threads {
                        cli.threads = threads;
                    }
                }
                if defaulted("output_format") {
                    if let Some(fmt) = file_cfg.output_format {
                        cli.output_format = match fmt.as_str() {
                            "csv" => OutputFormat::Csv,
                            "jsonl" => OutputFormat::Jsonl,
                            other => {
                                eprintln!("error: bad output_format in config: {other:?}");
                                return ExitCode::from(2);
                            }
                        };
                    }
                }
                if defaulted("output") {
                    if let Some(out) = file_cfg.output {
                        cli.output = Some(PathBuf::from(out));
                    }
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        }
    }

    if cli.threads != "auto" {
        let Ok(n) = cli.threads.parse::<usize>() else {
            eprintln!("error: --threads must be a number or 'auto'");
            return ExitCode::from(2);
        };
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("warning: thread pool already initialized");
        }
    }

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut w = match &cli.output {
        Some(path) => Writer::to_path(path, cli.output_format)?,
        None => Writer::to_stdout(cli.output_format),
    };
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ts = cli.timestamp.then(|| {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        format!("{secs}")
    });
    w.metadata(&args, cli.seed, &cli.threads, ts)?;

    let result = match &cli.command {
        Command::Search { k, limit, annotate } => cmd_search(&mut w, *k, *limit, *annotate),
        Command::Density { k, points } => cmd_density(&mut w, *k, points),
        Command::ErrorSets { x, y, r, eps, k, verify_inclusion } => {
            cmd_error_sets(&mut w, *x, *y, *r, *eps, *k, *verify_inclusion)
        }
        Command::Model { y, r, exact, mc, eps, k, l_grid } => {
            cmd_model(&mut w, cli.seed, *y, *r, *exact, *mc, *eps, *k, l_grid)
        }
        Command::PeriodCheck { y, r } => cmd_period_check(&mut w, *y, *r),
        Command::Classify { n, k, budget } => cmd_classify(&mut w, *n, *k, *budget),
        Command::Schinzel { x_limit } => cmd_schinzel(&mut w, *x_limit),
        Command::Schedule { x } => cmd_schedule(&mut w, *x),
        Command::Primes { theta_check, mertens } => cmd_primes(&mut w, *theta_check, *mertens),
    };
    w.flush()?;
    result
}

const SEARCH_COLS: [&str; 4] = ["n", "k", "sigma_n", "sigma_n1"];

fn cmd_search(w: &mut Writer, k: u64, limit: u64, annotate: bool) -> Result<(), CliError> {
    if k < 1 || limit < 1 {
        return Err(CliError::Usage("search needs k >= 1 and limit >= 1".into()));
    }
    let records = search(k, limit)?;
    if annotate {
        let cols = ["n", "k", "sigma_n", "sigma_n1", "verdict"];
        w.csv_header(&cols)?;
        for a in annotate_solutions(&records, DEFAULT_PARTITION_BUDGET) {
            w.record(
                &cols,
                vec![
                    Field::UInt(a.record.n.into()),
                    Field::UInt(a.record.k.into()),
                    Field::UInt(a.record.sigma_n.into()),
                    Field::UInt(a.record.sigma_n1.into()),
                    Field::Json(serde_json::to_value(&a.verdict).expect("verdict serializes")),
                ],
            )?;
        }
    } else {
        w.csv_header(&SEARCH_COLS)?;
        for s in &records {
            w.record(
                &SEARCH_COLS,
                vec![
                    Field::UInt(s.n.into()),
                    Field::UInt(s.k.into()),
                    Field::UInt(s.sigma_n.into()),
                    Field::UInt(s.sigma_n1.into()),
                ],
            )?;
        }
    }
    Ok(())
}

fn cmd_density(w: &mut Writer, k: u64, points: &[u64]) -> Result<(), CliError> {
    if k < 2 {
        return Err(CliError::Usage("density requires k >= 2".into()));
    }
    if !points.windows(2).all(|p| p[0] < p[1]) {
        return Err(CliError::Usage("points must be strictly ascending".into()));
    }
    let cols = ["x", "count", "ratio", "bound"];
    w.comment("bound = 1/sqrt(logloglog x), shape only: no implied constant")?;
    w.csv_header(&cols)?;
    for pt in count_series(k, points)? {
        w.record(
            &cols,
            vec![
                Field::UInt(pt.x.into()),
                Field::UInt(pt.count.into()),
                Field::Float(pt.ratio),
                Field::OptFloat(pt.bound),
            ],
        )?;
    }
    Ok(())
}

fn cmd_error_sets(
    w: &mut Writer,
    x: u64,
    y: u64,
    r: u32,
    eps: f64,
    k: u64,
    check_inclusion: bool,
) -> Result<(), CliError> {
    if x < 2 || y < 2 || r < 1 || eps <= 0.0 || k < 2 {
        return Err(CliError::Usage(
            "error-sets needs x >= 2, y >= 2, r >= 1, eps > 0, k >= 2".into(),
        ));
    }
    let params = TruncationParams::new(y, r, eps);
    let rep = error_sets(x, &params, k)?;
    w.section("error-sets")?;
    let cols = [
        "x", "k", "y", "r", "eps", "e0", "e1", "e2", "s", "e0_bound", "e1_bound_shape",
        "e2_bound_shape", "s_model",
    ];
    w.csv_header(&cols)?;
    w.record(
        &cols,
        vec![
            Field::UInt(rep.x.into()),
            Field::UInt(rep.k.into()),
            Field::UInt(rep.y.into()),
            Field::UInt(rep.r.into()),
            Field::Float(rep.eps),
            Field::UInt(rep.counts.e0.into()),
            Field::UInt(rep.counts.e1.into()),
            Field::UInt(rep.counts.e2.into()),
            Field::UInt(rep.counts.s.into()),
            Field::Float(rep.bounds.e0_bound),
            Field::Float(rep.bounds.e1_bound_shape),
            Field::Float(rep.bounds.e2_bound_shape),
            Field::OptFloat(rep.bounds.s_model),
        ],
    )?;
    if check_inclusion {
        let inc = verify_inclusion(x, &params, k)?;
        w.section("inclusion")?;
        let mcols = ["n", "in_e0", "in_e1", "in_e2", "in_s"];
        w.csv_header(&mcols)?;
        for m in &inc.memberships {
            w.record(
                &mcols,
                vec![
                    Field::UInt(m.n.into()),
                    Field::Bool(m.in_e0),
                    Field::Bool(m.in_e1),
                    Field::Bool(m.in_e2),
                    Field::Bool(m.in_s),
                ],
            )?;
        }
        w.section("inclusion-summary")?;
        let scols = ["solutions", "covered", "violations"];
        w.csv_header(&scols)?;
        w.record(
            &scols,
            vec![
                Field::UInt(inc.solutions.into()),
                Field::UInt(inc.covered.into()),
                Field::Str(
                    inc.violations.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                ),
            ],
        )?;
        if !inc.violations.is_empty() {
            return Err(CliError::Verification(format!(
                "{} solution(s) escape the error-set cover: {:?}",
                inc.violations.len(),
                inc.violations
            )));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_model(
    w: &mut Writer,
    seed: u64,
    y: u64,
    r: u32,
    force_exact: bool,
    mc: Option<u64>,
    eps: Option<f64>,
    k: Option<u64>,
    l_grid: &[f64],
) -> Result<(), CliError> {
    if y < 2 || r < 1 {
        return Err(CliError::Usage("model needs y >= 2 and r >= 1".into()));
    }
    if let Some(e) = eps {
        if e <= 0.0 {
            return Err(CliError::Usage("eps must be positive".into()));
        }
    }
    let params = TruncationParams::new(y, r, eps.unwrap_or(1.0 / (13.0 * y as f64)));
    let pmf: Pmf = if force_exact {
        model_sum_pmf_exact(&params, None)?
    } else if let Some(samples) = mc {
        model_sum_pmf_mc(&params, None, samples, seed)?
    } else {
        match model_sum_pmf_exact(&params, None) {
            Ok(p) => p,
            Err(ModelError::ExactBudget { .. }) => {
                model_sum_pmf_mc(&params, None, DEFAULT_MC_SAMPLES, seed)?
            }
            Err(e) => return Err(e.into()),
        }
    };

    w.section("pmf")?;
    w.csv_header(&["num", "den", "log_value", "prob_num", "prob_den"])?;
    match w.format {
        OutputFormat::Jsonl => {
            for line in pmf.to_jsonl().lines() {
                w.raw_line(line)?;
            }
        }
        OutputFormat::Csv => {
            let cols = ["num", "den", "log_value", "prob_num", "prob_den"];
            for (v, p) in pmf.atoms() {
                w.record(
                    &cols,
                    vec![
                        Field::Big(v.numer().to_string()),
                        Field::Big(v.denom().to_string()),
                        Field::Float(v.to_f64()),
                        Field::Big(p.numer().to_string()),
                        Field::Big(p.denom().to_string()),
                    ],
                )?;
            }
        }
    }

    w.section("concentration")?;
    let qcols = ["L", "q", "witness_a", "dkw_epsilon"];
    w.csv_header(&qcols)?;
    let mut grid: Vec<f64> = l_grid.to_vec();
    if let Some(e) = eps {
        grid.push(6.0 * e);
    }
    for &l in &grid {
        if l <= 0.0 {
            return Err(CliError::Usage("concentration scales must be positive".into()));
        }
        let c = levy_concentration(&pmf, l);
        w.record(
            &qcols,
            vec![
                Field::Float(c.l),
                Field::Float(c.q),
                Field::Float(c.witness_a),
                Field::OptFloat(pmf.dkw_epsilon(0.01)),
            ],
        )?;
    }

    w.section("zero-cluster-grid")?;
    let gcols = ["p", "r", "L", "holds"];
    w.csv_header(&gcols)?;
    for p in [5u64, 7, 11, 13, 17] {
        if p > y {
            continue;
        }
        let l = 0.9 * ell(p, 1).to_f64();
        let holds = zero_cluster_concentration_check(p, r, l)?;
        w.record(
            &gcols,
            vec![
                Field::UInt(p.into()),
                Field::UInt(r.into()),
                Field::Float(l),
                Field::Bool(holds),
            ],
        )?;
    }

    if let (Some(_), Some(k)) = (eps, k) {
        let method = if force_exact {
            WMethod::Exact
        } else if let Some(samples) = mc {
            WMethod::MonteCarlo { samples, seed }
        } else {
            WMethod::Auto { mc_samples: DEFAULT_MC_SAMPLES, seed }
        };
        let rep = petrov_eval(&params, k, method)?;
        w.section("petrov")?;
        let pcols = [
            "eps", "k", "effective_primes", "q_measured", "q_sup", "rhs_core", "implied_A",
            "method", "dkw_epsilon",
        ];
        w.csv_header(&pcols)?;
        w.record(
            &pcols,
            vec![
                Field::Float(rep.eps),
                Field::UInt(rep.k.into()),
                Field::Str(
                    rep.effective_primes.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                ),
                Field::Float(rep.q_measured),
                Field::Float(rep.q_sup),
                Field::Float(rep.rhs_core),
                Field::Float(rep.implied_a),
                Field::Str(rep.method.clone()),
                Field::OptFloat(rep.dkw_epsilon),
            ],
        )?;
    }
    Ok(())
}

fn cmd_period_check(w: &mut Writer, y: u64, r: u32) -> Result<(), CliError> {
    if y < 2 || r < 1 {
        return Err(CliError::Usage("period-check needs y >= 2 and r >= 1".into()));
    }
    let params = TruncationParams::new(y, r, 1.0 / (13.0 * y as f64));
    let check = period_model_equivalence(&params)?;
    let cols = ["y", "r", "M", "match", "period_atoms", "model_atoms"];
    w.csv_header(&cols)?;
    w.record(
        &cols,
        vec![
            Field::UInt(y.into()),
            Field::UInt(r.into()),
            Field::Big(params.period.to_string()),
            Field::Bool(check.matches),
            Field::UInt(check.period_pmf.len() as u128),
            Field::UInt(check.model_pmf.len() as u128),
        ],
    )?;
    if !check.matches {
        return Err(CliError::Verification(
            "period distribution differs from the convolution model".into(),
        ));
    }
    Ok(())
}

fn verdict_fields(v: &ClassifierVerdict) -> Vec<Field> {
    vec![
        Field::UInt(v.n.into()),
        Field::UInt(v.k.into()),
        Field::OptBool(v.zumkeller),
        Field::OptBool(v.k_layered),
        Field::Bool(v.practical),
        Field::Bool(v.abundant),
        Field::Bool(v.perfect),
        Field::Bool(v.k_perfect),
        Field::OptBool(v.semiperfect),
        Field::Str(
            serde_json::to_value(v.search_status)
                .ok()
                .and_then(|j| j.as_str().map(str::to_string))
                .unwrap_or_default(),
        ),
        match &v.certificate {
            Some(c) => Field::Json(serde_json::to_value(c).expect("certificate serializes")),
            None => Field::Str(String::new()),
        },
    ]
}

const CLASSIFY_COLS: [&str; 11] = [
    "n",
    "k",
    "zumkeller",
    "k_layered",
    "practical",
    "abundant",
    "perfect",
    "k_perfect",
    "semiperfect",
    "search_status",
    "certificate",
];

fn cmd_classify(w: &mut Writer, n: u64, k: u64, budget: u64) -> Result<(), CliError> {
    if n < 1 || k < 1 {
        return Err(CliError::Usage("classify needs n >= 1 and k >= 1".into()));
    }
    let v = is_k_layered(n, k, budget);
    w.csv_header(&CLASSIFY_COLS)?;
    w.record(&CLASSIFY_COLS, verdict_fields(&v))?;
    Ok(())
}

fn cmd_schinzel(w: &mut Writer, x_limit: u64) -> Result<(), CliError> {
    let hits = family_search(x_limit);
    w.section("hits")?;
    let cols = ["x", "p1", "p2", "q1", "q2", "n", "sigma_n", "sigma_n1"];
    w.csv_header(&cols)?;
    let mut all_verified = true;
    for h in &hits {
        all_verified &= h.verified;
        w.record(
            &cols,
            vec![
                Field::UInt(h.x.into()),
                Field::UInt(h.p1.into()),
                Field::UInt(h.p2.into()),
                Field::UInt(h.q1.into()),
                Field::UInt(h.q2.into()),
                Field::Big(h.n.to_string()),
                Field::Big(h.sigma_n.to_string()),
                Field::Big(h.sigma_n1.to_string()),
            ],
        )?;
    }
    let report = fixed_divisor_check(&family_forms());
    w.section("fixed-divisors")?;
    let fcols = ["candidate_primes", "fixed_divisors", "gcd_P1_P2", "P1", "P2"];
    w.csv_header(&fcols)?;
    w.record(
        &fcols,
        vec![
            Field::Str(
                report.candidate_primes.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            ),
            Field::Str(
                report.fixed_divisors.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            ),
            Field::Big(report.gcd_p1_p2.to_string()),
            Field::Big(report.p_at_1.to_string()),
            Field::Big(report.p_at_2.to_string()),
        ],
    )?;
    if !all_verified {
        return Err(CliError::Verification(
            "a family hit failed its sigma re-verification".into(),
        ));
    }
    Ok(())
}

fn cmd_schedule(w: &mut Writer, x: u64) -> Result<(), CliError> {
    if x < 3 {
        return Err(CliError::Usage("schedule needs x >= 3".into()));
    }
    let s = schedule(x);
    let cols = ["x", "r", "y", "eps", "clamped"];
    w.csv_header(&cols)?;
    w.record(
        &cols,
        vec![
            Field::UInt(s.x.into()),
            Field::UInt(s.r.into()),
            Field::Float(s.y),
            Field::Float(s.eps),
            Field::Bool(s.clamped),
        ],
    )?;
    Ok(())
}

fn cmd_primes(w: &mut Writer, theta: Option<u64>, mertens: Option<u64>) -> Result<(), CliError> {
    match (theta, mertens) {
        (Some(x), None) => {
            if x < 2 {
                return Err(CliError::Usage("theta-check needs x >= 2".into()));
            }
            let rep = theta_check(x);
            let cols = ["x", "theta", "bound", "ok"];
            w.csv_header(&cols)?;
            w.record(
                &cols,
                vec![
                    Field::UInt(rep.x.into()),
                    Field::Float(rep.theta),
                    Field::Float(rep.bound),
                    Field::Bool(rep.ok),
                ],
            )?;
            if !rep.ok {
                return Err(CliError::Verification(format!(
                    "theta({x}) = {} is not below 1.02x",
                    rep.theta
                )));
            }
            Ok(())
        }
        (None, Some(x)) => {
            if x < 3 {
                return Err(CliError::Usage("mertens needs x >= 3".into()));
            }
            let rep = mertens_report(x);
            let cols = ["x", "sum", "loglog", "delta"];
            w.csv_header(&cols)?;
            w.record(
                &cols,
                vec![
                    Field::UInt(rep.x.into()),
                    Field::Float(rep.sum),
                    Field::Float(rep.loglog),
                    Field::Float(rep.delta),
                ],
            )?;
            Ok(())
        }
        _ => Err(CliError::Usage(
            "primes needs exactly one of --theta-check X or --mertens X".into(),
        )),
    }
}
