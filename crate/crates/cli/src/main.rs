//! Command-line surface for the exact quantum-group engine: PBW transition
//! matrices, Fock-intertwiner matrices with cross-pipeline comparison, and
//! the structural verification suites.
//!
//! Conventions: node indices are 1-based on the command line; B-series have
//! node 1 long (B2: d = [2,1]) and G2 has node 1 short (d = [1,3]). Reduced
//! words are comma-separated, e.g. `--from 1,2,1`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgcore::fock::FockMachine;
use qgcore::pair::transition_gamma;
use qgcore::repmod::{multi_indices_up_to, AlgebraContext};
use qgcore::report::Report;
use qgcore::root::{word_from_string, RootDatum, Weight};
use qgcore::scalar::Scalar;
use qgcore::verify;
use qgcore::word::{EWordPoly, FWordPoly};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const CACHE_ENV: &str = "QGCLI_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "qgcli",
    about = "Exact PBW transition matrices, Fock intertwiners, and verification suites for quantized enveloping algebras",
    long_about = "Exact PBW transition matrices, Fock intertwiners, and verification suites \
for quantized enveloping algebras.\n\nConventions: node indices are 1-based; reduced words are \
comma-separated, e.g. --from 1,2,1. B-series algebras have node 1 long (B2: d = [2,1]); \
C-series have the last node long; G2 has node 1 short (d = [1,3]). The default cache \
directory is read from QGCLI_CACHE_DIR.",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// PBW-basis transition matrix between two reduced words of w0.
    Transition(JobArgs),
    /// Fock intertwiner matrix, optionally compared against the transition
    /// matrix entry for entry.
    Intertwiner(JobArgs),
    /// Run structural verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Algebra label: A1..A4, B2..B4, C3, C4, D4, G2.
    #[arg(long)]
    algebra: String,
    /// Source reduced word of w0, 1-based, comma-separated.
    #[arg(long)]
    from: String,
    /// Target reduced word of w0; defaults to the source word.
    #[arg(long)]
    to: Option<String>,
    /// Degree bound: all multi-indices with |m| <= bound.
    #[arg(long)]
    bound: Option<u32>,
    /// Per-factor Fock cutoff (intertwiner only); derived from the bound
    /// when absent.
    #[arg(long)]
    cutoff: Option<u32>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Root-vector cache directory (or set QGCLI_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Recompute cached root vectors and compare before use.
    #[arg(long)]
    recheck_cache: bool,
    /// Worker threads for independent multi-indices.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Emit a diff against the transition matrix (intertwiner only).
    #[arg(long)]
    compare_gamma: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    algebra: String,
    /// Comma-separated subset of {relations,pairing,braid,rtt,spectra,main2};
    /// empty runs nothing.
    #[arg(long, default_value = "")]
    suite: String,
    /// Reduced word used by word-dependent suites; defaults to a standard one.
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    recheck_cache: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct MatrixFile {
    algebra: String,
    kind: String,
    source: Vec<usize>,
    target: Vec<usize>,
    bound: u32,
    blocks: Vec<BlockOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff: Option<Vec<DiffOut>>,
}

#[derive(Serialize)]
struct BlockOut {
    weight: Vec<i64>,
    entries: Vec<EntryOut>,
}

#[derive(Serialize)]
struct EntryOut {
    m: Vec<u32>,
    n: Vec<u32>,
    coeff: Scalar,
}

#[derive(Serialize)]
struct DiffOut {
    m: Vec<u32>,
    n: Vec<u32>,
    psi: Scalar,
    gamma: Scalar,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Transition(a) => run_matrix(a, false),
        Cmd::Intertwiner(a) => run_matrix(a, true),
        Cmd::Verify(a) => run_verify(a),
    };
    match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn default_bound(label: &str) -> u32 {
    match &label[..1] {
        "A" => 3,
        "B" | "C" | "D" => 2,
        _ => 1,
    }
}

fn default_cutoff(datum: &RootDatum, bound: u32) -> u32 {
    let max_height = datum
        .positive_roots()
        .iter()
        .map(|b| b.iter().sum::<i64>())
        .max()
        .unwrap_or(1) as u32;
    bound * max_height + 4
}

fn setup_jobs(jobs: usize) {
    if jobs > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

fn cache_dir_of(flag: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn cache_file(dir: &Path, label: &str, word: &[usize], k: usize, side: char) -> PathBuf {
    let wname: Vec<String> = word.iter().map(|i| (i + 1).to_string()).collect();
    dir.join(format!(
        "{}_w{}_k{}_{}.json",
        label,
        wname.join("-"),
        k,
        side
    ))
}

/// Load cached root vectors for a word; with `recheck`, recompute each one
/// and require Gram-coordinate agreement before use.
fn prime_cache(
    ctx: &AlgebraContext,
    dir: &Path,
    word: &[usize],
    recheck: bool,
) -> Result<(), String> {
    let label = ctx.datum.label().to_string();
    for k in 1..=word.len() {
        let pf = cache_file(dir, &label, word, k, 'f');
        if pf.exists() {
            let text = std::fs::read_to_string(&pf).map_err(|e| e.to_string())?;
            let poly: FWordPoly = serde_json::from_str(&text)
                .map_err(|e| format!("bad cache file {}: {e}", pf.display()))?;
            if recheck {
                let fresh = ctx
                    .braid_root_vector_f(word, k)
                    .map_err(|e| e.to_string())?;
                let a = qgcore::pair::gram_vector(&poly.omega_inv(), &ctx.datum)
                    .map_err(|e| e.to_string())?;
                let b = qgcore::pair::gram_vector(&fresh.omega_inv(), &ctx.datum)
                    .map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!(
                        "cache recheck failed for {} (k = {k}, f-side)",
                        pf.display()
                    ));
                }
            } else {
                ctx.install_root_vector_f(word, k, poly)
                    .map_err(|e| e.to_string())?;
            }
        }
        let pe = cache_file(dir, &label, word, k, 'e');
        if pe.exists() {
            let text = std::fs::read_to_string(&pe).map_err(|e| e.to_string())?;
            let poly: EWordPoly = serde_json::from_str(&text)
                .map_err(|e| format!("bad cache file {}: {e}", pe.display()))?;
            if recheck {
                let fresh = ctx
                    .braid_root_vector_e(word, k)
                    .map_err(|e| e.to_string())?;
                let a = qgcore::pair::gram_vector(&poly, &ctx.datum).map_err(|e| e.to_string())?;
                let b = qgcore::pair::gram_vector(&fresh, &ctx.datum).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!(
                        "cache recheck failed for {} (k = {k}, e-side)",
                        pe.display()
                    ));
                }
            } else {
                ctx.install_root_vector_e(word, k, poly)
                    .map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(())
}

fn write_cache(ctx: &AlgebraContext, dir: &Path, word: &[usize]) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let label = ctx.datum.label().to_string();
    for k in 1..=word.len() {
        let f = ctx
            .braid_root_vector_f(word, k)
            .map_err(|e| e.to_string())?;
        let e = ctx
            .braid_root_vector_e(word, k)
            .map_err(|e| e.to_string())?;
        std::fs::write(
            cache_file(dir, &label, word, k, 'f'),
            serde_json::to_string_pretty(&f).unwrap(),
        )
        .map_err(|e| e.to_string())?;
        std::fs::write(
            cache_file(dir, &label, word, k, 'e'),
            serde_json::to_string_pretty(&e).unwrap(),
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run_matrix(args: JobArgs, intertwiner: bool) -> Result<ExitCode, String> {
    setup_jobs(args.jobs);
    let ctx = AlgebraContext::for_label(&args.algebra).map_err(|e| e.to_string())?;
    let datum = ctx.datum.clone();
    let source = word_from_string(&args.from, datum.rank()).map_err(|e| e.to_string())?;
    let target = match &args.to {
        Some(t) => word_from_string(t, datum.rank()).map_err(|e| e.to_string())?,
        None => source.clone(),
    };
    for (name, w) in [("--from", &source), ("--to", &target)] {
        if !datum.is_reduced_w0(w) {
            return Err(format!(
                "{name} is not a reduced word for w0 of {}",
                datum.label()
            ));
        }
    }
    let bound = args.bound.unwrap_or_else(|| default_bound(datum.label()));
    let cutoff = args.cutoff.unwrap_or_else(|| default_cutoff(&datum, bound));
    if let Some(dir) = cache_dir_of(&args.cache_dir) {
        if dir.exists() {
            prime_cache(&ctx, &dir, &source, args.recheck_cache)?;
            prime_cache(&ctx, &dir, &target, args.recheck_cache)?;
        }
    }

    let ms = multi_indices_up_to(source.len(), bound);
    // prebuild root vectors serially so parallel workers only read caches
    for k in 1..=source.len() {
        ctx.braid_root_vector_f(&source, k)
            .map_err(|e| e.to_string())?;
        ctx.braid_root_vector_f(&target, k)
            .map_err(|e| e.to_string())?;
    }
    let machine = if intertwiner {
        Some(FockMachine::new(&ctx, &target, cutoff).map_err(|e| e.to_string())?)
    } else {
        None
    };

    let compute_row = |m: &Vec<u32>| -> Result<BTreeMap<Vec<u32>, Scalar>, String> {
        match &machine {
            Some(mch) => mch.psi_row(&source, m).map_err(|e| e.to_string()),
            None => transition_gamma(&ctx, &source, &target, m).map_err(|e| e.to_string()),
        }
    };
    let started = Instant::now();
    let rows: Result<Vec<(Vec<u32>, BTreeMap<Vec<u32>, Scalar>)>, String> = if args.jobs > 1 {
        use rayon::prelude::*;
        ms.par_iter()
            .map(|m| compute_row(m).map(|r| (m.clone(), r)))
            .collect()
    } else {
        ms.iter()
            .map(|m| compute_row(m).map(|r| (m.clone(), r)))
            .collect()
    };
    let rows = rows?;
    log::info!(
        "{} rows for bound {} computed in {:?}",
        rows.len(),
        bound,
        started.elapsed()
    );

    // group by weight block
    let betas = datum.root_sequence(&source).map_err(|e| e.to_string())?;
    let weight_of = |m: &[u32]| -> Vec<i64> {
        let mut w = vec![0i64; datum.rank()];
        for (k, &mk) in m.iter().enumerate() {
            for (a, b) in w.iter_mut().zip(&betas[k]) {
                *a += mk as i64 * b;
            }
        }
        w
    };
    let mut blocks: BTreeMap<Vec<i64>, Vec<EntryOut>> = BTreeMap::new();
    let mut diff: Vec<DiffOut> = Vec::new();
    for (m, row) in &rows {
        let wt = weight_of(m);
        let block_start = Instant::now();
        for (n, c) in row {
            blocks.entry(wt.clone()).or_default().push(EntryOut {
                m: m.clone(),
                n: n.clone(),
                coeff: c.clone(),
            });
        }
        log::debug!(
            "block {wt:?}: row m={m:?} assembled in {:?}",
            block_start.elapsed()
        );
        if intertwiner && args.compare_gamma {
            let gamma = transition_gamma(&ctx, &source, &target, m).map_err(|e| e.to_string())?;
            let keys: std::collections::BTreeSet<Vec<u32>> =
                row.keys().chain(gamma.keys()).cloned().collect();
            for n in keys {
                let p = row.get(&n).cloned().unwrap_or_else(Scalar::zero);
                let g = gamma.get(&n).cloned().unwrap_or_else(Scalar::zero);
                if p != g {
                    diff.push(DiffOut {
                        m: m.clone(),
                        n,
                        psi: p,
                        gamma: g,
                    });
                }
            }
        }
    }
    for entries in blocks.values_mut() {
        entries.sort_by(|a, b| (&a.m, &a.n).cmp(&(&b.m, &b.n)));
    }
    let compare_failed = intertwiner && args.compare_gamma && !diff.is_empty();
    let file = MatrixFile {
        algebra: datum.label().to_string(),
        kind: if intertwiner {
            "intertwiner"
        } else {
            "transition"
        }
        .to_string(),
        source: source.iter().map(|i| i + 1).collect(),
        target: target.iter().map(|i| i + 1).collect(),
        bound,
        blocks: blocks
            .into_iter()
            .map(|(weight, entries)| BlockOut { weight, entries })
            .collect(),
        diff: if intertwiner && args.compare_gamma {
            Some(diff)
        } else {
            None
        },
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&file).unwrap() + "\n",
        Format::Csv => {
            let mut s = String::from("weight,m,n,coeff\n");
            for b in &file.blocks {
                for e in &b.entries {
                    let join = |v: &[u32]| {
                        v.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    let jw = b
                        .weight
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    s.push_str(&format!(
                        "\"{}\",\"{}\",\"{}\",\"{}\"\n",
                        jw,
                        join(&e.m),
                        join(&e.n),
                        e.coeff
                    ));
                }
            }
            s
        }
    };
    match &args.out {
        Some(p) => std::fs::write(p, text).map_err(|e| e.to_string())?,
        None => print!("{text}"),
    }
    if let Some(dir) = cache_dir_of(&args.cache_dir) {
        write_cache(&ctx, &dir, &source)?;
        write_cache(&ctx, &dir, &target)?;
    }
    if compare_failed {
        eprintln!("intertwiner/transition comparison found differences");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    setup_jobs(args.jobs);
    let ctx = AlgebraContext::for_label(&args.algebra).map_err(|e| e.to_string())?;
    let datum = ctx.datum.clone();
    let word = match &args.from {
        Some(w) => {
            let w = word_from_string(w, datum.rank()).map_err(|e| e.to_string())?;
            if !datum.is_reduced_w0(&w) {
                return Err(format!(
                    "--from is not a reduced word for w0 of {}",
                    datum.label()
                ));
            }
            w
        }
        None => datum.some_reduced_w0(),
    };
    let bound = args.bound.unwrap_or_else(|| default_bound(datum.label()));
    let cutoff = args.cutoff.unwrap_or_else(|| default_cutoff(&datum, bound));
    if let Some(dir) = cache_dir_of(&args.cache_dir) {
        if dir.exists() {
            prime_cache(&ctx, &dir, &word, args.recheck_cache)?;
        }
    }
    let suites: Vec<&str> = args
        .suite
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    let mut report = Report::new();
    for suite in suites {
        let started = Instant::now();
        match suite {
            "relations" => {
                report.merge(
                    verify::check_boson_relations(&ctx, &word, cutoff, Some(cutoff as i64))
                        .map_err(|e| e.to_string())?,
                );
            }
            "pairing" => {
                let words = datum.reduced_words_w0();
                let take: Vec<_> = if words.len() <= 2 {
                    words
                } else {
                    vec![words[0].clone(), words[words.len() - 1].clone()]
                };
                for w in take {
                    report.merge(
                        verify::check_lusztig_diagonal(&ctx, &w, bound)
                            .map_err(|e| e.to_string())?,
                    );
                }
                report.merge(verify::check_pairing_radical(&ctx).map_err(|e| e.to_string())?);
                report.merge(verify::check_pairing_samples(&ctx));
            }
            "braid" => {
                report.merge(verify::check_braid_relations(&ctx).map_err(|e| e.to_string())?);
                report.merge(verify::check_t_formula(&ctx).map_err(|e| e.to_string())?);
                report.merge(verify::check_coproduct_s(&ctx).map_err(|e| e.to_string())?);
            }
            "rtt" => {
                if datum.rank() == 1 {
                    report.merge(
                        qgcore::rmatrix::rank_one_ring_relations(&ctx, bound as usize)
                            .map_err(|e| e.to_string())?,
                    );
                }
                let w1 = Weight::fundamental(datum.rank(), 0);
                report.merge(
                    qgcore::rmatrix::rtt_report(&ctx, &w1, &w1, bound as usize)
                        .map_err(|e| e.to_string())?,
                );
                report.merge(
                    verify::check_sigma_commutation(&ctx, 2).map_err(|e| e.to_string())?,
                );
                report.merge(verify::check_com_rules(&ctx, 2).map_err(|e| e.to_string())?);
            }
            "spectra" => {
                let mut lambdas: Vec<Weight> = (0..datum.rank())
                    .map(|i| Weight::fundamental(datum.rank(), i))
                    .collect();
                lambdas.push(datum.rho());
                report.merge(
                    verify::check_spectra(&ctx, &word, &lambdas, cutoff)
                        .map_err(|e| e.to_string())?,
                );
            }
            "main2" => {
                report.merge(
                    verify::check_vacuum_identity(&ctx, &word, bound, cutoff)
                        .map_err(|e| e.to_string())?,
                );
                report.merge(
                    verify::check_pi_equals_rho(&ctx, &word, bound as i64, cutoff)
                        .map_err(|e| e.to_string())?,
                );
                report.merge(
                    verify::check_fock_radical(&ctx, &word, cutoff).map_err(|e| e.to_string())?,
                );
                let words = datum.reduced_words_w0();
                if let Some(other) = words.iter().find(|w| *w != &word) {
                    report.merge(
                        verify::check_psi_intertwining_route(&ctx, &word, other, bound, cutoff)
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
            other => return Err(format!("unknown suite `{other}`")),
        }
        log::info!("suite {suite} finished in {:?}", started.elapsed());
    }
    print!("{report}");
    if let Some(p) = &args.out {
        std::fs::write(p, serde_json::to_string_pretty(&report).unwrap() + "\n")
            .map_err(|e| e.to_string())?;
    }
    if let Some(dir) = cache_dir_of(&args.cache_dir) {
        write_cache(&ctx, &dir, &word)?;
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
