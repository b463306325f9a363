use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use induced_ramsey::construction::{
    build_g, build_h, require_supported_k, sample_coloring, sample_planted_coloring, Coloring, LinkHypergraph, Params,
};
use induced_ramsey::geometry::{random_general_position, MotzkinCount};
use induced_ramsey::hypergraph::{binomial, profile_capacity, EdgeSet, ShardSpec};
use induced_ramsey::independence::{
    alpha_with_budget, prob_bound, search_colorings, verify_certificate, AlphaOutcome, CertificateError,
    ColoringStrategy, LowerBoundCertificate, EXHAUSTIVE_LIMIT,
};
use induced_ramsey::verifier::{full_sweep, merge_reports, write_repro_bundle, SweepReport};
use induced_ramsey::{Error, IntPointConfiguration};

/// Exit status for usage, configuration and IO errors.
const EXIT_USAGE: u8 = 1;
/// Exit status when a node budget ran out before alpha was settled.
const EXIT_BUDGET: u8 = 9;

#[derive(Parser, Debug)]
#[command(name = "induced-ramsey", version, about = "Build and verify hypergraphs whose (k+1)-sets induce 0, 2 or 4 edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a coloring and write it with its G and H edge lists.
    Construct(ConstructArgs),
    /// Sweep every k-set and (k+1)-set (or one shard) and check all claims.
    Verify(VerifyArgs),
    /// Exact independence number of an edge-list hypergraph.
    Alpha(AlphaArgs),
    /// Try consecutive seeds and certify the coloring with the smallest alpha.
    Search(SearchArgs),
    /// Exact edge probability, packing size and union-bound feasibility.
    ProbBound(ProbBoundArgs),
    /// Count non-convex (d+2)-tuples in random or given (d+3)-point sets.
    Motzkin(MotzkinArgs),
    /// Re-run every check recorded in a certificate.
    CertVerify(CertVerifyArgs),
    /// Merge shard reports written by `verify --shard`.
    MergeReports(MergeArgs),
}

#[derive(Args, Debug)]
struct ColoringSpec {
    #[arg(long)]
    k: usize,
    #[arg(long = "N")]
    vertices: usize,
    #[arg(long)]
    seed: u64,
    /// Force up to this many random (k-1)-sets into G before filling the rest uniformly.
    #[arg(long)]
    planted: Option<usize>,
    /// Allow k = 4, which only illustrates the construction.
    #[arg(long)]
    allow_k4: bool,
}

impl ColoringSpec {
    fn params(&self) -> anyhow::Result<Params> {
        require_supported_k(self.k, self.allow_k4)?;
        Ok(Params::new(self.k, self.vertices, self.seed)?)
    }

    fn strategy(&self) -> ColoringStrategy {
        match self.planted {
            Some(attempts) => ColoringStrategy::Planted { attempts },
            None => ColoringStrategy::Uniform,
        }
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    spec: ColoringSpec,
    /// Directory receiving coloring.txt, G.edges and H.edges.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct VerifyInput {
    /// Coloring file; G and H are rebuilt from it.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Edge list of a (k-1)-uniform G; H is its parity hypergraph.
    #[arg(long = "g")]
    g_edges: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: VerifyInput,
    /// Shard `i/m` of the colex ranges.
    #[arg(long, default_value = "0/1")]
    shard: ShardSpec,
    /// Write the full report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// On failure, write the failing subset and coloring here.
    #[arg(long)]
    repro: Option<PathBuf>,
    #[arg(long)]
    allow_k4: bool,
}

#[derive(Args, Debug)]
struct AlphaArgs {
    #[arg(long)]
    input: PathBuf,
    /// Stop after this many search nodes and report bounds.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    spec: ColoringSpec,
    /// Target independent-set size.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    /// Certificate output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reference the coloring by hash instead of embedding it.
    #[arg(long)]
    detached: bool,
}

#[derive(Args, Debug)]
struct ProbBoundArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Sample count when the local space is too large to enumerate.
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: u64,
    /// Seed for the Monte Carlo fallback.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    allow_k4: bool,
}

#[derive(Args, Debug)]
struct MotzkinArgs {
    #[arg(long)]
    d: usize,
    /// Points per random configuration (default d + 3).
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Coordinates are drawn from [-range, range].
    #[arg(long, default_value_t = 10)]
    range: u64,
    /// Points file; every (d+3)-subset is checked instead of random trials.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertVerifyArgs {
    #[arg(long)]
    cert: PathBuf,
    /// Coloring file for certificates that reference it by hash.
    #[arg(long)]
    coloring: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MergeArgs {
    #[arg(required = true)]
    reports: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("cannot open {}", path.display()))?))
}

fn write_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> induced_ramsey::Result<()>) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    write(&mut w)?;
    w.flush()?;
    Ok(())
}

fn read_coloring(path: &Path) -> anyhow::Result<Coloring> {
    Coloring::read_from(open(path)?).with_context(|| format!("reading coloring {}", path.display()))
}

fn construct(a: ConstructArgs) -> anyhow::Result<u8> {
    let p = a.spec.params()?;
    let phi = match a.spec.planted {
        Some(attempts) => sample_planted_coloring(p, attempts),
        None => sample_coloring(p),
    };
    let hash = phi.content_hash();
    let g = build_g(phi);
    let h = build_h(&g);
    fs::create_dir_all(&a.out_dir).with_context(|| format!("cannot create {}", a.out_dir.display()))?;
    let coloring = g.coloring().expect("built from a coloring");
    write_file(&a.out_dir.join("coloring.txt"), |w| coloring.write_to(w))?;
    write_file(&a.out_dir.join("G.edges"), |w| g.edges().write_to(w))?;
    write_file(&a.out_dir.join("H.edges"), |w| h.edges().write_to(w))?;
    println!(
        "coloring k={} N={} seed={} rng-id={} sha256={hash}",
        p.k,
        p.vertices,
        p.seed,
        coloring.rng_id()
    );
    println!("G {} edges", g.len());
    println!("H {} edges", h.len());
    Ok(0)
}

fn verify(a: VerifyArgs) -> anyhow::Result<u8> {
    let g = match (&a.input.coloring, &a.input.g_edges) {
        (Some(path), _) => {
            let phi = read_coloring(path)?;
            require_supported_k(phi.k(), a.allow_k4)?;
            build_g(phi)
        }
        (None, Some(path)) => {
            let edges = EdgeSet::read_from(open(path)?).with_context(|| format!("reading {}", path.display()))?;
            let k = edges.uniformity() + 1;
            require_supported_k(k, a.allow_k4)?;
            LinkHypergraph::from_edges(k, edges)?
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let h = build_h(&g);
    let report = full_sweep(&g, &h, a.shard)?;
    for f in &report.failures {
        println!("{f}");
    }
    println!(
        "checked sets {} edges {} shard {}",
        report.sets_checked, report.edges_checked, a.shard
    );
    println!("{}", report.summary_line());
    if let Some(path) = &a.report {
        write_file(path, |w| report.write_to(w))?;
    }
    if let (Some(path), Some(f)) = (&a.repro, report.failures.first()) {
        write_file(path, |w| write_repro_bundle(w, f, g.coloring()))?;
    }
    Ok(report.verdict().exit_code() as u8)
}

fn alpha(a: AlphaArgs) -> anyhow::Result<u8> {
    let h = EdgeSet::read_from(open(&a.input)?).with_context(|| format!("reading {}", a.input.display()))?;
    match alpha_with_budget(&h, a.budget) {
        AlphaOutcome::Exact(r) => {
            println!("alpha {}", r.alpha);
            println!("witness {}", r.witness);
            Ok(0)
        }
        AlphaOutcome::BudgetExceeded {
            lower,
            upper,
            witness,
            nodes,
        } => {
            println!("alpha between {lower} and {upper} (budget of {nodes} nodes exhausted)");
            println!("witness {witness}");
            Ok(EXIT_BUDGET)
        }
    }
}

fn search(a: SearchArgs) -> anyhow::Result<u8> {
    let p = a.spec.params()?;
    let outcome = search_colorings(p, a.trials, a.n, a.spec.strategy())?;
    for (seed, alpha) in &outcome.trials {
        println!("trial seed {seed} alpha {alpha}");
    }
    let cert = if a.detached { outcome.best.detached() } else { outcome.best };
    println!("best {cert}");
    if let Some(path) = &a.out {
        write_file(path, |w| cert.write_to(w))?;
    }
    Ok(if cert.certifies() { 0 } else { 8 })
}

fn prob(a: ProbBoundArgs) -> anyhow::Result<u8> {
    require_supported_k(a.k, a.allow_k4)?;
    let palette = ((a.k - 1) * (a.k - 2) / 2) as u64;
    let exhaustive = palette.checked_pow(binomial(a.k as u64, 3) as u32).is_some_and(|s| s <= EXHAUSTIVE_LIMIT);
    let seed = match (exhaustive, a.seed) {
        (true, s) => s.unwrap_or(0),
        (false, Some(s)) => s,
        (false, None) => bail!(Error::Config(format!(
            "k = {} needs the Monte Carlo fallback; pass --seed",
            a.k
        ))),
    };
    let b = prob_bound(a.k, a.n, a.mc_samples, seed)?;
    println!("{}", b.probability);
    println!("packing m = {}", b.packing_size);
    println!(
        "bound at N = n = {}: {:.9e} ({})",
        a.n,
        b.at_n.value(),
        if b.at_n.feasible { "below 1" } else { "not below 1" }
    );
    match b.max_log2_n {
        Some(x) => println!("max feasible log2 N = {x:.6}"),
        None => println!("max feasible log2 N = none"),
    }
    Ok(0)
}

fn motzkin(a: MotzkinArgs) -> anyhow::Result<u8> {
    let mut counts: Vec<MotzkinCount> = Vec::new();
    let mut rejections = 0;
    match &a.input {
        Some(path) => {
            let c = IntPointConfiguration::read_from(open(path)?).with_context(|| format!("reading {}", path.display()))?;
            if c.dim() != a.d {
                bail!(Error::Config(format!("points file has d = {}, expected {}", c.dim(), a.d)));
            }
            for s in c.labels().subsets(a.d + 3) {
                counts.push(c.motzkin_count(s)?);
            }
        }
        None => {
            let Some(seed) = a.seed else {
                bail!(Error::Config("random trials need --seed".into()));
            };
            let points = a.points.unwrap_or(a.d + 3);
            for i in 0..a.trials {
                let rc = random_general_position(a.d, points, a.range, seed.wrapping_add(i))?;
                rejections += rc.rejections;
                for s in rc.config.labels().subsets(a.d + 3) {
                    counts.push(rc.config.motzkin_count(s)?);
                }
            }
        }
    }
    let ok = counts.iter().filter(|m| m.verdict()).count();
    println!("{ok}/{} in {{0,2,4}}", counts.len());
    let mut hist = std::collections::BTreeMap::new();
    for m in &counts {
        *hist.entry(m.count).or_insert(0u64) += 1;
    }
    let parts: Vec<String> = hist.iter().map(|(c, n)| format!("{c}:{n}")).collect();
    println!("counts {}", parts.join(" "));
    if a.input.is_none() {
        println!("rejections {rejections}");
    }
    for m in counts.iter().filter(|m| !m.verdict()) {
        println!("violation {} count {}", m.set, m.count);
    }
    Ok(if ok == counts.len() { 0 } else { 2 })
}

fn cert_verify(a: CertVerifyArgs) -> anyhow::Result<u8> {
    let cert = LowerBoundCertificate::read_from(open(&a.cert)?)?;
    let external = a.coloring.as_deref().map(read_coloring).transpose()?;
    let eval = verify_certificate(&cert, external.as_ref())?;
    println!("{}", eval.report.summary_line());
    println!("certificate ok: {cert}");
    Ok(0)
}

fn merge(a: MergeArgs) -> anyhow::Result<u8> {
    let reports = a
        .reports
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            SweepReport::parse(&text).with_context(|| format!("reading report {}", p.display()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let merged = merge_reports(reports)?;
    let total = binomial(merged.vertices as u64, merged.k as u64 + 1);
    for f in &merged.failures {
        println!("{f}");
    }
    println!(
        "checked sets {} edges {} range sets {}..{} of {total}",
        merged.sets_checked, merged.edges_checked, merged.set_range.0, merged.set_range.1
    );
    println!("{}", merged.summary_line());
    if let Some(path) = &a.out {
        write_file(path, |w| merged.write_to(w))?;
    }
    Ok(merged.verdict().exit_code() as u8)
}

/// Maps an error to its exit status: 4 for malformed input, 3 for internal
/// inconsistencies, certificate errors to their own codes, 1 otherwise.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(c) = e.downcast_ref::<CertificateError>() {
        return c.exit_code() as u8;
    }
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Parse { .. }) => 4,
        Some(Error::Inconsistency(_)) => 3,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = profile_capacity() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Alpha(a) => alpha(a),
        Command::Search(a) => search(a),
        Command::ProbBound(a) => prob(a),
        Command::Motzkin(a) => motzkin(a),
        Command::CertVerify(a) => cert_verify(a),
        Command::MergeReports(a) => merge(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
