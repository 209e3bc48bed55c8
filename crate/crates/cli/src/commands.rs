use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use hptsp_core::lab::{bucket_census, leak_test_against, length_extension_demo, sac_test, LeakFeature, LeakTarget};
use hptsp_core::route::RouteEncoder;
use hptsp_core::search::{find_witness, scaling_benchmark_with, BenchOptions};
use hptsp_core::verifier::{load_certificate, CertificateError};
use hptsp_core::{
    enumerate_routes, generate_random_instance, load_instance, make_example_instance, save_instance, solve_hptsp,
    verify, Certificate, Instance, SearchConfig, GOLDEN_TABLE,
};
use serde::Serialize;

use crate::{Cli, Command, InstanceSource, Target};

#[derive(Debug)]
pub enum Failure {
    /// The inputs were fine but the answer is "no".
    Rejected(String),
    /// Bad flags, unreadable or malformed files, violated preconditions.
    Usage(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Rejected(msg) => f.write_str(msg),
            Failure::Usage(msg) => write!(f, "error: {msg}"),
        }
    }
}

fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

type CmdResult = Result<(), Failure>;

pub fn run(cli: &Cli) -> CmdResult {
    let workers = match cli.workers {
        Some(0) => return Err(usage("--workers must be at least 1")),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };

    match &cli.command {
        Command::Table => table(),
        Command::Gen { v, min_weight, max_weight, directed, hash, m } => {
            gen(*v, *min_weight, *max_weight, *directed, hash, m.as_deref(), cli.seed, cli.out.as_deref())
        }
        Command::Solve { instance, vertex_limit } => {
            solve(&load(instance)?, SearchConfig { workers, vertex_limit: *vertex_limit }, cli.out.as_deref())
        }
        Command::Decide { instance, vertex_limit } => {
            decide(&load(instance)?, SearchConfig { workers, vertex_limit: *vertex_limit })
        }
        Command::Verify { instance, cert } => verify_cmd(&load(instance)?, cert),
        Command::Sac { hash, trials, input_len } => sac(hash, *trials, *input_len, cli.seed, &csv_path(cli, "sac")),
        Command::Leak { source, feature, target, shuffles } => {
            let instance = source.resolve(cli.seed)?;
            leak(&instance, feature.as_deref(), *target, *shuffles, cli.seed, &csv_path(cli, "leak"))
        }
        Command::ExtendDemo { source } => extend_demo(&source.resolve(cli.seed)?, &csv_path(cli, "extend-demo")),
        Command::Census { source, prefix_bits } => {
            census(&source.resolve(cli.seed)?, *prefix_bits, &csv_path(cli, "census"))
        }
        Command::Bench { from, to, runs } => bench(*from, *to, *runs, workers, cli.seed, &csv_path(cli, "bench")),
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    load_instance(path).map_err(usage)
}

fn csv_path(cli: &Cli, command: &str) -> PathBuf {
    cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{command}.csv")))
}

fn write_csv<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> CmdResult {
    let mut w = csv::Writer::from_path(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for row in rows {
        w.serialize(row).map_err(usage)?;
    }
    w.flush().map_err(|e| usage(format!("{}: {e}", path.display())))
}

impl InstanceSource {
    fn resolve(&self, seed: u64) -> Result<Instance, Failure> {
        match (&self.instance, self.v) {
            (Some(path), _) => load(path),
            (None, Some(v)) => generate_random_instance(v, 1..=100, seed, false).map_err(usage),
            (None, None) => Ok(make_example_instance()),
        }
    }
}

fn table() -> CmdResult {
    let instance = make_example_instance();
    let encoder = RouteEncoder::new(&instance);
    let hasher = instance.hash_function();
    let mut mismatched = Vec::new();
    let mut best = None;

    // Walk the routes in the reference table's order; every rank must appear.
    let mut by_name: std::collections::HashMap<String, _> =
        enumerate_routes(4).map_err(usage)?.map(|r| (instance.route_name(r.order()), r)).collect();
    for (name, want_string, want_digest) in GOLDEN_TABLE {
        let Some(route) = by_name.remove(name) else {
            mismatched.push(format!("{name}: route missing"));
            continue;
        };
        let encoded = encoder.encode(route.order());
        let string = String::from_utf8_lossy(&encoded).into_owned();
        let digest = hasher.digest(&encoded);
        println!("{name}  {string} → {digest}");
        if string != want_string || digest.to_hex() != want_digest {
            mismatched.push(format!("{name}: got {string} {digest}, expected {want_string} {want_digest}"));
        }
        if best.is_none_or(|(d, _)| digest < d) {
            best = Some((digest, name));
        }
    }
    mismatched.extend(by_name.keys().map(|n| format!("{n}: not in reference table")));

    if let Some((digest, name)) = best {
        println!("minimum: {name} {digest}");
    }
    if mismatched.is_empty() {
        Ok(())
    } else {
        Err(Failure::Rejected(format!(
            "{} rows differ from the reference table:\n{}",
            mismatched.len(),
            mismatched.join("\n")
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    v: usize,
    min_weight: u64,
    max_weight: u64,
    directed: bool,
    hash: &str,
    m: Option<&str>,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult {
    let mut instance = generate_random_instance(v, min_weight..=max_weight, seed, directed).map_err(usage)?;
    if hash != instance.hash_id() {
        instance = instance.with_hash(hash).map_err(usage)?;
    }
    if let Some(m) = m {
        instance = instance.with_threshold(m).map_err(usage)?;
    }
    match out {
        Some(path) => {
            save_instance(&instance, path).map_err(usage)?;
            println!("wrote V = {v} instance to {}", path.display());
        }
        None => println!("{}", instance.to_json()),
    }
    Ok(())
}

fn solve(instance: &Instance, config: SearchConfig, cert_out: Option<&Path>) -> CmdResult {
    let result = solve_hptsp(instance, &config).map_err(usage)?;
    let order = result.best_route.order();
    println!(
        "{} {} {} routes in {:.3} ms",
        instance.route_name(order),
        result.best_digest,
        result.routes_examined,
        result.wall_time.as_secs_f64() * 1e3
    );
    println!(
        "rank {}, tour cost {}, digest <= m: {}",
        result.best_route.rank(),
        instance.tour_cost(order),
        result.decision
    );
    if let Some(path) = cert_out {
        let cert = Certificate::for_route(instance, order);
        fs::write(path, cert.to_json(instance)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn decide(instance: &Instance, config: SearchConfig) -> CmdResult {
    match find_witness(instance, &config).map_err(usage)? {
        Some(w) => {
            println!("yes: {} {} <= m", instance.route_name(w.route.order()), w.digest);
            Ok(())
        }
        None => Err(Failure::Rejected(format!("no route ≤ m (m = {})", instance.m()))),
    }
}

fn verify_cmd(instance: &Instance, cert_path: &Path) -> CmdResult {
    let cert = match load_certificate(instance, cert_path) {
        Ok(c) => c,
        // A vertex the instance does not have is a malformed route, not a malformed file.
        Err(CertificateError::UnknownLabel(label)) => {
            return Err(Failure::Rejected(format!("rejected: missing-vertex (unknown label {label:?})")))
        }
        Err(e) => return Err(usage(e)),
    };
    let report = verify(instance, &cert);
    let digest = report.digest.map_or_else(|| "-".to_string(), |d| d.to_hex());
    if report.accepted {
        println!("accepted");
        println!("digest {digest}, {} steps", report.step_count);
        Ok(())
    } else {
        let reason = report.failure_reason.map_or_else(|| "unknown".to_string(), |r| r.to_string());
        Err(Failure::Rejected(format!("rejected: {reason} (digest {digest}, {} steps)", report.step_count)))
    }
}

#[derive(Serialize)]
struct SacRow {
    bit: usize,
    flip_rate: f64,
}

fn sac(hash: &str, trials: usize, input_len: usize, seed: u64, out: &Path) -> CmdResult {
    let r = sac_test(hash, trials, input_len, seed).map_err(usage)?;
    write_csv(out, r.per_output_bit_rates.iter().enumerate().map(|(bit, &flip_rate)| SacRow { bit, flip_rate }))?;
    let (lo, hi) = r.per_output_bit_rates.iter().fold((1.0f64, 0.0f64), |(lo, hi), &p| (lo.min(p), hi.max(p)));
    println!(
        "{}: {} trials on {}-byte inputs, mean flip rate {:.5} ± {:.5} (99%), per-bit [{lo:.4}, {hi:.4}]",
        r.hash_id, r.trials, r.input_len, r.mean_flip_rate, r.confidence_halfwidth
    );
    Ok(())
}

#[derive(Serialize)]
struct LeakRow<'a> {
    feature: &'a str,
    target: String,
    v: usize,
    sample_size: usize,
    correlation: f64,
    p_value: f64,
}

fn leak(
    instance: &Instance,
    feature: Option<&str>,
    target: Target,
    shuffles: usize,
    seed: u64,
    out: &Path,
) -> CmdResult {
    let features = match feature {
        Some(name) => vec![name.parse::<LeakFeature>().map_err(usage)?],
        None => LeakFeature::ALL.to_vec(),
    };
    let target = match target {
        Target::Digest => LeakTarget::Digest,
        Target::TourCost => LeakTarget::TourCost,
    };
    let reports = features
        .into_iter()
        .map(|f| leak_test_against(instance, f, target, seed, shuffles).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        println!(
            "{} vs {} order (V = {}, n = {}): rho = {:+.4}, p = {:.4}",
            r.feature_name, r.target, r.v, r.sample_size, r.correlation, r.p_value_chance
        );
    }
    write_csv(
        out,
        reports.iter().map(|r| LeakRow {
            feature: &r.feature_name,
            target: r.target.to_string(),
            v: r.v,
            sample_size: r.sample_size,
            correlation: r.correlation,
            p_value: r.p_value_chance,
        }),
    )
}

#[derive(Serialize)]
struct ExtendRow {
    route: String,
    prefix: String,
    suffix: String,
    extended: String,
    glue_padded: String,
    full: String,
    matches_glue: bool,
    differs_from_full: bool,
}

fn extend_demo(instance: &Instance, out: &Path) -> CmdResult {
    let report = length_extension_demo(instance).map_err(usage)?;
    write_csv(
        out,
        report.rows.iter().map(|r| ExtendRow {
            route: r.route_name.clone(),
            prefix: String::from_utf8_lossy(&r.prefix).into_owned(),
            suffix: String::from_utf8_lossy(&r.suffix).into_owned(),
            extended: r.extended.to_hex(),
            glue_padded: r.glue_padded.to_hex(),
            full: r.full.to_hex(),
            matches_glue: r.matches_glue(),
            differs_from_full: r.differs_from_full(),
        }),
    )?;
    let glue = report.rows.iter().filter(|r| r.matches_glue()).count();
    let differs = report.rows.iter().filter(|r| r.differs_from_full()).count();
    let n = report.rows.len();
    println!(
        "{n} routes: {glue} extended digests equal the glue-padded digest, {differs} differ from the route digest"
    );
    if report.holds() {
        Ok(())
    } else {
        Err(Failure::Rejected("length extension did not behave as expected".into()))
    }
}

#[derive(Serialize)]
struct CensusRow {
    bucket: usize,
    count: u64,
}

fn census(instance: &Instance, prefix_bits: u32, out: &Path) -> CmdResult {
    let c = bucket_census(instance, prefix_bits).map_err(usage)?;
    write_csv(out, c.counts.iter().enumerate().map(|(bucket, &count)| CensusRow { bucket, count }))?;
    println!(
        "{} digests in {} buckets of {} leading bits: mean {:.2}, {} empty, chi-square {:.2} (p = {:.4})",
        c.total,
        c.counts.len(),
        c.prefix_bits,
        c.mean_occupancy,
        c.empty_buckets(),
        c.chi_square,
        c.p_value
    );
    Ok(())
}

#[derive(Serialize)]
struct BenchRow {
    v: usize,
    wall_time_ms: f64,
    routes_examined: u64,
    routes_per_second: f64,
}

fn bench(from: usize, to: usize, runs: usize, workers: usize, seed: u64, out: &Path) -> CmdResult {
    let options = BenchOptions { workers, min_runs: runs, ..Default::default() };
    let records = scaling_benchmark_with(from..=to, seed, &options).map_err(usage)?;
    let mut prev: Option<f64> = None;
    for r in &records {
        let secs = r.wall_time.as_secs_f64();
        let ratio = prev.map_or_else(String::new, |p| format!(", x{:.2} over V = {}", secs / p, r.v - 1));
        println!(
            "V = {:2}: {:>10.3} ms, {} routes, {:.3e} routes/s{ratio}",
            r.v,
            secs * 1e3,
            r.routes_examined,
            r.routes_per_second
        );
        prev = Some(secs);
    }
    write_csv(
        out,
        records.iter().map(|r| BenchRow {
            v: r.v,
            wall_time_ms: r.wall_time.as_secs_f64() * 1e3,
            routes_examined: r.routes_examined,
            routes_per_second: r.routes_per_second,
        }),
    )
}
