use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use touriso::autgroup::{aut_group_with, iso_tournaments, verify_generators, AutGroupOptions};
use touriso::oracles::{brute_aut, brute_isomorphism};
use touriso::rng::seeded;
use touriso::sampling::{extract_characteristic, TableSampler};
use touriso::suborbits::{invariant_suborbits, ExactSuborbits, ReductionSuborbits, SuborbitOracle, SuborbitResult};
use touriso::{PermGroup, Permutation, Tournament};

use crate::instance::{self, read_tournament, Family, FamilyParams};
use crate::stats::RunStats;
use crate::{CliError, Common, Method};

/// Writes to standard output; a reader that went away is not an error.
fn print_out(text: &str) -> Result<(), CliError> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn order_value(order: u128) -> Value {
    match u64::try_from(order) {
        Ok(o) => json!(o),
        Err(_) => json!(order.to_string()),
    }
}

fn images(perms: &[Permutation]) -> Vec<&[usize]> {
    perms.iter().map(Permutation::images).collect()
}

/// Prints the report and copies it to `--json` if given.
fn emit(common: &Common, command: &str, mut body: Value, mut stats: RunStats, start: Instant) -> Result<(), CliError> {
    stats.wall_ms = start.elapsed().as_millis() as u64;
    body["command"] = json!(command);
    body["stats"] = serde_json::to_value(&stats).expect("stats serialize");
    let text = serde_json::to_string_pretty(&body).expect("report serializes");
    print_out(&format!("{text}\n"))?;
    if let Some(path) = &common.json {
        fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

pub fn gen(common: &Common, family: Family, params: &FamilyParams, output: Option<&Path>) -> Result<(), CliError> {
    let t = instance::generate(family, params, common.seed)?;
    match output {
        Some(path) => fs::write(path, t.to_text())?,
        None => print_out(&t.to_text())?,
    }
    Ok(())
}

struct AutRun {
    group: PermGroup,
    trace: Option<Value>,
    stats: RunStats,
}

fn run_aut(common: &Common, t: &Tournament, method: Method, options: AutGroupOptions) -> Result<AutRun, CliError> {
    let mut stats = RunStats::new(common.seed, &common.sampler(), &common.oracle);
    match method {
        Method::Brute => Ok(AutRun {
            group: brute_aut(t),
            trace: None,
            stats,
        }),
        Method::Reduction => {
            let mut oracle = ReductionSuborbits::new(common.oracle_stack()?, common.suborbit_config());
            let mut rng = seeded(common.seed);
            let out = aut_group_with(t, &mut oracle, options, &mut rng)?;
            stats.calls = oracle.counts();
            stats.samples = oracle.samples();
            let trace = serde_json::to_value(&out.trace).expect("trace serializes");
            stats.module(
                "autgroup",
                json!({
                    "nodes": out.trace.nodes(),
                    "depth": out.trace.depth(),
                    "options": options,
                    "epsilon_policy": oracle.config.epsilon,
                }),
            );
            Ok(AutRun {
                group: out.group,
                trace: Some(trace),
                stats,
            })
        }
    }
}

pub fn aut(common: &Common, input: &Path, method: Method, memoize: bool, check_solvable: bool) -> Result<(), CliError> {
    let start = Instant::now();
    let t = read_tournament(input)?;
    let options = AutGroupOptions { memoize, check_solvable };
    let AutRun { group, trace, mut stats } = run_aut(common, &t, method, options)?;
    if !verify_generators(&t, &group) {
        return Err(CliError::Unverified("a generator is not an automorphism".into()));
    }
    stats.outcome = format!("order {}", group.order());
    let body = json!({
        "method": method.name(),
        "n": t.n(),
        "order": order_value(group.order()),
        "generators": images(group.generators()),
        "orbits": group.orbits().parts(),
        "trace": trace,
    });
    emit(common, "aut", body, stats, start)
}

pub fn iso(common: &Common, first: &Path, second: &Path, method: Method) -> Result<(), CliError> {
    let start = Instant::now();
    let t1 = read_tournament(first)?;
    let t2 = read_tournament(second)?;
    let mut stats = RunStats::new(common.seed, &common.sampler(), &common.oracle);
    let witness = match method {
        Method::Brute => {
            if t1.n() != t2.n() {
                None
            } else {
                brute_isomorphism(&t1, &t2)
            }
        }
        Method::Reduction => {
            let mut oracle = ReductionSuborbits::new(common.oracle_stack()?, common.suborbit_config());
            let mut rng = seeded(common.seed);
            let w = if t1.n() != t2.n() {
                None
            } else {
                iso_tournaments(&t1, &t2, &mut oracle, &mut rng)?
            };
            stats.calls = oracle.counts();
            stats.samples = oracle.samples();
            w
        }
    };
    if let Some(w) = &witness {
        if !t1.is_isomorphism(&t2, w) {
            return Err(CliError::Unverified("witness is not an isomorphism".into()));
        }
    }
    stats.outcome = if witness.is_some() { "isomorphic" } else { "not isomorphic" }.into();
    let body = json!({
        "method": method.name(),
        "isomorphic": witness.is_some(),
        "witness": witness.as_ref().map(Permutation::images),
    });
    emit(common, "iso", body, stats, start)
}

pub fn suborbits(common: &Common, input: &Path, method: Method) -> Result<(), CliError> {
    let start = Instant::now();
    let t = read_tournament(input)?;
    let mut stats = RunStats::new(common.seed, &common.sampler(), &common.oracle);
    let mut rng = seeded(common.seed);
    let result: SuborbitResult = match method {
        Method::Brute => ExactSuborbits.suborbits(&t, &mut rng)?,
        Method::Reduction => {
            let mut stack = common.oracle_stack()?;
            let r = invariant_suborbits(&t, &mut stack, &common.suborbit_config(), &mut rng)?;
            stats.calls = stack.counts();
            r
        }
    };
    if !result.verify(&t) {
        return Err(CliError::Unverified("a certificate is not an automorphism".into()));
    }
    stats.samples = result.samples;
    stats.outcome = format!("{} classes", result.pi.len());
    stats.module("sampling", json!({ "rounds": result.rounds, "attempts": result.attempts }));
    let body = json!({
        "method": method.name(),
        "partition": result.pi.parts(),
        "certificates": images(&result.certificates),
        "links": result.links,
        "epsilon": result.epsilon,
        "samples": result.samples,
        "calls": stats.calls,
    });
    emit(common, "suborbits", body, stats, start)
}

pub fn sample(common: &Common, probs: Vec<f64>) -> Result<(), CliError> {
    let start = Instant::now();
    let mut sampler = TableSampler::from_distribution(probs).map_err(CliError::BadParameter)?;
    let config = common.sampler();
    let mut rng = seeded(common.seed);
    let ex = extract_characteristic(&mut sampler, &config, &mut rng).map_err(|e| CliError::Sampling(e.to_string()))?;
    let mut stats = RunStats::new(common.seed, &config, "none");
    stats.samples = ex.samples;
    stats.outcome = format!("{} of {} elements", ex.set.len(), sampler.probs().len());
    stats.module("sampling", json!({ "rounds": ex.rounds }));
    let body = json!({
        "set": ex.set,
        "characteristic": sampler.is_characteristic(&ex.set),
        "samples": ex.samples,
    });
    emit(common, "sample", body, stats, start)
}

pub fn bench(
    common: &Common,
    family: Family,
    sizes: &[usize],
    methods: &[Method],
    runs: u64,
    inner: Option<&str>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let mut csv = String::from("n,family,method,order_match,o1_calls,samples,ms\n");
    for &n in sizes {
        for r in 0..runs {
            let seed = common.seed.wrapping_add(r);
            let t = instance::bench_instance(family, n, inner, seed)?;
            let reference = brute_aut(&t).order();
            for &method in methods {
                let run_common = Common { seed, ..common.clone() };
                let start = Instant::now();
                let AutRun { group, stats, .. } = run_aut(&run_common, &t, method, AutGroupOptions::default())?;
                let ms = start.elapsed().as_millis();
                let matches = group.order() == reference && verify_generators(&t, &group);
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    t.n(),
                    family.name(),
                    method.name(),
                    matches,
                    stats.calls.o1,
                    stats.samples,
                    ms
                )
                .expect("writing to a string");
            }
        }
    }
    match output {
        Some(path) => fs::write(path, csv)?,
        None => print_out(&csv)?,
    }
    Ok(())
}
