use serde::Serialize;
use serde_json::{Map, Value};
use touriso::oracles::OracleCounts;
use touriso::sampling::{Mode, SamplerConfig};

/// Bookkeeping attached to every JSON report. Everything except `wall_ms`
/// is a function of the command line.
#[derive(Debug, Clone, Serialize)]
pub struct RunStats {
    pub seed: u64,
    pub mode: Mode,
    pub epsilon: f64,
    pub c1: f64,
    pub c2: f64,
    pub round_sample_cap: Option<u64>,
    pub oracle: String,
    pub calls: OracleCounts,
    pub samples: u64,
    pub wall_ms: u64,
    pub outcome: String,
    /// Departures from the published constants in effect for this run.
    pub deviations: Vec<String>,
    pub modules: Map<String, Value>,
}

impl RunStats {
    pub fn new(seed: u64, sampler: &SamplerConfig, oracle: &str) -> Self {
        let mut deviations = Vec::new();
        if sampler.mode == Mode::Desk {
            deviations.push(format!("sample-size constants c1 = {}, c2 = {}", sampler.c1, sampler.c2));
            if let Some(cap) = sampler.round_sample_cap {
                deviations.push(format!("at most {cap} draws per round"));
            }
        }
        RunStats {
            seed,
            mode: sampler.mode,
            epsilon: sampler.epsilon,
            c1: sampler.c1,
            c2: sampler.c2,
            round_sample_cap: sampler.round_sample_cap,
            oracle: oracle.to_string(),
            calls: OracleCounts::default(),
            samples: 0,
            wall_ms: 0,
            outcome: String::new(),
            deviations,
            modules: Map::new(),
        }
    }

    pub fn module(&mut self, name: &str, record: impl Serialize) {
        let value = serde_json::to_value(record).expect("records serialize");
        self.modules.insert(name.to_string(), value);
    }
}
