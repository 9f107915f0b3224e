//! Characteristic subsets of an unknown finite set, from i.i.d. samples.
//!
//! A subset is characteristic when it contains, with each element, every
//! element of the same sampling probability. [`extract_characteristic`]
//! finds a non-empty one by estimating probabilities, thresholding them at
//! a cut-off that no estimate lies close to, and doubling the scale until a
//! threshold yields a non-empty set.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::f64::consts::LN_2;
use std::hash::Hash;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Binomial;
use serde::Serialize;
use thiserror::Error;

/// A black-box source of i.i.d. elements.
/// Every element of a sampler's support with its probability.
pub type Listing<T> = Vec<(T, f64)>;

pub trait Sampler {
    type Item: Clone + Ord + Hash;
    type Error;

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Self::Item, Self::Error>;

    /// Every element with its probability, for samplers that can list them.
    /// A round over such a sampler draws its counts as one multinomial
    /// vector, which has the same law as drawing the elements one by one.
    fn distribution(&mut self) -> Result<Option<Listing<Self::Item>>, Self::Error> {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The published constants, no cap on draws.
    Faithful,
    /// Small constants and a per-round cap on draws.
    Desk,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub epsilon: f64,
    pub mode: Mode,
    pub c1: f64,
    pub c2: f64,
    pub max_doubling_rounds: u32,
    /// Upper bound on draws per round when drawing one element at a time;
    /// `None` draws the full formula.
    pub round_sample_cap: Option<u64>,
    /// Draw whole rounds as multinomial counts when the sampler lists its
    /// distribution. Such rounds always use the full formula.
    pub multinomial: bool,
}

pub const FAITHFUL_C1: f64 = 131_072.0;
pub const FAITHFUL_C2: f64 = 262_144.0;
pub const DESK_C1: f64 = 8.0;
pub const DESK_C2: f64 = 16.0;
pub const DESK_ROUND_CAP: u64 = 1 << 17;

impl SamplerConfig {
    pub fn desk(epsilon: f64) -> Self {
        SamplerConfig {
            epsilon,
            mode: Mode::Desk,
            c1: DESK_C1,
            c2: DESK_C2,
            max_doubling_rounds: 40,
            round_sample_cap: Some(DESK_ROUND_CAP),
            multinomial: true,
        }
    }

    pub fn faithful(epsilon: f64) -> Self {
        SamplerConfig {
            epsilon,
            mode: Mode::Faithful,
            c1: FAITHFUL_C1,
            c2: FAITHFUL_C2,
            max_doubling_rounds: 40,
            round_sample_cap: None,
            multinomial: true,
        }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        SamplerConfig {
            epsilon,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(format!("epsilon must lie in (0, 1), got {}", self.epsilon));
        }
        if !(self.c1 > 0.0 && self.c2 > 0.0 && self.c1.is_finite() && self.c2.is_finite()) {
            return Err("sample-size constants must be positive".into());
        }
        if self.mode == Mode::Faithful
            && (self.c1 != FAITHFUL_C1 || self.c2 != FAITHFUL_C2 || self.round_sample_cap.is_some())
        {
            return Err("faithful mode fixes c1 = 2^17, c2 = 2^18 and has no cap".into());
        }
        if self.max_doubling_rounds == 0 || self.max_doubling_rounds > 48 {
            return Err("max_doubling_rounds must lie in 1..=48".into());
        }
        if self.round_sample_cap == Some(0) {
            return Err("round_sample_cap must be positive".into());
        }
        Ok(())
    }
}

/// The per-round error parameter ε′, held as `ln(1/ε′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsPrime {
    ln_inv: f64,
}

impl EpsPrime {
    /// `min(1/e, ε/8)`, the starting value for target error `ε`.
    pub fn initial(epsilon: f64) -> Self {
        EpsPrime {
            ln_inv: (8.0 / epsilon).ln().max(1.0),
        }
    }

    pub fn from_value(eps_prime: f64) -> Self {
        EpsPrime {
            ln_inv: -eps_prime.ln(),
        }
    }

    pub fn halved(self) -> Self {
        EpsPrime {
            ln_inv: self.ln_inv + LN_2,
        }
    }

    pub fn ln_inv(self) -> f64 {
        self.ln_inv
    }

    pub fn value(self) -> f64 {
        (-self.ln_inv).exp()
    }
}

/// `max(⌈i³·c1·ln(1/ε′)⌉, ⌈i³·c2·ln(1/ε′)⌉²)`, saturating at `u128::MAX`.
pub fn sample_size(i: u64, eps_prime: EpsPrime, c1: f64, c2: f64) -> u128 {
    let cube = (i as f64).powi(3);
    let a = (cube * c1 * eps_prime.ln_inv()).ceil() as u128;
    let b = (cube * c2 * eps_prime.ln_inv()).ceil() as u128;
    a.max(b.saturating_mul(b))
}

/// Sample counts per observed element.
#[derive(Debug, Clone)]
pub struct EstimatorTable<T> {
    counts: Vec<(T, u64)>,
    total: u64,
}

impl<T: Ord + Hash + Clone> EstimatorTable<T> {
    pub fn from_samples(samples: impl IntoIterator<Item = T>) -> Self {
        let mut map: HashMap<T, u64> = HashMap::new();
        let mut total = 0;
        for s in samples {
            *map.entry(s).or_insert(0) += 1;
            total += 1;
        }
        Self::from_counts(map, total)
    }

    fn from_counts(map: HashMap<T, u64>, total: u64) -> Self {
        let mut counts: Vec<(T, u64)> = map.into_iter().collect();
        counts.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        EstimatorTable { counts, total }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn counts(&self) -> &[(T, u64)] {
        &self.counts
    }

    pub fn count(&self, item: &T) -> u64 {
        self.counts
            .binary_search_by(|(x, _)| x.cmp(item))
            .map(|k| self.counts[k].1)
            .unwrap_or(0)
    }

    /// The distinct estimator values `N(m)/T` as exact fractions.
    pub fn estimators(&self) -> Vec<(u128, u128)> {
        let distinct: BTreeSet<u64> = self.counts.iter().map(|&(_, c)| c).collect();
        distinct
            .into_iter()
            .map(|c| (u128::from(c), u128::from(self.total)))
            .collect()
    }

    /// Elements whose estimate exceeds `ℓ/(8i²)`.
    pub fn above(&self, cutoff: u64, i: u64) -> BTreeSet<T> {
        let scale = 8 * u128::from(i) * u128::from(i);
        self.counts
            .iter()
            .filter(|&&(_, c)| u128::from(c) * scale > u128::from(cutoff) * u128::from(self.total))
            .map(|(x, _)| x.clone())
            .collect()
    }
}

/// The smallest `ℓ ∈ {6i+1, …, 8i}` such that no estimator in `q` lies in
/// `[(ℓ − 1/8)/(8i²), (ℓ + 1/8)/(8i²)]`, or `None` when every candidate is
/// hit. Estimators are fractions `(num, den)` with `den > 0`.
pub fn find_cutoff(q: &[(u128, u128)], i: u64) -> Option<u64> {
    assert!(i >= 1, "scale must be positive");
    let i2x64 = 64 * u128::from(i) * u128::from(i);
    let mut blocked: HashSet<u64> = HashSet::new();
    for &(num, den) in q {
        // the window of ℓ holds x iff |64i²·num − 8ℓ·den| ≤ den, which
        // happens for at most the integer nearest to 8i²·num/den
        let scaled = num.checked_mul(i2x64).expect("estimator overflow");
        let nearest = (scaled + 4 * den) / (8 * den);
        for l in nearest.saturating_sub(1)..=nearest + 1 {
            if scaled.abs_diff(8 * l * den) <= den {
                blocked.insert(l as u64);
            }
        }
    }
    (6 * i + 1..=8 * i).find(|l| !blocked.contains(l))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundOutcome<T> {
    Characteristic(BTreeSet<T>),
    Failed,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeKind {
    Characteristic,
    Failed,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundRecord {
    pub i: u64,
    pub eps_prime: f64,
    /// Sample count demanded by the formula, saturated to `u64`.
    pub t_formula: u64,
    pub t_drawn: u64,
    /// Counts were drawn as one multinomial vector.
    pub multinomial: bool,
    pub outcome: OutcomeKind,
    pub cutoff: Option<u64>,
    pub distinct: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum SamplingError<E> {
    #[error("no characteristic set after {0} doubling rounds")]
    RoundCapExceeded(u32),
    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),
    #[error("sampler failed: {0}")]
    Sampler(E),
}

/// One round at scale `i`: draw, estimate, cut off, threshold.
pub fn extract_round<S: Sampler, R: Rng + ?Sized>(
    sampler: &mut S,
    i: u64,
    eps_prime: EpsPrime,
    config: &SamplerConfig,
    rng: &mut R,
) -> Result<(RoundOutcome<S::Item>, RoundRecord), S::Error> {
    let formula = sample_size(i, eps_prime, config.c1, config.c2);
    let formula = u64::try_from(formula).unwrap_or(u64::MAX);
    let listed = if config.multinomial { sampler.distribution()? } else { None };
    let multinomial = listed.is_some();
    let mut map: HashMap<S::Item, u64> = HashMap::new();
    let drawn = match listed {
        Some(dist) => {
            let probs: Vec<f64> = dist.iter().map(|(_, p)| *p).collect();
            let counts = multinomial_counts(formula, &probs, rng);
            for ((item, _), c) in dist.into_iter().zip(counts) {
                if c > 0 {
                    *map.entry(item).or_insert(0) += c;
                }
            }
            formula
        }
        None => {
            let drawn = config.round_sample_cap.map_or(formula, |cap| formula.min(cap));
            for _ in 0..drawn {
                *map.entry(sampler.draw(rng)?).or_insert(0) += 1;
            }
            drawn
        }
    };
    let table = EstimatorTable::from_counts(map, drawn);
    let cutoff = find_cutoff(&table.estimators(), i);
    let outcome = match cutoff {
        None => RoundOutcome::Failed,
        Some(l) => {
            let set = table.above(l, i);
            if set.is_empty() {
                RoundOutcome::Empty
            } else {
                RoundOutcome::Characteristic(set)
            }
        }
    };
    let record = RoundRecord {
        i,
        eps_prime: eps_prime.value(),
        t_formula: formula,
        t_drawn: drawn,
        multinomial,
        outcome: match outcome {
            RoundOutcome::Characteristic(_) => OutcomeKind::Characteristic,
            RoundOutcome::Failed => OutcomeKind::Failed,
            RoundOutcome::Empty => OutcomeKind::Empty,
        },
        cutoff,
        distinct: table.counts().len(),
    };
    Ok((outcome, record))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extraction<T> {
    pub set: BTreeSet<T>,
    pub rounds: Vec<RoundRecord>,
    pub samples: u64,
}

/// Counts of `total` i.i.d. draws from `probs`, by successive conditional
/// binomials. `probs` need not sum exactly to one.
pub fn multinomial_counts<R: Rng + ?Sized>(total: u64, probs: &[f64], rng: &mut R) -> Vec<u64> {
    let mut left = total;
    let mut mass: f64 = probs.iter().sum();
    let mut out = Vec::with_capacity(probs.len());
    for (k, &p) in probs.iter().enumerate() {
        let c = if k + 1 == probs.len() {
            left
        } else if left == 0 || p <= 0.0 {
            0
        } else {
            let q = (p / mass).clamp(0.0, 1.0);
            Binomial::new(left, q).expect("q in [0, 1]").sample(rng)
        };
        out.push(c);
        left -= c;
        mass -= p;
    }
    out
}

/// Runs rounds at `i = 1, 2, 4, …`, halving ε′ each time, and returns the
/// first characteristic set. Failed and empty rounds move on to the next
/// scale.
pub fn extract_characteristic<S: Sampler, R: Rng + ?Sized>(
    sampler: &mut S,
    config: &SamplerConfig,
    rng: &mut R,
) -> Result<Extraction<S::Item>, SamplingError<S::Error>> {
    config.validate().map_err(SamplingError::InvalidConfig)?;
    let mut eps_prime = EpsPrime::initial(config.epsilon);
    let mut rounds = Vec::new();
    let mut samples = 0u64;
    for r in 0..config.max_doubling_rounds {
        let i = 1u64 << r;
        let (outcome, record) =
            extract_round(sampler, i, eps_prime, config, rng).map_err(SamplingError::Sampler)?;
        samples = samples.saturating_add(record.t_drawn);
        rounds.push(record);
        if let RoundOutcome::Characteristic(set) = outcome {
            return Ok(Extraction { set, rounds, samples });
        }
        eps_prime = eps_prime.halved();
    }
    Err(SamplingError::RoundCapExceeded(config.max_doubling_rounds))
}

/// Samples indices `0..k` from an explicit probability table.
#[derive(Debug, Clone)]
pub struct TableSampler {
    probs: Vec<f64>,
    dist: WeightedIndex<f64>,
}

impl TableSampler {
    pub fn new(probs: Vec<f64>) -> Result<Self, String> {
        let dist = WeightedIndex::new(&probs).map_err(|e| e.to_string())?;
        Ok(TableSampler { probs, dist })
    }

    /// Accepts tables whose sum is within `1e-9` of one, renormalizing.
    pub fn from_distribution(probs: Vec<f64>) -> Result<Self, String> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| p.is_nan() || p <= 0.0 || !p.is_finite()) {
            return Err("probabilities must be positive".into());
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(format!("probabilities sum to {sum}, not 1"));
        }
        Self::new(probs.into_iter().map(|p| p / sum).collect())
    }

    pub fn uniform(k: usize) -> Self {
        Self::new(vec![1.0 / k as f64; k]).expect("k > 0")
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// True when `set` contains every index whose probability equals that
    /// of some member.
    pub fn is_characteristic(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&m| {
            (0..self.probs.len())
                .filter(|&x| self.probs[x] == self.probs[m])
                .all(|x| set.contains(&x))
        })
    }
}

impl Sampler for TableSampler {
    type Item = usize;
    type Error = std::convert::Infallible;

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<usize, Self::Error> {
        Ok(self.dist.sample(rng))
    }

    fn distribution(&mut self) -> Result<Option<Vec<(usize, f64)>>, Self::Error> {
        Ok(Some(self.probs.iter().copied().enumerate().collect()))
    }
}
