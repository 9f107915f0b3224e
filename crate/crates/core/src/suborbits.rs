//! Random automorphisms from an asymmetry oracle, and invariant suborbits
//! with certificates built from them.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::oracles::{brute_aut, OracleCounts, OracleError, OracleStack};
use crate::partition::VertexPartition;
use crate::perm::Permutation;
use crate::rng::split;
use crate::sampling::{extract_characteristic, Listing, RoundRecord, Sampler, SamplerConfig, SamplingError};
use crate::tournament::{IndividualizationTrace, Tournament};

#[derive(Debug, Error)]
pub enum SuborbitError {
    #[error("tournament is asymmetric")]
    NotSymmetric,
    #[error("oracle answers are inconsistent: {0}")]
    OracleInconsistent(String),
    #[error("certificate verification failed after {0} attempts")]
    CertificateInvalid(u32),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("characteristic set extraction: {0}")]
    Sampling(String),
}

impl From<SamplingError<SuborbitError>> for SuborbitError {
    fn from(e: SamplingError<SuborbitError>) -> Self {
        match e {
            SamplingError::Sampler(inner) => inner,
            other => SuborbitError::Sampling(other.to_string()),
        }
    }
}

/// Individualized vertex sets as bitsets.
type VertexSet = Vec<u64>;

fn set_with(set: &VertexSet, v: usize) -> VertexSet {
    let mut s = set.clone();
    s[v / 64] |= 1 << (v % 64);
    s
}

fn is_subset(a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn members(set: &VertexSet) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, &w) in set.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(k * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

#[derive(Debug, Clone)]
struct State {
    asymmetric: bool,
    /// Vertices in non-singleton color classes.
    free: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Terminal {
    targets: Vec<usize>,
    phis: Vec<Option<Permutation>>,
}

/// Draws non-identity automorphisms of a symmetric (colored) tournament.
///
/// Each draw individualizes uniformly random vertices from non-singleton
/// color classes until the colored asymmetry query says yes. With `T` the
/// last symmetric tournament on that path and `v` the vertex that broke the
/// symmetry, it collects the vertices `u` of `v`'s class for which `T_(u)`
/// is asymmetric and isomorphic to `T_(v)`, picks one uniformly and returns
/// the unique isomorphism `T_(v) → T_(u)`. Which vertices were chosen
/// matters only as a set, so oracle answers are cached per set.
pub struct AutomorphismSampler<'a> {
    t: Tournament,
    stack: &'a mut OracleStack,
    states: HashMap<VertexSet, State>,
    terminals: HashMap<(VertexSet, usize), Terminal>,
    /// Sets the oracle reported asymmetric. Supersets are asymmetric too.
    asymmetric_sets: Vec<VertexSet>,
    /// Automorphisms found so far. One fixing a set pointwise shows the
    /// set is symmetric.
    known: Vec<Permutation>,
    draws: u64,
}

impl<'a> AutomorphismSampler<'a> {
    pub fn new(t: &Tournament, stack: &'a mut OracleStack) -> Result<Self, SuborbitError> {
        let mut sampler = AutomorphismSampler {
            t: t.clone(),
            stack,
            states: HashMap::new(),
            terminals: HashMap::new(),
            asymmetric_sets: Vec::new(),
            known: Vec::new(),
            draws: 0,
        };
        let empty = vec![0u64; t.n().div_ceil(64)];
        if sampler.state(&empty)?.asymmetric {
            return Err(SuborbitError::NotSymmetric);
        }
        Ok(sampler)
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn tournament(&self) -> &Tournament {
        &self.t
    }

    fn colored(&self, set: &VertexSet, last: Option<usize>) -> Tournament {
        let mut seq = members(set);
        seq.extend(last);
        IndividualizationTrace::with_sequence(self.t.clone(), &seq).tournament()
    }

    /// A known automorphism fixing `set` pointwise and mapping `v` to `u`.
    fn known_map(&self, set: &VertexSet, v: usize, u: usize) -> Option<&Permutation> {
        let fixed = members(set);
        self.known
            .iter()
            .find(|g| g.apply(v) == u && fixed.iter().all(|&x| g.apply(x) == x))
    }

    fn state(&mut self, set: &VertexSet) -> Result<&State, SuborbitError> {
        if !self.states.contains_key(set) {
            let t = self.colored(set, None);
            let fixed = members(set);
            let asymmetric = if self.asymmetric_sets.iter().any(|a| is_subset(a, set)) {
                true
            } else if self.known.iter().any(|g| fixed.iter().all(|&x| g.apply(x) == x)) {
                false
            } else {
                let answer = self.stack.o2(&t)?;
                if answer {
                    self.asymmetric_sets.push(set.clone());
                }
                answer
            };
            let classes = t.color_classes();
            let free = (0..t.n())
                .filter(|&v| classes.part_containing(v).len() > 1)
                .collect();
            self.states.insert(set.clone(), State { asymmetric, free });
        }
        Ok(&self.states[set])
    }

    fn terminal(&mut self, set: &VertexSet, v: usize) -> Result<&mut Terminal, SuborbitError> {
        let key = (set.clone(), v);
        if !self.terminals.contains_key(&key) {
            let base = self.colored(set, None);
            let color = base.color(v);
            let same: Vec<usize> = (0..base.n()).filter(|&x| x != v && base.color(x) == color).collect();
            let mut asym = Vec::new();
            for x in same {
                if self.state(&set_with(set, x))?.asymmetric {
                    asym.push(x);
                }
            }
            if asym.is_empty() {
                return Err(SuborbitError::OracleInconsistent(
                    "no other vertex of the class makes the tournament asymmetric".into(),
                ));
            }
            let next = self.colored(set, Some(v));
            let mut targets = Vec::new();
            for x in asym {
                if self.known_map(set, v, x).is_some() || self.stack.o3_decide(&next, &self.colored(set, Some(x)))? {
                    targets.push(x);
                }
            }
            if targets.is_empty() {
                return Err(SuborbitError::OracleInconsistent(
                    "no vertex of the class is equivalent to the individualized one".into(),
                ));
            }
            let phis = vec![None; targets.len()];
            self.terminals.insert(key.clone(), Terminal { targets, phis });
        }
        Ok(self.terminals.get_mut(&key).unwrap())
    }

    pub fn draw_automorphism<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Permutation, SuborbitError> {
        self.draws += 1;
        let mut set = vec![0u64; self.t.n().div_ceil(64)];
        let v = loop {
            let free = &self.state(&set)?.free;
            if free.is_empty() {
                return Err(SuborbitError::OracleInconsistent(
                    "discrete coloring reported symmetric".into(),
                ));
            }
            let v = free[rng.random_range(0..free.len())];
            let next = set_with(&set, v);
            if self.state(&next)?.asymmetric {
                break v;
            }
            set = next;
        };
        let k = {
            let terminal = self.terminal(&set, v)?;
            rng.random_range(0..terminal.targets.len())
        };
        self.phi(&set, v, k)
    }

    /// The isomorphism `T_(set, v) → T_(set, u)` for the `k`-th target `u`.
    fn phi(&mut self, set: &VertexSet, v: usize, k: usize) -> Result<Permutation, SuborbitError> {
        let key = (set.clone(), v);
        if let Some(phi) = &self.terminal(set, v)?.phis[k] {
            return Ok(phi.clone());
        }
        let u = self.terminals[&key].targets[k];
        // the map is unique, so a known automorphism with the right action is it
        let phi = match self.known_map(set, v, u) {
            Some(g) => g.clone(),
            None => {
                let from = self.colored(set, Some(v));
                let to = self.colored(set, Some(u));
                let phi = self
                    .stack
                    .o3_search(&from, &to)?
                    .ok_or_else(|| SuborbitError::OracleInconsistent("isomorphism search found nothing".into()))?;
                if phi.is_identity() || !self.t.is_automorphism(&phi).unwrap_or(false) {
                    return Err(SuborbitError::OracleInconsistent("search returned a non-automorphism".into()));
                }
                self.known.push(phi.clone());
                phi
            }
        };
        self.terminals.get_mut(&key).unwrap().phis[k] = Some(phi.clone());
        Ok(phi)
    }

    /// The exact law of [`draw_automorphism`](Self::draw_automorphism),
    /// found by following every branch of a draw, sorted by permutation.
    /// Branches reaching the same individualized set are merged. Gives up
    /// with `None` after visiting `limit` sets.
    pub fn distribution(&mut self, limit: usize) -> Result<Option<Vec<(Permutation, f64)>>, SuborbitError> {
        let mut out: BTreeMap<Permutation, f64> = BTreeMap::new();
        let mut level: BTreeMap<VertexSet, f64> = BTreeMap::new();
        level.insert(vec![0u64; self.t.n().div_ceil(64)], 1.0);
        let mut visited = 0;
        while !level.is_empty() {
            let mut next_level: BTreeMap<VertexSet, f64> = BTreeMap::new();
            for (set, mass) in level {
                visited += 1;
                if visited > limit {
                    return Ok(None);
                }
                let free = self.state(&set)?.free.clone();
                if free.is_empty() {
                    return Err(SuborbitError::OracleInconsistent(
                        "discrete coloring reported symmetric".into(),
                    ));
                }
                let share = mass / free.len() as f64;
                for v in free {
                    let next = set_with(&set, v);
                    if !self.state(&next)?.asymmetric {
                        *next_level.entry(next).or_insert(0.0) += share;
                        continue;
                    }
                    let targets = self.terminal(&set, v)?.targets.len();
                    for k in 0..targets {
                        let phi = self.phi(&set, v, k)?;
                        *out.entry(phi).or_insert(0.0) += share / targets as f64;
                    }
                }
            }
            level = next_level;
        }
        Ok(Some(out.into_iter().collect()))
    }
}

impl Sampler for AutomorphismSampler<'_> {
    type Item = Permutation;
    type Error = SuborbitError;

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Permutation, SuborbitError> {
        self.draw_automorphism(rng)
    }
}

/// Ordered pairs `(v, φ(v))` with `φ` a sampled automorphism and `v` a
/// uniform point of its support. The first automorphism seen for each pair
/// is kept as its certificate.
pub struct PairSampler<'a> {
    inner: AutomorphismSampler<'a>,
    witnesses: BTreeMap<(usize, usize), Permutation>,
    listed: Option<Option<Listing<(usize, usize)>>>,
}

/// Individualized sets a pair sampler may visit while listing its
/// distribution.
const LISTING_LIMIT: usize = 1 << 14;

impl<'a> PairSampler<'a> {
    pub fn new(t: &Tournament, stack: &'a mut OracleStack) -> Result<Self, SuborbitError> {
        Ok(PairSampler {
            inner: AutomorphismSampler::new(t, stack)?,
            witnesses: BTreeMap::new(),
            listed: None,
        })
    }

    pub fn witness(&self, pair: (usize, usize)) -> Option<&Permutation> {
        self.witnesses.get(&pair)
    }

    pub fn draws(&self) -> u64 {
        self.inner.draws()
    }
}

impl Sampler for PairSampler<'_> {
    type Item = (usize, usize);
    type Error = SuborbitError;

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(usize, usize), SuborbitError> {
        let phi = self.inner.draw_automorphism(rng)?;
        let support = phi.support();
        let v = support[rng.random_range(0..support.len())];
        let pair = (v, phi.apply(v));
        self.witnesses.entry(pair).or_insert(phi);
        Ok(pair)
    }

    /// Listing the pairs also records a certificate for each, the first
    /// automorphism in sorted order that produces it.
    fn distribution(&mut self) -> Result<Option<Listing<(usize, usize)>>, SuborbitError> {
        if self.listed.is_none() {
            let listed = self.inner.distribution(LISTING_LIMIT)?.map(|phis| {
                let mut pairs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
                for (phi, q) in phis {
                    let support = phi.support();
                    let share = q / support.len() as f64;
                    for &v in &support {
                        let pair = (v, phi.apply(v));
                        *pairs.entry(pair).or_insert(0.0) += share;
                        self.witnesses.entry(pair).or_insert_with(|| phi.clone());
                    }
                }
                pairs.into_iter().collect()
            });
            self.listed = Some(listed);
        }
        Ok(self.listed.clone().unwrap())
    }
}

/// How a vertex is reached from its parent in its class's spanning tree:
/// applying `certificates[cert]` (inverted if flagged) maps `parent` to the
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Link {
    pub parent: usize,
    pub cert: usize,
    pub inverted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuborbitResult {
    pub pi: VertexPartition,
    pub certificates: Vec<Permutation>,
    /// `links[v]` is `None` for the smallest vertex of each class.
    pub links: Vec<Option<Link>>,
    pub epsilon: Option<f64>,
    pub samples: u64,
    pub rounds: Vec<RoundRecord>,
    pub attempts: u32,
}

impl SuborbitResult {
    /// The convention for asymmetric tournaments.
    pub fn discrete(n: usize) -> Self {
        SuborbitResult {
            pi: VertexPartition::discrete(n),
            certificates: vec![Permutation::identity(n)],
            links: vec![None; n],
            epsilon: None,
            samples: 0,
            rounds: Vec::new(),
            attempts: 0,
        }
    }

    fn step(&self, link: &Link) -> Permutation {
        let c = &self.certificates[link.cert];
        if link.inverted {
            c.inverse()
        } else {
            c.clone()
        }
    }

    /// Composite certificate mapping the root of `v`'s class to `v`.
    fn root_to(&self, v: usize) -> Permutation {
        let mut chain = Vec::new();
        let mut x = v;
        while let Some(link) = &self.links[x] {
            chain.push(*link);
            x = link.parent;
        }
        let mut g = Permutation::identity(self.pi.n());
        for link in chain.iter().rev() {
            g = g.then(&self.step(link));
        }
        g
    }

    /// A product of certificates mapping `v` to `w`, for `v`, `w` in one
    /// class.
    pub fn certificate_for(&self, v: usize, w: usize) -> Option<Permutation> {
        if self.pi.part_of(v) != self.pi.part_of(w) {
            return None;
        }
        Some(self.root_to(v).inverse().then(&self.root_to(w)))
    }

    /// Every certificate is an automorphism of `t` and every class is
    /// connected by them.
    pub fn verify(&self, t: &Tournament) -> bool {
        let n = t.n();
        self.pi.n() == n
            && self.certificates.iter().all(|c| t.is_automorphism(c).unwrap_or(false))
            && (0..n).all(|v| {
                let root = self.pi.part_containing(v)[0];
                (v == root) == self.links[v].is_none() && self.root_to(v).apply(root) == v
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EpsilonPolicy {
    /// The same ε for every call.
    Fixed { epsilon: f64 },
    /// `ε = n^(−c)` for a tournament on `n` vertices.
    PowerOfSize { c: u32 },
    /// `ε = budget / n^exponent`, so that a recursion with polynomially many
    /// calls stays within `budget` overall.
    RunBudget { budget: f64, exponent: u32 },
}

impl EpsilonPolicy {
    pub fn epsilon(&self, n: usize) -> f64 {
        let n = n.max(2) as f64;
        let eps = match *self {
            EpsilonPolicy::Fixed { epsilon } => epsilon,
            EpsilonPolicy::PowerOfSize { c } => n.powi(-(c as i32)),
            EpsilonPolicy::RunBudget { budget, exponent } => budget / n.powi(exponent as i32),
        };
        eps.min(0.5)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuborbitConfig {
    pub epsilon: EpsilonPolicy,
    pub sampler: SamplerConfig,
    /// Extra attempts after a certificate check fails.
    pub retries: u32,
}

impl Default for SuborbitConfig {
    fn default() -> Self {
        SuborbitConfig {
            epsilon: EpsilonPolicy::PowerOfSize { c: 1 },
            sampler: SamplerConfig::desk(0.5),
            retries: 3,
        }
    }
}

/// Invariant suborbits of `t` with certificates.
///
/// Asymmetric input gives the discrete partition and `{id}`. Otherwise a
/// characteristic set of sampled pairs is closed into an equivalence
/// relation whose classes form the partition; each class gets a spanning
/// tree of sampled automorphisms (or their inverses).
pub fn invariant_suborbits<R: Rng + ?Sized>(
    t: &Tournament,
    stack: &mut OracleStack,
    config: &SuborbitConfig,
    rng: &mut R,
) -> Result<SuborbitResult, SuborbitError> {
    let n = t.n();
    if stack.o2(t)? {
        return Ok(SuborbitResult::discrete(n));
    }
    let epsilon = config.epsilon.epsilon(n);
    let sampler_config = config.sampler.with_epsilon(epsilon);
    let mut samples = 0;
    let mut rounds = Vec::new();
    for attempt in 1..=config.retries + 1 {
        let mut attempt_rng = split(rng);
        let mut pairs = PairSampler::new(t, stack)?;
        let extraction = extract_characteristic(&mut pairs, &sampler_config, &mut attempt_rng)?;
        samples += extraction.samples;
        rounds.extend(extraction.rounds);
        let mut result = assemble(n, &extraction.set, &pairs);
        result.epsilon = Some(epsilon);
        result.samples = samples;
        result.rounds = rounds.clone();
        result.attempts = attempt;
        if result.verify(t) {
            return Ok(result);
        }
    }
    Err(SuborbitError::CertificateInvalid(config.retries + 1))
}

fn assemble(n: usize, chosen: &std::collections::BTreeSet<(usize, usize)>, pairs: &PairSampler<'_>) -> SuborbitResult {
    let mut certificates: Vec<Permutation> = Vec::new();
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut adjacent: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for &(v, w) in chosen {
        let phi = pairs.witness((v, w)).expect("every drawn pair has a witness");
        let k = *index.entry(phi.clone()).or_insert_with(|| {
            certificates.push(phi.clone());
            certificates.len() - 1
        });
        adjacent[v].push((w, k, false));
        adjacent[w].push((v, k, true));
    }
    let mut links: Vec<Option<Link>> = vec![None; n];
    let mut label = vec![usize::MAX; n];
    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        label[root] = root;
        let mut queue = vec![root];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &(y, cert, inverted) in &adjacent[x] {
                if label[y] == usize::MAX {
                    label[y] = root;
                    links[y] = Some(Link { parent: x, cert, inverted });
                    queue.push(y);
                }
            }
        }
    }
    if certificates.is_empty() {
        certificates.push(Permutation::identity(n));
    }
    SuborbitResult {
        pi: VertexPartition::from_labels(&label),
        certificates,
        links,
        epsilon: None,
        samples: 0,
        rounds: Vec::new(),
        attempts: 0,
    }
}

/// A source of invariant suborbits, as consumed by the automorphism-group
/// recursion.
pub trait SuborbitOracle {
    fn suborbits<R: Rng + ?Sized>(&mut self, t: &Tournament, rng: &mut R) -> Result<SuborbitResult, SuborbitError>;

    /// Oracle-call counters accumulated so far, if the oracle has any.
    fn counts(&self) -> OracleCounts {
        OracleCounts::default()
    }

    fn samples(&self) -> u64 {
        0
    }
}

/// Suborbits from the asymmetry-oracle reduction.
#[derive(Debug)]
pub struct ReductionSuborbits {
    pub stack: OracleStack,
    pub config: SuborbitConfig,
    samples: u64,
}

impl ReductionSuborbits {
    pub fn new(stack: OracleStack, config: SuborbitConfig) -> Self {
        ReductionSuborbits {
            stack,
            config,
            samples: 0,
        }
    }
}

impl SuborbitOracle for ReductionSuborbits {
    fn suborbits<R: Rng + ?Sized>(&mut self, t: &Tournament, rng: &mut R) -> Result<SuborbitResult, SuborbitError> {
        let result = invariant_suborbits(t, &mut self.stack, &self.config, rng)?;
        self.samples += result.samples;
        Ok(result)
    }

    fn counts(&self) -> OracleCounts {
        self.stack.counts()
    }

    fn samples(&self) -> u64 {
        self.samples
    }
}

/// The exact orbit partition from brute-force `Aut`, with Schreier-tree
/// certificates. Error-free; used as a reference.
#[derive(Debug, Default, Clone, Copy)]
pub struct ExactSuborbits;

impl SuborbitOracle for ExactSuborbits {
    fn suborbits<R: Rng + ?Sized>(&mut self, t: &Tournament, _rng: &mut R) -> Result<SuborbitResult, SuborbitError> {
        let group = brute_aut(t);
        let n = t.n();
        if group.is_trivial() {
            return Ok(SuborbitResult::discrete(n));
        }
        let pi = group.orbits();
        let certificates = group.generators().to_vec();
        let mut links = vec![None; n];
        for part in pi.parts() {
            let mut seen = vec![false; n];
            seen[part[0]] = true;
            let mut queue = vec![part[0]];
            let mut k = 0;
            while k < queue.len() {
                let x = queue[k];
                k += 1;
                for (c, g) in certificates.iter().enumerate() {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        links[y] = Some(Link { parent: x, cert: c, inverted: false });
                        queue.push(y);
                    }
                }
            }
        }
        Ok(SuborbitResult {
            pi,
            certificates,
            links,
            epsilon: None,
            samples: 0,
            rounds: Vec::new(),
            attempts: 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{c3, lex_product, transitive};
    use crate::rng::seeded;

    #[test]
    fn c3_draws_both_rotations() {
        let mut stack = OracleStack::brute_force();
        let mut s = AutomorphismSampler::new(&c3(), &mut stack).unwrap();
        let mut rng = seeded(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..50 {
            let phi = s.draw_automorphism(&mut rng).unwrap();
            assert!(c3().is_automorphism(&phi).unwrap() && !phi.is_identity());
            seen.insert(phi);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let mut stack = OracleStack::brute_force();
        assert!(matches!(
            AutomorphismSampler::new(&transitive(4), &mut stack),
            Err(SuborbitError::NotSymmetric)
        ));
    }

    #[test]
    fn lex_product_draws_verify() {
        let t = lex_product(&c3(), &c3());
        let mut stack = OracleStack::brute_force();
        let mut s = PairSampler::new(&t, &mut stack).unwrap();
        let mut rng = seeded(1);
        for _ in 0..200 {
            let (v, w) = s.draw(&mut rng).unwrap();
            assert_ne!(v, w);
            assert!(t.is_automorphism(s.witness((v, w)).unwrap()).unwrap());
        }
    }

    #[test]
    fn suborbit_conventions() {
        let mut stack = OracleStack::brute_force();
        let cfg = SuborbitConfig::default();
        let r = invariant_suborbits(&transitive(5), &mut stack, &cfg, &mut seeded(0)).unwrap();
        assert!(r.pi.is_discrete());
        assert_eq!(r.certificates, vec![Permutation::identity(5)]);
        let r = invariant_suborbits(&c3(), &mut stack, &cfg, &mut seeded(0)).unwrap();
        assert!(r.pi.is_trivial());
        assert!(r.verify(&c3()));
        assert_eq!(r.certificate_for(1, 2).unwrap().apply(1), 2);
    }

    #[test]
    fn exact_suborbits_are_orbits() {
        let t = lex_product(&c3(), &transitive(3));
        let r = ExactSuborbits.suborbits(&t, &mut seeded(0)).unwrap();
        assert!(r.verify(&t));
        assert_eq!(r.pi.sizes(), vec![3, 3, 3]);
    }

    #[test]
    fn epsilon_policies() {
        assert_eq!(EpsilonPolicy::PowerOfSize { c: 1 }.epsilon(10), 0.1);
        assert_eq!(EpsilonPolicy::Fixed { epsilon: 0.05 }.epsilon(10), 0.05);
        assert!((EpsilonPolicy::RunBudget { budget: 0.1, exponent: 3 }.epsilon(10) - 1e-4).abs() < 1e-15);
    }

    #[test]
    fn listed_law_of_c3() {
        let mut stack = OracleStack::brute_force();
        let mut s = AutomorphismSampler::new(&c3(), &mut stack).unwrap();
        let law = s.distribution(100).unwrap().unwrap();
        assert_eq!(law.len(), 2);
        assert!(law.iter().all(|(phi, q)| (q - 0.5).abs() < 1e-12 && c3().is_automorphism(phi).unwrap()));
    }

    #[test]
    fn fixed_points_cost_no_extra_queries() {
        // a rotated triangle above ten fixed vertices
        let t = Tournament::from_fn(13, |a, b| match (a < 3, b < 3) {
            (true, true) => c3().arc(a, b),
            (true, false) => true,
            (false, true) => false,
            _ => a < b,
        });
        let mut stack = OracleStack::brute_force();
        let mut s = AutomorphismSampler::new(&t, &mut stack).unwrap();
        let law = s.distribution(1 << 12).unwrap().unwrap();
        assert_eq!(law.len(), 2);
        assert!(law.iter().all(|(_, q)| (q - 0.5).abs() < 1e-9));
        assert!(stack.counts().o1 < 100, "{:?}", stack.counts());
    }

    #[test]
    fn listed_law_matches_draws() {
        let t = crate::generators::paley(7).unwrap();
        let mut stack = OracleStack::brute_force();
        let mut s = AutomorphismSampler::new(&t, &mut stack).unwrap();
        let law = s.distribution(1 << 10).unwrap().unwrap();
        assert!((law.iter().map(|(_, q)| q).sum::<f64>() - 1.0).abs() < 1e-9);
        let mut seen: HashMap<Permutation, u64> = HashMap::new();
        let mut rng = seeded(2);
        let draws = 20_000;
        for _ in 0..draws {
            *seen.entry(s.draw_automorphism(&mut rng).unwrap()).or_insert(0) += 1;
        }
        assert!(seen.keys().all(|phi| law.iter().any(|(x, _)| x == phi)));
        for (phi, q) in &law {
            let f = seen.get(phi).copied().unwrap_or(0) as f64 / draws as f64;
            assert!((f - q).abs() < 5.0 * (q / draws as f64).sqrt() + 1e-3, "{f} vs {q}");
        }
        assert!(s.distribution(3).unwrap().is_none());
    }

    #[test]
    fn listed_pairs_carry_certificates() {
        let t = lex_product(&c3(), &c3());
        let mut stack = OracleStack::brute_force();
        let mut s = PairSampler::new(&t, &mut stack).unwrap();
        let pairs = s.distribution().unwrap().unwrap();
        for ((v, w), q) in pairs {
            assert!(q > 0.0);
            let phi = s.witness((v, w)).unwrap();
            assert_eq!(phi.apply(v), w);
            assert!(t.is_automorphism(phi).unwrap());
        }
    }
}
