use serde::Serialize;

use super::brute::brute_is_asymmetric;
use super::refine::{first_non_singleton, individualized, is_discrete, joint_ranks, refine_joint};
use super::OracleError;
use crate::perm::{PermGroup, Permutation};
use crate::tournament::{Tournament, TournamentError};

/// Answers "is `Aut(t)` trivial?" for uncolored tournaments.
pub trait AsymmetryOracle {
    fn is_asymmetric(&mut self, t: &Tournament) -> Result<bool, OracleError>;

    /// Queries answered so far.
    fn calls(&self) -> u64;
}

/// The in-process reference oracle.
#[derive(Debug, Default, Clone)]
pub struct BruteForceOracle {
    calls: u64,
}

impl BruteForceOracle {
    pub fn new() -> Self {
        Self::default()
    }
}

impl AsymmetryOracle for BruteForceOracle {
    fn is_asymmetric(&mut self, t: &Tournament) -> Result<bool, OracleError> {
        self.calls += 1;
        if t.colors().iter().any(|&c| c != 0) {
            return Err(OracleError::ColoredInput);
        }
        Ok(brute_is_asymmetric(t))
    }

    fn calls(&self) -> u64 {
        self.calls
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OracleCounts {
    pub o1: u64,
    pub o2: u64,
    pub o3: u64,
}

/// An uncolored asymmetry oracle and the colored adapters derived from it.
/// Every adapter answer is computed from `o1` queries plus local work.
pub struct OracleStack {
    o1: Box<dyn AsymmetryOracle + Send>,
    o2_calls: u64,
    o3_calls: u64,
}

impl std::fmt::Debug for OracleStack {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OracleStack").field("counts", &self.counts()).finish()
    }
}

impl Default for OracleStack {
    fn default() -> Self {
        Self::brute_force()
    }
}

impl OracleStack {
    pub fn new(o1: Box<dyn AsymmetryOracle + Send>) -> Self {
        OracleStack {
            o1,
            o2_calls: 0,
            o3_calls: 0,
        }
    }

    pub fn brute_force() -> Self {
        Self::new(Box::new(BruteForceOracle::new()))
    }

    pub fn counts(&self) -> OracleCounts {
        OracleCounts {
            o1: self.o1.calls(),
            o2: self.o2_calls,
            o3: self.o3_calls,
        }
    }

    pub fn o1(&mut self, t: &Tournament) -> Result<bool, OracleError> {
        self.o1.is_asymmetric(t)
    }

    /// Colored asymmetry through the color-encoding gadget.
    pub fn o2(&mut self, t: &Tournament) -> Result<bool, OracleError> {
        self.o2_calls += 1;
        self.o1.is_asymmetric(&t.encode_colors_padded())
    }

    /// Decides isomorphism of two colored asymmetric tournaments: the
    /// encoded triangle gadget has a non-trivial automorphism iff they are
    /// isomorphic. Unreliable when an input is not asymmetric.
    pub fn o3_decide(&mut self, t1: &Tournament, t2: &Tournament) -> Result<bool, OracleError> {
        self.o3_calls += 1;
        self.decide(t1, t2)
    }

    fn decide(&mut self, t1: &Tournament, t2: &Tournament) -> Result<bool, OracleError> {
        if t1.n() != t2.n() || t1.color_multiset() != t2.color_multiset() {
            return Ok(false);
        }
        if t1.n() == 0 {
            return Ok(true);
        }
        let tri = Tournament::tri(t1, t2)?;
        Ok(!self.o1.is_asymmetric(&tri.encode_colors_padded())?)
    }

    /// Finds the isomorphism between two colored asymmetric tournaments.
    ///
    /// Both sides are refined jointly, then the lowest vertex of `t1` in a
    /// non-singleton class is individualized against each same-label vertex
    /// of `t2` in index order until the decision query accepts. At the
    /// discrete labelling the map is read off the labels and verified.
    /// Issues at most `n² + 1` queries to `o1`.
    pub fn o3_search(
        &mut self,
        t1: &Tournament,
        t2: &Tournament,
    ) -> Result<Option<Permutation>, OracleError> {
        self.o3_calls += 1;
        if !self.decide(t1, t2)? {
            return Ok(None);
        }
        let mut ranks = joint_ranks(&[t1.colors(), t2.colors()]);
        let mut l2 = ranks.pop().unwrap();
        let mut l1 = ranks.pop().unwrap();
        loop {
            let mut refined = refine_joint(&[(t1, l1), (t2, l2)]).ok_or(OracleError::WitnessCheckFailed)?;
            l2 = refined.pop().unwrap();
            l1 = refined.pop().unwrap();
            let Some(v) = first_non_singleton(&l1) else {
                break;
            };
            let a = individualized(&l1, v);
            let left = relabelled(t1, &a);
            let mut accepted = None;
            for w in (0..t2.n()).filter(|&w| l2[w] == l1[v]) {
                let b = individualized(&l2, w);
                if self.decide(&left, &relabelled(t2, &b))? {
                    accepted = Some(b);
                    break;
                }
            }
            l2 = accepted.ok_or(OracleError::WitnessCheckFailed)?;
            l1 = a;
        }
        debug_assert!(is_discrete(&l1));
        let mut at = vec![0usize; t2.n()];
        for (w, &l) in l2.iter().enumerate() {
            at[l as usize] = w;
        }
        let map = Permutation::from_images(l1.iter().map(|&l| at[l as usize]).collect())
            .map_err(|_| OracleError::WitnessCheckFailed)?;
        if !t1.is_isomorphism(t2, &map) {
            return Err(OracleError::WitnessCheckFailed);
        }
        Ok(Some(map))
    }
}

fn relabelled(t: &Tournament, labels: &[u32]) -> Tournament {
    t.clone()
        .with_colors(labels.iter().map(|&l| u64::from(l)).collect())
        .expect("one label per vertex")
}

/// Isomorphism from an automorphism-group solver: computes `Aut` of the
/// triangle gadget and looks for an element carrying the `t1` block onto
/// the `t2` block. Any map found is verified before it is returned.
pub fn aut_to_iso<E, F>(t1: &Tournament, t2: &Tournament, solver: F) -> Result<Option<Permutation>, E>
where
    F: FnOnce(&Tournament) -> Result<PermGroup, E>,
    E: From<TournamentError>,
{
    let n = t1.n();
    let tri = Tournament::tri(t1, t2)?;
    if n == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    let group = solver(&tri)?;
    let reach = group.transversal_from(0);
    let Some(g) = (2 * n..3 * n).find_map(|y| reach[y].clone()) else {
        return Ok(None);
    };
    let images: Vec<usize> = (0..n).map(|x| g.apply(x)).collect();
    if images.iter().any(|&y| y < 2 * n) {
        return Ok(None);
    }
    let map = Permutation::from_images(images.iter().map(|&y| y - 2 * n).collect()).ok();
    Ok(map.filter(|m| t1.is_isomorphism(t2, m)))
}
