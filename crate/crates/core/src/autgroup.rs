//! Automorphism groups from invariant suborbits, and isomorphism on top.
//!
//! [`aut_group`] recurses on colored tournaments:
//!
//! * not monochromatic: solve each color class, lift, intersect with `Aut`;
//! * suborbits discrete: trivial group;
//! * one suborbit: star-color a vertex, solve, add the certificates;
//! * suborbits of different sizes: color by class size and solve;
//! * otherwise compare the classes pairwise through the triangle gadget.
//!   Classes of different isomorphism type are colored apart; if all are
//!   isomorphic, the group of the quotient is lifted along the class
//!   isomorphisms, joined with the class groups and intersected with `Aut`.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::oracles::{aut_to_iso, OracleCounts};
use crate::partition::VertexPartition;
use crate::perm::{intersect_with_aut, PermError, PermGroup, Permutation};
use crate::rng::split;
use crate::suborbits::{SuborbitError, SuborbitOracle};
use crate::tournament::{Tournament, TournamentError};

#[derive(Debug, Error)]
pub enum AutGroupError {
    #[error(transparent)]
    Suborbit(#[from] SuborbitError),
    #[error("suborbit oracle is inconsistent: {0}")]
    OracleInconsistent(String),
    #[error("group in case {0:?} is not solvable")]
    NotSolvable(Case),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    #[serde(rename = "empty")]
    Empty,
    #[serde(rename = "0")]
    Colored,
    #[serde(rename = "asymmetric")]
    Asymmetric,
    #[serde(rename = "1")]
    SingleClass,
    #[serde(rename = "2")]
    UnequalClasses,
    #[serde(rename = "3a")]
    DistinctTypes,
    #[serde(rename = "3b")]
    Quotient,
    #[serde(rename = "memo")]
    Memoized,
}

/// One node of the recursion tree.
#[derive(Debug, Clone, Serialize)]
pub struct CaseTrace {
    pub case: Case,
    pub n: usize,
    pub color_class_sizes: Vec<usize>,
    pub pi_sizes: Vec<usize>,
    /// `o1` queries issued by this node and its subtree.
    pub o1_calls: u64,
    /// Group order, saturated to `u64`.
    pub order: u64,
    pub children: Vec<CaseTrace>,
}

impl CaseTrace {
    pub fn nodes(&self) -> usize {
        1 + self.children.iter().map(CaseTrace::nodes).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(CaseTrace::depth).max().unwrap_or(0)
    }

    /// Visits every node, parents before children.
    pub fn walk(&self, f: &mut impl FnMut(&CaseTrace)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AutGroupOptions {
    /// Reuse results for tournaments (colors included) seen before.
    pub memoize: bool,
    /// Fail if a group handed to the intersection is not solvable.
    pub check_solvable: bool,
}

impl Default for AutGroupOptions {
    fn default() -> Self {
        AutGroupOptions {
            memoize: false,
            check_solvable: cfg!(debug_assertions),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AutGroupOutput {
    pub group: PermGroup,
    pub trace: CaseTrace,
}

pub fn aut_group<O: SuborbitOracle, R: Rng + ?Sized>(
    t: &Tournament,
    oracle: &mut O,
    rng: &mut R,
) -> Result<AutGroupOutput, AutGroupError> {
    aut_group_with(t, oracle, AutGroupOptions::default(), rng)
}

pub fn aut_group_with<O: SuborbitOracle, R: Rng + ?Sized>(
    t: &Tournament,
    oracle: &mut O,
    options: AutGroupOptions,
    rng: &mut R,
) -> Result<AutGroupOutput, AutGroupError> {
    let mut solver = Solver {
        oracle,
        options,
        memo: HashMap::new(),
    };
    let (group, trace) = solver.solve(t, rng)?;
    Ok(AutGroupOutput { group, trace })
}

struct Solver<'o, O> {
    oracle: &'o mut O,
    options: AutGroupOptions,
    memo: HashMap<Tournament, PermGroup>,
}

fn lifted(group: &PermGroup, positions: &[usize], degree: usize) -> Vec<Permutation> {
    group.generators().iter().map(|g| g.lift(positions, degree)).collect()
}

fn recolored(t: &Tournament, colors: Vec<u64>) -> Tournament {
    t.clone().with_colors(colors).expect("one color per vertex")
}

impl<O: SuborbitOracle> Solver<'_, O> {
    fn solve<R: Rng + ?Sized>(&mut self, t: &Tournament, rng: &mut R) -> Result<(PermGroup, CaseTrace), AutGroupError> {
        let before = self.oracle.counts();
        let n = t.n();
        let mut node = CaseTrace {
            case: Case::Empty,
            n,
            color_class_sizes: t.color_classes().sizes(),
            pi_sizes: Vec::new(),
            o1_calls: 0,
            order: 1,
            children: Vec::new(),
        };
        let group = if n == 0 {
            PermGroup::trivial(0)
        } else if let Some(g) = self.memo.get(t).filter(|_| self.options.memoize) {
            node.case = Case::Memoized;
            g.clone()
        } else {
            let g = self.dispatch(t, &mut node, rng)?;
            if self.options.memoize {
                self.memo.insert(t.clone(), g.clone());
            }
            g
        };
        let after: OracleCounts = self.oracle.counts();
        node.o1_calls = after.o1 - before.o1;
        node.order = u64::try_from(group.order()).unwrap_or(u64::MAX);
        Ok((group, node))
    }

    fn child<R: Rng + ?Sized>(&mut self, t: &Tournament, node: &mut CaseTrace, rng: &mut R) -> Result<PermGroup, AutGroupError> {
        let (g, trace) = self.solve(t, &mut split(rng))?;
        node.children.push(trace);
        Ok(g)
    }

    fn intersect(&self, gens: Vec<Permutation>, t: &Tournament, case: Case) -> Result<PermGroup, AutGroupError> {
        let gamma = PermGroup::new(t.n(), gens)?;
        if self.options.check_solvable && !gamma.is_solvable() {
            return Err(AutGroupError::NotSolvable(case));
        }
        Ok(intersect_with_aut(&gamma, t)?)
    }

    fn dispatch<R: Rng + ?Sized>(&mut self, t: &Tournament, node: &mut CaseTrace, rng: &mut R) -> Result<PermGroup, AutGroupError> {
        let n = t.n();
        if !t.is_monochromatic() {
            node.case = Case::Colored;
            let classes = t.color_classes();
            let mut gens = Vec::new();
            for part in classes.parts() {
                let sub = self.child(&t.induced(part)?, node, rng)?;
                gens.extend(lifted(&sub, part, n));
            }
            return self.intersect(gens, t, Case::Colored);
        }

        let result = self.oracle.suborbits(t, rng)?;
        let pi = result.pi;
        node.pi_sizes = pi.sizes();
        if pi.is_discrete() {
            node.case = Case::Asymmetric;
            return Ok(PermGroup::trivial(n));
        }
        if pi.is_trivial() {
            node.case = Case::SingleClass;
            let starred = self.child(&t.star_coloring(0)?, node, rng)?;
            let mut gens = result.certificates;
            gens.extend(starred.generators().iter().cloned());
            return Ok(PermGroup::new(n, gens)?);
        }
        let sizes = pi.sizes();
        if sizes.iter().any(|&s| s != sizes[0]) {
            node.case = Case::UnequalClasses;
            let colors = (0..n).map(|v| pi.part_containing(v).len() as u64).collect();
            return self.child(&recolored(t, colors), node, rng);
        }
        self.equal_classes(t, &pi, node, rng)
    }

    fn equal_classes<R: Rng + ?Sized>(
        &mut self,
        t: &Tournament,
        pi: &VertexPartition,
        node: &mut CaseTrace,
        rng: &mut R,
    ) -> Result<PermGroup, AutGroupError> {
        let n = t.n();
        let parts = pi.parts();
        let m = parts.len();
        let induced: Vec<Tournament> = parts.iter().map(|p| t.induced(p)).collect::<Result<_, _>>()?;
        let starred: Vec<Tournament> = induced
            .iter()
            .map(|c| c.star_coloring(0))
            .collect::<Result<_, _>>()?;

        // local maps between classes, with iso_type as a union-find forest
        let mut maps: HashMap<(usize, usize), Permutation> = HashMap::new();
        let mut iso_type: Vec<usize> = (0..m).collect();
        for a in 0..m {
            for b in a + 1..m {
                let mut children = Vec::new();
                let found = aut_to_iso(&starred[a], &starred[b], |tri| {
                    let (g, trace) = self.solve(tri, &mut split(rng))?;
                    children.push(trace);
                    Ok::<_, AutGroupError>(g)
                })?;
                node.children.extend(children);
                if let Some(f) = found {
                    debug_assert!(induced[a].is_isomorphism(&induced[b], &f));
                    maps.insert((b, a), f.inverse());
                    maps.insert((a, b), f);
                    let (ra, rb) = (find(&mut iso_type, a), find(&mut iso_type, b));
                    iso_type[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let roots: Vec<usize> = (0..m).map(|a| find(&mut iso_type, a)).collect();
        if roots.iter().any(|&r| r != roots[0]) {
            node.case = Case::DistinctTypes;
            let colors = (0..n).map(|v| roots[pi.part_of(v)] as u64 + 1).collect();
            return self.child(&recolored(t, colors), node, rng);
        }

        node.case = Case::Quotient;
        if let Some(p) = parts.iter().find(|p| p.len() % 2 == 0) {
            return Err(AutGroupError::OracleInconsistent(format!(
                "suborbit of even size {} reached the quotient",
                p.len()
            )));
        }
        let quotient = t.quotient(pi)?;
        let psi = self.child(&quotient, node, rng)?;
        let mut gens: Vec<Permutation> = Vec::new();
        for g in psi.generators() {
            let mut images = vec![0usize; n];
            for (a, part) in parts.iter().enumerate() {
                let b = g.apply(a);
                for (local, &v) in part.iter().enumerate() {
                    images[v] = if a == b {
                        v
                    } else {
                        parts[b][maps[&(a, b)].apply(local)]
                    };
                }
            }
            gens.push(Permutation::from_images(images)?);
        }
        for (part, class) in parts.iter().zip(&induced) {
            let upsilon = self.child(class, node, rng)?;
            gens.extend(lifted(&upsilon, part, n));
        }
        self.intersect(gens, t, Case::Quotient)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Every generator is an automorphism of `t`.
pub fn verify_generators(t: &Tournament, group: &PermGroup) -> bool {
    group.degree() == t.n()
        && group
            .generators()
            .iter()
            .all(|g| t.is_automorphism(g).unwrap_or(false))
}

/// An isomorphism `t1 → t2` through the automorphism group of the triangle
/// gadget. Colors are kept in the gadget. A returned map is always
/// verified; `None` may be a false negative if the suborbit oracle erred.
pub fn iso_tournaments<O: SuborbitOracle, R: Rng + ?Sized>(
    t1: &Tournament,
    t2: &Tournament,
    oracle: &mut O,
    rng: &mut R,
) -> Result<Option<Permutation>, AutGroupError> {
    if t1.n() != t2.n() {
        return Err(TournamentError::SizeMismatch {
            left: t1.n(),
            right: t2.n(),
        }
        .into());
    }
    if t1.color_multiset() != t2.color_multiset() || t1.score_sequence() != t2.score_sequence() {
        return Ok(None);
    }
    aut_to_iso(t1, t2, |tri| aut_group(tri, oracle, rng).map(|out| out.group))
}
