//! Equitable color refinement with labels that are comparable across
//! several tournaments.

use crate::tournament::Tournament;

/// Dense ranks of `colors` taken jointly over every slice.
pub(crate) fn joint_ranks(colors: &[&[u64]]) -> Vec<Vec<u32>> {
    let mut all: Vec<u64> = colors.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    colors
        .iter()
        .map(|c| c.iter().map(|x| all.binary_search(x).unwrap() as u32).collect())
        .collect()
}

/// Refines each labelling until it is equitable: two vertices keep the same
/// label only if they had the same label and the same number of
/// out-neighbors in every class. New labels are ranks of the signatures
/// over all inputs together, so a label means the same thing in every
/// tournament. Returns `None` as soon as two inputs disagree on the
/// multiset of signatures, which rules out any label-preserving
/// isomorphism between them.
pub(crate) fn refine_joint(items: &[(&Tournament, Vec<u32>)]) -> Option<Vec<Vec<u32>>> {
    let mut labels: Vec<Vec<u32>> = items.iter().map(|(_, l)| l.clone()).collect();
    let mut classes = count_classes(&labels);
    loop {
        let sigs: Vec<Vec<Vec<u32>>> = items
            .iter()
            .zip(&labels)
            .map(|((t, _), lab)| signatures(t, lab, classes))
            .collect();
        let mut sorted: Vec<Vec<Vec<u32>>> = sigs.clone();
        for s in sorted.iter_mut() {
            s.sort_unstable();
        }
        if sorted.windows(2).any(|w| w[0] != w[1]) {
            return None;
        }
        // every input has the same sorted signatures, so the first suffices
        let mut all: Vec<&Vec<u32>> = sorted[0].iter().collect();
        all.dedup();
        let next: Vec<Vec<u32>> = sigs
            .iter()
            .map(|s| {
                s.iter()
                    .map(|x| all.binary_search(&x).unwrap() as u32)
                    .collect()
            })
            .collect();
        let next_classes = all.len();
        labels = next;
        if next_classes == classes {
            return Some(labels);
        }
        classes = next_classes;
    }
}

pub(crate) fn refine(t: &Tournament, labels: Vec<u32>) -> Vec<u32> {
    refine_joint(&[(t, labels)]).unwrap().pop().unwrap()
}

fn count_classes(labels: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = labels.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// `[label, out-neighbors in class 0, in class 1, ...]` per vertex. Labels
/// are assumed to be ranks below `classes`.
fn signatures(t: &Tournament, labels: &[u32], classes: usize) -> Vec<Vec<u32>> {
    (0..t.n())
        .map(|v| {
            let mut sig = vec![0u32; classes + 1];
            sig[0] = labels[v];
            for w in t.out_neighbors(v) {
                sig[labels[w] as usize + 1] += 1;
            }
            sig
        })
        .collect()
}

/// Gives `v` a label of its own, one above every label in use.
pub(crate) fn individualized(labels: &[u32], v: usize) -> Vec<u32> {
    let top = labels.iter().copied().max().unwrap_or(0) + 1;
    let mut out = labels.to_vec();
    out[v] = top;
    out
}

pub(crate) fn is_discrete(labels: &[u32]) -> bool {
    let mut seen = vec![false; labels.len()];
    labels.iter().all(|&l| {
        let l = l as usize;
        l < seen.len() && !std::mem::replace(&mut seen[l], true)
    })
}

/// Lowest vertex whose label is shared with another vertex.
pub(crate) fn first_non_singleton(labels: &[u32]) -> Option<usize> {
    let mut count = vec![0usize; labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)];
    for &l in labels {
        count[l as usize] += 1;
    }
    (0..labels.len()).find(|&v| count[labels[v] as usize] > 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{c3, paley, transitive};

    #[test]
    fn transitive_refines_to_discrete() {
        let t = transitive(6);
        assert!(is_discrete(&refine(&t, vec![0; 6])));
    }

    #[test]
    fn vertex_transitive_stays_one_class() {
        let t = paley(7).unwrap();
        let l = refine(&t, vec![0; 7]);
        assert!(l.iter().all(|&x| x == l[0]));
        let l = refine(&t, individualized(&l, 0));
        assert!(!is_discrete(&l));
        assert_eq!(first_non_singleton(&l), Some(1));
    }

    #[test]
    fn joint_refinement_detects_mismatch() {
        let a = c3();
        let b = transitive(3);
        assert!(refine_joint(&[(&a, vec![0; 3]), (&b, vec![0; 3])]).is_none());
        assert!(refine_joint(&[(&a, vec![0; 3]), (&a, vec![0; 3])]).is_some());
    }
}
