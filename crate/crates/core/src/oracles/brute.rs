//! Exact reference answers by individualization and refinement.

use super::refine::{
    first_non_singleton, individualized, is_discrete, joint_ranks, refine, refine_joint,
};
use crate::perm::{PermGroup, Permutation};
use crate::tournament::Tournament;

/// Label-preserving isomorphism from `(t1, l1)` to `(t2, l2)` extending the
/// current labelling, if any. Labels must be jointly comparable.
fn search_extension(
    t1: &Tournament,
    l1: Vec<u32>,
    t2: &Tournament,
    l2: Vec<u32>,
) -> Option<Vec<usize>> {
    let mut refined = refine_joint(&[(t1, l1), (t2, l2)])?;
    let l2 = refined.pop().unwrap();
    let l1 = refined.pop().unwrap();
    match first_non_singleton(&l1) {
        None => {
            let mut where_ = vec![0usize; l2.len()];
            for (w, &l) in l2.iter().enumerate() {
                where_[l as usize] = w;
            }
            let map: Vec<usize> = l1.iter().map(|&l| where_[l as usize]).collect();
            let ok = (0..t1.n()).all(|u| (u + 1..t1.n()).all(|v| t1.arc(u, v) == t2.arc(map[u], map[v])));
            ok.then_some(map)
        }
        Some(v) => {
            let a = individualized(&l1, v);
            (0..t2.n())
                .filter(|&w| l2[w] == l1[v])
                .find_map(|w| search_extension(t1, a.clone(), t2, individualized(&l2, w)))
        }
    }
}

/// Individualization path of a single tournament: the vertex fixed at each
/// step and the refined labels before fixing it.
fn base_path(t: &Tournament) -> Vec<(usize, Vec<u32>)> {
    let ranks = joint_ranks(&[t.colors()]).pop().unwrap();
    let mut labels = refine(t, ranks);
    let mut path = Vec::new();
    while let Some(v) = first_non_singleton(&labels) {
        let next = refine(t, individualized(&labels, v));
        path.push((v, labels));
        labels = next;
    }
    debug_assert!(is_discrete(&labels));
    path
}

/// The full automorphism group of a (colored) tournament.
pub fn brute_aut(t: &Tournament) -> PermGroup {
    let n = t.n();
    let path = base_path(t);
    let mut group = PermGroup::trivial(n);
    for (v, labels) in path.iter().rev() {
        let (v, labels) = (*v, labels);
        let mut done = vec![false; n];
        for x in group.orbit_of(v) {
            done[x] = true;
        }
        for w in 0..n {
            if done[w] || labels[w] != labels[v] {
                continue;
            }
            let found = search_extension(t, individualized(labels, v), t, individualized(labels, w));
            if let Some(map) = found {
                let g = Permutation::from_images(map).expect("search yields bijections");
                group.add_generator(g).expect("degrees agree");
            }
            for x in group.orbit_of(w) {
                done[x] = true;
            }
        }
    }
    group
}

/// Colored asymmetry, stopping at the first non-trivial automorphism.
pub fn brute_is_asymmetric(t: &Tournament) -> bool {
    brute_nontrivial_automorphism(t).is_none()
}

pub fn brute_nontrivial_automorphism(t: &Tournament) -> Option<Permutation> {
    for (v, labels) in base_path(t).iter().rev() {
        for w in (0..t.n()).filter(|&w| w != *v && labels[w] == labels[*v]) {
            if let Some(map) = search_extension(t, individualized(labels, *v), t, individualized(labels, w)) {
                return Some(Permutation::from_images(map).unwrap());
            }
        }
    }
    None
}

/// A color-preserving isomorphism `t1 → t2`, if one exists.
pub fn brute_isomorphism(t1: &Tournament, t2: &Tournament) -> Option<Permutation> {
    if t1.n() != t2.n() || t1.color_multiset() != t2.color_multiset() {
        return None;
    }
    let mut ranks = joint_ranks(&[t1.colors(), t2.colors()]);
    let r2 = ranks.pop().unwrap();
    let r1 = ranks.pop().unwrap();
    let map = search_extension(t1, r1, t2, r2)?;
    let p = Permutation::from_images(map).unwrap();
    debug_assert!(t1.is_isomorphism(t2, &p));
    Some(p)
}
