#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use touriso::generators::{c3, circulant_default, lex_product, paley, random_tournament, transitive};
use touriso::oracles::brute_aut;
use touriso::rng::seeded;
use touriso::{PermGroup, Permutation, Tournament, VertexPartition};

pub fn random_perm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Every tournament on `n` vertices, one per orientation bitmask.
pub fn all_tournaments(n: usize) -> impl Iterator<Item = Tournament> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut fwd = vec![false; n * n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let ab = mask >> k & 1 == 1;
            fwd[a * n + b] = ab;
            fwd[b * n + a] = !ab;
        }
        Tournament::from_fn(n, |a, b| fwd[a * n + b])
    })
}

/// The symmetric part of the generator corpus, plus relabelled copies.
pub fn symmetric_corpus() -> Vec<Tournament> {
    let mut out = vec![
        c3(),
        paley(7).unwrap(),
        paley(11).unwrap(),
        circulant_default(5).unwrap(),
        circulant_default(9).unwrap(),
        lex_product(&c3(), &c3()),
        lex_product(&c3(), &transitive(3)),
        lex_product(&transitive(3), &c3()),
        lex_product(&c3(), &transitive(4)),
    ];
    let mut rng = seeded(77);
    for k in 0..out.len() {
        let s = random_perm(out[k].n(), &mut rng);
        let t = out[k].apply_perm(&s).unwrap();
        out.push(t);
    }
    out
}

/// Random tournaments with non-trivial automorphism group, found by
/// rejection over seeds.
pub fn random_symmetric(n: usize, count: usize) -> Vec<Tournament> {
    (0u64..)
        .map(|seed| random_tournament(n, seed))
        .filter(|t| !brute_aut(t).is_trivial())
        .take(count)
        .collect()
}

/// `σ(π) = π` for every generator `σ` of `group`.
pub fn is_invariant(pi: &VertexPartition, group: &PermGroup) -> bool {
    group.generators().iter().all(|g| {
        let mapped = pi.mapped(g.images());
        mapped == *pi
    })
}

/// Every class of `pi` lies inside one orbit of `group`.
pub fn refines_orbits(pi: &VertexPartition, group: &PermGroup) -> bool {
    pi.refines(&group.orbits())
}

/// The closure of `gens` under composition, for small groups.
pub fn closure(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::from([Permutation::identity(n)]);
    let mut queue = vec![Permutation::identity(n)];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}
