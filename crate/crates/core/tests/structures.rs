//! Tournaments, gadgets and permutation groups on small worked examples,
//! checked against brute force where the answer is not immediate.

mod common;

use common::{all_tournaments, closure, random_perm};
use touriso::generators::{c3, circulant_default, lex_product, paley, random_tournament, transitive};
use touriso::oracles::{brute_aut, brute_is_asymmetric, brute_isomorphism};
use touriso::perm::intersect_with_aut;
use touriso::rng::seeded;
use touriso::{PermGroup, Permutation, Tournament, TournamentError, VertexPartition};

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

#[test]
fn construction() {
    let one = Tournament::new(1, &[], None).unwrap();
    assert_eq!(one.n(), 1);
    let t = Tournament::new(3, &[(0, 1), (1, 2), (2, 0)], None).unwrap();
    assert_eq!(t, c3());
    assert!(matches!(
        Tournament::new(3, &[(0, 1), (1, 2)], None),
        Err(TournamentError::MissingPair { .. })
    ));
}

#[test]
fn induced_subtournaments() {
    let t = c3().induced(&[0, 1]).unwrap();
    assert!(t.arc(0, 1) && !t.arc(1, 0));
    let p = paley(7).unwrap();
    assert_eq!(p.induced(&(0..7).collect::<Vec<_>>()).unwrap(), p);
    let sub = transitive(5).induced(&[1, 3, 4]).unwrap();
    assert!(brute_isomorphism(&sub, &transitive(3)).is_some());
}

#[test]
fn individualization() {
    let t = c3().individualize(0).unwrap();
    assert_eq!(t.color_classes().parts(), &[vec![0], vec![1, 2]]);
    assert!(t.individualize(1).unwrap().color_classes().is_discrete());
    assert!(brute_aut(&t).is_trivial());
    let again = t.individualize(0).unwrap();
    assert_eq!(again.color_classes(), t.color_classes());
}

#[test]
fn star_colorings() {
    let s = c3().star_coloring(0).unwrap();
    let classes = s.color_classes();
    assert_eq!(classes.len(), 3);
    assert_eq!((s.color(0), s.color(2), s.color(1)), (1, 2, 3));
    let source = transitive(3).star_coloring(0).unwrap();
    assert!(source.colors().iter().all(|&c| c != 2));
    for t in [paley(7).unwrap(), circulant_default(9).unwrap()] {
        let s = t.star_coloring(0).unwrap();
        let size = |c| s.colors().iter().filter(|&&x| x == c).count();
        assert_eq!((size(2), size(3)), ((t.n() - 1) / 2, (t.n() - 1) / 2));
    }
}

#[test]
fn quotients() {
    let t = random_tournament(8, 3);
    assert_eq!(t.quotient(&VertexPartition::discrete(8)).unwrap(), t);
    let lex = lex_product(&c3(), &c3());
    let blocks = VertexPartition::new(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
    assert!(brute_isomorphism(&lex.quotient(&blocks).unwrap(), &c3()).is_some());
    let even = VertexPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
    assert!(matches!(c3().quotient(&even), Err(TournamentError::EvenPartSize { .. })));
}

fn common_out(t: &Tournament, u: usize, w: usize) -> usize {
    t.out_neighbors(u).filter(|&x| t.arc(w, x)).count()
}

#[test]
fn tri_blocks_by_common_out_neighbors() {
    let (a, b) = (random_tournament(5, 1), random_tournament(5, 2));
    let t = Tournament::tri(&a, &b).unwrap();
    let n = 5;
    for u in 0..3 * n {
        for w in 0..3 * n {
            if u == w {
                continue;
            }
            if u / n == w / n {
                assert!(common_out(&t, u, w) >= n);
            } else {
                assert!(common_out(&t, u, w) < n);
            }
        }
    }
}

/// Two non-isomorphic asymmetric tournaments on 5 vertices.
fn asymmetric_pair() -> (Tournament, Tournament) {
    let t1 = transitive(5);
    let t2 = (0u64..)
        .map(|s| random_tournament(5, s))
        .find(|t| brute_is_asymmetric(t) && brute_isomorphism(t, &t1).is_none())
        .unwrap();
    (t1, t2)
}

#[test]
fn tri_automorphisms() {
    for t in [transitive(3), transitive(4), asymmetric_pair().1] {
        assert_eq!(brute_aut(&Tournament::tri(&t, &t).unwrap()).order(), 3);
    }
    let (t1, t2) = asymmetric_pair();
    assert!(brute_is_asymmetric(&Tournament::tri(&t1, &t2).unwrap()));
}

#[test]
fn color_encoding() {
    let t = c3().individualize(0).unwrap();
    let (normal, palette) = t.normalized_palette();
    let e = normal.encode_colors(palette).unwrap();
    let a = e.n() - 2;
    let max_in = (0..e.n()).filter(|&v| v != a).map(|v| e.in_degree(v)).max().unwrap();
    assert_eq!(e.in_degree(a), t.n() + palette);
    assert!(e.in_degree(a) > max_in);
    assert!(brute_is_asymmetric(&e));
    let mono = c3().with_colors(vec![1, 1, 1]).unwrap();
    assert_eq!(brute_aut(&mono.encode_colors_padded()).order(), 3);
}

#[test]
fn automorphism_checks() {
    assert!(c3().is_automorphism(&cyc(3, &[&[0, 1, 2]])).unwrap());
    assert!(!c3().is_automorphism(&cyc(3, &[&[0, 1]])).unwrap());
    let t = random_tournament(9, 4);
    assert!(t.is_automorphism(&Permutation::identity(9)).unwrap());
}

#[test]
fn generator_families() {
    for n in 1..=8 {
        assert!(brute_aut(&transitive(n)).is_trivial());
    }
    assert_eq!(brute_aut(&paley(7).unwrap()).order(), 21);
    assert_eq!(brute_aut(&lex_product(&c3(), &c3())).order(), 81);
    assert_eq!(brute_aut(&paley(7).unwrap()).orbits().len(), 1);
}

#[test]
fn group_orders_and_orbits() {
    let rot = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
    assert_eq!(rot.order(), 3);
    assert_eq!(PermGroup::new(4, vec![]).unwrap().order(), 1);
    let s5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
    assert_eq!(s5.order(), 120);
    assert_eq!(closure(5, s5.generators()).len(), 120);
    let on4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]])]).unwrap();
    assert_eq!(on4.orbits().parts(), &[vec![0, 1, 2], vec![3]]);
    assert!(PermGroup::trivial(6).orbits().is_discrete());
}

#[test]
fn supports() {
    assert!(Permutation::identity(4).support().is_empty());
    assert_eq!(cyc(5, &[&[0, 1, 2]]).support(), vec![0, 1, 2]);
    let mut corpus = vec![c3(), paley(7).unwrap(), circulant_default(5).unwrap(), circulant_default(7).unwrap()];
    corpus.extend(common::random_symmetric(7, 10));
    for t in corpus {
        for g in brute_aut(&t).elements() {
            assert!(g.is_identity() || g.support().len() >= 3);
        }
    }
}

#[test]
fn intersections() {
    let rot = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
    assert_eq!(intersect_with_aut(&rot, &c3()).unwrap().order(), 3);
    let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
    assert!(intersect_with_aut(&s3, &transitive(3)).unwrap().is_trivial());
    // S3 wr S3 on the blocks of the lexicographic product
    let mut gens = Vec::new();
    for b in 0..3 {
        let x = 3 * b;
        gens.push(cyc(9, &[&[x, x + 1]]));
        gens.push(cyc(9, &[&[x, x + 1, x + 2]]));
    }
    gens.push(cyc(9, &[&[0, 3], &[1, 4], &[2, 5]]));
    gens.push(cyc(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]));
    let wreath = PermGroup::new(9, gens).unwrap();
    assert_eq!(wreath.order(), 1296);
    let lex = lex_product(&c3(), &c3());
    let h = intersect_with_aut(&wreath, &lex).unwrap();
    assert_eq!(h.order(), 81);
    assert_eq!(h.order(), brute_aut(&lex).order());
}

#[test]
fn solvability() {
    let c5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
    assert!(c5.is_solvable());
    let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
    assert_eq!(a5.order(), 60);
    assert!(!a5.is_solvable());
    let mut rng = seeded(5);
    for seed in 0..60 {
        let t = random_tournament(7, seed).apply_perm(&random_perm(7, &mut rng)).unwrap();
        let g = brute_aut(&t);
        assert!(g.is_solvable() && g.is_odd_order());
    }
    for t in [paley(7).unwrap(), lex_product(&c3(), &transitive(2))] {
        let g = brute_aut(&t);
        assert!(g.is_solvable() && g.is_odd_order());
    }
}

#[test]
fn brute_aut_matches_enumeration_n4() {
    let perms = closure(4, &[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]);
    for t in all_tournaments(4) {
        let count = perms.iter().filter(|p| t.is_automorphism(p).unwrap()).count();
        assert_eq!(brute_aut(&t).order() as usize, count);
    }
}
