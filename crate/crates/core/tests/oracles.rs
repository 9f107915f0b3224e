mod common;

use common::{all_tournaments, random_perm};
use rand::Rng;
use touriso::generators::{c3, lex_product, paley, random_tournament, random_tournament_with, transitive};
use touriso::oracles::{aut_to_iso, brute_aut, brute_is_asymmetric, brute_isomorphism, OracleError, OracleStack};
use touriso::rng::seeded;
use touriso::{Permutation, Tournament, TournamentError};

fn solve(t: &Tournament) -> Result<touriso::PermGroup, TournamentError> {
    Ok(brute_aut(t))
}

#[test]
fn brute_aut_examples() {
    assert_eq!(brute_aut(&c3()).order(), 3);
    for n in 1..=8 {
        assert!(brute_aut(&transitive(n)).is_trivial());
    }
    assert_eq!(brute_aut(&paley(7).unwrap()).order(), 21);
}

#[test]
fn o2_examples() {
    let mut stack = OracleStack::brute_force();
    let discrete = c3().individualize(0).unwrap().individualize(1).unwrap();
    assert!(stack.o2(&discrete).unwrap());
    assert!(!stack.o2(&c3().with_colors(vec![1, 1, 1]).unwrap()).unwrap());
    assert!(!stack.o2(&c3()).unwrap());
}

#[test]
fn o2_agrees_with_brute_force_on_random_colored() {
    let mut rng = seeded(21);
    let mut stack = OracleStack::brute_force();
    let mut symmetric = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=10);
        let k = rng.random_range(1..=3);
        // lexicographic products and circulants keep symmetric cases in the mix
        let t = if rng.random_bool(0.5) && n >= 3 {
            let m = [3, 5, 7][rng.random_range(0..3)];
            let base = touriso::generators::circulant_default(m).unwrap();
            lex_product(&base, &transitive(rng.random_range(1..=2)))
        } else {
            random_tournament_with(n, &mut rng)
        };
        let colors = (0..t.n()).map(|_| rng.random_range(0..k)).collect();
        let t = t.with_colors(colors).unwrap();
        let truth = brute_aut(&t).is_trivial();
        symmetric += usize::from(!truth);
        assert_eq!(stack.o2(&t).unwrap(), truth);
    }
    assert!(symmetric > 20);
}

#[test]
fn adapters_agree_exhaustively_up_to_five() {
    let mut stack = OracleStack::brute_force();
    for n in 1..=5 {
        let all: Vec<Tournament> = all_tournaments(n).collect();
        for t in &all {
            assert_eq!(stack.o2(t).unwrap(), brute_is_asymmetric(t));
        }
        let asym: Vec<&Tournament> = all.iter().filter(|t| brute_is_asymmetric(t)).collect();
        for (k, a) in asym.iter().enumerate().step_by(7) {
            for b in asym.iter().skip(k % 5).step_by(11) {
                let truth = brute_isomorphism(a, b).is_some();
                assert_eq!(stack.o3_decide(a, b).unwrap(), truth);
            }
        }
    }
}

#[test]
fn o3_examples() {
    let mut stack = OracleStack::brute_force();
    let t4 = transitive(4).with_colors(vec![1, 2, 2, 1]).unwrap();
    assert_eq!(stack.o3_search(&t4, &t4).unwrap(), Some(Permutation::identity(4)));
    let other = (0u64..)
        .map(|s| random_tournament(5, s))
        .find(|t| brute_is_asymmetric(t) && brute_isomorphism(t, &transitive(5)).is_none())
        .unwrap();
    assert_eq!(stack.o3_search(&transitive(5), &other).unwrap(), None);
}

#[test]
fn o3_search_on_permuted_pairs() {
    let mut rng = seeded(8);
    let mut done = 0;
    let mut seed = 0;
    while done < 100 {
        seed += 1;
        let n = rng.random_range(2..=12);
        let t = random_tournament(n, seed);
        if !brute_is_asymmetric(&t) {
            continue;
        }
        let s = random_perm(n, &mut rng);
        let u = t.apply_perm(&s).unwrap();
        let mut stack = OracleStack::brute_force();
        let w = stack.o3_search(&t, &u).unwrap().unwrap();
        assert!(t.is_isomorphism(&u, &w));
        assert!(stack.counts().o1 <= 2 * (n * n) as u64);
        done += 1;
    }
}

#[test]
fn o3_on_symmetric_inputs_never_returns_a_bad_witness() {
    let mut stack = OracleStack::brute_force();
    for t in [c3(), paley(7).unwrap(), lex_product(&c3(), &c3())] {
        let u = t.apply_perm(&random_perm(t.n(), &mut seeded(1))).unwrap();
        match stack.o3_search(&t, &u) {
            Ok(Some(w)) => assert!(t.is_isomorphism(&u, &w)),
            Err(OracleError::WitnessCheckFailed) | Ok(None) => {}
            Err(e) => panic!("unexpected {e}"),
        }
    }
}

#[test]
fn aut_to_iso_examples() {
    let w = aut_to_iso(&c3(), &c3(), solve).unwrap().unwrap();
    assert!(c3().is_isomorphism(&c3(), &w));
    let t4 = transitive(4);
    let ext = Tournament::from_fn(4, |a, b| if a < 3 && b < 3 { c3().arc(a, b) } else { b == 3 });
    assert!(aut_to_iso(&t4, &ext, solve).unwrap().is_none());
}

#[test]
fn block_orbit_meets_second_block_iff_isomorphic() {
    let mut rng = seeded(12);
    for seed in 0..40 {
        let t1 = random_tournament(4, seed);
        let t2 = if seed % 2 == 0 {
            t1.apply_perm(&random_perm(4, &mut rng)).unwrap()
        } else {
            random_tournament(4, seed + 1000)
        };
        let tri = Tournament::tri(&t1, &t2).unwrap();
        let orbit = brute_aut(&tri).orbit_of(0);
        let meets = orbit.iter().any(|&y| y >= 8);
        assert_eq!(meets, brute_isomorphism(&t1, &t2).is_some());
    }
}
