use std::collections::BTreeSet;

use rand::Rng;
use touriso::rng::{seeded, split};
use touriso::sampling::{
    extract_characteristic, find_cutoff, sample_size, EpsPrime, SamplerConfig, TableSampler, FAITHFUL_C1, FAITHFUL_C2,
};

fn run(probs: &[f64], seed: u64) -> BTreeSet<usize> {
    let mut s = TableSampler::new(probs.to_vec()).unwrap();
    extract_characteristic(&mut s, &SamplerConfig::desk(0.05), &mut seeded(seed))
        .unwrap()
        .set
}

#[test]
fn some_window_is_free_of_probabilities() {
    let mut rng = seeded(1);
    for _ in 0..1000 {
        let k = rng.random_range(1..=40);
        let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.01..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|p| p / sum).collect();
        for i in 1..=16u64 {
            let s = 8.0 * (i * i) as f64;
            let free = (6 * i + 1..=8 * i).any(|j| {
                let (lo, hi) = ((j as f64 - 0.25) / s, (j as f64 + 0.25) / s);
                probs.iter().all(|&p| p < lo || p > hi)
            });
            assert!(free, "no free window at i = {i} for {probs:?}");
        }
    }
}

#[test]
fn dense_estimates_fail_the_round() {
    let mut q = Vec::new();
    for j in [7u128, 8] {
        q.push((16 * j, 128));
        q.push((16 * j - 1, 128));
        q.push((16 * j + 1, 128));
    }
    assert_eq!(find_cutoff(&q, 1), None);
    assert_eq!(find_cutoff(&[(1, 1)], 1), Some(7));
}

#[test]
fn constant_sampler() {
    assert_eq!(run(&[1.0], 0), BTreeSet::from([0]));
}

#[test]
fn uniform_pair_is_never_split() {
    for seed in 0..200 {
        assert_eq!(run(&[0.5, 0.5], seed), BTreeSet::from([0, 1]));
    }
}

#[test]
fn two_level_distribution() {
    let probs = [0.4, 0.4, 0.1, 0.1];
    let sampler = TableSampler::new(probs.to_vec()).unwrap();
    let good = (0..200).filter(|&s| sampler.is_characteristic(&run(&probs, s))).count();
    assert!(good >= 180, "{good}/200");
}

#[test]
fn uniform_sixteen() {
    let probs = vec![1.0 / 16.0; 16];
    let full = (0..100).filter(|&s| run(&probs, s).len() == 16).count();
    assert!(full >= 90, "{full}/100");
}

#[test]
fn growth_is_bounded_by_the_last_round() {
    let cfg = SamplerConfig::desk(0.05);
    let mut last_i = Vec::new();
    for k in [2usize, 4, 8, 16] {
        let mut s = TableSampler::uniform(k);
        let ex = extract_characteristic(&mut s, &cfg, &mut seeded(k as u64)).unwrap();
        let last = ex.rounds.last().unwrap();
        assert!(ex.samples <= 2 * last.t_drawn);
        assert!(last.i as usize <= 2 * k);
        last_i.push(last.i);
    }
    assert!(last_i.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn faithful_formula() {
    let t = sample_size(1, EpsPrime::from_value(std::f64::consts::E.recip()), FAITHFUL_C1, FAITHFUL_C2);
    assert_eq!(t, 1u128 << 36);
    let t = sample_size(2, EpsPrime::from_value(1.0 / 16.0), FAITHFUL_C1, FAITHFUL_C2);
    assert_eq!(t, 5_814_540u128 * 5_814_540);
}

#[test]
fn faithful_mode_runs_through_multinomial_rounds() {
    let mut s = TableSampler::uniform(4);
    let mut rng = seeded(0);
    let ex = extract_characteristic(&mut s, &SamplerConfig::faithful(0.05), &mut split(&mut rng)).unwrap();
    assert_eq!(ex.set.len(), 4);
    assert!(ex.rounds.iter().all(|r| r.t_drawn == r.t_formula));
}
