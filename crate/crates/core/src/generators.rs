//! Instance families for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tournament::{Tournament, TournamentError};

/// The 3-cycle `0 → 1 → 2 → 0`.
pub fn c3() -> Tournament {
    Tournament::from_fn(3, |a, b| b == a + 1)
}

/// `i → j` iff `i < j`.
pub fn transitive(n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| true)
}

/// Each pair oriented by a fair coin from a ChaCha8 stream seeded with
/// `seed`, pairs visited row by row.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tournament_with(n, &mut rng)
}

pub fn random_tournament_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.random::<bool>())
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley tournament on `Z_q`: `i → j` iff `j − i` is a non-zero square.
pub fn paley(q: usize) -> Result<Tournament, TournamentError> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(TournamentError::BadParameter(format!(
            "paley needs a prime q ≡ 3 mod 4, got {q}"
        )));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(Tournament::from_fn(q, |a, b| square[(b - a) % q]))
}

/// Circulant tournament on `Z_n`: `i → j` iff `j − i mod n` lies in
/// `residues`. The residues and their negatives must split `1..n`.
pub fn circulant(n: usize, residues: &[usize]) -> Result<Tournament, TournamentError> {
    let bad = |msg: &str| Err(TournamentError::BadParameter(msg.to_string()));
    if n.is_multiple_of(2) {
        return bad("circulant needs an odd vertex count");
    }
    let mut inside = vec![false; n];
    for &r in residues {
        if r == 0 || r >= n {
            return bad("residues must lie in 1..n");
        }
        if inside[r] || inside[n - r] {
            return bad("residue set must contain exactly one of r and n - r");
        }
        inside[r] = true;
    }
    if residues.len() != (n - 1) / 2 {
        return bad("residue set must contain exactly one of r and n - r");
    }
    Ok(Tournament::from_fn(n, |a, b| inside[b - a]))
}

/// [`circulant`] with residues `1..=(n−1)/2`.
pub fn circulant_default(n: usize) -> Result<Tournament, TournamentError> {
    let residues: Vec<usize> = (1..=n.saturating_sub(1) / 2).collect();
    circulant(n, &residues)
}

/// Lexicographic product: every vertex of `outer` is replaced by a copy of
/// `inner`. Vertex `(a, b)` has index `a·|inner| + b`. Uncolored.
pub fn lex_product(outer: &Tournament, inner: &Tournament) -> Tournament {
    let m = inner.n();
    Tournament::from_fn(outer.n() * m, |x, y| {
        let (a, b) = (x / m, x % m);
        let (a2, b2) = (y / m, y % m);
        if a == a2 {
            inner.arc(b, b2)
        } else {
            outer.arc(a, a2)
        }
    })
}
