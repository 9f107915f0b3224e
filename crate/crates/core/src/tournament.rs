//! Colored tournaments and the gadget constructions built on them.
//!
//! A [`Tournament`] stores its orientation as a dense bit matrix: bit `(u, v)`
//! is set iff `u → v`. Colors are arbitrary `u64` labels, `0` being the
//! default; only the induced classes matter to automorphisms and
//! isomorphisms, but gadgets that compare two tournaments rely on equal
//! labels meaning equal colors.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partition::VertexPartition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("no orientation given for the pair {{{u}, {v}}}")]
    MissingPair { u: usize, v: usize },
    #[error("the pair {{{u}, {v}}} is oriented more than once")]
    DuplicatePair { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color vector has length {found}, expected {expected}")]
    ColorLength { expected: usize, found: usize },
    #[error("quotient needs odd part sizes, found a part of size {0}")]
    EvenPartSize(usize),
    #[error("tournaments have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("color encoding needs at least two colors, found {0}")]
    TooFewColors(usize),
    #[error("color {color} outside the palette 1..={palette}")]
    ColorOutOfPalette { color: u64, palette: usize },
    #[error("permutation of degree {found} applied to a tournament on {expected} vertices")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    colors: Vec<u64>,
}

impl Tournament {
    /// Builds a validated tournament from one ordered pair per unordered
    /// pair of distinct vertices.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        colors: Option<Vec<u64>>,
    ) -> Result<Self, TournamentError> {
        let mut t = Self::empty(n);
        let mut seen = vec![false; n * n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(TournamentError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(TournamentError::SelfLoop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if seen[a * n + b] {
                return Err(TournamentError::DuplicatePair { u: a, v: b });
            }
            seen[a * n + b] = true;
            t.set_arc(u, v);
        }
        for a in 0..n {
            for b in a + 1..n {
                if !seen[a * n + b] {
                    return Err(TournamentError::MissingPair { u: a, v: b });
                }
            }
        }
        match colors {
            Some(c) => t.with_colors(c),
            None => Ok(t),
        }
    }

    /// Builds a tournament from an orientation predicate, consulted once per
    /// pair `u < v`: `true` means `u → v`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    t.set_arc(u, v);
                } else {
                    t.set_arc(v, u);
                }
            }
        }
        t
    }

    fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Tournament {
            n,
            words,
            bits: vec![0; n * words],
            colors: vec![0; n],
        }
    }

    #[inline]
    fn set_arc(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `true` iff `u → v`. Always `false` for `u == v`.
    #[inline]
    pub fn arc(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.n - 1 - self.out_degree(v)
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.arc(v, w))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.arc(w, v))
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u64 {
        self.colors[v]
    }

    pub fn with_colors(mut self, colors: Vec<u64>) -> Result<Self, TournamentError> {
        if colors.len() != self.n {
            return Err(TournamentError::ColorLength {
                expected: self.n,
                found: colors.len(),
            });
        }
        self.colors = colors;
        Ok(self)
    }

    pub fn uncolored(&self) -> Self {
        let mut t = self.clone();
        t.colors = vec![0; self.n];
        t
    }

    /// All vertices share one color (not necessarily color 0).
    pub fn is_monochromatic(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    pub fn color_classes(&self) -> VertexPartition {
        VertexPartition::from_labels(&self.colors)
    }

    /// Sorted color multiset, handy as a cheap isomorphism invariant.
    pub fn color_multiset(&self) -> Vec<u64> {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c
    }

    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        s.sort_unstable();
        s
    }

    fn check_vertex(&self, v: usize) -> Result<(), TournamentError> {
        if v >= self.n {
            return Err(TournamentError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Subtournament on `subset`, re-indexed in increasing original order.
    /// Colors are kept. Duplicates in `subset` are ignored.
    pub fn induced(&self, subset: &[usize]) -> Result<Tournament, TournamentError> {
        let vertices: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        for &v in &vertices {
            self.check_vertex(v)?;
        }
        let mut t = Tournament::from_fn(vertices.len(), |a, b| self.arc(vertices[a], vertices[b]));
        t.colors = vertices.iter().map(|&v| self.colors[v]).collect();
        Ok(t)
    }

    /// Gives `v` a color of its own; see [`IndividualizationTrace`].
    pub fn individualize(&self, v: usize) -> Result<Tournament, TournamentError> {
        self.check_vertex(v)?;
        Ok(IndividualizationTrace::new(self.clone()).extended(v).tournament())
    }

    /// Recolors: `v` gets 1, its in-neighbors 2, its out-neighbors 3.
    /// Existing colors are discarded.
    pub fn star_coloring(&self, v: usize) -> Result<Tournament, TournamentError> {
        self.check_vertex(v)?;
        let mut t = self.clone();
        for u in 0..self.n {
            t.colors[u] = if u == v {
                1
            } else if self.arc(u, v) {
                2
            } else {
                3
            };
        }
        Ok(t)
    }

    /// Majority tournament on the parts of `pi` (in the partition's canonical
    /// order): `C → C'` iff more arcs go from `C` to `C'` than back. The
    /// result is uncolored.
    pub fn quotient(&self, pi: &VertexPartition) -> Result<Tournament, TournamentError> {
        if pi.n() != self.n {
            return Err(TournamentError::SizeMismatch {
                left: self.n,
                right: pi.n(),
            });
        }
        if let Some(p) = pi.parts().iter().find(|p| p.len() % 2 == 0) {
            return Err(TournamentError::EvenPartSize(p.len()));
        }
        let parts = pi.parts();
        Ok(Tournament::from_fn(parts.len(), |a, b| {
            let mut forward = 0usize;
            let mut backward = 0usize;
            for &x in &parts[a] {
                for &y in &parts[b] {
                    if self.arc(x, y) {
                        forward += 1;
                    } else {
                        backward += 1;
                    }
                }
            }
            assert_ne!(forward, backward, "odd parts cannot tie");
            forward > backward
        }))
    }

    /// The triangle gadget on `3n` vertices: blocks `T1` (`0..n`), a copy
    /// `T1'` (`n..2n`) and `T2` (`2n..3n`), with all arcs
    /// `T1 → T1' → T2 → T1` between blocks. Colors are carried into each
    /// block, the copy taking `T1`'s colors.
    ///
    /// Two vertices of one block share at least `n` out-neighbors (the next
    /// block), vertices of different blocks at most `n − 1`, so every
    /// automorphism permutes the blocks.
    pub fn tri(t1: &Tournament, t2: &Tournament) -> Result<Tournament, TournamentError> {
        let n = t1.n;
        if t2.n != n {
            return Err(TournamentError::SizeMismatch {
                left: n,
                right: t2.n,
            });
        }
        let mut t = Tournament::from_fn(3 * n, |a, b| {
            let (ba, bb) = (a / n.max(1), b / n.max(1));
            let (la, lb) = (a % n.max(1), b % n.max(1));
            match (ba, bb) {
                (0, 0) | (1, 1) => t1.arc(la, lb),
                (2, 2) => t2.arc(la, lb),
                (0, 1) | (1, 2) => true,
                (0, 2) => false,
                _ => unreachable!("a < b keeps block order"),
            }
        });
        t.colors = t1
            .colors
            .iter()
            .chain(t1.colors.iter())
            .chain(t2.colors.iter())
            .copied()
            .collect();
        Ok(t)
    }

    /// Colors renamed to `1..=k` by rank, with the palette padded to at
    /// least two colors. Returns the recolored tournament and the palette
    /// size to hand to [`Tournament::encode_colors`].
    pub fn normalized_palette(&self) -> (Tournament, usize) {
        let distinct: Vec<u64> = self.colors.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut t = self.clone();
        for c in t.colors.iter_mut() {
            *c = distinct.binary_search(c).unwrap() as u64 + 1;
        }
        (t, distinct.len().max(2))
    }

    /// Removes colors by attaching a rigid gadget.
    ///
    /// Colors must lie in `1..=palette` with `palette ≥ 2`. The output has
    /// `n + palette + 2` uncolored vertices: the originals at `0..n`, path
    /// vertices `u_1..u_ℓ` at `n..n+ℓ` (transitive, `u_j → u_k` for `j < k`),
    /// then `a` and `b`. `u_j → v` iff `v` has color `j`; `a`'s only
    /// out-neighbor is `b`; `b`'s in-neighbors are exactly `a` and the path.
    /// `a` is the unique vertex of maximum in-degree, which pins the whole
    /// gadget, so automorphisms of the output restrict to exactly the
    /// color-preserving automorphisms of the input.
    pub fn encode_colors(&self, palette: usize) -> Result<Tournament, TournamentError> {
        if palette < 2 {
            return Err(TournamentError::TooFewColors(palette));
        }
        if let Some(&c) = self.colors.iter().find(|&&c| c == 0 || c > palette as u64) {
            return Err(TournamentError::ColorOutOfPalette { color: c, palette });
        }
        let n = self.n;
        let a = n + palette;
        let b = a + 1;
        let path = |x: usize| (n..n + palette).contains(&x);
        let t = Tournament::from_fn(n + palette + 2, |x, y| {
            // x < y throughout
            if y < n {
                self.arc(x, y)
            } else if x < n && path(y) {
                // v → u_j unless v has color j
                self.colors[x] != (y - n + 1) as u64
            } else if (path(x) && path(y)) || y == a {
                true
            } else {
                // y == b: only a and the path point into b
                debug_assert_eq!(y, b);
                x >= n
            }
        });
        Ok(t)
    }

    /// [`Tournament::normalized_palette`] followed by
    /// [`Tournament::encode_colors`]; never fails.
    pub fn encode_colors_padded(&self) -> Tournament {
        let (t, palette) = self.normalized_palette();
        t.encode_colors(palette)
            .expect("normalized palette is always encodable")
    }

    fn check_degree(&self, s: &Permutation) -> Result<(), TournamentError> {
        if s.degree() != self.n {
            return Err(TournamentError::DegreeMismatch {
                expected: self.n,
                found: s.degree(),
            });
        }
        Ok(())
    }

    /// Relabels vertices: `u → v` becomes `s(u) → s(v)`, and `s(v)` takes
    /// `v`'s color.
    pub fn apply_perm(&self, s: &Permutation) -> Result<Tournament, TournamentError> {
        self.check_degree(s)?;
        let inv = s.inverse();
        let mut t = Tournament::from_fn(self.n, |a, b| self.arc(inv.apply(a), inv.apply(b)));
        t.colors = (0..self.n).map(|v| self.colors[inv.apply(v)]).collect();
        Ok(t)
    }

    pub fn is_automorphism(&self, s: &Permutation) -> Result<bool, TournamentError> {
        self.check_degree(s)?;
        Ok(self.maps_onto(self, s.images()))
    }

    /// `map` is a color- and orientation-preserving bijection onto `other`.
    pub fn is_isomorphism(&self, other: &Tournament, map: &Permutation) -> bool {
        self.n == other.n && map.degree() == self.n && self.maps_onto(other, map.images())
    }

    fn maps_onto(&self, other: &Tournament, map: &[usize]) -> bool {
        (0..self.n).all(|v| self.colors[v] == other.colors[map[v]])
            && (0..self.n).all(|u| {
                (u + 1..self.n).all(|v| self.arc(u, v) == other.arc(map[u], map[v]))
            })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(\n{self})")
    }
}

/// Text format: `n k`, then (if `k > 0`) the `n` colors, then `n` rows of
/// `0`/`1` with `-` on the diagonal. `k` counts distinct colors and is `0`
/// exactly when every color is `0`.
impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = if self.colors.iter().all(|&c| c == 0) {
            0
        } else {
            self.colors.iter().collect::<BTreeSet<_>>().len()
        };
        writeln!(f, "{} {}", self.n, k)?;
        if k > 0 {
            let line: Vec<String> = self.colors.iter().map(u64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        for u in 0..self.n {
            let row: String = (0..self.n)
                .map(|v| match (u == v, self.arc(u, v)) {
                    (true, _) => '-',
                    (false, true) => '1',
                    (false, false) => '0',
                })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl FromStr for Tournament {
    type Err = TournamentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l));
        let parse_err = |line: usize, msg: &str| TournamentError::Parse {
            line,
            msg: msg.to_string(),
        };
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(ln, "header must be two integers 'n k'"))?;
        let [n, k] = nums[..] else {
            return Err(parse_err(ln, "header must be two integers 'n k'"));
        };
        let mut colors = vec![0u64; n];
        if k > 0 {
            let (ln, line) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing colors line"))?;
            colors = line
                .split_whitespace()
                .map(|t| t.parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err(ln, "colors must be non-negative integers"))?;
            if colors.len() != n {
                return Err(parse_err(ln, "colors line must have n entries"));
            }
            let distinct = colors.iter().collect::<BTreeSet<_>>().len();
            if distinct != k || colors.iter().all(|&c| c == 0) {
                return Err(parse_err(ln, "color count k does not match the colors line"));
            }
        }
        let mut t = Tournament::empty(n);
        let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
        for u in 0..n {
            let (ln, line) = lines.next().ok_or_else(|| parse_err(0, "missing adjacency rows"))?;
            let row = line.trim_end().as_bytes().to_vec();
            if row.len() != n {
                return Err(parse_err(ln, "adjacency row must have n characters"));
            }
            if row[u] != b'-' {
                return Err(parse_err(ln, "diagonal entry must be '-'"));
            }
            rows.push(row);
        }
        for u in 0..n {
            for v in u + 1..n {
                match (rows[u][v], rows[v][u]) {
                    (b'1', b'0') => t.set_arc(u, v),
                    (b'0', b'1') => t.set_arc(v, u),
                    (b'0', b'0') => return Err(TournamentError::MissingPair { u, v }),
                    (b'1', b'1') => return Err(TournamentError::DuplicatePair { u, v }),
                    _ => return Err(parse_err(u + 1 + usize::from(k > 0) + 1, "entries must be 0 or 1")),
                }
            }
        }
        if let Some((ln, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(ln, &format!("trailing content '{l}'")));
        }
        t.colors = colors;
        Ok(t)
    }
}

/// A base tournament together with a sequence of individualized vertices.
///
/// The induced coloring gives `u_i` (1-based position `i`) the composite
/// color `(c(u_i), i)` and every other vertex `(c(v), 0)`, ordered
/// lexicographically. The pair is stored as `c·(n+1) + i`, which preserves
/// that order, so two traces over the same base agree on labels wherever
/// their sequences agree.
#[derive(Debug, Clone)]
pub struct IndividualizationTrace {
    base: Tournament,
    sequence: Vec<usize>,
}

impl IndividualizationTrace {
    pub fn new(base: Tournament) -> Self {
        IndividualizationTrace {
            base,
            sequence: Vec::new(),
        }
    }

    pub fn with_sequence(base: Tournament, sequence: &[usize]) -> Self {
        IndividualizationTrace {
            base,
            sequence: sequence.to_vec(),
        }
    }

    pub fn base(&self) -> &Tournament {
        &self.base
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn extended(mut self, v: usize) -> Self {
        self.push(v);
        self
    }

    pub fn push(&mut self, v: usize) {
        assert!(v < self.base.n, "vertex {v} out of range");
        if !self.sequence.contains(&v) {
            self.sequence.push(v);
        }
    }

    pub fn composite_colors(&self) -> Vec<u64> {
        composite_colors(&self.base, &self.sequence)
    }

    pub fn tournament(&self) -> Tournament {
        let mut t = self.base.clone();
        t.colors = self.composite_colors();
        t
    }
}

pub(crate) fn composite_colors(base: &Tournament, sequence: &[usize]) -> Vec<u64> {
    let stride = base.n as u64 + 1;
    let mut colors: Vec<u64> = base
        .colors
        .iter()
        .map(|&c| c.checked_mul(stride).expect("composite color overflow"))
        .collect();
    for (i, &v) in sequence.iter().enumerate() {
        colors[v] += i as u64 + 1;
    }
    colors
}
