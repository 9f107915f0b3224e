use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::PermError;

/// A bijection of `0..n`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(PermError::NotABijection);
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` first, then `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    /// Checked variant of [`Permutation::then`].
    pub fn try_then(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != x)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Extends a permutation of `positions.len()` local points to `degree`
    /// points: local point `k` stands for `positions[k]`, everything outside
    /// `positions` is fixed.
    pub fn lift(&self, positions: &[usize], degree: usize) -> Self {
        debug_assert_eq!(self.degree(), positions.len());
        let mut images: Vec<usize> = (0..degree).collect();
        for (k, &p) in positions.iter().enumerate() {
            images[p] = positions[self.images[k]];
        }
        Permutation { images }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`, applied left to right.
    pub fn commutator(&self, other: &Permutation) -> Self {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    /// `g⁻¹ · self · g` in left-to-right application order.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// One-line image list: `p 0 2 1`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p")?;
        for x in &self.images {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        if tokens.next() != Some("p") {
            return Err(PermError::Parse("permutation line must start with 'p'".into()));
        }
        let images = tokens
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PermError::Parse(format!("bad image '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }
}
