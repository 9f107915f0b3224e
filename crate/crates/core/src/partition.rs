use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears in more than one part")]
    Overlap(usize),
    #[error("vertex {0} is not covered by any part")]
    Uncovered(usize),
    #[error("partition contains an empty part")]
    EmptyPart,
}

/// A partition of `0..n` into non-empty parts.
///
/// Stored canonically: every part sorted ascending, parts ordered by their
/// smallest element. Two partitions with the same classes compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
    #[serde(skip)]
    part_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart);
            }
            for &v in part {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(PartitionError::Overlap(v));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(Self::canonical(n, parts))
    }

    /// Groups vertices by equal label.
    pub fn from_labels<L: Ord + Clone>(labels: &[L]) -> Self {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]).then(a.cmp(&b)));
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for (k, &v) in order.iter().enumerate() {
            if k > 0 && labels[order[k - 1]] == labels[v] {
                parts.last_mut().unwrap().push(v);
            } else {
                parts.push(vec![v]);
            }
        }
        Self::canonical(labels.len(), parts)
    }

    pub fn discrete(n: usize) -> Self {
        Self::canonical(n, (0..n).map(|v| vec![v]).collect())
    }

    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            return Self::canonical(0, Vec::new());
        }
        Self::canonical(n, vec![(0..n).collect()])
    }

    fn canonical(n: usize, mut parts: Vec<Vec<usize>>) -> Self {
        for part in parts.iter_mut() {
            part.sort_unstable();
        }
        parts.sort_by_key(|p| p[0]);
        let mut part_of = vec![0; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                part_of[v] = i;
            }
        }
        VertexPartition { n, parts, part_of }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part_containing(&self, v: usize) -> &[usize] {
        &self.parts[self.part_of[v]]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.parts.len() == self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    /// True when every part of `self` lies inside some part of `coarser`.
    pub fn refines(&self, coarser: &VertexPartition) -> bool {
        self.n == coarser.n
            && self
                .parts
                .iter()
                .all(|p| p.iter().all(|&v| coarser.part_of(v) == coarser.part_of(p[0])))
    }

    /// Image of the partition under the vertex map `map` (`v ↦ map[v]`).
    pub fn mapped(&self, map: &[usize]) -> VertexPartition {
        let parts = self
            .parts
            .iter()
            .map(|p| p.iter().map(|&v| map[v]).collect())
            .collect();
        Self::canonical(self.n, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_and_trivial_are_exclusive() {
        for n in 2..6 {
            let d = VertexPartition::discrete(n);
            let t = VertexPartition::trivial(n);
            assert!(d.is_discrete() && !d.is_trivial());
            assert!(t.is_trivial() && !t.is_discrete());
        }
    }

    #[test]
    fn rejects_bad_parts() {
        assert_eq!(
            VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]),
            Err(PartitionError::Overlap(1))
        );
        assert_eq!(
            VertexPartition::new(3, vec![vec![0, 1]]),
            Err(PartitionError::Uncovered(2))
        );
        assert_eq!(
            VertexPartition::new(2, vec![vec![0, 5]]),
            Err(PartitionError::VertexOutOfRange { vertex: 5, n: 2 })
        );
    }

    #[test]
    fn canonical_order() {
        let p = VertexPartition::new(5, vec![vec![4, 2], vec![3, 0, 1]]).unwrap();
        assert_eq!(p.parts(), &[vec![0, 1, 3], vec![2, 4]]);
        assert_eq!(p, VertexPartition::from_labels(&[7, 7, 1, 7, 1]));
        assert_eq!(p.part_of(4), 1);
    }

    #[test]
    fn refinement_order() {
        let fine = VertexPartition::new(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        let coarse = VertexPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
    }
}
