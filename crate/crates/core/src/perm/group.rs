use std::collections::HashSet;

use super::{PermError, Permutation};
use crate::partition::VertexPartition;

/// One level of a stabilizer chain: the group fixing all earlier base
/// points, its orbit of `base`, and coset representatives for that orbit.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps `base` to `x`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
    /// Orbit points whose Schreier generators with `gens[..checked[k]]`
    /// have been sifted; indexed by orbit position.
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
            checked: vec![0],
        }
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.inverse[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                    self.checked.push(0);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group given by generators, with a stabilizer chain built
/// by deterministic Schreier–Sims. Base points are chosen as the lowest
/// point moved by the element that forces a new level.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let mut group = PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            group.push_generator(g);
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Adds a generator unless it is already a member. Returns whether the
    /// group grew.
    pub fn add_generator(&mut self, g: Permutation) -> Result<bool, PermError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.push_generator(g))
    }

    fn push_generator(&mut self, g: Permutation) -> bool {
        if g.is_identity() {
            return false;
        }
        let grew = self.insert(g.clone(), 0);
        if grew {
            self.generators.push(g);
        }
        grew
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub(crate) fn depth(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn level_base(&self, l: usize) -> usize {
        self.levels[l].base
    }

    pub(crate) fn level_orbit(&self, l: usize) -> &[usize] {
        &self.levels[l].orbit
    }

    pub(crate) fn level_transversal(&self, l: usize, x: usize) -> Option<&Permutation> {
        self.levels[l].transversal[x].as_ref()
    }

    /// Residue of `g` after sifting through levels `from..`, and the index
    /// of the level where sifting stopped (`depth()` if it went through).
    fn sift_from(&self, g: Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g;
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match &level.inverse[beta] {
                Some(uinv) => h = h.then(uinv),
                None => return (h, l),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    fn insert(&mut self, g: Permutation, level: usize) -> bool {
        let (h, stop) = self.sift_from(g, level);
        if h.is_identity() {
            return false;
        }
        if stop == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for l in level..=stop {
            self.levels[l].gens.push(h.clone());
        }
        for l in (level..=stop).rev() {
            self.close_level(l);
        }
        true
    }

    /// Makes every Schreier generator of level `l` sift through the deeper
    /// levels.
    fn close_level(&mut self, l: usize) {
        loop {
            self.levels[l].extend_orbit();
            let level = &self.levels[l];
            let pending = level
                .orbit
                .iter()
                .enumerate()
                .find(|&(k, _)| level.checked[k] < level.gens.len());
            let Some((k, &beta)) = pending else {
                return;
            };
            let s = level.gens[level.checked[k]].clone();
            let u = level.transversal[beta].as_ref().unwrap();
            let gamma = s.apply(beta);
            let uinv = level.inverse[gamma].as_ref().unwrap();
            let schreier = u.then(&s).then(uinv);
            self.levels[l].checked[k] += 1;
            self.insert(schreier, l + 1);
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift_from(g.clone(), 0);
        h.is_identity()
    }

    /// Every element, in chain order. Only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &x in &level.orbit {
                    next.push(g.then(level.transversal[x].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }

    pub fn orbits(&self) -> VertexPartition {
        let mut label: Vec<usize> = (0..self.degree).collect();
        for v in 0..self.degree {
            if label[v] != v {
                continue;
            }
            let orbit = self.orbit_of(v);
            for &w in &orbit {
                label[w] = v;
            }
        }
        VertexPartition::from_labels(&label)
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut k = 0;
        while k < orbit.len() {
            let y = orbit[k];
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Schreier tree over the generators rooted at `x`: entry `y` holds a
    /// group element mapping `x` to `y`, or `None` outside the orbit.
    pub fn transversal_from(&self, x: usize) -> Vec<Option<Permutation>> {
        let mut out: Vec<Option<Permutation>> = vec![None; self.degree];
        out[x] = Some(Permutation::identity(self.degree));
        let mut queue = vec![x];
        let mut k = 0;
        while k < queue.len() {
            let y = queue[k];
            for g in &self.generators {
                let z = g.apply(y);
                if out[z].is_none() {
                    out[z] = Some(out[y].as_ref().unwrap().then(g));
                    queue.push(z);
                }
            }
            k += 1;
        }
        out
    }

    pub fn is_odd_order(&self) -> bool {
        self.order() % 2 == 1
    }

    /// Walks the derived series until it reaches the trivial group (solvable)
    /// or stops shrinking (not solvable).
    pub fn is_solvable(&self) -> bool {
        let mut current = self.clone();
        loop {
            if current.is_trivial() {
                return true;
            }
            let derived = current.derived_subgroup();
            if derived.order() == current.order() {
                return false;
            }
            current = derived;
        }
    }

    /// Normal closure in `self` of the commutators of its generators.
    fn derived_subgroup(&self) -> PermGroup {
        let gens = &self.generators;
        let mut d = PermGroup::trivial(self.degree);
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                d.push_generator(a.commutator(b));
            }
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut k = 0;
        while k < d.generators.len() {
            let x = d.generators[k].clone();
            k += 1;
            if !seen.insert(x.clone()) {
                continue;
            }
            for g in gens {
                let c = x.conjugate_by(g);
                if !d.contains(&c) {
                    d.push_generator(c);
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c]).unwrap()
    }

    /// Closure by breadth-first multiplication, independent of the chain.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(g) = queue.pop() {
            for s in gens {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        seen
    }

    #[test]
    fn chain_examples() {
        assert_eq!(PermGroup::new(3, vec![cyc(3, &[0, 1, 2])]).unwrap().order(), 3);
        assert_eq!(PermGroup::new(4, vec![]).unwrap().order(), 1);
        let s5 = PermGroup::new(5, vec![cyc(5, &[0, 1]), cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        assert_eq!(s5.order() as usize, closure(5, s5.generators()).len());
        assert_eq!(s5.order(), 120);
        assert_eq!(
            PermGroup::new(3, vec![cyc(4, &[0, 1])]).unwrap_err(),
            PermError::DegreeMismatch {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn membership_matches_closure_s7() {
        let gens = vec![cyc(7, &[0, 1]), cyc(7, &[0, 1, 2, 3, 4, 5, 6])];
        let g = PermGroup::new(7, gens.clone()).unwrap();
        assert_eq!(g.order(), 5040);
        let a7 = PermGroup::new(7, vec![cyc(7, &[0, 1, 2]), cyc(7, &[0, 1, 2, 3, 4, 5, 6])]).unwrap();
        let elems = closure(7, a7.generators());
        assert_eq!(a7.order() as usize, elems.len());
        for x in g.elements() {
            assert_eq!(a7.contains(&x), elems.contains(&x));
        }
    }

    #[test]
    fn elements_are_distinct_members() {
        let g = PermGroup::new(6, vec![cyc(6, &[0, 1, 2]), cyc(6, &[3, 4, 5]), cyc(6, &[0, 3])]).unwrap();
        let elems = g.elements();
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len() as u128, g.order());
        assert_eq!(set, closure(6, g.generators()));
    }

    #[test]
    fn orbit_examples() {
        let g = PermGroup::new(4, vec![cyc(4, &[0, 1, 2])]).unwrap();
        assert_eq!(g.orbits().parts(), &[vec![0, 1, 2], vec![3]]);
        assert!(PermGroup::trivial(5).orbits().is_discrete());
        let t = g.transversal_from(1);
        assert_eq!(t[0].as_ref().unwrap().apply(1), 0);
        assert!(t[3].is_none());
    }

    #[test]
    fn solvability() {
        let c5 = PermGroup::new(5, vec![cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        assert!(c5.is_solvable() && c5.is_odd_order());
        let a5 = PermGroup::new(5, vec![cyc(5, &[0, 1, 2]), cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(!a5.is_solvable());
        let s4 = PermGroup::new(4, vec![cyc(4, &[0, 1]), cyc(4, &[0, 1, 2, 3])]).unwrap();
        assert!(s4.is_solvable() && !s4.is_odd_order());
        assert!(PermGroup::trivial(3).is_solvable());
    }
}
