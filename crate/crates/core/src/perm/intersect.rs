use super::{PermError, PermGroup, Permutation};
use crate::tournament::Tournament;

/// Generators for `group ∩ Aut(t)`, colors included.
///
/// Backtracks over the stabilizer chain of `group`, one base image at a
/// time, from the deepest level upwards. A candidate image is rejected as
/// soon as its color, out-degree or orientation towards the base points
/// already imaged disagrees with the base point it replaces. Points already
/// in the orbit of the subgroup found so far are skipped, as are points
/// known to be unreachable.
pub fn intersect_with_aut(group: &PermGroup, t: &Tournament) -> Result<PermGroup, PermError> {
    let n = group.degree();
    if t.n() != n {
        return Err(PermError::DegreeMismatch {
            expected: n,
            found: t.n(),
        });
    }
    if group
        .generators()
        .iter()
        .all(|g| t.is_automorphism(g).unwrap_or(false))
    {
        return Ok(group.clone());
    }
    let base = group.base();
    let depth = group.depth();
    let outdeg: Vec<usize> = (0..n).map(|v| t.out_degree(v)).collect();
    let mut found = PermGroup::trivial(n);

    for l in (0..depth).rev() {
        let b = group.level_base(l);
        let mut reached = vec![false; n];
        let mut dead = vec![false; n];
        for &x in &found.orbit_of(b) {
            reached[x] = true;
        }
        for &gamma in group.level_orbit(l) {
            if reached[gamma] || dead[gamma] {
                continue;
            }
            let u = group.level_transversal(l, gamma).unwrap();
            let mut search = Search {
                group,
                t,
                base: &base,
                outdeg: &outdeg,
                images: base.clone(),
            };
            if !search.admissible(l, gamma) {
                dead[gamma] = true;
                continue;
            }
            search.images[l] = gamma;
            match search.descend(l + 1, u.clone()) {
                Some(g) => {
                    found.add_generator(g)?;
                    for &x in &found.orbit_of(b) {
                        reached[x] = true;
                    }
                }
                None => {
                    for &x in &found.orbit_of(gamma) {
                        dead[x] = true;
                    }
                }
            }
        }
    }
    Ok(found)
}

struct Search<'a> {
    group: &'a PermGroup,
    t: &'a Tournament,
    base: &'a [usize],
    outdeg: &'a [usize],
    /// Images of the base points under the element being built; levels not
    /// yet assigned hold their own base point.
    images: Vec<usize>,
}

impl Search<'_> {
    /// Can base point `m` go to `x`, given the images of levels `< m`?
    fn admissible(&self, m: usize, x: usize) -> bool {
        let b = self.base[m];
        if self.t.color(b) != self.t.color(x) || self.outdeg[b] != self.outdeg[x] {
            return false;
        }
        (0..m).all(|j| self.t.arc(self.base[j], b) == self.t.arc(self.images[j], x))
    }

    /// `prefix` is the product of the transversal elements chosen for
    /// levels `< m`, applied deepest first.
    fn descend(&mut self, m: usize, prefix: Permutation) -> Option<Permutation> {
        if m == self.base.len() {
            return self.t.is_automorphism(&prefix).unwrap().then_some(prefix);
        }
        for &y in self.group.level_orbit(m) {
            let x = prefix.apply(y);
            if !self.admissible(m, x) {
                continue;
            }
            let u = self.group.level_transversal(m, y).unwrap();
            self.images[m] = x;
            if let Some(g) = self.descend(m + 1, u.then(&prefix)) {
                return Some(g);
            }
        }
        self.images[m] = self.base[m];
        None
    }
}
