//! Finite permutation groups backed by a base and strong generating set.
//!
//! The chain is built eagerly at construction with deterministic base
//! selection (smallest moved point first), so a `PermGroup` is immutable and
//! freely shareable afterwards. Order comes from the product of basic orbit
//! lengths, membership from sifting.

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct ChainLevel {
    base: usize,
    /// Strong generators living at this level (they fix all earlier bases).
    gens: Vec<Permutation>,
    /// Basic orbit of `base` in discovery order; `orbit[0] == base`.
    orbit: Vec<usize>,
    /// `transversal[p]` maps `base` to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        ChainLevel {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }
}

/// A finite permutation group with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: u64,
}

impl PermGroup {
    /// Builds the group generated by `gens`, constructing the chain eagerly.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::EmptyGenerators);
        };
        let degree = first.degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut group = PermGroup {
            degree,
            generators: gens.clone(),
            levels: Vec::new(),
            order: 1,
        };
        for g in gens {
            if group.store_residue(g) {
                for level in 0..group.levels.len() {
                    group.rebuild_orbit(level);
                }
            }
        }
        group.complete_chain();
        group.order = group.compute_order()?;
        Ok(group)
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_generators(vec![Permutation::identity(degree)])
            .expect("identity generator is always valid")
    }

    /// Sifts `p` through the chain and stores the residue at the level where
    /// stripping stopped (extending the base when it runs past the last
    /// level). Returns whether a new strong generator was stored.
    ///
    /// A generator stored at level `k` fixes the first `k` base points, so
    /// the generating set of the `l`-th stabilizer is the union of the
    /// stored sets at levels `l..`.
    fn store_residue(&mut self, p: Permutation) -> bool {
        let mut h = p;
        let mut level = 0;
        loop {
            if h.is_identity() {
                return false;
            }
            if level == self.levels.len() {
                let base = h
                    .smallest_moved_point()
                    .expect("non-identity permutation moves a point");
                self.levels.push(ChainLevel::new(base, self.degree));
                self.levels[level].gens.push(h);
                return true;
            }
            let base = self.levels[level].base;
            let image = h.apply(base);
            match self.levels[level].transversal[image] {
                Some(u) => {
                    h = u.inverse().mul(&h);
                    level += 1;
                }
                None => {
                    self.levels[level].gens.push(h);
                    return true;
                }
            }
        }
    }

    fn cumulative_gens(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.gens.iter().copied())
            .collect()
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens = self.cumulative_gens(level);
        let base = self.levels[level].base;
        let mut transversal = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![base];
        let mut at = 0;
        while at < orbit.len() {
            let pt = orbit[at];
            let u = transversal[pt].unwrap();
            for s in &gens {
                let v = s.apply(pt);
                if transversal[v].is_none() {
                    transversal[v] = Some(s.mul(&u));
                    orbit.push(v);
                }
            }
            at += 1;
        }
        self.levels[level].orbit = orbit;
        self.levels[level].transversal = transversal;
    }

    /// Runs the Schreier-Sims fixpoint: rebuild every basic orbit from the
    /// cumulative generator sets, then sift every Schreier generator; any
    /// non-trivial residue becomes a new strong generator and the pass
    /// restarts. On exit every Schreier generator sifts to the identity, so
    /// the product of the basic orbit lengths is the group order and
    /// membership testing by sifting is sound.
    fn complete_chain(&mut self) {
        'restart: loop {
            for level in 0..self.levels.len() {
                self.rebuild_orbit(level);
            }
            for level in 0..self.levels.len() {
                let gens = self.cumulative_gens(level);
                let orbit = self.levels[level].orbit.clone();
                for &pt in &orbit {
                    let u = self.levels[level].transversal[pt].unwrap();
                    for s in &gens {
                        let v = s.apply(pt);
                        let t_v = self.levels[level].transversal[v]
                            .expect("orbit is closed");
                        let schreier = t_v.inverse().mul(s).mul(&u);
                        if self.store_residue(schreier) {
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    fn compute_order(&self) -> Result<u64> {
        let mut order: u64 = 1;
        for level in &self.levels {
            order = order
                .checked_mul(level.orbit.len() as u64)
                .ok_or(Error::CapExceeded {
                    what: "group order",
                    size: u64::MAX,
                    cap: u64::MAX,
                })?;
        }
        Ok(order)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, g)| self.generators[i + 1..].iter().all(|h| g.commutes_with(h)))
    }

    /// Strips `p` through the chain; the residue is the identity exactly for
    /// members.
    fn sift(&self, mut p: Permutation) -> Permutation {
        for level in &self.levels {
            let image = p.apply(level.base);
            match &level.transversal[image] {
                Some(u) => p = u.inverse().mul(&p),
                None => return p,
            }
        }
        p
    }

    /// Membership test. Errors on degree mismatch.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.is_member(p))
    }

    /// Membership for a permutation already known to have the right degree.
    pub fn is_member(&self, p: &Permutation) -> bool {
        debug_assert_eq!(p.degree(), self.degree);
        self.sift(*p).is_identity()
    }

    /// The residue left after stripping `p` through the chain.
    pub fn sift_residue(&self, p: Permutation) -> Permutation {
        self.sift(p)
    }

    /// All elements in deterministic chain-traversal order; `[0]` is the
    /// identity. Errors when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                what: "element enumeration",
                size: self.order,
                cap,
            });
        }
        let mut elems = vec![self.identity()];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &pt in &level.orbit {
                let u = level.transversal[pt].as_ref().unwrap();
                for e in &elems {
                    next.push(u.mul(e));
                }
            }
            elems = next;
        }
        Ok(elems)
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.is_member(g))
    }

    /// True when `self` and `other` are the same subgroup of the same
    /// symmetric group.
    pub fn same_group_as(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Relabels every point by `relabel`, i.e. conjugates all generators.
    pub fn relabel(&self, relabel: &Permutation) -> Result<PermGroup> {
        if relabel.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: relabel.degree(),
            });
        }
        PermGroup::from_generators(
            self.generators
                .iter()
                .map(|g| g.conjugate_by(relabel))
                .collect(),
        )
    }

    /// Base points of the chain, in order.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}
