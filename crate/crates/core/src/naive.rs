//! Slow reference implementations used to cross-check the main engine.
//!
//! The subgroup enumeration here seeds with the closures of all one- and
//! two-element subsets and joins pairs of known subgroups until fixpoint;
//! the constants then come from scanning every subgroup (no conjugacy-class
//! dedup, no socle shortcut, element-wise normality and commutativity
//! checks). Nothing in this module consults the lattice code paths it is
//! meant to check.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Permutation;

struct Cayley {
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Cayley {
    fn build(g: &PermGroup, cap: u64) -> Result<Self> {
        let elements = g.elements(cap)?;
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.mul(b)];
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        Ok(Cayley { elements, mul, inv })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv[g as usize])
    }

    fn close(&self, seeds: &[u32]) -> BitSet {
        let mut set = BitSet::new(self.len());
        set.insert(0);
        let mut queue: Vec<u32> = vec![0];
        for &s in seeds {
            if !set.contains(s as usize) {
                set.insert(s as usize);
                queue.push(s);
            }
        }
        let mut at = 0;
        while at < queue.len() {
            let w = queue[at];
            at += 1;
            for &s in seeds {
                let y = self.mul(s, w);
                if !set.contains(y as usize) {
                    set.insert(y as usize);
                    queue.push(y);
                }
            }
        }
        set
    }
}

/// A subgroup found by the naive enumeration, as an element-id set plus the
/// seed list that produced it.
struct NaiveSubgroup {
    set: BitSet,
    seeds: Vec<u32>,
}

fn enumerate_subgroups(cayley: &Cayley) -> Vec<NaiveSubgroup> {
    let n = cayley.len();
    let mut found: Vec<NaiveSubgroup> = Vec::new();
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let push = |found: &mut Vec<NaiveSubgroup>,
                    seen: &mut HashMap<BitSet, usize>,
                    set: BitSet,
                    seeds: Vec<u32>| {
        if !seen.contains_key(&set) {
            seen.insert(set.clone(), found.len());
            found.push(NaiveSubgroup { set, seeds });
        }
    };

    push(&mut found, &mut seen, cayley.close(&[]), vec![]);
    for a in 1..n as u32 {
        push(&mut found, &mut seen, cayley.close(&[a]), vec![a]);
    }
    for a in 1..n as u32 {
        for b in (a + 1)..n as u32 {
            push(&mut found, &mut seen, cayley.close(&[a, b]), vec![a, b]);
        }
    }
    // pairwise joins until fixpoint
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            if found[j].set.is_subset_of(&found[i].set)
                || found[i].set.is_subset_of(&found[j].set)
            {
                continue;
            }
            let mut seeds = found[i].seeds.clone();
            seeds.extend_from_slice(&found[j].seeds);
            let joined = cayley.close(&seeds);
            push(&mut found, &mut seen, joined, seeds);
        }
        i += 1;
    }
    found
}

fn is_abelian_set(cayley: &Cayley, set: &BitSet) -> bool {
    let ids: Vec<u32> = set.iter().map(|i| i as u32).collect();
    ids.iter().all(|&a| {
        ids.iter()
            .all(|&b| cayley.mul(a, b) == cayley.mul(b, a))
    })
}

fn is_normal_in(cayley: &Cayley, sub: &BitSet, sup: &BitSet) -> bool {
    sup.iter().all(|h| {
        sub.iter()
            .all(|a| sub.contains(cayley.conj(h as u32, a as u32) as usize))
    })
}

/// Constants computed the slow way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaiveConstants {
    pub subgroup_count: usize,
    pub nu: u64,
    pub abar: u64,
    pub j: u64,
    pub jbar: u64,
}

pub fn naive_constants(g: &PermGroup, cap: u64) -> Result<NaiveConstants> {
    let cayley = Cayley::build(g, cap)?;
    let subs = enumerate_subgroups(&cayley);
    let abelian: Vec<bool> = subs
        .iter()
        .map(|s| is_abelian_set(&cayley, &s.set))
        .collect();
    let orders: Vec<u64> = subs.iter().map(|s| s.set.len() as u64).collect();
    let full = orders
        .iter()
        .position(|&o| o == g.order())
        .expect("the whole group is a subgroup of itself");

    let nu_of = |h: usize| -> u64 {
        let mut best = 1u64;
        for (a, sub) in subs.iter().enumerate() {
            if abelian[a]
                && sub.set.is_subset_of(&subs[h].set)
                && is_normal_in(&cayley, &sub.set, &subs[h].set)
                && orders[a] > best
            {
                best = orders[a];
            }
        }
        orders[h] / best
    };
    let max_abelian_in = |h: usize| -> u64 {
        subs.iter()
            .enumerate()
            .filter(|(a, sub)| abelian[*a] && sub.set.is_subset_of(&subs[h].set))
            .map(|(a, _)| orders[a])
            .max()
            .unwrap_or(1)
    };

    let mut j = 1u64;
    let mut jbar = 1u64;
    for (h, order) in orders.iter().enumerate() {
        j = j.max(nu_of(h));
        jbar = jbar.max(order / max_abelian_in(h));
    }
    Ok(NaiveConstants {
        subgroup_count: subs.len(),
        nu: nu_of(full),
        abar: orders[full] / max_abelian_in(full),
        j,
        jbar,
    })
}

/// Subgroup count by closing every subset of size at most three and joining
/// until fixpoint; only sensible for very small groups.
pub fn subgroup_count_by_triples(g: &PermGroup, cap: u64) -> Result<usize> {
    let cayley = Cayley::build(g, cap)?;
    let n = cayley.len();
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    let mut sets: Vec<(BitSet, Vec<u32>)> = Vec::new();
    let push = |sets: &mut Vec<(BitSet, Vec<u32>)>,
                    seen: &mut HashMap<BitSet, ()>,
                    set: BitSet,
                    seeds: Vec<u32>| {
        if seen.insert(set.clone(), ()).is_none() {
            sets.push((set, seeds));
        }
    };
    push(&mut sets, &mut seen, cayley.close(&[]), vec![]);
    for a in 1..n as u32 {
        push(&mut sets, &mut seen, cayley.close(&[a]), vec![a]);
        for b in (a + 1)..n as u32 {
            push(&mut sets, &mut seen, cayley.close(&[a, b]), vec![a, b]);
            for c in (b + 1)..n as u32 {
                push(
                    &mut sets,
                    &mut seen,
                    cayley.close(&[a, b, c]),
                    vec![a, b, c],
                );
            }
        }
    }
    let mut i = 0;
    while i < sets.len() {
        for j in 0..i {
            let mut seeds = sets[i].1.clone();
            seeds.extend_from_slice(&sets[j].1);
            let joined = cayley.close(&seeds);
            push(&mut sets, &mut seen, joined, seeds);
        }
        i += 1;
    }
    Ok(sets.len())
}
