//! Subgroup enumeration at desk scale: the complete lattice under
//! `order_cap`, conjugacy classes of subgroups, and a branch-and-bound search
//! for maximal abelian subgroups that also works above the lattice cap.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Deterministic element enumeration of a group with id lookup and product
/// arithmetic. A dense multiplication table is attached for lattice work;
/// without it products fall back to compose-and-hash.
#[derive(Debug)]
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inv: Vec<u32>,
    mul: Option<Vec<u32>>,
}

impl ElementTable {
    pub fn build(g: &PermGroup, cap: u64, with_mul_table: bool) -> Result<Self> {
        let elements = g.elements(cap)?;
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        let inv: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mul = if with_mul_table {
            let mut table = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    table[i * n + j] = index[&a.mul(b)];
                }
            }
            Some(table)
        } else {
            None
        };
        Ok(ElementTable {
            elements,
            index,
            inv,
            mul,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn perm(&self, id: u32) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul_ids(&self, a: u32, b: u32) -> u32 {
        match &self.mul {
            Some(table) => table[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].mul(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv_id(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g * x * g^-1` on ids.
    #[inline]
    pub fn conj_ids(&self, g: u32, x: u32) -> u32 {
        self.mul_ids(self.mul_ids(g, x), self.inv_id(g))
    }

    #[inline]
    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul_ids(a, b) == self.mul_ids(b, a)
    }

    /// Closes `seed` (already a subgroup, possibly trivial) together with
    /// `extra` under products. `seed_gens` generate `seed`.
    fn join_closure(&self, seed: &BitSet, seed_gens: &[u32], extra: u32) -> BitSet {
        let mut set = seed.clone();
        set.insert(0);
        set.insert(extra as usize);
        let mut gens: Vec<u32> = seed_gens.to_vec();
        gens.push(extra);
        let mut queue: Vec<u32> = set.iter().map(|i| i as u32).collect();
        let mut at = 0;
        while at < queue.len() {
            let w = queue[at];
            at += 1;
            for &g in &gens {
                let y = self.mul_ids(g, w);
                if !set.contains(y as usize) {
                    set.insert(y as usize);
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Closure of a single element: the cyclic subgroup it generates.
    fn cyclic_closure(&self, e: u32) -> BitSet {
        let mut set = BitSet::new(self.len());
        set.insert(0);
        let mut cur = e;
        while cur != 0 {
            set.insert(cur as usize);
            cur = self.mul_ids(e, cur);
        }
        set
    }

    /// Closure of an arbitrary generator list.
    pub fn closure_of(&self, gens: &[u32]) -> BitSet {
        let mut set = BitSet::new(self.len());
        set.insert(0);
        let mut acc: Vec<u32> = Vec::new();
        for &g in gens {
            set = self.join_closure(&set, &acc, g);
            acc.push(g);
        }
        set
    }
}

/// One subgroup of the parent, as a set of element ids.
#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub elements: BitSet,
    pub order: u64,
    pub gen_ids: Vec<u32>,
    pub is_abelian: bool,
    pub is_normal_in_parent: bool,
}

/// The complete subgroup lattice of a group, with conjugacy classes of
/// subgroups. Records are sealed in canonical order: ascending order, then
/// lexicographically least element-id set.
#[derive(Debug)]
pub struct SubgroupLattice {
    table: ElementTable,
    degree: usize,
    group_order: u64,
    records: Vec<SubgroupRecord>,
    record_index: HashMap<BitSet, u32>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl SubgroupLattice {
    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn records(&self) -> &[SubgroupRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Conjugacy classes of subgroups, each a sorted list of record ids.
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, record: u32) -> u32 {
        self.class_of[record as usize]
    }

    /// Smallest record id in each class, ascending.
    pub fn class_reps(&self) -> Vec<u32> {
        let mut reps: Vec<u32> = self.classes.iter().map(|c| c[0]).collect();
        reps.sort_unstable();
        reps
    }

    pub fn is_sub(&self, a: u32, b: u32) -> bool {
        self.records[a as usize]
            .elements
            .is_subset_of(&self.records[b as usize].elements)
    }

    pub fn record_id_of_set(&self, set: &BitSet) -> Option<u32> {
        self.record_index.get(set).copied()
    }

    /// Materializes a record as a standalone group on the parent's points.
    pub fn record_group(&self, record: u32) -> Result<PermGroup> {
        let rec = &self.records[record as usize];
        if rec.gen_ids.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::from_generators(rec.gen_ids.iter().map(|&i| *self.table.perm(i)).collect())
    }

    /// All (sub, super) containment pairs; quadratic, intended for reports
    /// and tests at small orders.
    pub fn inclusion_pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs = Vec::new();
        for a in 0..self.records.len() as u32 {
            for b in 0..self.records.len() as u32 {
                if a != b && self.is_sub(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }
}

/// Enumerates the complete subgroup lattice by seeding with all cyclic
/// subgroups and joining each known subgroup with each cyclic subgroup until
/// fixpoint.
pub fn all_subgroups(g: &PermGroup, cfg: &EngineConfig) -> Result<SubgroupLattice> {
    if g.order() > cfg.order_cap {
        return Err(Error::CapExceeded {
            what: "subgroup lattice",
            size: g.order(),
            cap: cfg.order_cap,
        });
    }
    let table = ElementTable::build(g, cfg.order_cap, true)?;
    let n = table.len();

    let trivial = {
        let mut set = BitSet::new(n);
        set.insert(0);
        set
    };
    let mut sets: Vec<(BitSet, Vec<u32>)> = vec![(trivial, Vec::new())];
    let mut seen: HashMap<BitSet, u32> = HashMap::new();
    seen.insert(sets[0].0.clone(), 0);

    // cyclic seeds
    let mut cyclics: Vec<u32> = Vec::new();
    for e in 1..n as u32 {
        let set = table.cyclic_closure(e);
        if !seen.contains_key(&set) {
            seen.insert(set.clone(), sets.len() as u32);
            sets.push((set, vec![e]));
            cyclics.push(e);
        }
    }
    // keep every nontrivial element available as a join candidate, not just
    // the generators of distinct cyclic subgroups: joining with <e> only
    // needs one generator per cyclic subgroup, which `cyclics` provides

    let mut at = 0;
    let mut since_deadline_check = 0usize;
    while at < sets.len() {
        let (set, gens) = sets[at].clone();
        for &c in &cyclics {
            since_deadline_check += 1;
            if since_deadline_check.is_multiple_of(512) {
                cfg.check_deadline("subgroup lattice")?;
            }
            if set.contains(c as usize) {
                continue;
            }
            let joined = table.join_closure(&set, &gens, c);
            if !seen.contains_key(&joined) {
                let mut joined_gens = gens.clone();
                joined_gens.push(c);
                seen.insert(joined.clone(), sets.len() as u32);
                sets.push((joined, joined_gens));
            }
        }
        at += 1;
    }

    seal_lattice(g, table, sets, cfg)
}

fn seal_lattice(
    g: &PermGroup,
    table: ElementTable,
    mut sets: Vec<(BitSet, Vec<u32>)>,
    cfg: &EngineConfig,
) -> Result<SubgroupLattice> {
    sets.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.cmp_ids(&b.0))
    });

    let parent_gen_ids: Vec<u32> = g
        .generators()
        .iter()
        .map(|p| table.id_of(p).expect("generators are elements"))
        .collect();

    let mut records = Vec::with_capacity(sets.len());
    let mut record_index = HashMap::with_capacity(sets.len());
    for (idx, (set, gens)) in sets.into_iter().enumerate() {
        let gen_ids = reduce_generators(&table, &set, gens);
        let is_abelian = gen_ids
            .iter()
            .enumerate()
            .all(|(i, &a)| gen_ids[i + 1..].iter().all(|&b| table.commute(a, b)));
        let is_normal_in_parent = parent_gen_ids.iter().all(|&pg| {
            gen_ids
                .iter()
                .all(|&s| set.contains(table.conj_ids(pg, s) as usize))
        });
        record_index.insert(set.clone(), idx as u32);
        records.push(SubgroupRecord {
            order: set.len() as u64,
            elements: set,
            gen_ids,
            is_abelian,
            is_normal_in_parent,
        });
    }

    // conjugacy classes of subgroups: orbits under conjugation by the
    // parent's generators
    let mut class_of = vec![u32::MAX; records.len()];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for start in 0..records.len() as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        cfg.check_deadline("subgroup classes")?;
        let class_id = classes.len() as u32;
        let mut members = vec![start];
        class_of[start as usize] = class_id;
        let mut stack = vec![start];
        while let Some(rec) = stack.pop() {
            for &pg in &parent_gen_ids {
                let conj_set = BitSet::from_ids(
                    records[rec as usize].elements.capacity(),
                    records[rec as usize]
                        .elements
                        .iter()
                        .map(|x| table.conj_ids(pg, x as u32) as usize),
                );
                let other = record_index[&conj_set];
                if class_of[other as usize] == u32::MAX {
                    class_of[other as usize] = class_id;
                    members.push(other);
                    stack.push(other);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }

    Ok(SubgroupLattice {
        degree: g.degree(),
        group_order: g.order(),
        table,
        records,
        record_index,
        classes,
        class_of,
    })
}

/// Greedy removal pass: drop any generator whose removal keeps the closure.
fn reduce_generators(table: &ElementTable, set: &BitSet, gens: Vec<u32>) -> Vec<u32> {
    let mut gens = gens;
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let mut reduced = gens.clone();
        reduced.remove(i);
        if table.closure_of(&reduced) == *set {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// Maximum order of an abelian subgroup with an attaining generator list.
///
/// Branch and bound over commuting sets: a partial abelian generating set is
/// only extended by later elements of its centralizer, and a branch is cut
/// when the centralizer of the chosen generators can no longer beat the
/// incumbent.
pub fn max_abelian_order(g: &PermGroup, cfg: &EngineConfig) -> Result<(u64, Vec<Permutation>)> {
    if g.order() > cfg.element_cap {
        return Err(Error::CapExceeded {
            what: "maximal abelian search",
            size: g.order(),
            cap: cfg.element_cap,
        });
    }
    let table = ElementTable::build(g, cfg.element_cap, g.order() <= cfg.order_cap)?;
    let n = table.len();

    // per-element centralizer bitsets
    let mut cent: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for i in 0..n {
        cent[i].insert(i);
        let pi = *table.perm(i as u32);
        for j in i + 1..n {
            if pi.commutes_with(table.perm(j as u32)) {
                cent[i].insert(j);
                cent[j].insert(i);
            }
        }
    }

    // incumbent: the best cyclic subgroup
    let mut best_set = table.cyclic_closure(0);
    let mut best_gens: Vec<u32> = Vec::new();
    for e in 1..n as u32 {
        let set = table.cyclic_closure(e);
        if better(&set, &best_set) {
            best_set = set;
            best_gens = vec![e];
        }
    }

    struct Search<'a> {
        table: &'a ElementTable,
        cent: &'a [BitSet],
        cfg: &'a EngineConfig,
        best_set: BitSet,
        best_gens: Vec<u32>,
        nodes: usize,
    }

    impl Search<'_> {
        fn descend(
            &mut self,
            closure: &BitSet,
            gens: &[u32],
            commuting: &BitSet,
            last: u32,
        ) -> Result<()> {
            self.nodes += 1;
            if self.nodes.is_multiple_of(1024) {
                self.cfg.check_deadline("maximal abelian search")?;
            }
            for x in commuting.iter() {
                let x = x as u32;
                if x <= last || closure.contains(x as usize) {
                    continue;
                }
                let next_commuting = commuting.intersection(&self.cent[x as usize]);
                // everything reachable from here stays inside next_commuting
                if next_commuting.len() as u64 <= self.best_set.len() as u64 {
                    continue;
                }
                let next_closure = self.table.join_closure(closure, gens, x);
                let mut next_gens = gens.to_vec();
                next_gens.push(x);
                if better(&next_closure, &self.best_set) {
                    self.best_set = next_closure.clone();
                    self.best_gens = next_gens.clone();
                }
                if next_commuting.len() > next_closure.len() {
                    self.descend(&next_closure, &next_gens, &next_commuting, x)?;
                }
            }
            Ok(())
        }
    }

    fn better(candidate: &BitSet, incumbent: &BitSet) -> bool {
        match candidate.len().cmp(&incumbent.len()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => candidate.cmp_ids(incumbent) == std::cmp::Ordering::Less,
        }
    }

    let mut search = Search {
        table: &table,
        cent: &cent,
        cfg,
        best_set,
        best_gens,
        nodes: 0,
    };

    let mut root_closure = BitSet::new(n);
    root_closure.insert(0);
    let mut everything = BitSet::new(n);
    for i in 0..n {
        everything.insert(i);
    }
    // `last` of 0 skips only the identity as a first generator
    search.descend(&root_closure, &[], &everything, 0)?;

    let order = search.best_set.len() as u64;
    let witness = search
        .best_gens
        .iter()
        .map(|&i| *table.perm(i))
        .collect();
    Ok((order, witness))
}
