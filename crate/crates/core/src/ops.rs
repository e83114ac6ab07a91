//! Structural subgroup computations on a single group: centralizers, normal
//! closures, derived subgroups, element conjugacy classes, and the
//! enumeration of normal and minimal normal subgroups.
//!
//! Everything here works through the stabilizer chain; only centralizers and
//! conjugacy classes need an explicit element listing (bounded by
//! `EngineConfig::element_cap`).

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Subgroup of all elements of `g` commuting with every element of `fixed`,
/// by filtration over the element list.
pub fn centralizer(g: &PermGroup, fixed: &[Permutation], cfg: &EngineConfig) -> Result<PermGroup> {
    for s in fixed {
        if !g.contains(s)? {
            return Err(Error::NotAMember {
                element: s.to_string(),
            });
        }
    }
    let elements = g.elements(cfg.element_cap)?;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut sub = PermGroup::trivial(g.degree());
    for e in elements {
        if fixed.iter().all(|s| e.commutes_with(s)) && !sub.is_member(&e) {
            gens.push(e);
            sub = PermGroup::from_generators(gens.clone())?;
        }
    }
    Ok(sub)
}

/// Center of the group.
pub fn center(g: &PermGroup, cfg: &EngineConfig) -> Result<PermGroup> {
    centralizer(g, g.generators(), cfg)
}

/// Smallest normal subgroup of `g` containing `seed`, by the
/// closure-under-conjugation fixpoint.
pub fn normal_closure(g: &PermGroup, seed: &[Permutation]) -> Result<PermGroup> {
    for s in seed {
        if !g.contains(s)? {
            return Err(Error::NotAMember {
                element: s.to_string(),
            });
        }
    }
    let mut gens: Vec<Permutation> = seed.iter().copied().filter(|p| !p.is_identity()).collect();
    if gens.is_empty() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let mut sub = PermGroup::from_generators(gens.clone())?;
    loop {
        let mut grew = false;
        let snapshot = gens.clone();
        for conjugator in g.generators() {
            for t in &snapshot {
                let c = t.conjugate_by(conjugator);
                if !sub.is_member(&c) {
                    gens.push(c);
                    sub = PermGroup::from_generators(gens.clone())?;
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(sub);
        }
    }
}

/// Derived subgroup: the normal closure of all generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let gens = g.generators();
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    normal_closure(g, &commutators)
}

/// One representative per conjugacy class of elements, in element-enumeration
/// order (so the identity is first).
pub fn conjugacy_class_reps(g: &PermGroup, cfg: &EngineConfig) -> Result<Vec<Permutation>> {
    let elements = g.elements(cfg.element_cap)?;
    let index: std::collections::HashMap<Permutation, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i))
        .collect();
    let mut seen = vec![false; elements.len()];
    let mut reps = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        reps.push(elements[start]);
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(at) = stack.pop() {
            for conjugator in g.generators() {
                let c = elements[at].conjugate_by(conjugator);
                let ci = index[&c];
                if !seen[ci] {
                    seen[ci] = true;
                    stack.push(ci);
                }
            }
        }
    }
    Ok(reps)
}

/// All normal subgroups of `g`, including the trivial subgroup and `g`
/// itself, sorted by order.
///
/// Every normal subgroup is the join of the normal closures of the element
/// conjugacy classes it contains, so the pairwise-join fixpoint over the
/// single-class closures is complete.
pub fn normal_subgroups(g: &PermGroup, cfg: &EngineConfig) -> Result<Vec<PermGroup>> {
    let mut normals: Vec<PermGroup> = vec![PermGroup::trivial(g.degree())];
    let push_unique = |list: &mut Vec<PermGroup>, candidate: PermGroup| {
        if !list.iter().any(|n| n.same_group_as(&candidate)) {
            list.push(candidate);
        }
    };
    for rep in conjugacy_class_reps(g, cfg)? {
        if rep.is_identity() {
            continue;
        }
        cfg.check_deadline("normal subgroup enumeration")?;
        push_unique(&mut normals, normal_closure(g, &[rep])?);
    }
    let mut i = 0;
    while i < normals.len() {
        cfg.check_deadline("normal subgroup enumeration")?;
        for j in 0..i {
            let mut gens = normals[i].generators().to_vec();
            gens.extend_from_slice(normals[j].generators());
            let join = PermGroup::from_generators(gens)?;
            push_unique(&mut normals, join);
        }
        i += 1;
    }
    normals.sort_by_key(|n| n.order());
    Ok(normals)
}

/// Minimal normal subgroups: the inclusion-minimal members among the normal
/// closures of single class representatives.
pub fn minimal_normal_subgroups(g: &PermGroup, cfg: &EngineConfig) -> Result<Vec<PermGroup>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    let mut closures: Vec<PermGroup> = Vec::new();
    for rep in conjugacy_class_reps(g, cfg)? {
        if rep.is_identity() {
            continue;
        }
        cfg.check_deadline("minimal normal subgroups")?;
        let ncl = normal_closure(g, &[rep])?;
        if !closures.iter().any(|c| c.same_group_as(&ncl)) {
            closures.push(ncl);
        }
    }
    let minimal: Vec<PermGroup> = closures
        .iter()
        .filter(|m| {
            !closures
                .iter()
                .any(|other| other.order() < m.order() && other.is_subgroup_of(m))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn centralizer_of_three_cycle_in_s3() {
        let s3 = construct::symmetric(3).unwrap();
        let r = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let c = centralizer(&s3, &[r], &cfg()).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.is_member(&r));
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let s4 = construct::symmetric(4).unwrap();
        let c = centralizer(&s4, &[s4.identity()], &cfg()).unwrap();
        assert_eq!(c.order(), 24);
    }

    #[test]
    fn centralizer_of_double_transposition_in_a5() {
        let a5 = construct::alternating(5).unwrap();
        let dt = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(centralizer(&a5, &[dt], &cfg()).unwrap().order(), 4);
    }

    #[test]
    fn centralizer_requires_membership() {
        let a5 = construct::alternating(5).unwrap();
        let odd = Permutation::from_cycles(5, &[vec![0, 1]]).unwrap();
        assert!(centralizer(&a5, &[odd], &cfg()).is_err());
    }

    #[test]
    fn center_of_heisenberg_has_order_three() {
        let h = construct::heisenberg(3).unwrap();
        assert_eq!(center(&h, &cfg()).unwrap().order(), 3);
    }

    #[test]
    fn center_of_simple_and_abelian_groups() {
        let a5 = construct::alternating(5).unwrap();
        assert_eq!(center(&a5, &cfg()).unwrap().order(), 1);
        let c6 = construct::cyclic(6).unwrap();
        assert_eq!(center(&c6, &cfg()).unwrap().order(), 6);
    }

    #[test]
    fn normal_closure_of_three_cycle_in_s5_is_a5() {
        let s5 = construct::symmetric(5).unwrap();
        let r = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let ncl = normal_closure(&s5, &[r]).unwrap();
        assert_eq!(ncl.order(), 60);
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let s5 = construct::symmetric(5).unwrap();
        let ncl = normal_closure(&s5, &[s5.identity()]).unwrap();
        assert!(ncl.is_trivial());
    }

    #[test]
    fn normal_closure_in_swap_extension_covers_both_blocks() {
        let a5 = construct::alternating(5).unwrap();
        let g = construct::swap_extension(&a5).unwrap();
        let left = a5.generators()[0].extend_degree(10).unwrap();
        let ncl = normal_closure(&g, &[left]).unwrap();
        assert_eq!(ncl.order(), 3600);
    }

    #[test]
    fn derived_subgroups() {
        assert!(derived_subgroup(&construct::cyclic(12).unwrap())
            .unwrap()
            .is_trivial());
        assert_eq!(
            derived_subgroup(&construct::symmetric(5).unwrap())
                .unwrap()
                .order(),
            60
        );
        assert_eq!(
            derived_subgroup(&construct::dihedral(6).unwrap())
                .unwrap()
                .order(),
            3
        );
    }

    #[test]
    fn lagrange_for_structural_subgroups() {
        let groups = [
            construct::symmetric(4).unwrap(),
            construct::dihedral(6).unwrap(),
            construct::heisenberg(3).unwrap(),
        ];
        for g in &groups {
            for sub in [
                center(g, &cfg()).unwrap(),
                derived_subgroup(g).unwrap(),
                normal_closure(g, &[g.generators()[0]]).unwrap(),
            ] {
                assert_eq!(g.order() % sub.order(), 0);
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_s4() {
        let s4 = construct::symmetric(4).unwrap();
        // 1, 2, 2+2, 3, 4 cycle types
        assert_eq!(conjugacy_class_reps(&s4, &cfg()).unwrap().len(), 5);
    }

    #[test]
    fn normal_subgroups_of_s5() {
        let s5 = construct::symmetric(5).unwrap();
        let normals = normal_subgroups(&s5, &cfg()).unwrap();
        let orders: Vec<u64> = normals.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 60, 120]);
    }

    #[test]
    fn normal_subgroups_of_abelian_groups_are_all_subgroups() {
        let c6 = construct::cyclic(6).unwrap();
        assert_eq!(normal_subgroups(&c6, &cfg()).unwrap().len(), 4);
    }

    #[test]
    fn rotations_are_normal_in_dihedral() {
        let d6 = construct::dihedral(6).unwrap();
        let normals = normal_subgroups(&d6, &cfg()).unwrap();
        assert!(normals.iter().any(|n| n.order() == 6 && n.is_abelian()));
    }

    #[test]
    fn minimal_normals_of_simple_group() {
        let a5 = construct::alternating(5).unwrap();
        let mins = minimal_normal_subgroups(&a5, &cfg()).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 60);
    }

    #[test]
    fn minimal_normals_of_klein_four() {
        let v4 = construct::dihedral(2).unwrap();
        let mins = minimal_normal_subgroups(&v4, &cfg()).unwrap();
        assert_eq!(mins.len(), 3);
        assert!(mins.iter().all(|m| m.order() == 2));
    }

    #[test]
    fn minimal_normals_of_swap_extension_are_nonabelian() {
        let a5 = construct::alternating(5).unwrap();
        let g = construct::swap_extension(&a5).unwrap();
        let mins = minimal_normal_subgroups(&g, &cfg()).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 3600);
        assert!(!mins[0].is_abelian());
    }

    #[test]
    fn minimal_normals_sit_inside_normals() {
        let s4 = construct::symmetric(4).unwrap();
        let normals = normal_subgroups(&s4, &cfg()).unwrap();
        let mins = minimal_normal_subgroups(&s4, &cfg()).unwrap();
        for m in &mins {
            assert!(normals.iter().any(|n| n.same_group_as(m)));
        }
        // every nontrivial normal subgroup contains a minimal one
        for n in normals.iter().filter(|n| !n.is_trivial()) {
            assert!(mins.iter().any(|m| m.is_subgroup_of(n)));
        }
    }
}
