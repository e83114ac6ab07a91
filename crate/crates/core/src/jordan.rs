//! Jordan data for a single finite group: the minimal index of a normal
//! abelian subgroup, the minimal index of an abelian subgroup, the constants
//! J and J-bar, the Chermak-Delgado maximal-measure set, and the lemma
//! verifiers used by the case ledger.
//!
//! J of a finite group G is the maximum over subgroups H of the minimal index
//! of a normal abelian subgroup of H; groups within the lattice cap get the
//! exact value by full enumeration, larger groups go through the socle
//! shortcut (if every minimal normal subgroup is non-abelian, the only normal
//! abelian subgroup is trivial) or an honest bound pair.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::ops;
use crate::perm::Permutation;
use crate::subgroups::{self, SubgroupLattice};

/// An exact constant or an honest bound pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact { exact: u64 },
    Bounds { lower: u64, upper: u64 },
}

impl Value {
    pub fn exact(&self) -> Option<u64> {
        match self {
            Value::Exact { exact } => Some(*exact),
            Value::Bounds { .. } => None,
        }
    }

    pub fn upper(&self) -> u64 {
        match self {
            Value::Exact { exact } => *exact,
            Value::Bounds { upper, .. } => *upper,
        }
    }

    pub fn lower(&self) -> u64 {
        match self {
            Value::Exact { exact } => *exact,
            Value::Bounds { lower, .. } => *lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertMethod {
    FullEnumeration,
    SocleShortcut,
    BoundOnly,
}

impl std::fmt::Display for CertMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CertMethod::FullEnumeration => "full-enumeration",
            CertMethod::SocleShortcut => "socle-shortcut",
            CertMethod::BoundOnly => "bound-only",
        };
        f.write_str(s)
    }
}

/// Generators of an attaining subgroup, in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupWitness {
    pub order: u64,
    pub generators: Vec<String>,
}

impl SubgroupWitness {
    fn from_group(g: &PermGroup) -> Self {
        SubgroupWitness {
            order: g.order(),
            generators: witness_strings(g.generators()),
        }
    }
}

fn witness_strings(perms: &[Permutation]) -> Vec<String> {
    let strings: Vec<String> = perms
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| p.to_string())
        .collect();
    if strings.is_empty() {
        vec!["()".to_string()]
    } else {
        strings
    }
}

/// A pair (subgroup, distinguished abelian subgroup) attaining a constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub subgroup: SubgroupWitness,
    pub abelian: SubgroupWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleEntry {
    pub order: u64,
    pub is_abelian: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JordanReport {
    pub label: String,
    pub degree: usize,
    pub order: u64,
    /// Minimal index of a normal abelian subgroup of the whole group.
    pub nu: u64,
    pub nu_witness: SubgroupWitness,
    /// Minimal index of an abelian subgroup (order / max abelian order);
    /// omitted when the search was skipped above the lattice cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abar: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abar_witness: Option<SubgroupWitness>,
    pub j: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_witness: Option<PairWitness>,
    pub jbar: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jbar_witness: Option<PairWitness>,
    pub method: CertMethod,
    /// Orders and abelian flags of the minimal normal subgroups, when the
    /// socle shortcut certified the result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub socle_certificate: Option<Vec<SocleEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl JordanReport {
    pub fn strip_timing(mut self) -> Self {
        self.timing_ms = None;
        self
    }
}

pub fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

/// Outcome of the nu computation on a bare group.
pub struct NuOutcome {
    pub value: u64,
    pub witness: PermGroup,
    pub socle_certificate: Option<Vec<SocleEntry>>,
}

/// Minimal index of a normal abelian subgroup, with the attaining subgroup.
///
/// If every minimal normal subgroup is non-abelian the only normal abelian
/// subgroup is trivial (any nontrivial one would contain an abelian minimal
/// normal subgroup), so nu equals the group order and the minimal normal
/// closures are returned as the certificate.
pub fn nu(g: &PermGroup, cfg: &EngineConfig) -> Result<NuOutcome> {
    let minimal = ops::minimal_normal_subgroups(g, cfg)?;
    if !minimal.is_empty() && minimal.iter().all(|m| !m.is_abelian()) {
        let certificate = minimal
            .iter()
            .map(|m| SocleEntry {
                order: m.order(),
                is_abelian: m.is_abelian(),
            })
            .collect();
        return Ok(NuOutcome {
            value: g.order(),
            witness: PermGroup::trivial(g.degree()),
            socle_certificate: Some(certificate),
        });
    }
    let normals = ops::normal_subgroups(g, cfg)?;
    let witness = normals
        .iter()
        .filter(|n| n.is_abelian())
        .max_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| element_key(b).cmp(&element_key(a)))
        })
        .cloned()
        .expect("the trivial subgroup is always normal abelian");
    Ok(NuOutcome {
        value: g.order() / witness.order(),
        witness,
        socle_certificate: None,
    })
}

/// Sorted element list used only to break ties between same-order witnesses.
fn element_key(g: &PermGroup) -> Vec<Permutation> {
    let mut elems = g
        .elements(u64::MAX)
        .expect("witness groups are small");
    elems.sort();
    elems
}

/// `|G| / max_abelian_order(G)` with the attaining abelian subgroup.
pub fn abar_index(g: &PermGroup, cfg: &EngineConfig) -> Result<(u64, PermGroup)> {
    let (order, gens) = subgroups::max_abelian_order(g, cfg)?;
    let witness = if gens.is_empty() {
        PermGroup::trivial(g.degree())
    } else {
        PermGroup::from_generators(gens)?
    };
    debug_assert_eq!(witness.order(), order);
    Ok((g.order() / order, witness))
}

/// Lattice-based helpers for per-subgroup quantities.
mod lattice_math {
    use super::*;

    /// Minimal index of an abelian subgroup of `h` that is normal in `h`,
    /// with the attaining record.
    pub fn nu_of_record(lat: &SubgroupLattice, h: u32) -> (u64, u32) {
        let table = lat.table();
        let h_rec = &lat.records()[h as usize];
        let mut best: Option<u32> = None;
        for (idx, a) in lat.records().iter().enumerate() {
            if !a.is_abelian
                || a.order > h_rec.order
                || !a.elements.is_subset_of(&h_rec.elements)
            {
                continue;
            }
            let normal_in_h = h_rec.gen_ids.iter().all(|&hg| {
                a.gen_ids
                    .iter()
                    .all(|&ag| a.elements.contains(table.conj_ids(hg, ag) as usize))
            });
            if !normal_in_h {
                continue;
            }
            // records are sorted (order asc, lex asc), so the first record of
            // a given order is the canonical witness
            if best.is_none_or(|b| a.order > lat.records()[b as usize].order) {
                best = Some(idx as u32);
            }
        }
        let best = best.expect("the trivial subgroup is normal in everything");
        (h_rec.order / lat.records()[best as usize].order, best)
    }

    /// Largest abelian subgroup record inside `h`.
    pub fn max_abelian_record(lat: &SubgroupLattice, h: u32) -> u32 {
        let h_rec = &lat.records()[h as usize];
        let mut best: Option<u32> = None;
        for (idx, a) in lat.records().iter().enumerate() {
            if a.is_abelian
                && a.order <= h_rec.order
                && a.elements.is_subset_of(&h_rec.elements)
                && best.is_none_or(|b| a.order > lat.records()[b as usize].order)
            {
                best = Some(idx as u32);
            }
        }
        best.expect("the trivial subgroup is abelian")
    }

    pub fn record_witness(lat: &SubgroupLattice, rec: u32) -> SubgroupWitness {
        let record = &lat.records()[rec as usize];
        let perms: Vec<Permutation> = record
            .gen_ids
            .iter()
            .map(|&i| *lat.table().perm(i))
            .collect();
        SubgroupWitness {
            order: record.order,
            generators: super::witness_strings(&perms),
        }
    }
}

pub use lattice_math::{max_abelian_record, nu_of_record, record_witness};

/// Full Jordan report for a group. Within the lattice cap everything is
/// exact by full enumeration; above it the socle shortcut either certifies
/// J = |G| or the report degrades to honest bounds.
pub fn jordan_report(g: &PermGroup, label: &str, cfg: &EngineConfig) -> Result<JordanReport> {
    let started = std::time::Instant::now();
    let mut report = if g.order() <= cfg.order_cap {
        report_by_enumeration(g, label, cfg)?
    } else {
        report_by_shortcut(g, label, cfg)?
    };
    report.timing_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

fn report_by_enumeration(g: &PermGroup, label: &str, cfg: &EngineConfig) -> Result<JordanReport> {
    let lat = subgroups::all_subgroups(g, cfg)?;
    let full = (lat.len() - 1) as u32;
    debug_assert_eq!(lat.records()[full as usize].order, g.order());

    let (nu_value, nu_record) = nu_of_record(&lat, full);

    let abar_record = max_abelian_record(&lat, full);
    let abar_value = g.order() / lat.records()[abar_record as usize].order;

    let mut j_best: Option<(u64, u32, u32)> = None; // (nu, subgroup, abelian)
    let mut jbar_best: Option<(u64, u32, u32)> = None;
    for rep in lat.class_reps() {
        cfg.check_deadline("jordan maximization")?;
        let h_order = lat.records()[rep as usize].order;
        let (nu_h, a_rec) = nu_of_record(&lat, rep);
        let replace = match j_best {
            None => true,
            Some((best, best_h, _)) => {
                nu_h > best
                    || (nu_h == best && h_order > lat.records()[best_h as usize].order)
            }
        };
        if replace {
            j_best = Some((nu_h, rep, a_rec));
        }
        let ab_rec = max_abelian_record(&lat, rep);
        let abar_h = h_order / lat.records()[ab_rec as usize].order;
        let replace = match jbar_best {
            None => true,
            Some((best, best_h, _)) => {
                abar_h > best
                    || (abar_h == best && h_order > lat.records()[best_h as usize].order)
            }
        };
        if replace {
            jbar_best = Some((abar_h, rep, ab_rec));
        }
    }
    let (j, j_sub, j_ab) = j_best.expect("lattice has at least one class");
    let (jbar, jbar_sub, jbar_ab) = jbar_best.expect("lattice has at least one class");

    Ok(JordanReport {
        label: label.to_string(),
        degree: g.degree(),
        order: g.order(),
        nu: nu_value,
        nu_witness: record_witness(&lat, nu_record),
        abar: Some(abar_value),
        abar_witness: Some(record_witness(&lat, abar_record)),
        j: Value::Exact { exact: j },
        j_witness: Some(PairWitness {
            subgroup: record_witness(&lat, j_sub),
            abelian: record_witness(&lat, j_ab),
        }),
        jbar: Value::Exact { exact: jbar },
        jbar_witness: Some(PairWitness {
            subgroup: record_witness(&lat, jbar_sub),
            abelian: record_witness(&lat, jbar_ab),
        }),
        method: CertMethod::FullEnumeration,
        socle_certificate: None,
        timing_ms: None,
    })
}

fn report_by_shortcut(g: &PermGroup, label: &str, cfg: &EngineConfig) -> Result<JordanReport> {
    let outcome = nu(g, cfg)?;
    let nu_witness = SubgroupWitness::from_group(&outcome.witness);
    if outcome.value == g.order() {
        // nu(H) <= |H| <= |G| = nu(G) for every subgroup H, so J is exact
        let j = g.order();
        return Ok(JordanReport {
            label: label.to_string(),
            degree: g.degree(),
            order: g.order(),
            nu: outcome.value,
            nu_witness: nu_witness.clone(),
            abar: None,
            abar_witness: None,
            j: Value::Exact { exact: j },
            j_witness: Some(PairWitness {
                subgroup: SubgroupWitness::from_group(g),
                abelian: nu_witness,
            }),
            jbar: Value::Bounds {
                lower: ceil_sqrt(j),
                upper: j,
            },
            jbar_witness: None,
            method: CertMethod::SocleShortcut,
            socle_certificate: outcome.socle_certificate,
            timing_ms: None,
        });
    }
    Ok(JordanReport {
        label: label.to_string(),
        degree: g.degree(),
        order: g.order(),
        nu: outcome.value,
        nu_witness,
        abar: None,
        abar_witness: None,
        j: Value::Bounds {
            lower: outcome.value,
            upper: g.order(),
        },
        j_witness: None,
        jbar: Value::Bounds {
            lower: ceil_sqrt(outcome.value),
            upper: g.order(),
        },
        jbar_witness: None,
        method: CertMethod::BoundOnly,
        socle_certificate: None,
        timing_ms: None,
    })
}

/// Exact J, or an error when only bounds are certifiable.
pub fn exact_j(g: &PermGroup, cfg: &EngineConfig) -> Result<u64> {
    let report = jordan_report(g, "", cfg)?;
    report.j.exact().ok_or(Error::CapExceeded {
        what: "exact jordan constant",
        size: g.order(),
        cap: cfg.order_cap,
    })
}

/// Exact J-bar, or an error when only bounds are certifiable.
pub fn exact_jbar(g: &PermGroup, cfg: &EngineConfig) -> Result<u64> {
    let report = jordan_report(g, "", cfg)?;
    report.jbar.exact().ok_or(Error::CapExceeded {
        what: "exact weak jordan constant",
        size: g.order(),
        cap: cfg.order_cap,
    })
}

/// One Chermak-Delgado entry: a subgroup record with its measure.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CdEntry {
    pub record: u32,
    pub order: u64,
    pub centralizer_order: u64,
    pub measure: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdData {
    pub max_measure: u64,
    pub entries: Vec<CdEntry>,
    /// Record id of the intersection of all maximal-measure members (the
    /// Chermak-Delgado subgroup); always abelian.
    pub minimum: u32,
}

/// All subgroups attaining the maximum of `|H| * |C_G(H)|`.
pub fn cd_lattice(lat: &SubgroupLattice) -> CdData {
    let table = lat.table();
    let n = table.len();
    // centralizer bitset per element
    let mut cent: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for i in 0..n as u32 {
        cent[i as usize].insert(i as usize);
        for j in (i + 1)..n as u32 {
            if table.commute(i, j) {
                cent[i as usize].insert(j as usize);
                cent[j as usize].insert(i as usize);
            }
        }
    }
    let mut full = BitSet::new(n);
    for i in 0..n {
        full.insert(i);
    }

    let mut entries: Vec<CdEntry> = Vec::with_capacity(lat.len());
    for (idx, rec) in lat.records().iter().enumerate() {
        let mut c = full.clone();
        for &g in &rec.gen_ids {
            c.intersect_with(&cent[g as usize]);
        }
        let centralizer_order = c.len() as u64;
        entries.push(CdEntry {
            record: idx as u32,
            order: rec.order,
            centralizer_order,
            measure: rec.order * centralizer_order,
        });
    }
    let max_measure = entries.iter().map(|e| e.measure).max().unwrap_or(0);
    let maximal: Vec<CdEntry> = entries
        .into_iter()
        .filter(|e| e.measure == max_measure)
        .collect();

    let mut intersection = lat.records()[maximal[0].record as usize].elements.clone();
    for e in &maximal[1..] {
        intersection.intersect_with(&lat.records()[e.record as usize].elements);
    }
    let minimum = lat
        .record_id_of_set(&intersection)
        .expect("CD members intersect inside the lattice");

    CdData {
        max_measure,
        entries: maximal,
        minimum,
    }
}

/// `Jbar <= J <= Jbar^2` on exactly computed constants.
pub fn verify_cd_squeeze(g: &PermGroup, cfg: &EngineConfig) -> Result<bool> {
    let j = exact_j(g, cfg)?;
    let jbar = exact_jbar(g, cfg)?;
    Ok(jbar <= j && j <= jbar * jbar)
}

/// `J(H) <= J(G)` for a subgroup `h` of `g`.
pub fn verify_monotonicity_subgroup(
    g: &PermGroup,
    h: &PermGroup,
    cfg: &EngineConfig,
) -> Result<bool> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotAMember {
            element: "subgroup generator".into(),
        });
    }
    Ok(exact_j(h, cfg)? <= exact_j(g, cfg)?)
}

/// `J(G/N) <= J(G)` for a normal subgroup `n` of `g`.
pub fn verify_monotonicity_quotient(
    g: &PermGroup,
    n: &PermGroup,
    cfg: &EngineConfig,
) -> Result<bool> {
    let (q, _) = crate::construct::quotient(g, n)?;
    Ok(exact_j(&q, cfg)? <= exact_j(g, cfg)?)
}

/// A violation of the conjugation dichotomy: `g` normalizes `<h>` but
/// conjugates `h` to something other than `h` or `h^-1`.
#[derive(Clone, Debug, Serialize)]
pub struct SerreCounterexample {
    pub conjugator: String,
    pub element: String,
    pub conjugate: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreOutcome {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<SerreCounterexample>,
}

/// Checks that whenever an element normalizes a cyclic subgroup `<h>`, it
/// conjugates `h` to `h` or `h^-1`. This is a theorem for the groups acting
/// on the projective line; elsewhere (the order-20 Frobenius group) it fails
/// and the scan returns the witness.
pub fn verify_serre_lemma(g: &PermGroup, cfg: &EngineConfig) -> Result<SerreOutcome> {
    let elements = g.elements(cfg.element_cap)?;
    for h in &elements {
        if h.is_identity() {
            continue;
        }
        let mut cyclic = std::collections::HashSet::new();
        let mut power = *h;
        while !cyclic.contains(&power) {
            cyclic.insert(power);
            power = power.mul(h);
        }
        let h_inv = h.inverse();
        for conj in &elements {
            let c = h.conjugate_by(conj);
            if cyclic.contains(&c) && c != *h && c != h_inv {
                return Ok(SerreOutcome {
                    holds: false,
                    counterexample: Some(SerreCounterexample {
                        conjugator: conj.to_string(),
                        element: h.to_string(),
                        conjugate: c.to_string(),
                    }),
                });
            }
        }
    }
    Ok(SerreOutcome {
        holds: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn nu_of_cyclic_groups_is_one() {
        for n in [1u32, 5, 12] {
            let g = construct::cyclic(n).unwrap();
            let outcome = nu(&g, &cfg()).unwrap();
            assert_eq!(outcome.value, 1);
            assert_eq!(outcome.witness.order(), g.order());
        }
    }

    #[test]
    fn nu_of_s5_is_120() {
        let s5 = construct::symmetric(5).unwrap();
        let outcome = nu(&s5, &cfg()).unwrap();
        assert_eq!(outcome.value, 120);
        assert!(outcome.witness.is_trivial());
    }

    #[test]
    fn nu_of_swap_extension_by_socle_shortcut() {
        let a5 = construct::alternating(5).unwrap();
        let g = construct::swap_extension(&a5).unwrap();
        let outcome = nu(&g, &cfg()).unwrap();
        assert_eq!(outcome.value, 7200);
        let cert = outcome.socle_certificate.expect("socle path");
        assert_eq!(cert.len(), 1);
        assert_eq!(cert[0].order, 3600);
        assert!(!cert[0].is_abelian);
    }

    #[test]
    fn abar_of_s5_and_a5() {
        let s5 = construct::symmetric(5).unwrap();
        assert_eq!(abar_index(&s5, &cfg()).unwrap().0, 20);
        let a5 = construct::alternating(5).unwrap();
        assert_eq!(abar_index(&a5, &cfg()).unwrap().0, 12);
        let c12 = construct::cyclic(12).unwrap();
        assert_eq!(abar_index(&c12, &cfg()).unwrap().0, 1);
    }

    #[test]
    fn jordan_constants_of_the_witness_groups() {
        let s5 = construct::symmetric(5).unwrap();
        let report = jordan_report(&s5, "S5", &cfg()).unwrap();
        assert_eq!(report.j, Value::Exact { exact: 120 });
        assert_eq!(report.jbar, Value::Exact { exact: 20 });
        assert_eq!(report.nu, 120);
        assert_eq!(report.abar, Some(20));
        assert_eq!(report.method, CertMethod::FullEnumeration);

        let a5 = construct::alternating(5).unwrap();
        let report = jordan_report(&a5, "A5", &cfg()).unwrap();
        assert_eq!(report.j, Value::Exact { exact: 60 });
        assert_eq!(report.jbar, Value::Exact { exact: 12 });
    }

    #[test]
    fn jordan_constant_of_s4_and_s3() {
        let s4 = construct::symmetric(4).unwrap();
        assert_eq!(exact_j(&s4, &cfg()).unwrap(), 6);
        let s3 = construct::symmetric(3).unwrap();
        assert_eq!(exact_j(&s3, &cfg()).unwrap(), 2);
    }

    #[test]
    fn swap_extension_via_socle_shortcut() {
        let a5 = construct::alternating(5).unwrap();
        let g = construct::swap_extension(&a5).unwrap();
        let report = jordan_report(&g, "swap-A5", &cfg()).unwrap();
        assert_eq!(report.j, Value::Exact { exact: 7200 });
        assert_eq!(report.method, CertMethod::SocleShortcut);
        let cert = report.socle_certificate.expect("certificate present");
        assert!(cert.iter().all(|entry| !entry.is_abelian));
    }

    #[test]
    fn cd_lattice_of_s3_is_the_three_cycle() {
        let s3 = construct::symmetric(3).unwrap();
        let lat = subgroups::all_subgroups(&s3, &cfg()).unwrap();
        let cd = cd_lattice(&lat);
        assert_eq!(cd.max_measure, 9);
        assert_eq!(cd.entries.len(), 1);
        let rec = &lat.records()[cd.entries[0].record as usize];
        assert_eq!(rec.order, 3);
    }

    #[test]
    fn cd_lattice_of_d4_reaches_sixteen() {
        let d4 = construct::dihedral(4).unwrap();
        let lat = subgroups::all_subgroups(&d4, &cfg()).unwrap();
        let cd = cd_lattice(&lat);
        assert_eq!(cd.max_measure, 16);
        assert!(cd.entries.len() > 1);
    }

    #[test]
    fn cd_lattice_of_abelian_group_contains_the_group() {
        let c6 = construct::cyclic(6).unwrap();
        let lat = subgroups::all_subgroups(&c6, &cfg()).unwrap();
        let cd = cd_lattice(&lat);
        assert_eq!(cd.max_measure, 36);
        assert!(cd
            .entries
            .iter()
            .any(|e| lat.records()[e.record as usize].order == 6));
    }

    #[test]
    fn cd_members_are_closed_under_intersection_and_min_is_abelian() {
        for g in [
            construct::symmetric(4).unwrap(),
            construct::dihedral(4).unwrap(),
            construct::heisenberg(3).unwrap(),
        ] {
            let lat = subgroups::all_subgroups(&g, &cfg()).unwrap();
            let cd = cd_lattice(&lat);
            for a in &cd.entries {
                for b in &cd.entries {
                    let meet = lat.records()[a.record as usize]
                        .elements
                        .intersection(&lat.records()[b.record as usize].elements);
                    let meet_id = lat.record_id_of_set(&meet).expect("lattice complete");
                    assert!(cd.entries.iter().any(|e| e.record == meet_id));
                }
            }
            assert!(lat.records()[cd.minimum as usize].is_abelian);
            // measure of Z(G) * |G| is attained or beaten
            let z = crate::ops::center(&g, &cfg()).unwrap();
            assert!(cd.max_measure >= z.order() * g.order());
        }
    }

    #[test]
    fn squeeze_inequality_holds() {
        for g in [
            construct::symmetric(5).unwrap(),
            construct::alternating(5).unwrap(),
            construct::cyclic(8).unwrap(),
            construct::dihedral(6).unwrap(),
        ] {
            assert!(verify_cd_squeeze(&g, &cfg()).unwrap());
        }
    }

    #[test]
    fn monotonicity_examples() {
        let s5 = construct::symmetric(5).unwrap();
        let a5 = construct::alternating(5).unwrap();
        let a5_in_s5 = PermGroup::from_generators(a5.generators().to_vec()).unwrap();
        assert!(verify_monotonicity_subgroup(&s5, &a5_in_s5, &cfg()).unwrap());

        // S4 / V4 is S3 with J = 2 <= J(S4) = 6
        let s4 = construct::symmetric(4).unwrap();
        let v4 = PermGroup::from_generators(vec![
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
        ])
        .unwrap();
        assert!(verify_monotonicity_quotient(&s4, &v4, &cfg()).unwrap());
        let (q, _) = construct::quotient(&s4, &v4).unwrap();
        assert_eq!(exact_j(&q, &cfg()).unwrap(), 2);
    }

    #[test]
    fn serre_lemma_holds_on_the_projective_line_groups() {
        for g in [
            construct::symmetric(4).unwrap(),
            construct::alternating(5).unwrap(),
            construct::dihedral(7).unwrap(),
            construct::cyclic(9).unwrap(),
        ] {
            assert!(verify_serre_lemma(&g, &cfg()).unwrap().holds);
        }
    }

    #[test]
    fn serre_lemma_fails_on_frobenius_twenty() {
        let n = construct::cyclic(5).unwrap();
        let h = construct::cyclic(4).unwrap();
        let r = n.generators()[0];
        let f20 = construct::semidirect_product(&n, &h, &[vec![r.mul(&r)]]).unwrap();
        let outcome = verify_serre_lemma(&f20, &cfg()).unwrap();
        assert!(!outcome.holds);
        assert!(outcome.counterexample.is_some());
    }

    #[test]
    fn relabeling_leaves_all_constants_unchanged() {
        let s4 = construct::symmetric(4).unwrap();
        let pi = Permutation::from_cycles(4, &[vec![0, 3], vec![1, 2]]).unwrap();
        let relabeled = s4.relabel(&pi).unwrap();
        let a = jordan_report(&s4, "x", &cfg()).unwrap();
        let b = jordan_report(&relabeled, "x", &cfg()).unwrap();
        assert_eq!(a.nu, b.nu);
        assert_eq!(a.abar, b.abar);
        assert_eq!(a.j, b.j);
        assert_eq!(a.jbar, b.jbar);
    }

    #[test]
    fn ceil_sqrt_rounds_up() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(4), 2);
        assert_eq!(ceil_sqrt(7200), 85);
    }
}
