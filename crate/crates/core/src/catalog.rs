//! The group catalog: labelled expressions or explicit generator sets, with
//! optional asserted quantities and the action tables referenced by
//! `explicit` semidirect annotations.
//!
//! The shipped fixture contains every witness group the case ledger needs.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde_json::Value;

use crate::config::EngineConfig;
use crate::dsl::{self, ActionTable};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct ExplicitGens {
    pub degree: usize,
    /// One cycle list per generator.
    pub cycles: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub order: Option<u64>,
    pub nu: Option<u64>,
    pub j: Option<u64>,
    pub jbar: Option<u64>,
    pub j_le: Option<u64>,
    pub jbar_le: Option<u64>,
    pub quote: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub expr: Option<String>,
    pub generators: Option<ExplicitGens>,
    pub expected: Option<Expected>,
    /// Provenance of derived fixtures such as action tables.
    pub note: Option<String>,
}

#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    groups: Vec<PermGroup>,
    by_label: BTreeMap<String, usize>,
    actions: ActionTable,
}

fn schema_err<T>(pointer: impl Into<String>, message: impl Into<String>) -> Result<T> {
    Err(Error::Catalog {
        pointer: pointer.into(),
        message: message.into(),
    })
}

fn as_u64(v: &Value, pointer: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Catalog {
            pointer: pointer.to_string(),
            message: "expected a non-negative integer".into(),
        })
}

impl Catalog {
    pub fn from_json_str(text: &str) -> Result<Catalog> {
        let root: Value = serde_json::from_str(text).map_err(|e| Error::Catalog {
            pointer: "/".into(),
            message: format!("schema violation: {e}"),
        })?;
        let Some(items) = root.as_array() else {
            return schema_err("/", "schema violation: expected a top-level array of entries");
        };

        let mut entries = Vec::with_capacity(items.len());
        let mut actions: ActionTable = BTreeMap::new();
        let mut by_label = BTreeMap::new();

        for (i, item) in items.iter().enumerate() {
            let at = format!("/{i}");
            let Some(obj) = item.as_object() else {
                return schema_err(&at, "expected an object");
            };
            for key in obj.keys() {
                if !matches!(
                    key.as_str(),
                    "label" | "expr" | "generators" | "actions" | "expected" | "note"
                ) {
                    return schema_err(format!("{at}/{key}"), "unknown key");
                }
            }
            let label = match obj.get("label").and_then(|v| v.as_str()) {
                Some(s) if !s.is_empty() => s.to_string(),
                _ => return schema_err(format!("{at}/label"), "label must be a nonempty string"),
            };
            if by_label.contains_key(&label) {
                return schema_err(format!("{at}/label"), format!("duplicate label '{label}'"));
            }

            let expr = match obj.get("expr") {
                None => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => return schema_err(format!("{at}/expr"), "expr must be a string"),
            };
            let generators = match obj.get("generators") {
                None => None,
                Some(Value::Object(gobj)) => {
                    let degree = as_u64(
                        gobj.get("degree").unwrap_or(&Value::Null),
                        &format!("{at}/generators/degree"),
                    )? as usize;
                    let Some(cycle_lists) = gobj.get("cycles").and_then(|v| v.as_array()) else {
                        return schema_err(
                            format!("{at}/generators/cycles"),
                            "expected an array of generators (each an array of cycles)",
                        );
                    };
                    let mut cycles = Vec::with_capacity(cycle_lists.len());
                    for (gi, gen) in cycle_lists.iter().enumerate() {
                        let Some(cyc) = gen.as_array() else {
                            return schema_err(
                                format!("{at}/generators/cycles/{gi}"),
                                "expected an array of cycles",
                            );
                        };
                        let mut one = Vec::with_capacity(cyc.len());
                        for (ci, c) in cyc.iter().enumerate() {
                            let Some(pts) = c.as_array() else {
                                return schema_err(
                                    format!("{at}/generators/cycles/{gi}/{ci}"),
                                    "expected a cycle (array of points)",
                                );
                            };
                            let mut cycle = Vec::with_capacity(pts.len());
                            for (pi, p) in pts.iter().enumerate() {
                                cycle.push(as_u64(
                                    p,
                                    &format!("{at}/generators/cycles/{gi}/{ci}/{pi}"),
                                )? as usize);
                            }
                            one.push(cycle);
                        }
                        cycles.push(one);
                    }
                    Some(ExplicitGens { degree, cycles })
                }
                Some(_) => {
                    return schema_err(format!("{at}/generators"), "expected an object")
                }
            };
            match (&expr, &generators) {
                (None, None) => {
                    return schema_err(&at, "entry needs either 'expr' or 'generators'")
                }
                (Some(_), Some(_)) => {
                    return schema_err(&at, "entry must not carry both 'expr' and 'generators'")
                }
                _ => {}
            }

            if let Some(acts) = obj.get("actions") {
                let Some(amap) = acts.as_object() else {
                    return schema_err(format!("{at}/actions"), "expected an object");
                };
                for (name, body) in amap {
                    if actions.contains_key(name) {
                        return schema_err(
                            format!("{at}/actions/{name}"),
                            format!("duplicate action id '{name}'"),
                        );
                    }
                    let Some(rows) = body.as_array() else {
                        return schema_err(
                            format!("{at}/actions/{name}"),
                            "expected an array of per-generator word lists",
                        );
                    };
                    let mut table = Vec::with_capacity(rows.len());
                    for (ri, row) in rows.iter().enumerate() {
                        let Some(words) = row.as_array() else {
                            return schema_err(
                                format!("{at}/actions/{name}/{ri}"),
                                "expected an array of words",
                            );
                        };
                        let mut list = Vec::with_capacity(words.len());
                        for (wi, w) in words.iter().enumerate() {
                            let Some(s) = w.as_str() else {
                                return schema_err(
                                    format!("{at}/actions/{name}/{ri}/{wi}"),
                                    "expected a word string",
                                );
                            };
                            list.push(s.to_string());
                        }
                        table.push(list);
                    }
                    actions.insert(name.clone(), table);
                }
            }

            let expected = match obj.get("expected") {
                None => None,
                Some(Value::Object(emap)) => {
                    let mut exp = Expected::default();
                    for (key, v) in emap {
                        let ptr = format!("{at}/expected/{key}");
                        match key.as_str() {
                            "order" => exp.order = Some(as_u64(v, &ptr)?),
                            "nu" => exp.nu = Some(as_u64(v, &ptr)?),
                            "J" => exp.j = Some(as_u64(v, &ptr)?),
                            "Jbar" => exp.jbar = Some(as_u64(v, &ptr)?),
                            "J_le" => exp.j_le = Some(as_u64(v, &ptr)?),
                            "Jbar_le" => exp.jbar_le = Some(as_u64(v, &ptr)?),
                            "quote" => {
                                exp.quote = Some(
                                    v.as_str()
                                        .ok_or_else(|| Error::Catalog {
                                            pointer: ptr.clone(),
                                            message: "expected a string".into(),
                                        })?
                                        .to_string(),
                                )
                            }
                            _ => return schema_err(ptr, "unknown expected key"),
                        }
                    }
                    Some(exp)
                }
                Some(_) => return schema_err(format!("{at}/expected"), "expected an object"),
            };

            let note = match obj.get("note") {
                None => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => return schema_err(format!("{at}/note"), "note must be a string"),
            };

            by_label.insert(label.clone(), entries.len());
            entries.push(CatalogEntry {
                label,
                expr,
                generators,
                expected,
                note,
            });
        }

        // build every entry and check the asserted orders
        let cfg = EngineConfig::default();
        let mut groups = Vec::with_capacity(entries.len());
        for entry in &entries {
            let group = build_entry(entry, &actions, &cfg)?;
            if let Some(expected_order) = entry.expected.as_ref().and_then(|e| e.order) {
                if group.order() != expected_order {
                    return Err(Error::CatalogEntry {
                        label: entry.label.clone(),
                        message: format!(
                            "expected order {expected_order} but the built group has order {}",
                            group.order()
                        ),
                    });
                }
            }
            groups.push(group);
        }

        Ok(Catalog {
            entries,
            groups,
            by_label,
            actions,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn actions(&self) -> &ActionTable {
        &self.actions
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.label.as_str())
    }

    pub fn entry(&self, label: &str) -> Option<&CatalogEntry> {
        self.by_label.get(label).map(|&i| &self.entries[i])
    }

    /// The already-built group for a label.
    pub fn group(&self, label: &str) -> Result<&PermGroup> {
        self.by_label
            .get(label)
            .map(|&i| &self.groups[i])
            .ok_or_else(|| Error::CatalogEntry {
                label: label.to_string(),
                message: "no such catalog entry".into(),
            })
    }

    /// Parses and builds a free-standing expression against this catalog's
    /// action tables.
    pub fn build_expr(&self, text: &str, cfg: &EngineConfig) -> Result<PermGroup> {
        let expr = dsl::parse(text)?;
        dsl::build(&expr, &self.actions, cfg)
    }
}

fn build_entry(entry: &CatalogEntry, actions: &ActionTable, cfg: &EngineConfig) -> Result<PermGroup> {
    if let Some(text) = &entry.expr {
        let expr = dsl::parse(text).map_err(|e| Error::CatalogEntry {
            label: entry.label.clone(),
            message: e.to_string(),
        })?;
        return dsl::build(&expr, actions, cfg).map_err(|e| Error::CatalogEntry {
            label: entry.label.clone(),
            message: e.to_string(),
        });
    }
    let gens = entry.generators.as_ref().expect("validated at load");
    let perms: Vec<Permutation> = gens
        .cycles
        .iter()
        .map(|c| Permutation::from_cycles(gens.degree, c))
        .collect::<Result<_>>()
        .map_err(|e| Error::CatalogEntry {
            label: entry.label.clone(),
            message: e.to_string(),
        })?;
    PermGroup::from_generators(perms).map_err(|e| Error::CatalogEntry {
        label: entry.label.clone(),
        message: e.to_string(),
    })
}

/// Loads and validates a catalog file.
pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)?;
    Catalog::from_json_str(&text)
}

static SHIPPED: OnceLock<Catalog> = OnceLock::new();

/// The catalog bundled with the crate.
pub fn shipped() -> &'static Catalog {
    SHIPPED.get_or_init(|| {
        Catalog::from_json_str(include_str!("../data/catalog.json"))
            .expect("the bundled catalog is valid")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_has_the_expected_labels() {
        let cat = shipped();
        assert!(cat.entries().len() >= 18);
        for label in [
            "S5",
            "A5",
            "A6",
            "swap-A5",
            "fermat-648",
            "heis-108",
            "heis-54",
            "psl27xC2",
            "d4-witness-160",
        ] {
            assert!(cat.entry(label).is_some(), "missing label {label}");
        }
    }

    #[test]
    fn empty_input_is_a_schema_violation() {
        let err = Catalog::from_json_str("").unwrap_err();
        assert!(err.to_string().contains("schema violation"));
        let err = Catalog::from_json_str("{}").unwrap_err();
        assert!(err.to_string().contains("schema violation"));
    }

    #[test]
    fn order_mismatch_names_the_label() {
        let json = r#"[{"label": "bad-c5", "expr": "C5", "expected": {"order": 6}}]"#;
        let err = Catalog::from_json_str(json).unwrap_err();
        assert!(err.to_string().contains("bad-c5"));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let json = r#"[{"label": "x", "expr": "C2"}, {"label": "x", "expr": "C3"}]"#;
        let err = Catalog::from_json_str(json).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn pointer_paths_locate_bad_fields() {
        let json = r#"[{"label": "x", "expr": "C2", "expected": {"order": "two"}}]"#;
        let err = Catalog::from_json_str(json).unwrap_err();
        assert!(err.to_string().contains("/0/expected/order"));
    }

    #[test]
    fn explicit_generator_entries_build() {
        let json = r#"[{"label": "v4", "generators": {"degree": 4, "cycles": [[[0,1]], [[2,3]]]}, "expected": {"order": 4}}]"#;
        let cat = Catalog::from_json_str(json).unwrap();
        assert_eq!(cat.group("v4").unwrap().order(), 4);
    }
}
