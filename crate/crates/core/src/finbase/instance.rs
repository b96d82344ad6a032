use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{validate_category, FinCategory, Tables};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_NAT_CANDIDATES: u64 = 1_000_000;

fn default_max() -> u64 {
    DEFAULT_MAX_NAT_CANDIDATES
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default = "default_max")]
    pub max_nat_candidates: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_nat_candidates: DEFAULT_MAX_NAT_CANDIDATES }
    }
}

/// Which Chu base an instance is checked over. Tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EngineSpec {
    /// Strong profunctors on the declared category, `⊥ = 1_C`.
    Stprof,
    /// Finite sets with `⊥ = {0..k}`, a monoid given by its table.
    Set { bottom_mult: Vec<Vec<usize>>, bottom_unit: usize },
}

/// On-disk description of a category.
///
/// Keys of the form `"a,b"` name a pair of labels. Compositions with an
/// identity may be omitted; they are filled in by the unit law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing)]
    pub name: String,
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, Vec<String>>,
    pub comp: Vec<[String; 3]>,
    pub ids: BTreeMap<String, String>,
    pub tensor_obj: BTreeMap<String, String>,
    pub tensor_mor: BTreeMap<String, String>,
    pub unit: String,
    pub symmetry: BTreeMap<String, String>,
    #[serde(default)]
    pub budgets: Budgets,
    /// Defaults to `stprof`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineSpec>,
}

fn split_pair(key: &str) -> Result<(&str, &str)> {
    key.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Schema(format!("key `{key}` is not of the form \"x,y\"")))
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<InstanceSpec> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<InstanceSpec> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut spec = Self::from_json(&text)?;
        if spec.name.is_empty() {
            spec.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Builds the category without checking its axioms.
    pub fn build_unchecked(&self) -> Result<FinCategory> {
        if self.budgets.max_nat_candidates == 0 {
            return Err(Error::Schema("budgets must be positive".into()));
        }
        let n = self.objects.len();
        let mut obj_ix = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_ix.insert(o.as_str(), i).is_some() {
                return Err(Error::Schema(format!("object `{o}` declared twice")));
            }
        }
        let obj = |l: &str| obj_ix.get(l).copied().ok_or_else(|| Error::Schema(format!("undeclared object `{l}`")));
        let mut hom_lists = vec![Vec::new(); n * n];
        for (key, labels) in &self.homs {
            let (a, b) = split_pair(key)?;
            hom_lists[obj(a)? * n + obj(b)?] = labels.clone();
        }
        let mut morphisms = Vec::new();
        let mut mor_ix = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for l in &hom_lists[a * n + b] {
                    if mor_ix.insert(l.clone(), morphisms.len()).is_some() {
                        return Err(Error::Schema(format!("morphism `{l}` declared twice")));
                    }
                    morphisms.push((l.clone(), a, b));
                }
            }
        }
        let m = morphisms.len();
        let mor = |l: &str| mor_ix.get(l).copied().ok_or_else(|| Error::Schema(format!("undeclared morphism `{l}`")));
        let mut ids = vec![usize::MAX; n];
        for (o, f) in &self.ids {
            ids[obj(o)?] = mor(f)?;
        }
        if ids.contains(&usize::MAX) {
            return Err(Error::Schema("an object has no identity".into()));
        }
        let mut tensor_obj = vec![usize::MAX; n * n];
        for (k, v) in &self.tensor_obj {
            let (a, b) = split_pair(k)?;
            tensor_obj[obj(a)? * n + obj(b)?] = obj(v)?;
        }
        let mut tensor_mor = vec![usize::MAX; m * m];
        for (k, v) in &self.tensor_mor {
            let (f, g) = split_pair(k)?;
            tensor_mor[mor(f)? * m + mor(g)?] = mor(v)?;
        }
        let mut symmetry = vec![usize::MAX; n * n];
        for (k, v) in &self.symmetry {
            let (a, b) = split_pair(k)?;
            symmetry[obj(a)? * n + obj(b)?] = mor(v)?;
        }
        if tensor_obj.contains(&usize::MAX) || symmetry.contains(&usize::MAX) {
            return Err(Error::Schema("object tables are incomplete".into()));
        }
        if tensor_mor.contains(&usize::MAX) {
            return Err(Error::Schema("tensor_mor table is incomplete".into()));
        }
        let mut comp = HashMap::new();
        for [g, f, h] in &self.comp {
            comp.insert((mor(g)?, mor(f)?), mor(h)?);
        }
        let unit = obj(&self.unit)?;
        let t = Tables {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: morphisms.clone(),
            ids: ids.clone(),
            tensor_obj,
            tensor_mor,
            unit,
            symmetry,
        };
        FinCategory::from_tables(t, |g, f| {
            comp.get(&(g, f)).copied().or_else(|| {
                if ids[morphisms[g].1] == g {
                    Some(f)
                } else if ids[morphisms[f].1] == f {
                    Some(g)
                } else {
                    None
                }
            })
        })
    }

    /// Builds and validates the category.
    pub fn load(&self) -> Result<FinCategory> {
        let c = self.build_unchecked()?;
        validate_category(&c)?;
        Ok(c)
    }

    /// Serializes a category, listing every composite explicitly.
    pub fn from_category(c: &FinCategory, budgets: Budgets) -> InstanceSpec {
        let ol = |a| c.object_label(a).to_string();
        let ml = |f| c.morphism_label(f).to_string();
        let mut homs = BTreeMap::new();
        let mut tensor_obj = BTreeMap::new();
        let mut symmetry = BTreeMap::new();
        for a in c.objects() {
            for b in c.objects() {
                let key = format!("{},{}", ol(a), ol(b));
                if !c.hom(a, b).is_empty() {
                    homs.insert(key.clone(), c.hom(a, b).iter().map(|&f| ml(f)).collect());
                }
                tensor_obj.insert(key.clone(), ol(c.tensor_obj(a, b)));
                symmetry.insert(key, ml(c.symmetry(a, b)));
            }
        }
        let mut comp = Vec::new();
        let mut tensor_mor = BTreeMap::new();
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(h) = c.try_compose(g, f) {
                    comp.push([ml(g), ml(f), ml(h)]);
                }
                tensor_mor.insert(format!("{},{}", ml(g), ml(f)), ml(c.tensor_mor(g, f)));
            }
        }
        InstanceSpec {
            name: c.name().to_string(),
            objects: c.objects().map(ol).collect(),
            homs,
            comp,
            ids: c.objects().map(|a| (ol(a), ml(c.id(a)))).collect(),
            tensor_obj,
            tensor_mor,
            unit: ol(c.unit()),
            symmetry,
            budgets,
            engine: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finbase::{z2_discrete, z2_group};

    #[test]
    fn builtin_round_trips() {
        for c in [z2_group(), z2_discrete()] {
            let spec = InstanceSpec::from_category(&c, Budgets::default());
            let mut back = InstanceSpec::from_json(&spec.to_json()).unwrap();
            back.name = c.name().to_string();
            assert_eq!(back, spec);
            assert_eq!(back.load().unwrap(), c);
        }
    }

    #[test]
    fn undeclared_morphism_in_comp_is_schema_error() {
        let mut spec = InstanceSpec::from_category(&z2_group(), Budgets::default());
        spec.comp.push(["1".into(), "ghost".into(), "0".into()]);
        assert_eq!(spec.load().unwrap_err().kind(), "SchemaError");
    }

    #[test]
    fn unknown_field_is_rejected() {
        let mut v: serde_json::Value =
            serde_json::from_str(&InstanceSpec::from_category(&z2_group(), Budgets::default()).to_json()).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(InstanceSpec::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn wrong_identity_fails_validation() {
        let mut spec = InstanceSpec::from_category(&z2_group(), Budgets::default());
        spec.ids.insert("•".into(), "1".into());
        assert_eq!(spec.load().unwrap_err().kind(), "IdentityViolation");
    }
}
