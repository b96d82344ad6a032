//! Finite strict symmetric monoidal categories given by explicit tables.
//!
//! Objects and morphisms are contiguous indices with a label side-table.
//! Every ordering exposed here (hom lists, enumeration order) is index
//! order, so constructions built on top are reproducible bit for bit.

mod builtin;
mod instance;
mod validate;

pub use builtin::{builtin, terminal, z2_discrete, z2_group, BUILTIN_NAMES};
pub use instance::{Budgets, EngineSpec, InstanceSpec, DEFAULT_MAX_NAT_CANDIDATES};
pub use validate::validate_category;

use crate::error::{Error, Result};

pub type Obj = usize;
pub type Mor = usize;

const NONE: usize = usize::MAX;

/// A finite strict symmetric monoidal category.
///
/// Associators and unitors are identities; the symmetry is explicit data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    mor_labels: Vec<String>,
    src: Vec<Obj>,
    dst: Vec<Obj>,
    homs: Vec<Vec<Mor>>,
    hom_pos: Vec<usize>,
    comp: Vec<usize>,
    ids: Vec<Mor>,
    tensor_obj: Vec<Obj>,
    tensor_mor: Vec<Mor>,
    unit: Obj,
    symmetry: Vec<Mor>,
    out_mors: Vec<Vec<Mor>>,
}

/// Raw table data, before the derived indices are computed.
#[derive(Clone, Debug)]
pub struct Tables {
    pub name: String,
    pub objects: Vec<String>,
    /// `(label, src, dst)`, in global index order.
    pub morphisms: Vec<(String, Obj, Obj)>,
    pub ids: Vec<Mor>,
    pub tensor_obj: Vec<Obj>,
    pub tensor_mor: Vec<Mor>,
    pub unit: Obj,
    pub symmetry: Vec<Mor>,
}

impl FinCategory {
    /// Assembles a category from tables and a composition function.
    ///
    /// Only shape is checked here (indices in range, composition total on
    /// composable pairs); the axioms are checked by [`validate_category`].
    pub fn from_tables(t: Tables, mut compose: impl FnMut(Mor, Mor) -> Option<Mor>) -> Result<FinCategory> {
        let n = t.objects.len();
        let m = t.morphisms.len();
        if n == 0 {
            return Err(Error::Schema("category has no objects".into()));
        }
        let mut src = Vec::with_capacity(m);
        let mut dst = Vec::with_capacity(m);
        let mut mor_labels = Vec::with_capacity(m);
        let mut homs = vec![Vec::new(); n * n];
        let mut hom_pos = vec![0; m];
        for (i, (label, s, d)) in t.morphisms.into_iter().enumerate() {
            if s >= n || d >= n {
                return Err(Error::Schema(format!("morphism {label} has an undeclared endpoint")));
            }
            hom_pos[i] = homs[s * n + d].len();
            homs[s * n + d].push(i);
            src.push(s);
            dst.push(d);
            mor_labels.push(label);
        }
        let check_mor = |f: Mor, what: &str| -> Result<()> {
            if f >= m {
                Err(Error::Schema(format!("{what} refers to an undeclared morphism")))
            } else {
                Ok(())
            }
        };
        if t.ids.len() != n || t.tensor_obj.len() != n * n || t.symmetry.len() != n * n {
            return Err(Error::Schema("object tables are incomplete".into()));
        }
        if t.tensor_mor.len() != m * m {
            return Err(Error::Schema("tensor_mor table is incomplete".into()));
        }
        if t.unit >= n {
            return Err(Error::Schema("unit is not a declared object".into()));
        }
        for &f in t.ids.iter().chain(&t.symmetry).chain(&t.tensor_mor) {
            check_mor(f, "a structure table")?;
        }
        if t.tensor_obj.iter().any(|&o| o >= n) {
            return Err(Error::Schema("tensor_obj refers to an undeclared object".into()));
        }
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if dst[f] != src[g] {
                    continue;
                }
                match compose(g, f) {
                    Some(h) if h < m => comp[g * m + f] = h,
                    _ => {
                        return Err(Error::Schema(format!(
                            "composition {}∘{} is missing",
                            mor_labels[g], mor_labels[f]
                        )))
                    }
                }
            }
        }
        let mut out_mors = vec![Vec::new(); n];
        for f in 0..m {
            if t.ids[src[f]] != f {
                out_mors[src[f]].push(f);
            }
        }
        Ok(FinCategory {
            name: t.name,
            objects: t.objects,
            mor_labels,
            src,
            dst,
            homs,
            hom_pos,
            comp,
            ids: t.ids,
            tensor_obj: t.tensor_obj,
            tensor_mor: t.tensor_mor,
            unit: t.unit,
            symmetry: t.symmetry,
            out_mors,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.src.len()
    }

    pub fn object_label(&self, a: Obj) -> &str {
        &self.objects[a]
    }

    pub fn morphism_label(&self, f: Mor) -> &str {
        &self.mor_labels[f]
    }

    pub fn object_by_label(&self, label: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn morphism_by_label(&self, label: &str) -> Option<Mor> {
        self.mor_labels.iter().position(|o| o == label)
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.src[f]
    }

    pub fn dst(&self, f: Mor) -> Obj {
        self.dst[f]
    }

    /// Morphisms `a → b` in index order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Position of `f` inside its own hom list.
    pub fn hom_position(&self, f: Mor) -> usize {
        self.hom_pos[f]
    }

    /// Non-identity morphisms with source `a`.
    pub fn out_morphisms(&self, a: Obj) -> &[Mor] {
        &self.out_mors[a]
    }

    pub fn id(&self, a: Obj) -> Mor {
        self.ids[a]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.ids[self.src[f]] == f
    }

    /// `g∘f`.
    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        self.try_compose(g, f)
            .ok_or_else(|| Error::NotComposable(format!("{} after {}", self.mor_labels[g], self.mor_labels[f])))
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        let h = self.comp[g * self.src.len() + f];
        (h != NONE).then_some(h)
    }

    /// Composition of a path given in diagrammatic order (first map first).
    pub fn compose_path(&self, path: &[Mor]) -> Result<Mor> {
        let (&first, rest) = path.split_first().ok_or_else(|| Error::NotComposable("empty path".into()))?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn tensor_obj(&self, a: Obj, b: Obj) -> Obj {
        self.tensor_obj[a * self.objects.len() + b]
    }

    pub fn tensor_mor(&self, f: Mor, g: Mor) -> Mor {
        self.tensor_mor[f * self.src.len() + g]
    }

    /// Tensor of a list of objects; the empty list is the unit.
    pub fn tensor_objs(&self, objs: &[Obj]) -> Obj {
        objs.iter().fold(self.unit, |acc, &o| self.tensor_obj(acc, o))
    }

    /// Tensor of a list of morphisms; the empty list is the unit identity.
    pub fn tensor_mors(&self, mors: &[Mor]) -> Mor {
        mors.iter().fold(self.ids[self.unit], |acc, &f| self.tensor_mor(acc, f))
    }

    pub fn unit(&self) -> Obj {
        self.unit
    }

    /// `σ_{a,b}: a⊗b → b⊗a`.
    pub fn symmetry(&self, a: Obj, b: Obj) -> Mor {
        self.symmetry[a * self.objects.len() + b]
    }

    /// Re-tables the category under a new name (used by derived categories).
    pub fn renamed(mut self, name: impl Into<String>) -> FinCategory {
        self.name = name.into();
        self
    }

    /// Whether morphism indices follow hom order (source-major, then
    /// target, then position). Instances loaded from files always do.
    pub fn is_hom_ordered(&self) -> bool {
        let mut expected = 0;
        for a in self.objects() {
            for b in self.objects() {
                for &f in self.hom(a, b) {
                    if f != expected {
                        return false;
                    }
                    expected += 1;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_composition_is_addition() {
        let c = z2_group();
        let one = c.morphism_by_label("1").unwrap();
        let zero = c.morphism_by_label("0").unwrap();
        assert_eq!(c.compose(one, one).unwrap(), zero);
        assert_eq!(c.compose(one, zero).unwrap(), one);
        assert_eq!(c.tensor_mor(one, one), zero);
    }

    #[test]
    fn terminal_composes_identity() {
        let c = terminal();
        let id = c.id(0);
        assert_eq!(c.compose(id, id).unwrap(), id);
    }

    #[test]
    fn discrete_tensor_adds_objects() {
        let c = z2_discrete();
        for x in c.objects() {
            for y in c.objects() {
                let t = c.tensor_mor(c.id(x), c.id(y));
                assert_eq!(t, c.id((x + y) % 2));
            }
        }
    }

    #[test]
    fn not_composable_is_reported() {
        let c = z2_discrete();
        let err = c.compose(c.id(0), c.id(1)).unwrap_err();
        assert_eq!(err.kind(), "NotComposable");
    }

    #[test]
    fn identities_tensor_to_identities() {
        for c in [terminal(), z2_group(), z2_discrete()] {
            for a in c.objects() {
                for b in c.objects() {
                    assert_eq!(c.tensor_mor(c.id(a), c.id(b)), c.id(c.tensor_obj(a, b)));
                }
            }
        }
    }
}
