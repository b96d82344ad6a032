//! Finite-set-valued functors and the limits, colimits, ends and coends
//! that the higher layers are built from.
//!
//! All functors are covariant (copresheaves). Presheaves and profunctors
//! are copresheaves on an opposite or product category.

mod coend;
mod day;
mod limits;
mod nat;
mod quotient;

pub use coend::{coend, end, hom_functor, op_product, OpProduct};
pub use day::{Day, DayHom, DayTuple};
pub use limits::{coproduct, product, pullback, pushout, Pullback, Pushout};
pub use nat::{find_iso, nat_count, nat_set, NatSearch};
pub use quotient::{QuotientSet, UnionFind};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finbase::{FinCategory, Mor, Obj};

/// A functor from a finite category into finite sets.
///
/// The carrier at `e` is `0..size(e)`; actions are dense index arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    base: Arc<FinCategory>,
    sizes: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl SetFunctor {
    /// Builds a functor and checks it is functorial.
    pub fn new(base: Arc<FinCategory>, sizes: Vec<usize>, action: Vec<Vec<usize>>) -> Result<Self> {
        let f = Self::new_unchecked(base, sizes, action);
        f.check_functorial()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(base: Arc<FinCategory>, sizes: Vec<usize>, action: Vec<Vec<usize>>) -> Self {
        SetFunctor { base, sizes, action }
    }

    /// Builds a functor from a size table and an action function.
    pub fn from_fn(base: Arc<FinCategory>, sizes: Vec<usize>, mut act: impl FnMut(Mor, usize) -> usize) -> Self {
        let action = base.morphisms().map(|f| (0..sizes[base.src(f)]).map(|x| act(f, x)).collect()).collect();
        SetFunctor { base, sizes, action }
    }

    /// The constant functor at an `n`-element set.
    pub fn constant(base: Arc<FinCategory>, n: usize) -> Self {
        let sizes = vec![n; base.num_objects()];
        Self::from_fn(base, sizes, |_, x| x)
    }

    /// The covariant representable `E(e, -)`, elements in hom order.
    pub fn yoneda(base: Arc<FinCategory>, e: Obj) -> Self {
        let sizes = base.objects().map(|d| base.hom(e, d).len()).collect();
        let b = base.clone();
        Self::from_fn(base, sizes, move |f, x| {
            let w = b.hom(e, b.src(f))[x];
            b.hom_position(b.compose(f, w).expect("composable"))
        })
    }

    /// `x ↦ F(e ⊗ x)`, with `f ↦ F(id_e ⊗ f)`.
    pub fn shifted(&self, e: Obj) -> SetFunctor {
        let c = &self.base;
        let sizes = c.objects().map(|x| self.sizes[c.tensor_obj(e, x)]).collect();
        let this = self.clone();
        SetFunctor::from_fn(self.base.clone(), sizes, move |f, y| this.act(this.base.tensor_mor(this.base.id(e), f), y))
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn size(&self, e: Obj) -> usize {
        self.sizes[e]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn act(&self, f: Mor, x: usize) -> usize {
        self.action[f][x]
    }

    pub fn action(&self, f: Mor) -> &[usize] {
        &self.action[f]
    }

    /// Exhaustive check of `F(id) = id` and `F(g∘f) = F(g)∘F(f)`.
    pub fn check_functorial(&self) -> Result<()> {
        let c = &self.base;
        if self.sizes.len() != c.num_objects() || self.action.len() != c.num_morphisms() {
            return Err(Error::TypeMismatch("functor tables do not match the base".into()));
        }
        for f in c.morphisms() {
            let (s, d) = (c.src(f), c.dst(f));
            if self.action[f].len() != self.sizes[s] || self.action[f].iter().any(|&y| y >= self.sizes[d]) {
                return Err(Error::TypeMismatch(format!(
                    "action of {} is not a map F({}) → F({})",
                    c.morphism_label(f),
                    c.object_label(s),
                    c.object_label(d)
                )));
            }
        }
        for a in c.objects() {
            let id = c.id(a);
            if self.action[id].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::IllDefinedMap(format!("functor moves elements along id_{}", c.object_label(a))));
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                if let Some(gf) = c.try_compose(g, f) {
                    for x in 0..self.sizes[c.src(f)] {
                        if self.act(gf, x) != self.act(g, self.act(f, x)) {
                            return Err(Error::IllDefinedMap(format!(
                                "F({}∘{}) ≠ F({})∘F({}) at element {x}",
                                c.morphism_label(g),
                                c.morphism_label(f),
                                c.morphism_label(g),
                                c.morphism_label(f)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A natural transformation, as a table of components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetNat {
    pub comps: Vec<Vec<usize>>,
}

impl SetNat {
    pub fn identity(f: &SetFunctor) -> SetNat {
        SetNat { comps: f.sizes.iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn from_fn(dom: &SetFunctor, mut g: impl FnMut(Obj, usize) -> usize) -> SetNat {
        SetNat { comps: dom.base.objects().map(|e| (0..dom.size(e)).map(|x| g(e, x)).collect()).collect() }
    }

    /// Like [`SetNat::from_fn`] but the component function may fail.
    pub fn try_from_fn(dom: &SetFunctor, mut g: impl FnMut(Obj, usize) -> Result<usize>) -> Result<SetNat> {
        let mut comps = Vec::with_capacity(dom.sizes.len());
        for e in dom.base.objects() {
            comps.push((0..dom.size(e)).map(|x| g(e, x)).collect::<Result<Vec<_>>>()?);
        }
        Ok(SetNat { comps })
    }

    pub fn at(&self, e: Obj, x: usize) -> usize {
        self.comps[e][x]
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &SetNat) -> SetNat {
        SetNat { comps: other.comps.iter().zip(&self.comps).map(|(o, s)| o.iter().map(|&y| s[y]).collect()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.comps.iter().all(|c| c.iter().enumerate().all(|(x, &y)| x == y))
    }

    /// Checks that the components type-check and every naturality square
    /// commutes.
    pub fn check(&self, dom: &SetFunctor, cod: &SetFunctor) -> Result<()> {
        let c = &dom.base;
        if self.comps.len() != c.num_objects() {
            return Err(Error::TypeMismatch("component table has the wrong length".into()));
        }
        for e in c.objects() {
            if self.comps[e].len() != dom.size(e) || self.comps[e].iter().any(|&y| y >= cod.size(e)) {
                return Err(Error::TypeMismatch(format!("component at {} has the wrong type", c.object_label(e))));
            }
        }
        for f in c.morphisms() {
            let s = c.src(f);
            for x in 0..dom.size(s) {
                if self.at(c.dst(f), dom.act(f, x)) != cod.act(f, self.at(s, x)) {
                    return Err(Error::IllDefinedMap(format!(
                        "naturality fails along {} at element {x}",
                        c.morphism_label(f)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_natural(&self, dom: &SetFunctor, cod: &SetFunctor) -> bool {
        self.check(dom, cod).is_ok()
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| {
            let mut seen = std::collections::HashSet::new();
            c.iter().all(|y| seen.insert(*y))
        })
    }

    /// Inverse of a componentwise bijection onto `cod`.
    pub fn inverse(&self, cod: &SetFunctor) -> Option<SetNat> {
        let mut comps = Vec::with_capacity(self.comps.len());
        for (e, c) in self.comps.iter().enumerate() {
            if c.len() != cod.size(e) {
                return None;
            }
            let mut inv = vec![usize::MAX; c.len()];
            for (x, &y) in c.iter().enumerate() {
                if inv[y] != usize::MAX {
                    return None;
                }
                inv[y] = x;
            }
            comps.push(inv);
        }
        Some(SetNat { comps })
    }
}

/// `w ↦ F(w)(x)`: the map `y_e → F` classified by `x ∈ F(e)`.
pub fn yoneda_map(e: Obj, f: &SetFunctor, x: usize) -> SetNat {
    let c = f.base.clone();
    SetNat { comps: c.objects().map(|d| c.hom(e, d).iter().map(|&w| f.act(w, x)).collect()).collect() }
}
