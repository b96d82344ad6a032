//! Endoprofunctors, and more generally copresheaves on a category of pairs
//! of objects, with the Day tensor `⊗`, its hom, the sequencing tensor `⊲`
//! and the interchange map between them.
//!
//! Plain profunctors are copresheaves on `C^op × C`; strong ones (see
//! `tambara`) are copresheaves on the optic category. Both are described
//! by a [`PairBase`], and all constructions are shared.

mod module;
mod seq;

pub use module::{Module, ModuleCategory, Nat, Shape};
pub use seq::{Seq, SeqTuple};

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::Result;
use crate::finbase::{FinCategory, Mor, Obj, DEFAULT_MAX_NAT_CANDIDATES};
use crate::setval::{hom_functor, op_product, OpProduct, SetFunctor};

/// A category whose objects are pairs `(x, x')` of objects of a base `C`,
/// indexed `x·n + x'`, that receives `C^op × C`.
pub trait PairBase: Debug + Send + Sync {
    fn base(&self) -> &Arc<FinCategory>;
    fn cat(&self) -> &Arc<FinCategory>;

    fn pair(&self, x: Obj, x2: Obj) -> Obj {
        x * self.base().num_objects() + x2
    }

    fn unpair(&self, k: Obj) -> (Obj, Obj) {
        let n = self.base().num_objects();
        (k / n, k % n)
    }

    /// The image of `(u, v): (x, x') → (y, y')`, for `u: y → x`, `v: x' → y'`.
    fn lift(&self, u: Mor, v: Mor) -> Mor;

    /// Factorisations of `h: (x, x') → (y, y')` through a middle object
    /// `c`, one per stored representative of `h`: triples `(c', h1, h2)`
    /// with `h1: (x, c) → (y, c')` and `h2: (c, x') → (c', y')`.
    fn splits(&self, h: Mor, c: Obj) -> Vec<(Obj, Mor, Mor)>;

    /// The unit `H ≅ C(-, -)` of `⊲`.
    fn seq_unit(&self) -> SetFunctor;

    /// `w: x → x'` as an element of `H(x, x')`.
    fn unit_elem(&self, w: Mor) -> usize;

    /// The morphism underlying the element `k` of `H` at pair `e`.
    fn unit_mor(&self, e: Obj, k: usize) -> Mor;
}

/// `C^op × C`: the base for plain profunctors.
#[derive(Debug)]
pub struct ProfBase {
    d: OpProduct,
}

impl ProfBase {
    pub fn new(c: Arc<FinCategory>) -> Self {
        ProfBase { d: op_product(&c) }
    }
}

impl PairBase for ProfBase {
    fn base(&self) -> &Arc<FinCategory> {
        &self.d.base
    }

    fn cat(&self) -> &Arc<FinCategory> {
        &self.d.cat
    }

    fn lift(&self, u: Mor, v: Mor) -> Mor {
        self.d.mor(u, v)
    }

    fn splits(&self, h: Mor, c: Obj) -> Vec<(Obj, Mor, Mor)> {
        let (u, v) = self.d.unmor(h);
        let id = self.d.base.id(c);
        vec![(c, self.d.mor(u, id), self.d.mor(id, v))]
    }

    fn seq_unit(&self) -> SetFunctor {
        hom_functor(&self.d)
    }

    fn unit_elem(&self, w: Mor) -> usize {
        self.d.base.hom_position(w)
    }

    fn unit_mor(&self, e: Obj, k: usize) -> Mor {
        let (x, x2) = self.d.unpair(e);
        self.d.base.hom(x, x2)[k]
    }
}

/// A profunctor `C^op × C → Set`.
pub type Profunctor = Arc<Module>;

/// Profunctors on a fixed base, with the operations of the non-strong
/// layer.
pub struct ProfCategory {
    pub modules: ModuleCategory,
}

impl ProfCategory {
    pub fn new(c: Arc<FinCategory>) -> Self {
        Self::with_budget(c, DEFAULT_MAX_NAT_CANDIDATES)
    }

    pub fn with_budget(c: Arc<FinCategory>, budget: u64) -> Self {
        ProfCategory { modules: ModuleCategory::new(Arc::new(ProfBase::new(c)), budget) }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.modules.pair_base().base()
    }

    pub fn pair_cat(&self) -> &Arc<FinCategory> {
        self.modules.pair_base().cat()
    }

    /// Builds a profunctor from its carrier sizes `P(x, x')` and the joint
    /// action `P(u, v)` for `u: y → x`, `v: x' → y'`.
    pub fn from_actions(
        &self,
        name: &str,
        size: impl Fn(Obj, Obj) -> usize,
        act: impl Fn(Mor, Mor, usize) -> usize,
    ) -> Result<Profunctor> {
        let pb = self.modules.pair_base().clone();
        let d = pb.cat().clone();
        let sizes = d.objects().map(|k| {
            let (x, x2) = pb.unpair(k);
            size(x, x2)
        });
        let m = self.base().num_morphisms();
        let f = SetFunctor::from_fn(d, sizes.collect(), |h, p| act(h / m, h % m, p));
        self.modules.module(name, f)
    }

    /// The hom profunctor `C(-, -)`, unit of `⊲`.
    pub fn hom(&self) -> Profunctor {
        self.modules.seq_unit()
    }

    /// `C(-, i) × C(i, -)`, unit of `⊗`.
    pub fn day_unit(&self) -> Profunctor {
        self.modules.unit()
    }

    pub fn representable(&self, x: Obj, x2: Obj) -> Profunctor {
        let k = self.modules.pair_base().pair(x, x2);
        self.modules.representable(k)
    }

    pub fn seq_tensor(&self, p: &Profunctor, q: &Profunctor) -> Result<Profunctor> {
        self.modules.seq(p, q)
    }

    pub fn day_tensor(&self, p: &Profunctor, q: &Profunctor) -> Result<Profunctor> {
        self.modules.tensor(p, q)
    }

    pub fn internal_hom(&self, p: &Profunctor, q: &Profunctor) -> Result<Profunctor> {
        self.modules.ihom(p, q)
    }

    /// `[P, 1]`, with `1 = C(-, -)`.
    pub fn weak_dual(&self, p: &Profunctor) -> Result<Profunctor> {
        self.modules.ihom(p, &self.hom())
    }

    pub fn duoidal_delta(&self, p: &Profunctor, q: &Profunctor, r: &Profunctor, s: &Profunctor) -> Result<Nat> {
        self.modules.delta(p, q, r, s)
    }
}
