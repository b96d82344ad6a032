use std::sync::Arc;

use super::MonoidalEngine;
use crate::error::{Error, Result};
use crate::prof::{Module, ModuleCategory, Nat};
use crate::setval::{NatSearch, SetNat};

/// Copresheaves on a pair category as a Chu base, with `⊥` the unit of
/// both tensors. Over the optic category this is `StProf(C)` with
/// `⊥ = 1_C`.
pub struct CopresheafEngine {
    name: String,
    pub modules: Arc<ModuleCategory>,
}

impl CopresheafEngine {
    pub fn new(name: impl Into<String>, modules: Arc<ModuleCategory>) -> Self {
        CopresheafEngine { name: name.into(), modules }
    }
}

impl MonoidalEngine for CopresheafEngine {
    type Obj = Arc<Module>;
    type Mor = Nat;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn budget(&self) -> u64 {
        self.modules.budget()
    }

    fn sizes(&self, a: &Arc<Module>) -> Vec<usize> {
        a.sizes().to_vec()
    }

    fn describe(&self, a: &Arc<Module>) -> String {
        format!("{}{:?}", a.name, a.sizes())
    }

    fn dom(&self, f: &Nat) -> Arc<Module> {
        f.dom.clone()
    }

    fn cod(&self, f: &Nat) -> Arc<Module> {
        f.cod.clone()
    }

    fn id(&self, a: &Arc<Module>) -> Nat {
        self.modules.id(a)
    }

    fn compose(&self, g: &Nat, f: &Nat) -> Result<Nat> {
        self.modules.compose(g, f)
    }

    fn inverse(&self, f: &Nat) -> Option<Nat> {
        self.modules.inverse(f)
    }

    fn first_difference(&self, f: &Nat, g: &Nat) -> Option<String> {
        if f.dom != g.dom || f.cod != g.cod {
            return Some(format!("types {} → {} and {} → {}", f.dom.name, f.cod.name, g.dom.name, g.cod.name));
        }
        let e = f.dom.functor.base();
        for k in e.objects() {
            for x in 0..f.dom.functor.size(k) {
                let (u, v) = (f.map.at(k, x), g.map.at(k, x));
                if u != v {
                    return Some(format!("at {} element {x}: {u} vs {v}", e.object_label(k)));
                }
            }
        }
        None
    }

    fn hom(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Vec<Nat>> {
        self.modules.hom(a, b)
    }

    fn lifts(&self, q: &Nat, g: &Nat, injective: bool) -> Result<Vec<Nat>> {
        if q.cod != g.cod {
            return Err(Error::TypeMismatch("lift along a map with another codomain".into()));
        }
        self.modules.lifts(q, g, injective)
    }

    fn isos(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Vec<Nat>> {
        if a.sizes() != b.sizes() {
            return Ok(Vec::new());
        }
        let found = NatSearch::new(&a.functor, &b.functor).budget(self.budget()).injective().run()?;
        Ok(found.into_iter().map(|map: SetNat| Nat { dom: a.clone(), cod: b.clone(), map }).collect())
    }

    fn unit(&self) -> Arc<Module> {
        self.modules.unit()
    }

    fn tensor(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Arc<Module>> {
        self.modules.tensor(a, b)
    }

    fn tensor_mor(&self, f: &Nat, g: &Nat) -> Result<Nat> {
        self.modules.tensor_mor(f, g)
    }

    fn assoc(&self, a: &Arc<Module>, b: &Arc<Module>, c: &Arc<Module>) -> Result<Nat> {
        self.modules.assoc(a, b, c)
    }

    fn assoc_inv(&self, a: &Arc<Module>, b: &Arc<Module>, c: &Arc<Module>) -> Result<Nat> {
        self.modules.assoc_inv(a, b, c)
    }

    fn lunit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.lunit(a)
    }

    fn lunit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.lunit_inv(a)
    }

    fn runit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.runit(a)
    }

    fn runit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.runit_inv(a)
    }

    fn sym(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Nat> {
        self.modules.sym(a, b)
    }

    fn ihom(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Arc<Module>> {
        self.modules.ihom(a, b)
    }

    fn eval(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Nat> {
        self.modules.eval(a, b)
    }

    fn curry(&self, f: &Nat, x: &Arc<Module>, a: &Arc<Module>) -> Result<Nat> {
        self.modules.curry(f, x, a)
    }

    fn pullback(&self, f: &Nat, g: &Nat) -> Result<(Arc<Module>, Nat, Nat)> {
        self.modules.pullback(f, g)
    }

    fn pullback_mediator(&self, _f: &Nat, _g: &Nat, apex: &Arc<Module>, p: &Nat, q: &Nat) -> Result<Nat> {
        self.modules.pullback_mediator(apex, p, q)
    }

    fn pushout(&self, f: &Nat, g: &Nat) -> Result<(Arc<Module>, Nat, Nat)> {
        self.modules.pushout(f, g)
    }

    fn pushout_mediator(&self, _f: &Nat, _g: &Nat, apex: &Arc<Module>, a: &Nat, b: &Nat) -> Result<Nat> {
        self.modules.pushout_mediator(apex, a, b)
    }

    fn product(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<(Arc<Module>, Nat, Nat)> {
        self.modules.product(a, b)
    }

    fn pairing(&self, apex: &Arc<Module>, p: &Nat, q: &Nat) -> Result<Nat> {
        self.modules.pairing(apex, p, q)
    }

    fn coproduct(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<(Arc<Module>, Nat, Nat)> {
        self.modules.coproduct(a, b)
    }

    fn copairing(&self, apex: &Arc<Module>, f: &Nat, g: &Nat) -> Result<Nat> {
        self.modules.copairing(apex, f, g)
    }

    fn terminal(&self) -> Arc<Module> {
        self.modules.terminal()
    }

    fn initial(&self) -> Arc<Module> {
        self.modules.initial()
    }

    fn seq_unit(&self) -> Arc<Module> {
        self.modules.seq_unit()
    }

    fn seq(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Arc<Module>> {
        self.modules.seq(a, b)
    }

    fn seq_mor(&self, f: &Nat, g: &Nat) -> Result<Nat> {
        self.modules.seq_mor(f, g)
    }

    fn delta(&self, a: &Arc<Module>, b: &Arc<Module>, c: &Arc<Module>, d: &Arc<Module>) -> Result<Nat> {
        self.modules.delta(a, b, c, d)
    }

    fn gamma(&self) -> Result<Nat> {
        self.modules.gamma()
    }

    fn mu(&self) -> Result<Nat> {
        self.modules.mu()
    }

    fn nu(&self) -> Result<Nat> {
        Ok(self.modules.nu())
    }

    fn seq_lunit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.seq_lunit(a)
    }

    fn seq_lunit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.seq_lunit_inv(a)
    }

    fn seq_runit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.seq_runit(a)
    }

    fn seq_runit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.modules.seq_runit_inv(a)
    }

    fn bottom(&self) -> Arc<Module> {
        self.modules.seq_unit()
    }

    fn bottom_mult(&self) -> Result<Nat> {
        self.modules.seq_unit_mult()
    }

    fn bottom_unit(&self) -> Result<Nat> {
        Ok(self.modules.id(&self.modules.seq_unit()))
    }
}
