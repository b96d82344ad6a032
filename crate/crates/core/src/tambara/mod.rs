//! Coend optics and strong (Tambara) profunctors.
//!
//! A strong profunctor is stored as a copresheaf on `Optic(C)`; its
//! underlying profunctor and strength `ζ` are derived views. All tensors
//! are the generic [`ModuleCategory`] constructions over [`OpticBase`].

mod optic;

pub use optic::{OpticBase, OpticCategory, OpticRep};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::finbase::{FinCategory, Mor, Obj, DEFAULT_MAX_NAT_CANDIDATES};
use crate::prof::{Module, ModuleCategory, Nat, ProfCategory, Profunctor, Shape};
use crate::setval::SetFunctor;

/// A strong profunctor: a copresheaf on `Optic(C)`.
pub type TambaraModule = Arc<Module>;

/// Strong profunctors on a fixed base.
pub struct StProf {
    pub optic: Arc<OpticCategory>,
    pub modules: Arc<ModuleCategory>,
    pub prof: ProfCategory,
    interventions: Mutex<HashMap<Obj, TambaraModule>>,
}

impl StProf {
    pub fn new(c: Arc<FinCategory>) -> Result<Self> {
        Self::with_budget(c, DEFAULT_MAX_NAT_CANDIDATES)
    }

    pub fn with_budget(c: Arc<FinCategory>, budget: u64) -> Result<Self> {
        let optic = OpticCategory::build(c.clone())?;
        let pb = Arc::new(OpticBase { optic: optic.clone() });
        Ok(StProf {
            optic,
            modules: Arc::new(ModuleCategory::new(pb, budget)),
            prof: ProfCategory::with_budget(c, budget),
            interventions: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.optic.base()
    }

    pub fn optic_cat(&self) -> &Arc<FinCategory> {
        self.optic.cat()
    }

    pub fn pair(&self, a: Obj, a2: Obj) -> Obj {
        a * self.base().num_objects() + a2
    }

    /// `y_a = Optic(a, -)`.
    pub fn representable_context(&self, a: Obj, a2: Obj) -> TambaraModule {
        self.modules.representable(self.pair(a, a2))
    }

    /// `1_C = y_{(i,i)}`, the unit of both tensors.
    pub fn unit(&self) -> TambaraModule {
        self.modules.unit()
    }

    /// `C_a`: at `(x, x')` the processes `a⊗x → a'⊗x'`, acted on by
    /// whiskering with the optic's residual.
    pub fn intervention(&self, a: Obj, a2: Obj) -> Result<TambaraModule> {
        let key = self.pair(a, a2);
        if let Some(m) = self.interventions.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = self.build_intervention(a, a2)?;
        Ok(self.interventions.lock().unwrap().entry(key).or_insert(m).clone())
    }

    fn build_intervention(&self, a: Obj, a2: Obj) -> Result<TambaraModule> {
        let c = self.base().clone();
        let o = &self.optic;
        let e = o.cat().clone();
        let n = c.num_objects();
        let carrier = |k: Obj| c.hom(c.tensor_obj(a, k / n), c.tensor_obj(a2, k % n));
        let sizes: Vec<usize> = e.objects().map(|k| carrier(k).len()).collect();
        // a⊗y → a⊗r⊗x → r⊗a⊗x → r⊗a'⊗x' → a'⊗r⊗x' → a'⊗y'
        let whisker = |(r, f, g): OpticRep, x: Obj, x2: Obj, phi: Mor| -> Result<Mor> {
            c.compose_path(&[
                c.tensor_mor(c.id(a), f),
                c.tensor_mors(&[c.symmetry(a, r), c.id(x)]),
                c.tensor_mor(c.id(r), phi),
                c.tensor_mors(&[c.symmetry(r, a2), c.id(x2)]),
                c.tensor_mor(c.id(a2), g),
            ])
        };
        let mut action = Vec::with_capacity(e.num_morphisms());
        for h in e.morphisms() {
            let (s, d) = o.endpoints(h);
            let src = carrier(s);
            let dst = carrier(d);
            let mut row = Vec::with_capacity(src.len());
            for &phi in src {
                let mut val = None;
                for m in o.members(h) {
                    let v = whisker(m, s / n, s % n, phi)?;
                    if *val.get_or_insert(v) != v {
                        return Err(Error::IllDefinedMap("whiskering depends on the optic representative".into()));
                    }
                }
                let v = val.expect("classes are nonempty");
                row.push(dst.iter().position(|&w| w == v).expect("typed"));
            }
            action.push(row);
        }
        let functor = SetFunctor::new(e, sizes, action)?;
        let name = format!("C{}", self.optic_cat().object_label(self.pair(a, a2)));
        self.modules.module(name, functor)
    }

    pub fn stprof_tensor(&self, p: &TambaraModule, q: &TambaraModule) -> Result<TambaraModule> {
        self.modules.tensor(p, q)
    }

    pub fn stprof_seq(&self, p: &TambaraModule, q: &TambaraModule) -> Result<TambaraModule> {
        self.modules.seq(p, q)
    }

    pub fn stprof_hom(&self, p: &TambaraModule, q: &TambaraModule) -> Result<TambaraModule> {
        self.modules.ihom(p, q)
    }

    /// `P* = [P, 1_C]`.
    pub fn stprof_dual(&self, p: &TambaraModule) -> Result<TambaraModule> {
        self.modules.ihom(p, &self.unit())
    }

    /// The optic `(c, d) → (r⊗c, r⊗d)` with residual `r` and identities.
    pub fn strength_optic(&self, r: Obj, cc: Obj, d: Obj) -> Mor {
        let c = self.base();
        let (rc, rd) = (c.tensor_obj(r, cc), c.tensor_obj(r, d));
        self.optic.class(self.pair(cc, d), self.pair(rc, rd), r, c.id(rc), c.id(rd))
    }

    /// `ζ(w, p) ∈ P(a⊗c, b⊗d)` for `w: a → b` and `p ∈ P(c, d)`.
    pub fn zeta(&self, p: &TambaraModule, w: Mor, cc: Obj, d: Obj, x: usize) -> usize {
        let c = self.base();
        let a = c.src(w);
        let s = p.functor.act(self.strength_optic(a, cc, d), x);
        let pb = self.modules.pair_base();
        let post = pb.lift(c.id(c.tensor_obj(a, cc)), c.tensor_mor(w, c.id(d)));
        p.functor.act(post, s)
    }

    /// The underlying profunctor: restriction along `C^op × C → Optic(C)`.
    pub fn underlying(&self, p: &TambaraModule) -> Result<Profunctor> {
        let pb = self.modules.pair_base().clone();
        self.prof.from_actions(
            &format!("U{}", p.name),
            |x, x2| p.functor.size(pb.pair(x, x2)),
            |u, v, e| p.functor.act(pb.lift(u, v), e),
        )
    }

    /// Checks the strength laws on the derived `ζ`: unitality,
    /// `ζ_r∘ζ_s = ζ_{r⊗s}`, naturality in `(c, d)`, and compatibility of
    /// the profunctor action, exhaustively.
    pub fn check_strength(&self, p: &TambaraModule) -> Result<()> {
        p.functor.check_functorial()?;
        let c = self.base();
        let pb = self.modules.pair_base();
        let f = &p.functor;
        let at = |what: &str| format!("strength of {} at {what}", p.name);
        for cc in c.objects() {
            for d in c.objects() {
                let k = self.pair(cc, d);
                for x in 0..f.size(k) {
                    if f.act(self.strength_optic(c.unit(), cc, d), x) != x {
                        return Err(Error::IdentityViolation(at(&format!(
                            "ζ_i, {}",
                            self.optic_cat().object_label(k)
                        ))));
                    }
                    for r in c.objects() {
                        for s in c.objects() {
                            let (sc, sd) = (c.tensor_obj(s, cc), c.tensor_obj(s, d));
                            let zs = f.act(self.strength_optic(s, cc, d), x);
                            let lhs = f.act(self.strength_optic(r, sc, sd), zs);
                            let rhs = f.act(self.strength_optic(c.tensor_obj(r, s), cc, d), x);
                            if lhs != rhs {
                                return Err(Error::AssocViolation(at(&format!(
                                    "ζ_{r}∘ζ_{s}, {}",
                                    self.optic_cat().object_label(k)
                                ))));
                            }
                        }
                    }
                    for u in c.morphisms().filter(|&u| c.dst(u) == cc) {
                        for v in c.morphisms().filter(|&v| c.src(v) == d) {
                            let y = f.act(pb.lift(u, v), x);
                            for r in c.objects() {
                                let (u0, v0) = (c.src(u), c.dst(v));
                                let lhs = f.act(self.strength_optic(r, u0, v0), y);
                                let zr = f.act(self.strength_optic(r, cc, d), x);
                                let ru = c.tensor_mor(c.id(r), u);
                                let rv = c.tensor_mor(c.id(r), v);
                                if lhs != f.act(pb.lift(ru, rv), zr) {
                                    return Err(Error::IllDefinedMap(at(&format!(
                                        "naturality of ζ_{r}, {}",
                                        self.optic_cat().object_label(k)
                                    ))));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The sequencing action computed with the right-hand strength
    /// `[c, p, q] ↦ [c⊗r, ζ'p, ζ'q]`; agrees with the stored action iff the
    /// choice of strength on `P⊲Q` does not matter.
    pub fn seq_right_action_agrees(&self, pq: &TambaraModule) -> Result<bool> {
        let Shape::Seq { left, right, seq } = &pq.shape else {
            return Err(Error::TypeMismatch(format!("{} is not a sequencing", pq.name)));
        };
        let c = self.base();
        let o = &self.optic;
        let e = o.cat();
        let n = c.num_objects();
        for h in e.morphisms() {
            let (s, d) = o.endpoints(h);
            let (x, x2) = (s / n, s % n);
            let (y, y2) = (d / n, d % n);
            for k in 0..seq.num_classes(s) {
                let expect = pq.functor.act(h, k);
                for (m, pe, qe) in seq.members(s, k) {
                    for (r, f, g) in o.members(h) {
                        let mid = c.tensor_obj(m, r);
                        let h1 = o.class(self.pair(x, m), self.pair(y, mid), r, f, c.symmetry(r, m));
                        let h2 = o.class(self.pair(m, x2), self.pair(mid, y2), r, c.symmetry(m, r), g);
                        let v = seq.class(d, mid, left.functor.act(h1, pe), right.functor.act(h2, qe));
                        if v != expect {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn hom(&self, p: &TambaraModule, q: &TambaraModule) -> Result<Vec<Nat>> {
        self.modules.hom(p, q)
    }
}
