//! The strong envelope `Chu(StProf(C), 1_C)`: events, causally faithful
//! and first-order events, local combs, order joins, and higher-order
//! maps between events.

use std::sync::Arc;

use crate::chu::{Chu, ChuObj, CopresheafEngine, JoinOrders, MonoidalEngine};
use crate::error::{Error, Result};
use crate::finbase::{FinCategory, Obj};
use crate::prof::{Module, Nat};
use crate::tambara::StProf;

pub type EnvObj = ChuObj<Arc<Module>, Nat>;
pub type EnvMor = crate::chu::ChuMor<Arc<Module>, Nat>;

/// The pullback `[C_a, y_b] ×_{[C_a⊗C_b, 1]} [C_b, y_a]` with its
/// projections.
#[derive(Clone, Debug)]
pub struct LocalCombs {
    pub module: Arc<Module>,
    pub p1: Nat,
    pub p2: Nat,
}

/// A two-sided Chu isomorphism together with the cardinalities compared.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub forward: EnvMor,
    pub backward: EnvMor,
    pub sizes: Vec<(String, Vec<usize>)>,
}

/// The three objects bounding the ⅋-intervention of two events.
#[derive(Clone, Debug)]
pub struct ParBounds {
    pub join: JoinOrders<Arc<Module>, Nat>,
    /// `[C_a*, C_b] ×_{[C_a*⊗C_b*, 1]} [C_b*, C_a] → C_{a⊗b}`.
    pub upper: Nat,
    pub sizes: Vec<(String, Vec<usize>)>,
}

/// `StEnv(C)`.
pub struct Envelope {
    pub stprof: StProf,
    pub chu: Chu<CopresheafEngine>,
}

impl Envelope {
    pub fn new(c: Arc<FinCategory>) -> Result<Self> {
        Self::from_stprof(StProf::new(c)?)
    }

    pub fn with_budget(c: Arc<FinCategory>, budget: u64) -> Result<Self> {
        Self::from_stprof(StProf::with_budget(c, budget)?)
    }

    pub fn from_stprof(stprof: StProf) -> Result<Self> {
        let name = stprof.base().name().to_string();
        let chu = Chu::new(CopresheafEngine::new(name, stprof.modules.clone()));
        Ok(Envelope { stprof, chu })
    }

    fn modules(&self) -> &crate::prof::ModuleCategory {
        &self.stprof.modules
    }

    /// `(C_a, C_a*, ev)`, the embedding of the intervention.
    pub fn event(&self, a: Obj, a2: Obj) -> Result<EnvObj> {
        self.chu.embed(&self.stprof.intervention(a, a2)?)
    }

    /// `C_a⊗y_a → 1`: `(φ, o) ↦ (id⊗o)·[σφσ]`.
    pub fn faithful_pairing(&self, a: Obj, a2: Obj) -> Result<Nat> {
        let st = &self.stprof;
        let c = st.base();
        let e = st.optic_cat();
        let pb = self.modules().pair_base();
        let ca = st.intervention(a, a2)?;
        let ya = st.representable_context(a, a2);
        let one = st.unit();
        let p = st.pair(a, a2);
        self.modules().bilinear(&ca, &ya, &one, |e1, e2, phi, o| {
            let (x, x2) = pb.unpair(e1);
            let phi = c.hom(c.tensor_obj(a, x), c.tensor_obj(a2, x2))[phi];
            let w = c.compose_path(&[c.symmetry(x, a), phi, c.symmetry(a2, x2)])?;
            let o = e.hom(p, e2)[o];
            Ok(one.functor.act(e.tensor_mor(e.id(e1), o), pb.unit_elem(w)))
        })
    }

    /// `(C_a, y_a, ev)`.
    pub fn faithful(&self, a: Obj, a2: Obj) -> Result<EnvObj> {
        let st = &self.stprof;
        let r = self.faithful_pairing(a, a2)?;
        self.chu.object(st.intervention(a, a2)?, st.representable_context(a, a2), r)
    }

    /// `(y_(a,i), y_(i,a), ev)`, paired through `id_a ∈ 1(a, a)`.
    pub fn first_order(&self, a: Obj) -> Result<EnvObj> {
        let st = &self.stprof;
        let c = st.base();
        let e = st.optic_cat();
        let pb = self.modules().pair_base();
        let i = c.unit();
        let (p, q) = (st.pair(a, i), st.pair(i, a));
        let (yp, yq) = (self.modules().representable(p), self.modules().representable(q));
        let one = st.unit();
        let unit_aa = pb.unit_mor(st.pair(a, a), pb.unit_elem(c.id(a)));
        let r = self.modules().bilinear(&yp, &yq, &one, |e1, e2, x, y| {
            let o = e.tensor_mor(e.hom(p, e1)[x], e.hom(q, e2)[y]);
            let v = e.compose(o, unit_aa)?;
            Ok(e.hom_position(v))
        })?;
        self.chu.object(yp, yq, r)
    }

    /// The second component of `faithful(a)⊗faithful(b)`.
    pub fn local_combs(&self, a: (Obj, Obj), b: (Obj, Obj)) -> Result<LocalCombs> {
        let t = self.chu.tensor_parts(&self.faithful(a.0, a.1)?, &self.faithful(b.0, b.1)?)?;
        Ok(LocalCombs { module: t.obj.a2, p1: t.p1, p2: t.p2 })
    }

    /// `faithful(a)⅋faithful(b) ≅ faithful(a⊗b)`, by iso search.
    pub fn check_lemma_par(&self, a: (Obj, Obj), b: (Obj, Obj)) -> Result<IsoCertificate> {
        let c = self.stprof.base();
        let lhs = self.chu.par(&self.faithful(a.0, a.1)?, &self.faithful(b.0, b.1)?)?;
        let rhs = self.faithful(c.tensor_obj(a.0, b.0), c.tensor_obj(a.1, b.1))?;
        self.certify(&lhs, &rhs)
    }

    /// A two-sided isomorphism, or `IsoNotFound` with both cardinality
    /// tables.
    pub fn certify(&self, lhs: &EnvObj, rhs: &EnvObj) -> Result<IsoCertificate> {
        let sizes = vec![
            ("lhs.a".to_string(), lhs.a.sizes().to_vec()),
            ("lhs.a'".to_string(), lhs.a2.sizes().to_vec()),
            ("rhs.a".to_string(), rhs.a.sizes().to_vec()),
            ("rhs.a'".to_string(), rhs.a2.sizes().to_vec()),
        ];
        match self.chu.find_iso(lhs, rhs)? {
            Some((forward, backward)) => Ok(IsoCertificate { forward, backward, sizes }),
            None => Err(Error::IsoNotFound(format!("{sizes:?}"))),
        }
    }

    /// The order join of two events with its map into their ⅋, and the
    /// upper bound of the ⅋-intervention by `C_{a⊗b}`.
    pub fn par_bounds(&self, a: (Obj, Obj), b: (Obj, Obj)) -> Result<ParBounds> {
        let st = &self.stprof;
        let m = self.modules();
        let c = st.base();
        let (ea, eb) = (self.event(a.0, a.1)?, self.event(b.0, b.1)?);
        let join = self.chu.join_orders(&ea, &eb)?;
        let one = st.unit();
        let (ya, yb) = (st.representable_context(a.0, a.1), st.representable_context(b.0, b.1));
        // y_a → C_a*, the transpose of the faithful pairing
        let kappa = |x: (Obj, Obj), y: &Arc<Module>| -> Result<Nat> {
            let ca = st.intervention(x.0, x.1)?;
            let r = m.compose(&self.faithful_pairing(x.0, x.1)?, &m.sym(y, &ca)?)?;
            m.curry(&r, y, &ca)
        };
        let k = m.tensor_mor(&kappa(a, &ya)?, &kappa(b, &yb)?)?;
        let par_t = self.chu.tensor_parts(&self.chu.dual(&ea)?, &self.chu.dual(&eb)?)?;
        let diag = m.compose(&par_t.k_b, &par_t.p1)?;
        let to_yy = m.compose(&self.chu.hom_map(&k, &m.id(&one))?, &diag)?;
        // C_{a⊗b} → [y_a⊗y_b, 1] through y_a⊗y_b → y_{a⊗b}
        let (ab, ab2) = (c.tensor_obj(a.0, b.0), c.tensor_obj(a.1, b.1));
        let yab = st.representable_context(ab, ab2);
        let e = st.optic_cat();
        let (pa, pbb) = (st.pair(a.0, a.1), st.pair(b.0, b.1));
        let join_y = m.bilinear(&ya, &yb, &yab, |e1, e2, x, y| {
            Ok(e.hom_position(e.tensor_mor(e.hom(pa, e1)[x], e.hom(pbb, e2)[y])))
        })?;
        let cab = st.intervention(ab, ab2)?;
        let yy = m.tensor(&ya, &yb)?;
        let pairing = m.compose(&self.faithful_pairing(ab, ab2)?, &m.tensor_mor(&m.id(&cab), &join_y)?)?;
        let theta = m.curry(&pairing, &cab, &yy)?;
        let theta_inv =
            m.inverse(&theta).ok_or_else(|| Error::IsoNotFound("C_{a⊗b} → [y_a⊗y_b, 1] is not invertible".into()))?;
        let upper = m.compose(&theta_inv, &to_yy)?;
        upper.check()?;
        let sizes = vec![
            ("join".to_string(), join.join.obj.a.sizes().to_vec()),
            ("par".to_string(), par_t.obj.a2.sizes().to_vec()),
            ("C_ab".to_string(), cab.sizes().to_vec()),
        ];
        Ok(ParBounds { join, upper, sizes })
    }

    /// Every Chu morphism `A → B`.
    pub fn enumerate_supermaps(&self, a: &EnvObj, b: &EnvObj) -> Result<Vec<EnvMor>> {
        self.chu.homs(a, b)
    }

    /// Morphisms `faithful(a) → faithful(b)` biject with optics `a → b`
    /// via the context component at `id_b`; returns the optic of each.
    pub fn classify_supermaps(&self, a: (Obj, Obj), b: (Obj, Obj)) -> Result<Vec<usize>> {
        let st = &self.stprof;
        let e = st.optic_cat();
        let (pa, pb) = (st.pair(a.0, a.1), st.pair(b.0, b.1));
        let (fa, fb) = (self.faithful(a.0, a.1)?, self.faithful(b.0, b.1)?);
        let ms = self.enumerate_supermaps(&fa, &fb)?;
        let idb = e.hom_position(e.id(pb));
        let mut optics: Vec<usize> = ms.iter().map(|m| m.f2.map.at(pb, idb)).collect();
        // the intervention component is the action of the classified optic
        for (m, &o) in ms.iter().zip(&optics) {
            let opt = e.hom(pa, pb)[o];
            let expected = self.optic_action(a, b, opt)?;
            if let Some(w) = self.chu.engine.first_difference(&m.f, &expected) {
                return Err(Error::NotChuMorphism(format!("intervention is not the optic's action: {w}")));
            }
        }
        let n = optics.len();
        optics.sort_unstable();
        optics.dedup();
        if optics.len() != n || n != e.hom(pa, pb).len() {
            return Err(Error::IllDefinedMap(format!("{n} supermaps against {} optics", e.hom(pa, pb).len())));
        }
        Ok(optics)
    }

    /// `C_a → C_b` induced by an optic `o: a → b`: `φ ↦ g∘(r⊗φ)∘f`
    /// whiskered to the context.
    pub fn optic_action(&self, a: (Obj, Obj), b: (Obj, Obj), o: crate::finbase::Mor) -> Result<Nat> {
        let st = &self.stprof;
        let c = st.base();
        let (ca, cb) = (st.intervention(a.0, a.1)?, st.intervention(b.0, b.1)?);
        let n = c.num_objects();
        let members = st.optic.members(o);
        let map = crate::setval::SetNat::try_from_fn(&ca.functor, |k, phi| {
            let (x, x2) = (k / n, k % n);
            let phi = c.hom(c.tensor_obj(a.0, x), c.tensor_obj(a.1, x2))[phi];
            let mut val = None;
            for &(r, f, g) in &members {
                // b⊗x → r⊗a⊗x → r⊗a'⊗x' → b'⊗x'
                let v =
                    c.compose_path(&[c.tensor_mor(f, c.id(x)), c.tensor_mor(c.id(r), phi), c.tensor_mor(g, c.id(x2))])?;
                if *val.get_or_insert(v) != v {
                    return Err(Error::IllDefinedMap("optic action depends on the representative".into()));
                }
            }
            let v = val.expect("classes are nonempty");
            Ok(c.hom(c.tensor_obj(b.0, x), c.tensor_obj(b.1, x2)).iter().position(|&w| w == v).expect("typed"))
        })?;
        let nat = Nat { dom: ca, cod: cb, map };
        nat.check()?;
        Ok(nat)
    }
}
