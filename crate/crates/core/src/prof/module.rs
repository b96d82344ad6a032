use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::seq::{delta, DeltaParts, Seq};
use super::PairBase;
use crate::error::{Error, Result};
use crate::finbase::Obj;
use crate::setval::{
    coproduct, find_iso, nat_set, product, pullback, pushout, yoneda_map, Day, DayHom, NatSearch, Pullback, Pushout,
    SetFunctor, SetNat,
};

/// How a module was built; keeps the data needed to name its elements.
#[derive(Debug)]
pub enum Shape {
    Plain,
    Day { left: Arc<Module>, right: Arc<Module>, day: Day },
    Hom { dom: Arc<Module>, cod: Arc<Module>, hom: DayHom },
    Seq { left: Arc<Module>, right: Arc<Module>, seq: Seq },
    Pullback { pb: Pullback },
    Pushout { po: Pushout },
}

/// A copresheaf on the pair category, with its construction history.
pub struct Module {
    pub name: String,
    pub functor: SetFunctor,
    pub shape: Shape,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.name, self.functor.sizes())
    }
}

impl PartialEq for Module {
    /// Equality of canonical forms: identical carriers and actions.
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.functor == other.functor
    }
}

impl Module {
    pub fn sizes(&self) -> &[usize] {
        self.functor.sizes()
    }
}

/// A natural transformation between modules.
#[derive(Clone, Debug)]
pub struct Nat {
    pub dom: Arc<Module>,
    pub cod: Arc<Module>,
    pub map: SetNat,
}

impl PartialEq for Nat {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.dom == other.dom && self.cod == other.cod
    }
}

impl Nat {
    pub fn check(&self) -> Result<()> {
        self.map.check(&self.dom.functor, &self.cod.functor)
    }
}

fn key(ms: &[&Arc<Module>]) -> Vec<usize> {
    ms.iter().map(|m| Arc::as_ptr(m) as usize).collect()
}

type ObjCache = HashMap<(&'static str, Vec<usize>), (Vec<Arc<Module>>, Arc<Module>)>;
type MorCache = HashMap<(&'static str, Vec<usize>), (Vec<Arc<Module>>, Nat)>;
type LimCache = HashMap<(&'static str, Vec<usize>, Vec<SetNat>), (Vec<Arc<Module>>, (Arc<Module>, Nat, Nat))>;

/// Copresheaves on a pair category, with Day tensor and hom, sequencing,
/// the duoidal structure maps, and finite limits and colimits.
///
/// Constructions are memoised on the identity of their inputs, so building
/// the same expression twice yields the same object.
pub struct ModuleCategory {
    pb: Arc<dyn PairBase>,
    budget: u64,
    unit: Arc<Module>,
    seq_unit: Arc<Module>,
    objs: Mutex<ObjCache>,
    mors: Mutex<MorCache>,
    lims: Mutex<LimCache>,
}

impl fmt::Debug for ModuleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleCategory({})", self.pb.cat().name())
    }
}

impl ModuleCategory {
    pub fn new(pb: Arc<dyn PairBase>, budget: u64) -> Self {
        let c = pb.base();
        let i = c.unit();
        let unit_functor = SetFunctor::yoneda(pb.cat().clone(), pb.pair(i, i));
        let unit = Arc::new(Module { name: "I".into(), functor: unit_functor, shape: Shape::Plain });
        let h = pb.seq_unit();
        let seq_unit = if h == unit.functor {
            unit.clone()
        } else {
            Arc::new(Module { name: "H".into(), functor: h, shape: Shape::Plain })
        };
        ModuleCategory {
            pb,
            budget,
            unit,
            seq_unit,
            objs: Mutex::new(HashMap::new()),
            mors: Mutex::new(HashMap::new()),
            lims: Mutex::new(HashMap::new()),
        }
    }

    pub fn pair_base(&self) -> &Arc<dyn PairBase> {
        &self.pb
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn with_budget(&self, budget: u64) -> Self {
        let mut m = ModuleCategory::new(self.pb.clone(), budget);
        m.unit = self.unit.clone();
        m.seq_unit = self.seq_unit.clone();
        m
    }

    fn cached_obj(
        &self,
        op: &'static str,
        inputs: &[&Arc<Module>],
        build: impl FnOnce() -> Result<Module>,
    ) -> Result<Arc<Module>> {
        let k = (op, key(inputs));
        if let Some((_, m)) = self.objs.lock().unwrap().get(&k) {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        let mut cache = self.objs.lock().unwrap();
        let entry = cache.entry(k).or_insert_with(|| (inputs.iter().map(|a| (*a).clone()).collect(), m));
        Ok(entry.1.clone())
    }

    fn cached_mor(
        &self,
        op: &'static str,
        inputs: &[&Arc<Module>],
        build: impl FnOnce() -> Result<Nat>,
    ) -> Result<Nat> {
        let k = (op, key(inputs));
        if let Some((_, m)) = self.mors.lock().unwrap().get(&k) {
            return Ok(m.clone());
        }
        let m = build()?;
        let mut cache = self.mors.lock().unwrap();
        let entry = cache.entry(k).or_insert_with(|| (inputs.iter().map(|a| (*a).clone()).collect(), m));
        Ok(entry.1.clone())
    }

    fn cached_lim(
        &self,
        op: &'static str,
        inputs: &[&Arc<Module>],
        maps: &[&SetNat],
        build: impl FnOnce() -> Result<(Arc<Module>, Nat, Nat)>,
    ) -> Result<(Arc<Module>, Nat, Nat)> {
        let k = (op, key(inputs), maps.iter().map(|m| (*m).clone()).collect());
        if let Some((_, v)) = self.lims.lock().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let v = build()?;
        let mut cache = self.lims.lock().unwrap();
        let entry = cache.entry(k).or_insert_with(|| (inputs.iter().map(|a| (*a).clone()).collect(), v));
        Ok(entry.1.clone())
    }

    /// Wraps a functor as a module after checking functoriality.
    pub fn module(&self, name: impl Into<String>, functor: SetFunctor) -> Result<Arc<Module>> {
        if functor.base() != self.pb.cat() {
            return Err(Error::TypeMismatch("functor lives on another base".into()));
        }
        functor.check_functorial()?;
        Ok(Arc::new(Module { name: name.into(), functor, shape: Shape::Plain }))
    }

    pub fn representable(&self, e: Obj) -> Arc<Module> {
        let i = self.pb.base().unit();
        if e == self.pb.pair(i, i) {
            return self.unit.clone();
        }
        let k = ("yoneda", vec![e]);
        let mut cache = self.objs.lock().unwrap();
        cache
            .entry(k)
            .or_insert_with(|| {
                let name = format!("y{}", self.pb.cat().object_label(e));
                let functor = SetFunctor::yoneda(self.pb.cat().clone(), e);
                (Vec::new(), Arc::new(Module { name, functor, shape: Shape::Plain }))
            })
            .1
            .clone()
    }

    fn nat(&self, dom: &Arc<Module>, cod: &Arc<Module>, map: SetNat) -> Nat {
        debug_assert!(map.is_natural(&dom.functor, &cod.functor), "{} → {}", dom.name, cod.name);
        Nat { dom: dom.clone(), cod: cod.clone(), map }
    }

    pub fn id(&self, a: &Arc<Module>) -> Nat {
        Nat { dom: a.clone(), cod: a.clone(), map: SetNat::identity(&a.functor) }
    }

    pub fn compose(&self, g: &Nat, f: &Nat) -> Result<Nat> {
        if f.cod != g.dom {
            return Err(Error::NotComposable(format!("{} after {}", g.dom.name, f.cod.name)));
        }
        Ok(Nat { dom: f.dom.clone(), cod: g.cod.clone(), map: g.map.after(&f.map) })
    }

    pub fn inverse(&self, f: &Nat) -> Option<Nat> {
        let inv = f.map.inverse(&f.cod.functor)?;
        Some(Nat { dom: f.cod.clone(), cod: f.dom.clone(), map: inv })
    }

    pub fn hom(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Vec<Nat>> {
        Ok(nat_set(&a.functor, &b.functor, self.budget)?
            .into_iter()
            .map(|m| Nat { dom: a.clone(), cod: b.clone(), map: m })
            .collect())
    }

    /// All `h` with `q∘h = g`.
    pub fn lifts(&self, q: &Nat, g: &Nat, injective: bool) -> Result<Vec<Nat>> {
        let mut s = NatSearch::new(&g.dom.functor, &q.dom.functor)
            .budget(self.budget)
            .allowed(|e, x, y| q.map.at(e, y) == g.map.at(e, x));
        if injective {
            s = s.injective();
        }
        Ok(s.run()?.into_iter().map(|m| Nat { dom: g.dom.clone(), cod: q.dom.clone(), map: m }).collect())
    }

    pub fn find_iso(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Option<(Nat, Nat)>> {
        Ok(find_iso(&a.functor, &b.functor, self.budget)?.map(|(f, g)| {
            (Nat { dom: a.clone(), cod: b.clone(), map: f }, Nat { dom: b.clone(), cod: a.clone(), map: g })
        }))
    }

    // ---- Day tensor ----

    pub fn unit(&self) -> Arc<Module> {
        self.unit.clone()
    }

    pub fn tensor(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Arc<Module>> {
        self.cached_obj("tensor", &[a, b], || {
            let (functor, day) = Day::new(&a.functor, &b.functor);
            Ok(Module {
                name: format!("({}⊗{})", a.name, b.name),
                functor,
                shape: Shape::Day { left: a.clone(), right: b.clone(), day },
            })
        })
    }

    fn day_of<'m>(&self, m: &'m Module) -> &'m Day {
        match &m.shape {
            Shape::Day { day, .. } => day,
            _ => unreachable!("module {} is not a Day tensor", m.name),
        }
    }

    /// The map `a⊗b → c` induced by a family `a(e1) × b(e2) → c(e1⊗e2)`:
    /// `[h, x, y] ↦ c(h)(f(e1, e2, x, y))`. Fails unless the family is
    /// natural enough to be constant on classes.
    pub fn bilinear(
        &self,
        a: &Arc<Module>,
        b: &Arc<Module>,
        c: &Arc<Module>,
        f: impl Fn(Obj, Obj, usize, usize) -> Result<usize>,
    ) -> Result<Nat> {
        let dom = self.tensor(a, b)?;
        let map = self.day_of(&dom).map_out(|_, (e1, e2, h, x, y)| Ok(c.functor.act(h, f(e1, e2, x, y)?)))?;
        let n = Nat { dom, cod: c.clone(), map };
        n.check()?;
        Ok(n)
    }

    pub fn tensor_mor(&self, f: &Nat, g: &Nat) -> Result<Nat> {
        let dom = self.tensor(&f.dom, &g.dom)?;
        let cod = self.tensor(&f.cod, &g.cod)?;
        let tgt = self.day_of(&cod);
        let map = self
            .day_of(&dom)
            .map_out(|e, (e1, e2, h, x, y)| Ok(tgt.class(e, e1, e2, h, f.map.at(e1, x), g.map.at(e2, y))))?;
        Ok(self.nat(&dom, &cod, map))
    }

    pub fn assoc(&self, a: &Arc<Module>, b: &Arc<Module>, c: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("assoc", &[a, b, c], || {
            let e = self.pb.cat();
            let ab = self.tensor(a, b)?;
            let dom = self.tensor(&ab, c)?;
            let bc = self.tensor(b, c)?;
            let cod = self.tensor(a, &bc)?;
            let (d_ab, d_bc, d_out) = (self.day_of(&ab), self.day_of(&bc), self.day_of(&cod));
            let map = self.day_of(&dom).map_out(|t, (e12, e3, h, s, z)| {
                let mut val = None;
                for (e1, e2, h2, x, y) in d_ab.members(e12, s) {
                    let inner = d_bc.pair(e2, e3, y, z);
                    let hh = e.compose(h, e.tensor_mor(h2, e.id(e3)))?;
                    let v = d_out.class(t, e1, e.tensor_obj(e2, e3), hh, x, inner);
                    agree(&mut val, v)?;
                }
                Ok(val.unwrap())
            })?;
            Ok(self.nat(&dom, &cod, map))
        })
    }

    pub fn assoc_inv(&self, a: &Arc<Module>, b: &Arc<Module>, c: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("assoc_inv", &[a, b, c], || {
            let e = self.pb.cat();
            let bc = self.tensor(b, c)?;
            let dom = self.tensor(a, &bc)?;
            let ab = self.tensor(a, b)?;
            let cod = self.tensor(&ab, c)?;
            let (d_ab, d_bc, d_out) = (self.day_of(&ab), self.day_of(&bc), self.day_of(&cod));
            let map = self.day_of(&dom).map_out(|t, (e1, e23, h, x, s)| {
                let mut val = None;
                for (e2, e3, h2, y, z) in d_bc.members(e23, s) {
                    let inner = d_ab.pair(e1, e2, x, y);
                    let hh = e.compose(h, e.tensor_mor(e.id(e1), h2))?;
                    let v = d_out.class(t, e.tensor_obj(e1, e2), e3, hh, inner, z);
                    agree(&mut val, v)?;
                }
                Ok(val.unwrap())
            })?;
            Ok(self.nat(&dom, &cod, map))
        })
    }

    /// `I⊗a → a`.
    pub fn lunit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("lunit", &[a], || {
            let e = self.pb.cat();
            let i = self.unit_obj();
            let dom = self.tensor(&self.unit, a)?;
            let map = self.day_of(&dom).map_out(|_, (e1, e2, h, w, x)| {
                let w = e.hom(i, e1)[w];
                Ok(a.functor.act(e.compose(h, e.tensor_mor(w, e.id(e2)))?, x))
            })?;
            Ok(self.nat(&dom, a, map))
        })
    }

    pub fn lunit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("lunit_inv", &[a], || {
            let e = self.pb.cat();
            let i = self.unit_obj();
            let cod = self.tensor(&self.unit, a)?;
            let d = self.day_of(&cod);
            let idp = e.hom_position(e.id(i));
            let map = SetNat::from_fn(&a.functor, |t, x| d.pair(i, t, idp, x));
            Ok(self.nat(a, &cod, map))
        })
    }

    /// `a⊗I → a`.
    pub fn runit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("runit", &[a], || {
            let e = self.pb.cat();
            let i = self.unit_obj();
            let dom = self.tensor(a, &self.unit)?;
            let map = self.day_of(&dom).map_out(|_, (e1, e2, h, x, w)| {
                let w = e.hom(i, e2)[w];
                Ok(a.functor.act(e.compose(h, e.tensor_mor(e.id(e1), w))?, x))
            })?;
            Ok(self.nat(&dom, a, map))
        })
    }

    pub fn runit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("runit_inv", &[a], || {
            let e = self.pb.cat();
            let i = self.unit_obj();
            let cod = self.tensor(a, &self.unit)?;
            let d = self.day_of(&cod);
            let idp = e.hom_position(e.id(i));
            let map = SetNat::from_fn(&a.functor, |t, x| d.pair(t, i, x, idp));
            Ok(self.nat(a, &cod, map))
        })
    }

    /// `a⊗b → b⊗a`, `[h, x, y] ↦ [h∘σ, y, x]`.
    pub fn sym(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("sym", &[a, b], || {
            let e = self.pb.cat();
            let dom = self.tensor(a, b)?;
            let cod = self.tensor(b, a)?;
            let tgt = self.day_of(&cod);
            let map = self
                .day_of(&dom)
                .map_out(|t, (e1, e2, h, x, y)| Ok(tgt.class(t, e2, e1, e.compose(h, e.symmetry(e2, e1))?, y, x)))?;
            Ok(self.nat(&dom, &cod, map))
        })
    }

    fn unit_obj(&self) -> Obj {
        let i = self.pb.base().unit();
        self.pb.pair(i, i)
    }

    // ---- Day hom ----

    pub fn ihom(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Arc<Module>> {
        self.cached_obj("ihom", &[a, b], || {
            let (functor, hom) = DayHom::new(&a.functor, &b.functor, self.budget)?;
            Ok(Module {
                name: format!("[{},{}]", a.name, b.name),
                functor,
                shape: Shape::Hom { dom: a.clone(), cod: b.clone(), hom },
            })
        })
    }

    fn hom_of<'m>(&self, m: &'m Module) -> &'m DayHom {
        match &m.shape {
            Shape::Hom { hom, .. } => hom,
            _ => unreachable!("module {} is not an internal hom", m.name),
        }
    }

    /// `[a,b]⊗a → b`.
    pub fn eval(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("eval", &[a, b], || {
            let h = self.ihom(a, b)?;
            let dom = self.tensor(&h, a)?;
            let map = self.hom_of(&h).eval(self.day_of(&dom), &b.functor)?;
            Ok(self.nat(&dom, b, map))
        })
    }

    /// The transpose `x → [a,b]` of `f: x⊗a → b`.
    pub fn curry(&self, f: &Nat, x: &Arc<Module>, a: &Arc<Module>) -> Result<Nat> {
        let dom = self.tensor(x, a)?;
        if f.dom != dom {
            return Err(Error::TypeMismatch(format!("curry: {} is not {}", f.dom.name, dom.name)));
        }
        let h = self.ihom(a, &f.cod)?;
        let map = self.hom_of(&h).curry(&f.map, self.day_of(&dom), &x.functor, &a.functor)?;
        Ok(self.nat(x, &h, map))
    }

    // ---- limits and colimits ----

    pub fn pullback(&self, f: &Nat, g: &Nat) -> Result<(Arc<Module>, Nat, Nat)> {
        if f.cod != g.cod {
            return Err(Error::TypeMismatch("pullback legs have different codomains".into()));
        }
        self.cached_lim("pullback", &[&f.dom, &f.cod, &g.dom], &[&f.map, &g.map], || {
            let pb = pullback(&f.map, &f.dom.functor, &g.map, &g.dom.functor);
            let (p1, p2) = (pb.p1.clone(), pb.p2.clone());
            let m = Arc::new(Module {
                name: format!("({}×{})", f.dom.name, g.dom.name),
                functor: pb.functor.clone(),
                shape: Shape::Pullback { pb },
            });
            Ok((m.clone(), self.nat(&m, &f.dom, p1), self.nat(&m, &g.dom, p2)))
        })
    }

    pub fn pullback_mediator(&self, apex: &Arc<Module>, p: &Nat, q: &Nat) -> Result<Nat> {
        let Shape::Pullback { pb } = &apex.shape else {
            return Err(Error::TypeMismatch(format!("{} is not a pullback", apex.name)));
        };
        let map = pb.mediator(&p.map, &q.map)?;
        Ok(self.nat(&p.dom, apex, map))
    }

    pub fn pushout(&self, f: &Nat, g: &Nat) -> Result<(Arc<Module>, Nat, Nat)> {
        if f.dom != g.dom {
            return Err(Error::TypeMismatch("pushout legs have different domains".into()));
        }
        self.cached_lim("pushout", &[&f.dom, &f.cod, &g.cod], &[&f.map, &g.map], || {
            let po = pushout(&f.map, &f.cod.functor, &g.map, &g.cod.functor, &f.dom.functor);
            let (i1, i2) = (po.i1.clone(), po.i2.clone());
            let m = Arc::new(Module {
                name: format!("({}+{})", f.cod.name, g.cod.name),
                functor: po.functor.clone(),
                shape: Shape::Pushout { po },
            });
            Ok((m.clone(), self.nat(&f.cod, &m, i1), self.nat(&g.cod, &m, i2)))
        })
    }

    pub fn pushout_mediator(&self, apex: &Arc<Module>, a: &Nat, b: &Nat) -> Result<Nat> {
        let Shape::Pushout { po } = &apex.shape else {
            return Err(Error::TypeMismatch(format!("{} is not a pushout", apex.name)));
        };
        let map = po.mediator(&a.map, &b.map)?;
        Ok(self.nat(apex, &a.cod, map))
    }

    pub fn product(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<(Arc<Module>, Nat, Nat)> {
        self.cached_lim("product", &[a, b], &[], || {
            let pb = product(&a.functor, &b.functor);
            let (p1, p2) = (pb.p1.clone(), pb.p2.clone());
            let m = Arc::new(Module {
                name: format!("({}×{})", a.name, b.name),
                functor: pb.functor.clone(),
                shape: Shape::Pullback { pb },
            });
            Ok((m.clone(), self.nat(&m, a, p1), self.nat(&m, b, p2)))
        })
    }

    pub fn coproduct(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<(Arc<Module>, Nat, Nat)> {
        self.cached_lim("coproduct", &[a, b], &[], || {
            let po = coproduct(&a.functor, &b.functor);
            let (i1, i2) = (po.i1.clone(), po.i2.clone());
            let m = Arc::new(Module {
                name: format!("({}+{})", a.name, b.name),
                functor: po.functor.clone(),
                shape: Shape::Pushout { po },
            });
            Ok((m.clone(), self.nat(a, &m, i1), self.nat(b, &m, i2)))
        })
    }

    pub fn terminal(&self) -> Arc<Module> {
        let mut cache = self.objs.lock().unwrap();
        cache
            .entry(("terminal", vec![]))
            .or_insert_with(|| {
                let functor = SetFunctor::constant(self.pb.cat().clone(), 1);
                (Vec::new(), Arc::new(Module { name: "⊤".into(), functor, shape: Shape::Plain }))
            })
            .1
            .clone()
    }

    pub fn initial(&self) -> Arc<Module> {
        let mut cache = self.objs.lock().unwrap();
        cache
            .entry(("initial", vec![]))
            .or_insert_with(|| {
                let functor = SetFunctor::constant(self.pb.cat().clone(), 0);
                (Vec::new(), Arc::new(Module { name: "0".into(), functor, shape: Shape::Plain }))
            })
            .1
            .clone()
    }

    /// Product and coproduct mediators for the additive structure.
    pub fn pairing(&self, apex: &Arc<Module>, p: &Nat, q: &Nat) -> Result<Nat> {
        self.pullback_mediator(apex, p, q)
    }

    pub fn copairing(&self, apex: &Arc<Module>, a: &Nat, b: &Nat) -> Result<Nat> {
        self.pushout_mediator(apex, a, b)
    }

    // ---- sequencing ----

    pub fn seq_unit(&self) -> Arc<Module> {
        self.seq_unit.clone()
    }

    /// Whether the two units coincide on the nose.
    pub fn is_normal(&self) -> bool {
        Arc::ptr_eq(&self.unit, &self.seq_unit)
    }

    pub fn seq(&self, a: &Arc<Module>, b: &Arc<Module>) -> Result<Arc<Module>> {
        self.cached_obj("seq", &[a, b], || {
            let (functor, seq) = Seq::new(self.pb.clone(), &a.functor, &b.functor)?;
            Ok(Module {
                name: format!("({}⊲{})", a.name, b.name),
                functor,
                shape: Shape::Seq { left: a.clone(), right: b.clone(), seq },
            })
        })
    }

    fn seq_of<'m>(&self, m: &'m Module) -> &'m Seq {
        match &m.shape {
            Shape::Seq { seq, .. } => seq,
            _ => unreachable!("module {} is not a sequencing", m.name),
        }
    }

    pub fn seq_mor(&self, f: &Nat, g: &Nat) -> Result<Nat> {
        let dom = self.seq(&f.dom, &g.dom)?;
        let cod = self.seq(&f.cod, &g.cod)?;
        let tgt = self.seq_of(&cod);
        let pb = &self.pb;
        let map = self.seq_of(&dom).map_out(|k, (m, p, q)| {
            let (x, x2) = pb.unpair(k);
            Ok(tgt.class(k, m, f.map.at(pb.pair(x, m), p), g.map.at(pb.pair(m, x2), q)))
        })?;
        Ok(self.nat(&dom, &cod, map))
    }

    /// `(a⊲b)⊗(c⊲d) → (a⊗c)⊲(b⊗d)`.
    pub fn delta(&self, a: &Arc<Module>, b: &Arc<Module>, c: &Arc<Module>, d: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("delta", &[a, b, c, d], || {
            let ab = self.seq(a, b)?;
            let cd = self.seq(c, d)?;
            let dom = self.tensor(&ab, &cd)?;
            let ac = self.tensor(a, c)?;
            let bd = self.tensor(b, d)?;
            let cod = self.seq(&ac, &bd)?;
            let map = delta(DeltaParts {
                pb: &self.pb,
                src: self.day_of(&dom),
                pq: self.seq_of(&ab),
                rs: self.seq_of(&cd),
                pr: self.day_of(&ac),
                qs: self.day_of(&bd),
                tgt: self.seq_of(&cod),
                tgt_functor: &cod.functor,
            })?;
            let n = Nat { dom, cod, map };
            n.check()?;
            Ok(n)
        })
    }

    /// `H⊲a → a`.
    pub fn seq_lunit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("seq_lunit", &[a], || {
            let pb = &self.pb;
            let c = pb.base();
            let dom = self.seq(&self.seq_unit, a)?;
            let map = self.seq_of(&dom).map_out(|k, (m, w, p)| {
                let (x, x2) = pb.unpair(k);
                let w = pb.unit_mor(pb.pair(x, m), w);
                Ok(a.functor.act(pb.lift(w, c.id(x2)), p))
            })?;
            Ok(self.nat(&dom, a, map))
        })
    }

    pub fn seq_lunit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("seq_lunit_inv", &[a], || {
            let pb = &self.pb;
            let c = pb.base();
            let cod = self.seq(&self.seq_unit, a)?;
            let s = self.seq_of(&cod);
            let map = SetNat::from_fn(&a.functor, |k, p| {
                let (x, _) = pb.unpair(k);
                s.class(k, x, pb.unit_elem(c.id(x)), p)
            });
            Ok(self.nat(a, &cod, map))
        })
    }

    /// `a⊲H → a`.
    pub fn seq_runit(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("seq_runit", &[a], || {
            let pb = &self.pb;
            let c = pb.base();
            let dom = self.seq(a, &self.seq_unit)?;
            let map = self.seq_of(&dom).map_out(|k, (m, p, w)| {
                let (x, x2) = pb.unpair(k);
                let w = pb.unit_mor(pb.pair(m, x2), w);
                Ok(a.functor.act(pb.lift(c.id(x), w), p))
            })?;
            Ok(self.nat(&dom, a, map))
        })
    }

    pub fn seq_runit_inv(&self, a: &Arc<Module>) -> Result<Nat> {
        self.cached_mor("seq_runit_inv", &[a], || {
            let pb = &self.pb;
            let c = pb.base();
            let cod = self.seq(a, &self.seq_unit)?;
            let s = self.seq_of(&cod);
            let map = SetNat::from_fn(&a.functor, |k, p| {
                let (_, x2) = pb.unpair(k);
                s.class(k, x2, p, pb.unit_elem(c.id(x2)))
            });
            Ok(self.nat(a, &cod, map))
        })
    }

    /// `ν: I → H`, classified by the identity of the monoidal unit.
    pub fn nu(&self) -> Nat {
        let i = self.pb.base().unit();
        let x = self.pb.unit_elem(self.pb.base().id(i));
        let map = yoneda_map(self.unit_obj(), &self.seq_unit.functor, x);
        self.nat(&self.unit, &self.seq_unit, map)
    }

    /// `γ: I → I⊲I`, classified by `[i, id, id]`.
    pub fn gamma(&self) -> Result<Nat> {
        let ii = self.seq(&self.unit, &self.unit)?;
        let e = self.pb.cat();
        let u = self.unit_obj();
        let idp = e.hom_position(e.id(u));
        let x = self.seq_of(&ii).class(u, self.pb.base().unit(), idp, idp);
        let map = yoneda_map(u, &ii.functor, x);
        Ok(self.nat(&self.unit, &ii, map))
    }

    /// `μ: H⊗H → H`, `[h, w1, w2] ↦ H(h)(w1⊗w2)`.
    pub fn mu(&self) -> Result<Nat> {
        let h = &self.seq_unit;
        let hh = self.tensor(h, h)?;
        let pb = &self.pb;
        let c = pb.base();
        let map = self.day_of(&hh).map_out(|_, (e1, e2, g, w1, w2)| {
            let w = c.tensor_mor(pb.unit_mor(e1, w1), pb.unit_mor(e2, w2));
            Ok(h.functor.act(g, pb.unit_elem(w)))
        })?;
        Ok(self.nat(&hh, h, map))
    }

    /// Multiplication `H⊲H → H` (composition of the underlying morphisms).
    pub fn seq_unit_mult(&self) -> Result<Nat> {
        self.seq_lunit(&self.seq_unit.clone())
    }
}

fn agree(val: &mut Option<usize>, v: usize) -> Result<()> {
    match *val {
        None => {
            *val = Some(v);
            Ok(())
        }
        Some(w) if w != v => Err(Error::IllDefinedMap("value depends on the representative".into())),
        _ => Ok(()),
    }
}
