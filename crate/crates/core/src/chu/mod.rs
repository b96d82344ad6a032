//! The Chu construction over a pluggable monoidal engine.
//!
//! `Chu(C, ⊥)` has objects `(a, a', r: a⊗a' → ⊥)` and morphisms pairs
//! `(f: a → b, f': b' → a')` with `s∘(f⊗1) = r∘(1⊗f')`. The tensor's
//! second component is the pullback `[a,b'] ×_{[a⊗b,⊥]} [b,a']`; `⅋` and
//! the internal hom are defined from it by duality, and `⊲` is lifted
//! pointwise through the duoidal interchange.

mod copresheaf;
mod engine;
mod rearrange;
mod set;

pub use copresheaf::CopresheafEngine;
pub use engine::MonoidalEngine;
pub use rearrange::Bracket;
pub use set::{SetEngine, SetMap};

use crate::error::{Error, Result};

/// A Chu object `(a, a', r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChuObj<O, M> {
    pub a: O,
    pub a2: O,
    pub r: M,
}

/// A Chu morphism `(f, f'): dom → cod`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChuMor<O, M> {
    pub dom: ChuObj<O, M>,
    pub cod: ChuObj<O, M>,
    pub f: M,
    pub f2: M,
}

pub type Obj<E> = ChuObj<<E as MonoidalEngine>::Obj, <E as MonoidalEngine>::Mor>;
pub type Mor<E> = ChuMor<<E as MonoidalEngine>::Obj, <E as MonoidalEngine>::Mor>;

/// `A⊗B` with the pullback projections of its second component and the
/// legs of the pullback.
#[derive(Clone, Debug)]
pub struct TensorParts<O, M> {
    pub obj: ChuObj<O, M>,
    /// `P → [a,b']`.
    pub p1: M,
    /// `P → [b,a']`.
    pub p2: M,
    /// `[a,b'] → [a⊗b,⊥]`.
    pub k_b: M,
    /// `[b,a'] → [a⊗b,⊥]`.
    pub k_a: M,
}

/// A binary (co)limit in Chu with its legs.
#[derive(Clone, Debug)]
pub struct Cone<O, M> {
    pub obj: ChuObj<O, M>,
    pub left: ChuMor<O, M>,
    pub right: ChuMor<O, M>,
}

/// `(A⊲B) ∨ (B⊲A)`: the pushout over `A⊗B`, with the induced map into
/// `A⅋B`.
#[derive(Clone, Debug)]
pub struct JoinOrders<O, M> {
    pub join: Cone<O, M>,
    pub to_par: ChuMor<O, M>,
}

/// The Chu category over an engine.
pub struct Chu<E: MonoidalEngine> {
    pub engine: E,
}

type R<T> = Result<T>;

impl<E: MonoidalEngine> Chu<E> {
    pub fn new(engine: E) -> Self {
        Chu { engine }
    }

    // ---- engine helpers ----

    /// Composes a path of maps, first applied first.
    pub fn path(&self, maps: &[E::Mor]) -> R<E::Mor> {
        let e = &self.engine;
        let mut acc = maps[0].clone();
        for m in &maps[1..] {
            acc = e.compose(m, &acc)?;
        }
        Ok(acc)
    }

    fn tm(&self, f: &E::Mor, g: &E::Mor) -> R<E::Mor> {
        self.engine.tensor_mor(f, g)
    }

    fn idt(&self, a: &E::Obj, f: &E::Mor) -> R<E::Mor> {
        self.engine.tensor_mor(&self.engine.id(a), f)
    }

    fn tid(&self, f: &E::Mor, a: &E::Obj) -> R<E::Mor> {
        self.engine.tensor_mor(f, &self.engine.id(a))
    }

    /// `a⊗[a,b] → b`.
    pub fn ev_flip(&self, a: &E::Obj, b: &E::Obj) -> R<E::Mor> {
        let e = &self.engine;
        let h = e.ihom(a, b)?;
        e.compose(&e.eval(a, b)?, &e.sym(a, &h)?)
    }

    /// `[f, g]: [a,b] → [a0,b0]` for `f: a0 → a`, `g: b → b0`.
    pub fn hom_map(&self, f: &E::Mor, g: &E::Mor) -> R<E::Mor> {
        let e = &self.engine;
        let (a0, a) = (e.dom(f), e.cod(f));
        let b = e.dom(g);
        let h = e.ihom(&a, &b)?;
        let body = self.path(&[self.idt(&h, f)?, e.eval(&a, &b)?, g.clone()])?;
        e.curry(&body, &h, &a0)
    }

    /// The structural isomorphism between two bracketings of the same
    /// objects.
    pub fn rearrange(&self, src: &Bracket, dst: &Bracket, objs: &[E::Obj]) -> R<E::Mor> {
        rearrange::rearrange(&self.engine, src, dst, objs)
    }

    fn same(&self, f: &E::Mor, g: &E::Mor) -> Option<String> {
        self.engine.first_difference(f, g)
    }

    // ---- objects and morphisms ----

    pub fn object(&self, a: E::Obj, a2: E::Obj, r: E::Mor) -> R<Obj<E>> {
        let e = &self.engine;
        if e.dom(&r) != e.tensor(&a, &a2)? || e.cod(&r) != e.bottom() {
            return Err(Error::TypeMismatch("pairing must be a map a⊗a' → ⊥".into()));
        }
        Ok(ChuObj { a, a2, r })
    }

    /// `None` if `(f, f')` satisfies the Chu square, otherwise a witness.
    pub fn square_witness(&self, dom: &Obj<E>, cod: &Obj<E>, f: &E::Mor, f2: &E::Mor) -> R<Option<String>> {
        let e = &self.engine;
        if e.dom(f) != dom.a || e.cod(f) != cod.a || e.dom(f2) != cod.a2 || e.cod(f2) != dom.a2 {
            return Err(Error::TypeMismatch("components do not match the Chu objects".into()));
        }
        let lhs = e.compose(&cod.r, &self.tid(f, &cod.a2)?)?;
        let rhs = e.compose(&dom.r, &self.idt(&dom.a, f2)?)?;
        Ok(self.same(&lhs, &rhs))
    }

    pub fn is_morphism(&self, dom: &Obj<E>, cod: &Obj<E>, f: &E::Mor, f2: &E::Mor) -> R<bool> {
        Ok(self.square_witness(dom, cod, f, f2)?.is_none())
    }

    /// Builds a morphism, failing with the witness if the square does not
    /// commute.
    pub fn morphism(&self, dom: &Obj<E>, cod: &Obj<E>, f: E::Mor, f2: E::Mor) -> R<Mor<E>> {
        if let Some(w) = self.square_witness(dom, cod, &f, &f2)? {
            return Err(Error::NotChuMorphism(w));
        }
        Ok(ChuMor { dom: dom.clone(), cod: cod.clone(), f, f2 })
    }

    pub fn id(&self, a: &Obj<E>) -> Mor<E> {
        let e = &self.engine;
        ChuMor { dom: a.clone(), cod: a.clone(), f: e.id(&a.a), f2: e.id(&a.a2) }
    }

    pub fn compose(&self, g: &Mor<E>, f: &Mor<E>) -> R<Mor<E>> {
        if f.cod != g.dom {
            return Err(Error::NotComposable("Chu morphisms do not meet".into()));
        }
        let e = &self.engine;
        Ok(ChuMor { dom: f.dom.clone(), cod: g.cod.clone(), f: e.compose(&g.f, &f.f)?, f2: e.compose(&f.f2, &g.f2)? })
    }

    /// Two-sided inverse of a morphism whose components are invertible.
    pub fn inverse(&self, m: &Mor<E>) -> R<Option<Mor<E>>> {
        let e = &self.engine;
        let (Some(f), Some(f2)) = (e.inverse(&m.f), e.inverse(&m.f2)) else {
            return Ok(None);
        };
        Ok(Some(self.morphism(&m.cod, &m.dom, f, f2)?))
    }

    pub fn is_identity(&self, m: &Mor<E>) -> bool {
        m.dom == m.cod && *m == self.id(&m.dom)
    }

    /// Re-types a morphism along equal objects.
    pub fn retype(&self, m: Mor<E>, dom: &Obj<E>, cod: &Obj<E>) -> R<Mor<E>> {
        if m.dom != *dom || m.cod != *cod {
            return Err(Error::TypeMismatch("objects are not equal".into()));
        }
        Ok(m)
    }

    /// Every Chu morphism `A → B`. One component is enumerated (the
    /// cheaper side) and the other solved for through the Chu square: for
    /// each `f'`, the `f` with `curry(s)∘f = curry(r∘(1⊗f'))`, or dually.
    pub fn homs(&self, a: &Obj<E>, b: &Obj<E>) -> R<Vec<Mor<E>>> {
        self.homs_filtered(a, b, false)
    }

    fn homs_filtered(&self, a: &Obj<E>, b: &Obj<E>, iso: bool) -> R<Vec<Mor<E>>> {
        let e = &self.engine;
        let candidates = |x: &E::Obj, y: &E::Obj| if iso { e.isos(x, y) } else { e.hom(x, y) };
        let mut out = Vec::new();
        if e.hom_cost(&a.a, &b.a) < e.hom_cost(&b.a2, &a.a2) {
            // f first; then f' with ρ_A∘f' = [f,⊥]∘ρ_B, where ρ: a' → [a,⊥]
            let q = e.curry(&e.compose(&a.r, &e.sym(&a.a2, &a.a)?)?, &a.a2, &a.a)?;
            let swap = e.sym(&b.a2, &a.a)?;
            for f in candidates(&a.a, &b.a)? {
                // [f,⊥]∘ρ_B, curried directly so [b,⊥] is never built
                let g = e.curry(&self.path(&[swap.clone(), self.tid(&f, &b.a2)?, b.r.clone()])?, &b.a2, &a.a)?;
                for f2 in e.lifts(&q, &g, iso)? {
                    out.push(ChuMor { dom: a.clone(), cod: b.clone(), f: f.clone(), f2 });
                }
            }
        } else {
            let q = e.curry(&b.r, &b.a, &b.a2)?;
            for f2 in candidates(&b.a2, &a.a2)? {
                let g = e.curry(&e.compose(&a.r, &self.idt(&a.a, &f2)?)?, &a.a, &b.a2)?;
                for f in e.lifts(&q, &g, iso)? {
                    out.push(ChuMor { dom: a.clone(), cod: b.clone(), f, f2: f2.clone() });
                }
            }
        }
        Ok(out)
    }

    /// An isomorphism with its inverse, if one exists.
    pub fn find_iso(&self, a: &Obj<E>, b: &Obj<E>) -> R<Option<(Mor<E>, Mor<E>)>> {
        let e = &self.engine;
        if e.sizes(&a.a) != e.sizes(&b.a) || e.sizes(&a.a2) != e.sizes(&b.a2) {
            return Ok(None);
        }
        for m in self.homs_filtered(a, b, true)? {
            if let Some(inv) = self.inverse(&m)? {
                return Ok(Some((m, inv)));
            }
        }
        Ok(None)
    }

    // ---- duality ----

    /// `(a', a, r∘σ)`.
    pub fn dual(&self, a: &Obj<E>) -> R<Obj<E>> {
        let e = &self.engine;
        Ok(ChuObj { a: a.a2.clone(), a2: a.a.clone(), r: e.compose(&a.r, &e.sym(&a.a2, &a.a)?)? })
    }

    pub fn dual_mor(&self, m: &Mor<E>) -> R<Mor<E>> {
        Ok(ChuMor { dom: self.dual(&m.cod)?, cod: self.dual(&m.dom)?, f: m.f2.clone(), f2: m.f.clone() })
    }

    // ---- tensor ----

    pub fn tensor_parts(&self, x: &Obj<E>, y: &Obj<E>) -> R<TensorParts<E::Obj, E::Mor>> {
        let e = &self.engine;
        let (a, a2, r) = (&x.a, &x.a2, &x.r);
        let (b, b2, s) = (&y.a, &y.a2, &y.r);
        let ab = e.tensor(a, b)?;
        let h_ab2 = e.ihom(a, b2)?;
        let h_ba2 = e.ihom(b, a2)?;
        // (φ, (x, y)) ↦ s(y, φx)
        let m1 = self.path(&[e.assoc_inv(&h_ab2, a, b)?, self.tid(&e.eval(a, b2)?, b)?, e.sym(b2, b)?, s.clone()])?;
        let k_b = e.curry(&m1, &h_ab2, &ab)?;
        // (ψ, (x, y)) ↦ r(x, ψy)
        let m2 = self.path(&[
            self.idt(&h_ba2, &e.sym(a, b)?)?,
            e.assoc_inv(&h_ba2, b, a)?,
            self.tid(&e.eval(b, a2)?, a)?,
            e.sym(a2, a)?,
            r.clone(),
        ])?;
        let k_a = e.curry(&m2, &h_ba2, &ab)?;
        let (p, p1, p2) = e.pullback(&k_b, &k_a)?;
        // the diagonal followed by evaluation, i.e. the uncurried k_b∘p1
        let u = self.path(&[e.sym(&ab, &p)?, self.tid(&p1, &ab)?, m1])?;
        Ok(TensorParts { obj: ChuObj { a: ab, a2: p, r: u }, p1, p2, k_b, k_a })
    }

    pub fn tensor(&self, x: &Obj<E>, y: &Obj<E>) -> R<Obj<E>> {
        Ok(self.tensor_parts(x, y)?.obj)
    }

    /// `m⊗n: A⊗B → C⊗D`.
    pub fn tensor_mor(&self, m: &Mor<E>, n: &Mor<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let src = self.tensor_parts(&m.dom, &n.dom)?;
        let tgt = self.tensor_parts(&m.cod, &n.cod)?;
        let f = e.tensor_mor(&m.f, &n.f)?;
        let l1 = e.compose(&self.hom_map(&m.f, &n.f2)?, &tgt.p1)?;
        let l2 = e.compose(&self.hom_map(&n.f, &m.f2)?, &tgt.p2)?;
        let f2 = e.pullback_mediator(&src.k_b, &src.k_a, &src.obj.a2, &l1, &l2)?;
        self.morphism(&src.obj, &tgt.obj, f, f2)
    }

    /// `A⅋B = (A*⊗B*)*`.
    pub fn par(&self, x: &Obj<E>, y: &Obj<E>) -> R<Obj<E>> {
        self.dual(&self.tensor(&self.dual(x)?, &self.dual(y)?)?)
    }

    pub fn par_mor(&self, m: &Mor<E>, n: &Mor<E>) -> R<Mor<E>> {
        self.dual_mor(&self.tensor_mor(&self.dual_mor(m)?, &self.dual_mor(n)?)?)
    }

    /// `[A,B] = A*⅋B = (A⊗B*)*`.
    pub fn ihom(&self, x: &Obj<E>, y: &Obj<E>) -> R<Obj<E>> {
        self.dual(&self.tensor(x, &self.dual(y)?)?)
    }

    pub fn sym(&self, x: &Obj<E>, y: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let src = self.tensor_parts(x, y)?;
        let tgt = self.tensor_parts(y, x)?;
        let f2 = e.pullback_mediator(&src.k_b, &src.k_a, &src.obj.a2, &tgt.p2, &tgt.p1)?;
        self.morphism(&src.obj, &tgt.obj, e.sym(&x.a, &y.a)?, f2)
    }

    // ---- units ----

    /// `i_⊗ = (i, ⊥, λ)`.
    pub fn unit_tensor(&self) -> R<Obj<E>> {
        let e = &self.engine;
        let bot = e.bottom();
        Ok(ChuObj { a: e.unit(), a2: bot.clone(), r: e.lunit(&bot)? })
    }

    /// `i_⊲ = (j, j, u∘μ)`.
    pub fn unit_seq(&self) -> R<Obj<E>> {
        let e = &self.engine;
        let j = e.seq_unit();
        Ok(ChuObj { a: j.clone(), a2: j, r: e.compose(&e.bottom_unit()?, &e.mu()?)? })
    }

    /// `i_⅋ = i_⊗*`.
    pub fn unit_par(&self) -> R<Obj<E>> {
        self.dual(&self.unit_tensor()?)
    }

    /// The canonical map `i_⊗ → i_⅋` with both components `u∘ν`.
    pub fn mix(&self) -> R<Mor<E>> {
        let e = &self.engine;
        let un = e.compose(&e.bottom_unit()?, &e.nu()?)?;
        self.morphism(&self.unit_tensor()?, &self.unit_par()?, un.clone(), un)
    }

    /// `i_⊗⊗A → A`.
    pub fn lunit(&self, x: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let i = self.unit_tensor()?;
        let t = self.tensor_parts(&i, x)?;
        let l1 = e.curry(&e.runit(&x.a2)?, &x.a2, &e.unit())?;
        let l2 = e.curry(&e.compose(&x.r, &e.sym(&x.a2, &x.a)?)?, &x.a2, &x.a)?;
        let f2 = e.pullback_mediator(&t.k_b, &t.k_a, &t.obj.a2, &l1, &l2)?;
        self.morphism(&t.obj, x, e.lunit(&x.a)?, f2)
    }

    /// `A⊗i_⊗ → A`.
    pub fn runit(&self, x: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let i = self.unit_tensor()?;
        let t = self.tensor_parts(x, &i)?;
        let l1 = e.curry(&e.compose(&x.r, &e.sym(&x.a2, &x.a)?)?, &x.a2, &x.a)?;
        let l2 = e.curry(&e.runit(&x.a2)?, &x.a2, &e.unit())?;
        let f2 = e.pullback_mediator(&t.k_b, &t.k_a, &t.obj.a2, &l1, &l2)?;
        self.morphism(&t.obj, x, e.runit(&x.a)?, f2)
    }

    /// `i_⊲⊲A → A`.
    pub fn seq_lunit(&self, x: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let src = self.seq(&self.unit_seq()?, x)?;
        self.morphism(&src, x, e.seq_lunit(&x.a)?, e.seq_lunit_inv(&x.a2)?)
    }

    /// `A⊲i_⊲ → A`.
    pub fn seq_runit(&self, x: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let src = self.seq(x, &self.unit_seq()?)?;
        self.morphism(&src, x, e.seq_runit(&x.a)?, e.seq_runit_inv(&x.a2)?)
    }

    fn invert(&self, m: Mor<E>) -> R<Mor<E>> {
        self.inverse(&m)?.ok_or_else(|| Error::IsoNotFound("structural map is not invertible".into()))
    }

    // ---- sequencing ----

    /// `(a⊲b, a'⊲b', m∘(r⊲s)∘δ)`.
    pub fn seq(&self, x: &Obj<E>, y: &Obj<E>) -> R<Obj<E>> {
        let e = &self.engine;
        let d = e.delta(&x.a, &y.a, &x.a2, &y.a2)?;
        let r = self.path(&[d, e.seq_mor(&x.r, &y.r)?, e.bottom_mult()?])?;
        Ok(ChuObj { a: e.seq(&x.a, &y.a)?, a2: e.seq(&x.a2, &y.a2)?, r })
    }

    pub fn seq_mor(&self, m: &Mor<E>, n: &Mor<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let dom = self.seq(&m.dom, &n.dom)?;
        let cod = self.seq(&m.cod, &n.cod)?;
        self.morphism(&dom, &cod, e.seq_mor(&m.f, &n.f)?, e.seq_mor(&m.f2, &n.f2)?)
    }

    /// `[a,x]⊲[b,y] → [a⊲b, x⊲y]`, the transpose of `(ev⊲ev)∘δ`.
    pub fn ten_seq(&self, a: &E::Obj, x: &E::Obj, b: &E::Obj, y: &E::Obj) -> R<E::Mor> {
        let e = &self.engine;
        let (hax, hby) = (e.ihom(a, x)?, e.ihom(b, y)?);
        let body = e.compose(&e.seq_mor(&e.eval(a, x)?, &e.eval(b, y)?)?, &e.delta(&hax, &hby, a, b)?)?;
        e.curry(&body, &e.seq(&hax, &hby)?, &e.seq(a, b)?)
    }

    /// `δ: (A⊲B)⊗(C⊲D) → (A⊗C)⊲(B⊗D)`: the engine interchange, and on
    /// second components the mediator into the source pullback.
    pub fn delta(&self, a: &Obj<E>, b: &Obj<E>, c: &Obj<E>, d: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let src = self.tensor_parts(&self.seq(a, b)?, &self.seq(c, d)?)?;
        let ac = self.tensor_parts(a, c)?;
        let bd = self.tensor_parts(b, d)?;
        let tgt = self.seq(&ac.obj, &bd.obj)?;
        let f = e.delta(&a.a, &b.a, &c.a, &d.a)?;
        let l1 = e.compose(&self.ten_seq(&a.a, &c.a2, &b.a, &d.a2)?, &e.seq_mor(&ac.p1, &bd.p1)?)?;
        let l2 = e.compose(&self.ten_seq(&c.a, &a.a2, &d.a, &b.a2)?, &e.seq_mor(&ac.p2, &bd.p2)?)?;
        let f2 = e.pullback_mediator(&src.k_b, &src.k_a, &src.obj.a2, &l1, &l2)?;
        self.morphism(&src.obj, &tgt, f, f2)
    }

    /// `ε: (A⅋B)⊲(C⅋D) → (A⊲C)⅋(B⊲D)`, the dual of `δ` on duals.
    pub fn epsilon(&self, a: &Obj<E>, b: &Obj<E>, c: &Obj<E>, d: &Obj<E>) -> R<Mor<E>> {
        let (da, db, dc, dd) = (self.dual(a)?, self.dual(b)?, self.dual(c)?, self.dual(d)?);
        let m = self.dual_mor(&self.delta(&da, &dc, &db, &dd)?)?;
        let dom = self.seq(&self.par(a, b)?, &self.par(c, d)?)?;
        let cod = self.par(&self.seq(a, c)?, &self.seq(b, d)?)?;
        self.retype(m, &dom, &cod)
    }

    /// `A⊗B → A⊲B` in a normal model:
    /// `A⊗B ≅ (A⊲J)⊗(J⊲B) → (A⊗J)⊲(J⊗B) ≅ A⊲B`.
    pub fn tau_l(&self, a: &Obj<E>, b: &Obj<E>) -> R<Mor<E>> {
        let j = self.unit_seq()?;
        if j != self.unit_tensor()? {
            return Err(Error::Unsupported("the two units differ; no canonical A⊗B → A⊲B".into()));
        }
        let pre = self.tensor_mor(&self.invert(self.seq_runit(a)?)?, &self.invert(self.seq_lunit(b)?)?)?;
        let d = self.delta(a, &j, &j, b)?;
        let post = self.seq_mor(&self.runit(a)?, &self.lunit(b)?)?;
        self.compose(&post, &self.compose(&d, &pre)?)
    }

    /// `A⊗B → B⊲A`.
    pub fn tau_r(&self, a: &Obj<E>, b: &Obj<E>) -> R<Mor<E>> {
        self.compose(&self.tau_l(b, a)?, &self.sym(a, b)?)
    }

    /// `A⊲B → A⅋B`.
    pub fn tau_par_l(&self, a: &Obj<E>, b: &Obj<E>) -> R<Mor<E>> {
        let m = self.dual_mor(&self.tau_l(&self.dual(a)?, &self.dual(b)?)?)?;
        self.retype(m, &self.seq(a, b)?, &self.par(a, b)?)
    }

    /// `B⊲A → A⅋B`.
    pub fn tau_par_r(&self, a: &Obj<E>, b: &Obj<E>) -> R<Mor<E>> {
        let m = self.dual_mor(&self.tau_r(&self.dual(a)?, &self.dual(b)?)?)?;
        self.retype(m, &self.seq(b, a)?, &self.par(a, b)?)
    }

    // ---- linear distribution ----

    /// `A⊗(B⅋C) → (A⊗B)⅋C`, built from evaluations, transposes and
    /// pullback mediators.
    pub fn switch(&self, a: &Obj<E>, b: &Obj<E>, c: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let bc_t = self.tensor_parts(&self.dual(b)?, &self.dual(c)?)?;
        let bc = self.dual(&bc_t.obj)?;
        let q = bc.a.clone();
        let src = self.tensor_parts(a, &bc)?;
        let ab = self.tensor_parts(a, b)?;
        let abc_t = self.tensor_parts(&self.dual(&ab.obj)?, &self.dual(c)?)?;
        let tgt = self.dual(&abc_t.obj)?;
        let p = ab.obj.a2.clone();
        let (ax, bx, cx) = (&a.a, &b.a, &c.a);
        let (ax2, bx2, cx2) = (&a.a2, &b.a2, &c.a2);
        let br = Bracket::node;
        let l = Bracket::Leaf;

        // a⊗Q → [P, c]: (x, q), p ↦ π₁q(π₁p x)
        let objs = [ax.clone(), q.clone(), p.clone()];
        let m = self.path(&[
            self.rearrange(&br(br(l(0), l(1)), l(2)), &br(br(l(2), l(0)), l(1)), &objs)?,
            self.tid(&self.tid(&ab.p1, ax)?, &q)?,
            self.tid(&e.eval(ax, bx2)?, &q)?,
            self.idt(bx2, &bc_t.p1)?,
            self.ev_flip(bx2, cx)?,
        ])?;
        let aq = e.tensor(ax, &q)?;
        let l1 = e.curry(&m, &aq, &p)?;
        // a⊗Q → [c', a⊗b]: (x, q), z ↦ (x, π₂q z)
        let m = self.path(&[
            e.assoc(ax, &q, cx2)?,
            self.idt(ax, &self.tid(&bc_t.p2, cx2)?)?,
            self.idt(ax, &e.eval(cx2, bx)?)?,
        ])?;
        let l2 = e.curry(&m, &aq, cx2)?;
        let f = e.pullback_mediator(&abc_t.k_b, &abc_t.k_a, &abc_t.obj.a2, &l1, &l2)?;

        // P⊗c' → [a, b'⊗c']: (p, z), x ↦ (π₁p x, z)
        let objs = [p.clone(), cx2.clone(), ax.clone()];
        let m = self.path(&[
            self.rearrange(&br(br(l(0), l(1)), l(2)), &br(br(l(0), l(2)), l(1)), &objs)?,
            self.tid(&self.tid(&ab.p1, ax)?, cx2)?,
            self.tid(&e.eval(ax, bx2)?, cx2)?,
        ])?;
        let pc = e.tensor(&p, cx2)?;
        let g1 = e.curry(&m, &pc, ax)?;
        // P⊗c' → [Q, a']: (p, z), q ↦ π₂p(π₂q z)
        let objs = [p.clone(), cx2.clone(), q.clone()];
        let m = self.path(&[
            self.rearrange(&br(br(l(0), l(1)), l(2)), &br(l(0), br(l(2), l(1))), &objs)?,
            self.tm(&ab.p2, &self.tid(&bc_t.p2, cx2)?)?,
            self.idt(&e.ihom(bx, ax2)?, &e.eval(cx2, bx)?)?,
            e.eval(bx, ax2)?,
        ])?;
        let g2 = e.curry(&m, &pc, &q)?;
        let f2 = e.pullback_mediator(&src.k_b, &src.k_a, &src.obj.a2, &g1, &g2)?;
        self.morphism(&src.obj, &tgt, f, f2)
    }

    /// The transpose of `f: A⊗B → C*` to `A → (B⊗C)*`, for the
    /// *-autonomy bijection.
    pub fn transpose(&self, f: &Mor<E>, a: &Obj<E>, b: &Obj<E>, c: &Obj<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let ab = self.tensor_parts(a, b)?;
        let bc = self.tensor_parts(b, c)?;
        let dc = self.dual(c)?;
        if f.dom != ab.obj || f.cod != dc {
            return Err(Error::TypeMismatch("transpose expects a map A⊗B → C*".into()));
        }
        let leg1 = e.curry(&f.f, &a.a, &b.a)?;
        let m = self.path(&[self.idt(&a.a, &e.compose(&ab.p1, &f.f2)?)?, self.ev_flip(&a.a, &b.a2)?])?;
        let leg2 = e.curry(&m, &a.a, &c.a)?;
        let g = e.pullback_mediator(&bc.k_b, &bc.k_a, &bc.obj.a2, &leg1, &leg2)?;
        let g2 = self.path(&[self.idt(&b.a, &e.compose(&ab.p2, &f.f2)?)?, self.ev_flip(&b.a, &a.a2)?])?;
        self.morphism(a, &self.dual(&bc.obj)?, g, g2)
    }

    // ---- embedding ----

    /// `a ↦ (a, [a,⊥], ev)`.
    pub fn embed(&self, a: &E::Obj) -> R<Obj<E>> {
        let e = &self.engine;
        let bot = e.bottom();
        Ok(ChuObj { a: a.clone(), a2: e.ihom(a, &bot)?, r: self.ev_flip(a, &bot)? })
    }

    /// `f ↦ (f, [f,⊥])`.
    pub fn embed_mor(&self, f: &E::Mor) -> R<Mor<E>> {
        let e = &self.engine;
        let bot = e.bottom();
        let dom = self.embed(&e.dom(f))?;
        let cod = self.embed(&e.cod(f))?;
        self.morphism(&dom, &cod, f.clone(), self.hom_map(f, &e.id(&bot))?)
    }

    // ---- additives ----

    /// `A×B = (a×b, a'+b')`, paired by uncurrying.
    pub fn product(&self, x: &Obj<E>, y: &Obj<E>) -> R<Cone<E::Obj, E::Mor>> {
        let e = &self.engine;
        let bot = e.bottom();
        let (ab, p1, p2) = e.product(&x.a, &y.a)?;
        let (cp, i1, i2) = e.coproduct(&x.a2, &y.a2)?;
        // x' → [a×b, ⊥], x ↦ r_X(p1 -, x)
        let j1 = e.curry(&self.path(&[e.sym(&x.a2, &ab)?, self.tid(&p1, &x.a2)?, x.r.clone()])?, &x.a2, &ab)?;
        let j2 = e.curry(&self.path(&[e.sym(&y.a2, &ab)?, self.tid(&p2, &y.a2)?, y.r.clone()])?, &y.a2, &ab)?;
        let k = e.copairing(&cp, &j1, &j2)?;
        let r = e.compose(&e.uncurry(&k, &ab, &bot)?, &e.sym(&ab, &cp)?)?;
        let obj = ChuObj { a: ab, a2: cp, r };
        Ok(Cone { left: self.morphism(&obj, x, p1, i1)?, right: self.morphism(&obj, y, p2, i2)?, obj })
    }

    /// `A+B = (a+b, a'×b')`, constructed directly (not as a dual).
    pub fn coproduct(&self, x: &Obj<E>, y: &Obj<E>) -> R<Cone<E::Obj, E::Mor>> {
        let e = &self.engine;
        let bot = e.bottom();
        let (cp, i1, i2) = e.coproduct(&x.a, &y.a)?;
        let (pr, p1, p2) = e.product(&x.a2, &y.a2)?;
        let j1 = e.curry(&e.compose(&x.r, &self.idt(&x.a, &p1)?)?, &x.a, &pr)?;
        let j2 = e.curry(&e.compose(&y.r, &self.idt(&y.a, &p2)?)?, &y.a, &pr)?;
        let k = e.copairing(&cp, &j1, &j2)?;
        let r = e.uncurry(&k, &pr, &bot)?;
        let obj = ChuObj { a: cp, a2: pr, r };
        Ok(Cone { left: self.morphism(x, &obj, i1, p1)?, right: self.morphism(y, &obj, i2, p2)?, obj })
    }

    /// `⟨m, n⟩: X → A×B`.
    pub fn pair(&self, prod: &Cone<E::Obj, E::Mor>, m: &Mor<E>, n: &Mor<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let f = e.pairing(&prod.obj.a, &m.f, &n.f)?;
        let f2 = e.copairing(&prod.obj.a2, &m.f2, &n.f2)?;
        self.morphism(&m.dom, &prod.obj, f, f2)
    }

    /// `[m, n]: A+B → X`.
    pub fn copair(&self, coprod: &Cone<E::Obj, E::Mor>, m: &Mor<E>, n: &Mor<E>) -> R<Mor<E>> {
        let e = &self.engine;
        let f = e.copairing(&coprod.obj.a, &m.f, &n.f)?;
        let f2 = e.pairing(&coprod.obj.a2, &m.f2, &n.f2)?;
        self.morphism(&coprod.obj, &m.cod, f, f2)
    }

    /// `(1, 0)`, terminal in Chu.
    pub fn terminal(&self) -> R<Obj<E>> {
        let e = &self.engine;
        let bot = e.bottom();
        let (one, zero) = (e.terminal(), e.initial());
        let h = e.ihom(&one, &bot)?;
        let k = e.hom(&zero, &h)?.pop().expect("initial object has a map out");
        let r = e.compose(&self.ev_flip(&one, &bot)?, &self.idt(&one, &k)?)?;
        Ok(ChuObj { a: one, a2: zero, r })
    }

    /// `(0, 1)`, initial in Chu.
    pub fn initial(&self) -> R<Obj<E>> {
        self.dual(&self.terminal()?)
    }

    /// Pushout of `m: X → Y`, `n: X → Z`: pushout of first components,
    /// pullback of second components.
    pub fn pushout(&self, m: &Mor<E>, n: &Mor<E>) -> R<Cone<E::Obj, E::Mor>> {
        let e = &self.engine;
        if m.dom != n.dom {
            return Err(Error::TypeMismatch("pushout legs have different domains".into()));
        }
        let bot = e.bottom();
        let id_bot = e.id(&bot);
        let (po, i1, i2) = e.pushout(&m.f, &n.f)?;
        let (pb, p1, p2) = e.pullback(&m.f2, &n.f2)?;
        let (y, z) = (&m.cod, &n.cod);
        let ky = e.compose(&self.hom_map(&p1, &id_bot)?, &e.curry(&y.r, &y.a, &y.a2)?)?;
        let kz = e.compose(&self.hom_map(&p2, &id_bot)?, &e.curry(&z.r, &z.a, &z.a2)?)?;
        let k = e.pushout_mediator(&m.f, &n.f, &po, &ky, &kz)?;
        let r = e.compose(&e.eval(&pb, &bot)?, &self.tid(&k, &pb)?)?;
        let obj = ChuObj { a: po, a2: pb, r };
        Ok(Cone { left: self.morphism(y, &obj, i1, p1)?, right: self.morphism(z, &obj, i2, p2)?, obj })
    }

    /// The map out of a pushout induced by a cocone `(g, h)`.
    pub fn pushout_mediator(
        &self,
        m: &Mor<E>,
        n: &Mor<E>,
        po: &Cone<E::Obj, E::Mor>,
        g: &Mor<E>,
        h: &Mor<E>,
    ) -> R<Mor<E>> {
        let e = &self.engine;
        let f = e.pushout_mediator(&m.f, &n.f, &po.obj.a, &g.f, &h.f)?;
        let f2 = e.pullback_mediator(&m.f2, &n.f2, &po.obj.a2, &g.f2, &h.f2)?;
        self.morphism(&po.obj, &g.cod, f, f2)
    }

    /// `(A⊲B) ∨ (B⊲A)` over `A⊗B`, and its map into `A⅋B`. Both
    /// composites `A⊗B → A⅋B` are checked equal before mediating.
    pub fn join_orders(&self, a: &Obj<E>, b: &Obj<E>) -> R<JoinOrders<E::Obj, E::Mor>> {
        let tl = self.tau_l(a, b)?;
        let tr = self.tau_r(a, b)?;
        let join = self.pushout(&tl, &tr)?;
        let pl = self.tau_par_l(a, b)?;
        let pr = self.tau_par_r(a, b)?;
        let via_l = self.compose(&pl, &tl)?;
        let via_r = self.compose(&pr, &tr)?;
        if via_l != via_r {
            let w = self.same(&via_l.f, &via_r.f).or_else(|| self.same(&via_l.f2, &via_r.f2));
            return Err(Error::NotChuMorphism(format!(
                "A⊗B → A⅋B differs through A⊲B and B⊲A: {}",
                w.unwrap_or_default()
            )));
        }
        let to_par = self.pushout_mediator(&tl, &tr, &join, &pl, &pr)?;
        if self.compose(&to_par, &join.left)? != pl || self.compose(&to_par, &join.right)? != pr {
            return Err(Error::MediatorNotFound("join map does not restrict to the τ maps".into()));
        }
        Ok(JoinOrders { join, to_par })
    }
}
