use std::collections::HashMap;
use std::sync::Arc;

use super::{nat_set, SetFunctor, SetNat, UnionFind};
use crate::error::{Error, Result};
use crate::finbase::{FinCategory, Mor, Obj};

/// A raw Day element `(e1, e2, h: e1⊗e2 → e, x ∈ F(e1), y ∈ G(e2))`.
pub type DayTuple = (Obj, Obj, Mor, usize, usize);

/// Day convolution `(F⊗G)(e) = ∫^{e1,e2} E(e1⊗e2, e) × F(e1) × G(e2)`.
///
/// Both coend variables are quotiented in one union-find pass. Raw tuples
/// are indexed lexicographically by `(e1, e2, h, x, y)`, and each class is
/// represented by its minimal tuple.
#[derive(Clone, Debug)]
pub struct Day {
    base: Arc<FinCategory>,
    left: Vec<usize>,
    right: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    class_of: Vec<Vec<usize>>,
    reps: Vec<Vec<usize>>,
    members: Vec<Vec<Vec<usize>>>,
}

impl Day {
    pub fn new(f: &SetFunctor, g: &SetFunctor) -> (SetFunctor, Day) {
        let c = f.base().clone();
        let n = c.num_objects();
        let mut offsets = Vec::with_capacity(n);
        for e in c.objects() {
            let mut off = Vec::with_capacity(n * n + 1);
            off.push(0);
            for e1 in c.objects() {
                for e2 in c.objects() {
                    let block = c.hom(c.tensor_obj(e1, e2), e).len() * f.size(e1) * g.size(e2);
                    off.push(off.last().unwrap() + block);
                }
            }
            offsets.push(off);
        }
        let mut day = Day {
            base: c.clone(),
            left: f.sizes().to_vec(),
            right: g.sizes().to_vec(),
            offsets,
            class_of: Vec::new(),
            reps: Vec::new(),
            members: Vec::new(),
        };
        for e in c.objects() {
            let mut uf = UnionFind::new(day.offsets[e][n * n]);
            for u in c.morphisms().filter(|&u| !c.is_identity(u)) {
                let (e1, e1b) = (c.src(u), c.dst(u));
                for e2 in c.objects() {
                    let slide = c.tensor_mor(u, c.id(e2));
                    for &h in c.hom(c.tensor_obj(e1b, e2), e) {
                        let hu = c.compose(h, slide).expect("typed");
                        for x in 0..f.size(e1) {
                            for y in 0..g.size(e2) {
                                uf.union(day.raw(e, e1, e2, hu, x, y), day.raw(e, e1b, e2, h, f.act(u, x), y));
                            }
                        }
                    }
                }
                let (e2, e2b) = (e1, e1b);
                for e1 in c.objects() {
                    let slide = c.tensor_mor(c.id(e1), u);
                    for &h in c.hom(c.tensor_obj(e1, e2b), e) {
                        let hv = c.compose(h, slide).expect("typed");
                        for x in 0..f.size(e1) {
                            for y in 0..g.size(e2) {
                                uf.union(day.raw(e, e1, e2, hv, x, y), day.raw(e, e1, e2b, h, x, g.act(u, y)));
                            }
                        }
                    }
                }
            }
            let q = uf.into_quotient();
            day.reps.push(q.reps().to_vec());
            day.members.push(q.members());
            day.class_of.push((0..q.ambient_size()).map(|r| q.class_of(r)).collect());
        }
        let sizes = day.reps.iter().map(Vec::len).collect();
        let functor = SetFunctor::from_fn(c.clone(), sizes, |m, k| {
            let (e1, e2, h, x, y) = day.rep(c.src(m), k);
            day.class(c.dst(m), e1, e2, c.compose(m, h).expect("typed"), x, y)
        });
        (functor, day)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    fn raw(&self, e: Obj, e1: Obj, e2: Obj, h: Mor, x: usize, y: usize) -> usize {
        let n = self.base.num_objects();
        let (l, r) = (self.left[e1], self.right[e2]);
        self.offsets[e][e1 * n + e2] + self.base.hom_position(h) * l * r + x * r + y
    }

    fn decode(&self, e: Obj, raw: usize) -> DayTuple {
        let n = self.base.num_objects();
        let off = &self.offsets[e];
        let block = off.partition_point(|&o| o <= raw) - 1;
        let (e1, e2) = (block / n, block % n);
        let (l, r) = (self.left[e1], self.right[e2]);
        let mut i = raw - off[block];
        let y = i % r;
        i /= r;
        let x = i % l;
        i /= l;
        let h = self.base.hom(self.base.tensor_obj(e1, e2), e)[i];
        (e1, e2, h, x, y)
    }

    /// The class of a raw tuple. `h` must have type `e1⊗e2 → e`.
    pub fn class(&self, e: Obj, e1: Obj, e2: Obj, h: Mor, x: usize, y: usize) -> usize {
        debug_assert_eq!(self.base.src(h), self.base.tensor_obj(e1, e2));
        debug_assert_eq!(self.base.dst(h), e);
        self.class_of[e][self.raw(e, e1, e2, h, x, y)]
    }

    /// `[id_{e1⊗e2}, x, y]`.
    pub fn pair(&self, e1: Obj, e2: Obj, x: usize, y: usize) -> usize {
        let e = self.base.tensor_obj(e1, e2);
        self.class(e, e1, e2, self.base.id(e), x, y)
    }

    pub fn rep(&self, e: Obj, k: usize) -> DayTuple {
        self.decode(e, self.reps[e][k])
    }

    pub fn members(&self, e: Obj, k: usize) -> impl Iterator<Item = DayTuple> + '_ {
        self.members[e][k].iter().map(move |&r| self.decode(e, r))
    }

    /// Defines a map out of the convolution by its value on raw tuples and
    /// checks that it is constant on every class.
    pub fn map_out(&self, mut f: impl FnMut(Obj, DayTuple) -> Result<usize>) -> Result<SetNat> {
        let mut comps = Vec::with_capacity(self.reps.len());
        for e in self.base.objects() {
            let mut out = Vec::with_capacity(self.reps[e].len());
            for k in 0..self.reps[e].len() {
                let v = f(e, self.rep(e, k))?;
                for t in self.members(e, k) {
                    if f(e, t)? != v {
                        return Err(Error::IllDefinedMap(format!(
                            "value differs between members of class {k} at object {}",
                            self.base.object_label(e)
                        )));
                    }
                }
                out.push(v);
            }
            comps.push(out);
        }
        Ok(SetNat { comps })
    }
}

/// The Day hom `[F, G](e) = Nat(F, G(e⊗-))`, acted on by
/// `g ↦ G(g⊗id)∘-`.
#[derive(Clone, Debug)]
pub struct DayHom {
    base: Arc<FinCategory>,
    elems: Vec<Vec<SetNat>>,
    index: Vec<HashMap<SetNat, usize>>,
}

impl DayHom {
    pub fn new(f: &SetFunctor, g: &SetFunctor, budget: u64) -> Result<(SetFunctor, DayHom)> {
        let c = f.base().clone();
        let mut elems = Vec::with_capacity(c.num_objects());
        for e in c.objects() {
            elems.push(nat_set(f, &g.shifted(e), budget)?);
        }
        let index = elems.iter().map(|es| es.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect()).collect();
        let hom = DayHom { base: c.clone(), elems, index };
        let sizes = hom.elems.iter().map(Vec::len).collect();
        let functor = SetFunctor::from_fn(c.clone(), sizes, |m, k| {
            let moved = hom.push(m, &hom.elems[c.src(m)][k], f, g);
            hom.index[c.dst(m)][&moved]
        });
        Ok((functor, hom))
    }

    fn push(&self, m: Mor, a: &SetNat, f: &SetFunctor, g: &SetFunctor) -> SetNat {
        let c = &self.base;
        SetNat::from_fn(f, |x, p| g.act(c.tensor_mor(m, c.id(x)), a.at(x, p)))
    }

    pub fn elem(&self, e: Obj, k: usize) -> &SetNat {
        &self.elems[e][k]
    }

    pub fn index_of(&self, e: Obj, a: &SetNat) -> Option<usize> {
        self.index[e].get(a).copied()
    }

    /// `ev: [F,G]⊗F → G`, `[h, α, x] ↦ G(h)(α(x))`.
    pub fn eval(&self, day: &Day, g: &SetFunctor) -> Result<SetNat> {
        day.map_out(|_, (e1, e2, h, a, x)| Ok(g.act(h, self.elems[e1][a].at(e2, x))))
    }

    /// The transpose `X → [F,G]` of `k: X⊗F → G`, where `day` is the
    /// convolution `X⊗F` that `k` is defined on.
    pub fn curry(&self, k: &SetNat, day: &Day, x: &SetFunctor, f: &SetFunctor) -> Result<SetNat> {
        let c = &self.base;
        SetNat::try_from_fn(x, |e, xi| {
            let a = SetNat::from_fn(f, |d, p| k.at(c.tensor_obj(e, d), day.pair(e, d, xi, p)));
            self.index_of(e, &a)
                .ok_or_else(|| Error::IllDefinedMap(format!("transpose at {} is not natural", c.object_label(e))))
        })
    }
}
