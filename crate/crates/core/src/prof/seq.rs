use std::sync::Arc;

use super::PairBase;
use crate::error::{Error, Result};
use crate::finbase::Obj;
use crate::setval::{Day, SetFunctor, SetNat, UnionFind};

/// A raw sequencing element `(c, p ∈ P(x, c), q ∈ Q(c, x'))`.
pub type SeqTuple = (Obj, usize, usize);

/// `(P⊲Q)(x, x') = ∫^c P(x, c) × Q(c, x')`.
///
/// Raw tuples are indexed lexicographically by `(c, p, q)`; each class is
/// represented by its minimal tuple.
#[derive(Clone, Debug)]
pub struct Seq {
    pb: Arc<dyn PairBase>,
    right: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    class_of: Vec<Vec<usize>>,
    reps: Vec<Vec<usize>>,
    members: Vec<Vec<Vec<usize>>>,
}

impl Seq {
    pub fn new(pb: Arc<dyn PairBase>, p: &SetFunctor, q: &SetFunctor) -> Result<(SetFunctor, Seq)> {
        let c = pb.base().clone();
        let e = pb.cat().clone();
        let mut seq = Seq {
            pb: pb.clone(),
            right: q.sizes().to_vec(),
            offsets: Vec::new(),
            class_of: Vec::new(),
            reps: Vec::new(),
            members: Vec::new(),
        };
        for k in e.objects() {
            let (x, x2) = pb.unpair(k);
            let mut off = vec![0];
            for m in c.objects() {
                let block = p.size(pb.pair(x, m)) * q.size(pb.pair(m, x2));
                off.push(off.last().unwrap() + block);
            }
            seq.offsets.push(off);
        }
        for k in e.objects() {
            let (x, x2) = pb.unpair(k);
            let mut uf = UnionFind::new(*seq.offsets[k].last().unwrap());
            for u in c.morphisms().filter(|&u| !c.is_identity(u)) {
                let (m, m2) = (c.src(u), c.dst(u));
                let push_p = pb.lift(c.id(x), u);
                let pull_q = pb.lift(u, c.id(x2));
                for pe in 0..p.size(pb.pair(x, m)) {
                    for qe in 0..q.size(pb.pair(m2, x2)) {
                        uf.union(seq.raw(k, m2, p.act(push_p, pe), qe), seq.raw(k, m, pe, q.act(pull_q, qe)));
                    }
                }
            }
            let qs = uf.into_quotient();
            seq.reps.push(qs.reps().to_vec());
            seq.members.push(qs.members());
            seq.class_of.push((0..qs.ambient_size()).map(|r| qs.class_of(r)).collect());
        }
        let sizes: Vec<usize> = seq.reps.iter().map(Vec::len).collect();
        let mut action = Vec::with_capacity(e.num_morphisms());
        for h in e.morphisms() {
            let (s, d) = (e.src(h), e.dst(h));
            let mut row = Vec::with_capacity(sizes[s]);
            for k in 0..sizes[s] {
                let mut val = None;
                for (m, pe, qe) in seq.members(s, k) {
                    for (mid, h1, h2) in pb.splits(h, m) {
                        let v = seq.class(d, mid, p.act(h1, pe), q.act(h2, qe));
                        match val {
                            None => val = Some(v),
                            Some(w) if w != v => {
                                return Err(Error::IllDefinedMap(format!(
                                    "sequencing action of {} depends on the representative",
                                    e.morphism_label(h)
                                )))
                            }
                            _ => {}
                        }
                    }
                }
                row.push(val.expect("classes are nonempty"));
            }
            action.push(row);
        }
        Ok((SetFunctor::new_unchecked(e, sizes, action), seq))
    }

    fn raw(&self, k: Obj, m: Obj, p: usize, q: usize) -> usize {
        let (_, x2) = self.pb.unpair(k);
        let r = self.right[self.pb.pair(m, x2)];
        self.offsets[k][m] + p * r + q
    }

    fn decode(&self, k: Obj, raw: usize) -> SeqTuple {
        let (_, x2) = self.pb.unpair(k);
        let off = &self.offsets[k];
        let m = off.partition_point(|&o| o <= raw) - 1;
        let r = self.right[self.pb.pair(m, x2)];
        let i = raw - off[m];
        (m, i / r, i % r)
    }

    /// Class of `(m, p, q)` at the pair object `k = (x, x')`.
    pub fn class(&self, k: Obj, m: Obj, p: usize, q: usize) -> usize {
        self.class_of[k][self.raw(k, m, p, q)]
    }

    pub fn rep(&self, k: Obj, cls: usize) -> SeqTuple {
        self.decode(k, self.reps[k][cls])
    }

    pub fn members(&self, k: Obj, cls: usize) -> impl Iterator<Item = SeqTuple> + '_ {
        self.members[k][cls].iter().map(move |&r| self.decode(k, r))
    }

    pub fn num_classes(&self, k: Obj) -> usize {
        self.reps[k].len()
    }

    /// A map out of `P⊲Q` given on raw tuples, checked constant on classes.
    pub fn map_out(&self, mut f: impl FnMut(Obj, SeqTuple) -> Result<usize>) -> Result<SetNat> {
        let mut comps = Vec::with_capacity(self.reps.len());
        for k in 0..self.reps.len() {
            let mut out = Vec::with_capacity(self.reps[k].len());
            for cls in 0..self.reps[k].len() {
                let v = f(k, self.rep(k, cls))?;
                for t in self.members(k, cls) {
                    if f(k, t)? != v {
                        return Err(Error::IllDefinedMap(format!(
                            "value differs between members of sequencing class {cls}"
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

/// Inputs of the interchange map `(P⊲Q)⊗(R⊲S) → (P⊗R)⊲(Q⊗S)`.
pub struct DeltaParts<'a> {
    pub pb: &'a Arc<dyn PairBase>,
    pub src: &'a Day,
    pub pq: &'a Seq,
    pub rs: &'a Seq,
    pub pr: &'a Day,
    pub qs: &'a Day,
    pub tgt: &'a Seq,
    pub tgt_functor: &'a SetFunctor,
}

/// `[h, [c1,p,q], [c2,r,s]] ↦ h·[c1⊗c2, [id,p,r], [id,q,s]]`, checked
/// against every raw member of both the outer and inner classes.
pub fn delta(d: DeltaParts<'_>) -> Result<SetNat> {
    let pb = d.pb;
    let c = pb.base();
    d.src.map_out(|_, (e1, e2, h, s1, s2)| {
        let (x1, y1) = pb.unpair(e1);
        let (x2, y2) = pb.unpair(e2);
        let e12 = pb.cat().tensor_obj(e1, e2);
        let mut val = None;
        for (c1, p, q) in d.pq.members(e1, s1) {
            for (c2, r, s) in d.rs.members(e2, s2) {
                let left = d.pr.pair(pb.pair(x1, c1), pb.pair(x2, c2), p, r);
                let right = d.qs.pair(pb.pair(c1, y1), pb.pair(c2, y2), q, s);
                let v = d.tgt.class(e12, c.tensor_obj(c1, c2), left, right);
                let v = d.tgt_functor.act(h, v);
                match val {
                    None => val = Some(v),
                    Some(w) if w != v => {
                        return Err(Error::IllDefinedMap("interchange depends on the sequencing representative".into()))
                    }
                    _ => {}
                }
            }
        }
        Ok(val.expect("classes are nonempty"))
    })
}
