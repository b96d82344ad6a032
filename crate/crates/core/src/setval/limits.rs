use std::collections::HashMap;

use super::{SetFunctor, SetNat, UnionFind};
use crate::error::{Error, Result};
use crate::finbase::Obj;

/// Pointwise pullback `{(x, y) | f(x) = g(y)}`, pairs in lexicographic
/// order.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub functor: SetFunctor,
    pub p1: SetNat,
    pub p2: SetNat,
    pairs: Vec<Vec<(usize, usize)>>,
    index: Vec<HashMap<(usize, usize), usize>>,
}

pub fn pullback(f: &SetNat, fdom: &SetFunctor, g: &SetNat, gdom: &SetFunctor) -> Pullback {
    let c = fdom.base().clone();
    let mut pairs = Vec::with_capacity(c.num_objects());
    let mut index = Vec::with_capacity(c.num_objects());
    for e in c.objects() {
        let mut ps = Vec::new();
        let mut ix = HashMap::new();
        for x in 0..fdom.size(e) {
            for y in 0..gdom.size(e) {
                if f.at(e, x) == g.at(e, y) {
                    ix.insert((x, y), ps.len());
                    ps.push((x, y));
                }
            }
        }
        pairs.push(ps);
        index.push(ix);
    }
    let sizes = pairs.iter().map(Vec::len).collect();
    let functor = SetFunctor::from_fn(c.clone(), sizes, |m, i| {
        let (x, y) = pairs[c.src(m)][i];
        index[c.dst(m)][&(fdom.act(m, x), gdom.act(m, y))]
    });
    let p1 = SetNat { comps: pairs.iter().map(|ps| ps.iter().map(|p| p.0).collect()).collect() };
    let p2 = SetNat { comps: pairs.iter().map(|ps| ps.iter().map(|p| p.1).collect()).collect() };
    Pullback { functor, p1, p2, pairs, index }
}

impl Pullback {
    pub fn pair(&self, e: Obj, i: usize) -> (usize, usize) {
        self.pairs[e][i]
    }

    pub fn index_of(&self, e: Obj, x: usize, y: usize) -> Option<usize> {
        self.index[e].get(&(x, y)).copied()
    }

    /// The unique map `⟨p, q⟩` into the pullback; fails if the cone does
    /// not commute.
    pub fn mediator(&self, p: &SetNat, q: &SetNat) -> Result<SetNat> {
        let mut comps = Vec::with_capacity(p.comps.len());
        for (e, (pc, qc)) in p.comps.iter().zip(&q.comps).enumerate() {
            let mut out = Vec::with_capacity(pc.len());
            for (i, (&x, &y)) in pc.iter().zip(qc).enumerate() {
                match self.index_of(e, x, y) {
                    Some(k) => out.push(k),
                    None => {
                        return Err(Error::MediatorNotFound(format!("cone legs disagree at object {e}, element {i}")))
                    }
                }
            }
            comps.push(out);
        }
        Ok(SetNat { comps })
    }
}

/// Pointwise pushout of `F ← S → G`, as a quotient of `F + G`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub functor: SetFunctor,
    pub i1: SetNat,
    pub i2: SetNat,
    left_sizes: Vec<usize>,
    members: Vec<Vec<Vec<usize>>>,
}

pub fn pushout(f: &SetNat, fcod: &SetFunctor, g: &SetNat, gcod: &SetFunctor, apex: &SetFunctor) -> Pushout {
    let c = fcod.base().clone();
    let mut quotients = Vec::with_capacity(c.num_objects());
    for e in c.objects() {
        let nl = fcod.size(e);
        let mut uf = UnionFind::new(nl + gcod.size(e));
        for s in 0..apex.size(e) {
            uf.union(f.at(e, s), nl + g.at(e, s));
        }
        quotients.push(uf.into_quotient());
    }
    let left_sizes: Vec<usize> = c.objects().map(|e| fcod.size(e)).collect();
    let sizes = quotients.iter().map(|q| q.num_classes()).collect();
    let functor = SetFunctor::from_fn(c.clone(), sizes, |m, k| {
        let (s, d) = (c.src(m), c.dst(m));
        let r = quotients[s].rep(k);
        let img = if r < left_sizes[s] { fcod.act(m, r) } else { left_sizes[d] + gcod.act(m, r - left_sizes[s]) };
        quotients[d].class_of(img)
    });
    let i1 = SetNat::from_fn(fcod, |e, x| quotients[e].class_of(x));
    let i2 = SetNat::from_fn(gcod, |e, y| quotients[e].class_of(left_sizes[e] + y));
    let members = quotients.iter().map(|q| q.members()).collect();
    Pushout { functor, i1, i2, left_sizes, members }
}

impl Pushout {
    /// The unique map out of the pushout induced by `a: F → X`, `b: G → X`.
    pub fn mediator(&self, a: &SetNat, b: &SetNat) -> Result<SetNat> {
        let mut comps = Vec::with_capacity(self.members.len());
        for (e, classes) in self.members.iter().enumerate() {
            let nl = self.left_sizes[e];
            let val = |m: usize| if m < nl { a.at(e, m) } else { b.at(e, m - nl) };
            let mut out = Vec::with_capacity(classes.len());
            for (k, ms) in classes.iter().enumerate() {
                let v = val(ms[0]);
                if ms.iter().any(|&m| val(m) != v) {
                    return Err(Error::MediatorNotFound(format!("cocone legs disagree on class {k} at object {e}")));
                }
                out.push(v);
            }
            comps.push(out);
        }
        Ok(SetNat { comps })
    }
}

/// Binary product, as a pullback over the terminal functor.
pub fn product(f: &SetFunctor, g: &SetFunctor) -> Pullback {
    let one = |h: &SetFunctor| SetNat::from_fn(h, |_, _| 0);
    pullback(&one(f), f, &one(g), g)
}

/// Binary coproduct, as a pushout under the empty functor.
pub fn coproduct(f: &SetFunctor, g: &SetFunctor) -> Pushout {
    let empty = SetFunctor::constant(f.base().clone(), 0);
    let none = SetNat::from_fn(&empty, |_, _| 0);
    pushout(&none, f, &none, g, &empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finbase::z2_group;
    use crate::setval::nat_set;
    use std::sync::Arc;

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let c = Arc::new(z2_group());
        let y = SetFunctor::yoneda(c, 0);
        let id = SetNat::identity(&y);
        let pb = pullback(&id, &y, &id, &y);
        assert_eq!(pb.functor, y);
        assert!(pb.p1.is_identity() && pb.p2.is_identity());
    }

    #[test]
    fn injections_have_empty_pullback() {
        let c = Arc::new(z2_group());
        let y = SetFunctor::yoneda(c, 0);
        let co = coproduct(&y, &y);
        let pb = pullback(&co.i1, &y, &co.i2, &y);
        assert_eq!(pb.functor.total_size(), 0);
    }

    #[test]
    fn pullback_of_constants_matches_pairs() {
        let c = Arc::new(z2_group());
        let two = SetFunctor::constant(c, 2);
        let f = SetNat { comps: vec![vec![0, 0]] };
        let g = SetNat { comps: vec![vec![1, 1]] };
        assert_eq!(pullback(&f, &two, &g, &two).functor.size(0), 0);
        let g0 = SetNat { comps: vec![vec![0, 1]] };
        // pairs (x, y) with 0 = y: x free, y = 0
        let pb = pullback(&f, &two, &g0, &two);
        assert_eq!(pb.functor.size(0), 2);
        pb.functor.check_functorial().unwrap();
    }

    #[test]
    fn pullback_universal_property_exhaustive() {
        let c = Arc::new(z2_group());
        let y = SetFunctor::yoneda(c.clone(), 0);
        let one = SetFunctor::constant(c.clone(), 1);
        let two = SetFunctor::constant(c.clone(), 2);
        let f = SetNat::from_fn(&y, |_, _| 0);
        let pb = pullback(&f, &y, &f, &y);
        pb.functor.check_functorial().unwrap();
        for x in [&one, &two, &y] {
            let ps = nat_set(x, &y, 1000).unwrap();
            for p in &ps {
                for q in &ps {
                    let m = pb.mediator(p, q).unwrap();
                    assert_eq!(pb.p1.after(&m), *p);
                    assert_eq!(pb.p2.after(&m), *q);
                    let all = nat_set(x, &pb.functor, 1000).unwrap();
                    let n = all.iter().filter(|k| pb.p1.after(k) == *p && pb.p2.after(k) == *q).count();
                    assert_eq!(n, 1);
                }
            }
        }
    }

    #[test]
    fn pushout_is_functorial_and_mediates() {
        let c = Arc::new(z2_group());
        let y = SetFunctor::yoneda(c.clone(), 0);
        let one = SetFunctor::constant(c.clone(), 1);
        let po = pushout(&SetNat::identity(&y), &y, &SetNat::identity(&y), &y, &y);
        po.functor.check_functorial().unwrap();
        assert_eq!(po.functor.size(0), 2);
        let bang = SetNat::from_fn(&y, |_, _| 0);
        let m = po.mediator(&bang, &bang).unwrap();
        assert!(m.is_natural(&po.functor, &one));
    }
}
