use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finbase::{validate_category, FinCategory, Mor, Obj, Tables};
use crate::prof::PairBase;
use crate::setval::{SetFunctor, UnionFind};

/// A raw optic `(r, f: b → r⊗a, g: r⊗a' → b')`.
pub type OpticRep = (Obj, Mor, Mor);

#[derive(Clone, Debug)]
struct OpticHom {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    reps: Vec<usize>,
    members: Vec<Vec<usize>>,
    first: Mor,
}

/// The category of coend optics over a finite strict symmetric monoidal
/// category `C`.
///
/// `Optic((a,a'), (b,b')) = ∫^r C(b, r⊗a) × C(r⊗a', b')`, quotiented by
/// sliding `((u⊗a)∘f, g) ∼ (f, g∘(u⊗a'))`. Morphisms are numbered in hom
/// order, classes within a hom by minimal raw triple `(r, f, g)`.
#[derive(Debug)]
pub struct OpticCategory {
    c: Arc<FinCategory>,
    cat: Arc<FinCategory>,
    homs: Vec<OpticHom>,
    mor_hom: Vec<usize>,
}

impl OpticCategory {
    pub fn build(c: Arc<FinCategory>) -> Result<Arc<OpticCategory>> {
        let n = c.num_objects();
        let np = n * n;
        let mut homs = Vec::with_capacity(np * np);
        let mut first = 0;
        for ap in 0..np {
            for bp in 0..np {
                let (a, a2) = (ap / n, ap % n);
                let (b, b2) = (bp / n, bp % n);
                let mut offsets = vec![0];
                for r in c.objects() {
                    let nf = c.hom(b, c.tensor_obj(r, a)).len();
                    let ng = c.hom(c.tensor_obj(r, a2), b2).len();
                    offsets.push(offsets[r] + nf * ng);
                }
                let mut uf = UnionFind::new(offsets[n]);
                for u in c.morphisms().filter(|&u| !c.is_identity(u)) {
                    let (r, s) = (c.src(u), c.dst(u));
                    let ua = c.tensor_mor(u, c.id(a));
                    let ua2 = c.tensor_mor(u, c.id(a2));
                    for &f in c.hom(b, c.tensor_obj(r, a)) {
                        for &g in c.hom(c.tensor_obj(s, a2), b2) {
                            let left = raw(&c, &offsets, a2, b2, s, c.compose(ua, f)?, g);
                            let right = raw(&c, &offsets, a2, b2, r, f, c.compose(g, ua2)?);
                            uf.union(left, right);
                        }
                    }
                }
                let q = uf.into_quotient();
                let hom = OpticHom {
                    offsets,
                    class_of: (0..q.ambient_size()).map(|x| q.class_of(x)).collect(),
                    reps: q.reps().to_vec(),
                    members: q.members(),
                    first,
                };
                first += hom.reps.len();
                homs.push(hom);
            }
        }
        let mut mor_hom = vec![0; first];
        for (k, h) in homs.iter().enumerate() {
            for j in 0..h.reps.len() {
                mor_hom[h.first + j] = k;
            }
        }
        // Provisional structure used to compute the tables.
        let mut oc = OpticCategory { c: c.clone(), cat: Arc::new(crate::finbase::terminal()), homs, mor_hom };
        let m = first;
        let mut morphisms = Vec::with_capacity(m);
        for h in 0..m {
            let (r, f, g) = oc.rep(h);
            let k = oc.mor_hom[h];
            morphisms.push((
                format!("[{}|{}|{}]", c.object_label(r), c.morphism_label(f), c.morphism_label(g)),
                k / np,
                k % np,
            ));
        }
        let i = c.unit();
        let mut ids = Vec::with_capacity(np);
        for ap in 0..np {
            let (a, a2) = (ap / n, ap % n);
            ids.push(oc.class(ap, ap, i, c.id(a), c.id(a2)));
        }
        let mut tensor_mor = Vec::with_capacity(m * m);
        for h1 in 0..m {
            for h2 in 0..m {
                tensor_mor.push(oc.tensor_checked(h1, h2)?);
            }
        }
        let mut symmetry = Vec::with_capacity(np * np);
        let mut tensor_obj = Vec::with_capacity(np * np);
        for ap in 0..np {
            for bp in 0..np {
                let (a, a2) = (ap / n, ap % n);
                let (b, b2) = (bp / n, bp % n);
                let src = c.tensor_obj(a, b) * n + c.tensor_obj(a2, b2);
                let dst = c.tensor_obj(b, a) * n + c.tensor_obj(b2, a2);
                tensor_obj.push(src);
                symmetry.push(oc.class(src, dst, i, c.symmetry(b, a), c.symmetry(a2, b2)));
            }
        }
        let mut comp = vec![usize::MAX; m * m];
        for h2 in 0..m {
            for h1 in 0..m {
                if oc.mor_hom[h1] % np == oc.mor_hom[h2] / np {
                    comp[h2 * m + h1] = oc.compose_checked(h2, h1)?;
                }
            }
        }
        let t = Tables {
            name: format!("Optic({})", c.name()),
            objects: (0..np).map(|k| format!("({},{})", c.object_label(k / n), c.object_label(k % n))).collect(),
            morphisms,
            ids,
            tensor_obj,
            tensor_mor,
            unit: i * n + i,
            symmetry,
        };
        let cat = FinCategory::from_tables(t, |g, f| Some(comp[g * m + f]))?;
        validate_category(&cat)?;
        oc.cat = Arc::new(cat);
        Ok(Arc::new(oc))
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.c
    }

    pub fn cat(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    fn n(&self) -> usize {
        self.c.num_objects()
    }

    fn hom_of(&self, ap: Obj, bp: Obj) -> &OpticHom {
        &self.homs[ap * self.n() * self.n() + bp]
    }

    /// Number of optics `(a,a') → (b,b')`.
    pub fn hom_size(&self, ap: Obj, bp: Obj) -> usize {
        self.hom_of(ap, bp).reps.len()
    }

    fn decode(&self, ap: Obj, bp: Obj, x: usize) -> OpticRep {
        let c = &self.c;
        let n = self.n();
        let (a, a2) = (ap / n, ap % n);
        let (b, b2) = (bp / n, bp % n);
        let h = self.hom_of(ap, bp);
        let r = h.offsets.partition_point(|&o| o <= x) - 1;
        let gs = c.hom(c.tensor_obj(r, a2), b2);
        let i = x - h.offsets[r];
        let fs = c.hom(b, c.tensor_obj(r, a));
        (r, fs[i / gs.len()], gs[i % gs.len()])
    }

    /// The optic class of a raw triple.
    pub fn class(&self, ap: Obj, bp: Obj, r: Obj, f: Mor, g: Mor) -> Mor {
        let n = self.n();
        let h = self.hom_of(ap, bp);
        let x = raw(&self.c, &h.offsets, ap % n, bp % n, r, f, g);
        h.first + h.class_of[x]
    }

    /// The stored (minimal) representative of an optic.
    pub fn rep(&self, o: Mor) -> OpticRep {
        let k = self.mor_hom[o];
        let np = self.n() * self.n();
        let h = &self.homs[k];
        self.decode(k / np, k % np, h.reps[o - h.first])
    }

    /// Every raw triple in the class of `o`.
    pub fn members(&self, o: Mor) -> Vec<OpticRep> {
        let k = self.mor_hom[o];
        let np = self.n() * self.n();
        let h = &self.homs[k];
        h.members[o - h.first].iter().map(|&x| self.decode(k / np, k % np, x)).collect()
    }

    pub fn endpoints(&self, o: Mor) -> (Obj, Obj) {
        let np = self.n() * self.n();
        let k = self.mor_hom[o];
        (k / np, k % np)
    }

    fn compose_rep(&self, (r2, f2, g2): OpticRep, (r1, f1, g1): OpticRep) -> Result<OpticRep> {
        let c = &self.c;
        let f = c.compose(c.tensor_mor(c.id(r2), f1), f2)?;
        let g = c.compose(g2, c.tensor_mor(c.id(r2), g1))?;
        Ok((c.tensor_obj(r2, r1), f, g))
    }

    /// `o2∘o1` by nesting, checked independent of the representatives.
    fn compose_checked(&self, o2: Mor, o1: Mor) -> Result<Mor> {
        let (ap, _) = self.endpoints(o1);
        let (_, cp) = self.endpoints(o2);
        let (r, f, g) = self.compose_rep(self.rep(o2), self.rep(o1))?;
        let v = self.class(ap, cp, r, f, g);
        for m2 in self.members(o2) {
            for m1 in self.members(o1) {
                let (r, f, g) = self.compose_rep(m2, m1)?;
                if self.class(ap, cp, r, f, g) != v {
                    return Err(Error::IllDefinedMap("optic composition depends on representatives".into()));
                }
            }
        }
        Ok(v)
    }

    fn tensor_rep(&self, ap: Obj, cp: Obj, (r1, f1, g1): OpticRep, (r2, f2, g2): OpticRep) -> Result<OpticRep> {
        let c = &self.c;
        let n = self.n();
        let (a, a2) = (ap / n, ap % n);
        let (cc, c2) = (cp / n, cp % n);
        let shuffle_f = c.tensor_mors(&[c.id(r1), c.symmetry(a, r2), c.id(cc)]);
        let shuffle_g = c.tensor_mors(&[c.id(r1), c.symmetry(r2, a2), c.id(c2)]);
        let f = c.compose(shuffle_f, c.tensor_mor(f1, f2))?;
        let g = c.compose(c.tensor_mor(g1, g2), shuffle_g)?;
        Ok((c.tensor_obj(r1, r2), f, g))
    }

    fn tensor_checked(&self, o1: Mor, o2: Mor) -> Result<Mor> {
        let c = &self.c;
        let n = self.n();
        let (ap, bp) = self.endpoints(o1);
        let (cp, dp) = self.endpoints(o2);
        let src = c.tensor_obj(ap / n, cp / n) * n + c.tensor_obj(ap % n, cp % n);
        let dst = c.tensor_obj(bp / n, dp / n) * n + c.tensor_obj(bp % n, dp % n);
        let mut val = None;
        for m1 in self.members(o1) {
            for m2 in self.members(o2) {
                let (r, f, g) = self.tensor_rep(ap, cp, m1, m2)?;
                let v = self.class(src, dst, r, f, g);
                if *val.get_or_insert(v) != v {
                    return Err(Error::IllDefinedMap("optic tensor depends on representatives".into()));
                }
            }
        }
        Ok(val.expect("classes are nonempty"))
    }

    /// Re-checks composition on every pair of raw representatives.
    pub fn check_composition(&self) -> Result<()> {
        for o2 in self.cat.morphisms() {
            for o1 in self.cat.morphisms() {
                if self.cat.try_compose(o2, o1).is_some() {
                    self.compose_checked(o2, o1)?;
                }
            }
        }
        Ok(())
    }
}

fn raw(c: &FinCategory, offsets: &[usize], a2: Obj, b2: Obj, r: Obj, f: Mor, g: Mor) -> usize {
    let ng = c.hom(c.tensor_obj(r, a2), b2).len();
    offsets[r] + c.hom_position(f) * ng + c.hom_position(g)
}

/// The optic category as a base for strong profunctors.
#[derive(Debug)]
pub struct OpticBase {
    pub optic: Arc<OpticCategory>,
}

impl PairBase for OpticBase {
    fn base(&self) -> &Arc<FinCategory> {
        &self.optic.c
    }

    fn cat(&self) -> &Arc<FinCategory> {
        &self.optic.cat
    }

    fn lift(&self, u: Mor, v: Mor) -> Mor {
        let c = &self.optic.c;
        let n = c.num_objects();
        let src = c.dst(u) * n + c.src(v);
        let dst = c.src(u) * n + c.dst(v);
        self.optic.class(src, dst, c.unit(), u, v)
    }

    fn splits(&self, h: Mor, m: Obj) -> Vec<(Obj, Mor, Mor)> {
        let o = &self.optic;
        let c = &o.c;
        let n = c.num_objects();
        let (ap, bp) = o.endpoints(h);
        let (x, x2) = (ap / n, ap % n);
        let (y, y2) = (bp / n, bp % n);
        o.members(h)
            .into_iter()
            .map(|(r, f, g)| {
                let mid = c.tensor_obj(r, m);
                let h1 = o.class(x * n + m, y * n + mid, r, f, c.id(mid));
                let h2 = o.class(m * n + x2, mid * n + y2, r, c.id(mid), g);
                (mid, h1, h2)
            })
            .collect()
    }

    fn seq_unit(&self) -> SetFunctor {
        let i = self.optic.c.unit();
        SetFunctor::yoneda(self.optic.cat.clone(), self.pair(i, i))
    }

    fn unit_elem(&self, w: Mor) -> usize {
        let c = &self.optic.c;
        let n = c.num_objects();
        let i = c.unit();
        let (x, x2) = (c.src(w), c.dst(w));
        let o = self.optic.class(i * n + i, x * n + x2, x, c.id(x), w);
        self.optic.cat.hom_position(o)
    }

    fn unit_mor(&self, e: Obj, k: usize) -> Mor {
        let c = &self.optic.c;
        let i = c.unit();
        let o = self.optic.cat.hom(self.pair(i, i), e)[k];
        let (_, f, g) = self.optic.rep(o);
        c.compose(g, f).expect("typed")
    }
}
