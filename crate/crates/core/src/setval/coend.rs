use std::sync::Arc;

use super::{QuotientSet, SetFunctor, UnionFind};
use crate::error::{Error, Result};
use crate::finbase::{FinCategory, Mor, Obj, Tables};

/// `E^op × E`, with its componentwise strict symmetric monoidal structure.
///
/// Object `(x, x')` has index `x·n + x'`; the morphism `(u, v)` with
/// `u: y → x`, `v: x' → y'` goes `(x, x') → (y, y')` and has index
/// `u·m + v`.
#[derive(Clone, Debug)]
pub struct OpProduct {
    pub base: Arc<FinCategory>,
    pub cat: Arc<FinCategory>,
}

pub fn op_product(e: &Arc<FinCategory>) -> OpProduct {
    let n = e.num_objects();
    let m = e.num_morphisms();
    let objects = (0..n * n).map(|k| format!("({},{})", e.object_label(k / n), e.object_label(k % n))).collect();
    let morphisms = (0..m * m)
        .map(|k| {
            let (u, v) = (k / m, k % m);
            (
                format!("({},{})", e.morphism_label(u), e.morphism_label(v)),
                e.dst(u) * n + e.src(v),
                e.src(u) * n + e.dst(v),
            )
        })
        .collect();
    let t = Tables {
        name: format!("{}^op×{}", e.name(), e.name()),
        objects,
        morphisms,
        ids: (0..n * n).map(|k| e.id(k / n) * m + e.id(k % n)).collect(),
        tensor_obj: (0..n * n * n * n)
            .map(|k| {
                let (a, b) = (k / (n * n), k % (n * n));
                e.tensor_obj(a / n, b / n) * n + e.tensor_obj(a % n, b % n)
            })
            .collect(),
        tensor_mor: (0..m * m * m * m)
            .map(|k| {
                let (f, g) = (k / (m * m), k % (m * m));
                e.tensor_mor(f / m, g / m) * m + e.tensor_mor(f % m, g % m)
            })
            .collect(),
        unit: e.unit() * n + e.unit(),
        symmetry: (0..n * n * n * n)
            .map(|k| {
                let (a, b) = (k / (n * n), k % (n * n));
                e.symmetry(b / n, a / n) * m + e.symmetry(a % n, b % n)
            })
            .collect(),
    };
    let ee = e.clone();
    let cat = FinCategory::from_tables(t, |g, f| {
        let (gu, gv) = (g / m, g % m);
        let (fu, fv) = (f / m, f % m);
        Some(ee.try_compose(fu, gu)? * m + ee.try_compose(gv, fv)?)
    })
    .expect("product of a valid category is valid");
    OpProduct { base: e.clone(), cat: Arc::new(cat) }
}

impl OpProduct {
    pub fn n(&self) -> usize {
        self.base.num_objects()
    }

    pub fn pair(&self, x: Obj, x2: Obj) -> Obj {
        x * self.n() + x2
    }

    pub fn unpair(&self, k: Obj) -> (Obj, Obj) {
        (k / self.n(), k % self.n())
    }

    /// The morphism `(u, v)`; `u` is contravariant.
    pub fn mor(&self, u: Mor, v: Mor) -> Mor {
        u * self.base.num_morphisms() + v
    }

    pub fn unmor(&self, h: Mor) -> (Mor, Mor) {
        let m = self.base.num_morphisms();
        (h / m, h % m)
    }
}

fn diag_offsets(d: &OpProduct, t: &SetFunctor) -> Vec<usize> {
    let mut off = vec![0];
    for c in d.base.objects() {
        off.push(off[c] + t.size(d.pair(c, c)));
    }
    off
}

/// `∫^c T(c, c)` as a quotient of `Σ_c T(c, c)`, indexed by `(c, x)`.
///
/// For every `f: c → c'` and `x ∈ T(c', c)` the elements `T(f, c)(x)` and
/// `T(c', f)(x)` are identified.
pub fn coend(d: &OpProduct, t: &SetFunctor) -> QuotientSet {
    let e = &d.base;
    let off = diag_offsets(d, t);
    let mut uf = UnionFind::new(off[e.num_objects()]);
    for f in e.morphisms() {
        let (c, c2) = (e.src(f), e.dst(f));
        let left = d.mor(f, e.id(c));
        let right = d.mor(e.id(c2), f);
        for x in 0..t.size(d.pair(c2, c)) {
            uf.union(off[c] + t.act(left, x), off[c2] + t.act(right, x));
        }
    }
    uf.into_quotient()
}

/// `∫_c T(c, c)`: the compatible families, in lexicographic order.
pub fn end(d: &OpProduct, t: &SetFunctor, budget: u64) -> Result<Vec<Vec<usize>>> {
    let e = d.base.clone();
    let n = e.num_objects();
    let mut out = Vec::new();
    let mut fam = vec![0usize; n];
    let mut tried = 0u64;
    // An equation along f: c → c' is checked once both ends are fixed.
    fn consistent(d: &OpProduct, t: &SetFunctor, fam: &[usize], upto: usize) -> bool {
        let e = &d.base;
        e.morphisms().all(|f| {
            let (c, c2) = (e.src(f), e.dst(f));
            if c > upto || c2 > upto {
                return true;
            }
            t.act(d.mor(e.id(c), f), fam[c]) == t.act(d.mor(f, e.id(c2)), fam[c2])
        })
    }
    fn go(
        d: &OpProduct,
        t: &SetFunctor,
        k: usize,
        fam: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        tried: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if k == fam.len() {
            out.push(fam.clone());
            return Ok(());
        }
        for x in 0..t.size(d.pair(k, k)) {
            *tried += 1;
            if *tried > budget {
                return Err(Error::BudgetExceeded { bound: budget });
            }
            fam[k] = x;
            if consistent(d, t, fam, k) {
                go(d, t, k + 1, fam, out, tried, budget)?;
            }
        }
        Ok(())
    }
    go(d, &t.clone(), 0, &mut fam, &mut out, &mut tried, budget)?;
    Ok(out)
}

/// The hom profunctor `E(-, -)` as a copresheaf on `E^op × E`.
pub fn hom_functor(d: &OpProduct) -> SetFunctor {
    let e = d.base.clone();
    let sizes = d.cat.objects().map(|k| {
        let (x, x2) = d.unpair(k);
        e.hom(x, x2).len()
    });
    let sizes: Vec<usize> = sizes.collect();
    let dd = d.clone();
    SetFunctor::from_fn(d.cat.clone(), sizes, move |h, i| {
        let (x, x2) = dd.unpair(dd.cat.src(h));
        let (u, v) = dd.unmor(h);
        let w = e.hom(x, x2)[i];
        let r = e.compose(v, e.compose(w, u).expect("typed")).expect("typed");
        e.hom_position(r)
    })
}
