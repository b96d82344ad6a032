use super::MonoidalEngine;
use crate::error::{Error, Result};
use crate::finbase::DEFAULT_MAX_NAT_CANDIDATES;
use crate::setval::UnionFind;

/// A function between finite cardinals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetMap {
    pub dom: usize,
    pub cod: usize,
    pub map: Vec<usize>,
}

impl SetMap {
    pub fn new(dom: usize, cod: usize, map: Vec<usize>) -> Result<SetMap> {
        if map.len() != dom || map.iter().any(|&y| y >= cod) {
            return Err(Error::TypeMismatch(format!("not a function {dom} → {cod}")));
        }
        Ok(SetMap { dom, cod, map })
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> SetMap {
        SetMap { dom, cod, map: (0..dom).map(f).collect() }
    }

    pub fn at(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// Finite sets with `⊗ = ⊲ = ×` (row-major pairs), `[a,b] = b^a`
/// (functions encoded big-endian, so index order is lexicographic) and a
/// configurable monoid `⊥`.
///
/// Objects are cardinalities. The duoidal data is the degenerate one
/// coming from the symmetry: `δ` is the middle-four interchange.
#[derive(Clone, Debug)]
pub struct SetEngine {
    name: String,
    bottom: usize,
    mult: Vec<Vec<usize>>,
    bottom_unit: usize,
    budget: u64,
}

impl SetEngine {
    /// `⊥ = {0,…,k−1}` with multiplication table `mult` and unit `e`,
    /// checked to be a monoid.
    pub fn new(name: &str, mult: Vec<Vec<usize>>, e: usize, budget: u64) -> Result<SetEngine> {
        let k = mult.len();
        if k == 0 || e >= k || mult.iter().any(|row| row.len() != k || row.iter().any(|&v| v >= k)) {
            return Err(Error::Config("⊥ multiplication must be a square table over ⊥".into()));
        }
        for x in 0..k {
            if mult[e][x] != x || mult[x][e] != x {
                return Err(Error::IdentityViolation(format!("⊥ unit {e} at {x}")));
            }
            for y in 0..k {
                for z in 0..k {
                    if mult[mult[x][y]][z] != mult[x][mult[y][z]] {
                        return Err(Error::AssocViolation(format!("⊥ multiplication at ({x},{y},{z})")));
                    }
                }
            }
        }
        if budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        Ok(SetEngine { name: name.into(), bottom: k, mult, bottom_unit: e, budget })
    }

    /// I4: `⊥ = {0,1}` with `m = AND` and `u = 1`.
    pub fn i4() -> SetEngine {
        Self::i4_with_budget(DEFAULT_MAX_NAT_CANDIDATES)
    }

    pub fn i4_with_budget(budget: u64) -> SetEngine {
        SetEngine::new("I4", vec![vec![0, 0], vec![0, 1]], 1, budget).expect("AND is a monoid")
    }

    pub fn with_budget(&self, budget: u64) -> SetEngine {
        SetEngine { budget, ..self.clone() }
    }

    /// `⊥`'s multiplication as a function of two elements.
    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    fn bounded(&self, n: Option<u128>) -> Result<usize> {
        match n {
            Some(n) if n <= self.budget as u128 => Ok(n as usize),
            _ => Err(Error::BudgetExceeded { bound: self.budget }),
        }
    }

    fn power(&self, base: usize, exp: usize) -> Result<usize> {
        let mut acc: Option<u128> = Some(1);
        for _ in 0..exp {
            acc = acc.and_then(|v| v.checked_mul(base as u128)).filter(|&v| v <= u64::MAX as u128);
        }
        self.bounded(acc)
    }

    fn check_dom(&self, f: &SetMap, d: usize) -> Result<()> {
        if f.dom != d {
            return Err(Error::NotComposable(format!("map from {} used on {d}", f.dom)));
        }
        Ok(())
    }

    /// Pairs `(x, y)` with `f(x) = g(y)`, lexicographically.
    fn matching_pairs(f: &SetMap, g: &SetMap) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..f.dom {
            for y in 0..g.dom {
                if f.map[x] == g.map[y] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn pushout_classes(f: &SetMap, g: &SetMap) -> (usize, Vec<usize>) {
        let (n1, n2) = (f.cod, g.cod);
        let mut uf = UnionFind::new(n1 + n2);
        for x in 0..f.dom {
            uf.union(f.map[x], n1 + g.map[x]);
        }
        let q = uf.into_quotient();
        (q.num_classes(), (0..n1 + n2).map(|i| q.class_of(i)).collect())
    }

    fn enumerate(&self, candidates: &[Vec<usize>], injective: bool, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let mut tries: u64 = 0;
        let mut cur = Vec::with_capacity(candidates.len());
        let mut used = std::collections::HashSet::new();
        fn go(
            i: usize,
            cands: &[Vec<usize>],
            injective: bool,
            cur: &mut Vec<usize>,
            used: &mut std::collections::HashSet<usize>,
            out: &mut Vec<Vec<usize>>,
            tries: &mut u64,
            budget: u64,
        ) -> Result<()> {
            if i == cands.len() {
                out.push(cur.clone());
                return Ok(());
            }
            for &y in &cands[i] {
                *tries += 1;
                if *tries > budget {
                    return Err(Error::BudgetExceeded { bound: budget });
                }
                if injective && used.contains(&y) {
                    continue;
                }
                cur.push(y);
                if injective {
                    used.insert(y);
                }
                go(i + 1, cands, injective, cur, used, out, tries, budget)?;
                cur.pop();
                used.remove(&y);
            }
            Ok(())
        }
        go(0, candidates, injective, &mut cur, &mut used, out, &mut tries, self.budget)
    }
}

impl MonoidalEngine for SetEngine {
    type Obj = usize;
    type Mor = SetMap;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn sizes(&self, a: &usize) -> Vec<usize> {
        vec![*a]
    }

    fn describe(&self, a: &usize) -> String {
        format!("{a}")
    }

    fn dom(&self, f: &SetMap) -> usize {
        f.dom
    }

    fn cod(&self, f: &SetMap) -> usize {
        f.cod
    }

    fn id(&self, a: &usize) -> SetMap {
        SetMap::from_fn(*a, *a, |x| x)
    }

    fn compose(&self, g: &SetMap, f: &SetMap) -> Result<SetMap> {
        if f.cod != g.dom {
            return Err(Error::NotComposable(format!("{} → {} after {} → {}", g.dom, g.cod, f.dom, f.cod)));
        }
        Ok(SetMap::from_fn(f.dom, g.cod, |x| g.map[f.map[x]]))
    }

    fn inverse(&self, f: &SetMap) -> Option<SetMap> {
        if f.dom != f.cod {
            return None;
        }
        let mut inv = vec![usize::MAX; f.cod];
        for (x, &y) in f.map.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(SetMap { dom: f.cod, cod: f.dom, map: inv })
    }

    fn first_difference(&self, f: &SetMap, g: &SetMap) -> Option<String> {
        if f.dom != g.dom || f.cod != g.cod {
            return Some(format!("types {} → {} and {} → {}", f.dom, f.cod, g.dom, g.cod));
        }
        (0..f.dom).find(|&x| f.map[x] != g.map[x]).map(|x| format!("element {x}: {} vs {}", f.map[x], g.map[x]))
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<SetMap>> {
        let n = self.power(*b, *a)?;
        Ok((0..n).map(|k| SetMap::from_fn(*a, *b, |i| digit(k, *b, *a, i))).collect())
    }

    fn lifts(&self, q: &SetMap, g: &SetMap, injective: bool) -> Result<Vec<SetMap>> {
        if q.cod != g.cod {
            return Err(Error::TypeMismatch("lift along a map with another codomain".into()));
        }
        let cands: Vec<Vec<usize>> = g.map.iter().map(|&z| (0..q.dom).filter(|&y| q.map[y] == z).collect()).collect();
        let mut out = Vec::new();
        self.enumerate(&cands, injective, &mut out)?;
        Ok(out.into_iter().map(|m| SetMap { dom: g.dom, cod: q.dom, map: m }).collect())
    }

    fn isos(&self, a: &usize, b: &usize) -> Result<Vec<SetMap>> {
        if a != b {
            return Ok(Vec::new());
        }
        let cands = vec![(0..*b).collect::<Vec<_>>(); *a];
        let mut out = Vec::new();
        self.enumerate(&cands, true, &mut out)?;
        Ok(out.into_iter().map(|m| SetMap { dom: *a, cod: *b, map: m }).collect())
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor(&self, a: &usize, b: &usize) -> Result<usize> {
        self.bounded((*a as u128).checked_mul(*b as u128))
    }

    fn tensor_mor(&self, f: &SetMap, g: &SetMap) -> Result<SetMap> {
        let dom = self.tensor(&f.dom, &g.dom)?;
        let cod = self.tensor(&f.cod, &g.cod)?;
        Ok(SetMap::from_fn(dom, cod, |k| f.map[k / g.dom] * g.cod + g.map[k % g.dom]))
    }

    fn assoc(&self, a: &usize, b: &usize, c: &usize) -> Result<SetMap> {
        let n = self.tensor(&self.tensor(a, b)?, c)?;
        Ok(self.id(&n))
    }

    fn assoc_inv(&self, a: &usize, b: &usize, c: &usize) -> Result<SetMap> {
        self.assoc(a, b, c)
    }

    fn lunit(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn lunit_inv(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn runit(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn runit_inv(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn sym(&self, a: &usize, b: &usize) -> Result<SetMap> {
        let n = self.tensor(a, b)?;
        Ok(SetMap::from_fn(n, n, |k| (k % b) * a + k / b))
    }

    fn ihom(&self, a: &usize, b: &usize) -> Result<usize> {
        self.power(*b, *a)
    }

    fn eval(&self, a: &usize, b: &usize) -> Result<SetMap> {
        let h = self.ihom(a, b)?;
        let dom = self.tensor(&h, a)?;
        Ok(SetMap::from_fn(dom, *b, |k| digit(k / a, *b, *a, k % a)))
    }

    fn curry(&self, f: &SetMap, x: &usize, a: &usize) -> Result<SetMap> {
        self.check_dom(f, self.tensor(x, a)?)?;
        let b = f.cod;
        let h = self.ihom(a, &b)?;
        Ok(SetMap::from_fn(*x, h, |u| (0..*a).fold(0, |acc, i| acc * b + f.map[u * a + i])))
    }

    fn uncurry(&self, k: &SetMap, a: &usize, b: &usize) -> Result<SetMap> {
        if k.cod != self.ihom(a, b)? {
            return Err(Error::TypeMismatch("uncurry of a map not into [a,b]".into()));
        }
        Ok(SetMap::from_fn(k.dom * a, *b, |u| digit(k.map[u / a], *b, *a, u % a)))
    }

    fn pullback(&self, f: &SetMap, g: &SetMap) -> Result<(usize, SetMap, SetMap)> {
        if f.cod != g.cod {
            return Err(Error::TypeMismatch("pullback legs have different codomains".into()));
        }
        let pairs = Self::matching_pairs(f, g);
        let n = pairs.len();
        Ok((n, SetMap::from_fn(n, f.dom, |k| pairs[k].0), SetMap::from_fn(n, g.dom, |k| pairs[k].1)))
    }

    fn pullback_mediator(&self, f: &SetMap, g: &SetMap, apex: &usize, p: &SetMap, q: &SetMap) -> Result<SetMap> {
        let pairs = Self::matching_pairs(f, g);
        if pairs.len() != *apex || p.dom != q.dom || p.cod != f.dom || q.cod != g.dom {
            return Err(Error::TypeMismatch("not the pullback of these legs".into()));
        }
        let mut map = Vec::with_capacity(p.dom);
        for x in 0..p.dom {
            let pair = (p.map[x], q.map[x]);
            match pairs.binary_search(&pair) {
                Ok(k) => map.push(k),
                Err(_) => {
                    return Err(Error::MediatorNotFound(format!(
                        "legs disagree on element {x}: {} ≠ {}",
                        f.map[pair.0], g.map[pair.1]
                    )))
                }
            }
        }
        Ok(SetMap { dom: p.dom, cod: *apex, map })
    }

    fn pushout(&self, f: &SetMap, g: &SetMap) -> Result<(usize, SetMap, SetMap)> {
        if f.dom != g.dom {
            return Err(Error::TypeMismatch("pushout legs have different domains".into()));
        }
        let (n, class) = Self::pushout_classes(f, g);
        Ok((n, SetMap::from_fn(f.cod, n, |y| class[y]), SetMap::from_fn(g.cod, n, |z| class[f.cod + z])))
    }

    fn pushout_mediator(&self, f: &SetMap, g: &SetMap, apex: &usize, a: &SetMap, b: &SetMap) -> Result<SetMap> {
        let (n, class) = Self::pushout_classes(f, g);
        if n != *apex || a.cod != b.cod || a.dom != f.cod || b.dom != g.cod {
            return Err(Error::TypeMismatch("not the pushout of these legs".into()));
        }
        let mut map = vec![usize::MAX; n];
        let values = a.map.iter().chain(b.map.iter());
        for (i, &v) in values.enumerate() {
            let c = class[i];
            if map[c] != usize::MAX && map[c] != v {
                return Err(Error::MediatorNotFound(format!("cocone disagrees on class {c}")));
            }
            map[c] = v;
        }
        Ok(SetMap { dom: n, cod: a.cod, map })
    }

    fn product(&self, a: &usize, b: &usize) -> Result<(usize, SetMap, SetMap)> {
        let n = self.tensor(a, b)?;
        Ok((n, SetMap::from_fn(n, *a, |k| k / b), SetMap::from_fn(n, *b, |k| k % b)))
    }

    fn pairing(&self, apex: &usize, p: &SetMap, q: &SetMap) -> Result<SetMap> {
        if p.dom != q.dom || p.cod * q.cod != *apex {
            return Err(Error::TypeMismatch("pairing legs do not match the product".into()));
        }
        Ok(SetMap::from_fn(p.dom, *apex, |x| p.map[x] * q.cod + q.map[x]))
    }

    fn coproduct(&self, a: &usize, b: &usize) -> Result<(usize, SetMap, SetMap)> {
        let n = self.bounded(Some(*a as u128 + *b as u128))?;
        Ok((n, SetMap::from_fn(*a, n, |x| x), SetMap::from_fn(*b, n, |y| a + y)))
    }

    fn copairing(&self, apex: &usize, f: &SetMap, g: &SetMap) -> Result<SetMap> {
        if f.cod != g.cod || f.dom + g.dom != *apex {
            return Err(Error::TypeMismatch("copairing legs do not match the coproduct".into()));
        }
        Ok(SetMap::from_fn(*apex, f.cod, |k| if k < f.dom { f.map[k] } else { g.map[k - f.dom] }))
    }

    fn terminal(&self) -> usize {
        1
    }

    fn initial(&self) -> usize {
        0
    }

    fn seq_unit(&self) -> usize {
        1
    }

    fn seq(&self, a: &usize, b: &usize) -> Result<usize> {
        self.tensor(a, b)
    }

    fn seq_mor(&self, f: &SetMap, g: &SetMap) -> Result<SetMap> {
        self.tensor_mor(f, g)
    }

    fn delta(&self, a: &usize, b: &usize, c: &usize, d: &usize) -> Result<SetMap> {
        let (ab, cd) = (self.tensor(a, b)?, self.tensor(c, d)?);
        let bd = self.tensor(b, d)?;
        let n = self.tensor(&ab, &cd)?;
        Ok(SetMap::from_fn(n, n, |k| {
            let (l, r) = (k / cd, k % cd);
            let (x, y, z, w) = (l / b, l % b, r / d, r % d);
            (x * c + z) * bd + (y * d + w)
        }))
    }

    fn gamma(&self) -> Result<SetMap> {
        Ok(self.id(&1))
    }

    fn mu(&self) -> Result<SetMap> {
        Ok(self.id(&1))
    }

    fn nu(&self) -> Result<SetMap> {
        Ok(self.id(&1))
    }

    fn seq_lunit(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn seq_lunit_inv(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn seq_runit(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn seq_runit_inv(&self, a: &usize) -> Result<SetMap> {
        Ok(self.id(a))
    }

    fn bottom(&self) -> usize {
        self.bottom
    }

    fn bottom_mult(&self) -> Result<SetMap> {
        let k = self.bottom;
        Ok(SetMap::from_fn(k * k, k, |i| self.mult[i / k][i % k]))
    }

    fn bottom_unit(&self) -> Result<SetMap> {
        Ok(SetMap::from_fn(1, self.bottom, |_| self.bottom_unit))
    }
}

/// Digit `i` (most significant first) of `k` written with `len` digits in
/// base `b`.
fn digit(k: usize, b: usize, len: usize, i: usize) -> usize {
    let mut k = k;
    for _ in 0..len - 1 - i {
        k /= b;
    }
    k % b
}
