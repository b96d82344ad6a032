use super::{SetFunctor, SetNat};
use crate::error::{Error, Result};
use crate::finbase::{Obj, DEFAULT_MAX_NAT_CANDIDATES};

const NONE: usize = usize::MAX;

type Allowed<'a> = Box<dyn Fn(Obj, usize, usize) -> bool + Send + Sync + 'a>;

/// Backtracking enumeration of natural transformations `dom → cod`.
///
/// Elements are decided in global index order `(object, element)`; each
/// decision is pushed along every morphism out of its object, so a
/// conflict on any naturality square prunes immediately. Every candidate
/// value tried counts against the budget.
pub struct NatSearch<'a> {
    dom: &'a SetFunctor,
    cod: &'a SetFunctor,
    budget: u64,
    injective: bool,
    allowed: Option<Allowed<'a>>,
    limit: usize,
}

struct State<'s> {
    dom: &'s SetFunctor,
    cod: &'s SetFunctor,
    off: Vec<usize>,
    var_obj: Vec<Obj>,
    assign: Vec<usize>,
    used: Vec<Vec<bool>>,
    trail: Vec<usize>,
    injective: bool,
    allowed: Option<&'s Allowed<'s>>,
    tried: u64,
    budget: u64,
}

impl<'s> State<'s> {
    fn ok(&self, v: usize, y: usize) -> bool {
        let e = self.var_obj[v];
        if self.injective && self.used[e][y] {
            return false;
        }
        match self.allowed {
            Some(a) => a(e, v - self.off[e], y),
            None => true,
        }
    }

    fn set(&mut self, v: usize, y: usize) {
        self.assign[v] = y;
        if self.injective {
            self.used[self.var_obj[v]][y] = true;
        }
        self.trail.push(v);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            if self.injective {
                self.used[self.var_obj[v]][self.assign[v]] = false;
            }
            self.assign[v] = NONE;
        }
    }

    fn try_set(&mut self, v: usize, y: usize) -> bool {
        if !self.ok(v, y) {
            return false;
        }
        self.set(v, y);
        let c = self.dom.base().clone();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let e = self.var_obj[u];
            let x = u - self.off[e];
            let yu = self.assign[u];
            for &f in c.out_morphisms(e) {
                let d = c.dst(f);
                let t = self.off[d] + self.dom.act(f, x);
                let req = self.cod.act(f, yu);
                if self.assign[t] == NONE {
                    if !self.ok(t, req) {
                        return false;
                    }
                    self.set(t, req);
                    stack.push(t);
                } else if self.assign[t] != req {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, start: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let Some(v) = (start..self.assign.len()).find(|&v| self.assign[v] == NONE) else {
            return Ok(visit(&self.assign));
        };
        let e = self.var_obj[v];
        for y in 0..self.cod.size(e) {
            self.tried += 1;
            if self.tried > self.budget {
                return Err(Error::BudgetExceeded { bound: self.budget });
            }
            let mark = self.trail.len();
            if self.try_set(v, y) && !self.dfs(v + 1, visit)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

impl<'a> NatSearch<'a> {
    pub fn new(dom: &'a SetFunctor, cod: &'a SetFunctor) -> Self {
        NatSearch { dom, cod, budget: DEFAULT_MAX_NAT_CANDIDATES, injective: false, allowed: None, limit: usize::MAX }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Only componentwise-injective transformations.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Restricts the value of the component at `e` on `x` to those `y`
    /// with `allowed(e, x, y)`.
    pub fn allowed(mut self, f: impl Fn(Obj, usize, usize) -> bool + Send + Sync + 'a) -> Self {
        self.allowed = Some(Box::new(f));
        self
    }

    pub fn limit(mut self, n: usize) -> Self {
        self.limit = n;
        self
    }

    fn search(&self, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<()> {
        let c = self.dom.base();
        let mut off = Vec::with_capacity(c.num_objects() + 1);
        let mut var_obj = Vec::new();
        off.push(0);
        for e in c.objects() {
            var_obj.extend(std::iter::repeat_n(e, self.dom.size(e)));
            off.push(var_obj.len());
        }
        if self.injective && c.objects().any(|e| self.dom.size(e) > self.cod.size(e)) {
            return Ok(());
        }
        let mut st = State {
            dom: self.dom,
            cod: self.cod,
            off,
            assign: vec![NONE; var_obj.len()],
            var_obj,
            used: c.objects().map(|e| vec![false; self.cod.size(e)]).collect(),
            trail: Vec::new(),
            injective: self.injective,
            allowed: self.allowed.as_ref(),
            tried: 0,
            budget: self.budget,
        };
        st.dfs(0, visit)?;
        Ok(())
    }

    fn to_nat(&self, assign: &[usize]) -> SetNat {
        let mut it = assign.iter().copied();
        SetNat { comps: self.dom.base().objects().map(|e| it.by_ref().take(self.dom.size(e)).collect()).collect() }
    }

    pub fn run(self) -> Result<Vec<SetNat>> {
        let mut out = Vec::new();
        let limit = self.limit;
        self.search(&mut |a| {
            out.push(a.to_vec());
            out.len() < limit
        })?;
        Ok(out.iter().map(|a| self.to_nat(a)).collect())
    }

    pub fn first(self) -> Result<Option<SetNat>> {
        Ok(self.limit(1).run()?.pop())
    }

    pub fn count(self) -> Result<u64> {
        let mut n = 0u64;
        self.search(&mut |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }
}

/// All natural transformations `f → g`, in deterministic order.
pub fn nat_set(f: &SetFunctor, g: &SetFunctor, budget: u64) -> Result<Vec<SetNat>> {
    NatSearch::new(f, g).budget(budget).run()
}

pub fn nat_count(f: &SetFunctor, g: &SetFunctor, budget: u64) -> Result<u64> {
    NatSearch::new(f, g).budget(budget).count()
}

/// A natural isomorphism `f ≅ g` with its inverse, if one exists.
pub fn find_iso(f: &SetFunctor, g: &SetFunctor, budget: u64) -> Result<Option<(SetNat, SetNat)>> {
    if f.sizes() != g.sizes() {
        return Ok(None);
    }
    let Some(a) = NatSearch::new(f, g).budget(budget).injective().first()? else {
        return Ok(None);
    };
    let b = a.inverse(g).expect("injective between equal sizes");
    debug_assert!(b.is_natural(g, f));
    Ok(Some((a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finbase::{terminal, z2_discrete, z2_group};
    use std::sync::Arc;

    /// Brute force over every family of maps, keeping the natural ones.
    fn oracle_count(f: &SetFunctor, g: &SetFunctor) -> usize {
        let c = f.base();
        let vars: Vec<(Obj, usize)> = c.objects().flat_map(|e| (0..f.size(e)).map(move |x| (e, x))).collect();
        let radix: Vec<usize> = vars.iter().map(|&(e, _)| g.size(e)).collect();
        if radix.contains(&0) {
            return usize::from(vars.is_empty());
        }
        let total: usize = radix.iter().product();
        let mut count = 0;
        for mut k in 0..total {
            let mut comps: Vec<Vec<usize>> = c.objects().map(|e| vec![0; f.size(e)]).collect();
            for (i, &(e, x)) in vars.iter().enumerate() {
                comps[e][x] = k % radix[i];
                k /= radix[i];
            }
            if (SetNat { comps }).is_natural(f, g) {
                count += 1;
            }
        }
        count
    }

    fn corpus(c: &Arc<crate::finbase::FinCategory>) -> Vec<SetFunctor> {
        let mut out: Vec<SetFunctor> = c.objects().map(|e| SetFunctor::yoneda(c.clone(), e)).collect();
        out.push(SetFunctor::constant(c.clone(), 1));
        out.push(SetFunctor::constant(c.clone(), 2));
        out.push(SetFunctor::constant(c.clone(), 0));
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for c in [terminal(), z2_group(), z2_discrete()] {
            let c = Arc::new(c);
            let fs = corpus(&c);
            for f in &fs {
                for g in &fs {
                    let n = nat_set(f, g, 1_000_000).unwrap();
                    assert_eq!(n.len(), oracle_count(f, g));
                    assert!(n.iter().all(|a| a.is_natural(f, g)));
                }
            }
        }
    }

    #[test]
    fn yoneda_cardinality() {
        for c in [terminal(), z2_group(), z2_discrete()] {
            let c = Arc::new(c);
            for e in c.objects() {
                let y = SetFunctor::yoneda(c.clone(), e);
                for f in corpus(&c) {
                    assert_eq!(nat_count(&y, &f, 1_000_000).unwrap() as usize, f.size(e));
                }
            }
        }
    }

    #[test]
    fn into_terminal_is_unique() {
        let c = Arc::new(z2_group());
        let one = SetFunctor::constant(c.clone(), 1);
        for f in corpus(&c) {
            assert_eq!(nat_count(&f, &one, 100).unwrap(), 1);
        }
    }

    #[test]
    fn budget_is_reported() {
        let c = Arc::new(z2_discrete());
        let big = SetFunctor::constant(c.clone(), 6);
        let err = nat_set(&big, &big, 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { bound: 10 });
    }

    #[test]
    fn iso_search_finds_inverse_pair() {
        let c = Arc::new(z2_group());
        let y = SetFunctor::yoneda(c.clone(), 0);
        let (a, b) = find_iso(&y, &y, 100).unwrap().unwrap();
        assert!(a.after(&b).is_identity() && b.after(&a).is_identity());
        let two = SetFunctor::constant(c, 2);
        assert!(find_iso(&y, &two, 100).unwrap().is_none());
    }
}
