//! Law suites over an instance, run concurrently, reported per check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{build_env, build_set, interpret, Binding, Bindings, Instance, Model};
use super::syntax::parse;
use crate::chu::{Chu, MonoidalEngine, Obj};
use crate::error::{Error, Result};
use crate::events::Envelope;
use crate::finbase::{validate_category, FinCategory};
use crate::prof::{ProfCategory, Profunctor};
use crate::setval::nat_count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Finbase,
    Prof,
    Tambara,
    Chu,
    Events,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Finbase => "finbase",
            Suite::Prof => "prof",
            Suite::Tambara => "tambara",
            Suite::Chu => "chu",
            Suite::Events => "events",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "all" => Suite::All,
            "finbase" => Suite::Finbase,
            "prof" => Suite::Prof,
            "tambara" => Suite::Tambara,
            "chu" => Suite::Chu,
            "events" => Suite::Events,
            _ => return Err(Error::Config(format!("unknown suite `{s}`"))),
        })
    }
}

/// Optional corpus configuration. Formulas are interpreted with
/// `bindings`; `pairs` are `(a, a')` object labels for the event lemmas.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub bindings: Bindings,
    #[serde(default)]
    pub corpus: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<SuiteConfig> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skip,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub status: Status,
    pub witness: Option<String>,
    pub cardinalities: BTreeMap<String, Vec<usize>>,
    pub millis: u64,
}

/// 0 if everything passed or was skipped, 1 on any falsification, else 2.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else {
        0
    }
}

#[derive(Default)]
struct Outcome {
    witness: Option<String>,
    skip: Option<String>,
    card: BTreeMap<String, Vec<usize>>,
}

impl Outcome {
    fn card(mut self, name: &str, v: Vec<usize>) -> Self {
        self.card.insert(name.into(), v);
        self
    }

    fn fail(mut self, w: String) -> Self {
        self.witness.get_or_insert(w);
        self
    }

    fn skip(reason: &str) -> Self {
        Outcome { skip: Some(reason.into()), ..Default::default() }
    }
}

type Check<'a> = (String, Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>);

fn check<'a>(name: &str, f: impl Fn() -> Result<Outcome> + Send + Sync + 'a) -> Check<'a> {
    (name.to_string(), Box::new(f))
}

fn error_report(check: &str, instance: &str, e: &Error) -> CheckReport {
    CheckReport {
        check: check.into(),
        instance: instance.into(),
        status: if e.is_budget_or_config() { Status::Error } else { Status::Fail },
        witness: Some(format!("{}: {e}", e.kind())),
        cardinalities: BTreeMap::new(),
        millis: 0,
    }
}

/// Loads the instance and runs the selected suites. A load failure (a bad
/// file or an invalid category) is a single `error` report.
pub fn run_suite(instance: &str, suite: Suite, budget: Option<u64>, config: &SuiteConfig) -> Vec<CheckReport> {
    let t = Instant::now();
    let inst = match Instance::resolve(instance, budget) {
        Ok(i) => i,
        Err(e) => {
            let mut r = error_report("finbase.load", instance, &e);
            // an instance that does not load is a configuration problem
            r.status = Status::Error;
            r.millis = t.elapsed().as_millis() as u64;
            return vec![r];
        }
    };
    run_loaded(&inst, suite, config)
}

pub(crate) fn run_loaded(inst: &Instance, suite: Suite, config: &SuiteConfig) -> Vec<CheckReport> {
    let mut checks: Vec<Check<'_>> = Vec::new();
    if suite.includes(Suite::Finbase) {
        checks.extend(finbase_checks(&inst.base));
    }
    let env = match &inst.model {
        Model::Env(env) => Some(env.as_ref()),
        Model::Set(_) => None,
    };
    let na = "not applicable: the instance is a set-based Chu model";
    for (s, f) in [(Suite::Prof, prof_checks as fn(&Envelope) -> Vec<Check<'_>>), (Suite::Tambara, tambara_checks)] {
        if suite.includes(s) {
            match env {
                Some(env) => checks.extend(f(env)),
                None => checks.push(check(&format!("{s}"), move || Ok(Outcome::skip(na)))),
            }
        }
    }
    if suite.includes(Suite::Chu) {
        match &inst.model {
            Model::Env(env) => {
                let corpus = corpus(&env.chu, inst, config, |b| build_env(env, b));
                checks.extend(chu_checks(&env.chu, corpus, true));
            }
            Model::Set(chu) => {
                let corpus = corpus(chu, inst, config, |b| build_set(chu, b));
                checks.extend(chu_checks(chu, corpus, false));
            }
        }
    }
    if suite.includes(Suite::Events) {
        match env {
            Some(env) => checks.extend(event_checks(env, config)),
            None => checks.push(check("events", move || Ok(Outcome::skip(na)))),
        }
    }
    let name = inst.name.clone();
    checks
        .par_iter()
        .map(|(check, f)| {
            let t = Instant::now();
            let res = f();
            let millis = t.elapsed().as_millis() as u64;
            match res {
                Ok(o) => CheckReport {
                    check: check.clone(),
                    instance: name.clone(),
                    status: match (&o.skip, &o.witness) {
                        (Some(_), _) => Status::Skip,
                        (None, Some(_)) => Status::Fail,
                        (None, None) => Status::Pass,
                    },
                    witness: o.witness.or(o.skip),
                    cardinalities: o.card,
                    millis,
                },
                Err(e) => CheckReport { millis, ..error_report(check, &name, &e) },
            }
        })
        .collect()
}

// ---- corpus ----

type Corpus<E> = Arc<Vec<(String, Obj<E>)>>;

/// Named objects: the configured corpus formulas, or a default corpus
/// built from fixed bindings.
fn corpus<E: MonoidalEngine>(
    chu: &Chu<E>,
    inst: &Instance,
    config: &SuiteConfig,
    build: impl Fn(&Binding) -> Result<Obj<E>>,
) -> Result<Corpus<E>> {
    let (bindings, formulas) =
        if config.corpus.is_empty() { default_corpus(inst) } else { (config.bindings.clone(), config.corpus.clone()) };
    let atoms = |n: &str| build(bindings.get(n).ok_or_else(|| Error::UnboundAtom(n.into()))?);
    let mut out = Vec::new();
    for text in formulas {
        let obj = interpret(chu, &parse(&text)?, &atoms)?;
        out.push((text, obj));
    }
    Ok(Arc::new(out))
}

fn default_corpus(inst: &Instance) -> (Bindings, Vec<String>) {
    let mut b = Bindings::new();
    match &inst.model {
        Model::Env(_) => {
            let c = &inst.base;
            let i = c.object_label(c.unit()).to_string();
            let last = c.object_label(c.num_objects() - 1).to_string();
            b.insert("a".into(), Binding::Faithful([i.clone(), i.clone()]));
            b.insert("b".into(), Binding::Faithful([last.clone(), last.clone()]));
            b.insert("c".into(), Binding::Event([i, last.clone()]));
            b.insert("d".into(), Binding::FirstOrder(last));
            (b, ["a", "b", "c", "d"].map(String::from).to_vec())
        }
        Model::Set(_) => {
            b.insert("a".into(), inst.default_binding());
            b.insert("y".into(), Binding::Space { a: 1, a2: 2, pairing: vec![0, 1] });
            b.insert("x".into(), Binding::Space { a: 2, a2: 1, pairing: vec![0, 1] });
            (b, ["a", "y", "x", "1"].map(String::from).to_vec())
        }
    }
}

/// All `k`-tuples of indices below `n`.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut t| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = t % n;
                t /= n;
            }
            v
        })
        .collect()
}

fn names<T>(c: &[(String, T)], t: &[usize]) -> String {
    let v: Vec<&str> = t.iter().map(|&i| c[i].0.as_str()).collect();
    format!("({})", v.join(", "))
}

// ---- finbase ----

fn finbase_checks(c: &Arc<FinCategory>) -> Vec<Check<'_>> {
    vec![check("finbase.validate", move || {
        validate_category(c)?;
        Ok(Outcome::default().card("objects", vec![c.num_objects()]).card("morphisms", vec![c.num_morphisms()]))
    })]
}

// ---- prof ----

fn prof_corpus(p: &ProfCategory) -> Vec<Profunctor> {
    let c = p.base().clone();
    let mut out = vec![p.hom(), p.day_unit()];
    for a in c.objects() {
        for b in c.objects() {
            out.push(p.representable(a, b));
        }
    }
    out
}

fn prof_checks(env: &Envelope) -> Vec<Check<'_>> {
    let p = &env.stprof.prof;
    vec![
        check("prof.seq_unit_laws", move || {
            let m = &p.modules;
            let mut o = Outcome::default();
            for q in prof_corpus(p) {
                for (f, g) in [(m.seq_lunit(&q)?, m.seq_lunit_inv(&q)?), (m.seq_runit(&q)?, m.seq_runit_inv(&q)?)] {
                    f.check()?;
                    g.check()?;
                    if !m.compose(&g, &f)?.map.is_identity() || !m.compose(&f, &g)?.map.is_identity() {
                        o = o.fail(format!("unit law not invertible at {}", q.name));
                    }
                }
            }
            Ok(o)
        }),
        check("prof.closure", move || {
            let qs = prof_corpus(p);
            let budget = p.modules.budget();
            let mut o = Outcome::default();
            let mut n = 0;
            for a in &qs {
                for b in &qs {
                    for r in &qs {
                        let l = nat_count(&p.day_tensor(a, b)?.functor, &r.functor, budget)?;
                        let rr = nat_count(&a.functor, &p.internal_hom(b, r)?.functor, budget)?;
                        if l != rr {
                            o = o.fail(format!("|Nat(P⋆Q,R)| = {l} ≠ {rr} at ({}, {}, {})", a.name, b.name, r.name));
                        }
                        n += 1;
                    }
                }
            }
            Ok(o.card("triples", vec![n]))
        }),
        check("prof.day_unit", move || {
            let mut o = Outcome::default();
            for q in prof_corpus(p) {
                let h = p.internal_hom(&p.day_unit(), &q)?;
                if p.modules.find_iso(&h, &q)?.is_none() {
                    o = o.fail(format!("[J, {}] is not isomorphic to it", q.name));
                }
            }
            Ok(o)
        }),
        check("prof.delta", move || {
            let (h, u) = (p.hom(), p.day_unit());
            p.duoidal_delta(&h, &h, &h, &h)?.check()?;
            p.duoidal_delta(&u, &u, &u, &u)?.check()?;
            Ok(Outcome::default())
        }),
    ]
}

// ---- tambara ----

fn tambara_checks(env: &Envelope) -> Vec<Check<'_>> {
    let s = &env.stprof;
    let corpus = move || -> Result<Vec<_>> {
        let c = s.base().clone();
        let mut out = vec![s.unit()];
        for a in c.objects() {
            for a2 in c.objects() {
                out.push(s.representable_context(a, a2));
                out.push(s.intervention(a, a2)?);
            }
        }
        Ok(out)
    };
    vec![
        check("tambara.optic_composition", move || {
            s.optic.check_composition()?;
            let o = s.optic_cat();
            Ok(Outcome::default().card("objects", vec![o.num_objects()]).card("morphisms", vec![o.num_morphisms()]))
        }),
        check("tambara.strength", move || {
            let base = corpus()?;
            let mut o = Outcome::default();
            for p in &base {
                s.check_strength(p)?;
                for q in &base {
                    s.check_strength(&s.stprof_tensor(p, q)?)?;
                    let pq = s.stprof_seq(p, q)?;
                    s.check_strength(&pq)?;
                    if !s.seq_right_action_agrees(&pq)? {
                        o = o.fail(format!("left and right strengths of {} ⊲ {} differ", p.name, q.name));
                    }
                }
            }
            Ok(o.card("corpus", vec![base.len()]))
        }),
        check("tambara.units", move || {
            let mut o = Outcome::default();
            if !s.modules.is_normal() {
                o = o.fail("tensor and sequencing units differ".into());
            }
            let u = s.unit();
            if s.modules.find_iso(&s.stprof_seq(&u, &u)?, &u)?.is_none() {
                o = o.fail("I ⊲ I is not isomorphic to I".into());
            }
            Ok(o)
        }),
        check("tambara.dual_of_representable", move || {
            let c = s.base();
            let mut o = Outcome::default();
            for a in c.objects() {
                for a2 in c.objects() {
                    let d = s.stprof_dual(&s.representable_context(a, a2))?;
                    if s.modules.find_iso(&d, &s.intervention(a, a2)?)?.is_none() {
                        o = o.fail(format!("y* ≇ C at ({}, {})", c.object_label(a), c.object_label(a2)));
                    }
                }
            }
            Ok(o)
        }),
        check("tambara.delta", move || {
            let qs = corpus()?;
            for p in &qs {
                for q in &qs {
                    s.modules.delta(p, q, q, p)?.check()?;
                }
            }
            Ok(Outcome::default().card("pairs", vec![qs.len() * qs.len()]))
        }),
    ]
}

// ---- chu ----

fn chu_checks<E: MonoidalEngine>(chu: &Chu<E>, corpus: Result<Corpus<E>>, normal: bool) -> Vec<Check<'_>> {
    let c = match corpus {
        Ok(c) => c,
        Err(e) => return vec![check("chu.corpus", move || Err(e.clone()))],
    };
    let n = c.len();
    let mut out = Vec::new();
    let cc = c.clone();
    out.push(check("chu.involution", move || {
        let mut o = Outcome::default();
        for (name, a) in cc.iter() {
            if chu.dual(&chu.dual(a)?)? != *a {
                o = o.fail(format!("A** ≠ A at {name}"));
            }
        }
        Ok(o.card("objects", vec![n]))
    }));
    let cc = c.clone();
    out.push(check("chu.seq_self_dual", move || {
        let mut o = Outcome::default();
        for t in tuples(n, 2) {
            let (a, b) = (&cc[t[0]].1, &cc[t[1]].1);
            if chu.dual(&chu.seq(a, b)?)? != chu.seq(&chu.dual(a)?, &chu.dual(b)?)? {
                o = o.fail(format!("(A⊲B)* ≠ A*⊲B* at {}", names(&cc, &t)));
            }
        }
        Ok(o.card("pairs", vec![n * n]))
    }));
    let cc = c.clone();
    out.push(check("chu.de_morgan", move || {
        let mut o = Outcome::default();
        for t in tuples(n, 2) {
            let (a, b) = (&cc[t[0]].1, &cc[t[1]].1);
            if chu.dual(&chu.tensor(a, b)?)? != chu.par(&chu.dual(a)?, &chu.dual(b)?)? {
                o = o.fail(format!("(A⊗B)* ≠ A*⅋B* at {}", names(&cc, &t)));
            }
        }
        Ok(o)
    }));
    let cc = c.clone();
    out.push(check("chu.star_autonomy", move || {
        let mut o = Outcome::default();
        let mut sizes = Vec::new();
        for t in tuples(n, 3) {
            let (a, b, x) = (&cc[t[0]].1, &cc[t[1]].1, &cc[t[2]].1);
            let lhs = chu.homs(&chu.tensor(a, b)?, &chu.dual(x)?)?;
            let rhs = chu.homs(a, &chu.dual(&chu.tensor(b, x)?)?)?;
            sizes.push(lhs.len());
            if lhs.len() != rhs.len() {
                o = o.fail(format!("|Chu(A⊗B, C*)| = {} ≠ {} at {}", lhs.len(), rhs.len(), names(&cc, &t)));
                continue;
            }
            let mut images = Vec::with_capacity(lhs.len());
            for f in &lhs {
                let g = chu.transpose(f, a, b, x)?;
                if images.contains(&g) || !rhs.contains(&g) {
                    o = o.fail(format!("transpose is not a bijection at {}", names(&cc, &t)));
                    break;
                }
                images.push(g);
            }
        }
        Ok(o.card("hom_sizes", sizes))
    }));
    let cc = c.clone();
    out.push(check("chu.switch", move || {
        for t in tuples(n, 3) {
            let (a, b, x) = (&cc[t[0]].1, &cc[t[1]].1, &cc[t[2]].1);
            chu.switch(a, b, x)?;
        }
        Ok(Outcome::default().card("triples", vec![n.pow(3)]))
    }));
    let cc = c.clone();
    out.push(check("chu.distributors", move || {
        for t in tuples(n, 4) {
            let [a, b, x, y] = [0, 1, 2, 3].map(|i| &cc[t[i]].1);
            chu.delta(a, b, x, y)?;
            chu.epsilon(a, b, x, y)?;
        }
        Ok(Outcome::default().card("quadruples", vec![n.pow(4)]))
    }));
    let cc = c.clone();
    out.push(check("chu.additives", move || {
        let mut o = Outcome::default();
        for t in tuples(n, 2) {
            let (a, b) = (&cc[t[0]].1, &cc[t[1]].1);
            let p = chu.dual(&chu.product(a, b)?.obj)?;
            let q = chu.coproduct(&chu.dual(a)?, &chu.dual(b)?)?.obj;
            if p != q {
                o = o.fail(format!("(A×B)* ≠ A*+B* at {}", names(&cc, &t)));
            }
        }
        Ok(o)
    }));
    out.push(check("chu.units", move || {
        if !normal {
            return Ok(Outcome::skip("not applicable: the model's two units differ"));
        }
        let (it, is) = (chu.unit_tensor()?, chu.unit_seq()?);
        let mut o = Outcome::default().card("i", chu.engine.sizes(&it.a)).card("⊥", chu.engine.sizes(&it.a2));
        if it != is {
            o = o.fail("i_⊗ ≠ i_⊲".into());
        }
        if chu.find_iso(&it, &chu.unit_par()?)?.is_none() {
            o = o.fail("i_⊗ ≇ i_⅋".into());
        }
        Ok(o)
    }));
    out
}

// ---- events ----

fn event_checks<'a>(env: &'a Envelope, config: &SuiteConfig) -> Vec<Check<'a>> {
    let c = env.stprof.base();
    let pairs: Result<Vec<(usize, usize)>> = if config.pairs.is_empty() {
        Ok(c.objects().flat_map(|a| c.objects().map(move |b| (a, b))).collect())
    } else {
        config
            .pairs
            .iter()
            .map(|[a, b]| {
                let f = |l: &str| c.object_by_label(l).ok_or_else(|| Error::Config(format!("no object `{l}`")));
                Ok((f(a)?, f(b)?))
            })
            .collect()
    };
    let pairs = match pairs {
        Ok(p) => Arc::new(p),
        Err(e) => return vec![check("events.pairs", move || Err(e.clone()))],
    };
    let label = move |(a, b): (usize, usize)| format!("({}, {})", c.object_label(a), c.object_label(b));
    let mut out = Vec::new();
    let ps = pairs.clone();
    out.push(check("events.lemma_par", move || {
        let mut o = Outcome::default();
        for &a in ps.iter() {
            for &b in ps.iter() {
                match env.check_lemma_par(a, b) {
                    Ok(cert) => {
                        for (k, v) in cert.sizes {
                            o.card.insert(format!("{}{}.{k}", label(a), label(b)), v);
                        }
                    }
                    Err(e @ Error::IsoNotFound(_)) => o = o.fail(format!("{} {}: {e}", label(a), label(b))),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(o)
    }));
    out.push(check("events.first_order_collapse", move || {
        let ch = &env.chu;
        for a in c.objects() {
            for b in c.objects() {
                let (p, q) = (env.first_order(a)?, env.first_order(b)?);
                let (t, s, r) = (ch.tensor(&p, &q)?, ch.seq(&p, &q)?, ch.par(&p, &q)?);
                env.certify(&t, &s)?;
                env.certify(&s, &r)?;
                for m in [ch.tau_l(&p, &q)?, ch.tau_par_l(&p, &q)?] {
                    if ch.inverse(&m)?.is_none() {
                        return Ok(
                            Outcome::default().fail(format!("canonical map not invertible at {}", label((a, b))))
                        );
                    }
                }
            }
        }
        Ok(Outcome::default())
    }));
    let ps = pairs.clone();
    out.push(check("events.supermaps_are_optics", move || {
        let mut o = Outcome::default();
        for &a in ps.iter() {
            for &b in ps.iter() {
                let maps = env.classify_supermaps(a, b)?;
                let st = &env.stprof;
                let want = st.optic_cat().hom(st.pair(a.0, a.1), st.pair(b.0, b.1)).len();
                if maps.len() != want {
                    o = o.fail(format!("{} supermaps but {want} optics at {} → {}", maps.len(), label(a), label(b)));
                }
            }
        }
        Ok(o)
    }));
    let ps = pairs;
    out.push(check("events.par_bounds", move || {
        let mut o = Outcome::default();
        for &a in ps.iter() {
            for &b in ps.iter() {
                let bounds = env.par_bounds(a, b)?;
                bounds.upper.check()?;
                for (k, v) in bounds.sizes {
                    o.card.insert(format!("{}{}.{k}", label(a), label(b)), v);
                }
            }
        }
        Ok(o)
    }));
    out
}
