//! Models a formula can be interpreted in, and atom bindings.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::syntax::Formula;
use crate::chu::{Chu, ChuObj, MonoidalEngine, SetEngine, SetMap};
use crate::error::{Error, Result};
use crate::events::{EnvObj, Envelope};
use crate::finbase::{builtin, EngineSpec, FinCategory, InstanceSpec, DEFAULT_MAX_NAT_CANDIDATES};

/// A Chu model: the strong envelope of a table category, or a finite-set
/// engine.
pub enum Model {
    Env(Box<Envelope>),
    Set(Chu<SetEngine>),
}

/// How to build the object an atom stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Binding {
    /// `(C_a, C_a*, ev)` at a pair of object labels.
    Event([String; 2]),
    /// `(C_a, y_a, ev)`.
    Faithful([String; 2]),
    /// `(y_(a,i), y_(i,a), ev)`.
    FirstOrder(String),
    /// `(a, [a,⊥], ev)` for a set of the given size.
    Embed(usize),
    /// An explicit Chu space over sets: `pairing[x * a2 + y] ∈ ⊥`.
    Space { a: usize, a2: usize, pairing: Vec<usize> },
}

/// Atom name → binding, as read from an environment file.
pub type Bindings = BTreeMap<String, Binding>;

pub fn load_bindings(path: &Path) -> Result<Bindings> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))
}

/// A loaded instance: its name, the model, and the base category when
/// there is one.
pub struct Instance {
    pub name: String,
    pub model: Model,
    pub base: Arc<FinCategory>,
}

impl Instance {
    /// A built-in name (`I1`…`I4`) or a path to an instance file.
    pub fn resolve(name_or_path: &str, budget: Option<u64>) -> Result<Instance> {
        if let Ok(c) = builtin(name_or_path) {
            let budget = budget.unwrap_or(DEFAULT_MAX_NAT_CANDIDATES);
            let c = Arc::new(c);
            let model = if name_or_path == "I4" {
                Model::Set(Chu::new(SetEngine::i4_with_budget(budget)))
            } else {
                Model::Env(Box::new(Envelope::with_budget(c.clone(), budget)?))
            };
            return Ok(Instance { name: name_or_path.into(), model, base: c });
        }
        let path = Path::new(name_or_path);
        if !path.exists() {
            return Err(Error::Config(format!("`{name_or_path}` is neither a built-in instance nor a file")));
        }
        let spec = InstanceSpec::from_path(path)?;
        Self::from_spec(&spec, budget)
    }

    pub fn from_spec(spec: &InstanceSpec, budget: Option<u64>) -> Result<Instance> {
        let c = Arc::new(spec.load()?);
        let budget = budget.unwrap_or(spec.budgets.max_nat_candidates);
        let model = match &spec.engine {
            None | Some(EngineSpec::Stprof) => Model::Env(Box::new(Envelope::with_budget(c.clone(), budget)?)),
            Some(EngineSpec::Set { bottom_mult, bottom_unit }) => {
                Model::Set(Chu::new(SetEngine::new(&spec.name, bottom_mult.clone(), *bottom_unit, budget)?))
            }
        };
        Ok(Instance { name: spec.name.clone(), model, base: c })
    }

    /// The binding an unbound atom defaults to: the causally faithful
    /// event at `(i, i)`, or the two-element space paired by `⊥`'s
    /// multiplication.
    pub fn default_binding(&self) -> Binding {
        match &self.model {
            Model::Env(_) => {
                let i = self.base.object_label(self.base.unit()).to_string();
                Binding::Faithful([i.clone(), i])
            }
            Model::Set(chu) => {
                let k = chu.engine.bottom();
                let pairing = (0..k * k).map(|t| chu.engine.mult(t / k, t % k)).collect();
                Binding::Space { a: k, a2: k, pairing }
            }
        }
    }
}

fn label(c: &FinCategory, l: &str) -> Result<usize> {
    c.object_by_label(l).ok_or_else(|| Error::Config(format!("no object `{l}` in {}", c.name())))
}

pub fn build_env(env: &Envelope, b: &Binding) -> Result<EnvObj> {
    let c = env.stprof.base();
    match b {
        Binding::Event([a, a2]) => env.event(label(c, a)?, label(c, a2)?),
        Binding::Faithful([a, a2]) => env.faithful(label(c, a)?, label(c, a2)?),
        Binding::FirstOrder(a) => env.first_order(label(c, a)?),
        other => Err(Error::Config(format!("{other:?} is not an object of the strong envelope"))),
    }
}

pub fn build_set(chu: &Chu<SetEngine>, b: &Binding) -> Result<ChuObj<usize, SetMap>> {
    match b {
        Binding::Embed(n) => chu.embed(n),
        Binding::Space { a, a2, pairing } => {
            let r = SetMap::new(a * a2, chu.engine.bottom(), pairing.clone())?;
            chu.object(*a, *a2, r)
        }
        other => Err(Error::Config(format!("{other:?} needs a strong-profunctor model"))),
    }
}

/// Structural recursion: `~` is the Chu dual, `*`, `||`, `;` the three
/// tensors, `1` the tensor unit.
pub fn interpret<E: MonoidalEngine>(
    chu: &Chu<E>,
    f: &Formula,
    atoms: &dyn Fn(&str) -> Result<ChuObj<E::Obj, E::Mor>>,
) -> Result<ChuObj<E::Obj, E::Mor>> {
    let go = |g: &Formula| interpret(chu, g, atoms);
    match f {
        Formula::Atom(a) => atoms(a),
        Formula::Unit => chu.unit_tensor(),
        Formula::Neg(a) => chu.dual(&go(a)?),
        Formula::Tensor(a, b) => chu.tensor(&go(a)?, &go(b)?),
        Formula::Par(a, b) => chu.par(&go(a)?, &go(b)?),
        Formula::Seq(a, b) => chu.seq(&go(a)?, &go(b)?),
    }
}

/// Resolves atoms from explicit bindings, falling back to the default
/// binding when `defaults` is set.
pub fn lookup<'a>(bindings: &'a Bindings, default: Option<&'a Binding>) -> impl Fn(&str) -> Result<&'a Binding> {
    move |name| bindings.get(name).or(default).ok_or_else(|| Error::UnboundAtom(name.into()))
}
