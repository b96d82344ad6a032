//! Semantic checks of BV rule instances: the canonical Chu morphism a rule
//! induces, built by construction (never by search) and then validated.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::model::{build_env, build_set, interpret, lookup, Binding, Bindings, Instance, Model};
use super::syntax::Formula;
use crate::chu::{Chu, MonoidalEngine, Obj};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `A⊗(B⅋C) → (A⊗B)⅋C`.
    Switch,
    /// `ε: (A⅋B)⊲(C⅋D) → (A⊲C)⅋(B⊲D)`.
    Sequence,
    /// `δ: (A⊲B)⊗(C⊲D) → (A⊗C)⊲(B⊗D)`.
    Interchange,
}

impl Rule {
    pub fn arity(self) -> usize {
        match self {
            Rule::Switch => 3,
            Rule::Sequence | Rule::Interchange => 4,
        }
    }

    /// Source and target formulas of the rule instance.
    pub fn instance(self, args: &[Formula]) -> Result<(Formula, Formula)> {
        if args.len() != self.arity() {
            return Err(Error::Config(format!("{self} takes {} formulas, got {}", self.arity(), args.len())));
        }
        let g = |i: usize| args[i].clone();
        Ok(match self {
            Rule::Switch => {
                (Formula::tensor(g(0), Formula::par(g(1), g(2))), Formula::par(Formula::tensor(g(0), g(1)), g(2)))
            }
            Rule::Sequence => (
                Formula::seq(Formula::par(g(0), g(1)), Formula::par(g(2), g(3))),
                Formula::par(Formula::seq(g(0), g(2)), Formula::seq(g(1), g(3))),
            ),
            Rule::Interchange => (
                Formula::tensor(Formula::seq(g(0), g(1)), Formula::seq(g(2), g(3))),
                Formula::seq(Formula::tensor(g(0), g(2)), Formula::tensor(g(1), g(3))),
            ),
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Switch => "switch",
            Rule::Sequence => "sequence",
            Rule::Interchange => "interchange",
        })
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        match s {
            "switch" => Ok(Rule::Switch),
            "sequence" => Ok(Rule::Sequence),
            "interchange" => Ok(Rule::Interchange),
            _ => Err(Error::Config(format!("unknown rule `{s}` (switch, sequence, interchange)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleReport {
    pub rule: Rule,
    pub source: String,
    pub target: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub cardinalities: BTreeMap<String, Vec<usize>>,
}

/// Builds the rule's morphism on interpreted arguments and checks it is a
/// Chu morphism between the interpretations of source and target.
pub fn check_rule_in<E: MonoidalEngine>(
    chu: &Chu<E>,
    rule: Rule,
    args: &[Obj<E>],
    source: &Obj<E>,
    target: &Obj<E>,
) -> Result<(Option<String>, BTreeMap<String, Vec<usize>>)> {
    let built = match (rule, args) {
        (Rule::Switch, [a, b, c]) => chu.switch(a, b, c),
        (Rule::Sequence, [a, b, c, d]) => chu.epsilon(a, b, c, d),
        (Rule::Interchange, [a, b, c, d]) => chu.delta(a, b, c, d),
        _ => return Err(Error::Config(format!("{rule} takes {} arguments", rule.arity()))),
    };
    let e = &chu.engine;
    let mut card = BTreeMap::new();
    card.insert("source.a".to_string(), e.sizes(&source.a));
    card.insert("source.a'".to_string(), e.sizes(&source.a2));
    card.insert("target.a".to_string(), e.sizes(&target.a));
    card.insert("target.a'".to_string(), e.sizes(&target.a2));
    let m = match built {
        Ok(m) => m,
        Err(err @ Error::NotChuMorphism(_)) => return Ok((Some(err.to_string()), card)),
        Err(err) => return Err(err),
    };
    if &m.dom != source || &m.cod != target {
        return Ok((Some("constructed map is not typed by the rule's source and target".into()), card));
    }
    Ok((chu.square_witness(&m.dom, &m.cod, &m.f, &m.f2)?, card))
}

/// Interprets `args` in the instance and checks the rule.
pub fn check_rule(
    inst: &Instance,
    bindings: &Bindings,
    default: Option<&Binding>,
    rule: Rule,
    args: &[Formula],
) -> Result<RuleReport> {
    let (src, tgt) = rule.instance(args)?;
    let find = lookup(bindings, default);
    let (witness, cardinalities) = match &inst.model {
        Model::Env(env) => {
            let atoms = |n: &str| build_env(env, find(n)?);
            run(&env.chu, rule, args, &src, &tgt, &atoms)?
        }
        Model::Set(chu) => {
            let atoms = |n: &str| build_set(chu, find(n)?);
            run(chu, rule, args, &src, &tgt, &atoms)?
        }
    };
    Ok(RuleReport {
        rule,
        source: src.to_string(),
        target: tgt.to_string(),
        pass: witness.is_none(),
        witness,
        cardinalities,
    })
}

type Checked = (Option<String>, BTreeMap<String, Vec<usize>>);

fn run<E: MonoidalEngine>(
    chu: &Chu<E>,
    rule: Rule,
    args: &[Formula],
    src: &Formula,
    tgt: &Formula,
    atoms: &dyn Fn(&str) -> Result<Obj<E>>,
) -> Result<Checked> {
    let objs = args.iter().map(|f| interpret(chu, f, atoms)).collect::<Result<Vec<_>>>()?;
    let source = interpret(chu, src, atoms)?;
    let target = interpret(chu, tgt, atoms)?;
    check_rule_in(chu, rule, &objs, &source, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::syntax::parse;

    #[test]
    fn arity_is_checked() {
        let a = parse("a").unwrap();
        assert!(matches!(Rule::Switch.instance(&[a.clone(), a.clone()]), Err(Error::Config(_))));
        let (s, t) = Rule::Switch.instance(&[a.clone(), a.clone(), a]).unwrap();
        assert_eq!(s.to_string(), "a * (a || a)");
        assert_eq!(t.to_string(), "a * a || a");
    }

    #[test]
    fn switch_on_and_spaces() {
        let inst = Instance::resolve("I4", None).unwrap();
        let default = inst.default_binding();
        let args: Vec<_> = ["a", "b", "c"].iter().map(|s| parse(s).unwrap()).collect();
        let r = check_rule(&inst, &Bindings::new(), Some(&default), Rule::Switch, &args).unwrap();
        assert!(r.pass, "{:?}", r.witness);
    }
}
