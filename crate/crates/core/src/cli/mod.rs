//! Formula syntax, models, rule checks and law suites behind the
//! `bvengine` command line.

mod model;
mod rules;
mod suite;
mod syntax;

pub use model::{build_env, build_set, interpret, load_bindings, lookup, Binding, Bindings, Instance, Model};
pub use rules::{check_rule, check_rule_in, Rule, RuleReport};
pub use suite::{exit_code, run_suite, CheckReport, Status, Suite, SuiteConfig};
pub use syntax::{parse, Formula};
