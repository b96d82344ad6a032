//! Python bindings: parse formulas, validate instances, run suites and
//! rule checks. Reports come back as plain dicts and lists.

use bvengine_core::chu::MonoidalEngine;
use bvengine_core::cli::{
    build_env, build_set, check_rule as core_check_rule, exit_code, interpret, lookup, parse,
    run_suite as core_run_suite, Bindings, Instance, Model, Rule, Suite, SuiteConfig,
};
use bvengine_core::finbase::InstanceSpec;
use bvengine_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(bvengine, BvEngineError, PyValueError, "A bvengine error; the message starts with its kind.");

fn err(e: Error) -> PyErr {
    BvEngineError::new_err(format!("{}: {e}", e.kind()))
}

fn to_py<'py>(py: Python<'py>, v: serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn bindings(json: Option<&str>) -> Result<Bindings, Error> {
    json.map_or(Ok(Bindings::new()), |t| serde_json::from_str(t).map_err(|e| Error::Schema(e.to_string())))
}

/// Canonical printed form of a formula.
#[pyfunction]
fn canonical(text: &str) -> PyResult<String> {
    parse(text).map(|f| f.to_string()).map_err(err)
}

/// Atom names of a formula, in order of first occurrence.
#[pyfunction]
fn atoms(text: &str) -> PyResult<Vec<String>> {
    parse(text).map(|f| f.atoms()).map_err(err)
}

/// Loads and validates an instance file; returns `(objects, morphisms)`.
#[pyfunction]
fn validate(path: &str) -> PyResult<(usize, usize)> {
    let c = InstanceSpec::from_path(path.as_ref()).and_then(|s| s.load()).map_err(err)?;
    Ok((c.num_objects(), c.num_morphisms()))
}

/// Runs a suite; returns `(exit_code, reports)`.
#[pyfunction]
#[pyo3(signature = (instance, suite = "all", budget = None, config = None))]
fn run_suite<'py>(
    py: Python<'py>,
    instance: &str,
    suite: &str,
    budget: Option<u64>,
    config: Option<&str>,
) -> PyResult<(i32, Bound<'py, PyAny>)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let config = config.map_or(Ok(SuiteConfig::default()), SuiteConfig::from_json).map_err(err)?;
    let reports = py.detach(|| core_run_suite(instance, suite, budget, &config));
    let v = serde_json::to_value(&reports).map_err(|e| err(Error::Config(e.to_string())))?;
    Ok((exit_code(&reports), to_py(py, v)?))
}

/// Interprets a formula; returns the carrier sizes of both components.
#[pyfunction]
#[pyo3(signature = (formula, instance = "I2", bindings_json = None, budget = None))]
fn eval_formula(
    py: Python<'_>,
    formula: &str,
    instance: &str,
    bindings_json: Option<&str>,
    budget: Option<u64>,
) -> PyResult<(Vec<usize>, Vec<usize>)> {
    py.detach(|| {
        let b = bindings(bindings_json)?;
        let inst = Instance::resolve(instance, budget)?;
        let f = parse(formula)?;
        let default = inst.default_binding();
        let find = lookup(&b, Some(&default));
        match &inst.model {
            Model::Env(e) => {
                let o = interpret(&e.chu, &f, &|n| build_env(e, find(n)?))?;
                Ok((e.chu.engine.sizes(&o.a), e.chu.engine.sizes(&o.a2)))
            }
            Model::Set(chu) => {
                let o = interpret(chu, &f, &|n| build_set(chu, find(n)?))?;
                Ok((chu.engine.sizes(&o.a), chu.engine.sizes(&o.a2)))
            }
        }
    })
    .map_err(err)
}

/// Checks a rule instance; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (name, args, instance = "I2", bindings_json = None, budget = None))]
fn check_rule<'py>(
    py: Python<'py>,
    name: &str,
    args: Vec<String>,
    instance: &str,
    bindings_json: Option<&str>,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| {
            let rule: Rule = name.parse()?;
            let b = bindings(bindings_json)?;
            let inst = Instance::resolve(instance, budget)?;
            let args = args.iter().map(|a| parse(a)).collect::<Result<Vec<_>, _>>()?;
            let default = inst.default_binding();
            core_check_rule(&inst, &b, Some(&default), rule, &args)
        })
        .map_err(err)?;
    let v = serde_json::to_value(&r).map_err(|e| err(Error::Config(e.to_string())))?;
    to_py(py, v)
}

#[pymodule]
fn bvengine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BvEngineError", m.py().get_type::<BvEngineError>())?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(atoms, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(eval_formula, m)?)?;
    m.add_function(wrap_pyfunction!(check_rule, m)?)?;
    Ok(())
}
