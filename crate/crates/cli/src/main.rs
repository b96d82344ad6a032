use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bvengine_core::chu::MonoidalEngine;
use bvengine_core::cli::{
    build_env, build_set, check_rule, exit_code, interpret, load_bindings, lookup, parse, run_suite, Bindings,
    CheckReport, Instance, Model, Rule, Status, Suite, SuiteConfig,
};
use bvengine_core::finbase::InstanceSpec;
use bvengine_core::Error;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bvengine", version, about = "Finite Chu-construction law checker for BV models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an instance file.
    Validate { instance: PathBuf },
    /// Run law suites over an instance.
    Run {
        /// Built-in name (I1…I4) or path to an instance file.
        #[arg(long)]
        instance: String,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, env = "BVENGINE_BUDGET")]
        budget: Option<u64>,
        /// Write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Corpus configuration (bindings, corpus formulas, event pairs).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Interpret a formula and describe the resulting Chu object.
    Eval {
        #[arg(long, default_value = "I2")]
        instance: String,
        /// Atom bindings; unbound atoms fall back to a default object.
        #[arg(long)]
        env: Option<PathBuf>,
        #[arg(long)]
        formula: String,
        #[arg(long, env = "BVENGINE_BUDGET")]
        budget: Option<u64>,
    },
    /// Build and validate the canonical morphism of a rule instance.
    Rule {
        #[arg(long)]
        name: Rule,
        /// Comma-separated formulas.
        #[arg(long)]
        args: String,
        #[arg(long, default_value = "I2")]
        instance: String,
        #[arg(long)]
        env: Option<PathBuf>,
        #[arg(long, env = "BVENGINE_BUDGET")]
        budget: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Errors that are the caller's fault exit with 2, falsified laws with 1.
fn fail(e: &Error) -> ExitCode {
    eprintln!("{}: {e}", e.kind());
    ExitCode::from(if e.is_budget_or_config() { 2 } else { 1 })
}

fn write_json(path: &Path, value: serde_json::Result<serde_json::Value>) -> Result<(), Error> {
    let text = value.and_then(|v| serde_json::to_string_pretty(&v)).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn print_reports(reports: &[CheckReport]) {
    for r in reports {
        let tag = match r.status {
            Status::Pass => "PASS ",
            Status::Fail => "FAIL ",
            Status::Error => "ERROR",
            Status::Skip => "SKIP ",
        };
        println!("{tag} {:<34} {:<6} {:>7} ms", r.check, r.instance, r.millis);
        if let Some(w) = &r.witness {
            println!("      {w}");
        }
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    println!(
        "{} checks: {} passed, {} failed, {} errors, {} skipped",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Error),
        count(Status::Skip)
    );
}

fn bindings(env: &Option<PathBuf>) -> Result<Bindings, Error> {
    env.as_deref().map_or(Ok(Bindings::new()), load_bindings)
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Validate { instance } => {
            let loaded = InstanceSpec::from_path(&instance).and_then(|s| s.load());
            match loaded {
                Ok(c) => {
                    println!("valid: {} ({} objects, {} morphisms)", c.name(), c.num_objects(), c.num_morphisms());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}: {e}", e.kind());
                    ExitCode::from(2)
                }
            }
        }
        Cmd::Run { instance, suite, budget, report, config } => {
            let config = match config {
                None => SuiteConfig::default(),
                Some(p) => match std::fs::read_to_string(&p)
                    .map_err(|e| Error::Config(format!("{}: {e}", p.display())))
                    .and_then(|t| SuiteConfig::from_json(&t))
                {
                    Ok(c) => c,
                    Err(e) => return fail(&e),
                },
            };
            let mut reports = run_suite(&instance, suite, budget, &config);
            reports.sort_by(|a, b| a.check.cmp(&b.check));
            print_reports(&reports);
            if let Some(path) = report {
                if let Err(e) = write_json(&path, serde_json::to_value(&reports)) {
                    return fail(&e);
                }
            }
            ExitCode::from(exit_code(&reports) as u8)
        }
        Cmd::Eval { instance, env, formula, budget } => {
            let run = || -> Result<(), Error> {
                let bindings = bindings(&env)?;
                let inst = Instance::resolve(&instance, budget)?;
                let f = parse(&formula)?;
                let default = inst.default_binding();
                let find = lookup(&bindings, Some(&default));
                println!("formula: {f}");
                let (name, a, a2) = match &inst.model {
                    Model::Env(e) => {
                        let o = interpret(&e.chu, &f, &|n| build_env(e, find(n)?))?;
                        (e.chu.engine.name(), e.chu.engine.describe(&o.a), e.chu.engine.describe(&o.a2))
                    }
                    Model::Set(chu) => {
                        let o = interpret(chu, &f, &|n| build_set(chu, find(n)?))?;
                        (chu.engine.name(), chu.engine.describe(&o.a), chu.engine.describe(&o.a2))
                    }
                };
                println!("model:   Chu over {name}");
                println!("a:       {a}");
                println!("a':      {a2}");
                Ok(())
            };
            match run() {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Cmd::Rule { name, args, instance, env, budget, report } => {
            let run = || -> Result<bool, Error> {
                let bindings = bindings(&env)?;
                let inst = Instance::resolve(&instance, budget)?;
                let args = args.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
                let default = inst.default_binding();
                let r = check_rule(&inst, &bindings, Some(&default), name, &args)?;
                println!("{} {name}: {} → {}", if r.pass { "PASS" } else { "FAIL" }, r.source, r.target);
                for (k, v) in &r.cardinalities {
                    println!("      {k:<10} {v:?}");
                }
                if let Some(w) = &r.witness {
                    println!("      {w}");
                }
                if let Some(path) = &report {
                    write_json(path, serde_json::to_value(&r))?;
                }
                Ok(r.pass)
            };
            match run() {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => fail(&e),
            }
        }
    }
}
