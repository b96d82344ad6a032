use super::{FinCategory, Tables};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 4] = ["I1", "I2", "I3", "I4"];

/// I1: the terminal category with its trivial monoidal structure.
pub fn terminal() -> FinCategory {
    let t = Tables {
        name: "I1".into(),
        objects: vec!["*".into()],
        morphisms: vec![("id".into(), 0, 0)],
        ids: vec![0],
        tensor_obj: vec![0],
        tensor_mor: vec![0],
        unit: 0,
        symmetry: vec![0],
    };
    FinCategory::from_tables(t, |_, _| Some(0)).expect("terminal category tables")
}

/// I2: one object, morphisms Z₂ under addition, `⊗` on morphisms is
/// addition and the symmetry is `0`.
pub fn z2_group() -> FinCategory {
    let t = Tables {
        name: "I2".into(),
        objects: vec!["•".into()],
        morphisms: vec![("0".into(), 0, 0), ("1".into(), 0, 0)],
        ids: vec![0],
        tensor_obj: vec![0],
        tensor_mor: vec![0, 1, 1, 0],
        unit: 0,
        symmetry: vec![0],
    };
    FinCategory::from_tables(t, |g, f| Some((g + f) % 2)).expect("Z2 tables")
}

/// I3: the discrete monoidal category on the monoid Z₂.
pub fn z2_discrete() -> FinCategory {
    let t = Tables {
        name: "I3".into(),
        objects: vec!["0".into(), "1".into()],
        morphisms: vec![("id0".into(), 0, 0), ("id1".into(), 1, 1)],
        ids: vec![0, 1],
        tensor_obj: vec![0, 1, 1, 0],
        tensor_mor: vec![0, 1, 1, 0],
        unit: 0,
        symmetry: vec![0, 1, 1, 0],
    };
    FinCategory::from_tables(t, |g, f| (g == f).then_some(g)).expect("discrete Z2 tables")
}

/// Looks up a built-in base category by name.
///
/// `I4` is a finite-set engine rather than a table category; its base is
/// the terminal category.
pub fn builtin(name: &str) -> Result<FinCategory> {
    match name {
        "I1" => Ok(terminal()),
        "I2" => Ok(z2_group()),
        "I3" => Ok(z2_discrete()),
        "I4" => Ok(terminal().renamed("I4")),
        other => Err(Error::Config(format!("unknown built-in instance `{other}`"))),
    }
}
