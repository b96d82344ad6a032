use thiserror::Error;

/// Every failure the engine can report.
///
/// Law violations carry a human-readable witness (the offending tuple, by
/// label) so that a failed check is itself a useful report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("associativity violated at {0}")]
    AssocViolation(String),
    #[error("identity law violated at {0}")]
    IdentityViolation(String),
    #[error("tensor interchange violated at {0}")]
    InterchangeViolation(String),
    #[error("symmetry axiom violated at {0}")]
    SymmetryViolation(String),
    #[error("strictness violated at {0}")]
    StrictnessViolation(String),
    #[error("morphisms not composable: {0}")]
    NotComposable(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("enumeration budget exceeded after {bound} candidates")]
    BudgetExceeded { bound: u64 },
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("no mediating map: {0}")]
    MediatorNotFound(String),
    #[error("not a Chu morphism: {0}")]
    NotChuMorphism(String),
    #[error("no isomorphism found: {0}")]
    IsoNotFound(String),
    #[error("unbound atom `{0}`")]
    UnboundAtom(String),
    #[error("syntax error at {pos}: expected one of {expected:?}")]
    Syntax { pos: usize, expected: Vec<String> },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short stable name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AssocViolation(_) => "AssocViolation",
            Error::IdentityViolation(_) => "IdentityViolation",
            Error::InterchangeViolation(_) => "InterchangeViolation",
            Error::SymmetryViolation(_) => "SymmetryViolation",
            Error::StrictnessViolation(_) => "StrictnessViolation",
            Error::NotComposable(_) => "NotComposable",
            Error::Schema(_) => "SchemaError",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::IllDefinedMap(_) => "IllDefinedMap",
            Error::TypeMismatch(_) => "TypeMismatch",
            Error::MediatorNotFound(_) => "MediatorNotFound",
            Error::NotChuMorphism(_) => "NotChuMorphism",
            Error::IsoNotFound(_) => "IsoNotFound",
            Error::UnboundAtom(_) => "UnboundAtom",
            Error::Syntax { .. } => "SyntaxError",
            Error::Config(_) => "ConfigError",
            Error::Unsupported(_) => "Unsupported",
        }
    }

    /// Budget and configuration problems, as opposed to falsified laws.
    /// (An invalid instance file is a configuration problem too, but that
    /// is decided where the file is loaded.)
    pub fn is_budget_or_config(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::Config(_)
                | Error::Schema(_)
                | Error::UnboundAtom(_)
                | Error::Syntax { .. }
                | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
