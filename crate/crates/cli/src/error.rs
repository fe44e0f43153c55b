use std::fmt;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, unknown model or parameter, out-of-range values.
    Config(String),
    /// An engine could not produce a value.
    Solver(String),
    /// Engines disagree beyond tolerance.
    Disagreement(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Disagreement(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Solver(_) => "solver",
            CliError::Disagreement(_) => "disagreement",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Solver(m) | CliError::Disagreement(m) | CliError::Io(m) => m,
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct Body<'a> {
            code: i32,
            kind: &'a str,
            message: &'a str,
        }
        #[derive(serde::Serialize)]
        struct Envelope<'a> {
            schema: u32,
            error: Body<'a>,
        }
        let env = Envelope {
            schema: crate::report::SCHEMA,
            error: Body {
                code: self.exit_code(),
                kind: self.kind(),
                message: self.message(),
            },
        };
        serde_json::to_string(&env).expect("plain strings serialize")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Model construction problems are the caller's fault; everything else is
/// a solver failure.
pub fn classify(e: bsf_core::Error) -> CliError {
    use bsf_core::Error as E;
    match e {
        E::UnknownModel(_)
        | E::UnknownParameter { .. }
        | E::ParameterOutOfRange { .. }
        | E::InvalidQuantumNumbers(_)
        | E::ComplexAngularRoot { .. } => CliError::Config(e.to_string()),
        other => CliError::Solver(other.to_string()),
    }
}
