use thiserror::Error;

/// Errors raised by the solver engines and the model catalog.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("negative discriminant in {what}: {value:e}")]
    NegativeDiscriminant { what: &'static str, value: f64 },

    #[error("zero denominator in {what}")]
    ZeroDenominator { what: &'static str },

    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("no admissible root of the eigencondition for n = {n} in [{lo}, {hi}]")]
    NoRootInBracket { n: u32, lo: f64, hi: f64 },

    #[error("Pochhammer symbol ({c})_k vanishes inside a degree-{n} terminating series")]
    PochhammerZero { n: u32, c: f64 },

    #[error("hypergeometric lower parameter {gamma} is zero or a negative integer")]
    InvalidHypergeomParams { gamma: f64 },

    #[error("series centres differ: {left} vs {right}")]
    CenterMismatch { left: f64, right: f64 },

    #[error("truncated series order exhausted at iteration {k}")]
    OrderExhausted { k: usize },

    #[error("{engine} did not converge: {detail}")]
    NonConvergent { engine: &'static str, detail: String },

    #[error("could not bracket the {n}-node state: {detail}")]
    BracketExhausted { n: u32, detail: String },

    #[error("wavefunction tail does not decay ({ratio:e} of peak at the boundary)")]
    NonDecayingTail { ratio: f64 },

    #[error("angular quantization has no real solution: {detail}")]
    ComplexAngularRoot { detail: String },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("model `{model}` has no parameter `{name}`")]
    UnknownParameter { model: String, name: String },

    #[error("parameter `{name}` = {value} outside its valid range: {rule}")]
    ParameterOutOfRange {
        name: String,
        value: f64,
        rule: &'static str,
    },

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
