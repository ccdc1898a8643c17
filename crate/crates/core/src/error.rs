use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("uncertain zero: {0}")]
    UncertainZero(String),
    #[error("zero element has no multiplicative order")]
    ZeroElement,
    #[error("reduction mod p is inseparable; no coprime split exists")]
    InseparableReduction,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("stratum (e={e}, f={f}, c={c}) incomplete: found mass {found}, expected {expected}")]
    StratumIncomplete {
        e: u32,
        f: u32,
        c: u32,
        found: String,
        expected: String,
    },
    #[error("mass overshoot in stratum (e={e}, f={f}, c={c}): found {found}, expected {expected}")]
    MassOvershoot {
        e: u32,
        f: u32,
        c: u32,
        found: String,
        expected: String,
    },
    #[error("missing table for p={p}, n={n}")]
    MissingTable { p: u64, n: u32 },
    #[error("root-shift search exceeded cap {0}")]
    RootShiftCap(u32),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
