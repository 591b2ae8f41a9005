use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{what} of size {n} exceeds the enumeration cap {cap}")]
    SizeCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("truncation order {order} is too small, need at least {needed}")]
    Truncation { order: usize, needed: usize },
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { what, n, cap })
    } else {
        Ok(())
    }
}
