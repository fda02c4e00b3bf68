use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),
    #[error("{core} is not a {p}-core")]
    NotACore { core: String, p: usize },
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("incompatible cyclotomic orders {0} and {1}")]
    IncompatibleOrders(u32, u32),
    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },
    #[error("group of order {order} exceeds the element guard {guard}")]
    GuardExceeded { order: usize, guard: usize },
    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Trial division; the primes handled here are tiny.
pub(crate) fn check_odd_prime(p: usize) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if prime && p % 2 == 1 {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}
