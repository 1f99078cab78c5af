use std::fmt;

/// Errors reported by the certification toolkit.
///
/// `InvalidInput` covers precondition violations on user-supplied data,
/// `BudgetExceeded` is returned by searches that were cut off before
/// reaching a verified answer. A budget error never carries an unverified
/// result; at most a proven lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on user input does not hold.
    InvalidInput(String),
    /// Two dimensions that must agree do not.
    DimensionMismatch { expected: usize, found: usize },
    /// The operation requires a lattice of rank at least one.
    EmptyLattice,
    /// The operation is not defined at this group order.
    UnsupportedOrder(String),
    /// A search or solver ran out of its configured budget.
    BudgetExceeded {
        what: String,
        /// Verified partial result, when one exists (e.g. a lower bound on
        /// an automorphism group order).
        lower_bound: Option<u128>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyLattice => write!(f, "operation requires a lattice of rank >= 1"),
            Error::UnsupportedOrder(msg) => write!(f, "unsupported order: {msg}"),
            Error::BudgetExceeded { what, lower_bound } => {
                write!(f, "budget exceeded in {what}")?;
                if let Some(lb) = lower_bound {
                    write!(f, " (verified lower bound: {lb})")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
