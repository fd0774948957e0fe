use thiserror::Error;

/// Errors raised while constructing or validating groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty multiplication table")]
    EmptyTable,
    #[error("multiplication table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry mul({a},{b}) = {value} is out of range")]
    EntryOutOfRange { a: usize, b: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("no inverse for element {0}")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group closure exceeds the size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },
    #[error("invalid permutation generator {index}: {reason}")]
    BadPermutation { index: usize, reason: String },
    #[error("group spec must provide exactly one of \"table\" or \"permGenerators\"")]
    AmbiguousSpec,
    #[error("invalid abelian group: {0}")]
    BadAbelian(String),
    #[error("invalid transversal: {0}")]
    BadTransversal(String),
}

/// Errors raised by the counting engine, sampler and oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("n = {n} exceeds the direct-enumeration cap {cap}; use hom_count_wreath instead")]
    DirectCapExceeded { n: usize, cap: usize },
    #[error("n = {n} exceeds the recurrence cap {cap}")]
    RecurrenceCapExceeded { n: usize, cap: usize },
    #[error("wreath product of order {order} exceeds the oracle cap {cap}")]
    WreathCapExceeded { order: String, cap: u64 },
    #[error("homomorphism search needs {candidates} candidate tuples, above the cap {cap}")]
    SearchCapExceeded { candidates: String, cap: u64 },
    #[error("centralizer search degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("recurrence produced a non-integral value at n = {n}")]
    NonIntegral { n: usize },
}
