use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Reasons a Cayley table is rejected on ingestion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("table is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("entry {value} at row {row}, column {col} is outside [0, {order})")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("row {0} is not a permutation of the elements")]
    RowNotLatin(usize),
    #[error("column {0} is not a permutation of the elements")]
    ColumnNotLatin(usize),
    #[error("element 0 is not a two-sided identity")]
    MissingIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
}

/// Reasons a Frobenius counterexample specification is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("r must be at least 3, got {0}")]
    ExponentTooSmall(u32),
    #[error("2^{0}-1 not prime")]
    NotMersenneExponent(u32),
    #[error("cofactor q={0} must be odd")]
    EvenCofactor(u64),
    #[error("cofactor q={0} is not prime")]
    CofactorNotPrime(u64),
    #[error("cofactor q={q} divides 2^{r}-1")]
    CofactorDividesComplement { q: u64, r: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("encoding {element} is not an element of a group of order {order}")]
    InvalidElement { element: usize, order: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what}: size {actual} exceeds the limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid Cayley table: {0}")]
    Table(#[from] TableError),
    #[error("invalid counterexample: {0}")]
    Spec(#[from] SpecError),
}
