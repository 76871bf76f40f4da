/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid domain or run configuration (out-of-range inflation, bad grid, ...).
    #[error("invalid configuration: {0}")]
    Config(String),
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A boundary derivative is zero or unbounded where it must be finite and zero-free.
    #[error("degenerate boundary derivative: {0}")]
    Degeneracy(String),
    /// The fit design system lost rank beyond what can be repaired.
    #[error("ill-conditioned fit: {0}")]
    Conditioning(String),
    /// Parameters violate the strict inequalities required for the construction.
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    /// The construction exhausted its iteration budget before the bounds held.
    #[error("construction scale exceeded: {0}")]
    Scale(String),
    /// A value left the representable exponent range of the scalar type.
    #[error("floating-point range exceeded: {0}")]
    Precision(String),
    /// The requested method does not apply to this input.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
