//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the simulation layer.
///
/// All variants are programmer- or configuration-level failures; numerical
/// routines never return silently degraded results.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A Fock order or polynomial order beyond the stable range of the
    /// evaluation scheme was requested.
    #[error("order {n} exceeds the stable evaluation bound {max}")]
    UnsupportedOrder { n: usize, max: usize },

    /// A truncated Fock representation cannot hold the requested state.
    #[error("truncation too small: tail mass {tail:.3e} exceeds {limit:.1e} at dim {dim} (try dim ≥ {suggested})")]
    Truncation {
        dim: usize,
        tail: f64,
        limit: f64,
        suggested: usize,
    },

    /// Operands have incompatible shapes or mode counts.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Parameters describe an impossible displacement circle.
    #[error("impossible geometry: |gamma/(m*beta)| = {ratio:.6} exceeds 1")]
    Geometry { ratio: f64 },

    /// A state with vanishing norm was passed where a physical state is needed.
    #[error("zero-norm state")]
    ZeroNorm,

    /// The adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: error estimate {estimate:.3e} after {segments} segments")]
    QuadratureNoConverge { estimate: f64, segments: usize },

    /// Peak detection needs at least two peaks above the prominence floor.
    #[error("insufficient peaks: found {found}, need at least 2")]
    InsufficientPeaks { found: usize },

    /// A value outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A non-finite number appeared where a finite one is required.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}
