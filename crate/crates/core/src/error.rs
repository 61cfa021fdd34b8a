use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyInput,
    #[error("points do not span R^{dimension} affinely")]
    NotFullDimensional { dimension: usize },
    #[error("coordinate index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("operation requires dimension at least {required}")]
    DimensionTooSmall { required: usize },
    #[error("interior count is undefined at dilation 0")]
    ZeroDilation,
    #[error("rescaling factor must be positive")]
    ZeroScale,
    #[error("not enough samples: need t up to {needed}, have {available}")]
    InsufficientSamples { needed: u64, available: u64 },
    #[error("fitted constituent for residue {residue} disagrees with sample at t = {t}")]
    ValidationFailed { residue: u64, t: u64 },
    #[error("assembled quasi-polynomial disagrees with direct count at t = {t}")]
    CrossValidationFailed { t: u64 },
    #[error("cell key does not match the current polytope's facet count")]
    ForeignKey,
    #[error("cell key describes an empty stratum")]
    EmptyCell,
    #[error("cell key not present in exhaustive table")]
    UnknownCell,
    #[error("cell enumeration exceeded {limit} feasibility checks")]
    EnumerationLimit { limit: usize },
    #[error("polytope is not centrally symmetric about a half-integral center")]
    NotCentrallySymmetricOverZ,
    #[error("polytope is not a lattice polytope (denominator {denominator})")]
    NotLatticePolytope { denominator: u64 },
    #[error("Hilbert numerator does not terminate below degree {bound}")]
    NonterminatingNumerator { bound: usize },
    #[error("d!·volume = {value} is not an integer")]
    NonIntegralNormalizedVolume { value: String },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("parse error: {0}")]
    Parse(String),
}
