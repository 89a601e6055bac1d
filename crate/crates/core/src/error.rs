use thiserror::Error;

/// Every failure the engine reports. Witnesses are rendered in canonical
/// expression form so that reports stay deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular linear system")]
    SingularSystem,
    #[error("pole at point in component {component}: denominator {denominator} vanishes")]
    PoleAtPoint { component: String, denominator: String },
    #[error("matrix is singular at the sample point")]
    SingularAtPoint,
    #[error("tensors live on different charts")]
    ChartMismatch,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("metric determinant vanishes identically")]
    SingularMetric,
    #[error("1-form is not contact: {0}")]
    NotContact(String),
    #[error("kernel of the contact form has no chart-global frame")]
    NoGlobalFrame,
    #[error("field {index} is not in the contact distribution: eta value {value}")]
    NotInContactDistribution { index: usize, value: String },
    #[error("fields {i} and {j} are not isotropic: d eta value {value}")]
    NotIsotropic { i: usize, j: usize, value: String },
    #[error("frame is rank deficient: {0}")]
    RankDeficient(String),
    #[error("Pang form is degenerate: {0}")]
    NotNonDegenerate(String),
    #[error("identity `{name}` violated: {witness}")]
    IdentityViolated { name: String, witness: String },
    #[error("axiom `{name}` violated: {witness}")]
    AxiomViolated { name: String, witness: String },
    #[error("internal inconsistency in `{name}`: {witness}")]
    InternalInconsistency { name: String, witness: String },
    #[error("parameters ({alpha}, {beta}) are not on the unit circle")]
    NotOnUnitCircle { alpha: String, beta: String },
    #[error("phi and psi do not anticommute: {0}")]
    AnticommutationFails(String),
    #[error("classification disagrees with diagnostics in `{name}`: {witness}")]
    CorollaryViolated { name: String, witness: String },
    #[error("guaranteed identity `{name}` failed: {witness}")]
    TheoremViolated { name: String, witness: String },
    #[error("syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown identifier `{name}` at {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("division by an identically zero expression at {position}")]
    ZeroDenominator { position: usize },
    #[error("duplicate section [{0}]")]
    DuplicateSection(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("unknown gallery item `{0}`")]
    UnknownGalleryName(String),
    #[error("{location}: {inner}")]
    Located { location: String, inner: Box<Error> },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Attaches a document location.
    pub fn at(self, location: impl Into<String>) -> Error {
        Error::Located {
            location: location.into(),
            inner: Box::new(self),
        }
    }

    /// The error without document locations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { inner, .. } => inner.root(),
            other => other,
        }
    }
}
