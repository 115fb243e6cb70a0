use thiserror::Error;

/// Errors raised by the library.
///
/// Several variants (`RigidityFailure`, `NonTerminatingGrowth`,
/// `ResolutionCap`, ...) can only fire when a computation contradicts the
/// theory; they exist so that such a contradiction surfaces as a diagnosable
/// error instead of a wrong answer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("unsupported Dynkin type `{0}`")]
    UnsupportedType(String),
    #[error("empty level range {0}..={1}")]
    EmptyRange(i64, i64),
    #[error("group action is not admissible: ({0}, {1}) is fixed by a non-identity element")]
    NonAdmissibleAction(i64, usize),
    #[error("the orientation of {0} has no rectangular Auslander subquiver")]
    UnsupportedOrientation(String),
    #[error("vertex ({0}, {1}) lies outside the Auslander rectangle")]
    VertexOutsideRectangle(i64, usize),
    #[error("path basis still growing at length {0}")]
    NonTerminatingGrowth(usize),
    #[error("resolution did not terminate within {0} steps")]
    ResolutionCap(usize),
    #[error("decomposition disagrees across random seeds: {0}")]
    DecompositionUnstable(String),
    #[error("left approximation of {0} is not injective")]
    NotInjective(String),
    #[error("cannot mutate at projective orbit {0}")]
    MutationAtProjective(String),
    #[error("rigidity failure: {0}")]
    RigidityFailure(String),
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("matrix is not invariant under the orbit permutation: {0}")]
    NotGammaAction(String),
    #[error("matrix has a nonzero diagonal entry at {0}")]
    NonzeroDiagonal(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error("unknown label `{0}`")]
    LabelNotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("theory check failed: {0}")]
    TheoryViolation(String),
}

pub type Result<T, E = MeshError> = std::result::Result<T, E>;
