use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate generator name: {0}")]
    DuplicateGenerator(String),
    #[error("cartan matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("delta has {got} entries, expected {expected}")]
    DeltaLength { got: usize, expected: usize },
    #[error("diagonal violated: A[{s}][{s}] = {value}, expected 2")]
    DiagonalNotTwo { s: String, value: i64 },
    #[error("sign violated: off-diagonal A[{s}][{t}] = {value} must be nonpositive")]
    PositiveOffDiagonal { s: String, t: String, value: i64 },
    #[error("zero-symmetry violated: A[{s}][{t}] = 0 but A[{t}][{s}] = {value}")]
    ZeroSymmetryViolated { s: String, t: String, value: i64 },
    #[error("not symmetrizable: delta({s})*A[{s}][{t}] != delta({t})*A[{t}][{s}]")]
    NotSymmetrizable { s: String, t: String },
    #[error("non-positive delta: delta({s}) = {value}")]
    NonPositiveDelta { s: String, value: String },
    #[error("unknown generator name: {0}")]
    UnknownGenerator(String),
    #[error("orientation edge {s}->{t} is not an edge of the diagram")]
    EdgeOutsideDiagram { s: String, t: String },
    #[error("edge {{{s},{t}}} carries both directions")]
    BothDirections { s: String, t: String },
    #[error("diagram edge {{{s},{t}}} has no direction assigned")]
    MissingDirection { s: String, t: String },
    #[error("B-matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("delta hint inconsistent with B-matrix: {0}")]
    DeltaHintInconsistent(String),
    #[error("subset is not acyclic under the orientation")]
    CyclicSubset,
    #[error("word is not a linear extension of the induced precedence order")]
    NotLinearExtension,
    #[error("word is not reduced")]
    NotReduced,
    #[error("roots are proportional")]
    ProportionalRoots,
    #[error("zero vector where a root is required")]
    ZeroRoot,
    #[error("vector has zero self-pairing; not a root")]
    IsotropicRoot,
    #[error("ball exceeds cap of {0} elements")]
    BallTooLarge(usize),
    #[error("rank {0} too large for exhaustive subset enumeration")]
    RankTooLarge(usize),
    #[error("empty set has no meet")]
    EmptyMeet,
    #[error("length bound {bound} is below input length {need}")]
    BoundTooSmall { bound: u32, need: u32 },
    #[error("peel stuck: nonempty set contains no simple root")]
    PeelStuck,
    #[error("negative root produced while peeling")]
    NegativeRootProduced,
    #[error("maximal sortable element below {0} is not unique")]
    NonUniqueMaximum(String),
    #[error("no-chains hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("enumeration exceeds {0} terms")]
    TooManyTerms(usize),
    #[error("element {0} is not sortable")]
    NotSortable(String),
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
