use thiserror::Error;

/// Errors shared across the crate.
///
/// Variants mirror the failure modes of the individual subsystems; most
/// operations return only a small subset of them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // --- exact arithmetic ---
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("field too large: q = {0} exceeds the supported bound")]
    FieldTooLarge(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("character evaluated at zero")]
    ZeroArgument,
    #[error("Gauss sum of the trivial character is not defined here")]
    TrivialCharacter,
    #[error("character order {order} does not divide q - 1 = {qm1}")]
    BadCharacterOrder { order: u64, qm1: u64 },
    #[error("value is not real")]
    NotReal,
    #[error("value is zero")]
    Zero,
    #[error("incompatible base powers in normalized product")]
    MixedBase,

    // --- groups and representations ---
    #[error("element or subgroup belongs to a different group")]
    GroupMismatch,
    #[error("group of order {0} exceeds the enumeration bound {1}")]
    GroupTooLarge(u64, u64),

    // --- elliptic curves ---
    #[error("singular model: discriminant is zero")]
    SingularModel,
    #[error("point does not lie on the curve")]
    OffCurve,
    #[error("kernel is not a subgroup of the curve's rational points")]
    NotASubgroup,
    #[error("kernel contains a non-torsion point")]
    NotTorsion,

    // --- geometry on the line ---
    #[error("pole of order greater than one; residue undefined")]
    HigherOrderPole,
    #[error("boundary divisor is empty")]
    EmptyD,
    #[error("marked points overlap the boundary divisor")]
    Overlap,
    #[error("differential has the wrong divisor: {0}")]
    WrongDivisor(String),
    #[error("no local character supplied for a boundary point")]
    MissingCharacter,

    // --- fiber model and engine ---
    #[error("unsupported reduction type: {0}")]
    UnsupportedType(String),
    #[error("missing local data: {0}")]
    MissingLocalData(String),
    #[error("determinant of the inertia invariants is nontrivial; reduction not applicable")]
    NontrivialDet,
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("representation fails validation: {0}")]
    NotValidRep(String),
    #[error("action is not numerically tame: {0}")]
    NotTame(String),
    #[error("unsupported reduction in pipeline: {0}")]
    UnsupportedReduction(String),
    #[error("invalid fiber description: {0}")]
    InvalidFiber(String),

    // --- serialization ---
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
