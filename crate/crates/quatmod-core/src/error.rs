use alloc::string::String;
use core::fmt;

/// Errors reported by the exact and geometric operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different quadratic fields.
    FieldMismatch,
    /// Division by a zero field element.
    DivisionByZero,
    /// Inverse of the zero quaternion.
    ZeroQuaternion,
    /// Field descriptor parameter is not squarefree or is 0/1.
    NotSquarefree(u64),
    /// The rationals have no fundamental unit.
    RationalField,
    /// A named order is incompatible with the requested field.
    IncompatibleOrder(String),
    /// Supplied basis does not span a full-rank lattice.
    RankDeficient,
    /// Exact linear system has no solution (singular matrix).
    SingularMatrix,
    /// Matrix does not have Dieudonné determinant 1.
    DeterminantNotOne,
    /// Matrix violates the Bisi-Gentili conditions.
    BgViolation,
    /// Iwasawa recovery is ill-conditioned (both off-diagonal norms vanish).
    IllConditioned,
    /// Möbius decomposition requested for a non-invertible matrix.
    NotInvertible,
    /// Operand is not a Hurwitz integer over Q.
    NotHurwitz,
    /// Right division by zero.
    DivisorZero,
    /// gcd of (0, 0) is undefined.
    BothZero,
    /// Bézout construction requires right-coprime inputs.
    NotCoprime,
    /// Chimney reduction exceeded the iteration cap.
    ReductionCap { steps: usize },
    /// Element could not be re-expressed integrally in the lattice basis.
    NotInLattice,
    /// Torsion census does not match any group in the classification.
    UnrecognizedTorsion,
    /// A generator failed its exact certification (BG, determinant or
    /// membership); signals an inconsistent order.
    Certification(String),
    /// Malformed textual input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero field element"),
            Error::ZeroQuaternion => write!(f, "inverse of the zero quaternion"),
            Error::NotSquarefree(n) => write!(f, "{n} is not a valid squarefree parameter > 1"),
            Error::RationalField => write!(f, "operation requires a real quadratic field"),
            Error::IncompatibleOrder(msg) => write!(f, "incompatible order: {msg}"),
            Error::RankDeficient => write!(f, "basis does not span a full-rank lattice"),
            Error::SingularMatrix => write!(f, "singular matrix in exact linear solve"),
            Error::DeterminantNotOne => write!(f, "Dieudonné determinant is not 1"),
            Error::BgViolation => write!(f, "matrix violates the Bisi-Gentili conditions"),
            Error::IllConditioned => write!(f, "ill-conditioned Iwasawa recovery"),
            Error::NotInvertible => write!(f, "matrix has zero Dieudonné determinant"),
            Error::NotHurwitz => write!(f, "operand is not a Hurwitz integer"),
            Error::DivisorZero => write!(f, "right division by zero"),
            Error::BothZero => write!(f, "gcd(0, 0) is undefined"),
            Error::NotCoprime => write!(f, "inputs are not right-coprime"),
            Error::ReductionCap { steps } => {
                write!(f, "chimney reduction exceeded {steps} steps")
            }
            Error::NotInLattice => write!(f, "element leaves the lattice"),
            Error::UnrecognizedTorsion => write!(f, "torsion census matches no known group"),
            Error::Certification(msg) => write!(f, "generator certification failed: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
