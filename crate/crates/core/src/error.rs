//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong, from input validation to internal
/// consistency checks. Violation variants carry a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input polynomial is not monic with integer coefficients.
    NotMonic,
    /// Constant term is not ±1, so the root is not an algebraic unit.
    NotUnit,
    /// Root layout fails the Pisot condition; carries a description of the
    /// offending root enclosure.
    NotPisot(String),
    /// Polynomial has a proper integer factor.
    Reducible(String),
    /// Adaptive precision hit the hard cap before a decision was reached.
    PrecisionCapExceeded,
    /// Binary operation on elements of two different fields.
    MixedFields,
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// Expansion of 1 did not close within the requested bound.
    MaxLenExceeded,
    /// Digit outside the admissible alphabet {0, …, d₁}.
    DigitOutOfRange(u64),
    /// Greedy orbit did not terminate or cycle within the step bound.
    MaxStepsExceeded,
    /// Argument outside the required range (e.g. negative where x ≥ 0 needed).
    OutOfRange(String),
    /// Orbit undecided within the finitary search step cap.
    StepCapExceeded,
    /// Subtraction of expansions with a negative exact difference.
    NegativeDifference,
    /// Element is not in 𝒫_β where membership is required.
    NotInPisotGroup,
    /// Group enumeration refused: β not proven finitary.
    NotFinitary(String),
    /// Integer sequence never settles into the characteristic recurrence.
    NotRecurrent,
    /// Sequence fails the eventual-recurrence/nonnegativity precondition.
    NotEventuallyRecurrent,
    /// Exact ξ reconstruction failed its round-trip certificate.
    ReconstructionFailed,
    /// Digit windows of partial limits did not stabilize within the bound.
    UnstableDigitLimits,
    /// A digit sequence fails Parry admissibility where required.
    NotAdmissible,
    /// Two independent computations of the same invariant disagree.
    InternalInconsistency(String),
    /// |det A| differed from |D|.
    DeterminantMismatch(String),
    /// A coding-kernel check failed; carries the witness.
    KernelViolation(String),
    /// A semiconjugacy check failed; carries the witness.
    SemiconjugacyViolation(String),
    /// A factorization (φ = A·φ₀) check failed; carries the witness.
    FactorizationViolation(String),
    /// Could not parse a polynomial or element from text.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotMonic => write!(f, "polynomial is not monic with integer coefficients"),
            Error::NotUnit => write!(f, "constant term is not ±1"),
            Error::NotPisot(w) => write!(f, "not a Pisot polynomial: {w}"),
            Error::Reducible(w) => write!(f, "polynomial is reducible: {w}"),
            Error::PrecisionCapExceeded => write!(f, "precision cap exceeded before decision"),
            Error::MixedFields => write!(f, "operands belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::MaxLenExceeded => write!(f, "expansion of 1 exceeded the length bound"),
            Error::DigitOutOfRange(d) => write!(f, "digit {d} outside the admissible alphabet"),
            Error::MaxStepsExceeded => write!(f, "greedy orbit exceeded the step bound"),
            Error::OutOfRange(w) => write!(f, "argument out of range: {w}"),
            Error::StepCapExceeded => write!(f, "finitary search step cap exceeded"),
            Error::NegativeDifference => write!(f, "difference of expansions is negative"),
            Error::NotInPisotGroup => write!(f, "element is not in the dual lattice"),
            Error::NotFinitary(w) => write!(f, "beta is not proven finitary: {w}"),
            Error::NotRecurrent => write!(f, "sequence does not satisfy the recurrence"),
            Error::NotEventuallyRecurrent => {
                write!(f, "sequence is not eventually recurrent and nonnegative")
            }
            Error::ReconstructionFailed => write!(f, "exact reconstruction failed verification"),
            Error::UnstableDigitLimits => write!(f, "partial-limit digit windows did not stabilize"),
            Error::NotAdmissible => write!(f, "digit sequence is not admissible"),
            Error::InternalInconsistency(w) => write!(f, "internal inconsistency: {w}"),
            Error::DeterminantMismatch(w) => write!(f, "determinant mismatch: {w}"),
            Error::KernelViolation(w) => write!(f, "kernel violation: {w}"),
            Error::SemiconjugacyViolation(w) => write!(f, "semiconjugacy violation: {w}"),
            Error::FactorizationViolation(w) => write!(f, "factorization violation: {w}"),
            Error::Parse(w) => write!(f, "parse error: {w}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
