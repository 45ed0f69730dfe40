use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row},{col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("subset is not closed: {a}·{b} falls outside")]
    NotClosed { a: usize, b: usize },
    #[error("group order {order} exceeds the bound {bound}")]
    SizeBound { order: usize, bound: usize },
    #[error("invariant factor {0} is less than 2")]
    BadInvariantFactor(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("expected {expected} matrices, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("matrix for element {element} has the wrong shape")]
    BadShape { element: usize },
    #[error("matrix for element {element} is not well defined: column {col} times {factor} is nonzero in row {row}")]
    NotWellDefined { element: usize, row: usize, col: usize, factor: u64 },
    #[error("matrix for element {element} is not bijective")]
    NotBijective { element: usize },
    #[error("not a homomorphism: image({g}·{h}) ≠ image({g})∘image({h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("identity element does not act trivially")]
    IdentityNontrivial,
    #[error("generator images do not reach element {element}")]
    DoesNotGenerate { element: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("degree {degree} is not supported (allowed: {min}..={max})")]
    UnsupportedDegree { degree: usize, min: usize, max: usize },
    #[error("linear system with {rows} rows exceeds the matrix bound {bound}")]
    SizeBound { rows: usize, bound: usize },
    #[error("not a cocycle: differential is nonzero at {tuple:?}")]
    NotACocycle { tuple: Vec<usize> },
    #[error("not symmetric: φ({a},{b}) ≠ φ({b},{a})")]
    NotSymmetric { a: usize, b: usize },
    #[error("base group is not abelian")]
    NotAbelian,
    #[error("cochains live over different groups, modules or degrees")]
    Mismatched,
    #[error("no solution within torsion bound {bound}")]
    TorsionBoundExceeded { bound: u64 },
    #[error("computation cancelled")]
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoGroupError {
    #[error("pentagon fails at (g,h,k,l) = ({g},{h},{k},{l})")]
    PentagonViolation { g: usize, h: usize, k: usize, l: usize },
    #[error("associator is a cochain of degree {0}, expected 3")]
    WrongDegree(usize),
    #[error("associator lives over a different module")]
    ModuleMismatch,
    #[error("Postnikov data (group, coefficients, action) differ")]
    MismatchedPostnikovData,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {den} does not divide conductor {conductor}")]
    ConductorMismatch { den: u64, conductor: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("triple does not compose to a nonzero object")]
    ZeroComposite,
    #[error("simple ({g},{rho}) is out of range")]
    UnknownSimple { g: usize, rho: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Umbrella error for callers that drive several modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    TwoGroup(#[from] TwoGroupError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}
