use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FrontError {
    #[error("line {line}, column {column}: bad token `{token}`")]
    Syntax { line: usize, column: usize, token: String },
    #[error("event {event}: position {pos} out of range with {count} strands")]
    Position { event: usize, pos: usize, count: usize },
    #[error("event {event}: mark H{upper},{lower} out of range with {count} strands")]
    MarkRange { event: usize, upper: usize, lower: usize, count: usize },
    #[error("front ends with {count} strands instead of 0")]
    NonzeroFinal { count: usize },
    #[error("empty front")]
    Empty,
    #[error("front traces {components} components, expected a knot")]
    MultiComponent { components: usize },
    #[error("event {event}: mark H{upper},{lower} joins strands of different Maslov potential")]
    MarkPotential { event: usize, upper: usize, lower: usize },
    #[error("no Maslov potential exists (rotation number is nonzero)")]
    NoPotential,
    #[error("event {event}: right cusp lies inside a disk of q{generator}; the front must be in plat position")]
    CuspInsideDisk { event: usize, generator: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("handleslide ({k},{l}) joins generators of gradings {gk} and {gl}")]
    Grading { k: usize, l: usize, gk: i32, gl: i32 },
    #[error("index ({k},{l}) invalid for a complex with {n} generators")]
    Index { k: usize, l: usize, n: usize },
    #[error("swap at {k} needs <d y_{}|y_{k}> = 0", k + 1)]
    SwapEntry { k: usize },
    #[error("death at {k} needs <d y_{}|y_{k}> = 1", k + 1)]
    DeathEntry { k: usize },
    #[error("generator {k} is unpaired (homology is nontrivial)")]
    Unpaired { k: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum McsError {
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("event {event} ({token}): {cause}")]
    Event { event: usize, token: String, cause: ComplexError },
    #[error("final complex is not empty")]
    NotClosed,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("move {id} at {at}: {reason}")]
    Pattern { id: u8, at: usize, reason: String },
    #[error("bad journal line `{0}`")]
    Journal(String),
    #[error(transparent)]
    Mcs(#[from] McsError),
    #[error("front is not 2-bridge")]
    NotTwoBridge,
    #[error("MCSs live on different fronts")]
    DifferentFronts,
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RulingError {
    #[error("front is not 2-bridge")]
    NotTwoBridge,
    #[error(transparent)]
    Front(#[from] FrontError),
}
