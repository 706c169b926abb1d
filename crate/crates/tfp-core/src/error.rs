use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("favorite index {favorite} out of range for {n} players")]
    BadFavorite { favorite: usize, n: usize },
    #[error("{n} players exceed the capacity of {cap} for this operation")]
    CapacityExceeded { n: usize, cap: usize },
    #[error("{0} players is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("induced subtournament is not acyclic")]
    NotAcyclic,
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("invalid match set sequence: {0}")]
    InvalidSequence(String),
    #[error("match set sequences share players")]
    OverlappingPlayers,
    #[error("match set sequences have different round counts")]
    LengthMismatch,
    #[error("extension rounds do not extend the merged sequence: {0}")]
    InvalidExtension(String),
    #[error("player {player} cannot be made champion of the given field")]
    NotWinnable { player: usize },
    #[error("precondition violated at recursion level {level}: {condition}")]
    PreconditionViolated { condition: String, level: usize },
    #[error("favorite is not a king")]
    NotKing,
    #[error("favorite is not a 3-king")]
    Not3King,
    #[error("instance is not special: {0}")]
    NotSpecial(String),
    #[error("sequence restriction violates the block property: {0}")]
    PropertyViolated(String),
    #[error("generator gave up after {retries} retries; most frequent failure: {most_frequent}")]
    Unsatisfiable { most_frequent: String, retries: usize },
    #[error("no feasible solution: {0}")]
    Infeasible(String),
    #[error("bad instance size {0}")]
    BadSize(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
