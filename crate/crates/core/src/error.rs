use thiserror::Error;

use crate::circle::Angle;

/// Which validity condition of a critical portrait failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortraitCondition {
    /// `sum(|class| - 1) == d - 1`
    CriticalCount,
    /// Classes must be pairwise disjoint and unlinked.
    Unlinked,
    /// Each class must collapse to a single angle under the degree-d map.
    Collapse,
}

impl PortraitCondition {
    pub fn number(self) -> u8 {
        match self {
            PortraitCondition::CriticalCount => 1,
            PortraitCondition::Unlinked => 2,
            PortraitCondition::Collapse => 3,
        }
    }
}

impl std::fmt::Display for PortraitCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let text = match self {
            PortraitCondition::CriticalCount => {
                "class sizes do not account for d-1 critical points"
            }
            PortraitCondition::Unlinked => "classes are linked or overlapping",
            PortraitCondition::Collapse => "a class does not collapse to a single angle",
        };
        write!(f, "condition ({}): {}", self.number(), text)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(u32),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("angle sets overlap at {0}")]
    Overlapping(Angle),

    #[error("a portrait needs at least two distinct angles")]
    PortraitTooSmall,

    #[error("angles {0} and {1} collide under the angle map")]
    NotInjective(Angle, Angle),

    #[error("the angle map does not preserve the cyclic order of the portrait")]
    OrderNotPreserved,

    #[error("sector ({0} -> {1}) is not a sector of the portrait")]
    UnknownSector(Angle, Angle),

    #[error("angle set meets the portrait at {0}")]
    MeetsPortrait(Angle),

    #[error("angle set straddles sectors ({0} and {1} lie in different sectors)")]
    Straddles(Angle, Angle),

    #[error("sector rank {rank} out of range 1..={max}")]
    InvalidRank { rank: usize, max: usize },

    #[error("epsilon must be positive")]
    NonPositiveEpsilon,

    #[error("nothing found within the first {len} steps")]
    NotFound { len: usize },

    #[error("portrait {index} of the orbit is not the image of its predecessor")]
    InvalidOrbit { index: usize },

    #[error("orbit {orbit} never reaches its narrow time for rank {rank}; extend the prefix")]
    PrefixTooShort { orbit: usize, rank: usize },

    #[error("critical portrait violates {0}")]
    ConditionViolation(PortraitCondition),

    #[error("internal invariant broken: {0}")]
    InternalInvariant(String),

    #[error("lamination invariant broken between {0} and {1}: {2}")]
    InvariantViolation(Angle, Angle, String),

    #[error("characteristic arc is degenerate: {0}")]
    Degenerate(String),

    #[error("characteristic arc is the whole circle")]
    FullCircle,

    #[error("{from} does not precede {to}")]
    PrecedenceFails { from: Angle, to: Angle },

    #[error("power iteration did not converge within {0} steps")]
    NotConverged(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
