//! Cobordisms presented as movies of elementary moves, their induced maps on the
//! complex and on homology, and checks of the identities those maps satisfy.

mod homology_map;
mod maps;
mod movie;
mod rmove;
mod verify;

use thiserror::Error;

use crate::diagram::DiagramError;
use crate::khovanov::KhovanovError;

pub use homology_map::{induced_homology_map, HomologyMap};
pub use maps::{elementary_map, movie_map, ChainMap, MovieComplexes};
pub use movie::{parse_movie, Band, Move, Movie, MovieJson, MovieStats};
pub use verify::{
    corollary_bounds, is_ribbon_concordance, verify_neck_cutting, verify_reverse_saddles,
    verify_ribbon, verify_theorem1, CorollaryReport, MovieBounds, Report,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("malformed movie: {0}")]
    Malformed(String),
    #[error("move {index} does not produce the next frame: {reason}")]
    FrameMismatch { index: usize, reason: String },
    #[error("{0} frame is not a knot")]
    EndpointNotKnot(&'static str),
    #[error("move {index}: {source}")]
    BadLocus { index: usize, source: DiagramError },
    #[error(
        "move {index} removes the basepoint arc {arc}; put the basepoint on an arc that survives"
    )]
    BasepointLost { index: usize, arc: u32 },
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("cobordism is not connected")]
    NotConnected,
    #[error("moves {0} and {} do not form a tube", .0 + 1)]
    NoSuchHandle(usize),
    #[error("moves {0} and {} are not a pair of mutually reverse saddles", .0 + 1)]
    NotReversePair(usize),
    #[error("internal error: induced map is not well defined on homology")]
    NotWellDefined,
    #[error(transparent)]
    Khovanov(#[from] KhovanovError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
