use thiserror::Error;

use crate::braid::BraidReport;
use crate::cochain::DefectReport;
use crate::exactness::SesReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("not an involution: (t·t)[{row},{col}] = {value}")]
    NotInvolution { row: usize, col: usize, value: String },

    #[error("not a cochain complex: d∘d ≠ 0 in degrees {:?}", .0.degrees())]
    NotAComplex(DefectReport),

    #[error("not a chain map: squares fail in degrees {:?}", .0.degrees())]
    NotAChainMap(DefectReport),

    #[error("not a short exact sequence: {0}")]
    NotShortExact(SesReport),

    #[error("sequence is not a complex: consecutive arrows at positions {0:?} do not compose to zero")]
    SequenceNotAComplex(Vec<usize>),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("braid is not commutative and exact: {0}")]
    BraidRefused(Box<BraidReport>),

    #[error("not a subcomplex: simplex {0:?} is missing from the ambient complex")]
    NotSubcomplex(Vec<usize>),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("instance {instance:?} lacks the {model} model required by {kind}")]
    MissingModel {
        instance: String,
        kind: String,
        model: &'static str,
    },

    #[error("instance {instance:?} does not support {kind}: {reason}")]
    UnsupportedKind {
        instance: String,
        kind: String,
        reason: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
