//! Correspondences between cellular spaces and the split motivic
//! decomposition of D.

mod correspondence;
mod motive;

pub use correspondence::{compose, diagonal, Correspondence, CorrespondenceDoc, Side, TermDoc};
pub use motive::{
    build_generators, graded_image_ranks, residual_projector, verify_ms_decomposition,
    Generators, MotiveContext, MotiveReport, MotiveSummand,
};
