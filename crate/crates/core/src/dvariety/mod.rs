//! The split hyperplane section `D` of `Gr(3,6)`: its Chow ring, the
//! vanishing class `d`, Chern classes and the torus-fixed-point census.

mod bb;
mod label;
mod model;

pub use bb::{
    bb_cells, bb_generating_polynomial, excluded_subsets, BBFixedPoint, BB_CONVENTION,
    DEFAULT_WEIGHTS,
};
pub use label::DLabel;
pub use model::{DClass, DModel, DModelConfig, DIM};
