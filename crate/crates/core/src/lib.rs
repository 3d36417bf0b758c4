//! Rank-two vector bundles on the projective plane, represented by the
//! zero scheme of a minimal section, with exact cohomology tables, minimal
//! free resolutions and executable checks of the splitting and
//! classification results they satisfy.

pub mod field;
pub mod linalg;
pub mod schemes;
pub mod ideals;
pub mod bundles;
pub mod verifier;
pub mod cli;
