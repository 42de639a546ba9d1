//! Observer-invariant time derivatives of spacetime tensor fields on moving surfaces.
//!
//! The core is generic over the scalar type ([`Real`], implemented for `f32`, `f64` and
//! [`dd::DoubleDouble`]);
//! the aliases at the crate root fix it to `f64`.

pub mod bundle;
pub mod dd;
pub mod derivatives;
pub mod error;
pub mod fd;
pub mod fixtures;
pub mod geometry;
pub mod oracle;
pub mod scalar;
pub mod scenarios;
pub mod shuffle;
pub mod tensor;
pub mod verify;

pub use error::{MosaicError, Result};
pub use scalar::Real;
pub use shuffle::{FlatWord, Shuffle};

/// Spacetime tensor representation over f64.
pub type Rep = bundle::SpacetimeTensorRep<f64>;
pub type TangentialTensor = tensor::Tensor<f64>;
pub type Frame = geometry::SurfaceFrame<f64>;
pub type Kinematics = geometry::KinematicState<f64>;
pub type State = geometry::LocalState<f64>;
pub type SpheroidChart = geometry::SpheroidalChart<f64>;
pub type Motion = geometry::MaterialMotion<f64>;
pub type Problem = scenarios::TransportProblem<f64>;
pub type Solution = scenarios::Trajectory<f64>;
pub type ScenarioF64 = scenarios::Scenario<f64>;
