//! Pointwise geometry and kinematics of a moving surface under an observer chart.

pub mod chart;
pub mod frame;
pub mod kinematics;
pub mod spacetime;

pub use chart::{Chart, ChartJets, FnChart, FourierMode, JetMode, PlaneChart, SpheroidalChart};
pub use frame::{evaluate_frame, frame_from_jets, SurfaceFrame};
pub use kinematics::{
    covariant_gradient, kinematics_from_jets, material_kinematics, observer_kinematics, KinematicState,
    LocalState, MaterialData, MaterialMotion, VelocityJet,
};
pub use spacetime::{
    christoffel_closed_form, christoffel_gram, eta_blocks, grad_material_direction, gram_eta, spacetime_christoffels,
    spacetime_metric, Christoffel, SpacetimeMetric,
};
