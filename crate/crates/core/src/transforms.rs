//! Directional transforms as exact curves.

pub mod bundle;
pub mod curve;
pub mod ect;
pub mod ert;
pub mod smooth;

pub use bundle::{
    compute_bundle, invert_bundle, par_map, smooth_bundle, BundleMetadata, Curve, ShapeInput, TransformBundle, TransformKind,
    TransformOptions,
};
pub use curve::{Continuity, PiecewiseLinearCurve, StepCurve};
pub use ect::{ect_constructible, ect_shape, lect, lect_value, select, select_in_s, select_value};
pub use ert::{ert, ert_integrand, ert_value, euler_integral_fc};
pub use smooth::{default_window, invert_sect, invert_sert, sect, sert};
