//! Euler characteristics of preimages and Euler integrals.

pub mod clip;
pub mod query;

pub use clip::{chi_clipped_oracle, clipped_cells};
pub use query::{
    cell_chi_contribution, chi_disjoint_union, chi_preimage, chi_preimage_where, chi_product, euler_integral,
    ChiReport, IntervalQuery,
};
