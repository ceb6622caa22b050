//! Reading meshes and images, writing curves, reports and plots.

pub mod config;
pub mod curves;
pub mod image;
pub mod mesh;
pub mod svg;

pub use config::{InputFormat, RunConfig};
pub use curves::{bundle_from_json, bundle_to_csv, bundle_to_json, read_bundle, write_curves, OutputFormat};
pub use image::{parse_image, parse_image_str, ImageFormat};
pub use mesh::{parse_mesh, parse_mesh_str, MeshFormat};
pub use svg::{render_svg, svg_string};
