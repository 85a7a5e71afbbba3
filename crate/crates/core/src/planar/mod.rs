//! Embedded planar graphs: validation, I/O formats and face structure.

mod embedding;
mod faces;
pub mod planar_code;
pub mod rotation_text;

pub use embedding::PlanarEmbedding;
pub use faces::{CornerId, FaceSet, OuterFaceChoice, VertexFaceProfile};
pub use planar_code::{parse_planar_code, serialize_planar_code, PlanarCodeReader};
pub use rotation_text::{format_rotation_text, parse_rotation_text, RotationTextReader};
