pub mod census;
pub mod criteria;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod lattice;
pub mod opt;
pub mod pipeline;
pub mod planar;
