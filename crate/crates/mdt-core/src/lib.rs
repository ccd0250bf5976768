//! Exact minimum dilation triangulation.
pub mod dilation;
pub mod enumeration;
pub mod exact;
pub mod geom;
pub mod instances;
pub mod ngon;
pub mod par;
pub mod sat;
pub mod solver;
pub mod spatial;
pub mod supergraph;
