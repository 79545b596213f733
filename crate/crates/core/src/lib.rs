pub mod em;
pub mod geometry;
pub mod impedance;
pub mod matching;
pub mod analysis;
pub mod io;
pub mod plot;
pub mod cli;
