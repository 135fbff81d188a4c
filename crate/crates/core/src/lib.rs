//! Distance-d cops and robbers on graphs drawn with crossings.

pub mod cli;
pub mod drawing;
pub mod fixtures;
pub mod graph;
pub mod par;
pub mod solver;
pub mod strategy;
pub mod transform;
pub mod verify;
