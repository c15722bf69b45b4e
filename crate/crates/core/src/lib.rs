//! Quandle invariants of spatial graphs and graph tangles.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod coloring;
pub mod diagram;
pub mod fixtures;
pub mod presentation;
pub mod walks;
