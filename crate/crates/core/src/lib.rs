//! Compile partial functions on finite sets into graphs whose proper
//! `n`-colorings simulate them, and evaluate those graphs by list-coloring
//! propagation.

pub mod colorer;
pub mod extend;
pub mod gadgets;
pub mod graph;
pub mod compiler;
pub mod cli;
pub mod formats;
