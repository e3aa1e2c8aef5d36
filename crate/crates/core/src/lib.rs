//! Completing partial `(n,k,1)`-designs and `K_k`-decomposing almost
//! complete graphs.

pub mod bounds;
pub mod clique;
pub mod cli;
pub mod constructions;
pub mod decomp;
pub mod design;
pub mod equicolor;
pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod pipeline;

pub use error::{Error, Result};
