//! Kernelization toolkit for F-Deletion parameterized by a treedepth modulator:
//! graphs, minors, the boundaried graph algebra, exact solvers, the marking
//! kernel, brute-force oracles and instance generators.

pub mod calculus;
pub mod canon;
pub mod caps;
pub mod error;
pub mod family;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod minor;
pub mod oracle;
pub mod solver;
pub mod treedepth;

pub use caps::Caps;
pub use error::{Error, Result};
pub use family::ForbiddenFamily;
pub use graph::{BoundariedGraph, Graph, LabeledGraph};
pub use kernel::Instance;
