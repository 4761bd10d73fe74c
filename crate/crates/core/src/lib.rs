//! Lemniscates of complex polynomials: components and merge trees, level-curve
//! tracing, the bound `|(z - a) P'(z) / P(z)| <= n` on components without
//! proper critical points, and condenser capacities.

pub mod bound;
pub mod capacity;
pub mod error;
pub mod geom;
pub mod level;
pub mod poly;
pub mod report;
pub mod topology;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::{CriticalKind, CriticalPoint, Polynomial, Root, RootSet};
