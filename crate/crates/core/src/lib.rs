//! Exact computations on root systems of compact simple Lie groups:
//! alcove geometry, centralizers of commuting tuples and their component
//! groups, Borel–de Siebenthal enumeration, chain bounds and torsion-level
//! moduli counts.
//!
//! Everything is exact: points are rational vectors, lattices are integer
//! matrices, and no floating point is used anywhere.

#![allow(clippy::needless_range_loop)]

pub mod centralizer;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod intlat;
pub mod linalg;
pub mod moduli;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use exec::Exec;
pub use rootsys::{Family, RationalVector, RootSystem, SimpleType};
pub use weyl::Caps;
