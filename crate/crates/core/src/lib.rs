//! Exact search, certification and construction of lattice polygons whose
//! pairwise vertex distances are all integers.
//!
//! The library answers, for small `k`, which `n`-gons with integer vertex
//! coordinates and integer side and diagonal lengths can contain a segment
//! of length exactly `k`:
//!
//! * `k = 1, 2`: none ([`certificates::nonexistence_k12`]).
//! * `k = 3, 4`: triangles and quadrilaterals only
//!   ([`families`], [`search::extend_to_ngon`]).
//! * every `k >= 3`: an explicit triangle and rectangle ([`constructors`]).
//!
//! All arithmetic is exact; there is no floating point on any library path.

pub mod certificates;
pub mod cli;
pub mod constructors;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod geometry;
pub mod io;
pub mod pell;
pub mod reproduce;
pub mod search;

pub use error::{Error, Result};
pub use exactmath::{ExactRational, Integer};
pub use geometry::{CertificationReport, LatticePoint, Mode, PointConfiguration};
pub use pell::PellSolution;
