//! Exact computational model of the projective line over the ring of
//! upper triangular 2×2 matrices ("ternions") over GF(q), realised as a
//! set of subspaces of `PG(5, q)`.

pub mod error;
pub mod exec;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod model;
pub mod ternion;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gf::{Automorphism, Elem, Field};
pub use linalg::{Budget, Matrix, SemilinearMap, Subspace};
pub use model::{Catalog, Flats, SubmoduleType};
pub use ternion::{Ternion, TernionMatrix2, TernionPair};
