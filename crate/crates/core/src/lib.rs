//! Exact, desk-scale computations around Tverberg-type theorems.
//!
//! * [`exact_linalg`]: rational linear algebra and phase-1 simplex.
//! * [`polytope`]: V-polytopes, face lattices, skeleta and skeleton distance.
//! * [`barycenter`]: points of a polytope as barycenters of skeleton points.
//! * [`tverberg`]: Tverberg, Van Kampen–Flores and rainbow partition search.
//! * [`plmaps`]: affine vertex maps, the distance-constraint lift and the join lift.
//! * [`delprod`]: pairwise deleted products and their integral homology.
//! * [`bounds`]: arithmetic of the Tverberg number `N_r(d)`.
//! * [`cli`]: batch front end with certificate files.

pub mod barycenter;
pub mod bounds;
pub mod cli;
pub mod delprod;
pub mod error;
pub mod exact_linalg;
pub mod plmaps;
pub mod polytope;
pub mod rng;
pub mod tverberg;

pub use error::{Error, Result};
