//! Hyperbolic geometry of the upper half-plane and an explicit, infinitely
//! generated Fuchsian group whose quotient is a flute surface carrying an
//! almost minimizing geodesic ray with bounded injectivity radius.
//!
//! The crate is organised bottom-up:
//!
//! * [`hgeom`]: points, geodesics, horocycles, hypercycles, bisectors, distances
//!   and Busemann cocycles.
//! * [`isom`]: Möbius isometries, their classification and displacement laws.
//! * [`exact`]: exact arithmetic in quadratic fields `Q(√D)`.
//! * [`flute`]: the generator families, the inductive generator selection,
//!   ping-pong and Dirichlet-domain verification.
//! * [`dynamics`]: injectivity-radius profiles along the ray `[i, ∞)`, return
//!   sequences and orbit-closure witnesses.

pub mod dynamics;
pub mod error;
pub mod exact;
pub mod flute;
pub mod hgeom;
pub mod isom;
pub mod tolerance;
pub mod words;

pub use error::{Error, Result};
pub use hgeom::{Boundary, ExtendedPoint, Geodesic, HalfPlane, Horocycle, Hypercycle, Point};
pub use isom::{Isometry, IsometryClass, IsometryKind};
