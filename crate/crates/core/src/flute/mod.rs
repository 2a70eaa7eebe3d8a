//! The explicit flute group: the families `g_{q,n}`, `h_{q,n}`, `f_{q,n}`,
//! the inductive choice of generators, and verification of the resulting
//! ping-pong configuration and Dirichlet domain centered at `i`.

mod enumeration;
mod family;
mod json;
mod rational;
mod select;
mod verify;

pub use enumeration::{stern_brocot, Enumeration};
pub use family::{
    below_hypercycle_check, conjugator, r_n, r_n_exact, BisectorData, Branch, FamilyElement, DEFAULT_N_MAX,
};
pub use json::SPEC_VERSION;
pub use rational::Rational;
pub use select::{
    select_generators, select_generators_with, ConditionRecord, GroupSpec, SelectedGenerator, CONDITION_ONE_MARGIN,
};
pub use verify::{
    dirichlet_membership, injectivity_lower_bound_check, ray_in_domain_check, sample_domain_points,
    verify_pingpong, InjectivityReport, PingPongCertificate, RayCheck,
};

/// `C`, half the distance between the geodesic `(0, ∞)` and the hypercycle
/// through `1 + i` with the same extremities: `2C = asinh(1)`.
pub fn constant_c() -> f64 {
    0.5 * 1f64.asinh()
}
