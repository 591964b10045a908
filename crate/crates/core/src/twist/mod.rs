//! Twisting systems, twisted algebras and modules, and φ-families.

mod examples;
mod ops;
mod phi;
mod system;

pub use examples::{
    cocycle_twist, monomial_scaling, quantum_plane_twist, random_cyclic_cocycle, sign_cocycle,
};
pub use ops::{compose_twists, inverse_twist, tau_table, twist_algebra, twist_module};
pub use phi::{check_phi_family, phi_from_twist, twist_from_phi, PhiFamily};
pub use system::{check_cocycle, check_twist_condition, check_unit_lemma, TwistKind, TwistingSystem};
