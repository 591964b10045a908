//! The twist functor, the φ-family induced by an equivalence of module
//! categories, and the recovery of a twist from such an equivalence.

mod data;
mod functor;
mod gamma_twist;
mod transport;

pub use data::{check_equivalence, EquivalenceData, RosterEntry};
pub use functor::{zm_forward, ZmFunctor};
pub use gamma_twist::{backward, gamma_twist_phi, Backward, GammaTwist};
pub use transport::{pullback, pushforward, relabel_map};
