//! Internal Homs, graded module Homs as equalizers, the gamma algebra and
//! the shift identities.

mod curry;
mod gamma;
mod hom;
mod layout;
mod shift;

pub use curry::{coevaluation, evaluation, flat, sharp, HomSpace};
pub use gamma::{endo_iso, gamma_algebra, EndoIso, GammaAlgebra};
pub use hom::{
    build_rs, build_rs_sharp, check_equalizer_lemma, compose_homs, hom_degrees, identity_hom,
    intertwining_failure, intertwining_kernel, module_hom_space, module_hom_space_at, ModuleHomSpace,
};
pub use layout::{HomBlock, HomElement, HomLayout};
pub use shift::check_shift_props;
