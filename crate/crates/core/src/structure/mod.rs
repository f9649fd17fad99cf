//! Bloom-shriek factorization, mediators and coalescability, disintegrations
//! and correctable codes.

mod bloom;
mod code;
mod disintegration;
mod mediator;

pub use bloom::{bloom, bloom_morphism, bloom_shriek_factorize, inverse_shriek_morphism, shriek, shriek_morphism};
pub use code::{
    ceiling, code_from_morphism, correct, exhaustive_recovery, is_correctable, Code, Correction, PossMap,
};
pub use disintegration::{find_disintegration, has_vanishing_loss, is_disintegration};
pub use mediator::{
    find_mediator, find_strong_mediator, is_coalescable, is_strongly_coalescable, search_mediator,
    verify_mediator, Coalescence, Mediator, Obstruction,
};
