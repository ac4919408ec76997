//! Rational functions, logarithmic differentials and generalized divisor
//! classes on the projective line over a finite field.

pub mod classes;
pub mod func;
pub mod points;
pub mod poly;

pub use classes::{
    canonical_differential, check_character_consistency, cyclo_pow_signed, delta_class,
    eval_character_on_class, lambda_class, principal_class, relative_canonical_cycle,
    relative_canonical_cycle_with, CharacterData, ConsistencyOutcome, MarkedLine,
    ZeroCycleClass,
};
pub use func::{LogDifferential, RationalFunction};
pub use points::{embedding, ClosedPoint};
pub use poly::{monic_irreducibles, Poly};
