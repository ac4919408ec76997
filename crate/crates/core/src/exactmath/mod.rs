//! Exact arithmetic: finite fields, cyclotomic integers, multiplicative
//! characters and normalized Gauss sums.

pub mod characters;
pub mod cyclo;
pub mod field;
pub mod gauss;

pub use characters::{canonical_generator, char_eval, MultCharacter};
pub use cyclo::{CycloValue, NormalizedValue};
pub use field::{FieldElement, FieldSpec};
pub use gauss::{gauss_sum, gauss_sum_virtual, real_sign, Sign};
