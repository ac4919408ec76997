//! Integral Weierstrass models over the rationals: invariants, minimal models
//! and Kodaira types, torsion subgroups, point reduction, and isogeny
//! quotients by finite kernels.

mod model;
mod point;
mod tate;
mod torsion;
mod velu;

pub use model::{CurveInvariants, WeierstrassModel};
pub use point::{reduce_point, RationalPoint, ReducedPoint};
pub use tate::{global_minimal_model, tate_algorithm, tate_with_scalings, KodairaData, KodairaType};
pub use torsion::{torsion_order_of, torsion_subgroup, TorsionData};
pub use velu::{subgroup_closure, velu_quotient};

/// p-adic valuation of an integer; u32::MAX encodes infinity (input zero).
pub fn valuation(x: &num_bigint::BigInt, p: u64) -> u32 {
    model::val_p(x, p)
}
