//! Buchberger's algorithm and ideal operations over `Q`.

pub mod buchberger;
pub mod ideal;

pub use buchberger::{divide, gbex, groebner_basis, normal_form, GbWithCofactors};
pub use ideal::{
    ideal_equal, ideal_intersection, ideal_intersection_all, ideal_quotient, ideal_sum,
    radical_membership, saturation, vanishes_at, Ideal,
};
