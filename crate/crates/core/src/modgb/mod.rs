//! Groebner bases for submodules of free modules over polynomial rings, and
//! the quotient-ring layer built on lifted submodules.

mod gb;
mod ops;
mod order;
mod quotient;
mod vect;

pub use gb::{buchberger, gb_stats, interreduce, normal_form, GbStats};
pub use ops::{intersect_gens, preimage_gens, syzygy_gens, Lifter};
pub use order::ModOrder;
pub use quotient::{
    lift_to_cover, preimage, presentation, submodule_equal, EqualityCheck, Presentation,
    QuotRing, Side, Submodule,
};
pub use vect::ModVec;
