//! Exact twisted convolution algebras over discrete groups.
//!
//! The crate works with groups whose elements are integer vectors and whose
//! product is coordinatewise addition plus a strictly triangular quadratic
//! twist. On top of that it provides T-valued bilinear 2-cocycles, box-form
//! subgroups, the twisted convolution algebra `C_c(G, c)` with cyclotomic
//! coefficients, and the Weyl action and Weyl 2-cocycle of a Cartan pair.
//!
//! Every check is exact. Statements that quantify over an infinite group are
//! checked on a finite [`group::Ball`] and reported as such.

pub mod algebra;
pub mod catalog;
pub mod check;
pub mod cocycle;
pub mod error;
pub mod group;
pub mod sampling;
pub mod scalars;
pub mod subgroup;
pub mod weyl;

pub use algebra::{AlgebraElement, TwistedAlgebra};
pub use check::{CheckReport, Clause, Verdict, Witness};
pub use cocycle::{CocycleDescriptor, CocycleTerm};
pub use group::{Ball, Component, GroupDescriptor, GroupElement, TwistTerm};
pub use scalars::{CircleElement, Cyclotomic, CyclotomicField};
pub use subgroup::SubgroupDescriptor;
pub use weyl::{Character, WeylArrow, WeylContext};
