//! Exact scalars: the circle group T and cyclotomic fields.

mod circle;
mod cyclotomic;
mod suite;

pub use circle::CircleElement;
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, height, Cyclotomic, CyclotomicField};
pub use suite::{kernel_suite, NUMERIC_TOLERANCE};
