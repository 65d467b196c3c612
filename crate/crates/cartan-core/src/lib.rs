//! Chain-level Cartan formula machinery for mod-`p` Steenrod operations on
//! simplicial cochains, built on the Barratt–Eccles operad.
//!
//! The core is generic over an exact integer scalar; [`Int`] and [`BigInt`]
//! are the two instantiations used in practice.

pub mod algebra;
pub mod barratt_eccles;
pub mod cartan;
pub mod cohomology;
pub mod oracle;
pub mod resolution;
pub mod simplicial;
pub mod steenrod;
pub mod suites;
pub mod symmetric;

pub use num_bigint::BigInt;

pub use algebra::{Coefficient, FormalSum, Graded, Tensor};

/// The default scalar.
pub type Int = i64;
pub type Sum<K> = FormalSum<K, Int>;
pub type BigSum<K> = FormalSum<K, BigInt>;
pub type IntCochain = simplicial::Cochain<Int>;
