//! Left dihedral codes over Galois rings GR(p², m).
//!
//! A left dihedral code of length 2n over R = GR(p², m) is a left ideal of
//! the group ring R[D₂ₙ], viewed as an R-linear code of length 2n. For
//! gcd(n, p) = 1 every such code splits into a direct sum of concatenated
//! codes: the inner codes are the cyclic codes attached to the basic
//! irreducible factors of xⁿ − 1, and the outer codes are left ideals of
//! small skew polynomial quotient rings of length-2 skew cyclic type.
//!
//! The crate builds that machinery end to end: exact Galois ring
//! arithmetic, factorization of xⁿ − 1 with idempotents, per-component
//! algebras with their solution sets, symbolic enumeration of every outer
//! ideal with cardinalities and dual descriptors, generator matrices of the
//! resulting R-linear codes, and exhaustive Hamming/Lee distance scans and
//! brute-force ideal lattices used as independent oracles.

pub mod code_builder;
pub mod component_algebra;
pub mod error;
pub mod galois_ring;
pub mod ideal_enumeration;
pub mod jsonio;
pub mod metrics_oracle;
pub mod ring_poly;
pub mod system;

pub use error::{Error, Result};
pub use galois_ring::{GaloisRingContext, GrElement, ResidueElement};
