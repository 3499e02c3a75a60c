//! Exact harmonic analysis on the Clifford groups `CL(n) = {±γ_A : A ⊆ {1,…,n}}`.
//!
//! The crate covers the full chain from group arithmetic to spherical
//! characters:
//!
//! * [`clifford`]: signed-subset elements, the twisted multiplication rule,
//!   conjugation and the triple-product group `G×G×H` acting on `G×G`.
//! * [`group`]: exhaustive enumeration and conjugacy classes.
//! * [`characters`]: irreducible characters in closed form, class functions,
//!   tensor products, restrictions and decompositions.
//! * [`gelfand`]: multiplicity-freeness of `Res^G_H(ρ₁⊗ρ₂)` and the
//!   Gelfand property of `(G×G×H, H̃)`, tested both through characters and
//!   through the bi-invariant convolution algebra.
//! * [`models`]: explicit unitary matrix models, exact intertwiner spaces and
//!   the isometry between `Hom(ρ₁⊠ρ₂⊠θ, η)` and `Hom(Res(ρ₁⊗ρ₂), θ′)`.
//! * [`orbits`] and [`spherical`]: conjugation orbits on `CL(n)×CL(n)` and the
//!   spherical characters of `(CL(n)³, diag)`.
//!
//! All arithmetic is exact. Scalars live in `Q(i)` ([`GaussianRational`]) or,
//! where square roots of dimensions appear, in `Q(i, √2)` ([`GaussianSurd`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod characters;
pub mod clifford;
mod error;
pub mod gelfand;
pub mod group;
pub mod linalg;
pub mod models;
pub mod orbits;
pub mod scalar;
pub mod spherical;

pub use characters::{ClassFunction, Decomposition, IrrepKind, IrrepLabel};
pub use clifford::{CliffordElement, Sign, Subset, TripleElement, TripleGroup};
pub use error::{Error, Result};
pub use gelfand::{GelfandReport, TripleIrrepLabel};
pub use group::{CliffordGroup, ConjugacyClass};
pub use scalar::{Field, GaussianInt, GaussianRational, GaussianSurd, Rational};

/// Largest degree `n` accepted by element arithmetic.
pub const MAX_DEGREE: u32 = 16;

/// Largest degree for operations that enumerate the whole group.
pub const MAX_ENUMERATION_DEGREE: u32 = 12;
