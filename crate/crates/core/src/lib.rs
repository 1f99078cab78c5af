//! Exact-arithmetic toolkit for lattices generated by finite Abelian
//! groups: construction, strong-eutaxy / spherical 2-design / tight-frame
//! certificates, perfection and extremality via Voronoi's criterion, and
//! automorphism group orders with dual-lattice coset analysis. Every
//! verdict is computed over arbitrary-precision rationals.

pub mod aut;
pub mod budget;
pub mod enumerate;
pub mod error;
pub mod eutaxy;
pub mod group;
pub mod json;
pub mod lattice;
pub mod lg;
pub mod optimality;
pub mod qmat;
pub mod rat;
pub mod simplex;
pub mod survey;
pub mod zmat;

pub use budget::Budget;
pub use error::{Error, Result};
pub use group::{AbelianGroup, Character, GroupAutomorphism, GroupElement};
pub use lattice::{Lattice, MinimalVectorSet, SymmetricForm};
pub use lg::LgLattice;
