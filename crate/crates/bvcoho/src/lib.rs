//! Hochschild cohomology of modular group algebras with its
//! Batalin–Vilkovisky structure, computed both on the Hochschild complex of
//! `kG` and through the additive decomposition
//! `HH*(kG) ≅ ⊕ₓ H*(C_G(x), k)` over conjugacy class representatives.

pub mod algebra;
pub mod bv;
pub mod comparison;
pub mod complexes;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
