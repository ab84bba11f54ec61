//! Compressed multiplicities and signed interval-decomposable approximations
//! of persistence modules over equioriented commutative grids.

pub mod approximation;
pub mod bench;
pub mod compression;
pub mod generators;
pub mod grid;
pub mod linalg;
pub mod mobius;
pub mod pmod;
pub mod poset;
