//! Symplectic reflection algebras over finite fields of odd characteristic.

pub mod field;
pub mod linalg;
pub mod structure;
pub mod pbw;
pub mod meataxe;
pub mod finite;
pub mod centre;
pub mod typea;
pub mod dunkl;
