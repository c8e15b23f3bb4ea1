//! Test modules, V-filtrations and Gr pieces of Cartier modules over
//! polynomial rings F_p[x_1, ..., x_n].

pub mod cartier_mod;
pub mod cli;
pub mod error;
pub mod field_poly;
pub mod frobenius;
pub mod groebner;
pub mod linalg;
pub mod testmod;
pub mod vfilt;

pub use error::{Error, Result};
pub use field_poly::{Monomial, Polynomial, PrimeField, Ring};
pub use groebner::{FreeSubmodule, QuotientPresentation};
