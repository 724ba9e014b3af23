//! Gröbner bases, syzygies and free resolutions for submodules of free
//! OI-modules over the polynomial OI-algebra `P = (X^{OI,1})^{⊗c}`.
//!
//! All algebra is generic over an exact [`Field`]; the aliases at the crate
//! root fix the scalar to the rationals or to a prime field.

pub mod classical;
pub mod division;
pub mod error;
pub mod field;
pub mod free_module;
pub mod groebner;
pub mod oi_category;
pub mod order;
pub mod polynomial;
pub mod resolution;
pub mod syzygy;
pub mod terms;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use free_module::{BasisSpec, FreeOIModule, ModuleElement, ModuleMonomial, ModuleTerm};
pub use oi_category::OIMorphism;
pub use order::{MonomialOrder, OILex};
pub use polynomial::{Monomial, Polynomial};

pub type QQPolynomial = Polynomial<Rational>;
pub type QQElement = ModuleElement<Rational>;
pub type QQResolution = resolution::FreeResolution<Rational>;
pub type FpPolynomial = Polynomial<Fp>;
pub type FpElement = ModuleElement<Fp>;
pub type FpResolution = resolution::FreeResolution<Fp>;
