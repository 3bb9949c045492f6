//! Sums of Milnor numbers of critical points of a polynomial restricted to
//! a complete intersection, computed exactly three ways, together with the
//! hypothesis checks and the Eagon-Northcott / Koszul complexes behind the
//! generating-function count.
//!
//! ```
//! use lagmul::{QRing, QSystem, critical, poly::parse::parse_polynomial};
//! use lagmul::{MonomialOrder, Rationals};
//!
//! let ring = QRing::new(Rationals, ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
//! let f = parse_polynomial(&ring, "x1").unwrap();
//! let circle = parse_polynomial(&ring, "x1^2 + x2^2 - 1").unwrap();
//! let sys = QSystem::new(f, vec![circle]).unwrap();
//! assert_eq!(critical::milnor_sum(&sys).unwrap(), 2);
//! assert_eq!(critical::lagrange_jacobian_dimension(&sys).unwrap(), 2);
//! assert_eq!(critical::predicted_milnor_sum(2, sys.degrees()), 2.into());
//! ```

pub mod arith;
pub mod error;
pub mod poly;
pub mod series;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod critical;
pub mod complexes;
pub mod cli;

pub use arith::{Field, FieldSpec, PrimeField, Rationals};
pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};

pub type QRing = Ring<Rationals>;
pub type FpRing = Ring<PrimeField>;
pub type QPolynomial = Polynomial<Rationals>;
pub type FpPolynomial = Polynomial<PrimeField>;
pub type QIdeal = groebner::Ideal<Rationals>;
pub type FpIdeal = groebner::Ideal<PrimeField>;
pub type QMatrix = matrix::PolyMatrix<Rationals>;
pub type FpMatrix = matrix::PolyMatrix<PrimeField>;
pub type QSystem = critical::ConstrainedSystem<Rationals>;
pub type FpSystem = critical::ConstrainedSystem<PrimeField>;
pub type QComplex = complexes::GradedFreeComplex<Rationals>;
pub type FpComplex = complexes::GradedFreeComplex<PrimeField>;
