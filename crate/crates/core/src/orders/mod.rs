//! Ideals, class numbers and units in imaginary quadratic orders.

pub mod forms;
pub mod ideal;
pub mod lattice;
pub mod unit;
pub mod zalpha;

use num_bigint::BigInt;
use thiserror::Error;

use crate::qint::QuadError;

pub use forms::{class_number, reduced_forms, BinaryQuadraticForm};
pub use ideal::{
    bezout, factor_principal, primes_above, FactoredIdeal, FractionalIdeal, IdealHNF, PrimeIdeal,
    Splitting,
};
pub use unit::{find_infinite_unit, PartialUnitSearch, UnitCertificate, UnitCertificateRecord};
pub use zalpha::{eval_poly, format_poly, zalpha_membership};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdersError {
    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,
    #[error("not in Hermite normal form: {0}")]
    NotHnf(String),
    #[error("lattice {0} is not closed under multiplication by w")]
    NotAnIdeal(String),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("trial division budget exhausted factoring {0}")]
    NormTooLargeToFactor(BigInt),
    #[error("{0} and {1} generate a proper ideal")]
    NotCoprime(String, String),
    #[error("{0} is integral; the unit search needs a denominator")]
    NoDenominator(String),
    #[error("unit search budget exhausted: {}", .0.reason)]
    BudgetExceeded(Box<PartialUnitSearch>),
    #[error("certificate check failed: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}
