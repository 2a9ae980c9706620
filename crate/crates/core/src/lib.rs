//! Exact frieze patterns over rings of imaginary quadratic integers.
//!
//! The crate is organised bottom-up:
//!
//! - [`qint`]: arithmetic in `Q(sqrt(d))` and `O_d`;
//! - [`eta`]: the `eta`-matrix calculus, quiddity cycles and their reduction;
//! - [`frieze`]: frieze patterns, validation, twisting and classification;
//! - [`triangulate`]: polygon triangulations and the Conway-Coxeter bijection;
//! - [`enumerate`]: exhaustive censuses of non-zero friezes;
//! - [`orders`]: ideals, class numbers and units of infinite order in `Z[alpha]`;
//! - [`goldens`]: fixed reference checks replayed by the CLI.

pub mod enumerate;
pub mod eta;
pub mod frieze;
pub mod goldens;
pub mod orders;
pub mod qint;
pub mod triangulate;

pub use eta::{Mat2, QuiddityCycle, ReductionTrace, RewriteRule};
pub use frieze::{FriezeClass, FriezePattern};
pub use qint::{FieldTag, QuadInt, QuadRat};
