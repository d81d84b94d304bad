//! Exact computation of twisted Hochschild homology, Koszul-complex homology,
//! and basic relative forms for linear finite-group and circle actions on
//! polynomial models. All arithmetic is exact over the rationals or over
//! cyclotomic fields; every homology dimension is cross-checked against a
//! brute-force bar-complex oracle in the test suite.

pub mod error;
pub mod forms;
pub mod groups;
pub mod hochschild;
pub mod koszul;
pub mod matrix;
pub mod relforms;
pub mod report;
pub mod scalar;
pub mod scenario;
pub mod text;
