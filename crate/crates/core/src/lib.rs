//! Exact-arithmetic toolkit for scattered linearized polynomials over
//! `F_{q^6}`: construction of the `f_h` family and the known maximum
//! scattered families, two independent scatteredness deciders, linear-set
//! weight spectra, the intersection-number invariant in `PG(5, q^6)`,
//! exhaustive `ΓL(2, q^6)`-equivalence search, and the associated
//! `(6, 6, q; 5)` rank-metric codes.

pub mod equiv;
pub mod error;
pub mod family;
pub mod field;
pub mod fq;
pub mod geom;
pub mod linalg;
pub mod mrd;
pub mod qpoly;
pub mod scan;
pub mod scatter;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSummary, Representation};
pub use linalg::Matrix;
pub use qpoly::QPoly;
