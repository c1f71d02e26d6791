//! Exact algebraic-dependence tools over finite fields: fields and
//! polynomials, circuits, annihilators, the gap protocols, approximate
//! satisfiability and hitting-set certification.

pub mod annihilator;
pub mod aps;
pub mod circuit;
pub mod error;
pub mod field;
pub mod hitting;
pub mod jacobian;
pub mod laurent;
pub mod limits;
pub mod linalg;
pub mod poly;
pub mod protocol;
pub mod ring;
pub mod rng;
pub mod upoly;

pub use circuit::{Circuit, CircuitBuilder, Gate, Instance, NamedCircuit};
pub use error::{Error, Result};
pub use field::{mk_field, Embedding, Field, FieldElement};
pub use annihilator::{AnnOptions, AnnSpace, Analyzer, TrdegResult};
pub use aps::{aps_decide, ApsOptions, ApsVerdict, Route};
pub use hitting::{Family, HittingInstance};
pub use laurent::{LaurentPoly, LaurentRing, Witness};
pub use limits::Limits;
pub use poly::{Monomial, Polynomial};
pub use ring::Ring;
