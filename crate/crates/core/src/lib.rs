//! Cyclic locally recoverable codes over finite fields.
//!
//! The crate builds optimal cyclic LRC codes from their zero sets, certifies the locality and
//! distance of arbitrary cyclic codes from their defining sets, evaluates upper bounds on LRC
//! dimension (shortening and Delsarte LP), and checks everything against exhaustive
//! enumeration.

pub mod arith;
pub mod bounds;
pub mod cyclic;
pub mod error;
pub mod field;
pub mod irreducible;
pub mod linalg;
pub mod locality;
pub mod lrc_rs;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod report;

pub use cyclic::CyclicCode;
pub use error::{Error, Result};
pub use field::{Alphabet, FieldSpec, FieldTable, Gf};
pub use locality::LocalityCertificate;
pub use oracle::{Oracle, OracleReport};
pub use par::Exec;
