//! Exact Koszul homology of homogeneous ideals over prime fields, the
//! multiplication-induced duality maps between homology modules, and
//! machine checks of duality and strongly Cohen-Macaulay criteria.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod invariants;
pub mod koszul;
pub mod module;
pub mod oracle;
pub mod par;
pub mod random;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
