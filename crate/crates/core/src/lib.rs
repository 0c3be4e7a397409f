//! Fidelity susceptibility of a charged boson gas in a uniform magnetic
//! field, computed two ways: from ground-state overlaps on the boundary and
//! from a background-subtracted maximal volume in a Lifshitz-AdS bulk.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod boundary;
pub mod cli;
pub mod bulk;
pub mod duality;
pub mod error;
pub mod fit;
pub mod quadrature;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};
