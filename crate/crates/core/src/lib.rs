//! Cubic graphical regular representations of PSL(2,q).
//!
//! Finite field arithmetic, exhaustive tables of PSL(2,q), the automorphism
//! group PΓL(2,q) acting on them, explicit witnesses for non-GRR connection
//! sets, Cayley graph automorphism counting, closed-form bounds, and the
//! census experiments that tie them together.

pub mod autgrp;
pub mod bounds;
pub mod cache;
pub mod cayley;
pub mod census;
pub mod error;
pub mod gfq;
pub mod pgl2;
pub mod witness;

pub use error::{Error, Result};
pub use gfq::{FieldCtx, FieldElem, QuadElem, QuadExtCtx};
pub use pgl2::{GroupKind, GroupTable, ProjMat};
