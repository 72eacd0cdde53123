//! Exact arithmetic for the group of determinant-1 matrices over length-2
//! Witt vectors, and for its faithful (p+3)-dimensional representation.
//!
//! The crate is organized in layers:
//!
//! * [`ring`] — scalar coefficient rings: prime and extension fields
//!   `GF(p^r)`, residue rings `Z/p^n`, dual numbers `R[eps]/(eps^2)`, and
//!   quotients of the Gaussian integers.
//! * [`witt`] — length-2 Witt vectors `W2(R)` over any commutative ring of
//!   prime characteristic, with the explicit carry-polynomial laws.
//! * [`poly`] — sparse multivariate polynomials, the symbolic engine behind
//!   coordinate pullbacks.
//! * [`matrix`] — dense matrices over a ring, with exact rank/kernel
//!   computations over fields.
//! * [`group`] — the group `SL2(W2(F_q))`: generators, reduction maps, the
//!   unipotent radical, enumeration, and an element-expression parser.
//! * [`rep`] — the (p+3)-dimensional representation built by symbolic
//!   pullback, its differential via dual numbers, and the 4-dimensional
//!   semidirect-product representation.
//! * [`analysis`] — verification machinery: weight decompositions,
//!   distribution operators, fixed-space filtrations, faithfulness sweeps,
//!   Jordan types, centralizer dimensions, and the Gaussian-integer example.
//!
//! Everything is exact; no floating point anywhere. All values are immutable
//! after construction and safe to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod group;
pub mod matrix;
pub mod poly;
pub mod rep;
pub mod ring;
pub mod witt;

pub use ring::{FieldContext, FqCtx, FqElement, Ring};
