//! Root-finding in orders: exact linear algebra over the integers, orders
//! given by structure constants, zero sets of polynomials, the finite-module
//! coset problems, reduction gadgets between them and the polynomial
//! classifier built on top.

pub mod arith;
pub mod classify;
pub mod disc_search;
pub mod error;
pub mod gadget;
pub mod htp;
pub mod io;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod reductions;
pub mod report;
pub mod rootfind;

pub use error::{Error, Result};
