//! Fine gradings on finite-dimensional real simple associative algebras with
//! involution, their classification up to equivalence, and the induced fine
//! gradings on real forms of classical simple Lie algebras.

#![forbid(unsafe_code)]

pub mod abelian;
pub mod classify;
pub mod cyclo;
pub mod error;
pub mod gdivalg;
pub mod gf2;
pub mod gf2forms;
pub mod gradedmat;
pub mod lietransfer;
pub mod selftest;

pub use error::{Error, Result};
