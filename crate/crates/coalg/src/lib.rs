//! Exact-arithmetic computations with finite-dimensional coalgebras and
//! their comodules: convolution duals, radicals and coradicals, socles,
//! injective block decompositions, spaces of integrals, co-Frobenius
//! diagnostics, and incidence coalgebras of finite posets.

pub mod coalgebra;
pub mod comodule;
pub mod error;
pub mod exactlin;
pub mod frobenius;
pub mod incidence;
pub mod io;

pub use error::{Error, Result};
