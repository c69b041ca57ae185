//! Exact computer algebra for level-7 modular forms, Tate curves, Weierstrass
//! transformations and the cubical Hopf algebroid at the prime 3.

pub mod certificate;
pub mod error;
pub mod exactalg;
pub mod hopf;
pub mod invariants7;
pub mod modforms7;
pub mod qseries;
pub mod tate;
pub mod weierstrass;

pub use certificate::{Certificate, Status};
pub use error::{AlgError, Result};
