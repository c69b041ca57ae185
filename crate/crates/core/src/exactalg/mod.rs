//! Exact coefficient rings, graded polynomials and the level-7 normal form.

pub mod coef;
pub mod linalg;
pub mod mf7;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalars;

pub use coef::Coef;
pub use linalg::{det_laplace, smith_diagonal, Matrix};
pub use mf7::{mf7_rank, normal_monomials, reduce_sigma2, z_vars, MF7Elem};
pub use parse::{parse_expr, ParseContext};
pub use poly::{MultiPoly, Vars};
pub use ring::{Ring, Scalar};
pub use scalars::{rat, rat_int, CycQ6, Gf3, Int, Loc3, Rat};
