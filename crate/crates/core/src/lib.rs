//! Betti numbers and graded symmetric-group decompositions of type A
//! Springer fibers, the degree thresholds `A_{k,r}` and the stability
//! polynomials `f_{k,r}`, computed exactly by two independent routes:
//! a box-removal recursion ([`betti`]) and Kostka–Foulkes polynomials via
//! the charge statistic ([`kostka`]).

pub mod betti;
pub mod checks;
pub mod cli;
pub mod error;
pub mod int_poly;
pub mod kostka;
pub mod partition;
pub mod poly;

pub use betti::{betti, f_limit, f_poly, poincare, MemoTable};
pub use checks::{StabilityReport, Verdict};
pub use error::{Error, Result};
pub use int_poly::{IntPoly, PoincarePoly};
pub use kostka::{GradedDecomposition, KostkaOracle, Tableau};
pub use partition::{lambda_max, normalize, partitions, threshold, Partition};
pub use poly::RationalPoly;
