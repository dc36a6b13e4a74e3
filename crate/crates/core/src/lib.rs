//! Exact Igusa local zeta functions `Z(s, f)` in `t = p^-s` for integer
//! polynomials in one variable whose roots are all rational, together with the
//! Poincare series, the congruence counts `N_n` and a brute-force oracle.

pub mod arith;
pub mod bench;
pub mod corpus;
pub mod error;
pub mod factor;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod ratfun;
pub mod series;
pub mod tree;
pub mod verify;
pub mod zeta;

pub use arith::{padic_expand, vp, PadicDigits, Prime};
pub use error::{Error, Result};
pub use factor::{factor_over_q, Factorization, Root, ValuationSplit};
pub use oracle::{brute_force_cm, brute_force_count, brute_force_counts, OracleBudget};
pub use pipeline::{analyze, Analysis};
pub use poly::{IntPolynomial, Poly};
pub use ratfun::RationalFunction;
pub use series::{keystream, CoefficientPrefix, CountPrefix};
pub use tree::WeightedTree;
pub use zeta::{zeta_equal, ZetaAtom, ZetaFunction};
