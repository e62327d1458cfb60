//! Exact `L2` Bernstein–Markov factors `M_n` for the generalized Hermite weight
//! `|x|^{2λ} e^{-x²}` and the generalized Gegenbauer weight `|x|^{2λ}(1-x²)^{μ-1/2}`,
//! under the classical derivative and the Dunkl operator, with an independent
//! Rayleigh-quotient oracle.

pub mod dunkl;
pub mod error;
pub mod factors;
pub mod inequality;
pub mod linalg;
pub mod oracle;
pub mod orthopoly;
pub mod poly;
pub mod quadrature;
pub mod special;
pub mod sweep;
pub mod table2;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use factors::{factor, Branch, FactorResult, Pencil, PencilRoot};
pub use inequality::InequalityReport;
pub use oracle::{rayleigh_factor, GramPair, OracleResult};
pub use poly::Polynomial;
pub use sweep::Execution;
pub use weight::{Family, OperatorKind, OperatorSpec, WeightSpec};
