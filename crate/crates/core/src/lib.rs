//! Exact computations with tame Langlands parameters of `GL_n` and of
//! classical groups through their `GL_m` avatars.
//!
//! All arithmetic takes place in `K = Q(ζ_M, √q)`; Frobenius is always the
//! geometric one, so the tame relation reads `Φ^{-1} Σ Φ = Σ^q` and a
//! monodromy operator satisfies `Φ N Φ^{-1} = q^{-1} N`.

pub mod error;
pub mod field;
pub mod monomial;
pub mod poly;
mod modgcd;
pub mod ratfun;
pub mod divisor;
pub mod matrix;
pub mod param;
pub mod wd;
pub mod factors;
pub mod converse;
pub mod monodromy;
pub mod integrality;
pub mod plancherel;
pub mod moduli;
pub mod random;
pub mod acceptance;
pub mod json;

pub use divisor::{Divisor, Place};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use matrix::Matrix;
pub use monomial::Monomial;
pub use param::{Base, IrredSummand, SemisimpleParam};
pub use plancherel::{ClassicalKind, ClassicalParam, LeviData};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use wd::{SL2Param, Segment, WDParam};
