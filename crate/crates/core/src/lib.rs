//! Generalized Jacobi elliptic-function analogues built from the incomplete
//! hypergeometric integrals `∫ F(1/2 - a, 1/2 + a; 1/2; κ^2 sin^2 θ) dθ`,
//! together with a suite that checks their identities and differential
//! equations numerically and, where possible, in exact arithmetic.

pub mod analogue;
pub mod chebyshev;
pub mod classical;
pub mod error;
pub mod hypergeom;
pub mod quadrature;
pub mod series;
pub mod verify;
pub mod weierstrass;

pub use analogue::{phi_oracle, AnalogueFn, AnalogueSet, Family, ModulusParams};
pub use chebyshev::RationalPoly;
pub use error::{Error, Result};
pub use hypergeom::HypergeomParams;
pub use series::{TruncatedSeries, DEFAULT_ORDER};
pub use weierstrass::WeierstrassInvariants;
