//! Exact ideal calculus over `Q` and `F_p`: Gröbner bases, quotient rings, links,
//! reduction numbers, Rees algebras, canonical-module components and multiplicities.

pub mod error;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod linkage;
pub mod monomial;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod scalar;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use invariants::HilbertSamuelTable;
pub use linkage::Budget;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use presentation::RingPresentation;
pub use report::{Conclusion, VerificationReport};
pub use scalar::{Field, Scalar};
pub use verify::Assertions;
