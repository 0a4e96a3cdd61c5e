//! Exact computational invariant theory for products of `SL_n`: weight
//! polytopes and min-norm points, nullcone stratification, character
//! calculus, explicit equivariant tensor operators and method ledgers.

pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod methods;
pub mod polytope;
pub mod repchar;
pub mod strata;
pub mod tensorcalc;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use lattice::{AmbientWeight, GroupShape, Root, WeylElement};
pub use linalg::Matrix;
pub use polytope::{FaceDescriptor, FaceLattice, FaceMode, Halfspace, MinNormPoint, SupportSet, WeightVector};
pub use repchar::{CharacterMultiset, IrrLabel};
pub use methods::{LedgerReport, Verdict};
pub use strata::{NullconeReport, StratumCandidate, StratumVerdict, Stratifying};
pub use tensorcalc::{LinearMapMatrix, PolyTensor, SkewForm};
