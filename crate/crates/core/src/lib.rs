//! Exact computations with finite skeletal 2-groups `𝒞(G, A, α)` and their
//! multi-fusion categories `Vect_𝒢`.

pub mod abelian;
pub mod cochain;
pub mod cohomology;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod fusion;
pub mod group;
pub mod group_algebra;
pub mod linalg;
pub mod qz;
pub mod twogroup;
pub mod tworep;

pub use abelian::{AbelianGroup, Character, GroupAction};
pub use cochain::{Cochain, QzCochain};
pub use cohomology::CohomologyOptions;
pub use error::Error;
pub use fusion::{FusionSimple, VectG};
pub use group::FiniteGroup;
pub use qz::Qz;
pub use twogroup::Skeletal2Group;
