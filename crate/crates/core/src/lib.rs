//! Structured reachability, observability, duality and reduction for
//! linear systems whose matrices follow the zero pattern of a partial order.

pub mod blockmat;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod format;
pub mod matrix;
pub mod observability;
pub mod poly;
pub mod poset;
pub mod random;
pub mod rational;
pub mod reachability;
pub mod reduction;
pub mod sim;
pub mod subspace;
pub mod system;

pub use blockmat::{BlockMatrix, Partition};
pub use error::{Error, Result};
pub use format::{parse_system, write_system};
pub use matrix::Matrix;
pub use poly::Poly;
pub use poset::{DerivedKind, NodeSet, Poset};
pub use rational::Rational;
pub use subspace::Subspace;
pub use system::{PosetCausalSystem, SubsystemKind, ValidationReport};
pub use duality::{verify_duality, DualityReport};
pub use observability::ObservabilityProfile;
pub use reachability::ReachabilityProfile;
pub use reduction::{poset_reduce, ReducedSystem, ReductionVariant};
pub use sim::{InputSignal, Trajectory};
