//! The diagram algebra: generators, normal form, and its defining checks.
//!
//! Elements are finite sums `Σ coeff · E_A · R_w` over pairs of a set
//! partition `A` (the ties) and a permutation `w`. Right multiplication by
//! the generators rewrites into this normal form using the quadratic
//! relation and the transport rule `R_w E_{p,q} = E_{w(p),w(q)} R_w`.

mod checks;
mod elem;
mod partition;
mod perm;

pub use checks::{check_isomorphism, check_relations, CheckReport, SuiteReport};
pub use elem::{elem_from_word, AlgebraElem, Coeff};
pub use partition::{DisjointSet, SetPartition};
pub use perm::Perm;
