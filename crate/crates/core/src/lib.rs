//! Exact computation of the restriction of irreducible characters of
//! `G_w = (Z_p ⋊ Z_{p-1}) ≀ S_w` to `H_w = Z_{p-1} ≀ S_w`.
//!
//! The label-level engine ([`decomp`]) expresses every multiplicity through
//! Littlewood–Richardson coefficients ([`lr`]) and never builds a group. The
//! [`oracle`] module builds the groups element by element and recomputes the
//! same multiplicities from exact character inner products, so the two routes
//! can be compared ([`verify`]).

pub mod cyclotomic;
pub mod decomp;
pub mod error;
pub mod lr;
pub mod oracle;
pub mod partitions;
pub mod sn_char;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{MultiPartition, Partition};
