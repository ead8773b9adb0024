//! Non-crossing partition lattices of the classical Coxeter types, their
//! embeddings into subspace lattices over finite fields, and the chamber
//! complexes they span inside the spherical building of `F_2^{n-1}`.
//!
//! ```
//! use ncpart::ncp::NcLattice;
//! use ncpart::perm::Group;
//!
//! let l = NcLattice::build(Group::b(3));
//! assert_eq!(l.len(), 20);
//! let x = l.parse_elem("[1]").unwrap();
//! let y = l.parse_elem("[2]").unwrap();
//! assert_eq!(l.fmt_elem(l.join(x, y)), "[1 2]");
//! ```

pub mod autos;
pub mod checks;
pub mod complex;
pub mod guard;
pub mod linalg;
pub mod metric;
pub mod ncp;
pub mod perm;
pub mod trees;

pub use perm::{CoxType, Cycle, CycleKind, Group, PermError, ReducedWord, SignedPerm};
