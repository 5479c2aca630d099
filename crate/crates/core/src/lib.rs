//! Perverse invariants of finite filtered simplicial complexes.
//!
//! The crate computes, with exact integer arithmetic:
//!
//! * strata, links and filtration-aware constructions ([`complex`], [`construct`]);
//! * perversities and their complements ([`perversity`]);
//! * allowable and full simplices, the Gajer subcomplex and its fan-augmented
//!   2-dimensional model ([`allowability`]);
//! * simplicial and intersection homology, comparison maps between them
//!   ([`chain`], [`intersection`]);
//! * perverse `π₀` and finite presentations of perverse fundamental groups,
//!   with Tietze simplification and finite quotient search ([`pi`], [`group`]).
//!
//! ```
//! use perverse::{fixtures, intersection, Perversity};
//!
//! let k = perverse::construct::cone(&fixtures::torus7());
//! let h2 = intersection::intersection_homology(&k, &Perversity::zero(), 2).unwrap();
//! assert_eq!(h2.rank, 0);
//! ```

pub mod allowability;
pub mod chain;
pub mod complex;
pub mod construct;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod group;
pub mod intersection;
pub mod io;
pub mod linalg;
pub mod perversity;
pub mod pi;
pub mod poincare;
pub mod simplex;

pub use complex::{FilteredComplex, Stratum};
pub use error::{Error, Result};
pub use ext::ExtendedInt;
pub use perversity::Perversity;
pub use simplex::Simplex;
