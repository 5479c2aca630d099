//! Finitely presented groups: Tietze simplification, abelianisation and
//! homomorphisms into finite permutation groups.

pub mod finite;
pub mod presentation;

pub use finite::{find_homomorphisms, FiniteGroupTarget, HomomorphismSearch, SearchStatus};
pub use presentation::{GroupPresentation, Word};
