//! Finite-group workbench.
//!
//! Everything here works with concrete finite groups stored as dense Cayley
//! tables. On top of that sit homomorphism search, a generated catalog of all
//! groups of order at most 12, embedding problems for marked groups, finite
//! quotients of free products of finite groups, a group-theoretic model of
//! inertia and ramification, and an exact finite-field check of the invariant
//! generators attached to a twisted Galois action.

pub mod budget;
pub mod embed;
pub mod freeprod;
pub mod galois;
pub mod group;
pub mod search;
pub mod valuation;

mod arith;

pub use budget::{Budget, BudgetExceeded};
pub use group::{FiniteGroup, GroupError, GroupRef, Homomorphism, Subgroup};
