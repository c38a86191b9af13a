pub mod classify;
pub mod error;
pub mod finite_field;
pub mod group_core;
pub mod numtheory;
pub mod order_sums;
pub mod rational;
pub mod subgroup_lattice;
pub mod verify;

pub use error::{Error, Result};
pub use group_core::{Element, FiniteGroup, GroupRef};
pub use rational::ExactRational;
pub use subgroup_lattice::Subgroup;
