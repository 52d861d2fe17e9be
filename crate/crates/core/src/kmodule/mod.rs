//! Modules over the group algebra of an elementary abelian `p`-group.
//!
//! A module is a vector space with commuting matrices `Z_i`, `Z_i^p = 0`,
//! giving the action of `z_i = g_i - 1`. Group-element matrices are
//! converted at construction.

pub mod catalog;
mod map;
mod module;

pub use map::{hom_basis, ModuleMap};
pub use module::{ElemAbGroupAlg, Form, KModule, MAX_GROUP_ORDER};

#[cfg(test)]
mod tests;
