//! Milnor link invariants from longitude words, with mutation and Massey-product tooling.

pub mod bracket;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod json;
pub mod lcq;
pub mod link;
pub mod magnus;
pub mod mu;
pub mod mutation;
pub mod word;

pub use error::{Error, Result};
