//! Batch verification of s-permutability and quasinormality statements over
//! a catalog of permutation groups.

pub mod catalog;
pub mod report;
pub mod runner;
pub mod theorems;
pub mod witness;
