//! Normality of Hopf subalgebras in cocycle deformations of finite groups.

pub mod catalog;
pub mod cocycle;
pub mod cyclotomic;
pub mod galois;
pub mod group;
pub mod instance;
pub mod invariants;
pub mod normality;
pub mod suite;
