//! Monoidal-action combinatorics for finite-dimensional modules over simple
//! Lie algebras: tensor-product decompositions, action graphs and their
//! classification against Dynkin-diagram catalogs, McKay graphs of finite
//! subgroups of SL2(C), and exact matrix modules over small subalgebras of sl2.

#![allow(clippy::needless_range_loop)]

pub mod actiongraph;
pub mod cyclotomic;
pub mod diagramcat;
pub mod error;
pub mod matmod;
pub mod mckay;
pub mod repcalc;
pub mod rootdata;
pub mod selfcheck;

pub use error::{Error, Result};
