//! Exact enumeration of decorated rooted trees for finitary polynomial
//! functors, the Connes–Kreimer style bialgebras they span, and solvers for
//! combinatorial Dyson–Schwinger equations.

pub mod algebra;
pub mod dse;
pub mod functor;
pub mod hopf;
pub mod report;
pub mod trees;

#[cfg(test)]
mod testutil;
