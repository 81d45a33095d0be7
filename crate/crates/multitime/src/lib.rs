//! Spectral laboratory for wave equations with more than one time variable.
//!
//! Two inequivalent ways of adding time dimensions to quantum evolution live
//! side by side here. The multi-time Schrödinger system (`mts`) gives each
//! particle its own time coordinate but keeps first-order unitary evolution:
//! it is well-posed, norm-preserving, and path-independent. The
//! ultrahyperbolic wave equation (`mtd`) instead adds a timelike *metric*
//! direction: its initial value problem grows exponentially, loses
//! uniqueness, and is only salvaged by the Craig-Weinstein support
//! restriction. The remaining modules supply the shared machinery (periodic
//! lattices and FFTs, gamma matrices in arbitrary signature, free Dirac
//! propagators) and the physics built on top (hypersurface detection
//! densities, Lorentz-frame changes).

pub mod clifford;
pub mod cli;
pub mod detection;
pub mod dirac;
pub mod lattice;
pub mod lorentz;
pub mod mtd;
pub mod mts;
pub mod oracles;
pub mod rng;
pub mod tolerances;
