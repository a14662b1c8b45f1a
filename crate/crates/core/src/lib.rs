//! Gröbner-basis analysis of generalized toric codes on twisted tori.

pub mod gf2x;
pub mod numtheory;
pub mod groebner;
pub mod poly2;
pub mod code_algebra;
pub mod torus;
pub mod lattice;
pub mod distance;
pub mod catalog;
pub mod gb1d;
pub mod search;
pub mod cli;
