//! Exact wall-and-chamber computations for nef cones of Hilbert schemes of
//! points `X^[n]` on surfaces of irregularity zero.
//!
//! Everything is computed over arbitrary-precision rationals: Picard lattice
//! intersection theory, twisted Chern characters and Bridgeland walls in an
//! `(H, D)`-slice, critical divisors and the Gieseker wall, the nef divisor
//! the wall induces on `X^[n]`, and dual curves certifying extremality.
//! Presets cover hypersurfaces in `P^3`, cyclic covers of `P^2` and the
//! degree-one del Pezzo surface.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod chern;
pub mod dp1;
pub mod error;
pub mod gieseker;
pub mod hilb;
pub mod lattice;
pub mod lp;
pub mod presets;
pub mod rational;
pub mod walls;

pub use chern::{ChernCharacter, Slice, SlicePoint, Slope};
pub use error::{Error, Result};
pub use gieseker::{Certificate, CriticalDivisorSet, GiesekerWallResult};
pub use hilb::{HilbCurveClass, HilbDivisorClass};
pub use lattice::{DivisorClass, IntersectionLattice, Preset, SurfaceData};
pub use rational::Rational;
pub use walls::Wall;
