//! Combinatorics of crepant resolutions of `C^3 / μ_r` and the braid-type
//! group actions generated by spherical twists on their exceptional surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] and [`fan`] — exact fans in r-scaled coordinates;
//! * [`surface`] — exceptional surface types, curves and restriction degrees;
//! * [`hom`] — spherical objects, graded Hom dimensions, cycle orthogonality;
//! * [`quiver`] — the quiver with potential and its braid-twist presentation;
//! * [`artin`] — Garside normal forms in ADE Artin groups;
//! * [`ktheory`] — the integer Euler-form representation of twists;
//! * [`diagram`] — surface/curve dual graphs as JSON or DOT;
//! * [`pipeline`] — the end-to-end verification report.

pub mod lattice;
pub mod fan;
pub mod surface;
pub mod hom;
pub mod quiver;
pub mod artin;
pub mod ktheory;
pub mod bundled;
pub mod diagram;
pub mod pipeline;
