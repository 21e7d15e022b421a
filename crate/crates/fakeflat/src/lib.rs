//! Exact invariants and TQFT matrices for cut cellular surfaces coloured by
//! finite 2-groups.
//!
//! A cut cellular surface is an orientable surface with boundary given by a
//! planar presentation: faces with cyclic boundary words over oriented
//! edges, cut edges identified in pairs, boundary circles of one vertex and
//! one loop edge each. A finite crossed module `(G, H, d, ▷)` colours
//! edges with `G` and faces with `H`, subject to fake flatness per face;
//! the weighted count of colourings is invariant under the two rewriting
//! moves and turns gluing into matrix multiplication.
//!
//! Arithmetic is exact throughout: rationals plus a symbolic `√|G|`.
//!
//! Start with the runnable examples, one per capability:
//!
//! ```bash
//! cargo run -p fakeflat --example build_groups
//! cargo run -p fakeflat --example crossed_modules
//! cargo run -p fakeflat --example surfaces_and_moves
//! cargo run -p fakeflat --example colouring_invariants
//! cargo run -p fakeflat --example tqft_matrices
//! cargo run -p fakeflat --example two_conjugacy
//! cargo run -p fakeflat --example json_io
//! cargo run -p fakeflat --example verification_suite
//! ```
//!
//! or with the `fakeflat` binary, e.g.
//! `fakeflat invariant --surface torus --module X2-S3`.
//!
//! The five-line version:
//!
//! ```
//! use fakeflat::{fixtures, invariant, ExactScalar, Limits, SurfaceComplex, TqftMatrix};
//!
//! // the torus invariant over trivial-H on S3 counts conjugacy classes
//! let x2 = fixtures::x2();
//! let z = invariant(&SurfaceComplex::torus(), &x2, &[], &[], &Limits::default()).unwrap();
//! assert_eq!(z, ExactScalar::from_int(3, 6));
//!
//! // the cylinder matrix is an idempotent
//! let zc = TqftMatrix::from_surface(&SurfaceComplex::cylinder(), &x2, &Limits::default()).unwrap();
//! assert!(zc.is_idempotent().unwrap());
//! ```

// index loops over multiplication tables read better than iterator chains
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod invariant;
pub mod io;
pub mod scalar;
pub mod surface;
pub mod tqft;
pub mod two_conjugacy;
pub mod verify;

pub use crossed::CrossedModule;
pub use error::{Axiom, Error, Result};
pub use group::{FiniteGroup, GroupAction, GroupHom, Subgroup};
pub use invariant::{
    check_fake_flat, closed_form, count_colourings, invariant, Colouring, CountMode, Limits,
    SurfaceKind,
};
pub use scalar::{ExactScalar, Rat};
pub use surface::{Dir, Edge, EdgeKind, EdgeRef, Face, SurfaceComplex, SurfaceReport};
pub use tqft::{check_cylinder_identity, class_eigenvector_check, TqftMatrix};
pub use two_conjugacy::{c_function, two_conjugacy_classes, TwoConjClasses};
