//! Virtual singular braid groups as computable objects: words,
//! presentations, homomorphisms, invariants, kernel presentations, and
//! normal forms.
//!
//! The crate is organized around a registry of braid-group presentations
//! ([`presentation`]), a free-word algebra ([`word`]), concrete target
//! groups ([`perm`], [`freeproduct`], [`autfree`]), homomorphism machinery
//! ([`hom`], [`homcount`], [`iso`]), integer linear algebra for abelian and
//! class-2 nilpotent quotients ([`matrix`], [`abelian`]), and the
//! Reidemeister–Schreier / Tietze pipeline for kernel presentations
//! ([`schreier`], [`tietze`], [`kernels`]).
//!
//! Run `cargo run -p vsbraid -- suite` for the full verification battery,
//! or see the `examples/` directory for one runnable walkthrough per major
//! capability.

pub mod abelian;
pub mod autfree;
pub mod freeproduct;
pub mod hom;
pub mod homcount;
pub mod iso;
pub mod kernels;
pub mod matrix;
pub mod nu6;
pub mod perm;
pub mod presentation;
pub mod schreier;
pub mod structure;
pub mod suite;
pub mod target;
pub mod tietze;
pub mod trivialize;
pub mod word;

pub mod cli;

pub use hom::{classify_triples, exponent_sums, phi_triple, ExponentData, GeneratorMap, Triple};
pub use presentation::{build_presentation, GroupFamily, Presentation, Relator, RelatorTag};
pub use word::{format_word, parse_word, Gen, Word};
