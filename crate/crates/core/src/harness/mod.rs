//! Checking the inequalities between homological dimensions along a
//! standard recollement, with sound interval arithmetic.

mod checks;
mod datum;
mod fuzz;
mod verdict;

pub use checks::*;
pub use datum::{
    idempotent_ideal, triangular_isomorphisms, triangular_recollement, triangular_recollement_glued, Provenance,
    RecollementDatum, TriangularParts,
};
pub use fuzz::{fuzz_corpus, random_instance, FuzzInstance};
pub use verdict::{Check, Hypothesis, Interval, Verdict, XInt};
