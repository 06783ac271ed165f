//! Entanglement of pure states of two identical particles.
//!
//! A state `|ψ⟩ = Σ C_ij |i⟩⊗|j⟩` is stored through its coefficient matrix
//! `C`, antisymmetric for fermions and symmetric for bosons. The crate
//! computes the Slater (fermion) and Schmidt (boson) decompositions of `C`,
//! the von Neumann entropy of the one-particle reduced density operator,
//! and the property-attribution criterion, and combines them into a single
//! entanglement verdict.

pub mod analysis;
pub mod classify;
pub mod decomp;
mod error;
pub mod exec;
pub mod linalg;
pub mod oracle;
pub mod properties;
pub mod random;
pub mod states;

pub use analysis::{
    entropy_from_schmidt, entropy_from_slater, reduced_density, von_neumann_entropy,
    DensityOperator,
};
pub use classify::{
    classify, desymmetrize, ClassificationReport, Desymmetrized, Rule, Verdict,
};
pub use decomp::{
    decompose, schmidt_decompose, schmidt_distinguishable, slater_decompose, Decomposition,
    DistinguishableSchmidt, SchmidtDecomposition, SlaterDecomposition, DEFAULT_COUNT_EPS,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use linalg::{ComplexMatrix, UnitaryMatrix};
pub use properties::{ep_expectation, find_property_projector, PropertyReport, SearchOptions};
pub use states::{SingleParticleVector, Statistics, TwoParticleState};
