//! Thermal entanglement of two bosonic modes.
//!
//! A free quadratic Hamiltonian `H = sum_a omega_a b_a^dag b_a` is thermalized at
//! temperature `T`, and two new modes `a_k`, `a_l` are defined by a linear
//! (Bogoliubov) transformation
//!
//! ```text
//! a_i = sum_a ( S_ia^* b_a + T_ia b_a^dag ),
//! ```
//!
//! given by the rows `(S_k, T_k, S_l, T_l)`. This crate assembles the reduced
//! two-mode Gaussian state of `a_k, a_l`, converts it to quadrature form, solves
//! for the symmetric-state normal form, decides separability, and evaluates the
//! entanglement of formation in ebits (base-2 logarithms).
//!
//! Conventions: `hbar = k_B = 1`, frequencies and temperatures dimensionless,
//! `beta = 1/T`, vacuum quadrature covariance equal to the identity.
//!
//! Modules:
//! - [`modes`]: spectra, transformation rows, commutation validation, and the
//!   thermal covariance assembly.
//! - [`gaussian`]: covariance types, symplectic invariants, normal form,
//!   separability, entanglement of formation.
//! - [`oscillator`]: the two linearly coupled oscillators worked end to end
//!   (closed forms, threshold temperature, zero-temperature asymptotics).
//! - [`fock`]: an independent truncated-Fock oracle for the covariance entries.
//! - [`sampling`]: random valid transformation rows for property tests.

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod modes;
pub mod oscillator;
pub mod sampling;

pub use error::{Error, Result};
pub use fock::{oracle_pair_covariance, FockCutoff, OracleResult};
pub use gaussian::{
    entanglement_of_formation, normal_form, separability_standard_form, symplectic_invariants,
    to_quadrature, NormalForm, QuadratureCovariance, SymplecticInvariants, TwoModeCovariance,
};
pub use modes::{
    pair_covariance, residual_inner_product, thermal_inner_product, validate_rows, ModeSpectrum,
    Temperature, TransformRows, ValidationReport, DEFAULT_VALIDATION_TOL,
};
pub use oscillator::{
    build_pair, delta_squared, emax_asymptotic, entanglement, entanglement_closed_form,
    threshold_temperature, zero_temperature_entanglement, AsymptoticRegime, PairParams,
};
