//! Exact representation-theoretic sampling distributions for the hidden
//! subgroup problem.
//!
//! The crate covers:
//!
//! - [`young`]: partitions, hook lengths, contents and the dimensions of the
//!   `S_k` and `U(d)` irreps of Schur-Weyl duality;
//! - [`characters`]: conjugacy classes and Murnaghan–Nakayama characters of `S_k`;
//! - [`spectra`]: exact Plancherel and Schur distributions, distances,
//!   Bhattacharyya overlaps, Kerov moments and bound checkers;
//! - [`groups`]: small finite groups, regular representations, character
//!   tables, isotypic projectors and hidden subgroup states;
//! - [`sampling`]: brute-force weak Schur and weak Fourier-Schur sampling;
//! - [`collision`]: the amplified swap test and query accounting for the
//!   quantum collision algorithm.
//!
//! Distributions are generic over [`Field`] (exact rationals or floats) and
//! matrices over [`Real`] (`f32`/`f64`); the aliases below fix the common
//! choices.

pub mod characters;
pub mod collision;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod perm;
pub mod sampling;
pub mod scalar;
pub mod serde_rational;
pub mod spectra;
pub mod young;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_complex::Complex;
pub use num_rational::BigRational;
pub use scalar::{Field, Real};
pub use spectra::PartitionDistribution;
pub use young::Partition;

/// Exact distribution over partitions.
pub type ExactDistribution = spectra::PartitionDistribution<BigRational>;
/// Double-precision distribution over partitions.
pub type FloatDistribution = spectra::PartitionDistribution<f64>;
/// Dense complex matrix with real part `F`.
pub type CMatrix<F> = nalgebra::DMatrix<Complex<F>>;
/// Dense complex vector with real part `F`.
pub type CVector<F> = nalgebra::DVector<Complex<F>>;
pub type CMatrix64 = CMatrix<f64>;
pub type CVector64 = CVector<f64>;
pub type DensityMatrix64 = linalg::DensityMatrix<f64>;
