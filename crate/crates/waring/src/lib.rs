//! Exact computation of real and complex Waring ranks of binary forms.
//!
//! A real binary form of degree d is a homogeneous polynomial f(x, y) with
//! rational coefficients. Its Waring rank over a field is the least number of
//! d-th powers of linear forms summing to it (real rank allows real linear
//! forms and real coefficients; complex rank allows complex ones). This crate
//! decides those ranks with certificates, using only exact rational
//! arithmetic: catalecticant kernels locate candidate apolar forms, Sturm
//! sequences decide how many distinct real roots a candidate has, and a form
//! of degree r with r distinct real roots in the kernel certifies real rank
//! at most r.
//!
//! Highlights:
//! - [`forms`]: binary forms, projective roots, hyperbolicity, discriminants;
//! - [`apolarity`]: catalecticant matrices, contraction, apolar kernels;
//! - [`hypdecide`]: does a subspace contain a form with all-real distinct
//!   roots? Exact for dimensions 1 and 2, randomized search above;
//! - [`rank`]: complex rank, real rank brackets, degree-specific classifiers
//!   with exact certificates, decompositions over the reals;
//! - [`witnesses`]: certified constructions hitting prescribed real ranks,
//!   including rank d - 1 forms of every degree d >= 5;
//! - [`census`]: seeded Monte Carlo rank censuses with reproducible reports.

pub mod apolarity;
pub mod census;
pub mod error;
pub mod forms;
pub mod hypdecide;
pub mod linalg;
pub mod rank;
pub mod rat;
pub mod seeds;
pub mod univariate;
pub mod witnesses;

pub use error::{Error, Result};
pub use forms::{BinaryForm, Basis, Distribution, PointSetForm, ProjectivePoint};

/// Schema version stamped on every serialized artifact.
pub const SCHEMA_VERSION: u32 = 1;
