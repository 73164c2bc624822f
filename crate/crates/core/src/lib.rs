//! Exact computations with mod-`p` group cohomology and with 2-torsion
//! Brauer classes over `Q`.
//!
//! The group side covers cochains, cup products and `H^1`, `H^2` of finite
//! groups with trivial coefficients `Z/p`, triple Massey products, the
//! dictionary between defining systems and homomorphisms into unipotent
//! groups, and the cup product / restriction exactness test. The arithmetic
//! side computes Hilbert symbols and local invariants over `Q` and
//! decomposes a class split by `Q(√a_1, …, √a_r)` as `Σ (a_i, x_i)`.
//!
//! ```
//! use std::sync::Arc;
//!
//! use cupres_core::cochain::GroupCohomology;
//! use cupres_core::massey::triple_massey_set;
//! use cupres_core::lgp::{decompose, verify_certificate};
//! use cupres_core::{builtin_group, BrauerClass2, SearchBounds};
//!
//! let g = Arc::new(builtin_group("cyclic:3")?);
//! let coh = GroupCohomology::new(&g, 3)?;
//! let chi = &coh.h1().characters()[0];
//! let set = triple_massey_set(&coh, [chi, chi, chi])?.expect("defined");
//! assert!(!set.contains_zero());
//!
//! let c = BrauerClass2::from_pairs(&[(6, 5)])?;
//! let cert = decompose(&c, &[2, 3], &SearchBounds::default())?;
//! assert!(verify_certificate(&cert, SearchBounds::default().factor_bound).valid);
//! # Ok::<(), cupres_core::Error>(())
//! ```

pub mod arith;
pub mod brauer;
pub mod builtin;
pub mod cochain;
pub mod cup_restriction;
pub mod error;
pub mod fp_linalg;
pub mod group;
pub mod lgp;
pub mod massey;
pub mod unipotent;

pub use brauer::{BrauerClass2, Invariant, LocalInvariants, Place, QuaternionSymbol};
pub use builtin::builtin_group;
pub use cochain::{cohomology, Cochain, CohomologyBasis, GroupCohomology};
pub use cup_restriction::CupResVerdict;
pub use error::{Error, Result};
pub use fp_linalg::{FpMatrix, FpVector, LinearSolver, Subspace};
pub use group::{Character, FiniteGroup, GroupSpec, Subgroup};
pub use lgp::{DecompositionCertificate, SearchBounds, Verification};
pub use massey::{CochainArray, DefiningSystem, MasseyCoset, VanishingReport};
pub use unipotent::{GroupHom, UnipotentGroup};
