//! Exact SL(3,Z) Kloosterman sums and the analytic layer around them.
//!
//! - [`arith`]: integer/modular kernel (egcd, inverses, factorization).
//! - [`ksums`]: classical and generalized Kloosterman sums as exact
//!   root-of-unity tallies, plus the Weil/Stevens/Larsen bound checks.
//! - [`analytic`]: complex gamma, the G-function family, K_wl, the
//!   Whittaker function by Mellin-Barnes quadrature, Stade's identity.
//! - [`experiments`]: desk-scale cancellation experiments (Linnik /
//!   Kuznetsov partial sums, Kloosterman zeta partial sums, the smoothed
//!   long-element sum with growth fitting).
//! - [`cli`]: reproducible batch jobs with CSV/JSON output.

pub mod analytic;
pub mod arith;
pub mod cli;
pub mod experiments;
pub mod ksums;
