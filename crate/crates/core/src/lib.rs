//! Root distribution of polynomial sequences with trinomial-denominator
//! generating functions.
//!
//! The sequences `H_m(z)` are defined by
//!
//! ```text
//! sum_m H_m(z) t^m = 1 / (1 + B(z) t + A(z) t^n)
//! ```
//!
//! for polynomials `A`, `B` and a fixed `n >= 2`. This crate builds the
//! `H_m`, finds their complex roots, and checks numerically that the roots
//! fall on explicit algebraic loci: `Im B^n/A = 0` with `(-1)^n Re B^n/A`
//! in `[0, n^n/(n-1)^{n-1}]` in the z-plane, and companion quotient loci in
//! the q-plane tied to q-discriminants of the denominator.
//!
//! Modules:
//!
//! * [`poly`] — dense complex polynomials, resultants, discriminants.
//! * [`genfun`] — trinomial families, the `H_m` recurrence, and a
//!   recurrence-based evaluator for root-finding at large `m`.
//! * [`rootfind`] — simultaneous (Aberth) iteration with certification.
//! * [`qdisc`] — q-discriminants from the definition and in closed form.
//! * [`curves`] — root/quotient loci, residuals, sampling, verification.
//! * [`casework`] — the fully worked example family with its three regimes.

pub mod casework;
pub mod curves;
pub mod error;
pub mod genfun;
pub mod poly;
pub mod qdisc;
pub mod rootfind;

pub use casework::{
    classify_regime, cross_check, example_family, example_locus_residual, Component,
    CrossCheckReport, ExampleRegime, RegimeKind,
};
pub use curves::{
    f_map, one_sided_hausdorff, quotient_locus_residual, quotients_at_root, ratio,
    root_locus_residual, sample_locus, verify_theorem, LocusReport, LocusSpec, RootRecord, Window,
};
pub use error::{Error, Result};
pub use genfun::{h_sequence, series_oracle, HSequence, HmEvaluator, TrinomialFamily};
pub use poly::{discriminant, sylvester_resultant, ComplexPolynomial, Degree};
pub use qdisc::{
    double_discriminant_example, q_discriminant_closed, q_discriminant_definition, QDiscMethod,
    QDiscSample,
};
pub use rootfind::{find_roots, find_roots_with, PolyEvaluator, RootSet, SolverOptions};

pub use num_complex::Complex64;
