#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootlocus_core::{ComplexPolynomial, TrinomialFamily};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::new(
        rng.random_range(-radius..radius),
        rng.random_range(-radius..radius),
    )
}

/// Random polynomial of degree exactly `deg` with coefficients in the square
/// of half-width `radius` and leading coefficient at least `min_lead` in
/// magnitude.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize, radius: f64, min_lead: f64) -> ComplexPolynomial {
    let mut coeffs: Vec<Complex64> = (0..=deg).map(|_| random_complex(rng, radius)).collect();
    while coeffs[deg].norm() < min_lead {
        coeffs[deg] = random_complex(rng, radius);
    }
    ComplexPolynomial::new(coeffs)
}

/// Random trinomial family with `deg A, deg B <= max_deg` and a
/// well-conditioned leading coefficient on both.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> TrinomialFamily {
    let deg_a = rng.random_range(0..=max_deg);
    let deg_b = rng.random_range(0..=max_deg);
    let a = random_poly(rng, deg_a, 1.0, 0.05);
    let b = random_poly(rng, deg_b, 1.0, 0.05);
    TrinomialFamily::new(a, b, n).expect("valid family")
}
