//! q-discriminants: the root-pair product definition, the hard-coded closed
//! forms for trinomial denominators with n in {2,3,4}, and the worked-example
//! double discriminant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{self, ComplexPolynomial};
use crate::rootfind::{find_roots, SolverOptions};

/// How a q-discriminant value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QDiscMethod {
    Definition,
    ClosedForm,
}

/// A q-discriminant evaluation at one parameter value.
#[derive(Clone, Copy, Debug)]
pub struct QDiscSample {
    pub q: Complex64,
    pub value: Complex64,
    pub method: QDiscMethod,
}

fn require_nonzero_q(q: Complex64) -> Result<()> {
    if q.norm() <= 1e-12 {
        return Err(Error::PoleInput { re: q.re, im: q.im });
    }
    Ok(())
}

/// q-discriminant of `p` by the definition: with roots `x_1..x_d` and leading
/// coefficient `c`,
///
/// `c^{2d-2} q^{d(d-1)/2} prod_{i<j} (q^{-1/2} x_i - q^{1/2} x_j)(q^{1/2} x_i - q^{-1/2} x_j)`.
///
/// Each pair factor multiplies out to `x_i^2 + x_j^2 - (q + 1/q) x_i x_j`, so
/// the result is branch independent and independent of root ordering. As
/// `q -> 1` this becomes the ordinary discriminant; it vanishes exactly when
/// some quotient of roots equals `q`.
pub fn q_discriminant_definition(p: &ComplexPolynomial, q: Complex64) -> Result<Complex64> {
    let d = p.degree().finite().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooLow("q-discriminant requires degree >= 2"));
    }
    require_nonzero_q(q)?;
    let roots = find_roots(p, &SolverOptions::default())?.roots;
    let lc = p.leading_coefficient().expect("degree >= 2");
    let pair_coeff = q + q.inv();
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..d {
        for j in i + 1..d {
            let (xi, xj) = (roots[i], roots[j]);
            prod *= xi * xi + xj * xj - pair_coeff * xi * xj;
        }
    }
    let exponent = (d * (d - 1) / 2) as i32;
    Ok(lc.powi(2 * d as i32 - 2) * q.powi(exponent) * prod)
}

/// Closed-form q-discriminant of `1 + B0 t + A0 t^n` for n in {2, 3, 4}:
///
/// * n=2: `q (B^2 - (q + 1/q + 2) A)`
/// * n=3: `-B^3 A q^2 (1+q)^2 - A^2 (1+q+q^2)^3`
/// * n=4: `-A^2 B^4 q^3 (1+q+q^2)^3 + A^3 (1+q+q^2+q^3)^4`
pub fn q_discriminant_closed(
    a0: Complex64,
    b0: Complex64,
    n: usize,
    q: Complex64,
) -> Result<Complex64> {
    require_nonzero_q(q)?;
    let one = Complex64::new(1.0, 0.0);
    match n {
        2 => {
            let shift = q + q.inv() + 2.0;
            Ok(q * (b0 * b0 - shift * a0))
        }
        3 => {
            let s2 = one + q + q * q;
            let b3 = b0 * b0 * b0;
            Ok(-b3 * a0 * q * q * (one + q).powu(2) - a0 * a0 * s2.powu(3))
        }
        4 => {
            let q2 = q * q;
            let s2 = one + q + q2;
            let s3 = s2 + q2 * q;
            let b4 = (b0 * b0).powu(2);
            Ok(-a0 * a0 * b4 * q.powu(3) * s2.powu(3) + a0.powu(3) * s3.powu(4))
        }
        _ => Err(Error::UnsupportedN {
            n,
            supported: "closed forms exist for n in {2, 3, 4}",
        }),
    }
}

/// The worked-example double discriminant:
/// `Disc_z Disc_t (1 + (z^2 - 2z + a) t + z^2 t^2) = 4096 a^3 (a - 4)`.
///
/// Computes the inner discriminant `B^2 - 4 z^2` as a polynomial in `z` and
/// feeds it through the ordinary discriminant pipeline.
pub fn double_discriminant_example(a: f64) -> Result<f64> {
    let b = ComplexPolynomial::from_real(&[a, -2.0, 1.0]);
    let inner = b.multiply(&b).sub(&ComplexPolynomial::from_real(&[0.0, 0.0, 4.0]));
    if inner.degree().finite().unwrap_or(0) < 2 {
        return Err(Error::DegenerateDegree);
    }
    let value = poly::discriminant(&inner)?;
    if value.im.abs() > 1e-6 * (1.0 + value.re.abs()) {
        return Err(Error::CertificationFailed {
            check: "double discriminant should be real",
            error: value.im.abs(),
            tolerance: 1e-6 * (1.0 + value.re.abs()),
        });
    }
    Ok(value.re)
}
