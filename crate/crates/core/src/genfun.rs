//! The trinomial family `D(t,z) = 1 + B(z) t + A(z) t^n` and the polynomial
//! sequence `H_m(z)` it generates via `1/D = sum_m H_m(z) t^m`, produced both
//! by the three-term recurrence and by an independent power-series-division
//! oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;
use crate::rootfind::{EvalSample, PolyEvaluator};

/// First index past which generated coefficients are rescaled by default;
/// magnitudes grow geometrically and overflow near `m log|B| ~ 700`.
pub const RESCALE_FROM: usize = 50;

/// The pair `(A(z), B(z))` plus the degree gap `n` defining
/// `D(t,z) = 1 + B(z) t + A(z) t^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrinomialFamily {
    a: ComplexPolynomial,
    b: ComplexPolynomial,
    n: usize,
}

impl TrinomialFamily {
    /// Validates `n >= 2` and `A` nonzero (otherwise `D` degenerates to
    /// degree 1 in `t`).
    pub fn new(a: ComplexPolynomial, b: ComplexPolynomial, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedN {
                n,
                supported: "trinomial families require n >= 2",
            });
        }
        if a.is_zero() {
            return Err(Error::InvalidFamily("A must not be the zero polynomial"));
        }
        Ok(Self { a, b, n })
    }

    pub fn a(&self) -> &ComplexPolynomial {
        &self.a
    }

    pub fn b(&self) -> &ComplexPolynomial {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The denominator specialized at `z0`, as a polynomial in `t`:
    /// `1 + B(z0) t + A(z0) t^n`. Degree `n` whenever `A(z0) != 0`.
    pub fn specialize_denominator(&self, z0: Complex64) -> ComplexPolynomial {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.n + 1];
        coeffs[0] = Complex64::new(1.0, 0.0);
        coeffs[1] += self.b.eval(z0);
        coeffs[self.n] += self.a.eval(z0);
        ComplexPolynomial::new(coeffs)
    }
}

/// The sequence `H_0 .. H_{m_max}` for a family, with per-index log scale
/// factors: the true polynomial is `polys[m] * exp(log_scales[m])`.
///
/// Without rescaling every `log_scales[m]` is zero and the recurrence
/// identities hold coefficient-wise exactly as computed.
#[derive(Clone, Debug)]
pub struct HSequence {
    family: TrinomialFamily,
    polys: Vec<ComplexPolynomial>,
    log_scales: Vec<f64>,
}

impl HSequence {
    pub fn family(&self) -> &TrinomialFamily {
        &self.family
    }

    pub fn m_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[ComplexPolynomial] {
        &self.polys
    }

    /// The stored (possibly rescaled) polynomial for index `m`.
    pub fn poly(&self, m: usize) -> &ComplexPolynomial {
        &self.polys[m]
    }

    /// Natural log of the scale divided out of `H_m`; 0 when unscaled.
    pub fn log_scale(&self, m: usize) -> f64 {
        self.log_scales[m]
    }
}

/// Generates `H_0 .. H_{m_max}` by the recurrence
/// `H_m = -B H_{m-1} - A H_{m-n}` with `H_m = (-B)^m` for `m < n`,
/// rescaling indices past [`RESCALE_FROM`].
pub fn h_sequence(family: &TrinomialFamily, m_max: usize) -> HSequence {
    h_sequence_with_rescale(family, m_max, Some(RESCALE_FROM))
}

/// As [`h_sequence`], with explicit control of the rescale point
/// (`None` disables rescaling entirely).
pub fn h_sequence_with_rescale(
    family: &TrinomialFamily,
    m_max: usize,
    rescale_from: Option<usize>,
) -> HSequence {
    let n = family.n;
    let mut polys = Vec::with_capacity(m_max + 1);
    let mut log_scales: Vec<f64> = Vec::with_capacity(m_max + 1);
    polys.push(ComplexPolynomial::one());
    log_scales.push(0.0);
    let neg_b = family.b.scale(Complex64::new(-1.0, 0.0));
    for m in 1..=m_max {
        // H_m = -B H_{m-1} - A H_{m-n}, expressed at the scale of H_{m-1}.
        let mut t = neg_b.multiply(&polys[m - 1]);
        if m >= n {
            let rel = (log_scales[m - n] - log_scales[m - 1]).exp();
            let tail = family.a.multiply(&polys[m - n]).scale(Complex64::new(rel, 0.0));
            t = t.sub(&tail);
        }
        let mut lg = log_scales[m - 1];
        if rescale_from.is_some_and(|from| m > from) {
            let mx = t.max_coeff_magnitude();
            if mx > 0.0 {
                t = t.scale(Complex64::new(1.0 / mx, 0.0));
                lg += mx.ln();
            }
        }
        polys.push(t);
        log_scales.push(lg);
    }
    HSequence {
        family: family.clone(),
        polys,
        log_scales,
    }
}

/// Independent oracle: coefficients of the formal reciprocal of `D(t,z)` by
/// power-series long division in `t`, with polynomial coefficients in `z`.
pub fn series_oracle(family: &TrinomialFamily, m_max: usize) -> HSequence {
    series_oracle_with_rescale(family, m_max, Some(RESCALE_FROM))
}

/// As [`series_oracle`], with explicit control of the rescale point.
pub fn series_oracle_with_rescale(
    family: &TrinomialFamily,
    m_max: usize,
    rescale_from: Option<usize>,
) -> HSequence {
    let n = family.n;
    // Remainder coefficients of t^m for the running numerator; dividing by
    // D(t,z) with constant term 1 peels one order per step.
    let mut remainder: Vec<ComplexPolynomial> = vec![ComplexPolynomial::zero(); m_max + n + 1];
    remainder[0] = ComplexPolynomial::one();
    let mut polys = Vec::with_capacity(m_max + 1);
    let mut log_scales = Vec::with_capacity(m_max + 1);
    let mut running_log = 0.0;
    for m in 0..=m_max {
        let mut h = remainder[m].clone();
        let mut lg = running_log;
        if rescale_from.is_some_and(|from| m > from) {
            let mx = h.max_coeff_magnitude();
            if mx > 0.0 {
                let s = Complex64::new(1.0 / mx, 0.0);
                h = h.scale(s);
                lg += mx.ln();
                for entry in remainder.iter_mut().skip(m + 1) {
                    *entry = entry.scale(s);
                }
                running_log += mx.ln();
            }
        }
        // subtract h * t^m * D(t,z): the t^m term cancels, B and A land
        // at offsets 1 and n
        let b_part = h.multiply(&family.b);
        remainder[m + 1] = remainder[m + 1].sub(&b_part);
        let a_part = h.multiply(&family.a);
        remainder[m + n] = remainder[m + n].sub(&a_part);
        polys.push(h);
        log_scales.push(lg);
    }
    HSequence {
        family: family.clone(),
        polys,
        log_scales,
    }
}

/// Evaluates `H_m(z)` and `H_m'(z)` directly through the value recurrence,
/// never touching the monomial coefficient representation.
///
/// For large `m` the coefficients of `H_m` span many orders of magnitude and
/// no longer determine the outer roots in double precision; the forward
/// recurrence stays well conditioned on and near the root locus, so the
/// simultaneous solver runs on this evaluator instead. The reported scale is
/// a running magnitude majorant, the natural noise floor for residuals.
#[derive(Clone, Debug)]
pub struct HmEvaluator<'a> {
    family: &'a TrinomialFamily,
    m: usize,
    degree: usize,
    da: ComplexPolynomial,
    db: ComplexPolynomial,
}

impl<'a> HmEvaluator<'a> {
    /// `degree` is the actual degree of `H_m`, known to the caller from the
    /// generated coefficients.
    pub fn new(family: &'a TrinomialFamily, m: usize, degree: usize) -> Self {
        Self {
            family,
            m,
            degree,
            da: family.a.derivative(),
            db: family.b.derivative(),
        }
    }
}

impl PolyEvaluator for HmEvaluator<'_> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval_sample(&self, z: Complex64) -> EvalSample {
        let n = self.family.n;
        // The scale recurrence needs the coefficient-evaluation majorants
        // `sum |c_k| |z|^k` of A and B, not just |A(z)| and |B(z)|: at a root
        // of B the evaluated value sits at its own rounding floor, and a
        // majorant built from it alone would track the vanishing value
        // instead of the noise that produced it.
        let (a, a_maj) = self.family.a.eval_with_majorant(z);
        let (b, b_maj) = self.family.b.eval_with_majorant(z);
        let da = self.da.eval(z);
        let db = self.db.eval(z);
        let neg_b = -b;
        let neg_db = -db;

        // Sliding windows over the last n values of H, H', and the majorant.
        let zero = Complex64::new(0.0, 0.0);
        let mut h = vec![zero; n];
        let mut dh = vec![zero; n];
        let mut e = vec![0.0f64; n];
        h[0] = Complex64::new(1.0, 0.0);
        e[0] = 1.0;
        for k in 1..n {
            h[k] = h[k - 1] * neg_b;
            dh[k] = dh[k - 1] * neg_b + h[k - 1] * neg_db;
            e[k] = e[k - 1] * b.norm() + b_maj * h[k - 1].norm() + h[k].norm();
        }
        if self.m < n {
            return EvalSample {
                value: h[self.m],
                derivative: dh[self.m],
                scale: e[self.m],
            };
        }
        let (bn, an) = (b.norm(), a.norm());
        for k in n..=self.m {
            let iprev = (k - 1) % n;
            let islot = k % n; // holds H_{k-n}; overwritten with H_k
            let hk = neg_b * h[iprev] - a * h[islot];
            let dhk = neg_db * h[iprev] + neg_b * dh[iprev] - da * h[islot] - a * dh[islot];
            let ek = bn * e[iprev]
                + an * e[islot]
                + b_maj * h[iprev].norm()
                + a_maj * h[islot].norm()
                + hk.norm();
            h[islot] = hk;
            dh[islot] = dhk;
            e[islot] = ek;
            // Joint rescale keeps the window in range; the Newton ratio and
            // the value/scale residual are scale invariant.
            let mx = ek.max(dhk.norm());
            if mx > 1e120 || (mx > 0.0 && mx < 1e-120) {
                let s = 1.0 / mx;
                for t in 0..n {
                    h[t] *= s;
                    dh[t] *= s;
                    e[t] *= s;
                }
            }
        }
        let i = self.m % n;
        EvalSample {
            value: h[i],
            derivative: dh[i],
            scale: e[i],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Degree;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn family(a: &[f64], b: &[f64], n: usize) -> TrinomialFamily {
        TrinomialFamily::new(
            ComplexPolynomial::from_real(a),
            ComplexPolynomial::from_real(b),
            n,
        )
        .unwrap()
    }

    #[test]
    fn family_validation() {
        assert!(matches!(
            TrinomialFamily::new(
                ComplexPolynomial::one(),
                ComplexPolynomial::one(),
                1
            ),
            Err(Error::UnsupportedN { .. })
        ));
        assert!(matches!(
            TrinomialFamily::new(
                ComplexPolynomial::zero(),
                ComplexPolynomial::one(),
                2
            ),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn constant_family_matches_series() {
        // 1/(1 + t + t^2) = 1 - t + t^3 - t^4 + ...
        let fam = family(&[1.0], &[1.0], 2);
        let hs = h_sequence(&fam, 4);
        let expect = [1.0, -1.0, 0.0, 1.0, -1.0];
        for (m, want) in expect.iter().enumerate() {
            assert_eq!(hs.poly(m), &ComplexPolynomial::from_real(&[*want]), "m={m}");
        }
        assert_eq!(hs.poly(0), &ComplexPolynomial::one());
    }

    #[test]
    fn chebyshev_family_h2() {
        // (A=1, B=z, n=2): H_2 = z^2 - 1
        let fam = family(&[1.0], &[0.0, 1.0], 2);
        let hs = h_sequence(&fam, 2);
        assert_eq!(hs.poly(2), &ComplexPolynomial::from_real(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn series_oracle_known_expansions() {
        let fam = family(&[1.0], &[1.0], 2);
        let hs = series_oracle(&fam, 5);
        let expect = [1.0, -1.0, 0.0, 1.0, -1.0, 0.0];
        for (m, want) in expect.iter().enumerate() {
            assert_eq!(hs.poly(m), &ComplexPolynomial::from_real(&[*want]), "m={m}");
        }

        // 1/(1 + t^3) is geometric in -t^3
        let fam = family(&[1.0], &[], 3);
        let hs = series_oracle(&fam, 6);
        let expect = [1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 1.0];
        for (m, want) in expect.iter().enumerate() {
            assert_eq!(hs.poly(m), &ComplexPolynomial::from_real(&[*want]), "m={m}");
        }
    }

    #[test]
    fn specialization_examples() {
        let fam = family(&[1.0], &[0.0, 1.0], 2);
        assert_eq!(
            fam.specialize_denominator(r(1.0)),
            ComplexPolynomial::from_real(&[1.0, 1.0, 1.0])
        );

        // the worked-example family at a=2, z0=1: B(1) = 1, A(1) = 1
        let fam = family(&[0.0, 0.0, 1.0], &[2.0, -2.0, 1.0], 2);
        assert_eq!(
            fam.specialize_denominator(r(1.0)),
            ComplexPolynomial::from_real(&[1.0, 1.0, 1.0])
        );

        let fam = family(&[1.0], &[], 4);
        assert_eq!(
            fam.specialize_denominator(r(7.5)),
            ComplexPolynomial::from_real(&[1.0, 0.0, 0.0, 0.0, 1.0])
        );
    }

    #[test]
    fn evaluator_matches_coefficients_at_small_m() {
        let fam = family(&[0.5, 0.0, 1.0], &[1.0, -2.0, 0.25], 3);
        let hs = h_sequence(&fam, 12);
        for m in [0usize, 1, 2, 5, 12] {
            let deg = hs.poly(m).degree().finite().unwrap_or(0);
            let ev = HmEvaluator::new(&fam, m, deg);
            for &z in &[r(0.3), Complex64::new(-0.7, 0.4), Complex64::new(1.1, -2.0)] {
                let sample = ev.eval_sample(z);
                let direct = hs.poly(m).eval(z);
                let dderiv = hs.poly(m).derivative().eval(z);
                assert!(
                    (sample.value - direct).norm() <= 1e-10 * (1.0 + sample.scale),
                    "value mismatch at m={m}"
                );
                assert!(
                    (sample.derivative - dderiv).norm() <= 1e-9 * (1.0 + sample.scale),
                    "derivative mismatch at m={m}"
                );
            }
        }
    }

    #[test]
    fn rescaling_records_log_scales() {
        // growth family: coefficients explode without rescaling
        let fam = family(&[0.0, 0.0, 1.0], &[2.0, -2.0, 1.0], 2);
        let hs = h_sequence(&fam, 80);
        assert!(hs.log_scale(80) > 0.0);
        assert!(hs.poly(80).max_coeff_magnitude() <= 1.0 + 1e-12);
        // below the threshold nothing is touched
        assert_eq!(hs.log_scale(RESCALE_FROM), 0.0);
        assert_eq!(hs.poly(2).degree(), Degree::Finite(4));
    }
}
