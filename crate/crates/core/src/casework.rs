//! The worked example family `D(t, z) = 1 + (z^2 - 2z + a) t + z^2 t^2`:
//! regime classification in the real parameter `a`, explicit predicted loci,
//! and cross-checks of those predictions against the generic pipeline.

use num_complex::Complex64;

use crate::curves::{verify_theorem, LocusReport};
use crate::error::Result;
use crate::genfun::TrinomialFamily;
use crate::poly::ComplexPolynomial;

/// The three root-distribution regimes of the example family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeKind {
    /// `a <= 0`: the real set `(x^2 + a)(x^2 - 4x + a) <= 0`, two intervals.
    TwoRealIntervals,
    /// `0 < a <= 4`: half circle `x^2 + y^2 = a`, `x >= 0`, plus the real
    /// interval `x^2 - 4x + a <= 0`.
    HalfCircleAndInterval,
    /// `a > 4`: the arcs of `x^2 + y^2 = a` with `0 <= x <= 2`.
    TwoArcs,
}

/// A piece of the predicted locus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Component {
    CircleArc { radius: f64, x_min: f64, x_max: f64 },
    RealInterval { lo: f64, hi: f64 },
}

/// Classification of the example family at one parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleRegime {
    pub a: f64,
    pub kind: RegimeKind,
    pub components: Vec<Component>,
}

/// Splits parameter space at `a = 0` and `a = 4` — exactly the roots of the
/// double discriminant — and lists the predicted locus components.
pub fn classify_regime(a: f64) -> ExampleRegime {
    if a <= 0.0 {
        let s = (-a).sqrt();
        let t = (4.0 - a).sqrt();
        ExampleRegime {
            a,
            kind: RegimeKind::TwoRealIntervals,
            components: vec![
                Component::RealInterval { lo: -s, hi: 2.0 - t },
                Component::RealInterval { lo: s, hi: 2.0 + t },
            ],
        }
    } else if a <= 4.0 {
        let r = a.sqrt();
        let t = (4.0 - a).sqrt();
        ExampleRegime {
            a,
            kind: RegimeKind::HalfCircleAndInterval,
            components: vec![
                Component::CircleArc {
                    radius: r,
                    x_min: 0.0,
                    x_max: r,
                },
                Component::RealInterval {
                    lo: 2.0 - t,
                    hi: 2.0 + t,
                },
            ],
        }
    } else {
        ExampleRegime {
            a,
            kind: RegimeKind::TwoArcs,
            components: vec![Component::CircleArc {
                radius: a.sqrt(),
                x_min: 0.0,
                x_max: 2.0,
            }],
        }
    }
}

/// The example family itself: `A = z^2`, `B = z^2 - 2z + a`, `n = 2`.
pub fn example_family(a: f64) -> TrinomialFamily {
    TrinomialFamily::new(
        ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]),
        ComplexPolynomial::from_real(&[a, -2.0, 1.0]),
        2,
    )
    .expect("the example family is always valid")
}

/// The factor `Q = y (x^2 + y^2 - a)` whose vanishing puts `B^2/A` on the
/// real axis for this family.
pub fn q_factor(a: f64, z: Complex64) -> f64 {
    z.im * (z.norm_sqr() - a)
}

/// Distance-like residual of `z` to the predicted locus for parameter `a`:
/// the minimum over components, where circle arcs charge `||z|^2 - a|` plus
/// any x-constraint excess, and real intervals charge `|Im z|` plus the
/// violation of the defining polynomial inequality.
pub fn example_locus_residual(a: f64, z: Complex64) -> f64 {
    let regime = classify_regime(a);
    let (x, y) = (z.re, z.im);
    let mut best = f64::INFINITY;
    for comp in &regime.components {
        let r = match comp {
            Component::CircleArc { x_min, x_max, .. } => {
                (z.norm_sqr() - a).abs() + (x_min - x).max(0.0) + (x - x_max).max(0.0)
            }
            Component::RealInterval { .. } => {
                let p = match regime.kind {
                    RegimeKind::TwoRealIntervals => (x * x + a) * (x * x - 4.0 * x + a),
                    _ => x * x - 4.0 * x + a,
                };
                y.abs() + p.max(0.0)
            }
        };
        best = best.min(r);
    }
    best
}

/// Outcome of running the generic verifier on the example family and then
/// re-checking every accepted root against the regime-specific locus.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub regime: ExampleRegime,
    pub locus: LocusReport,
    /// Regime-specific residuals of the accepted roots, in record order.
    pub example_residuals: Vec<f64>,
    pub max_example_residual: f64,
    /// Generic verification passed and every accepted root sits within `tol`
    /// of the predicted regime locus.
    pub passed: bool,
}

/// Builds the example family at `a`, runs [`verify_theorem`] for `H_m`, and
/// evaluates [`example_locus_residual`] on each accepted root.
pub fn cross_check(a: f64, m: usize, tol: f64) -> Result<CrossCheckReport> {
    let family = example_family(a);
    let locus = verify_theorem(&family, m, tol)?;
    let example_residuals: Vec<f64> = locus
        .records
        .iter()
        .filter(|rec| rec.residual.is_some())
        .map(|rec| example_locus_residual(a, rec.z))
        .collect();
    let max_example_residual = example_residuals.iter().copied().fold(0.0, f64::max);
    let passed = locus.passed && max_example_residual <= tol;
    Ok(CrossCheckReport {
        regime: classify_regime(a),
        locus,
        example_residuals,
        max_example_residual,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_examples() {
        let r = classify_regime(2.0);
        assert_eq!(r.kind, RegimeKind::HalfCircleAndInterval);
        let s = 2.0f64.sqrt();
        assert_eq!(
            r.components[1],
            Component::RealInterval {
                lo: 2.0 - s,
                hi: 2.0 + s
            }
        );

        let r = classify_regime(-1.0);
        assert_eq!(r.kind, RegimeKind::TwoRealIntervals);
        let t = 5.0f64.sqrt();
        assert_eq!(
            r.components,
            vec![
                Component::RealInterval { lo: -1.0, hi: 2.0 - t },
                Component::RealInterval { lo: 1.0, hi: 2.0 + t }
            ]
        );

        let r = classify_regime(5.0);
        assert_eq!(r.kind, RegimeKind::TwoArcs);
        assert_eq!(
            r.components,
            vec![Component::CircleArc {
                radius: 5.0f64.sqrt(),
                x_min: 0.0,
                x_max: 2.0
            }]
        );
    }

    #[test]
    fn regime_boundaries_are_exact() {
        assert_eq!(classify_regime(0.0).kind, RegimeKind::TwoRealIntervals);
        assert_eq!(classify_regime(1e-300).kind, RegimeKind::HalfCircleAndInterval);
        assert_eq!(classify_regime(4.0).kind, RegimeKind::HalfCircleAndInterval);
        assert_eq!(
            classify_regime(4.0 + 1e-12).kind,
            RegimeKind::TwoArcs
        );
    }

    #[test]
    fn residual_examples() {
        let z = Complex64::new(1.0, 1.0);
        assert!(example_locus_residual(2.0, z) < 1e-15);
        assert_eq!(example_locus_residual(2.0, Complex64::new(2.0, 0.0)), 0.0);
        let excess = example_locus_residual(5.0, Complex64::new(5.0f64.sqrt(), 0.0));
        assert!((excess - (5.0f64.sqrt() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn q_factor_vanishes_on_circle_and_axis() {
        assert_eq!(q_factor(2.0, Complex64::new(1.0, 1.0)), 0.0);
        assert_eq!(q_factor(3.0, Complex64::new(0.25, 0.0)), 0.0);
        assert!(q_factor(1.0, Complex64::new(1.0, 1.0)) > 0.0);
    }

    #[test]
    fn example_family_shape() {
        let fam = example_family(2.0);
        assert_eq!(fam.n(), 2);
        assert_eq!(fam.a().degree().finite(), Some(2));
        let b0 = fam.b().coeff(0);
        assert_eq!((b0.re, b0.im), (2.0, 0.0));
    }
}
