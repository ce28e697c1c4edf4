//! Simultaneous complex root finding (Aberth-Ehrlich) with Newton polishing,
//! deflation of exact-zero edge coefficients, and residual certification.
//!
//! The solver iterates on any [`PolyEvaluator`], so callers with a better
//! conditioned way to evaluate a polynomial than its monomial coefficients
//! (see `genfun::HmEvaluator`) get the same machinery.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;

/// Refuse degrees past this cap; keeps desk-scale guarantees honest.
pub const DEGREE_CAP: usize = 2000;

/// Solver knobs. Convergence is declared when the per-root correction drops
/// to `1e-14 * (1 + |root|)` or the value hits its rounding-noise floor.
#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub max_iter: usize,
    pub cluster_radius: f64,
    pub certify_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            cluster_radius: 1e-6,
            certify_tol: 1e-8,
        }
    }
}

/// One evaluation: value, derivative, and a magnitude majorant used as the
/// scale for residuals and stagnation detection.
#[derive(Clone, Copy, Debug)]
pub struct EvalSample {
    pub value: Complex64,
    pub derivative: Complex64,
    pub scale: f64,
}

/// Anything the simultaneous solver can iterate on.
pub trait PolyEvaluator {
    fn degree(&self) -> usize;
    fn eval_sample(&self, z: Complex64) -> EvalSample;
}

fn sample_is_finite(s: &EvalSample) -> bool {
    s.value.re.is_finite()
        && s.value.im.is_finite()
        && s.derivative.re.is_finite()
        && s.derivative.im.is_finite()
        && s.scale.is_finite()
}

/// Straightforward Horner evaluator over monomial coefficients.
pub struct CoefficientEvaluator<'a> {
    p: &'a ComplexPolynomial,
    dp: ComplexPolynomial,
}

impl<'a> CoefficientEvaluator<'a> {
    pub fn new(p: &'a ComplexPolynomial) -> Self {
        Self {
            p,
            dp: p.derivative(),
        }
    }
}

impl PolyEvaluator for CoefficientEvaluator<'_> {
    fn degree(&self) -> usize {
        self.p.degree().finite().unwrap_or(0)
    }

    fn eval_sample(&self, z: Complex64) -> EvalSample {
        let (value, scale) = self.p.eval_with_majorant(z);
        EvalSample {
            value,
            derivative: self.dp.eval(z),
            scale,
        }
    }
}

/// Roots with residuals (`|p(root)| / scale`) and cluster tags grouping roots
/// closer than the cluster radius; sorted by (real, imaginary).
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub cluster_tags: Vec<usize>,
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Points on the circle of the given radius at angles `2 pi k / d + 0.4`;
/// the offset breaks symmetry for real-coefficient inputs.
pub fn initial_guesses(degree: usize, radius: f64) -> Vec<Complex64> {
    (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::new(radius * theta.cos(), radius * theta.sin())
        })
        .collect()
}

/// Fujiwara root-magnitude bound `2 max_k |c_{d-k}/c_d|^{1/k}`, much tighter
/// than the Cauchy bound when coefficients span many orders of magnitude.
pub fn fujiwara_bound(p: &ComplexPolynomial) -> f64 {
    let Some(d) = p.degree().finite() else {
        return 1.0;
    };
    if d == 0 {
        return 1.0;
    }
    let cd = p.coeff(d).norm();
    let mut best = 0.0f64;
    for k in 1..=d {
        let ck = p.coeff(d - k).norm();
        if ck > 0.0 {
            best = best.max((ck / cd).powf(1.0 / k as f64));
        }
    }
    if best > 0.0 {
        2.0 * best
    } else {
        1.0
    }
}

/// Finds all `deg p` roots of `p`.
///
/// Exact-zero low-order coefficients are deflated first and contribute exact
/// roots at the origin; initial guesses sit on the circle of radius
/// `sqrt(1 + max |c_k / c_d|)`. Vieta sum/product identities certify the
/// output.
pub fn find_roots(p: &ComplexPolynomial, opts: &SolverOptions) -> Result<RootSet> {
    let deg = p.degree().finite().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::DegreeTooLow("root finding requires degree >= 1"));
    }
    if deg > DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: deg,
            cap: DEGREE_CAP,
        });
    }

    let zeros = p
        .coeffs()
        .iter()
        .take_while(|c| c.re == 0.0 && c.im == 0.0)
        .count();
    let deflated = ComplexPolynomial::new(p.coeffs()[zeros..].to_vec());
    let d_eff = deflated.degree().finite().expect("nonzero by construction");

    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let mut residuals = vec![0.0f64; zeros];
    if d_eff > 0 {
        let cd = deflated.coeff(d_eff);
        let cauchy = 1.0
            + deflated
                .coeffs()
                .iter()
                .map(|c| (c / cd).norm())
                .fold(0.0, f64::max);
        let guesses = initial_guesses(d_eff, cauchy.sqrt());
        let ev = CoefficientEvaluator::new(&deflated);
        let (z, res) = solve_simultaneous(&ev, guesses, 0, opts)?;
        vieta_certificates(&deflated, &z, opts.certify_tol)?;
        roots.extend(z);
        residuals.extend(res);
    }
    Ok(assemble(roots, residuals, opts.cluster_radius))
}

/// Runs the simultaneous solver on an arbitrary evaluator.
///
/// The first `frozen` guesses are taken to be exactly known roots and are
/// never moved (they still repel the others). No Vieta check is applied here;
/// callers with coefficient access can run [`vieta_certificates`] themselves.
pub fn find_roots_with<E: PolyEvaluator>(
    ev: &E,
    guesses: Vec<Complex64>,
    frozen: usize,
    opts: &SolverOptions,
) -> Result<RootSet> {
    let (roots, residuals) = solve_simultaneous(ev, guesses, frozen, opts)?;
    Ok(assemble(roots, residuals, opts.cluster_radius))
}

/// Vieta sum/product certificates for a claimed complete root list.
///
/// The product identity is checked in log space so degrees in the hundreds
/// cannot overflow the comparison.
pub fn vieta_certificates(
    p: &ComplexPolynomial,
    roots: &[Complex64],
    tol: f64,
) -> Result<()> {
    let d = p.degree().finite().ok_or(Error::ZeroPolynomial)?;
    if d != roots.len() {
        return Err(Error::CertificationFailed {
            check: "root count",
            error: roots.len() as f64,
            tolerance: d as f64,
        });
    }
    if d == 0 {
        return Ok(());
    }
    let cd = p.coeff(d);

    let sum: Complex64 = roots.iter().sum();
    let target_sum = -p.coeff(d - 1) / cd;
    let scale_sum = 1.0 + roots.iter().map(|r| r.norm()).sum::<f64>() + target_sum.norm();
    let sum_err = (sum - target_sum).norm();
    if sum_err > tol * scale_sum {
        return Err(Error::CertificationFailed {
            check: "vieta sum",
            error: sum_err,
            tolerance: tol * scale_sum,
        });
    }

    let target = p.coeff(0) / cd * if d % 2 == 1 { -1.0 } else { 1.0 };
    if target.norm() > 0.0 && roots.iter().all(|r| r.norm() > 0.0) {
        let ln_target = target.norm().ln();
        let ln_sum: f64 = roots.iter().map(|r| r.norm().ln()).sum();
        let mut darg = roots.iter().map(|r| r.arg()).sum::<f64>() - target.arg();
        let tau = 2.0 * std::f64::consts::PI;
        darg = darg.rem_euclid(tau);
        if darg > std::f64::consts::PI {
            darg -= tau;
        }
        let lim = tol * (1.0 + ln_target.abs() + d as f64 * 0.1);
        let log_err = (ln_sum - ln_target).abs().max(darg.abs());
        if log_err > lim {
            return Err(Error::CertificationFailed {
                check: "vieta product",
                error: log_err,
                tolerance: lim,
            });
        }
    }
    Ok(())
}

/// Sequential Aberth-Ehrlich sweeps, then a short monotone Newton polish.
/// Returns unsorted roots and residuals.
///
/// No per-point freezing: every point keeps moving until the whole
/// configuration settles, so two approximants cannot quietly park on the same
/// simple root while another goes unclaimed — the mutual repulsion stays
/// active until the sweep-wide convergence test passes.
fn solve_simultaneous<E: PolyEvaluator>(
    ev: &E,
    guesses: Vec<Complex64>,
    frozen_prefix: usize,
    opts: &SolverOptions,
) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let d = guesses.len();
    if d == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut z = guesses;

    let mut iterations = 0;
    for it in 0..opts.max_iter {
        iterations = it + 1;
        let mut all_done = true;
        for i in frozen_prefix..d {
            let s = ev.eval_sample(z[i]);
            if !sample_is_finite(&s) {
                // evaluation overflowed this far out; pull in deterministically
                z[i] *= 0.75;
                all_done = false;
                continue;
            }
            if s.derivative.norm() == 0.0 {
                // nudge off the critical point, deterministically
                let step = 1e-6 * (1.0 + z[i].norm());
                z[i] += Complex64::new(step, 0.0);
                all_done = false;
                continue;
            }
            let newton = s.value / s.derivative;
            if !newton.re.is_finite() || !newton.im.is_finite() {
                z[i] *= 0.75;
                all_done = false;
                continue;
            }
            let collapse_eps = 1e-12 * (1.0 + z[i].norm());
            let mut repulsion = Complex64::new(0.0, 0.0);
            let mut collapsed = false;
            for j in 0..d {
                if j == i {
                    continue;
                }
                let diff = z[i] - z[j];
                if diff.norm() <= collapse_eps {
                    collapsed = true;
                    continue;
                }
                repulsion += diff.inv();
            }
            if collapsed {
                // Approximants merged — typically a cluster chasing one
                // multiple root (e.g. the B-roots, which H_m inherits with
                // multiplicity m mod n). A merged cluster sitting where the
                // value is at the evaluation noise floor is the answer: the
                // root really is multiple and every member belongs there.
                if s.value.norm() <= 1e-12 * s.scale {
                    continue;
                }
                // Otherwise the cluster stalled off-root (mutual repulsion
                // cancels the Aberth correction). Re-seed this member on a
                // small circle with an index-dependent direction so the
                // cluster re-separates and can straddle the root. The Newton
                // step sets the scale when it is trustworthy, but both H and
                // H' vanish at a multiple root, so cap it: near the root the
                // step is a noise/noise ratio of arbitrary size.
                let radius = newton
                    .norm()
                    .clamp(16.0 * collapse_eps, 1024.0 * collapse_eps);
                let angle = std::f64::consts::TAU * (i as f64) / (d as f64);
                z[i] += Complex64::from_polar(radius, angle);
                all_done = false;
                continue;
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let correction = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
            z[i] -= correction;
            if correction.norm() > 1e-14 * (1.0 + z[i].norm()) {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    // Newton polish: accept steps only while the value magnitude improves.
    let mut residuals = vec![0.0f64; d];
    for i in 0..d {
        let mut s = ev.eval_sample(z[i]);
        if i >= frozen_prefix && sample_is_finite(&s) {
            for _ in 0..3 {
                if s.derivative.norm() == 0.0 {
                    break;
                }
                let cand = z[i] - s.value / s.derivative;
                let cs = ev.eval_sample(cand);
                if sample_is_finite(&cs) && cs.value.norm() < s.value.norm() {
                    z[i] = cand;
                    s = cs;
                } else {
                    break;
                }
            }
        }
        residuals[i] = if s.scale > 0.0 && s.scale.is_finite() {
            s.value.norm() / s.scale
        } else if s.value.norm() == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }

    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if worst > opts.certify_tol {
        return Err(Error::NonConvergence {
            iterations,
            max_residual: worst,
            roots: z,
            residuals,
        });
    }
    Ok((z, residuals))
}

/// Sorts by (real, imaginary) and groups roots into clusters: connected
/// components of the "within cluster radius" relation, tagged in order of
/// first appearance.
fn assemble(roots: Vec<Complex64>, residuals: Vec<f64>, cluster_radius: f64) -> RootSet {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| {
        roots[i]
            .re
            .total_cmp(&roots[j].re)
            .then(roots[i].im.total_cmp(&roots[j].im))
    });
    let sorted_roots: Vec<Complex64> = order.iter().map(|&i| roots[i]).collect();
    let sorted_residuals: Vec<f64> = order.iter().map(|&i| residuals[i]).collect();

    let d = sorted_roots.len();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..d {
        for j in (i + 1)..d {
            // sorted by re: once re gaps exceed the radius, no later j links
            if sorted_roots[j].re - sorted_roots[i].re > cluster_radius {
                break;
            }
            if (sorted_roots[i] - sorted_roots[j]).norm() <= cluster_radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = rj.min(ri);
                }
            }
        }
    }
    let mut tags = vec![usize::MAX; d];
    let mut next_tag = 0usize;
    for i in 0..d {
        let root = find(&mut parent, i);
        if tags[root] == usize::MAX {
            tags[root] = next_tag;
            next_tag += 1;
        }
        tags[i] = tags[root];
    }

    RootSet {
        roots: sorted_roots,
        residuals: sorted_residuals,
        cluster_tags: tags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{h_sequence, TrinomialFamily};

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn classic_pair() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]);
        let rs = find_roots(&p, &SolverOptions::default()).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((rs.roots[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(rs.max_residual() <= 1e-8);
    }

    #[test]
    fn double_root_is_clustered() {
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        let p = ComplexPolynomial::from_real(&[2.0, -3.0, 0.0, 1.0]);
        let rs = find_roots(&p, &SolverOptions::default()).unwrap();
        assert_eq!(rs.roots.len(), 3);
        assert!((rs.roots[0] - r(-2.0)).norm() < 1e-8);
        assert!((rs.roots[1] - r(1.0)).norm() < 1e-6);
        assert!((rs.roots[2] - r(1.0)).norm() < 1e-6);
        assert_eq!(rs.cluster_tags[1], rs.cluster_tags[2]);
        assert_ne!(rs.cluster_tags[0], rs.cluster_tags[1]);
    }

    #[test]
    fn chebyshev_h10_roots() {
        // 1/(1 + z t + t^2) generates (-1)^m U_m(z/2): roots 2 cos(k pi / 11)
        let fam = TrinomialFamily::new(
            ComplexPolynomial::from_real(&[1.0]),
            ComplexPolynomial::from_real(&[0.0, 1.0]),
            2,
        )
        .unwrap();
        let hs = h_sequence(&fam, 10);
        let rs = find_roots(hs.poly(10), &SolverOptions::default()).unwrap();
        let mut expected: Vec<f64> = (1..=10)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / 11.0).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (root, want) in rs.roots.iter().zip(expected) {
            assert!((root - r(want)).norm() < 1e-10, "{root} vs {want}");
            // cross-check against the Chebyshev evaluation oracle
            let u = crate::poly::chebyshev_u(10, *root * 0.5);
            assert!(u.norm() < 1e-8);
        }
    }

    #[test]
    fn trailing_zeros_become_origin_roots() {
        // t^2 + t^3 has roots {0, 0, -1}
        let p = ComplexPolynomial::from_real(&[0.0, 0.0, 1.0, 1.0]);
        let rs = find_roots(&p, &SolverOptions::default()).unwrap();
        assert_eq!(rs.roots.len(), 3);
        assert!((rs.roots[0] - r(-1.0)).norm() < 1e-12);
        assert_eq!(rs.roots[1], r(0.0));
        assert_eq!(rs.roots[2], r(0.0));
        assert_eq!(rs.cluster_tags[1], rs.cluster_tags[2]);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(
            find_roots(&ComplexPolynomial::zero(), &SolverOptions::default()),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            find_roots(&ComplexPolynomial::one(), &SolverOptions::default()),
            Err(Error::DegreeTooLow(_))
        ));
        let too_big = ComplexPolynomial::monomial(r(1.0), DEGREE_CAP + 1);
        assert!(matches!(
            find_roots(&too_big, &SolverOptions::default()),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn determinism() {
        let p = ComplexPolynomial::from_real(&[0.3, -1.2, 0.0, 2.0, 1.0]);
        let a = find_roots(&p, &SolverOptions::default()).unwrap();
        let b = find_roots(&p, &SolverOptions::default()).unwrap();
        assert_eq!(a.roots, b.roots);
        assert_eq!(a.residuals, b.residuals);
        assert_eq!(a.cluster_tags, b.cluster_tags);
    }
}
