//! The loci that roots and root quotients trace: root loci in the z-plane
//! (`Im B^n/A = 0` with `(-1)^n Re B^n/A` in `[0, n^n/(n-1)^{n-1}]`), quotient
//! loci in the q-plane, the f(q) maps connecting them, locus sampling, and
//! density statistics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::genfun::{h_sequence, HmEvaluator, TrinomialFamily};
use crate::poly::ComplexPolynomial;
use crate::rootfind::{
    find_roots, find_roots_with, fujiwara_bound, initial_guesses, vieta_certificates,
    SolverOptions, DEGREE_CAP,
};

/// Coefficient of the A-filter: roots with
/// `|A(z)| <= 1e-8 (1 + |z|)^{deg A}` are excluded from residual claims.
pub const A_FILTER_COEFF: f64 = 1e-8;

/// Locus samples produced by [`sample_locus`] must sit within this residual.
pub const SAMPLE_RESIDUAL_TOL: f64 = 1e-8;

/// The filter threshold below which `A(z)` counts as vanishing.
pub fn a_filter_threshold(family: &TrinomialFamily, z: Complex64) -> f64 {
    let deg_a = family.a().degree().finite().unwrap_or(0);
    A_FILTER_COEFF * (1.0 + z.norm()).powi(deg_a as i32)
}

/// `B^n(z) / A(z)`; errors when `A(z)` is inside the filter threshold.
pub fn ratio(family: &TrinomialFamily, z: Complex64) -> Result<Complex64> {
    let a = family.a().eval(z);
    if a.norm() <= a_filter_threshold(family, z) {
        return Err(Error::AVanishes {
            re: z.re,
            im: z.im,
            magnitude: a.norm(),
        });
    }
    let b = family.b().eval(z);
    Ok(b.powu(family.n() as u32) / a)
}

/// Right endpoint `n^n / (n-1)^{n-1}` of the locus interval.
pub fn interval_bound(n: usize) -> f64 {
    let nf = n as f64;
    nf.powi(n as i32) / (nf - 1.0).powi(n as i32 - 1)
}

/// Distance-like residual of `z` to the root locus of the family: with
/// `r = B^n/A` and `v = (-1)^n Re r`, the larger of `|Im r|` and the distance
/// of `v` from `[0, n^n/(n-1)^{n-1}]`.
pub fn root_locus_residual(family: &TrinomialFamily, z: Complex64) -> Result<f64> {
    let r = ratio(family, z)?;
    Ok(residual_from_ratio(family.n(), r))
}

fn residual_from_ratio(n: usize, r: Complex64) -> f64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let v = sign * r.re;
    let bound = interval_bound(n);
    let dist = if v < 0.0 {
        -v
    } else if v > bound {
        v - bound
    } else {
        0.0
    };
    r.im.abs().max(dist)
}

/// Distance-like residual of `q` to the quotient locus for n in {2, 3, 4}.
///
/// * n=2: the unit circle.
/// * n=3: minimum over the three branches — circle `(x+1)^2 + y^2 = 1` with
///   `x <= -1/2`; the segment `x = -1/2`, `|y| <= sqrt(3)/2`; the unit circle
///   with `x >= -1/2` — each as curve mismatch plus constraint excess.
/// * n=4: minimum of the quartic `1 + 2x + 2x^2 + 2x^3 + x^4 - 2y^2 + 2xy^2
///   + 2x^2y^2 + y^4` magnitude and the unit-circle branch with `x >= -1/3`.
pub fn quotient_locus_residual(n: usize, q: Complex64) -> Result<f64> {
    let (x, y) = (q.re, q.im);
    match n {
        2 => Ok((q.norm() - 1.0).abs()),
        3 => {
            let b1 = ((x + 1.0).powi(2) + y * y - 1.0).abs() + (x + 0.5).max(0.0);
            let b2 = (x + 0.5).abs() + (y.abs() - 3.0f64.sqrt() / 2.0).max(0.0);
            let b3 = (q.norm_sqr() - 1.0).abs() + (-0.5 - x).max(0.0);
            Ok(b1.min(b2).min(b3))
        }
        4 => {
            let x2 = x * x;
            let y2 = y * y;
            let quartic = 1.0 + 2.0 * x + 2.0 * x2 + 2.0 * x2 * x + x2 * x2 - 2.0 * y2
                + 2.0 * x * y2
                + 2.0 * x2 * y2
                + y2 * y2;
            let arc = (q.norm_sqr() - 1.0).abs() + (-1.0 / 3.0 - x).max(0.0);
            Ok(quartic.abs().min(arc))
        }
        _ => Err(Error::UnsupportedN {
            n,
            supported: "quotient loci are defined for n in {2, 3, 4}",
        }),
    }
}

/// The rational map sending a root quotient `q` to the locus coordinate
/// `B^n/A`:
///
/// * n=2: `q + 1/q + 2`
/// * n=3: `-(1+q+q^2)^3 / (q^2 (1+q)^2)`
/// * n=4: `(1+q+q^2+q^3)^4 / (q^3 (1+q+q^2)^3)`
///
/// Errors on inputs within 1e-12 of a pole.
pub fn f_map(n: usize, q: Complex64) -> Result<Complex64> {
    let pole = |denom: f64| denom <= 1e-12;
    if pole(q.norm()) {
        return Err(Error::PoleInput { re: q.re, im: q.im });
    }
    let one = Complex64::new(1.0, 0.0);
    match n {
        2 => Ok(q + q.inv() + 2.0),
        3 => {
            if pole((one + q).norm()) {
                return Err(Error::PoleInput { re: q.re, im: q.im });
            }
            let s = one + q + q * q;
            Ok(-s.powu(3) / (q * q * (one + q).powu(2)))
        }
        4 => {
            let s2 = one + q + q * q;
            if pole(s2.norm()) {
                return Err(Error::PoleInput { re: q.re, im: q.im });
            }
            let s3 = s2 + q.powu(3);
            Ok(s3.powu(4) / (q.powu(3) * s2.powu(3)))
        }
        _ => Err(Error::UnsupportedN {
            n,
            supported: "f maps are defined for n in {2, 3, 4}",
        }),
    }
}

/// All ordered quotients `t_i / t_j` (i != j) of the roots of the denominator
/// specialized at `z0`, deduplicated within 1e-9 and sorted by
/// (real, imaginary). Errors when `A(z0)` is inside the filter.
pub fn quotients_at_root(family: &TrinomialFamily, z0: Complex64) -> Result<Vec<Complex64>> {
    let a = family.a().eval(z0);
    if a.norm() <= a_filter_threshold(family, z0) {
        return Err(Error::AVanishes {
            re: z0.re,
            im: z0.im,
            magnitude: a.norm(),
        });
    }
    let d = family.specialize_denominator(z0);
    let roots = find_roots(&d, &SolverOptions::default())?.roots;
    let mut quotients = Vec::with_capacity(roots.len() * roots.len());
    for (i, ti) in roots.iter().enumerate() {
        for (j, tj) in roots.iter().enumerate() {
            if i != j {
                quotients.push(ti / tj);
            }
        }
    }
    quotients.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    quotients.dedup_by(|a, b| (*a - *b).norm() <= 1e-9);
    Ok(quotients)
}

/// Rectangular sampling window in the z-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    /// Bounding box of the points, inflated 20% per side with a minimum
    /// half-width of `0.05 (1 + max |z|)` so degenerate (collinear) root sets
    /// still get a two-dimensional search window.
    pub fn around(points: &[Complex64]) -> Option<Self> {
        if points.is_empty() {
            return None;
        }
        let re_min = points.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let re_max = points.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        let im_min = points.iter().map(|z| z.im).fold(f64::INFINITY, f64::min);
        let im_max = points.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
        let max_abs = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let min_half = 0.05 * (1.0 + max_abs);
        let (cx, cy) = (0.5 * (re_min + re_max), 0.5 * (im_min + im_max));
        let hw = (0.6 * (re_max - re_min)).max(min_half);
        let hh = (0.6 * (im_max - im_min)).max(min_half);
        Some(Self {
            re_min: cx - hw,
            re_max: cx + hw,
            im_min: cy - hh,
            im_max: cy + hh,
        })
    }
}

/// One of the loci: a root locus in the z-plane (tied to a family, sampled
/// inside a window) or a fixed quotient locus in the q-plane.
#[derive(Clone, Debug)]
pub enum LocusSpec {
    RootLocus {
        family: TrinomialFamily,
        window: Option<Window>,
    },
    QuotientLocus {
        n: usize,
    },
}

impl LocusSpec {
    pub fn root_locus(family: TrinomialFamily, window: Option<Window>) -> Self {
        LocusSpec::RootLocus { family, window }
    }

    pub fn quotient_locus(n: usize) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedN {
                n,
                supported: "quotient loci are defined for n in {2, 3, 4}",
            });
        }
        Ok(LocusSpec::QuotientLocus { n })
    }
}

/// `count` points covering `[a, b]` inclusive (midpoint when `count == 1`).
fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => (0..count)
            .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Samples up to `k` points of the locus, each within
/// [`SAMPLE_RESIDUAL_TOL`] of it.
///
/// Quotient loci use exact parametrizations (returned in path order). Root
/// loci are found by a sign-change grid scan of `Im B^n/A` over the window,
/// refined by bisection and filtered by the full residual; fewer than `k`
/// points may come back when the locus barely enters the window.
pub fn sample_locus(spec: &LocusSpec, k: usize) -> Result<Vec<Complex64>> {
    if k < 2 {
        return Err(Error::EmptyInput("sample count must be at least 2"));
    }
    match spec {
        LocusSpec::QuotientLocus { n } => sample_quotient_locus(*n, k),
        LocusSpec::RootLocus { family, window } => {
            let window = window.ok_or(Error::EmptyInput(
                "root locus sampling requires a window (none configured)",
            ))?;
            sample_root_locus(family, &window, k)
        }
    }
}

fn unit(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

fn sample_quotient_locus(n: usize, k: usize) -> Result<Vec<Complex64>> {
    let tau = 2.0 * std::f64::consts::PI;
    match n {
        2 => Ok((0..k).map(|j| unit(tau * j as f64 / k as f64)).collect()),
        3 => {
            let k1 = k / 3;
            let k2 = k / 3;
            let k3 = k - k1 - k2;
            let mut out = Vec::with_capacity(k);
            // circle (x+1)^2 + y^2 = 1 restricted to x <= -1/2
            for phi in linspace(tau / 6.0, 5.0 * tau / 6.0, k1) {
                out.push(Complex64::new(-1.0, 0.0) + unit(phi));
            }
            // vertical segment x = -1/2, |y| <= sqrt(3)/2
            let h = 3.0f64.sqrt() / 2.0;
            for y in linspace(-h, h, k2) {
                out.push(Complex64::new(-0.5, y));
            }
            // unit circle restricted to x >= -1/2
            for phi in linspace(-tau / 3.0, tau / 3.0, k3) {
                out.push(unit(phi));
            }
            Ok(out)
        }
        4 => {
            let theta_star = (-1.0f64 / 3.0).acos();
            let kq = k / 2;
            let ka = k - kq;
            let kp = kq / 2;
            let km = kq - kp;
            let mut out = Vec::with_capacity(k);
            // quartic curve via the quadratic-formula parametrization
            for (count, sign) in [(kp, 1.0), (km, -1.0)] {
                for theta in linspace(-theta_star, theta_star, count) {
                    let root = (6.0 * theta.cos() + 2.0).max(0.0).sqrt();
                    let q = (Complex64::new(-1.0, 0.0) - unit(theta)
                        + Complex64::new(0.0, sign) * unit(theta / 2.0) * root)
                        / 2.0;
                    out.push(q);
                }
            }
            // unit-circle arc with real part at least -1/3
            for phi in linspace(-theta_star, theta_star, ka) {
                out.push(unit(phi));
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedN {
            n,
            supported: "quotient loci are defined for n in {2, 3, 4}",
        }),
    }
}

fn sample_root_locus(
    family: &TrinomialFamily,
    window: &Window,
    k: usize,
) -> Result<Vec<Complex64>> {
    let mut grid = 64usize;
    let mut pts;
    loop {
        pts = root_locus_grid_pass(family, window, grid);
        if pts.len() >= k || grid >= 1024 {
            break;
        }
        grid *= 2;
    }
    pts.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    let diag = (window.re_max - window.re_min).hypot(window.im_max - window.im_min);
    pts.dedup_by(|a, b| (*a - *b).norm() <= 1e-12 * (1.0 + diag));
    if pts.len() > k {
        let len = pts.len();
        pts = (0..k).map(|i| pts[i * (len - 1) / (k - 1)]).collect();
    }
    Ok(pts)
}

fn root_locus_grid_pass(family: &TrinomialFamily, window: &Window, grid: usize) -> Vec<Complex64> {
    let xs = linspace(window.re_min, window.re_max, grid + 1);
    let ys = linspace(window.im_min, window.im_max, grid + 1);
    let im_part = |z: Complex64| ratio(family, z).ok().map(|r| r.im);
    let vals: Vec<Vec<Option<f64>>> = ys
        .iter()
        .map(|&y| {
            xs.iter()
                .map(|&x| im_part(Complex64::new(x, y)))
                .collect()
        })
        .collect();
    let on_locus = |z: Complex64| -> Option<Complex64> {
        match root_locus_residual(family, z) {
            Ok(res) if res <= SAMPLE_RESIDUAL_TOL => Some(z),
            _ => None,
        }
    };
    let mut pts = Vec::new();
    let mut scan_edge = |za: Complex64, fa: f64, zb: Complex64, fb: f64| {
        if fa == 0.0 {
            pts.extend(on_locus(za));
            return;
        }
        if fb == 0.0 || (fa < 0.0) == (fb < 0.0) {
            return;
        }
        // bisect the sign change of Im B^n/A along the edge
        let (mut lo, mut hi, mut flo) = (za, zb, fa);
        for _ in 0..60 {
            let mid = (lo + hi) / 2.0;
            let Some(fm) = im_part(mid) else {
                return;
            };
            if fm == 0.0 {
                lo = mid;
                break;
            }
            if (flo < 0.0) != (fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        pts.extend(on_locus((lo + hi) / 2.0));
    };
    for (i, y) in ys.iter().enumerate() {
        for j in 0..grid {
            if let (Some(fa), Some(fb)) = (vals[i][j], vals[i][j + 1]) {
                scan_edge(
                    Complex64::new(xs[j], *y),
                    fa,
                    Complex64::new(xs[j + 1], *y),
                    fb,
                );
            }
        }
    }
    for (j, x) in xs.iter().enumerate() {
        for i in 0..grid {
            if let (Some(fa), Some(fb)) = (vals[i][j], vals[i + 1][j]) {
                if fa != 0.0 {
                    scan_edge(
                        Complex64::new(*x, ys[i]),
                        fa,
                        Complex64::new(*x, ys[i + 1]),
                        fb,
                    );
                }
            }
        }
    }
    pts
}

/// One-sided Hausdorff distance: max over locus samples of the distance to
/// the nearest of the given points. The density proxy for "roots fill the
/// locus as m grows".
pub fn one_sided_hausdorff(points: &[Complex64], spec: &LocusSpec, k: usize) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point set for Hausdorff distance"));
    }
    let samples = sample_locus(spec, k)?;
    if samples.is_empty() {
        return Err(Error::EmptyInput("locus sample set for Hausdorff distance"));
    }
    Ok(samples
        .iter()
        .map(|s| {
            points
                .iter()
                .map(|p| (s - p).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max))
}

/// Per-root outcome inside a [`LocusReport`]: residuals are `None` for roots
/// excluded by the A-filter.
#[derive(Clone, Copy, Debug)]
pub struct RootRecord {
    pub z: Complex64,
    pub a_abs: f64,
    pub residual: Option<f64>,
    pub normalized_residual: Option<f64>,
}

/// Verification outcome for one `(family, m)` pair.
#[derive(Clone, Debug)]
pub struct LocusReport {
    pub m: usize,
    pub n: usize,
    pub total_roots: usize,
    pub filtered_roots: usize,
    /// All roots, sorted by (real, imaginary), including filtered ones.
    pub records: Vec<RootRecord>,
    /// Raw residuals of the accepted roots, in record order.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub max_normalized_residual: f64,
    /// One-sided Hausdorff distance from locus samples (inside the inflated
    /// root bounding box) to the accepted roots; `None` when no roots were
    /// accepted or the sampler found no locus portion.
    pub hausdorff_to_locus: Option<f64>,
    /// True for n=5, where only the conjectured inequality is checked.
    pub conjectural: bool,
    pub tol: f64,
    /// `max_normalized_residual <= tol`.
    pub passed: bool,
}

impl LocusReport {
    pub fn accepted_roots(&self) -> Vec<Complex64> {
        self.records
            .iter()
            .filter(|r| r.residual.is_some())
            .map(|r| r.z)
            .collect()
    }
}

/// Number of locus samples behind `hausdorff_to_locus`.
pub const HAUSDORFF_SAMPLES: usize = 256;

/// Computes `H_m`, finds all of its roots through the recurrence evaluator,
/// filters roots where `A` (numerically) vanishes, and reports locus
/// residuals plus the density statistic.
///
/// `n = 5` runs the conjectured inequality and flags the report as
/// conjectural; `n > 5` is refused.
pub fn verify_theorem(family: &TrinomialFamily, m: usize, tol: f64) -> Result<LocusReport> {
    let n = family.n();
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedN {
            n,
            supported: "theorem verification covers n in {2, 3, 4} plus the n=5 conjecture",
        });
    }
    let hs = h_sequence(family, m);
    let hm = hs.poly(m);
    let Some(deg) = hm.degree().finite() else {
        return Err(Error::InvalidFamily(
            "H_m is identically zero for this family and index",
        ));
    };
    if deg > DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: deg,
            cap: DEGREE_CAP,
        });
    }

    let roots = if deg == 0 {
        Vec::new()
    } else {
        let zeros = hm
            .coeffs()
            .iter()
            .take_while(|c| c.re == 0.0 && c.im == 0.0)
            .count();
        let deflated = ComplexPolynomial::new(hm.coeffs()[zeros..].to_vec());
        let radius = fujiwara_bound(&deflated);
        let mut guesses = vec![Complex64::new(0.0, 0.0); zeros];
        guesses.extend(initial_guesses(deg - zeros, radius));
        let ev = HmEvaluator::new(family, m, deg);
        let opts = SolverOptions {
            max_iter: 400,
            ..SolverOptions::default()
        };
        let rs = find_roots_with(&ev, guesses, zeros, &opts)?;
        vieta_certificates(hm, &rs.roots, opts.certify_tol)?;
        rs.roots
    };

    let mut records = Vec::with_capacity(roots.len());
    let mut residuals = Vec::new();
    let mut accepted = Vec::new();
    let mut max_residual = 0.0f64;
    let mut max_normalized = 0.0f64;
    for z in roots {
        let a_abs = family.a().eval(z).norm();
        match ratio(family, z) {
            Ok(r) => {
                let res = residual_from_ratio(n, r);
                let nres = res / (1.0 + r.norm());
                max_residual = max_residual.max(res);
                max_normalized = max_normalized.max(nres);
                residuals.push(res);
                accepted.push(z);
                records.push(RootRecord {
                    z,
                    a_abs,
                    residual: Some(res),
                    normalized_residual: Some(nres),
                });
            }
            Err(_) => records.push(RootRecord {
                z,
                a_abs,
                residual: None,
                normalized_residual: None,
            }),
        }
    }

    let hausdorff_to_locus = Window::around(&accepted).and_then(|window| {
        let spec = LocusSpec::root_locus(family.clone(), Some(window));
        one_sided_hausdorff(&accepted, &spec, HAUSDORFF_SAMPLES).ok()
    });

    Ok(LocusReport {
        m,
        n,
        total_roots: records.len(),
        filtered_roots: records.len() - accepted.len(),
        residuals,
        max_residual,
        max_normalized_residual: max_normalized,
        hausdorff_to_locus,
        conjectural: n == 5,
        tol,
        passed: max_normalized <= tol,
        records,
    })
}
