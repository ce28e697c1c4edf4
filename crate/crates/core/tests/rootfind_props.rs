mod common;

use common::{random_complex, random_poly, rng};
use num_complex::Complex64;
use rand::Rng;
use rootlocus_core::rootfind::DEGREE_CAP;
use rootlocus_core::{find_roots, ComplexPolynomial, Error, SolverOptions};

fn poly_from_roots(roots: &[Complex64], lc: Complex64) -> ComplexPolynomial {
    let mut p = ComplexPolynomial::constant(lc);
    for r in roots {
        p = p.multiply(&ComplexPolynomial::new(vec![-r, Complex64::new(1.0, 0.0)]));
    }
    p
}

#[test]
fn planted_roots_round_trip() {
    let opts = SolverOptions::default();
    let mut r = rng(31);
    for trial in 0..25 {
        let d = 3 + (trial * 37) % 38; // degrees 3..=40
        let mut roots: Vec<Complex64> = Vec::new();
        while roots.len() < d {
            let c = random_complex(&mut r, 1.7);
            if c.norm() < 0.3 || roots.iter().any(|q| (q - c).norm() < 0.08) {
                continue;
            }
            roots.push(c);
        }
        let lc = random_complex(&mut r, 1.0) + Complex64::new(2.0, 0.0);
        let p = poly_from_roots(&roots, lc);
        let rs = find_roots(&p, &opts).unwrap();
        roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        assert_eq!(rs.roots.len(), d);
        for (got, want) in rs.roots.iter().zip(&roots) {
            assert!(
                (got - want).norm() <= 1e-6 * (1.0 + want.norm()),
                "trial {trial} d={d}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn residuals_are_certified_small() {
    let opts = SolverOptions::default();
    let mut r = rng(32);
    for _ in 0..30 {
        let deg = r.random_range(2..=25);
        let p = random_poly(&mut r, deg, 1.0, 0.1);
        let rs = find_roots(&p, &opts).unwrap();
        assert_eq!(rs.roots.len(), deg);
        assert!(rs.max_residual() <= 1e-7);
    }
}

#[test]
fn repeated_runs_are_bitwise_identical() {
    let opts = SolverOptions::default();
    let mut r = rng(33);
    for _ in 0..10 {
        let deg = r.random_range(5..=20);
        let p = random_poly(&mut r, deg, 1.0, 0.1);
        let first = find_roots(&p, &opts).unwrap();
        let second = find_roots(&p, &opts).unwrap();
        for (a, b) in first.roots.iter().zip(&second.roots) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        assert_eq!(first.cluster_tags, second.cluster_tags);
    }
}

#[test]
fn degree_cap_is_enforced() {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); DEGREE_CAP + 2];
    coeffs[0] = Complex64::new(1.0, 0.0);
    *coeffs.last_mut().unwrap() = Complex64::new(1.0, 0.0);
    let p = ComplexPolynomial::new(coeffs);
    match find_roots(&p, &SolverOptions::default()) {
        Err(Error::DegreeCap { degree, cap }) => {
            assert_eq!(degree, DEGREE_CAP + 1);
            assert_eq!(cap, DEGREE_CAP);
        }
        other => panic!("expected degree cap error, got {other:?}"),
    }
}

#[test]
fn origin_roots_survive_deflation() {
    let mut r = rng(34);
    for k in 1..=4usize {
        let tail = random_poly(&mut r, 3, 1.0, 0.2);
        let mut shifted = vec![Complex64::new(0.0, 0.0); k];
        shifted.extend(tail.coeffs().iter().copied());
        // guarantee a nonzero constant term on the deflated part
        let mut tail_c = tail.coeffs().to_vec();
        if tail_c[0].norm() < 0.1 {
            tail_c[0] = Complex64::new(0.5, 0.0);
            shifted[k] = tail_c[0];
        }
        let p = ComplexPolynomial::new(shifted);
        let rs = find_roots(&p, &SolverOptions::default()).unwrap();
        let at_origin = rs.roots.iter().filter(|z| z.norm() == 0.0).count();
        assert_eq!(at_origin, k);
    }
}

#[test]
fn double_root_pairs_are_tagged_together() {
    // (t - i)^2 (t + i)^2: two clusters of two
    let i = Complex64::new(0.0, 1.0);
    let p = poly_from_roots(&[i, i, -i, -i], Complex64::new(1.0, 0.0));
    let rs = find_roots(&p, &SolverOptions::default()).unwrap();
    let mut tags: Vec<usize> = rs.cluster_tags.clone();
    tags.sort_unstable();
    tags.dedup();
    assert_eq!(tags.len(), 2, "tags {:?}", rs.cluster_tags);
    // members of one cluster approximate the same double root
    for tag in tags {
        let members: Vec<Complex64> = rs
            .roots
            .iter()
            .zip(&rs.cluster_tags)
            .filter(|(_, t)| **t == tag)
            .map(|(z, _)| *z)
            .collect();
        assert_eq!(members.len(), 2);
        let target = if members[0].im > 0.0 { i } else { -i };
        for z in members {
            assert!((z - target).norm() <= 1e-6, "{z} vs {target}");
        }
    }
}
