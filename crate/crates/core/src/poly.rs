//! Dense complex-coefficient univariate polynomials: arithmetic, evaluation,
//! resultants, discriminants, and Chebyshev evaluation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial gets a distinguished sentinel
/// instead of `-1` so no off-by-one arithmetic can leak into indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    /// The degree as a plain integer, or `None` for the zero polynomial.
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial over complex doubles, stored in ascending
/// degree order (`coeffs[k]` multiplies `x^k`).
///
/// Canonical form: the highest-index coefficient is nonzero; the zero
/// polynomial is the empty coefficient list. Constructors drop trailing
/// coefficients only when they are exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Builds a polynomial from ascending coefficients, canonicalizing
    /// exact-zero trailing entries away.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// The zero polynomial (empty coefficient list).
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// A constant polynomial.
    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Builds a polynomial from real ascending coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Ascending coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    /// Highest-order coefficient, `None` for the zero polynomial.
    pub fn leading_coefficient(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation; the zero polynomial evaluates to 0.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation together with the magnitude majorant
    /// `sum_k |c_k| |x|^k`, the natural scale for rounding-noise estimates.
    pub fn eval_with_majorant(&self, x: Complex64) -> (Complex64, f64) {
        let r = x.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut maj = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
            maj = maj * r + c.norm();
        }
        (acc, maj)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Self::new(out)
    }

    /// Convolution product.
    pub fn multiply(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self::new(out)
    }
}

impl std::ops::Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn add(self, rhs: Self) -> ComplexPolynomial {
        ComplexPolynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn sub(self, rhs: Self) -> ComplexPolynomial {
        ComplexPolynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn mul(self, rhs: Self) -> ComplexPolynomial {
        self.multiply(rhs)
    }
}

/// Determinant of a dense complex matrix by LU factorization with partial
/// pivoting. Consumes the matrix buffer.
fn lu_determinant(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut pivot = k;
        let mut best = a[k][k].norm();
        for (i, row) in a.iter().enumerate().skip(k + 1) {
            let mag = row[k].norm();
            if mag > best {
                best = mag;
                pivot = i;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        let diag = a[k][k];
        det *= diag;
        for i in k + 1..n {
            let factor = a[i][k] / diag;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let sub = factor * a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

/// Resultant of `p` and `q` as the determinant of their Sylvester matrix.
///
/// Equals `lc(p)^deg(q) * lc(q)^deg(p) * prod (alpha_i - beta_j)` over root
/// pairs. Errors on zero-polynomial input.
pub fn sylvester_resultant(p: &ComplexPolynomial, q: &ComplexPolynomial) -> Result<Complex64> {
    let dp = p.degree().finite().ok_or(Error::ZeroPolynomial)?;
    let dq = q.degree().finite().ok_or(Error::ZeroPolynomial)?;
    let size = dp + dq;
    if size == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; size]; size];
    // dq staggered rows of p's descending coefficients, then dp rows of q's.
    for i in 0..dq {
        for k in 0..=dp {
            m[i][i + k] = p.coeff(dp - k);
        }
    }
    for i in 0..dp {
        for k in 0..=dq {
            m[dq + i][i + k] = q.coeff(dq - k);
        }
    }
    Ok(lu_determinant(m))
}

/// Ordinary discriminant `(-1)^{d(d-1)/2} Res(p, p') / lc(p)`; zero exactly
/// when `p` has a repeated root. Requires degree at least 2.
pub fn discriminant(p: &ComplexPolynomial) -> Result<Complex64> {
    let d = p.degree().finite().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooLow("discriminant requires degree >= 2"));
    }
    let res = sylvester_resultant(p, &p.derivative())?;
    let lc = p.leading_coefficient().expect("degree >= 2 implies nonzero");
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -1.0 } else { 1.0 };
    Ok(res * sign / lc)
}

/// Chebyshev polynomial of the second kind, `U_m(x)`, by the three-term
/// recurrence `U_0 = 1`, `U_1 = 2x`, `U_{k+1} = 2x U_k - U_{k-1}`.
///
/// For real `x = cos(theta)` in (-1, 1) this equals
/// `sin((m+1) theta) / sin(theta)`.
pub fn chebyshev_u(m: usize, x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if m == 0 {
        return one;
    }
    let two_x = x * 2.0;
    let mut prev = one;
    let mut cur = two_x;
    for _ in 1..m {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eval_matches_hand_values() {
        let p = ComplexPolynomial::from_real(&[1.0, 2.0]);
        assert_eq!(p.eval(r(3.0)), r(7.0));

        let q = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]);
        assert!(q.eval(c(0.0, 1.0)).norm() < 1e-15);

        let cubic = ComplexPolynomial::from_real(&[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(cubic.eval(r(2.0)), r(11.0));

        assert_eq!(ComplexPolynomial::zero().eval(r(5.0)), r(0.0));
    }

    #[test]
    fn arithmetic_canonicalizes() {
        let p = ComplexPolynomial::from_real(&[1.0, 1.0]);
        let q = ComplexPolynomial::from_real(&[1.0, -1.0]);
        let sum = p.add(&q);
        assert_eq!(sum, ComplexPolynomial::from_real(&[2.0]));
        assert_eq!(sum.degree(), Degree::Finite(0));

        let prod = p.multiply(&q);
        assert_eq!(prod, ComplexPolynomial::from_real(&[1.0, 0.0, -1.0]));

        let d = ComplexPolynomial::from_real(&[1.0, 1.0, 0.0, 1.0]).derivative();
        assert_eq!(d, ComplexPolynomial::from_real(&[1.0, 0.0, 3.0]));
    }

    #[test]
    fn zero_polynomial_has_sentinel_degree() {
        let z = ComplexPolynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::MinusInfinity);
        assert_eq!(z.degree().finite(), None);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn resultant_on_known_pairs() {
        // Res(x - 3, x - 1) = 3 - 1
        let p = ComplexPolynomial::from_real(&[-3.0, 1.0]);
        let q = ComplexPolynomial::from_real(&[-1.0, 1.0]);
        let res = sylvester_resultant(&p, &q).unwrap();
        assert!((res - r(2.0)).norm() < 1e-12);

        // shared root kills the resultant
        let p = ComplexPolynomial::from_real(&[-1.0, 0.0, 1.0]);
        let q = ComplexPolynomial::from_real(&[-1.0, 1.0]);
        assert!(sylvester_resultant(&p, &q).unwrap().norm() < 1e-12);

        // Res(x^2 + 1, x^2 + 4) = prod over (+-i, +-2i) = 9
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]);
        let q = ComplexPolynomial::from_real(&[4.0, 0.0, 1.0]);
        let res = sylvester_resultant(&p, &q).unwrap();
        assert!((res - r(9.0)).norm() < 1e-12);
    }

    #[test]
    fn resultant_rejects_zero_polynomial() {
        let p = ComplexPolynomial::from_real(&[1.0, 1.0]);
        assert!(matches!(
            sylvester_resultant(&p, &ComplexPolynomial::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn discriminant_on_trinomial_shapes() {
        // 1 + 3t + 2t^2: B^2 - 4A = 9 - 8 = 1
        let p = ComplexPolynomial::from_real(&[1.0, 3.0, 2.0]);
        assert!((discriminant(&p).unwrap() - r(1.0)).norm() < 1e-12);

        // 1 + t + t^3: -4AB^3 - 27A^2 = -31
        let p = ComplexPolynomial::from_real(&[1.0, 1.0, 0.0, 1.0]);
        assert!((discriminant(&p).unwrap() - r(-31.0)).norm() < 1e-10);

        // (t - 1)^2 has a double root
        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 1.0]);
        assert!(discriminant(&p).unwrap().norm() < 1e-12);

        let linear = ComplexPolynomial::from_real(&[1.0, 1.0]);
        assert!(matches!(
            discriminant(&linear),
            Err(Error::DegreeTooLow(_))
        ));
    }

    #[test]
    fn chebyshev_u_small_orders() {
        assert_eq!(chebyshev_u(0, c(2.5, 1.0)), r(1.0));
        assert!((chebyshev_u(1, r(0.7)) - r(1.4)).norm() < 1e-15);
        // U_3(cos(pi/3)) = sin(4 pi/3) / sin(pi/3) = -1
        assert!((chebyshev_u(3, r(0.5)) - r(-1.0)).norm() < 1e-12);
    }
}
