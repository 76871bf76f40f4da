//! Dense complex polynomials with valuation bookkeeping and partial sums.

use num_complex::Complex;
use num_traits::Zero;

use crate::Scalar;

/// Polynomial `Σ a_k z^k` stored densely from the constant term up.
///
/// The zero polynomial has an empty coefficient vector; otherwise trailing
/// zero coefficients are trimmed so `degree` is exact. Interior zeros are
/// kept, which makes `valuation` exact as well for polynomials assembled
/// structurally (shifted fits, perturbation polynomials, stage sums).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexPolynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Complex<T>>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// Polynomial with real coefficients `c_k`.
    pub fn from_real_coeffs(coeffs: &[T]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    /// `c · z^k`.
    pub fn monomial(c: Complex<T>, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Multiply by `z^k` (shift all exponents up).
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    /// Coefficients of `p(a·z + b)`: Horner in polynomial arithmetic. The
    /// result is exact in exact arithmetic; in floating point it can lose
    /// accuracy when `|a|` is large and the composed terms cancel.
    pub fn compose_affine(&self, a: Complex<T>, b: Complex<T>) -> Self {
        let mut out = ComplexPolynomial::zero();
        for &c in self.coeffs.iter().rev() {
            let mut next = vec![Complex::new(T::zero(), T::zero()); out.coeffs.len() + 1];
            for (i, &o) in out.coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1] + o * a;
                next[i] = next[i] + o * b;
            }
            next[0] = next[0] + c;
            out = ComplexPolynomial::from_coeffs(next);
        }
        out
    }

    /// Partial sums `S_j(P)(z)` for `j = 0, …, degree`, by cumulative
    /// summation of the terms `a_k z^k`.
    ///
    /// Returns an empty vector for the zero polynomial.
    pub fn partial_sums_at(&self, z: Complex<T>) -> Vec<Complex<T>> {
        let mut sums = Vec::with_capacity(self.coeffs.len());
        let mut acc = Complex::zero();
        let mut zk = Complex::new(T::one(), T::zero());
        for &c in &self.coeffs {
            acc = acc + c * zk;
            zk = zk * z;
            sums.push(acc);
        }
        sums
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{cx, Cx};

    fn poly(re: &[f64]) -> ComplexPolynomial<f64> {
        ComplexPolynomial::from_real_coeffs(re)
    }

    #[test]
    fn valuation_and_degree() {
        let p = poly(&[0.0, 0.0, 3.0, 0.0, -1.0]);
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.degree(), Some(4));
        assert!(ComplexPolynomial::<f64>::zero().degree().is_none());
    }

    #[test]
    fn partial_sums_z_minus_z2_at_one() {
        // P = z - z^2 at z = 1: sums (0, 1, 0).
        let p = poly(&[0.0, 1.0, -1.0]);
        let s = p.partial_sums_at(cx(1.0, 0.0));
        let got: Vec<f64> = s.iter().map(|c| c.re).collect();
        assert_eq!(got, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn eval_matches_sum() {
        let p = poly(&[1.0, -2.0, 0.5, 4.0]);
        let z: Cx = cx(0.3, -0.7);
        let s = p.partial_sums_at(z);
        let last = *s.last().unwrap();
        assert!((last - p.eval(z)).norm() < 1e-14);
    }

    #[test]
    fn add_sub_roundtrip() {
        let p = poly(&[1.0, 2.0]);
        let q = poly(&[0.0, -2.0, 5.0]);
        assert_eq!(p.add(&q).sub(&q), p);
    }
}
