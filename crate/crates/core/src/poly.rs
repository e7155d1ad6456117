//! Univariate polynomials over a [`Field`], characteristic polynomials, and
//! rational root extraction.

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::scalar::Field;

/// Coefficients in ascending degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = F::one() / lead.clone();
                Poly::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
        }
    }

    /// Remainder of division by a non-zero `d`.
    pub fn rem(&self, d: &Poly<F>) -> Poly<F> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let lead = d.coeffs[dl - 1].clone();
        while r.len() >= dl {
            let q = r[r.len() - 1].clone() / lead.clone();
            let shift = r.len() - dl;
            for (k, c) in d.coeffs.iter().enumerate() {
                r[shift + k] = r[shift + k].clone() - q.clone() * c.clone();
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn quotient(&self, d: &Poly<F>) -> Poly<F> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return Poly::new(Vec::new());
        }
        let lead = d.coeffs[dl - 1].clone();
        let mut q = vec![F::zero(); r.len() - dl + 1];
        while r.len() >= dl {
            let c = r[r.len() - 1].clone() / lead.clone();
            let shift = r.len() - dl;
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] = r[shift + k].clone() - c.clone() * dc.clone();
            }
            q[shift] = c;
            r.pop();
        }
        Poly::new(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct monic irreducible factors.
    pub fn squarefree(&self) -> Poly<F> {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.quotient(&g).monic()
    }

    /// Approximate complex roots (Durand–Kerner) of a non-constant polynomial.
    pub fn approx_roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let m = self.monic();
        let c: Vec<Complex64> = m.coeffs.iter().map(|x| Complex64::new(x.to_f64_lossy(), 0.0)).collect();
        let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
        let bound = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0).max(1.0)).collect();
        for _ in 0..2000 {
            let mut delta: f64 = 0.0;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        denom *= z[i] - z[j];
                    }
                }
                if denom.norm() == 0.0 {
                    denom = Complex64::new(1e-12, 0.0);
                }
                let step = eval(z[i]) / denom;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-14 {
                break;
            }
        }
        z
    }

    /// Every rational root, each once, verified by exact evaluation.
    pub fn rational_roots(&self) -> Vec<F> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let sf = self.squarefree();
        let mut out: Vec<F> = Vec::new();
        for z in sf.approx_roots() {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            let Some((p, q)) = rationalize(z.re, 1 << 20) else {
                continue;
            };
            let cand = F::from_ratio(p, q);
            if sf.eval(&cand).is_zero() && !out.contains(&cand) {
                out.push(cand);
            }
        }
        out
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued fraction expansion.
pub fn rationalize(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 != 0).then_some((h1, k1))
}

/// `det(x·I − A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        let c = coeffs[n - k + 1].clone();
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + c.clone();
        }
        m = next;
        coeffs[n - k] = -(a.mul(&m).trace() / F::from_i64(k as i64));
    }
    Poly::new(coeffs)
}
