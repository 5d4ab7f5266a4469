//! Truncated power series in one grading variable, generic over the
//! coefficient scalar.
//!
//! All arithmetic is exact modulo `t^{D+1}` where `D` is the truncation
//! degree; the exact-rational instantiation is what the identity checks use,
//! and the same code runs on `f64` for the numeric Toeplitz path.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Power series `c_0 + c_1 t + ... + c_D t^D`, exact modulo `t^{D+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> TruncatedSeries<T> {
    /// Series from coefficients `c_0..=c_D`; the vector length fixes `D`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs degree >= 0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); degree + 1],
        }
    }

    /// The monomial `c t^k`, truncated at `degree` (zero if `k > degree`).
    pub fn monomial(c: T, k: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if k <= degree {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self
    where
        T: Mul<Output = T>,
    {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Shift by `t^k`, dropping what falls past the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let d = self.truncation_degree();
        let mut out = Self::zero(d);
        for i in 0..=d {
            if i + k <= d {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }
}

impl<T: Clone + Zero + One> TruncatedSeries<T> {
    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = T::one();
        s
    }

    /// Geometric series `1/(1 - a t)` truncated.
    pub fn geometric(a: &T, degree: usize) -> Self
    where
        T: Mul<Output = T>,
    {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut acc = T::one();
        coeffs.push(acc.clone());
        for _ in 0..degree {
            acc = acc * a.clone();
            coeffs.push(acc.clone());
        }
        TruncatedSeries { coeffs }
    }

    /// Linear factor `1 + a t`.
    pub fn linear(a: &T, degree: usize) -> Self {
        let mut s = Self::one(degree);
        if degree >= 1 {
            s.coeffs[1] = a.clone();
        }
        s
    }
}

impl<T> TruncatedSeries<T>
where
    T: Clone + Zero + One + FromPrimitive + Mul<Output = T> + std::ops::Div<Output = T>,
{
    /// Exponential of a series with zero constant term, via the standard
    /// recurrence `k f_k = sum_j j g_j f_{k-j}`.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "series exponential requires zero constant term"
        );
        let d = self.truncation_degree();
        let mut f = vec![T::zero(); d + 1];
        f[0] = T::one();
        for k in 1..=d {
            let mut acc = T::zero();
            for j in 1..=k {
                let jt = T::from_usize(j).expect("small integer");
                acc = acc + jt * self.coeffs[j].clone() * f[k - j].clone();
            }
            f[k] = acc / T::from_usize(k).expect("small integer");
        }
        TruncatedSeries { coeffs: f }
    }
}

impl<T> Add for TruncatedSeries<T>
where
    T: Clone + Zero + Add<Output = T>,
{
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "mixed truncation degrees");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T> Sub for TruncatedSeries<T>
where
    T: Clone + Zero + Sub<Output = T>,
{
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "mixed truncation degrees");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T> Neg for TruncatedSeries<T>
where
    T: Clone + Zero + Sub<Output = T>,
{
    type Output = Self;
    fn neg(self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.into_iter().map(|a| T::zero() - a).collect(),
        }
    }
}

impl<T> Mul for TruncatedSeries<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "mixed truncation degrees");
        let d = self.coeffs.len() - 1;
        let mut out = vec![T::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > d {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::Rat;

    #[test]
    fn exp_matches_factorials() {
        // exp(t) coefficients are 1/k!
        let g = TruncatedSeries::monomial(rat_int(1), 1, 5);
        let e = g.exp();
        assert_eq!(e.coeff(0), rat_int(1));
        assert_eq!(e.coeff(3), rat(1, 6));
        assert_eq!(e.coeff(5), rat(1, 120));
    }

    #[test]
    fn geometric_times_complement_is_one() {
        let a = rat(2, 3);
        let geo: TruncatedSeries<Rat> = TruncatedSeries::geometric(&a, 6);
        let lin = TruncatedSeries::from_coeffs(
            (0..=6)
                .map(|k| match k {
                    0 => rat_int(1),
                    1 => -a.clone(),
                    _ => rat_int(0),
                })
                .collect(),
        );
        assert_eq!(geo * lin, TruncatedSeries::one(6));
    }

    #[test]
    fn shift_drops_overflow() {
        let s = TruncatedSeries::from_coeffs(vec![rat_int(1), rat_int(2), rat_int(3)]);
        let t = s.shift(2);
        assert_eq!(t.coeffs(), &[rat_int(0), rat_int(0), rat_int(1)]);
    }
}
