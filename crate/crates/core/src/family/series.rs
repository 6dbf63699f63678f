//! Power series in `s` with rational coefficients, modulo `s^N`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    /// `c₀..c_{N−1}`; the length is the order `N`.
    pub coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigRational::zero(); order] }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// The polynomial `Σ c_k s^k`, truncated.
    pub fn from_ints(c: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, &x) in c.iter().enumerate().take(order) {
            s.coeffs[k] = BigRational::from_integer(BigInt::from(x));
        }
        s
    }

    /// The variable `s`.
    pub fn s(order: usize) -> Self {
        Self::from_ints(&[0, 1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Reduction modulo `s^order`, or zero padding when `order` is larger.
    pub fn with_order(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order, BigRational::zero());
        TruncatedSeries { coeffs: c }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| &acc * self)
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.order();
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -(acc * &inv0);
        }
        Some(out)
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inverse()?)
    }

    /// `self(g(s))` for `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Option<Self> {
        if !g.coeff(0).is_zero() {
            return None;
        }
        let n = self.order().min(g.order());
        let g = g.with_order(n);
        // Horner from the top coefficient
        let mut out = Self::zero(n);
        for c in self.coeffs.iter().take(n).rev() {
            out = &(&out * &g) + &Self::constant(c.clone(), n);
        }
        Some(out)
    }

    /// Text in `s`, e.g. `-1 + 3*s - 5/2*s^2`; `0` when zero.
    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "s".into(),
                _ => format!("s^{k}"),
            };
            if k == 0 || !a.is_one() {
                out.push_str(&a.to_string());
                if k > 0 {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(o.order());
        TruncatedSeries { coeffs: (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(o.order());
        TruncatedSeries { coeffs: (0..n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(o.order());
        let mut out = TruncatedSeries::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one_minus_s = TruncatedSeries::from_ints(&[1, -1], 6);
        let inv = one_minus_s.inverse().unwrap();
        assert_eq!(inv, TruncatedSeries::from_ints(&[1, 1, 1, 1, 1, 1], 6));
        assert!(TruncatedSeries::s(6).inverse().is_none());
        assert_eq!((&inv * &one_minus_s), TruncatedSeries::one(6));
    }

    #[test]
    fn composition() {
        // (1 + t)² at t = s + s²
        let p = TruncatedSeries::from_ints(&[1, 2, 1], 5);
        let g = TruncatedSeries::from_ints(&[0, 1, 1], 5);
        assert_eq!(p.compose(&g).unwrap(), TruncatedSeries::from_ints(&[1, 2, 3, 2, 1], 5));
        assert!(p.compose(&TruncatedSeries::one(5)).is_none());
    }

    #[test]
    fn text() {
        let mut s = TruncatedSeries::from_ints(&[-1, 3, 0, -1], 4);
        assert_eq!(s.to_poly_string(), "-1 + 3*s - s^3");
        s.coeffs[2] = BigRational::new(5.into(), 2.into());
        assert_eq!(s.to_poly_string(), "-1 + 3*s + 5/2*s^2 - s^3");
        assert_eq!(TruncatedSeries::zero(3).to_poly_string(), "0");
        assert_eq!(s.valuation(), Some(0));
    }
}
