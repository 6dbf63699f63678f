//! Exact arithmetic in `ℚ(ζ_n)`, elements reduced modulo the cyclotomic
//! polynomial `Φ_n` so that equality is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

type Poly = Vec<BigInt>;

fn poly_div_exact(num: &Poly, den: &Poly) -> Poly {
    let mut r = num.clone();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = &r[i + dd] / &lead;
        for (j, dj) in den.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

fn compute_cyclotomic(n: u32) -> Poly {
    let mut p: Poly = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        p = poly_div_exact(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Poly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(n));
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// `Σ c_i ζ_nⁱ` with `i < φ(n)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicElt {
    pub n: u32,
    pub coeffs: Vec<BigRational>,
}

impl CyclotomicElt {
    fn degree(n: u32) -> usize {
        cyclotomic_polynomial(n).len() - 1
    }

    /// Reduces an arbitrary coefficient vector modulo `Φ_n`.
    pub fn from_coeffs(n: u32, mut c: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..c.len()).rev() {
            let lead = std::mem::replace(&mut c[i], BigRational::zero());
            if lead.is_zero() {
                continue;
            }
            for j in 0..deg {
                let v = &lead * BigRational::from_integer(phi[j].clone());
                c[i - deg + j] -= v;
            }
        }
        c.resize(deg, BigRational::zero());
        CyclotomicElt { n, coeffs: c }
    }

    pub fn zero(n: u32) -> Self {
        CyclotomicElt { n, coeffs: vec![BigRational::zero(); Self::degree(n)] }
    }

    pub fn from_integer(n: u32, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = BigRational::from_integer(k.into());
        z
    }

    pub fn one(n: u32) -> Self {
        Self::from_integer(n, 1)
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(n, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.n)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, by solving `self · x = 1` over `ℚ`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let deg = self.coeffs.len();
        // column j of the multiplication matrix is self·ζ^j
        let cols: Vec<Vec<BigRational>> = (0..deg)
            .map(|j| (self * &Self::zeta(self.n, j as i64)).coeffs)
            .collect();
        let mut aug: Vec<Vec<BigRational>> = (0..deg)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..deg {
            let p = (c..deg).find(|&r| !aug[r][c].is_zero())?;
            aug.swap(c, p);
            let piv = aug[c][c].clone();
            for x in aug[c].iter_mut() {
                *x /= &piv;
            }
            for r in 0..deg {
                if r != c && !aug[r][c].is_zero() {
                    let f = aug[r][c].clone();
                    for k in c..=deg {
                        let v = &f * &aug[c][k];
                        aug[r][k] -= v;
                    }
                }
            }
        }
        Some(CyclotomicElt { n: self.n, coeffs: aug.into_iter().map(|r| r[deg].clone()).collect() })
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cyclotomic orders differ");
    }
}

impl Add for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn add(self, o: &CyclotomicElt) -> CyclotomicElt {
        self.check(o);
        CyclotomicElt { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn sub(self, o: &CyclotomicElt) -> CyclotomicElt {
        self.check(o);
        CyclotomicElt { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn neg(self) -> CyclotomicElt {
        CyclotomicElt { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn mul(self, o: &CyclotomicElt) -> CyclotomicElt {
        self.check(o);
        let len = self.coeffs.len() + o.coeffs.len();
        let mut c = vec![BigRational::zero(); len.saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        CyclotomicElt::from_coeffs(self.n, c)
    }
}

impl fmt::Display for CyclotomicElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            let power = match i {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, i),
            };
            write!(f, "{sign}{coef}{power}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
