use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// Polynomial over the integers, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] += BigInt::one();
        Self::new(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Exact division; fails unless the quotient has integer coefficients and
    /// the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor.degree().ok_or(Error::InexactDivision)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Ok(Self::zero()) } else { Err(Error::InexactDivision) };
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quot, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &quot * d;
            }
            q[k] = quot;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(q))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }
}

/// [k]_v = 1 + v + … + v^{k-1}, and [k]_v = -v^{k}[-k]_v for k < 0.
pub fn quantum_integer(k: i64) -> LaurentPoly {
    if k >= 0 {
        LaurentPoly::from_terms((0..k).map(|e| (e, 1)))
    } else {
        LaurentPoly::from_terms((k..0).map(|e| (e, -1)))
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The f-th cyclotomic polynomial.
pub fn cyclotomic(f: u64) -> Arc<IntPoly> {
    assert!(f >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().read().expect("cache poisoned").get(&f) {
        return p.clone();
    }
    let mut p = IntPoly::x_pow_minus_one(f as usize);
    for d in divisors(f) {
        if d < f {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache()
        .write()
        .expect("cache poisoned")
        .entry(f)
        .or_insert(p)
        .clone()
}
