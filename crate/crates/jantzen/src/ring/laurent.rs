use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in one variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The involution q ↦ q^{-1}.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// The unique `d` supported in positive degrees with `g = d - bar(d)`.
    pub fn positive_part(&self) -> Result<Self> {
        if self.bar() != -self {
            return Err(Error::NotAntiInvariant);
        }
        Ok(Self {
            coeffs: self.coeffs.range(1..).map(|(e, c)| (*e, c.clone())).collect(),
        })
    }

    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs.iter().map(|(e, c)| c * BigInt::from(*e)).sum()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Evaluation modulo a prime `m` at the nonzero residue `x`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let inv = mod_pow(x, m - 2, m);
        let mut acc = 0u64;
        for (e, c) in &self.coeffs {
            let base = if *e >= 0 { x } else { inv };
            let xe = mod_pow(base, e.unsigned_abs(), m);
            let cm = big_mod(c, m);
            acc = ((acc as u128 + (cm as u128 * xe as u128) % m as u128) % m as u128) as u64;
        }
        acc
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// True when every coefficient is non-negative and every exponent is positive.
    pub fn in_q_nq(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| *e > 0 && c.is_positive())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn to_pairs(&self) -> Result<Vec<(i64, i64)>> {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                c.to_i64()
                    .map(|c| (*e, c))
                    .ok_or_else(|| Error::Parse(format!("coefficient {c} exceeds 64 bits")))
            })
            .collect()
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub(crate) fn big_mod(c: &BigInt, m: u64) -> u64 {
    let r = c % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    r.to_u64().expect("residue fits")
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = self.to_pairs().map_err(serde::ser::Error::custom)?;
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, i64)> = Vec::deserialize(d)?;
        Ok(LaurentPoly::from_terms(pairs))
    }
}
