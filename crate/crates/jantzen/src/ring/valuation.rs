use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::finite_field::{primitive_root_of_unity, GfExt};
use super::poly::{cyclotomic, divisors};
use super::laurent::big_mod;
use crate::error::{Error, Result};

/// Quantum characteristic `e` together with the characteristic `p` of the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuationContext {
    e: u32,
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ValuationContext {
    pub fn new(e: u32, p: u32) -> Result<Self> {
        let p_ok = p == 0 || is_prime(p as u64);
        let compatible = p == 0 || e == p || e.gcd(&p) == 1;
        if e < 2 || !p_ok || !compatible {
            return Err(Error::InvalidContext { e, p });
        }
        Ok(Self { e, p })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Multiplicative order of the Hecke parameter in the field: 1 when e = p.
    fn root_order(&self) -> u64 {
        if self.e == self.p {
            1
        } else {
            self.e as u64
        }
    }

    /// The moduli e·p^r, r ≥ 0, not exceeding `bound` (just `e` when p = 0).
    pub fn moduli_up_to(&self, bound: u64) -> Vec<u32> {
        let mut out = vec![self.e];
        if self.p == 0 {
            return out;
        }
        let mut f = self.e as u64 * self.p as u64;
        while f <= bound {
            out.push(f as u32);
            f *= self.p as u64;
        }
        out
    }
}

/// ν_x(Φ_f(x + ξ)).
pub fn nu_phi(f: u64, ctx: &ValuationContext) -> u64 {
    if ctx.p == 0 {
        return u64::from(f == ctx.e as u64);
    }
    let p = ctx.p as u64;
    let mut rest = f;
    let mut r = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    if rest != ctx.root_order() {
        return 0;
    }
    if r == 0 {
        1
    } else {
        (p - 1) * p.pow(r - 1)
    }
}

/// ν_x([h]_z) = Σ_{d | h, d > 1} ν_x(Φ_d(z)).
pub fn nu_quantum(h: u64, ctx: &ValuationContext) -> u64 {
    divisors(h).into_iter().filter(|&d| d > 1).map(|d| nu_phi(d, ctx)).sum()
}

/// Valuation of Φ_f(x + ξ) computed directly in GF(p^k)[x].
pub fn ff_valuation_oracle(f: u64, ctx: &ValuationContext) -> Result<u64> {
    if ctx.p == 0 {
        return Err(Error::NoField("the oracle needs p > 0".into()));
    }
    let p = ctx.p as u64;
    let order = ctx.root_order();
    let k = (1..=12u32)
        .find(|&k| (p.pow(k) - 1) % order == 0)
        .ok_or_else(|| Error::NoField(format!("no degree ≤ 12 extension of GF({p}) has roots of order {order}")))?;
    let field = GfExt::new(p, k as usize)?;
    let xi = primitive_root_of_unity(&field, order)?;
    let phi = cyclotomic(f);
    let coeffs: Vec<u64> = phi.coeffs().iter().map(|c| big_mod(c, p)).collect();
    // Horner evaluation of Φ_f at x + ξ.
    let mut acc: Vec<Vec<u64>> = Vec::new();
    for c in coeffs.iter().rev() {
        let mut next = vec![field.zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], a);
            next[i] = field.add(&next[i], &field.mul(a, &xi));
        }
        next[0] = field.add(&next[0], &field.from_int(*c));
        acc = next;
    }
    acc.iter()
        .position(|a| !field.is_zero(a))
        .map(|v| v as u64)
        .ok_or_else(|| Error::Consistency("Φ_f vanished identically".into()))
}
