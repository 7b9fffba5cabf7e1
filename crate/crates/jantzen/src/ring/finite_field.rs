//! Small extension fields GF(p^k), used only to check valuations independently.

use crate::error::{Error, Result};

/// GF(p^k) as GF(p)[y] modulo a monic irreducible of degree k.
#[derive(Clone, Debug)]
pub struct GfExt {
    p: u64,
    k: usize,
    /// Monic modulus, ascending coefficients, length k + 1.
    modulus: Vec<u64>,
}

pub type GfElem = Vec<u64>;

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.pop().unwrap();
        if top == 0 {
            continue;
        }
        let c = top * inv_lead % p;
        let off = r.len() - dm;
        for (j, mj) in m[..dm].iter().enumerate() {
            r[off + j] = (r[off + j] + p - c * mj % p) % p;
        }
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// All monic polynomials of degree `d` over GF(p), ascending coefficients.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(idx % p);
            idx /= p;
        }
        c.push(1);
        c
    })
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    (1..=k / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(m, &g, p).iter().any(|&c| c != 0)))
}

impl GfExt {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::NoField("extension degree must be positive".into()));
        }
        let modulus = monic_polys(p, k)
            .find(|m| is_irreducible(m, p))
            .ok_or_else(|| Error::NoField(format!("no irreducible of degree {k} over GF({p})")))?;
        Ok(Self { p, k, modulus })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn zero(&self) -> GfElem {
        vec![0; self.k]
    }

    pub fn one(&self) -> GfElem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: u64) -> GfElem {
        let mut v = self.zero();
        v[0] = c % self.p;
        v
    }

    pub fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.k, 0);
        r
    }

    pub fn pow(&self, a: &GfElem, mut e: u64) -> GfElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn element(&self, mut idx: u64) -> GfElem {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of multiplicative order exactly `m`.
pub fn primitive_root_of_unity(field: &GfExt, m: u64) -> Result<GfElem> {
    if !(field.order() - 1).is_multiple_of(m) {
        return Err(Error::NoField(format!("{m} does not divide |GF^*| = {}", field.order() - 1)));
    }
    let one = field.one();
    let primes = prime_factors(m);
    (1..field.order())
        .map(|i| field.element(i))
        .find(|x| field.pow(x, m) == one && primes.iter().all(|q| field.pow(x, m / q) != one))
        .ok_or_else(|| Error::NoField(format!("no element of order {m}")))
}
