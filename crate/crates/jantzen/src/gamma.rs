//! Gamma coefficients of the seminormal basis and Gram determinants.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Multicharge, Multipartition};
use crate::error::{Error, Result};
use crate::ring::{divisors, nu_phi, ValuationContext};
use crate::tableaux::{standard_tableaux, ResidueSequence, StandardTableau};

/// ±z^{z_exp} ∏_h [h]_z^{e_h}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QIntProduct {
    pub sign: i8,
    pub z_exp: i64,
    pub factors: BTreeMap<u64, i64>,
}

impl Default for QIntProduct {
    fn default() -> Self {
        Self::one()
    }
}

impl QIntProduct {
    pub fn one() -> Self {
        Self { sign: 1, z_exp: 0, factors: BTreeMap::new() }
    }

    /// Multiply by [k]_z^exp, normalizing [−k]_z = −z^{−k}[k]_z.
    pub fn mul_qint(&mut self, k: i64, exp: i64) -> Result<()> {
        if k == 0 {
            return Err(Error::ZeroFactor);
        }
        if exp == 0 {
            return Ok(());
        }
        if k < 0 {
            if exp % 2 != 0 {
                self.sign = -self.sign;
            }
            self.z_exp += k * exp;
        }
        let h = k.unsigned_abs();
        if h > 1 {
            let slot = self.factors.entry(h).or_insert(0);
            *slot += exp;
            if *slot == 0 {
                self.factors.remove(&h);
            }
        }
        Ok(())
    }

    pub fn mul(&mut self, other: &QIntProduct) {
        self.sign *= other.sign;
        self.z_exp += other.z_exp;
        for (&h, &e) in &other.factors {
            self.mul_qint(h as i64, e).expect("stored factors are nonzero");
        }
    }

    pub fn phi_exponents(&self) -> PhiFactorization {
        let mut phi: BTreeMap<u64, i64> = BTreeMap::new();
        for (&h, &e) in &self.factors {
            for d in divisors(h).into_iter().filter(|&d| d > 1) {
                *phi.entry(d).or_default() += e;
            }
        }
        PhiFactorization::new(self.z_exp, phi)
    }
}

/// z^{z_exp} ∏_{f ≥ 2} Φ_f(z)^{phi_exps(f)}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiFactorization {
    pub z_exp: i64,
    pub phi_exps: BTreeMap<u64, i64>,
}

impl PhiFactorization {
    pub fn new(z_exp: i64, mut phi_exps: BTreeMap<u64, i64>) -> Self {
        phi_exps.retain(|_, e| *e != 0);
        Self { z_exp, phi_exps }
    }

    /// ν_x of the represented element.
    pub fn valuation(&self, ctx: &ValuationContext) -> i64 {
        self.phi_exps.iter().map(|(&f, &e)| e * nu_phi(f, ctx) as i64).sum()
    }

    pub fn pairs(&self) -> Vec<(u64, i64)> {
        self.phi_exps.iter().map(|(&f, &e)| (f, e)).collect()
    }
}

/// γ_{t^λ} = ∏_{(l,r,c)} [c]_z ∏_{m>l} z^{κ_m}[κ_l + c − r − κ_m]_z.
pub fn gamma_initial(lambda: &Multipartition, charge: &Multicharge) -> Result<QIntProduct> {
    let kappa = charge.kappa();
    let mut g = QIntProduct::one();
    for node in lambda.nodes() {
        g.mul_qint(node.col as i64, 1)?;
        for &km in &kappa[node.comp..] {
            g.z_exp += km;
            g.mul_qint(charge.content(&node) - km, 1)?;
        }
    }
    Ok(g)
}

/// γ · [1+ρ]_z [1−ρ]_z / [ρ]_z².
pub fn gamma_step(gamma: &QIntProduct, rho: i64) -> Result<QIntProduct> {
    if rho == 0 || rho.abs() == 1 {
        return Err(Error::ZeroFactor);
    }
    let mut g = gamma.clone();
    g.mul_qint(1 + rho, 1)?;
    g.mul_qint(1 - rho, 1)?;
    g.mul_qint(rho, -2)?;
    Ok(g)
}

type GammaCache = RwLock<HashMap<(Multipartition, Vec<i64>), Arc<Vec<QIntProduct>>>>;

fn gamma_cache() -> &'static GammaCache {
    static CACHE: OnceLock<GammaCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// γ_t for every t, in the order of `standard_tableaux(λ)`, propagated from t^λ
/// along adjacent transpositions that descend in dominance. Every route to a
/// tableau must give the same value.
pub fn gamma_all(lambda: &Multipartition, charge: &Multicharge) -> Result<Arc<Vec<QIntProduct>>> {
    let key = (lambda.clone(), charge.kappa().to_vec());
    if let Some(v) = gamma_cache().read().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let tabs = standard_tableaux(lambda);
    let index: HashMap<&[crate::combinatorics::Node], usize> =
        tabs.iter().enumerate().map(|(i, t)| (t.nodes(), i)).collect();
    let mut gammas: Vec<Option<QIntProduct>> = vec![None; tabs.len()];
    gammas[0] = Some(gamma_initial(lambda, charge)?);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let t = &tabs[idx];
        let g = gammas[idx].clone().expect("queued tableaux have gamma");
        let contents = t.contents(charge);
        for r in 1..t.size() {
            if !t.swap_descends(r) {
                continue;
            }
            let Some(v) = t.swap(r) else { continue };
            let next = gamma_step(&g, contents[r - 1] - contents[r])?;
            let j = index[v.nodes()];
            match &gammas[j] {
                Some(existing) if *existing != next => {
                    return Err(Error::Consistency(format!("gamma of {:?} depends on the path", v.to_rows())));
                }
                Some(_) => {}
                None => {
                    gammas[j] = Some(next);
                    queue.push_back(j);
                }
            }
        }
    }
    let out: Vec<QIntProduct> = gammas
        .into_iter()
        .map(|g| g.ok_or_else(|| Error::Consistency(format!("tableau of {lambda} unreachable from t^λ"))))
        .collect::<Result<_>>()?;
    let out = Arc::new(out);
    Ok(gamma_cache().write().expect("cache poisoned").entry(key).or_insert(out).clone())
}

/// Closed form ∏_k ∏_{α∈Add_k(t)} [con_k − con(α)] / ∏_{β∈Rem_k(t)} [con_k − con(β)],
/// with Add_k/Rem_k the addable/removable nodes of t↓k below t^{-1}(k). The z-power is not tracked.
pub fn gamma_closed(t: &StandardTableau, charge: &Multicharge) -> Result<QIntProduct> {
    let mut g = QIntProduct::one();
    for k in 1..=t.size() {
        let mu = t.restriction_shape(k);
        let a = t.node_of(k);
        let ca = charge.content(&a);
        for b in mu.addable_nodes().into_iter().filter(|b| b.is_below(&a)) {
            g.mul_qint(ca - charge.content(&b), 1)?;
        }
        for b in mu.removable_nodes().into_iter().filter(|b| *b != a && b.is_below(&a)) {
            g.mul_qint(ca - charge.content(&b), -1)?;
        }
    }
    g.sign = 1;
    g.z_exp = 0;
    Ok(g)
}

/// Φ_f exponents deg_f(t) for 2 ≤ f ≤ content spread.
pub fn degree_factorization(t: &StandardTableau, charge: &Multicharge) -> PhiFactorization {
    let prof = t.degree_profile(charge);
    let spread = charge.content_spread().max(2) as u32;
    PhiFactorization::new(0, (2..=spread).map(|f| (f as u64, prof.degree(f))).collect())
}

/// det G^λ_i = ∏_{t ∈ Std_i(λ)} γ_t; the residue modulus is taken from `i`.
pub fn gram_det_factors(lambda: &Multipartition, i: &ResidueSequence, charge: &Multicharge) -> Result<QIntProduct> {
    let tabs = standard_tableaux(lambda);
    let gammas = gamma_all(lambda, charge)?;
    let mut det = QIntProduct::one();
    for (t, g) in tabs.iter().zip(gammas.iter()) {
        if t.residue_sequence(charge, i.modulus) == *i {
            det.mul(g);
        }
    }
    Ok(det)
}
