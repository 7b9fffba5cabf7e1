//! Jantzen characters of Specht modules by four independent routes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::characters::{graded_specht_character, specht_character, IntCharacter};
use crate::combinatorics::{
    beta_sequence, normalize_beta, rim_hook, split_row, wrap_hook, Multicharge, Multipartition, Node, Partition,
};
use crate::decomp::{adjustment_at_one, decomposition, Decomposition, DecompositionMatrix};
use crate::error::{Error, Result};
use crate::gamma::gram_det_factors;
use crate::ring::{divisors, nu_phi, nu_quantum, ValuationContext};
use crate::tableaux::{standard_tableaux, tableaux_by_residue, ResidueSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Gamma,
    Degree,
    Classical,
    Positive,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Gamma, Route::Degree, Route::Classical, Route::Positive];

    pub fn name(self) -> &'static str {
        match self {
            Route::Gamma => "gamma",
            Route::Degree => "degree",
            Route::Classical => "classical",
            Route::Positive => "positive",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown route {s:?}")))
    }
}

/// ch J^λ with residues modulo e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JantzenCharacter {
    pub lambda: Multipartition,
    pub e: u32,
    pub p: u32,
    pub multicharge: Vec<i64>,
    pub route: Route,
    #[serde(flatten)]
    pub character: IntCharacter,
}

impl JantzenCharacter {
    fn new(lambda: &Multipartition, ctx: &ValuationContext, charge: &Multicharge, route: Route, character: IntCharacter) -> Result<Self> {
        if !character.all_nonnegative() {
            return Err(Error::Consistency(format!("route {route} gave a negative entry for {lambda}")));
        }
        Ok(Self {
            lambda: lambda.clone(),
            e: ctx.e(),
            p: ctx.p(),
            multicharge: charge.kappa().to_vec(),
            route,
            character,
        })
    }

    pub fn entries(&self) -> &BTreeMap<ResidueSequence, i64> {
        self.character.entries()
    }

    pub fn is_zero(&self) -> bool {
        self.character.is_zero()
    }
}

/// Moduli f = e p^r that can contribute, bounded by the content spread.
pub fn required_moduli(ctx: &ValuationContext, charge: &Multicharge) -> Vec<u32> {
    ctx.moduli_up_to(charge.content_spread())
}

/// Route A: Σ_i ν_x(det G^λ_i) i.
pub fn jantzen_gamma(lambda: &Multipartition, ctx: &ValuationContext, charge: &Multicharge) -> Result<JantzenCharacter> {
    let mut ch = IntCharacter::new(ctx.e());
    for i in tableaux_by_residue(lambda, charge, ctx.e()).keys() {
        let v = gram_det_factors(lambda, i, charge)?.phi_exponents().valuation(ctx);
        ch.add_at(i.clone(), v);
    }
    JantzenCharacter::new(lambda, ctx, charge, Route::Gamma, ch)
}

/// Route B: Σ_i pdeg_{e,p,i}(λ) i, with weight ν_x(Φ_f) on deg_f.
pub fn jantzen_degree(lambda: &Multipartition, ctx: &ValuationContext, charge: &Multicharge) -> Result<JantzenCharacter> {
    let moduli = required_moduli(ctx, charge);
    let mut ch = IntCharacter::new(ctx.e());
    for t in standard_tableaux(lambda).iter() {
        let prof = t.degree_profile(charge);
        let v: i64 = moduli.iter().map(|&f| nu_phi(f as u64, ctx) as i64 * prof.degree(f)).sum();
        ch.add_at(t.residue_sequence(charge, ctx.e()), v);
    }
    JantzenCharacter::new(lambda, ctx, charge, Route::Degree, ch)
}

/// (−1)^{L(w)} #Std_i(λ) where w sorts β into β^λ; zero if β is not a permuted beta sequence.
pub fn d_coefficient(beta: &[i64], i: &ResidueSequence, charge: &Multicharge) -> i64 {
    match normalize_beta(beta, charge) {
        Some((shape, sign)) if shape.size() == i.len() => {
            sign as i64 * graded_specht_character(&shape, charge, i.modulus).at_one().get(i)
        }
        _ => 0,
    }
}

/// d_i(β) by the branching recursion on the last residue.
pub fn branching_d_coefficient(beta: &[i64], i: &ResidueSequence, charge: &Multicharge) -> i64 {
    if i.is_empty() {
        return match normalize_beta(beta, charge) {
            Some((shape, sign)) if shape.size() == 0 => sign as i64,
            _ => 0,
        };
    }
    let last = i.last().expect("nonempty") as i64;
    let prefix = i.prefix();
    let mut total = 0;
    for s in 0..beta.len() {
        if (beta[s] - last).rem_euclid(i.modulus as i64) == 0 {
            let mut b = beta.to_vec();
            b[s] -= 1;
            total += branching_d_coefficient(&b, &prefix, charge);
        }
    }
    total
}

/// One (α, t) pair of the classical sum formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalTerm {
    pub alpha: Node,
    pub t: usize,
    pub shape: Option<Multipartition>,
    pub epsilon: i8,
    pub h: i64,
    pub h_prime: i64,
    pub weight: u64,
    /// Contributes nothing: no shape, no weight, or the row lies inside the leg of the hook.
    pub inert: bool,
}

/// All pairs (α, t) with α ∈ λ and r_α < t ≤ ℓn.
pub fn classical_terms(lambda: &Multipartition, ctx: &ValuationContext, charge: &Multicharge) -> Result<Vec<ClassicalTerm>> {
    let n = charge.n();
    let rows = n * charge.level();
    let beta = beta_sequence(lambda, charge)?.beta;
    let mut out = Vec::new();
    for alpha in lambda.nodes() {
        let hook = rim_hook(lambda, &alpha, n)?;
        for t in hook.r_alpha + 1..=rows {
            if t <= hook.r_alpha + hook.leg_length {
                let h = hook.hook_length as i64;
                out.push(ClassicalTerm {
                    alpha,
                    t,
                    shape: None,
                    epsilon: 0,
                    h,
                    h_prime: beta[hook.r_alpha - 1] - beta[t - 1] - h,
                    weight: 0,
                    inert: true,
                });
                continue;
            }
            let w = wrap_hook(lambda, &alpha, t, charge)?;
            let weight = if w.h_prime > 0 { nu_quantum(w.h_prime as u64, ctx) } else { 0 };
            out.push(ClassicalTerm {
                alpha,
                t,
                inert: w.shape.is_none() || weight == 0,
                shape: w.shape,
                epsilon: w.epsilon,
                h: w.h,
                h_prime: w.h_prime,
                weight,
            });
        }
    }
    Ok(out)
}

impl ClassicalTerm {
    /// (−1)^{l_α + l_α′}: ε_{α,t} with the extra sign removed for wraps inside one component.
    pub fn coefficient_sign(&self, n: usize) -> i64 {
        let same = split_row(self.t, n).0 == self.alpha.comp;
        if same {
            -(self.epsilon as i64)
        } else {
            self.epsilon as i64
        }
    }
}

/// Route C: Σ_{α,t} (−1)^{l_α+l_α′} ν_x([h′_α]_z) ch S^{λ_{α,t}}.
pub fn jantzen_classical(lambda: &Multipartition, ctx: &ValuationContext, charge: &Multicharge) -> Result<JantzenCharacter> {
    let mut ch = IntCharacter::new(ctx.e());
    for term in classical_terms(lambda, ctx, charge)? {
        if let (false, Some(shape)) = (term.inert, &term.shape) {
            let c = term.coefficient_sign(charge.n()) * term.weight as i64;
            ch.add_scaled(c, &specht_character(shape, charge, ctx.e()));
        }
    }
    JantzenCharacter::new(lambda, ctx, charge, Route::Classical, ch)
}

/// Exponent of [h]_z in det G^λ_i, up to factors that are units at every
/// Φ_f with e | f: −Σ d_i(β_st(h)) over s < t and d_st < h < β_s − β_t,
/// where d_st = 0 within a component and n across components.
pub fn gram_exponents_beta(lambda: &Multipartition, i: &ResidueSequence, charge: &Multicharge) -> Result<BTreeMap<u64, i64>> {
    let n = charge.n();
    let beta = beta_sequence(lambda, charge)?.beta;
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    if lambda.size() == 0 {
        return Ok(out);
    }
    for s in 0..beta.len() {
        for t in s + 1..beta.len() {
            let same = split_row(s + 1, n).0 == split_row(t + 1, n).0;
            let lo = if same { 0 } else { n as i64 };
            for h in lo + 1..beta[s] - beta[t] {
                let mut b = beta.clone();
                b[s] -= h;
                b[t] += h;
                let d = d_coefficient(&b, i, charge);
                if d != 0 {
                    *out.entry(h as u64).or_default() -= d;
                }
            }
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Φ-exponents of ∏_h [h]_z^{e_h}.
pub fn phi_exponents_of(exps: &BTreeMap<u64, i64>) -> BTreeMap<u64, i64> {
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (&h, &e) in exps {
        for d in divisors(h).into_iter().filter(|&d| d > 1) {
            *out.entry(d).or_default() += e;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Source of characteristic-zero decomposition matrices keyed by modulus.
pub trait MatrixProvider {
    fn matrix(&self, f: u32, level: usize, n: usize, charge: &Multicharge) -> Result<Arc<Decomposition>>;
}

/// Computes (and memoizes) matrices on demand.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComputedMatrices;

impl MatrixProvider for ComputedMatrices {
    fn matrix(&self, f: u32, level: usize, n: usize, charge: &Multicharge) -> Result<Arc<Decomposition>> {
        decomposition(level, n, f, charge)
    }
}

/// A fixed set of matrices; a missing modulus is an error.
#[derive(Clone, Debug, Default)]
pub struct SuppliedMatrices(pub HashMap<u32, Arc<Decomposition>>);

impl MatrixProvider for SuppliedMatrices {
    fn matrix(&self, f: u32, level: usize, n: usize, _charge: &Multicharge) -> Result<Arc<Decomposition>> {
        let d = self.0.get(&f).ok_or(Error::MissingMatrix(f))?;
        if d.matrix.level != level || d.matrix.n != n {
            return Err(Error::Mismatch(format!("matrix for f = {f} is not for level {level}, n = {n}")));
        }
        Ok(d.clone())
    }
}

/// One term ν_x(Φ_f)·(d^{C,f}_{λν})′(1) of the positive formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositiveCoefficient {
    pub f: u32,
    pub weight: u64,
    pub nu: Multipartition,
    pub derivative: i64,
}

/// Nonzero coefficients (d^{C,f}_{λν})′(1) for every required f.
pub fn positive_coefficients(
    lambda: &Multipartition,
    ctx: &ValuationContext,
    charge: &Multicharge,
    matrices: &dyn MatrixProvider,
) -> Result<Vec<PositiveCoefficient>> {
    let mut out = Vec::new();
    for f in required_moduli(ctx, charge) {
        let weight = nu_phi(f as u64, ctx);
        if weight == 0 {
            continue;
        }
        let dec = matrices.matrix(f, lambda.level(), lambda.size(), charge)?;
        for (nu, d) in dec.matrix.row(lambda) {
            let derivative = num_traits::ToPrimitive::to_i64(&d.derivative_at_one()).expect("small");
            if nu != *lambda && derivative <= 0 {
                return Err(Error::Consistency(format!("(d_{{{lambda},{nu}}})'(1) = {derivative} for f = {f}")));
            }
            if derivative != 0 {
                out.push(PositiveCoefficient { f, weight, nu, derivative });
            }
        }
    }
    Ok(out)
}

/// Route D: Σ_f ν_x(Φ_f) Σ_ν (d^{C,f}_{λν})′(1) · (ch E^ν reduced modulo e).
pub fn jantzen_positive(
    lambda: &Multipartition,
    ctx: &ValuationContext,
    charge: &Multicharge,
    matrices: &dyn MatrixProvider,
) -> Result<JantzenCharacter> {
    let mut ch = IntCharacter::new(ctx.e());
    for c in positive_coefficients(lambda, ctx, charge, matrices)? {
        let dec = matrices.matrix(c.f, lambda.level(), lambda.size(), charge)?;
        let u = dec.echars.chars.get(&c.nu).ok_or_else(|| Error::Consistency(format!("no E-character for {}", c.nu)))?;
        ch.add_scaled(c.weight as i64 * c.derivative, &u.at_one().reduce(ctx.e())?);
    }
    JantzenCharacter::new(lambda, ctx, charge, Route::Positive, ch)
}

pub fn jantzen_route(
    route: Route,
    lambda: &Multipartition,
    ctx: &ValuationContext,
    charge: &Multicharge,
    matrices: &dyn MatrixProvider,
) -> Result<JantzenCharacter> {
    match route {
        Route::Gamma => jantzen_gamma(lambda, ctx, charge),
        Route::Degree => jantzen_degree(lambda, ctx, charge),
        Route::Classical => jantzen_classical(lambda, ctx, charge),
        Route::Positive => jantzen_positive(lambda, ctx, charge, matrices),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JBound {
    pub value: i64,
    /// No modular matrix was supplied; the e-columns come from the characteristic-zero matrix.
    pub approximate: bool,
}

/// j^{F,e}_{λμ} = Σ_f ν_x(Φ_f) Σ_ν (d^{C,f}_{λν})′(1) a^{f,e}_{νμ}, with A_{f,e} solving
/// D_{F,e} = D_{C,f} A_{f,e} at q = 1. Without `modular`, D_{C,e} stands in for D_{F,e}.
pub fn j_bound(
    lambda: &Multipartition,
    mu: &Multipartition,
    ctx: &ValuationContext,
    charge: &Multicharge,
    matrices: &dyn MatrixProvider,
    modular: Option<&DecompositionMatrix>,
) -> Result<JBound> {
    if lambda == mu {
        return Err(Error::Mismatch("j-bound needs λ ≠ μ".into()));
    }
    let (level, n) = (lambda.level(), lambda.size());
    let target = match modular {
        Some(m) => m.clone(),
        None => matrices.matrix(ctx.e(), level, n, charge)?.matrix.clone(),
    };
    let col = target
        .col_index(mu)
        .ok_or_else(|| Error::Mismatch(format!("{mu} is not a column of the e-matrix")))?;
    let mut value = 0i64;
    for c in positive_coefficients(lambda, ctx, charge, matrices)? {
        let source = matrices.matrix(c.f, level, n, charge)?;
        let adj = adjustment_at_one(&target, &source.matrix)?;
        let a = adj
            .solution
            .ok_or_else(|| Error::Consistency(format!("no adjustment matrix from f = {} to e", c.f)))?;
        let row = adj.rows.iter().position(|x| *x == c.nu).expect("column of the f-matrix");
        value += c.weight as i64 * c.derivative * a[row][col];
    }
    Ok(JBound { value, approximate: modular.is_none() })
}

/// S^λ is irreducible in characteristic p iff every required row of D^{C,f} is trivial.
pub fn irreducibility_check(
    lambda: &Multipartition,
    ctx: &ValuationContext,
    charge: &Multicharge,
    matrices: &dyn MatrixProvider,
) -> Result<bool> {
    if ctx.p() == 0 {
        return Err(Error::InvalidContext { e: ctx.e(), p: ctx.p() });
    }
    for f in required_moduli(ctx, charge) {
        if !matrices.matrix(f, lambda.level(), lambda.size(), charge)?.matrix.row_is_trivial(lambda) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of hooks of λ whose length is divisible by e.
pub fn e_weight(lambda: &Partition, e: u32) -> usize {
    let mut w = 0;
    for r in 1..=lambda.len() {
        for c in 1..=lambda.row(r) {
            let hook = lambda.row(r) - c + lambda.col_len(c) - r + 1;
            if hook.is_multiple_of(e as usize) {
                w += 1;
            }
        }
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JamesVerdict {
    Holds,
    Fails,
    /// The e-weight is at least p.
    Skipped,
}

/// When the e-weight of λ is below p, the characteristic-p Jantzen character
/// equals the characteristic-zero one.
pub fn james_regime_check(lambda: &Partition, ctx: &ValuationContext, charge: &Multicharge) -> Result<JamesVerdict> {
    if charge.level() != 1 {
        return Err(Error::Mismatch("the James regime check is for level one".into()));
    }
    if ctx.p() == 0 || e_weight(lambda, ctx.e()) >= ctx.p() as usize {
        return Ok(JamesVerdict::Skipped);
    }
    let lam = Multipartition::new(vec![lambda.clone()])?;
    let modular = jantzen_degree(&lam, ctx, charge)?;
    let zero = jantzen_degree(&lam, &ValuationContext::new(ctx.e(), 0)?, charge)?;
    Ok(if modular.character == zero.character { JamesVerdict::Holds } else { JamesVerdict::Fails })
}
