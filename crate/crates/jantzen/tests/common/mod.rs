#![allow(dead_code)]

use std::collections::BTreeMap;

use jantzen::characters::branching_check;
use jantzen::combinatorics::{
    beta_sequence, enumerate_multipartitions, multipartition_from_beta, normalize_beta, rim_hook, split_row, Multicharge,
    Multipartition,
};
use jantzen::jantzen::{branching_d_coefficient, classical_terms, d_coefficient, jantzen_degree, required_moduli};
use jantzen::ring::{ff_valuation_oracle, ValuationContext};
use jantzen::tableaux::{standard_tableaux, tableaux_by_residue, ResidueSequence};
use proptest::prelude::*;

pub type Check = std::result::Result<(), String>;

pub fn residue_sets(level: usize, e: u32) -> Vec<Vec<u32>> {
    match level {
        1 => vec![vec![0]],
        2 => (0..e).flat_map(|a| (a..e).map(move |b| vec![a, b])).collect(),
        _ => vec![vec![0; level]],
    }
}

/// A random level ≤ 2 multipartition of size ≤ `max_n` with a random charge.
#[derive(Clone, Debug)]
pub struct Case {
    pub lambda: Multipartition,
    pub charge: Multicharge,
    pub e: u32,
}

pub fn arb_case(max_n: usize) -> impl Strategy<Value = Case> {
    (1..=2usize, 0..=max_n, 2..=4u32, any::<prop::sample::Index>(), any::<[u32; 2]>()).prop_map(
        |(level, n, e, idx, res)| {
            let all = enumerate_multipartitions(level, n);
            let lambda = all[idx.index(all.len())].clone();
            let residues: Vec<u32> = res[..level].iter().map(|r| r % e).collect();
            let charge = Multicharge::canonical(&residues, e, n).expect("canonical charge");
            Case { lambda, charge, e }
        },
    )
}

pub fn beta_round_trip(c: &Case) -> Check {
    let beta = beta_sequence(&c.lambda, &c.charge).map_err(|e| e.to_string())?.beta;
    if beta.windows(2).any(|w| w[0] <= w[1]) {
        return Err(format!("{:?} is not strictly decreasing", beta));
    }
    let back = multipartition_from_beta(&beta, &c.charge).map_err(|e| e.to_string())?;
    if back != c.lambda {
        return Err(format!("{} -> {beta:?} -> {back}", c.lambda));
    }
    Ok(())
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Permuting β^λ by π gives (λ, sign π); duplicating an entry gives nothing.
pub fn normalize_sign_laws(c: &Case, perm: &[usize]) -> Check {
    let beta = beta_sequence(&c.lambda, &c.charge).map_err(|e| e.to_string())?.beta;
    if normalize_beta(&beta, &c.charge) != Some((c.lambda.clone(), 1)) {
        return Err(format!("β^λ of {} does not normalize to itself", c.lambda));
    }
    let permuted: Vec<i64> = perm.iter().map(|&k| beta[k]).collect();
    let expected = Some((c.lambda.clone(), permutation_sign(perm)));
    if normalize_beta(&permuted, &c.charge) != expected {
        return Err(format!("{permuted:?} gave {:?}, expected {expected:?}", normalize_beta(&permuted, &c.charge)));
    }
    if beta.len() >= 2 {
        let mut dup = beta.clone();
        dup[1] = dup[0];
        if normalize_beta(&dup, &c.charge).is_some() {
            return Err(format!("{dup:?} has a repeated entry"));
        }
        let mut swapped = beta.clone();
        swapped.swap(0, 1);
        if normalize_beta(&swapped, &c.charge) != Some((c.lambda.clone(), -1)) {
            return Err(format!("adjacent swap {swapped:?} should flip the sign"));
        }
    }
    Ok(())
}

fn moved(beta: &[i64], s: usize, t: usize, h: i64) -> Vec<i64> {
    let mut b = beta.to_vec();
    b[s] -= h;
    b[t] += h;
    b
}

/// Moving h from β_s to β_t and moving h′ = β_s − β_t − h give opposite d_i.
pub fn swapped_move_negates(c: &Case, s: usize, t: usize, h: i64) -> Check {
    let beta = beta_sequence(&c.lambda, &c.charge).map_err(|e| e.to_string())?.beta;
    let len = beta.len();
    if len == 0 {
        return Ok(());
    }
    let (s, t) = (s % len, t % len);
    if s >= t {
        return Ok(());
    }
    let h_prime = beta[s] - beta[t] - h;
    let b1 = moved(&beta, s, t, h);
    let b2 = moved(&beta, s, t, h_prime);
    let Some((mu, _)) = normalize_beta(&b1, &c.charge) else { return Ok(()) };
    for i in tableaux_by_residue(&mu, &c.charge, c.e).keys() {
        let d1 = d_coefficient(&b1, i, &c.charge);
        if d1 == 0 {
            continue;
        }
        if h == h_prime {
            return Err(format!("h = h′ = {h} with d_i ≠ 0"));
        }
        let d2 = d_coefficient(&b2, i, &c.charge);
        if d2 != -d1 {
            return Err(format!("s={s} t={t} h={h}: d_i = {d1} and {d2} at {i}"));
        }
    }
    Ok(())
}

/// A wrapped shape with a given unordered {h, h′} arises twice when the hook
/// stays in its component and once otherwise.
pub fn repeated_shape_multiplicity(c: &Case) -> Check {
    let n = c.charge.n();
    let ctx = ValuationContext::new(c.e, 0).map_err(|e| e.to_string())?;
    let mut groups: BTreeMap<(Multipartition, i64, i64), Vec<bool>> = BTreeMap::new();
    for term in classical_terms(&c.lambda, &ctx, &c.charge).map_err(|e| e.to_string())? {
        let Some(mu) = term.shape else { continue };
        let r = rim_hook(&c.lambda, &term.alpha, n).map_err(|e| e.to_string())?.r_alpha;
        let same = split_row(r, n).0 == split_row(term.t, n).0;
        groups.entry((mu, term.h.min(term.h_prime), term.h.max(term.h_prime))).or_default().push(same);
    }
    for ((mu, h1, h2), v) in groups {
        let same = v[0];
        if v.iter().any(|&x| x != same) || v.len() != 1 + usize::from(same) {
            return Err(format!("{}: shape {mu} with {{{h1},{h2}}} arises {:?}", c.lambda, v));
        }
    }
    Ok(())
}

/// The last-residue recursion for d_i(β) agrees with counting tableaux.
pub fn recursion_matches_count(c: &Case, s: usize, t: usize, h: i64, word: &[u16]) -> Check {
    let beta = beta_sequence(&c.lambda, &c.charge).map_err(|e| e.to_string())?.beta;
    let len = beta.len();
    if len == 0 {
        return Ok(());
    }
    let b = moved(&beta, s % len, t % len, h);
    let n = c.lambda.size();
    let mut seqs: Vec<ResidueSequence> = tableaux_by_residue(&c.lambda, &c.charge, c.e).keys().cloned().collect();
    if let Some((mu, _)) = normalize_beta(&b, &c.charge) {
        seqs.extend(tableaux_by_residue(&mu, &c.charge, c.e).keys().cloned());
    }
    seqs.push(ResidueSequence::new(c.e, word.iter().take(n).map(|r| r % c.e as u16).collect()));
    for beta in [&beta, &b] {
        for i in &seqs {
            if i.len() != n {
                continue;
            }
            let direct = d_coefficient(beta, i, &c.charge);
            let rec = branching_d_coefficient(beta, i, &c.charge);
            if direct != rec {
                return Err(format!("{beta:?} at {i}: count {direct}, recursion {rec}"));
            }
        }
    }
    Ok(())
}

pub fn specht_branching(c: &Case) -> Check {
    if branching_check(&c.lambda, &c.charge, c.e) {
        Ok(())
    } else {
        Err(format!("branching fails for {} with κ = {:?}", c.lambda, c.charge.kappa()))
    }
}

/// Σ_t Σ_f ν(Φ_f) deg_f(t) per residue sequence, with ν from the finite field oracle.
pub fn pdeg_nonnegative(c: &Case, p: u32) -> Check {
    let Ok(ctx) = ValuationContext::new(c.e, p) else { return Ok(()) };
    let tabs = standard_tableaux(&c.lambda);
    let moduli = required_moduli(&ctx, &c.charge);
    let weights: Vec<i64> = moduli
        .iter()
        .map(|&f| if p == 0 { 1 } else { ff_valuation_oracle(f as u64, &ctx).expect("oracle") as i64 })
        .collect();
    let mut pdeg: BTreeMap<ResidueSequence, i64> = BTreeMap::new();
    for t in tabs.iter() {
        let mut v = 0;
        for (w, &f) in weights.iter().zip(&moduli) {
            v += w * t.degree(&c.charge, f);
        }
        *pdeg.entry(t.residue_sequence(&c.charge, c.e)).or_default() += v;
    }
    if let Some((i, v)) = pdeg.iter().find(|(_, &v)| v < 0) {
        return Err(format!("pdeg = {v} at {i} for {}", c.lambda));
    }
    let route = jantzen_degree(&c.lambda, &ctx, &c.charge).map_err(|e| e.to_string())?;
    pdeg.retain(|_, v| *v != 0);
    if &pdeg != route.entries() {
        return Err(format!("pdeg {pdeg:?} differs from the degree route {:?} for {} e={} p={p} κ={:?}", route.entries(), c.lambda, c.e, c.charge.kappa()));
    }
    Ok(())
}
