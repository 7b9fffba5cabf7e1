//! The bundled example corpus and its verification.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{beta_sequence, wrap_hook, Multicharge, Multipartition, Node};
use crate::decomp::{adjustment_at_one, adjustment_graded, DecompositionMatrix};
use crate::error::{Error, Result};
use crate::jantzen::{classical_terms, d_coefficient, jantzen_classical, jantzen_gamma};
use crate::ring::{nu_quantum, ValuationContext};
use crate::tableaux::tableaux_by_residue;

const BETA_NUMBERS: &str = include_str!("../fixtures/beta_numbers.json");
const WRAPPING: &str = include_str!("../fixtures/wrapping.json");
const BETA_DET: &str = include_str!("../fixtures/beta_det.json");
const MATRIX_E2: &str = include_str!("../fixtures/matrix_e2_p2_n5.json");
const MATRIX_F4: &str = include_str!("../fixtures/matrix_f4_p2_n5.json");
const ADJUSTMENT: &str = include_str!("../fixtures/adjustment.json");

#[derive(Clone, Debug, Deserialize)]
pub struct BetaRow {
    pub n: usize,
    pub multicharge: Vec<i64>,
    pub beta: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BetaNumbersFixture {
    pub lambda: String,
    pub e: u32,
    pub rows: Vec<BetaRow>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WrapRow {
    pub alpha: [usize; 3],
    pub t: usize,
    pub shape: String,
    pub s: usize,
    pub h: i64,
    pub epsilon: i8,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WrappingFixture {
    pub lambda: String,
    pub e: u32,
    pub n: usize,
    pub multicharge: Vec<i64>,
    pub rows: Vec<WrapRow>,
}

/// A factor [h]_{z^power} of a reduced Gram determinant, raised to a signed sum of d_i(μ).
#[derive(Clone, Debug, Deserialize)]
pub struct QuantumFactor {
    pub h: u64,
    pub power: u64,
    pub coefficient: Vec<(String, i64)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BetaDetFixture {
    pub lambda: String,
    pub e: u32,
    pub n: usize,
    pub multicharge: Vec<i64>,
    pub primes: Vec<u32>,
    pub factors: Vec<QuantumFactor>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AdjustmentFixture {
    pub target: String,
    pub source: String,
    pub exists_at_one: bool,
    pub exists_graded: bool,
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    pub beta_numbers: BetaNumbersFixture,
    pub wrapping: WrappingFixture,
    pub beta_det: BetaDetFixture,
    pub matrix_e2: String,
    pub matrix_f4: String,
    pub adjustment: AdjustmentFixture,
}

impl Fixtures {
    pub fn bundled() -> Result<Self> {
        Self::from_sources(|name| {
            Ok(match name {
                "beta_numbers.json" => BETA_NUMBERS,
                "wrapping.json" => WRAPPING,
                "beta_det.json" => BETA_DET,
                "matrix_e2_p2_n5.json" => MATRIX_E2,
                "matrix_f4_p2_n5.json" => MATRIX_F4,
                "adjustment.json" => ADJUSTMENT,
                _ => return Err(Error::Parse(format!("no bundled fixture {name}"))),
            }
            .to_string())
        })
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        Self::from_sources(|name| Ok(std::fs::read_to_string(dir.join(name))?))
    }

    fn from_sources(read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let adjustment: AdjustmentFixture = serde_json::from_str(&read("adjustment.json")?)?;
        Ok(Self {
            beta_numbers: serde_json::from_str(&read("beta_numbers.json")?)?,
            wrapping: serde_json::from_str(&read("wrapping.json")?)?,
            beta_det: serde_json::from_str(&read("beta_det.json")?)?,
            matrix_e2: read(&adjustment.target)?,
            matrix_f4: read(&adjustment.source)?,
            adjustment,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl FixtureCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

pub fn check_beta_numbers(fx: &BetaNumbersFixture) -> Vec<FixtureCheck> {
    fx.rows
        .iter()
        .map(|row| {
            let r = (|| {
                let lam: Multipartition = fx.lambda.parse()?;
                let charge = Multicharge::new(row.multicharge.clone(), fx.e, row.n)?;
                let beta = beta_sequence(&lam, &charge)?.beta;
                Ok((beta == row.beta, format!("{beta:?}")))
            })();
            FixtureCheck::from_result(format!("beta-numbers n={}", row.n), r)
        })
        .collect()
}

pub fn check_wrapping(fx: &WrappingFixture) -> Vec<FixtureCheck> {
    let setup = || -> Result<(Multipartition, Multicharge)> {
        Ok((fx.lambda.parse()?, Multicharge::new(fx.multicharge.clone(), fx.e, fx.n)?))
    };
    let (lam, charge) = match setup() {
        Ok(x) => x,
        Err(e) => return vec![FixtureCheck::new("wrapping", false, format!("error: {e}"))],
    };
    let mut out: Vec<FixtureCheck> = fx
        .rows
        .iter()
        .map(|row| {
            let alpha = Node::new(row.alpha[0], row.alpha[1], row.alpha[2]);
            let r = (|| {
                let expected: Multipartition = row.shape.parse()?;
                let w = wrap_hook(&lam, &alpha, row.t, &charge)?;
                let beta = beta_sequence(&lam, &charge)?.beta;
                let h_prime = beta[row.s - 1] - beta[row.t - 1] - row.h;
                let ok = w.shape.as_ref() == Some(&expected)
                    && w.epsilon == row.epsilon
                    && w.s == row.s
                    && w.h == row.h
                    && w.h_prime == h_prime;
                let shape = w.shape.map_or("∅".to_string(), |s| s.to_string());
                Ok((ok, format!("{shape}, ε={}, h'={}", w.epsilon, w.h_prime)))
            })();
            FixtureCheck::from_result(format!("wrapping α={alpha} t={}", row.t), r)
        })
        .collect();
    let complete = (|| {
        let ctx = ValuationContext::new(fx.e, 0)?;
        let computed: BTreeSet<(Node, usize)> = classical_terms(&lam, &ctx, &charge)?
            .into_iter()
            .filter(|t| t.shape.is_some())
            .map(|t| (t.alpha, t.t))
            .collect();
        let listed: BTreeSet<(Node, usize)> =
            fx.rows.iter().map(|r| (Node::new(r.alpha[0], r.alpha[1], r.alpha[2]), r.t)).collect();
        Ok((computed == listed, format!("{} nonempty wraps, {} listed", computed.len(), listed.len())))
    })();
    out.push(FixtureCheck::from_result("wrapping complete list", complete));
    out
}

fn signed_d(terms: &[(String, i64)], i: &crate::tableaux::ResidueSequence, charge: &Multicharge) -> Result<i64> {
    let mut total = 0;
    for (shape, c) in terms {
        let mu: Multipartition = shape.parse()?;
        total += c * d_coefficient(&beta_sequence(&mu, charge)?.beta, i, charge);
    }
    Ok(total)
}

/// ν_x([h]_{z^k}) = ν_x([hk]_z) − ν_x([k]_z).
pub fn nu_quantum_power(h: u64, k: u64, ctx: &ValuationContext) -> i64 {
    nu_quantum(h * k, ctx) as i64 - nu_quantum(k, ctx) as i64
}

/// Count the residue sequences at which the Jantzen character of the fixture
/// differs from Σ_factors coefficient_i · ν([h]_{z^power}).
pub fn beta_det_mismatches(fx: &BetaDetFixture, factors: &[QuantumFactor], p: u32) -> Result<(usize, usize)> {
    let lam: Multipartition = fx.lambda.parse()?;
    let charge = Multicharge::new(fx.multicharge.clone(), fx.e, fx.n)?;
    let ctx = ValuationContext::new(fx.e, p)?;
    let by_gamma = jantzen_gamma(&lam, &ctx, &charge)?;
    let by_classical = jantzen_classical(&lam, &ctx, &charge)?;
    let mut bad = 0;
    let keys = tableaux_by_residue(&lam, &charge, fx.e);
    for i in keys.keys() {
        let mut expected = 0;
        for fac in factors {
            expected += signed_d(&fac.coefficient, i, &charge)? * nu_quantum_power(fac.h, fac.power, &ctx);
        }
        if by_gamma.character.get(i) != expected || by_classical.character.get(i) != expected {
            bad += 1;
        }
    }
    Ok((bad, keys.len()))
}

pub fn check_beta_det(fx: &BetaDetFixture) -> Vec<FixtureCheck> {
    fx.primes
        .iter()
        .map(|&p| {
            let r = beta_det_mismatches(fx, &fx.factors, p)
                .map(|(bad, total)| (bad == 0, format!("{total} residue sequences, {bad} mismatches")));
            FixtureCheck::from_result(format!("beta-det p={p}"), r)
        })
        .collect()
}

pub fn check_matrices(fx: &Fixtures) -> Vec<FixtureCheck> {
    let load = |name: &str, src: &str| {
        FixtureCheck::from_result(
            format!("matrix {name}"),
            DecompositionMatrix::from_json(src).map(|m| (true, format!("{}×{}", m.rows.len(), m.cols.len()))),
        )
    };
    let mut out = vec![load(&fx.adjustment.target, &fx.matrix_e2), load(&fx.adjustment.source, &fx.matrix_f4)];
    let pair = (|| -> Result<(DecompositionMatrix, DecompositionMatrix)> {
        Ok((DecompositionMatrix::from_json(&fx.matrix_e2)?, DecompositionMatrix::from_json(&fx.matrix_f4)?))
    })();
    match pair {
        Ok((target, source)) => {
            let at_one = adjustment_at_one(&target, &source).map(|a| {
                let exists = a.admissible().is_some();
                (exists == fx.adjustment.exists_at_one, format!("exists={exists} {}", a.violations.join("; ")))
            });
            out.push(FixtureCheck::from_result("adjustment at q=1", at_one));
            let graded = adjustment_graded(&target, &source).map(|a| {
                let exists = a.admissible().is_some();
                (exists == fx.adjustment.exists_graded, format!("exists={exists} {}", a.violations.join("; ")))
            });
            out.push(FixtureCheck::from_result("graded adjustment", graded));
        }
        Err(e) => out.push(FixtureCheck::new("adjustment", false, format!("error: {e}"))),
    }
    out
}

pub fn verify_fixtures(fx: &Fixtures) -> Vec<FixtureCheck> {
    let mut out = check_beta_numbers(&fx.beta_numbers);
    out.extend(check_wrapping(&fx.wrapping));
    out.extend(check_beta_det(&fx.beta_det));
    out.extend(check_matrices(fx));
    out
}
