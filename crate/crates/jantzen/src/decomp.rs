//! Characteristic-zero graded decomposition matrices, E-module characters and
//! adjustment matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::characters::{graded_specht_character, CharacterVector};
use crate::combinatorics::{dominates, enumerate_multipartitions, Multicharge, Multipartition};
use crate::error::{Error, Result};
use crate::ring::{mod_pow, LaurentPoly};

pub const CACHE_ENV: &str = "JANTZEN_CACHE_DIR";

/// Rows are all of P_{ℓ,n}, columns the Kleshchev multipartitions; entries row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionMatrix {
    pub f: u32,
    pub p_context: u32,
    pub n: usize,
    pub level: usize,
    pub multicharge: Vec<i64>,
    pub rows: Vec<Multipartition>,
    pub cols: Vec<Multipartition>,
    pub entries: Vec<LaurentPoly>,
}

impl DecompositionMatrix {
    pub fn row_index(&self, lambda: &Multipartition) -> Option<usize> {
        self.rows.iter().position(|r| r == lambda)
    }

    pub fn col_index(&self, mu: &Multipartition) -> Option<usize> {
        self.cols.iter().position(|c| c == mu)
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.cols.len() + col]
    }

    /// d_{λμ}(q); zero when μ is not a column.
    pub fn entry(&self, lambda: &Multipartition, mu: &Multipartition) -> LaurentPoly {
        match (self.row_index(lambda), self.col_index(mu)) {
            (Some(r), Some(c)) => self.get(r, c).clone(),
            _ => LaurentPoly::zero(),
        }
    }

    /// Nonzero entries of row λ as (column, d_{λμ}(q)).
    pub fn row(&self, lambda: &Multipartition) -> Vec<(Multipartition, LaurentPoly)> {
        let Some(r) = self.row_index(lambda) else { return Vec::new() };
        self.cols
            .iter()
            .enumerate()
            .filter(|(c, _)| !self.get(r, *c).is_zero())
            .map(|(c, mu)| (mu.clone(), self.get(r, c).clone()))
            .collect()
    }

    /// Row λ has no entry besides a diagonal 1.
    pub fn row_is_trivial(&self, lambda: &Multipartition) -> bool {
        self.row(lambda).iter().all(|(mu, _)| mu == lambda)
    }

    pub fn at_one(&self) -> Vec<Vec<i64>> {
        (0..self.rows.len())
            .map(|r| (0..self.cols.len()).map(|c| to_i64(&self.get(r, c).eval_at_one())).collect())
            .collect()
    }

    /// Load-time checks: shape of the data, unitriangularity, positivity and
    /// support in the dominance order. Off-diagonal entries must lie in qN[q]
    /// in characteristic zero and in N[q,q^{-1}] otherwise.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidMatrix(m));
        if self.entries.len() != self.rows.len() * self.cols.len() {
            return bad(format!("{} entries for a {}×{} matrix", self.entries.len(), self.rows.len(), self.cols.len()));
        }
        if !self.multicharge.is_empty() && self.multicharge.len() != self.level {
            return bad(format!("multicharge {:?} has the wrong level", self.multicharge));
        }
        let distinct: BTreeSet<_> = self.rows.iter().collect();
        if distinct.len() != self.rows.len() {
            return bad("repeated row".into());
        }
        for lam in &self.rows {
            if lam.size() != self.n || lam.level() != self.level {
                return bad(format!("row {lam} is not in P_{{{},{}}}", self.level, self.n));
            }
        }
        for (c, mu) in self.cols.iter().enumerate() {
            let Some(r) = self.row_index(mu) else {
                return bad(format!("column {mu} is not a row"));
            };
            if self.cols[..c].contains(mu) {
                return bad(format!("repeated column {mu}"));
            }
            if !self.get(r, c).is_one() {
                return bad(format!("diagonal entry at {mu} is {}", self.get(r, c)));
            }
        }
        for (r, lam) in self.rows.iter().enumerate() {
            for (c, mu) in self.cols.iter().enumerate() {
                let d = self.get(r, c);
                if lam == mu || d.is_zero() {
                    continue;
                }
                let ok = if self.p_context == 0 { d.in_q_nq() } else { d.has_nonnegative_coeffs() };
                if !ok {
                    return bad(format!("entry ({lam}, {mu}) = {d} has the wrong form"));
                }
                if !dominates(lam, mu)? {
                    return bad(format!("entry ({lam}, {mu}) is nonzero but {lam} does not dominate {mu}"));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: DecompositionMatrix = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

fn to_i64(b: &BigInt) -> i64 {
    b.to_i64().expect("matrix entry fits in i64")
}

pub fn load_matrix(path: &Path) -> Result<DecompositionMatrix> {
    DecompositionMatrix::from_json(&std::fs::read_to_string(path)?)
}

pub fn store_matrix(matrix: &DecompositionMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, matrix.to_json()?)?;
    Ok(())
}

/// u_μ = Ch_q E^μ for every Kleshchev μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EChars {
    pub f: u32,
    pub chars: BTreeMap<Multipartition, CharacterVector>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub matrix: DecompositionMatrix,
    pub echars: EChars,
}

pub fn e_character<'a>(echars: &'a EChars, mu: &Multipartition) -> Result<&'a CharacterVector> {
    echars
        .chars
        .get(mu)
        .ok_or_else(|| Error::Mismatch(format!("{mu} is not Kleshchev for f = {}", echars.f)))
}

/// Residue multiset modulo f; Specht modules in different blocks share no composition factors.
fn block_key(lambda: &Multipartition, charge: &Multicharge, f: u32) -> Vec<u32> {
    let mut r: Vec<u32> = lambda.nodes().iter().map(|a| charge.residue(a, f)).collect();
    r.sort_unstable();
    r
}

const P: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn subm(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn invm(a: u64) -> u64 {
    mod_pow(a, P - 2, P)
}

/// Solve A·g = b mod P with A given column-wise; None when A has deficient rank.
fn solve_mod(cols: &[Vec<u64>], b: &[u64]) -> Result<Option<Vec<u64>>> {
    let k = cols.len();
    let rows = b.len();
    let mut m: Vec<Vec<u64>> = (0..rows).map(|i| cols.iter().map(|c| c[i]).chain([b[i]]).collect()).collect();
    let mut pivot_row = 0;
    for c in 0..k {
        let Some(p) = (pivot_row..rows).find(|&r| m[r][c] != 0) else {
            return Ok(None);
        };
        m.swap(pivot_row, p);
        let inv = invm(m[pivot_row][c]);
        for x in m[pivot_row].iter_mut() {
            *x = mulm(*x, inv);
        }
        for r in 0..rows {
            if r != pivot_row && m[r][c] != 0 {
                let factor = m[r][c];
                for j in c..=k {
                    let v = mulm(factor, m[pivot_row][j]);
                    m[r][j] = subm(m[r][j], v);
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| row[k] != 0) {
        return Err(Error::Decomposition("inconsistent linear system; ordering convention error".into()));
    }
    Ok(Some((0..k).map(|c| m[c][k]).collect()))
}

/// Coefficients (ascending) of the polynomial through the points (xs, ys) mod P.
fn interpolate(xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = mulm(subm(c[i], c[i - 1]), invm(subm(xs[i], xs[i - j])));
        }
    }
    let mut poly = vec![0u64; n];
    for i in (0..n).rev() {
        let mut next = vec![0u64; n];
        for (d, &a) in poly.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = (next[d + 1] + a) % P;
            }
            next[d] = subm(next[d], mulm(a, xs[i]));
        }
        next[0] = (next[0] + c[i]) % P;
        poly = next;
    }
    poly
}

fn lift(c: u64) -> i64 {
    if c > P / 2 {
        -((P - c) as i64)
    } else {
        c as i64
    }
}

/// Laurent polynomials g_j with target = Σ g_j basis_j and every exponent in [−bound, bound].
fn solve_laurent(target: &CharacterVector, basis: &[&CharacterVector], bound: i64) -> Result<Vec<LaurentPoly>> {
    let k = basis.len();
    if target.is_zero() {
        return Ok(vec![LaurentPoly::zero(); k]);
    }
    if k == 0 {
        return Err(Error::Decomposition("nonzero anti-invariant part with no smaller modules".into()));
    }
    let support: BTreeSet<_> = basis
        .iter()
        .flat_map(|b| b.entries().keys())
        .chain(target.entries().keys())
        .cloned()
        .collect();
    let points = (2 * bound + 1) as usize;
    let (mut xs, mut values) = (Vec::new(), vec![Vec::new(); k]);
    let mut x = 1u64;
    while xs.len() < points {
        x += 1;
        if x > 4 * points as u64 + 64 {
            return Err(Error::Decomposition("E-characters look linearly dependent".into()));
        }
        let cols: Vec<Vec<u64>> =
            basis.iter().map(|b| support.iter().map(|i| b.get(i).eval_mod(x, P)).collect()).collect();
        let rhs: Vec<u64> = support.iter().map(|i| target.get(i).eval_mod(x, P)).collect();
        let Some(g) = solve_mod(&cols, &rhs)? else { continue };
        let scale = mod_pow(x, bound as u64, P);
        xs.push(x);
        for (j, v) in g.into_iter().enumerate() {
            values[j].push(mulm(v, scale));
        }
    }
    let gs: Vec<LaurentPoly> = values
        .iter()
        .map(|ys| LaurentPoly::from_terms(interpolate(&xs, ys).into_iter().enumerate().map(|(d, c)| (d as i64 - bound, lift(c)))))
        .collect();
    let mut check = CharacterVector::new(target.modulus());
    for (g, b) in gs.iter().zip(basis) {
        check.add_scaled(g, b);
    }
    if check != *target {
        return Err(Error::Decomposition("interpolated solution does not satisfy the system exactly".into()));
    }
    Ok(gs)
}

/// Bar-invariant triangular reduction, processing `order` (which must refine
/// dominance, least dominant first). Rows and columns of the result are in
/// the canonical order of `enumerate_multipartitions`.
pub fn compute_decomposition_with_order(
    order: &[Multipartition],
    f: u32,
    charge: &Multicharge,
) -> Result<Decomposition> {
    let level = charge.level();
    let n = order.first().map_or(0, Multipartition::size);
    let mut echars: BTreeMap<Multipartition, CharacterVector> = BTreeMap::new();
    let mut klesh_by_block: HashMap<Vec<u32>, Vec<Multipartition>> = HashMap::new();
    let mut rows_d: HashMap<Multipartition, Vec<(Multipartition, LaurentPoly)>> = HashMap::new();
    for lam in order {
        let w = graded_specht_character(lam, charge, f);
        let key = block_key(lam, charge, f);
        let earlier = klesh_by_block.entry(key).or_default();
        let basis: Vec<&CharacterVector> = earlier.iter().map(|mu| &echars[mu]).collect();
        let bound = w.max_degree().unwrap_or(0).max(0);
        let gs = solve_laurent(&w.sub(&w.bar()), &basis, bound)?;
        let mut u = (*w).clone();
        let mut row = Vec::new();
        for (g, mu) in gs.iter().zip(earlier.iter()) {
            let d = g.positive_part()?;
            if d.is_zero() {
                continue;
            }
            if !d.in_q_nq() {
                return Err(Error::Decomposition(format!("d_{{{lam},{mu}}} = {d} is not in qN[q]")));
            }
            u.add_scaled(&-&d, &echars[mu]);
            row.push((mu.clone(), d));
        }
        if !u.is_bar_invariant() {
            return Err(Error::Decomposition(format!("residual character of {lam} is not bar-invariant")));
        }
        if !u.has_nonnegative_coeffs() {
            return Err(Error::Decomposition(format!("residual character of {lam} has a negative coefficient")));
        }
        if !u.is_zero() {
            row.push((lam.clone(), LaurentPoly::one()));
            earlier.push(lam.clone());
            echars.insert(lam.clone(), u);
        }
        rows_d.insert(lam.clone(), row);
    }
    let rows = enumerate_multipartitions(level, n);
    let cols: Vec<Multipartition> = rows.iter().filter(|r| echars.contains_key(*r)).cloned().collect();
    let mut entries = vec![LaurentPoly::zero(); rows.len() * cols.len()];
    for (r, lam) in rows.iter().enumerate() {
        let row = rows_d.get(lam).ok_or_else(|| Error::Mismatch(format!("{lam} missing from the processing order")))?;
        for (mu, d) in row {
            let c = cols.iter().position(|x| x == mu).expect("Kleshchev column");
            entries[r * cols.len() + c] = d.clone();
        }
    }
    let matrix = DecompositionMatrix {
        f,
        p_context: 0,
        n,
        level,
        multicharge: charge.kappa().to_vec(),
        rows,
        cols,
        entries,
    };
    matrix.validate()?;
    Ok(Decomposition { matrix, echars: EChars { f, chars: echars } })
}

pub fn compute_decomposition_char0(level: usize, n: usize, f: u32, charge: &Multicharge) -> Result<Decomposition> {
    if charge.level() != level {
        return Err(Error::Mismatch(format!("charge {:?} for level {level}", charge.kappa())));
    }
    compute_decomposition_with_order(&enumerate_multipartitions(level, n), f, charge)
}

/// Rebuild u_μ from a validated matrix: u_λ = Ch_q S^λ − Σ_{μ≠λ} d_{λμ}(q) u_μ.
/// Non-Kleshchev rows are checked against Σ_μ d_{λμ}(q) u_μ.
pub fn echars_from_matrix(matrix: &DecompositionMatrix, charge: &Multicharge) -> Result<EChars> {
    let f = matrix.f;
    let mut chars: BTreeMap<Multipartition, CharacterVector> = BTreeMap::new();
    for lam in &matrix.rows {
        let mut u = (*graded_specht_character(lam, charge, f)).clone();
        for (mu, d) in matrix.row(lam) {
            if mu == *lam {
                continue;
            }
            let um = chars
                .get(&mu)
                .ok_or_else(|| Error::InvalidMatrix(format!("row {lam} refers to {mu} before it is known")))?;
            u.add_scaled(&-&d, um);
        }
        if matrix.col_index(lam).is_some() {
            if u.is_zero() || !u.is_bar_invariant() {
                return Err(Error::InvalidMatrix(format!("E-character of {lam} is zero or not bar-invariant")));
            }
            chars.insert(lam.clone(), u);
        } else if !u.is_zero() {
            return Err(Error::InvalidMatrix(format!("row {lam} does not reproduce Ch_q S^{lam}")));
        }
    }
    Ok(EChars { f, chars })
}

type DecompCache = Mutex<HashMap<(usize, usize, u32, Vec<i64>), Arc<Decomposition>>>;

fn decomp_cache() -> &'static DecompCache {
    static CACHE: OnceLock<DecompCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_file(dir: &Path, level: usize, n: usize, f: u32, charge: &Multicharge) -> PathBuf {
    let k: Vec<String> = charge.kappa().iter().map(i64::to_string).collect();
    dir.join(format!("decomp-l{level}-n{n}-f{f}-k{}.json", k.join("_")))
}

/// Memoized [`compute_decomposition_char0`]; persisted under `JANTZEN_CACHE_DIR` when set.
pub fn decomposition(level: usize, n: usize, f: u32, charge: &Multicharge) -> Result<Arc<Decomposition>> {
    let key = (level, n, f, charge.kappa().to_vec());
    if let Some(d) = decomp_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(d.clone());
    }
    let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let from_disk = dir.as_ref().and_then(|d| {
        let m = load_matrix(&cache_file(d, level, n, f, charge)).ok()?;
        (m.multicharge == charge.kappa() && m.f == f && m.p_context == 0).then_some(m)
    });
    let dec = match from_disk.and_then(|m| echars_from_matrix(&m, charge).ok().map(|e| (m, e))) {
        Some((matrix, echars)) => Decomposition { matrix, echars },
        None => {
            let d = compute_decomposition_char0(level, n, f, charge)?;
            if let Some(dir) = &dir {
                std::fs::create_dir_all(dir)?;
                store_matrix(&d.matrix, &cache_file(dir, level, n, f, charge))?;
            }
            d
        }
    };
    let dec = Arc::new(dec);
    Ok(decomp_cache().lock().expect("cache poisoned").entry(key).or_insert(dec).clone())
}

/// The n = 2 example: Klesh = {(1²)} and d_{(2),(1²)}(q) = q.
pub fn self_check() -> Result<()> {
    let charge = Multicharge::new(vec![2], 2, 2)?;
    let d = compute_decomposition_char0(1, 2, 2, &charge)?;
    let col: Multipartition = "1^2".parse()?;
    let row: Multipartition = "2".parse()?;
    if d.matrix.cols != vec![col.clone()] || d.matrix.entry(&row, &col) != LaurentPoly::monomial(1, 1) {
        return Err(Error::Decomposition("n = 2 self-check failed; ordering convention error".into()));
    }
    Ok(())
}

/// A with target = source·A, solved triangularly over the source columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjustment<T> {
    pub rows: Vec<Multipartition>,
    pub cols: Vec<Multipartition>,
    /// The unique triangular solution, if target = source·A holds on every row.
    pub solution: Option<Vec<Vec<T>>>,
    pub violations: Vec<String>,
}

impl<T> Adjustment<T> {
    /// The solution when it exists with non-negative entries.
    pub fn admissible(&self) -> Option<&Vec<Vec<T>>> {
        if self.violations.is_empty() {
            self.solution.as_ref()
        } else {
            None
        }
    }
}

fn check_rows(target: &DecompositionMatrix, source: &DecompositionMatrix) -> Result<()> {
    if target.rows != source.rows {
        return Err(Error::Mismatch("adjustment needs matrices with the same rows".into()));
    }
    Ok(())
}

/// Graded adjustment over Z[q,q^{-1}]; admissible only with entries in N[q,q^{-1}].
pub fn adjustment_graded(target: &DecompositionMatrix, source: &DecompositionMatrix) -> Result<Adjustment<LaurentPoly>> {
    check_rows(target, source)?;
    let t = |r: usize, c: usize| target.get(r, c).clone();
    let s = |r: usize, c: usize| source.get(r, c).clone();
    Ok(solve_adjustment(target, source, t, s, |x| x.has_nonnegative_coeffs()))
}

/// Ungraded adjustment: solve D_target(1) = D_source(1)·A over the integers.
pub fn adjustment_at_one(target: &DecompositionMatrix, source: &DecompositionMatrix) -> Result<Adjustment<i64>> {
    check_rows(target, source)?;
    let (ta, sa) = (target.at_one(), source.at_one());
    let t = |r: usize, c: usize| LaurentPoly::monomial(0, ta[r][c]);
    let s = |r: usize, c: usize| LaurentPoly::monomial(0, sa[r][c]);
    let adj = solve_adjustment(target, source, t, s, |x| x.has_nonnegative_coeffs());
    Ok(Adjustment {
        rows: adj.rows,
        cols: adj.cols,
        solution: adj
            .solution
            .map(|a| a.iter().map(|row| row.iter().map(|x| to_i64(&x.coeff(0))).collect()).collect()),
        violations: adj.violations,
    })
}

fn solve_adjustment(
    target: &DecompositionMatrix,
    source: &DecompositionMatrix,
    t: impl Fn(usize, usize) -> LaurentPoly,
    s: impl Fn(usize, usize) -> LaurentPoly,
    nonnegative: impl Fn(&LaurentPoly) -> bool,
) -> Adjustment<LaurentPoly> {
    let (ks, kt) = (source.cols.len(), target.cols.len());
    let src_rows: Vec<usize> = source.cols.iter().map(|mu| source.row_index(mu).expect("validated")).collect();
    let mut a = vec![vec![LaurentPoly::zero(); kt]; ks];
    let mut order: Vec<usize> = (0..ks).collect();
    order.sort_by_key(|&j| src_rows[j]);
    for (pos, &j) in order.iter().enumerate() {
        let r = src_rows[j];
        for c in 0..kt {
            let mut v = t(r, c);
            for &m in &order[..pos] {
                v -= &(&s(r, m) * &a[m][c]);
            }
            a[j][c] = v;
        }
    }
    let mut violations = Vec::new();
    let mut consistent = true;
    for r in 0..target.rows.len() {
        for c in 0..kt {
            let mut v = LaurentPoly::zero();
            for m in 0..ks {
                v += &(&s(r, m) * &a[m][c]);
            }
            if v != t(r, c) {
                consistent = false;
                violations.push(format!("row {} column {} is not reproduced", target.rows[r], target.cols[c]));
            }
        }
    }
    for (m, row) in a.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() && !nonnegative(x) {
                violations.push(format!("a[{}, {}] = {x} is negative", source.cols[m], target.cols[c]));
            }
        }
    }
    Adjustment {
        rows: source.cols.clone(),
        cols: target.cols.clone(),
        solution: consistent.then_some(a),
        violations,
    }
}
