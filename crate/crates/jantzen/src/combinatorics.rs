//! Partitions, multipartitions, nodes, multicharges, charged beta numbers and rim hooks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of row `r` (1-based), zero beyond the last row.
    pub fn row(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    /// Length of column `c` (1-based).
    pub fn col_len(&self, c: usize) -> usize {
        self.0.iter().take_while(|&&p| p >= c).count()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && self.row(r) >= c
    }

    /// All partitions of `m` in decreasing lexicographic order.
    pub fn all(m: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "3,2,2", "3,2^2", "0" and the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "-" || s == "∅" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let base: usize = base.trim().parse().map_err(|_| Error::Parse(format!("bad part {tok:?}")))?;
            let exp: usize = exp.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {tok:?}")))?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Self::new(parts)
    }
}

/// A node (component, row, column), all 1-based. The derived order is the
/// lexicographic node order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(comp: usize, row: usize, col: usize) -> Self {
        Self { comp, row, col }
    }

    /// Lexicographic comparison on (component, row, column).
    pub fn lex_before(&self, other: &Node) -> bool {
        self < other
    }

    /// `self` lies below `other`: in a later component, or lower in the same one.
    pub fn is_below(&self, other: &Node) -> bool {
        self.comp > other.comp || (self.comp == other.comp && self.row > other.row)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.comp, self.row, self.col)
    }
}

/// An ℓ-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    comps: Vec<Partition>,
}

impl Multipartition {
    pub fn new(comps: Vec<Partition>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::InvalidPartition("level must be at least 1".into()));
        }
        Ok(Self { comps })
    }

    pub fn from_parts(parts: &[&[usize]]) -> Result<Self> {
        Self::new(parts.iter().map(|p| Partition::new(p.to_vec())).collect::<Result<_>>()?)
    }

    pub fn empty(level: usize) -> Self {
        Self { comps: vec![Partition::empty(); level.max(1)] }
    }

    pub fn level(&self) -> usize {
        self.comps.len()
    }

    pub fn size(&self) -> usize {
        self.comps.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.comps
    }

    /// Component `l` (1-based).
    pub fn component(&self, l: usize) -> &Partition {
        &self.comps[l - 1]
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.comp >= 1 && node.comp <= self.level() && self.component(node.comp).contains(node.row, node.col)
    }

    /// All nodes in lexicographic order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (l, p) in self.comps.iter().enumerate() {
            for (r, &len) in p.parts().iter().enumerate() {
                for c in 1..=len {
                    out.push(Node::new(l + 1, r + 1, c));
                }
            }
        }
        out
    }

    /// Addable nodes in lexicographic order.
    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (l, p) in self.comps.iter().enumerate() {
            for r in 1..=p.len() + 1 {
                let c = p.row(r) + 1;
                if r == 1 || p.row(r - 1) >= c {
                    out.push(Node::new(l + 1, r, c));
                }
            }
        }
        out
    }

    /// Removable nodes in lexicographic order.
    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (l, p) in self.comps.iter().enumerate() {
            for r in 1..=p.len() {
                if p.row(r) > p.row(r + 1) {
                    out.push(Node::new(l + 1, r, p.row(r)));
                }
            }
        }
        out
    }

    pub fn with_node(&self, node: &Node) -> Result<Self> {
        let p = self.comps.get(node.comp.wrapping_sub(1)).ok_or_else(|| Error::NodeNotInDiagram(node.to_string()))?;
        if p.row(node.row) + 1 != node.col || (node.row > 1 && p.row(node.row - 1) < node.col) {
            return Err(Error::InvalidPartition(format!("{node} is not addable to {self}")));
        }
        let mut parts = p.parts().to_vec();
        if node.row > parts.len() {
            parts.push(0);
        }
        parts[node.row - 1] += 1;
        let mut comps = self.comps.clone();
        comps[node.comp - 1] = Partition(parts);
        Ok(Self { comps })
    }

    pub fn without_node(&self, node: &Node) -> Result<Self> {
        if !self.removable_nodes().contains(node) {
            return Err(Error::NotRemovable(node.to_string()));
        }
        let mut parts = self.component(node.comp).parts().to_vec();
        parts[node.row - 1] -= 1;
        let mut comps = self.comps.clone();
        comps[node.comp - 1] = Partition::new(parts)?;
        Ok(Self { comps })
    }

    /// Partial sums Σ_{k<l}|λ^(k)| + Σ_{j≤i} λ^(l)_j for l ≤ ℓ, i ≤ width.
    pub fn partial_sums(&self, width: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.level() * width);
        let mut before = 0;
        for p in &self.comps {
            let mut acc = before;
            for i in 1..=width {
                acc += p.row(i);
                out.push(acc);
            }
            before += p.size();
        }
        out
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.comps.iter().map(|p| p.parts().to_vec()).collect()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        Self::new(s.split('|').map(str::parse).collect::<Result<_>>()?)
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_lists().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lists: Vec<Vec<usize>> = Vec::deserialize(d)?;
        let comps = lists
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Multipartition::new(comps).map_err(serde::de::Error::custom)
    }
}

/// Dominance order on multipartitions of the same size and level.
pub fn dominates(lambda: &Multipartition, mu: &Multipartition) -> Result<bool> {
    if lambda.size() != mu.size() || lambda.level() != mu.level() {
        return Err(Error::Mismatch(format!("{lambda} vs {mu}")));
    }
    let w = lambda.size().max(1);
    let a = lambda.partial_sums(w);
    let b = mu.partial_sums(w);
    Ok(a.iter().zip(&b).all(|(x, y)| x >= y))
}

/// Key of a total order refining dominance (larger key for more dominant).
pub fn dominance_key(lambda: &Multipartition) -> Vec<usize> {
    lambda.partial_sums(lambda.size().max(1))
}

/// All ℓ-multipartitions of `m`, least dominant first.
pub fn enumerate_multipartitions(level: usize, m: usize) -> Vec<Multipartition> {
    fn rec(level: usize, rest: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if cur.len() + 1 == level {
            for p in Partition::all(rest) {
                cur.push(p);
                out.push(Multipartition { comps: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in 0..=rest {
            for p in Partition::all(k) {
                cur.push(p);
                rec(level, rest - k, cur, out);
                cur.pop();
            }
        }
    }
    let level = level.max(1);
    let mut out = Vec::new();
    rec(level, m, &mut Vec::new(), &mut out);
    out.sort_by_cached_key(dominance_key);
    out
}

/// Integer lift κ of a dominant weight, separated relative to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multicharge {
    kappa: Vec<i64>,
    e: u32,
    n: usize,
}

impl Multicharge {
    pub fn new(kappa: Vec<i64>, e: u32, n: usize) -> Result<Self> {
        if kappa.is_empty() {
            return Err(Error::InvalidCharge("empty multicharge".into()));
        }
        if e < 2 {
            return Err(Error::InvalidCharge(format!("e = {e} < 2")));
        }
        let gap = 2 * n as i64;
        if kappa.windows(2).any(|w| w[0] - w[1] < gap) || *kappa.last().unwrap() < n as i64 {
            return Err(Error::InvalidCharge(format!("{kappa:?} is not separated for n = {n}")));
        }
        Ok(Self { kappa, e, n })
    }

    /// Smallest separated lift; component 1 receives the smallest residue.
    pub fn canonical(residues: &[u32], e: u32, n: usize) -> Result<Self> {
        if residues.is_empty() {
            return Err(Error::InvalidCharge("no residues".into()));
        }
        let mut res: Vec<i64> = residues.iter().map(|&r| (r % e.max(1)) as i64).collect();
        res.sort_unstable();
        let e64 = e as i64;
        let lift = |bound: i64, r: i64| bound + (r - bound).rem_euclid(e64);
        let mut kappa = vec![0i64; res.len()];
        let last = res.len() - 1;
        kappa[last] = lift(n as i64, res[last]);
        for l in (0..last).rev() {
            kappa[l] = lift(kappa[l + 1] + 2 * n as i64, res[l]);
        }
        Self::new(kappa, e, n)
    }

    pub fn kappa(&self) -> &[i64] {
        &self.kappa
    }

    pub fn level(&self) -> usize {
        self.kappa.len()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn content(&self, node: &Node) -> i64 {
        self.kappa[node.comp - 1] + node.col as i64 - node.row as i64
    }

    pub fn residue(&self, node: &Node, f: u32) -> u32 {
        self.content(node).rem_euclid(f as i64) as u32
    }

    /// Upper bound on differences of contents of nodes and addable nodes.
    pub fn content_spread(&self) -> u64 {
        (self.kappa[0] - self.kappa[self.level() - 1] + 2 * self.n as i64) as u64
    }

    pub fn residues(&self) -> Vec<u32> {
        self.kappa.iter().map(|k| k.rem_euclid(self.e as i64) as u32).collect()
    }
}

/// Addable and removable nodes of residue `i` modulo `f`.
pub fn addable_removable(lambda: &Multipartition, i: u32, charge: &Multicharge, f: u32) -> (Vec<Node>, Vec<Node>) {
    let keep = |v: Vec<Node>| v.into_iter().filter(|a| charge.residue(a, f) == i).collect::<Vec<_>>();
    (keep(lambda.addable_nodes()), keep(lambda.removable_nodes()))
}

/// d_{A,f}(λ): addable minus removable nodes of A's residue after A.
pub fn d_node(lambda: &Multipartition, a: &Node, f: u32, charge: &Multicharge) -> Result<i64> {
    if !lambda.removable_nodes().contains(a) {
        return Err(Error::NotRemovable(a.to_string()));
    }
    let i = charge.residue(a, f);
    let (add, rem) = addable_removable(lambda, i, charge, f);
    let after = |v: &[Node]| v.iter().filter(|b| a.lex_before(b)).count() as i64;
    Ok(after(&add) - after(&rem))
}

/// Charged beta numbers of length ℓn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargedBetaSequence {
    pub beta: Vec<i64>,
    pub charge: Multicharge,
}

pub fn beta_sequence(lambda: &Multipartition, charge: &Multicharge) -> Result<ChargedBetaSequence> {
    if lambda.level() != charge.level() {
        return Err(Error::Mismatch(format!("level of {lambda} vs charge {:?}", charge.kappa())));
    }
    let n = charge.n();
    let mut beta = Vec::with_capacity(n * charge.level());
    for (l, p) in lambda.components().iter().enumerate() {
        if p.len() > n {
            return Err(Error::InvalidPartition(format!("{p} has more than {n} rows")));
        }
        for r in 1..=n {
            beta.push(charge.kappa()[l] + p.row(r) as i64 - r as i64);
        }
    }
    Ok(ChargedBetaSequence { beta, charge: charge.clone() })
}

pub fn multipartition_from_beta(beta: &[i64], charge: &Multicharge) -> Result<Multipartition> {
    let n = charge.n();
    if beta.len() != n * charge.level() {
        return Err(Error::BetaWindow(format!("length {} ≠ ℓn = {}", beta.len(), n * charge.level())));
    }
    if n == 0 {
        return Ok(Multipartition::empty(charge.level()));
    }
    if beta.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::BetaWindow(format!("{beta:?} is not strictly decreasing")));
    }
    let mut comps = Vec::with_capacity(charge.level());
    for (l, &k) in charge.kappa().iter().enumerate() {
        let block = &beta[l * n..(l + 1) * n];
        if block[n - 1] < k - n as i64 {
            return Err(Error::BetaWindow(format!("block {} of {beta:?} falls below {}", l + 1, k - n as i64)));
        }
        let parts = block.iter().enumerate().map(|(r, &b)| (b - k + r as i64 + 1) as usize).collect();
        comps.push(Partition::new(parts)?);
    }
    Multipartition::new(comps)
}

/// Sort `beta` decreasingly; returns the shape and the sign of the sorting
/// permutation, or `None` for repeated entries or a window violation.
pub fn normalize_beta(beta: &[i64], charge: &Multicharge) -> Option<(Multipartition, i8)> {
    let mut inversions = 0usize;
    for i in 0..beta.len() {
        for j in i + 1..beta.len() {
            match beta[i].cmp(&beta[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut sorted = beta.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let shape = multipartition_from_beta(&sorted, charge).ok()?;
    Some((shape, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// Global row index (component l, row r) ↦ n(l−1)+r.
pub fn global_row(comp: usize, row: usize, n: usize) -> usize {
    n * (comp - 1) + row
}

/// Inverse of [`global_row`].
pub fn split_row(t: usize, n: usize) -> (usize, usize) {
    ((t - 1) / n + 1, (t - 1) % n + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RimHook {
    pub anchor: Node,
    pub cells: Vec<Node>,
    pub hook_length: usize,
    pub leg_length: usize,
    pub foot: Node,
    /// n(l−1) + (row of the anchor).
    pub r_alpha: usize,
}

pub fn rim_hook(lambda: &Multipartition, alpha: &Node, n: usize) -> Result<RimHook> {
    if !lambda.contains(alpha) {
        return Err(Error::NodeNotInDiagram(alpha.to_string()));
    }
    let p = lambda.component(alpha.comp);
    let (a, b) = (alpha.row, alpha.col);
    let last_row = p.col_len(b);
    let mut cells = Vec::new();
    for c in a..=last_row {
        for d in b..=p.row(a) {
            if p.contains(c, d) && !p.contains(c + 1, d + 1) {
                cells.push(Node::new(alpha.comp, c, d));
            }
        }
    }
    Ok(RimHook {
        anchor: *alpha,
        hook_length: cells.len(),
        leg_length: last_row - a,
        foot: Node::new(alpha.comp, last_row, b),
        r_alpha: global_row(alpha.comp, a, n),
        cells,
    })
}

/// Add a rim hook of `h` cells to `p` whose lowest row is `bottom`, starting at
/// the first free column of that row. Returns the new partition and the leg length.
fn add_rim_hook(p: &Partition, bottom: usize, h: usize) -> Option<(Partition, usize)> {
    let mut parts = p.parts().to_vec();
    parts.resize(parts.len().max(bottom), 0);
    let mut rest = h;
    let mut j = bottom;
    loop {
        let room = if j == 1 { usize::MAX } else { p.row(j - 1) - p.row(j) };
        if rest <= room {
            parts[j - 1] = p.row(j) + rest;
            break;
        }
        let take = p.row(j - 1) + 1 - p.row(j);
        if take >= rest {
            return None;
        }
        parts[j - 1] = p.row(j - 1) + 1;
        rest -= take;
        j -= 1;
    }
    Some((Partition::new(parts).ok()?, bottom - j))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wrap {
    pub shape: Option<Multipartition>,
    pub epsilon: i8,
    pub s: usize,
    pub t: usize,
    pub h: i64,
    pub h_prime: i64,
}

/// Remove the rim hook at `alpha` and wrap it back on with its foot in global row `t`.
pub fn wrap_hook(lambda: &Multipartition, alpha: &Node, t: usize, charge: &Multicharge) -> Result<Wrap> {
    let n = charge.n();
    if lambda.size() > n {
        return Err(Error::Mismatch(format!("|{lambda}| exceeds n = {n}")));
    }
    let hook = rim_hook(lambda, alpha, n)?;
    let lo = hook.r_alpha + hook.leg_length + 1;
    let hi = n * lambda.level();
    if t < lo || t > hi {
        return Err(Error::RowOutOfRange { t, lo, hi });
    }
    let s = hook.r_alpha;
    let h = hook.hook_length as i64;
    let beta = beta_sequence(lambda, charge)?.beta;
    let h_prime = beta[s - 1] - beta[t - 1] - h;

    let mut comps = lambda.components().to_vec();
    let mut rows = comps[alpha.comp - 1].parts().to_vec();
    for cell in &hook.cells {
        rows[cell.row - 1] -= 1;
    }
    comps[alpha.comp - 1] = Partition::new(rows)?;
    let (lt, rt) = split_row(t, n);
    let same = lt == alpha.comp;
    let diagram = add_rim_hook(&comps[lt - 1], rt, hook.hook_length).map(|(p, leg)| {
        comps[lt - 1] = p;
        let exponent = hook.leg_length + leg + usize::from(same);
        (Multipartition { comps: comps.clone() }, if exponent % 2 == 0 { 1i8 } else { -1 })
    });

    let mut moved = beta.clone();
    moved[s - 1] -= h;
    moved[t - 1] += h;
    let via_beta = normalize_beta(&moved, charge).map(|(shape, sign)| (shape, if same { -sign } else { sign }));
    if diagram != via_beta {
        return Err(Error::Consistency(format!(
            "wrapping {alpha} to row {t} of {lambda}: diagram gives {diagram:?}, beta numbers give {via_beta:?}"
        )));
    }
    let (shape, epsilon) = match diagram {
        Some((m, eps)) => (Some(m), eps),
        None => (None, 0),
    };
    Ok(Wrap { shape, epsilon, s, t, h, h_prime })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(mp("3,2|1").to_string(), "3,2|1");
        assert_eq!(mp("2^2,1|0").to_string(), "2,2,1|0");
        assert_eq!(mp("1^5|1"), Multipartition::from_parts(&[&[1, 1, 1, 1, 1], &[1]]).unwrap());
        assert!("1,2".parse::<Multipartition>().is_err());
        assert_eq!(serde_json::to_string(&mp("3,2|1")).unwrap(), "[[3,2],[1]]");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_multipartitions(1, 0), vec![Multipartition::empty(1)]);
        assert_eq!(enumerate_multipartitions(2, 2).len(), 5);
        assert_eq!(enumerate_multipartitions(2, 6).len(), 65);
        assert_eq!(enumerate_multipartitions(1, 6).len(), 11);
    }

    #[test]
    fn enumeration_refines_dominance() {
        let all = enumerate_multipartitions(2, 4);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!dominates(a, b).unwrap() || a == b, "{a} before {b}");
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&mp("2|0"), &mp("0|2")).unwrap());
        assert!(!dominates(&mp("1|1"), &mp("2|0")).unwrap());
        assert!(dominates(&mp("1|1"), &mp("1|1")).unwrap());
        assert!(dominates(&mp("1|1"), &mp("3")).is_err());
    }

    #[test]
    fn canonical_charges() {
        assert_eq!(Multicharge::canonical(&[0], 2, 5).unwrap().kappa(), &[6]);
        assert_eq!(Multicharge::canonical(&[0, 2], 3, 6).unwrap().kappa(), &[21, 8]);
        assert_eq!(Multicharge::canonical(&[2, 0], 3, 6).unwrap().kappa(), &[21, 8]);
        assert_eq!(Multicharge::canonical(&[0], 3, 0).unwrap().kappa(), &[0]);
        assert!(Multicharge::new(vec![10, 5], 2, 3).is_err());
    }

    #[test]
    fn contents_and_residues() {
        let k0 = Multicharge::new(vec![0], 3, 0).unwrap();
        assert_eq!(k0.content(&Node::new(1, 1, 1)), 0);
        assert_eq!(k0.residue(&Node::new(1, 2, 1), 3), 2);
        let k = Multicharge::new(vec![12, 5], 3, 3).unwrap();
        assert_eq!(k.content(&Node::new(2, 1, 3)), 7);
    }

    #[test]
    fn addable_removable_nodes() {
        let k0 = Multicharge::new(vec![0], 2, 0).unwrap();
        let (add, rem) = addable_removable(&mp("1"), 1, &k0, 2);
        assert_eq!(add, vec![Node::new(1, 1, 2), Node::new(1, 2, 1)]);
        assert!(rem.is_empty());
        let (add0, rem0) = addable_removable(&mp("1"), 0, &k0, 2);
        assert!(add0.is_empty());
        assert_eq!(rem0, vec![Node::new(1, 1, 1)]);
        let (add, _) = addable_removable(&mp("0"), 0, &k0, 2);
        assert_eq!(add, vec![Node::new(1, 1, 1)]);
        assert_eq!(
            mp("2,1").addable_nodes(),
            vec![Node::new(1, 1, 3), Node::new(1, 2, 2), Node::new(1, 3, 1)]
        );
    }

    #[test]
    fn d_node_examples() {
        let k0 = Multicharge::new(vec![0], 2, 0).unwrap();
        assert_eq!(d_node(&mp("2"), &Node::new(1, 1, 2), 2, &k0).unwrap(), 1);
        assert_eq!(d_node(&mp("1"), &Node::new(1, 1, 1), 3, &k0).unwrap(), 0);
        assert!(d_node(&mp("2"), &Node::new(1, 1, 1), 2, &k0).is_err());
    }

    #[test]
    fn beta_numbers_examples() {
        let lam = mp("3,2|1");
        let rows: [(usize, [i64; 2], &[i64]); 5] = [
            (2, [6, 2], &[8, 6, 2, 0]),
            (3, [12, 5], &[14, 12, 9, 5, 3, 2]),
            (4, [15, 5], &[17, 15, 12, 11, 5, 3, 2, 1]),
            (5, [15, 5], &[17, 15, 12, 11, 10, 5, 3, 2, 1, 0]),
            (6, [21, 8], &[23, 21, 18, 17, 16, 15, 8, 6, 5, 4, 3, 2]),
        ];
        for (n, kappa, beta) in rows {
            let charge = Multicharge::new(kappa.to_vec(), 3, n).unwrap();
            assert_eq!(beta_sequence(&lam, &charge).unwrap().beta, beta);
            assert_eq!(multipartition_from_beta(beta, &charge).unwrap(), lam);
        }
        let charge = Multicharge::new(vec![12, 5], 3, 3).unwrap();
        assert_eq!(beta_sequence(&mp("0|0"), &charge).unwrap().beta, vec![11, 10, 9, 4, 3, 2]);
        assert!(beta_sequence(&mp("1^4|0"), &charge).is_err());
    }

    #[test]
    fn normalize_signs() {
        let charge = Multicharge::new(vec![12, 5], 3, 3).unwrap();
        let beta = vec![14, 12, 9, 5, 3, 2];
        assert_eq!(normalize_beta(&beta, &charge), Some((mp("3,2|1"), 1)));
        assert_eq!(normalize_beta(&[12, 14, 9, 5, 3, 2], &charge), Some((mp("3,2|1"), -1)));
        assert_eq!(normalize_beta(&[14, 14, 9, 5, 3, 2], &charge), None);
        assert_eq!(normalize_beta(&[14, 12, 9, 5, 3, 1], &charge), None);
        assert_eq!(normalize_beta(&[14, 12, 4, 9, 3, 2], &charge), Some((mp("3,2|0"), -1)));
    }

    #[test]
    fn rim_hook_example() {
        let lam = mp("4,2,1|6,5,3,2|3,1,1");
        let hook = rim_hook(&lam, &Node::new(2, 1, 3), 28).unwrap();
        assert_eq!(hook.hook_length, 6);
        assert_eq!(hook.leg_length, 2);
        assert_eq!(hook.foot, Node::new(2, 3, 3));
        assert_eq!(hook.r_alpha, 29);
        let h = rim_hook(&mp("3,2|1"), &Node::new(1, 1, 2), 6).unwrap();
        assert_eq!((h.hook_length, h.leg_length), (3, 1));
        let one = rim_hook(&mp("1"), &Node::new(1, 1, 1), 1).unwrap();
        assert_eq!((one.hook_length, one.leg_length, one.foot), (1, 0, Node::new(1, 1, 1)));
        assert!(rim_hook(&mp("1"), &Node::new(1, 1, 2), 1).is_err());
    }

    #[test]
    fn wrap_examples() {
        let lam = mp("3,2|1");
        let charge = Multicharge::new(vec![21, 8], 3, 6).unwrap();
        let w = wrap_hook(&lam, &Node::new(1, 1, 3), 3, &charge).unwrap();
        assert_eq!((w.shape, w.epsilon, w.h_prime), (Some(mp("2,2,1|1")), -1, 4));
        let w = wrap_hook(&lam, &Node::new(1, 1, 1), 7, &charge).unwrap();
        assert_eq!((w.shape, w.epsilon, w.h_prime), (Some(mp("1|5")), -1, 11));
        let w = wrap_hook(&lam, &Node::new(1, 2, 1), 9, &charge).unwrap();
        assert_eq!((w.shape, w.epsilon), (Some(mp("3|1,1,1")), -1));
        let w = wrap_hook(&lam, &Node::new(1, 1, 3), 2, &charge).unwrap();
        assert_eq!(w.shape, None);
        assert!(wrap_hook(&lam, &Node::new(1, 1, 1), 2, &charge).is_err());
        assert!(wrap_hook(&lam, &Node::new(1, 1, 1), 13, &charge).is_err());
    }
}
