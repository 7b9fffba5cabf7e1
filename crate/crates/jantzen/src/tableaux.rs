//! Standard tableaux, residue sequences and the degree function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{d_node, Multicharge, Multipartition, Node};

/// Residues modulo `modulus`, one per entry of a tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueSequence {
    pub modulus: u32,
    pub values: Vec<u16>,
}

impl ResidueSequence {
    pub fn new(modulus: u32, values: Vec<u16>) -> Self {
        Self { modulus, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<u16> {
        self.values.last().copied()
    }

    pub fn prefix(&self) -> Self {
        Self::new(self.modulus, self.values[..self.values.len().saturating_sub(1)].to_vec())
    }

    pub fn push(&self, r: u16) -> Self {
        let mut values = self.values.clone();
        values.push(r);
        Self::new(self.modulus, values)
    }

    /// Entrywise reduction to a divisor `e` of the modulus.
    pub fn reduce(&self, e: u32) -> Self {
        Self::new(e, self.values.iter().map(|&v| (v as u32 % e) as u16).collect())
    }
}

impl fmt::Display for ResidueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// A standard tableau, stored as the node holding each entry 1..m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    shape: Multipartition,
    nodes: Vec<Node>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    /// nodes()[k-1] contains k.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// The node containing `k` (1-based).
    pub fn node_of(&self, k: usize) -> Node {
        self.nodes[k - 1]
    }

    /// Shape of t↓k.
    pub fn restriction_shape(&self, k: usize) -> Multipartition {
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); self.shape.level()];
        for node in &self.nodes[..k] {
            let comp = &mut parts[node.comp - 1];
            if comp.len() < node.row {
                comp.resize(node.row, 0);
            }
            comp[node.row - 1] += 1;
        }
        let refs: Vec<&[usize]> = parts.iter().map(Vec::as_slice).collect();
        Multipartition::from_parts(&refs).expect("restriction of a standard tableau")
    }

    /// Swap the entries r and r+1; `None` unless the result is standard.
    pub fn swap(&self, r: usize) -> Option<StandardTableau> {
        let (a, b) = (self.nodes[r - 1], self.nodes[r]);
        if a.comp == b.comp && (a.row == b.row || a.col == b.col) {
            return None;
        }
        let mut nodes = self.nodes.clone();
        nodes.swap(r - 1, r);
        Some(StandardTableau { shape: self.shape.clone(), nodes })
    }

    /// True when r lies strictly above r+1 (earlier component or higher row),
    /// so that swapping them moves down in dominance.
    pub fn swap_descends(&self, r: usize) -> bool {
        let (a, b) = (self.nodes[r - 1], self.nodes[r]);
        (a.comp, a.row) < (b.comp, b.row)
    }

    /// Entries as rows per component.
    pub fn to_rows(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = self
            .shape
            .components()
            .iter()
            .map(|p| p.parts().iter().map(|&len| vec![0; len]).collect())
            .collect();
        for (k, node) in self.nodes.iter().enumerate() {
            out[node.comp - 1][node.row - 1][node.col - 1] = k + 1;
        }
        out
    }

    pub fn contents(&self, charge: &Multicharge) -> Vec<i64> {
        self.nodes.iter().map(|a| charge.content(a)).collect()
    }

    pub fn residue_sequence(&self, charge: &Multicharge, f: u32) -> ResidueSequence {
        ResidueSequence::new(f, self.nodes.iter().map(|a| charge.residue(a, f) as u16).collect())
    }

    /// deg_f(t), computed by the defining recursion through d_node.
    pub fn degree(&self, charge: &Multicharge, f: u32) -> i64 {
        if f == 0 {
            return 0;
        }
        (1..=self.size())
            .map(|k| d_node(&self.restriction_shape(k), &self.node_of(k), f, charge).expect("entry k is removable from t↓k"))
            .sum()
    }

    /// Signed content differences feeding every deg_f(t) at once.
    pub fn degree_profile(&self, charge: &Multicharge) -> DegreeProfile {
        let mut weights: BTreeMap<u64, i64> = BTreeMap::new();
        for k in 1..=self.size() {
            let mu = self.restriction_shape(k);
            let a = self.node_of(k);
            let ca = charge.content(&a);
            for b in mu.addable_nodes().into_iter().filter(|b| a.lex_before(b)) {
                *weights.entry((charge.content(&b) - ca).unsigned_abs()).or_default() += 1;
            }
            for b in mu.removable_nodes().into_iter().filter(|b| a.lex_before(b)) {
                *weights.entry((charge.content(&b) - ca).unsigned_abs()).or_default() -= 1;
            }
        }
        weights.retain(|_, w| *w != 0);
        DegreeProfile { weights }
    }
}

/// deg_f(t) = Σ over recorded differences d with f | d of their weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeProfile {
    weights: BTreeMap<u64, i64>,
}

impl DegreeProfile {
    pub fn degree(&self, f: u32) -> i64 {
        if f == 0 {
            return 0;
        }
        self.weights.iter().filter(|(d, _)| *d % f as u64 == 0).map(|(_, w)| w).sum()
    }
}

type TableauCache = RwLock<HashMap<Multipartition, Arc<Vec<StandardTableau>>>>;

fn tableau_cache() -> &'static TableauCache {
    static CACHE: OnceLock<TableauCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All standard λ-tableaux; the first one is t^λ.
pub fn standard_tableaux(lambda: &Multipartition) -> Arc<Vec<StandardTableau>> {
    if let Some(v) = tableau_cache().read().expect("cache poisoned").get(lambda) {
        return v.clone();
    }
    let mut out = Vec::new();
    if lambda.size() == 0 {
        out.push(StandardTableau { shape: lambda.clone(), nodes: Vec::new() });
    } else {
        for a in lambda.removable_nodes().into_iter().rev() {
            let smaller = lambda.without_node(&a).expect("removable");
            for t in standard_tableaux(&smaller).iter() {
                let mut nodes = t.nodes.clone();
                nodes.push(a);
                out.push(StandardTableau { shape: lambda.clone(), nodes });
            }
        }
    }
    let out = Arc::new(out);
    tableau_cache()
        .write()
        .expect("cache poisoned")
        .entry(lambda.clone())
        .or_insert(out)
        .clone()
}

/// t^λ: entries 1..m along rows, component by component.
pub fn initial_tableau(lambda: &Multipartition) -> StandardTableau {
    StandardTableau { shape: lambda.clone(), nodes: lambda.nodes() }
}

/// Indices into `standard_tableaux(λ)` grouped by residue sequence modulo `f`.
pub fn tableaux_by_residue(lambda: &Multipartition, charge: &Multicharge, f: u32) -> BTreeMap<ResidueSequence, Vec<usize>> {
    let mut out: BTreeMap<ResidueSequence, Vec<usize>> = BTreeMap::new();
    for (idx, t) in standard_tableaux(lambda).iter().enumerate() {
        out.entry(t.residue_sequence(charge, f)).or_default().push(idx);
    }
    out
}

/// Tableau dominance: shape(s↓k) ⊵ shape(t↓k) for every k.
pub fn tableau_dominates(s: &StandardTableau, t: &StandardTableau) -> bool {
    (1..=s.size()).all(|k| {
        crate::combinatorics::dominates(&s.restriction_shape(k), &t.restriction_shape(k)).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn hook_count(p: &[usize]) -> usize {
        let m: usize = p.iter().sum();
        let part = crate::combinatorics::Partition::new(p.to_vec()).unwrap();
        let mut denom = 1usize;
        for (r, &len) in p.iter().enumerate() {
            for c in 1..=len {
                denom *= len - c + part.col_len(c) - (r + 1) + 1;
            }
        }
        (1..=m).product::<usize>() / denom
    }

    #[test]
    fn counts() {
        assert_eq!(standard_tableaux(&mp("4")).len(), 1);
        assert_eq!(standard_tableaux(&mp("2,1")).len(), 2);
        assert_eq!(standard_tableaux(&mp("1|1")).len(), 2);
        for m in 0..=6 {
            for lam in crate::combinatorics::enumerate_multipartitions(1, m) {
                assert_eq!(standard_tableaux(&lam).len(), hook_count(lam.component(1).parts()), "{lam}");
            }
        }
    }

    #[test]
    fn first_is_initial_and_greatest() {
        for lam in [mp("3,1|1,1|3"), mp("2,2,1"), mp("1|2|1")] {
            let all = standard_tableaux(&lam);
            assert_eq!(all[0], initial_tableau(&lam));
            assert!(all.iter().all(|t| tableau_dominates(&all[0], t)));
        }
        let t = initial_tableau(&mp("3,1|1,1|3"));
        assert_eq!(t.to_rows(), vec![vec![vec![1, 2, 3], vec![4]], vec![vec![5], vec![6]], vec![vec![7, 8, 9]]]);
    }

    #[test]
    fn residues_and_degrees() {
        let k0 = Multicharge::new(vec![0], 2, 0).unwrap();
        let row = initial_tableau(&mp("2"));
        let col = initial_tableau(&mp("1,1"));
        assert_eq!(row.residue_sequence(&k0, 2).values, vec![0, 1]);
        assert_eq!(col.residue_sequence(&k0, 2).values, vec![0, 1]);
        assert_eq!(row.degree(&k0, 2), 1);
        assert_eq!(col.degree(&k0, 2), 0);
        assert_eq!(row.degree(&k0, 0), 0);
    }

    #[test]
    fn profile_matches_recursion() {
        for level in 1..=2 {
            for m in 0..=5 {
                let charge = Multicharge::canonical(&vec![0; level], 2, m).unwrap();
                for lam in crate::combinatorics::enumerate_multipartitions(level, m) {
                    for t in standard_tableaux(&lam).iter() {
                        let prof = t.degree_profile(&charge);
                        for f in 2..=charge.content_spread() as u32 + 2 {
                            assert_eq!(prof.degree(f), t.degree(&charge, f), "{lam} f={f}");
                        }
                        assert_eq!(prof.degree(charge.content_spread() as u32 + 1), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn contents_determine_tableaux() {
        for m in 0..=5 {
            let charge = Multicharge::canonical(&[0, 1], 3, m).unwrap();
            let mut seen = std::collections::HashSet::new();
            for lam in crate::combinatorics::enumerate_multipartitions(2, m) {
                for t in standard_tableaux(&lam).iter() {
                    assert!(seen.insert(t.contents(&charge)));
                }
            }
        }
    }

    #[test]
    fn residue_classes_partition_tableaux() {
        let charge = Multicharge::new(vec![0], 2, 0).unwrap();
        let classes = tableaux_by_residue(&mp("2"), &charge, 2);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes.keys().next().unwrap().values, vec![0, 1]);
        let c2 = Multicharge::canonical(&[0, 0], 2, 2).unwrap();
        let classes = tableaux_by_residue(&mp("1|1"), &c2, 2);
        assert_eq!(classes.values().map(Vec::len).sum::<usize>(), 2);
        let empty = tableaux_by_residue(&mp("0"), &charge, 2);
        assert_eq!(empty.keys().next().unwrap().values, Vec::<u16>::new());
    }

    #[test]
    fn tableaux_connected_to_initial_by_descending_swaps() {
        for lam in crate::combinatorics::enumerate_multipartitions(2, 4) {
            let all = standard_tableaux(&lam);
            for t in all.iter().skip(1) {
                let up = (1..t.size()).any(|r| {
                    t.swap(r).is_some_and(|s| s.swap_descends(r) && tableau_dominates(&s, t))
                });
                assert!(up, "{lam}: {:?}", t.to_rows());
            }
        }
    }
}
