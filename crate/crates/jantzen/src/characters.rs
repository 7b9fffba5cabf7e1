//! Graded and ungraded formal characters indexed by residue sequences.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{Multicharge, Multipartition};
use crate::error::{Error, Result};
use crate::ring::LaurentPoly;
use crate::tableaux::{standard_tableaux, ResidueSequence};

/// Σ_i c_i(q) i over residue sequences modulo `modulus`. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    modulus: u32,
    entries: BTreeMap<ResidueSequence, LaurentPoly>,
}

impl CharacterVector {
    pub fn new(modulus: u32) -> Self {
        Self { modulus, entries: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &BTreeMap<ResidueSequence, LaurentPoly> {
        &self.entries
    }

    pub fn get(&self, i: &ResidueSequence) -> LaurentPoly {
        self.entries.get(i).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_at(&mut self, i: ResidueSequence, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(i.clone()).or_insert_with(LaurentPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    /// self += c · other.
    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &CharacterVector) {
        for (i, v) in &other.entries {
            self.add_at(i.clone(), &(c * v));
        }
    }

    pub fn sub(&self, other: &CharacterVector) -> CharacterVector {
        let mut out = self.clone();
        out.add_scaled(&LaurentPoly::monomial(0, -1), other);
        out
    }

    pub fn bar(&self) -> CharacterVector {
        CharacterVector {
            modulus: self.modulus,
            entries: self.entries.iter().map(|(i, v)| (i.clone(), v.bar())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.entries.values().all(LaurentPoly::is_bar_invariant)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.entries.values().all(LaurentPoly::has_nonnegative_coeffs)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.values().filter_map(LaurentPoly::max_exp).max()
    }

    /// The ungraded character.
    pub fn at_one(&self) -> IntCharacter {
        let mut out = IntCharacter::new(self.modulus);
        for (i, v) in &self.entries {
            out.add_at(i.clone(), big_to_i64(&v.eval_at_one()));
        }
        out
    }

    /// ∂: entrywise derivative at q = 1.
    pub fn partial(&self) -> IntCharacter {
        let mut out = IntCharacter::new(self.modulus);
        for (i, v) in &self.entries {
            out.add_at(i.clone(), big_to_i64(&v.derivative_at_one()));
        }
        out
    }

    /// Push forward along reduction of residues modulo `e`.
    pub fn reduce(&self, e: u32) -> Result<CharacterVector> {
        check_divides(e, self.modulus)?;
        let mut out = CharacterVector::new(e);
        for (i, v) in &self.entries {
            out.add_at(i.reduce(e), v);
        }
        Ok(out)
    }
}

fn big_to_i64(b: &BigInt) -> i64 {
    b.to_i64().expect("character coefficient fits in i64")
}

fn check_divides(e: u32, f: u32) -> Result<()> {
    if e == 0 || !f.is_multiple_of(e) {
        return Err(Error::Mismatch(format!("{e} does not divide {f}")));
    }
    Ok(())
}

/// Σ_i c_i i with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntCharacter {
    modulus: u32,
    entries: BTreeMap<ResidueSequence, i64>,
}

impl IntCharacter {
    pub fn new(modulus: u32) -> Self {
        Self { modulus, entries: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &BTreeMap<ResidueSequence, i64> {
        &self.entries
    }

    pub fn get(&self, i: &ResidueSequence) -> i64 {
        self.entries.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_at(&mut self, i: ResidueSequence, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.entries.entry(i.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.entries.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, c: i64, other: &IntCharacter) {
        if c == 0 {
            return;
        }
        for (i, &v) in &other.entries {
            self.add_at(i.clone(), c * v);
        }
    }

    pub fn reduce(&self, e: u32) -> Result<IntCharacter> {
        check_divides(e, self.modulus)?;
        let mut out = IntCharacter::new(e);
        for (i, &v) in &self.entries {
            out.add_at(i.reduce(e), v);
        }
        Ok(out)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.entries.values().all(|&v| v >= 0)
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson<T> {
    f: u32,
    entries: Vec<(Vec<u16>, T)>,
}

impl Serialize for CharacterVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            f: self.modulus,
            entries: self.entries.iter().map(|(i, v)| (i.values.clone(), v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharacterVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::<LaurentPoly>::deserialize(d)?;
        let mut out = CharacterVector::new(raw.f);
        for (i, v) in raw.entries {
            out.add_at(ResidueSequence::new(raw.f, i), &v);
        }
        Ok(out)
    }
}

impl Serialize for IntCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            f: self.modulus,
            entries: self.entries.iter().map(|(i, &v)| (i.values.clone(), v)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::<i64>::deserialize(d)?;
        let mut out = IntCharacter::new(raw.f);
        for (i, v) in raw.entries {
            out.add_at(ResidueSequence::new(raw.f, i), v);
        }
        Ok(out)
    }
}

type SpechtCache = RwLock<HashMap<(Multipartition, Vec<i64>, u32), Arc<CharacterVector>>>;

fn specht_cache() -> &'static SpechtCache {
    static CACHE: OnceLock<SpechtCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Ch_q S^λ = Σ_t q^{deg_f t} res_f(t).
pub fn graded_specht_character(lambda: &Multipartition, charge: &Multicharge, f: u32) -> Arc<CharacterVector> {
    let key = (lambda.clone(), charge.kappa().to_vec(), f);
    if let Some(v) = specht_cache().read().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    let mut ch = CharacterVector::new(f);
    for t in standard_tableaux(lambda).iter() {
        ch.add_at(t.residue_sequence(charge, f), &LaurentPoly::monomial(t.degree(charge, f), 1));
    }
    let ch = Arc::new(ch);
    specht_cache().write().expect("cache poisoned").entry(key).or_insert(ch).clone()
}

/// ch S^λ, residues modulo `f`.
pub fn specht_character(lambda: &Multipartition, charge: &Multicharge, f: u32) -> IntCharacter {
    graded_specht_character(lambda, charge, f).at_one()
}

/// ch S^λ = Σ_{ν → λ} ch S^ν ∨ res(λ/ν), checked in the ungraded setting.
pub fn branching_check(lambda: &Multipartition, charge: &Multicharge, e: u32) -> bool {
    let direct = specht_character(lambda, charge, e);
    if lambda.size() == 0 {
        return direct.total() == 1;
    }
    let mut rebuilt = IntCharacter::new(e);
    for a in lambda.removable_nodes() {
        let nu = lambda.without_node(&a).expect("removable");
        let r = charge.residue(&a, e) as u16;
        for (i, &c) in specht_character(&nu, charge, e).entries() {
            rebuilt.add_at(i.push(r), c);
        }
    }
    rebuilt == direct
}
