use std::collections::BTreeMap;

use dashu_int::IBig;
use serde_json::{json, Value};

use super::{Coeff, Theory};
use crate::perm::Permutation;
use crate::shapes::PartitionSequence;

/// Keys a [`CoefficientTable`] can be indexed by.
pub trait TableKey: Ord + Clone {
    /// The grading used by the sign laws: `Σ|μ_i|` or `ℓ(w)`.
    fn degree(&self) -> i64;
    fn sort_key(&self) -> Vec<u32>;
    fn to_json(&self) -> (&'static str, Value);
}

impl TableKey for PartitionSequence {
    fn degree(&self) -> i64 {
        self.total_size() as i64
    }

    fn sort_key(&self) -> Vec<u32> {
        self.flattened()
    }

    fn to_json(&self) -> (&'static str, Value) {
        ("mu", serde_json::to_value(self).expect("partitions serialise"))
    }
}

impl TableKey for Permutation {
    fn degree(&self) -> i64 {
        self.length() as i64
    }

    fn sort_key(&self) -> Vec<u32> {
        self.window().to_vec()
    }

    fn to_json(&self) -> (&'static str, Value) {
        ("perm", serde_json::to_value(self).expect("permutations serialise"))
    }
}

/// Integer coefficients indexed by partition sequences or permutations,
/// tagged with the theory and the route that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable<K: TableKey> {
    pub theory: Theory,
    pub route: String,
    entries: BTreeMap<K, Coeff>,
}

impl<K: TableKey> CoefficientTable<K> {
    pub fn new(theory: Theory, route: impl Into<String>) -> Self {
        CoefficientTable {
            theory,
            route: route.into(),
            entries: BTreeMap::new(),
        }
    }

    /// Adds to the entry at `key`, dropping it if it becomes zero.
    pub fn add(&mut self, key: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.entries.entry(key.clone()).or_insert(IBig::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn get(&self, key: &K) -> Coeff {
        self.entries.get(key).cloned().unwrap_or(IBig::ZERO)
    }

    pub fn entries(&self) -> &BTreeMap<K, Coeff> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same entries, ignoring the provenance tags.
    pub fn same_entries(&self, other: &CoefficientTable<K>) -> bool {
        self.entries == other.entries
    }

    pub fn map_keys<L: TableKey>(&self, f: impl Fn(&K) -> Option<L>) -> CoefficientTable<L> {
        let mut out = CoefficientTable::new(self.theory, self.route.clone());
        for (k, c) in &self.entries {
            if let Some(l) = f(k) {
                out.add(l, c.clone());
            }
        }
        out
    }

    /// JSON array of `{"mu"|"perm": key, "coefficient": c}`, sorted
    /// lexicographically by the flattened key.
    pub fn to_json(&self) -> Value {
        let mut rows: Vec<(&K, &Coeff)> = self.entries.iter().collect();
        rows.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then_with(|| a.0.cmp(b.0)));
        Value::Array(
            rows.into_iter()
                .map(|(k, c)| {
                    let (name, key) = k.to_json();
                    json!({ name: key, "coefficient": coeff_to_json(c) })
                })
                .collect(),
        )
    }
}

/// Integers that fit `i64` become JSON numbers, larger ones strings.
pub fn coeff_to_json(c: &Coeff) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}
