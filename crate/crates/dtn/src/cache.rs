//! A thread-safe memo for the per-mode DtN data.
//!
//! Assembly, error estimation, and verification all sweep the same degree
//! range for the same material parameters; the matrices are pure functions
//! of `(params, radius, degree)`, so a shared map of computed values is
//! safe and saves the repeated Hankel recurrences.

use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;

use crate::matrices::{dtn_mode_matrix, lambda_n, ModeMatrix};
use crate::ElasticParams;

/// Exact-bits cache key: two runs share an entry only if every defining
/// float is bit-identical, which is the right equality for memoization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    lambda: u64,
    mu: u64,
    omega: u64,
    radius: u64,
    n: u32,
}

impl Key {
    fn new(params: &ElasticParams, r: f64, n: u32) -> Self {
        Self {
            lambda: params.lambda().to_bits(),
            mu: params.mu().to_bits(),
            omega: params.omega().to_bits(),
            radius: r.to_bits(),
            n,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    matrix: ModeMatrix,
    lambda_n: Complex64,
}

/// Concurrent cache of DtN mode matrices and their denominators.
#[derive(Debug, Default)]
pub struct DtnCache {
    map: RwLock<HashMap<Key, Entry>>,
}

impl DtnCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cached [`dtn_mode_matrix`].
    pub fn mode_matrix(&self, params: &ElasticParams, r: f64, n: u32) -> ModeMatrix {
        self.entry(params, r, n).matrix
    }

    /// Cached [`lambda_n`].
    pub fn lambda(&self, params: &ElasticParams, r: f64, n: u32) -> Complex64 {
        self.entry(params, r, n).lambda_n
    }

    /// Number of distinct `(params, radius, degree)` triples computed.
    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn entry(&self, params: &ElasticParams, r: f64, n: u32) -> Entry {
        let key = Key::new(params, r, n);
        if let Some(hit) = self.map.read().expect("cache lock poisoned").get(&key) {
            return *hit;
        }
        let entry = Entry {
            matrix: dtn_mode_matrix(params, r, n),
            lambda_n: lambda_n(params, r, n),
        };
        // Concurrent fillers compute identical values, so last-write-wins
        // insertion is harmless.
        self.map
            .write()
            .expect("cache lock poisoned")
            .insert(key, entry);
        entry
    }
}
